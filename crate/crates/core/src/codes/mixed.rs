//! F_qF_{q²}-additive cyclic codes `⟨(s | l), (0 | g + w h), (0 | w k)⟩`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldTower;
#[cfg(test)]
use crate::gf::Level;
use crate::poly::Poly;

use super::pure::{check_base, gen_degree, ideal_generator};
use super::{module_closure, GeneratorMatrixCode, MixedWord};

#[derive(Debug, Clone)]
pub struct MixedCode {
    tower: FieldTower,
    alpha: usize,
    beta: usize,
    s: Poly,
    l: Poly,
    g: Poly,
    h: Poly,
    k: Poly,
    closure: GeneratorMatrixCode,
}

impl MixedCode {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn s(&self) -> &Poly {
        &self.s
    }

    pub fn l(&self) -> &Poly {
        &self.l
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    pub fn h(&self) -> &Poly {
        &self.h
    }

    pub fn k(&self) -> &Poly {
        &self.k
    }

    /// The module closure of the three generators: the codeword set.
    pub fn closure(&self) -> &GeneratorMatrixCode {
        &self.closure
    }

    /// `(s | l)`, `(0 | g + w h)`, `(0 | w k)`.
    pub fn generators(&self) -> [MixedWord; 3] {
        generator_words(&self.tower, self.alpha, self.beta, &self.s, &self.l, &self.g, &self.h, &self.k)
    }
}

#[allow(clippy::too_many_arguments)]
fn generator_words(
    tower: &FieldTower,
    alpha: usize,
    beta: usize,
    s: &Poly,
    l: &Poly,
    g: &Poly,
    h: &Poly,
    k: &Poly,
) -> [MixedWord; 3] {
    let ext = tower.ext();
    let w = Poly::constant(ext, tower.omega());
    let zero = Poly::zero(tower.base());
    let gh = g.embed(ext).unwrap().add(&h.embed(ext).unwrap().mul(&w));
    let wk = k.embed(ext).unwrap().mul(&w);
    [
        MixedWord::from_polys(tower, alpha, beta, s, l),
        MixedWord::from_polys(tower, alpha, beta, &zero, &gh),
        MixedWord::from_polys(tower, alpha, beta, &zero, &wk),
    ]
}

/// Validates every structural condition on the generators and builds the
/// code. All violated conditions are reported together.
#[allow(clippy::too_many_arguments)]
pub fn build_mixed(
    tower: &FieldTower,
    alpha: usize,
    beta: usize,
    s: &Poly,
    l: &Poly,
    g: &Poly,
    h: &Poly,
    k: &Poly,
) -> Result<MixedCode> {
    let (code, violated) = build_mixed_relaxed(tower, alpha, beta, s, l, g, h, k)?;
    if !violated.is_empty() {
        return Err(Error::Conditions(violated));
    }
    Ok(code)
}

/// Like [`build_mixed`], but only the divisibility conditions
/// `s | x^α-1`, `g, k | x^β-1` are enforced. The code is the module closure
/// of the three generators; the remaining violated conditions are returned
/// alongside it. Such generators are not the canonical ones of the code, so
/// the counting formula may not apply.
#[allow(clippy::too_many_arguments)]
pub fn build_mixed_relaxed(
    tower: &FieldTower,
    alpha: usize,
    beta: usize,
    s: &Poly,
    l: &Poly,
    g: &Poly,
    h: &Poly,
    k: &Poly,
) -> Result<(MixedCode, Vec<String>)> {
    if alpha == 0 || beta == 0 {
        return Err(Error::Conditions(vec![
            "block lengths α and β must be positive (use build_pure for α = 0)".into(),
        ]));
    }
    for (p, name) in [(s, "s"), (g, "g"), (h, "h"), (k, "k")] {
        check_base(p, name)?;
    }
    let base = tower.base();
    let ext = tower.ext();
    let s = ideal_generator(&s.embed(base)?, alpha);
    let g = ideal_generator(&g.embed(base)?, beta);
    let k = ideal_generator(&k.embed(base)?, beta);
    let h = h.embed(base)?;
    let l = l.embed(ext)?;

    let xa = Poly::x_n_minus_one(base, alpha);
    let xb = Poly::x_n_minus_one(base, beta);
    let mut violated = Vec::new();
    for (p, m, name, n) in [(&s, &xa, "s", alpha), (&g, &xb, "g", beta), (&k, &xb, "k", beta)] {
        if !p.divides(m)? {
            violated.push(format!("{name}(x) divides x^{n}-1"));
        }
    }
    if !violated.is_empty() {
        return Err(Error::Conditions(violated));
    }
    // g ≡ 0 mod x^β-1 leaves this condition vacuous
    if !g.reduce_cyclic(beta).is_zero() {
        let cofactor = xb.divmod(&g)?.0;
        if !k.divides(&h.mul(&cofactor))? {
            violated.push(format!("k(x) divides h(x)(x^{beta}-1)/g(x)"));
        }
    }
    let words = generator_words(tower, alpha, beta, &s, &l, &g, &h, &k);
    let kernel = module_closure(&words[1..], tower, alpha, beta)?;
    let cofactor = xa.divmod(&s)?.0.embed(ext)?;
    let zero = Poly::zero(base);
    let probe = MixedWord::from_polys(tower, alpha, beta, &zero, &cofactor.mul(&l));
    if !kernel.contains(&probe) {
        violated.push(format!(
            "((x^{alpha}-1)/s(x))·l(x) lies in ⟨g(x)+ωh(x), ωk(x)⟩"
        ));
    }
    let closure = module_closure(&words, tower, alpha, beta)?;
    let code = MixedCode {
        tower: tower.clone(),
        alpha,
        beta,
        s,
        l,
        g,
        h,
        k,
        closure,
    };
    Ok((code, violated))
}

/// The x-shifted generator set `S₁ ∪ S₂ ∪ S₃` and whether it spans the code.
#[derive(Debug, Clone)]
pub struct SpanningSet {
    pub words: Vec<MixedWord>,
    /// `|S₁|, |S₂|, |S₃|`.
    pub sizes: [usize; 3],
    pub spans_ok: bool,
}

pub fn spanning_set(code: &MixedCode) -> SpanningSet {
    let counts = [
        code.alpha - gen_degree(&code.s),
        code.beta - gen_degree(&code.g),
        code.beta - gen_degree(&code.k),
    ];
    let gens = code.generators();
    // generator order in S: (s|l), (0|g+wh), (0|wk)
    let mut words = Vec::new();
    for (gen, &count) in gens.iter().zip(&counts) {
        let mut w = gen.clone();
        for _ in 0..count {
            let next = w.shifted();
            words.push(w);
            w = next;
        }
    }
    let span = GeneratorMatrixCode::from_words(&code.tower, code.alpha, code.beta, &words)
        .expect("words share the code's block length");
    SpanningSet {
        spans_ok: span.same_code(&code.closure),
        words,
        sizes: counts,
    }
}

/// `|C|` from the counting formula and from the closure rank, as powers of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cardinality {
    pub q: usize,
    pub formula_exponent: usize,
    pub actual_exponent: usize,
}

impl Cardinality {
    pub fn formula(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.formula_exponent as u32)
    }

    pub fn actual(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.actual_exponent as u32)
    }

    pub fn agrees(&self) -> bool {
        self.formula_exponent == self.actual_exponent
    }
}

pub fn cardinality(code: &MixedCode) -> Cardinality {
    Cardinality {
        q: code.tower.q(),
        formula_exponent: (code.alpha - gen_degree(&code.s))
            + (code.beta - gen_degree(&code.g))
            + (code.beta - gen_degree(&code.k)),
        actual_exponent: code.closure.rank(),
    }
}

/// Parses generator strings; `l` is read over F_{q²}, the rest over F_q.
#[cfg(test)]
#[allow(clippy::too_many_arguments)]
pub(crate) fn parse_mixed(
    tower: &FieldTower,
    alpha: usize,
    beta: usize,
    s: &str,
    l: &str,
    g: &str,
    h: &str,
    k: &str,
) -> Result<MixedCode> {
    use crate::parse::parse_poly;
    build_mixed(
        tower,
        alpha,
        beta,
        &parse_poly(s, tower, Level::Base)?,
        &parse_poly(l, tower, Level::Ext)?,
        &parse_poly(g, tower, Level::Base)?,
        &parse_poly(h, tower, Level::Base)?,
        &parse_poly(k, tower, Level::Base)?,
    )
}

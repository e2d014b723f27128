//! F_{q²}-additive cyclic codes `⟨g + w h, w k⟩` of length `n`.

use crate::error::{Error, Result};
use crate::gf::{FieldTower, Level};
use crate::poly::{Poly, QuotElem};

use super::{module_closure, GeneratorMatrixCode, MixedWord};

#[derive(Debug, Clone)]
pub struct PureCode {
    tower: FieldTower,
    n: usize,
    g: Poly,
    h: Poly,
    k: Poly,
    closure: GeneratorMatrixCode,
}

/// Zero-ideal convention: the zero polynomial stands for `x^n - 1`.
pub(crate) fn ideal_generator(p: &Poly, n: usize) -> Poly {
    if p.is_zero() {
        Poly::x_n_minus_one(p.field(), n)
    } else {
        p.clone()
    }
}

pub(crate) fn check_base(p: &Poly, name: &str) -> Result<()> {
    if p.level() == Level::Ext {
        return Err(Error::Conditions(vec![format!(
            "{name}(x) must have coefficients in F_q"
        )]));
    }
    Ok(())
}

/// Degree used by the counting formulas (`n` for the zero ideal).
pub(crate) fn gen_degree(p: &Poly) -> usize {
    p.degree().expect("normalized generators are nonzero")
}

impl PureCode {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Generator words `g + w h` and `w k` (with `α = 0`).
    pub fn generators(&self) -> [MixedWord; 2] {
        let ext = self.tower.ext();
        let w = Poly::constant(ext, self.tower.omega());
        let gh = self
            .g
            .embed(ext)
            .unwrap()
            .add(&self.h.embed(ext).unwrap().mul(&w));
        let wk = self.k.embed(ext).unwrap().mul(&w);
        let zero = Poly::zero(self.tower.base());
        [
            MixedWord::from_polys(&self.tower, 0, self.n, &zero, &gh),
            MixedWord::from_polys(&self.tower, 0, self.n, &zero, &wk),
        ]
    }

    pub fn closure(&self) -> &GeneratorMatrixCode {
        &self.closure
    }

    /// `q^(n - deg g) · q^(n - deg k)` as an exponent of `q`.
    pub fn formula_exponent(&self) -> usize {
        2 * self.n - gen_degree(&self.g) - gen_degree(&self.k)
    }
}

pub fn build_pure(tower: &FieldTower, n: usize, g: &Poly, h: &Poly, k: &Poly) -> Result<PureCode> {
    if n == 0 {
        return Err(Error::Conditions(vec!["length n must be positive".into()]));
    }
    for (p, name) in [(g, "g"), (h, "h"), (k, "k")] {
        check_base(p, name)?;
    }
    let base = tower.base();
    let (g, h, k) = (
        ideal_generator(&g.embed(base)?, n),
        h.embed(base)?,
        ideal_generator(&k.embed(base)?, n),
    );
    let modulus = Poly::x_n_minus_one(base, n);
    let mut violated = Vec::new();
    if !g.divides(&modulus)? {
        violated.push(format!("g(x) divides x^{n}-1"));
    }
    if !k.divides(&modulus)? {
        violated.push(format!("k(x) divides x^{n}-1"));
    }
    if !violated.is_empty() {
        return Err(Error::Conditions(violated));
    }
    let mut code = PureCode {
        tower: tower.clone(),
        n,
        g,
        h,
        k,
        closure: GeneratorMatrixCode::zero(tower, 0, n),
    };
    code.closure = module_closure(&code.generators(), tower, 0, n)?;
    Ok(code)
}

/// Canonical `(g*, h*, k*)` of a code with `α = 0`: `g*` generates the ideal
/// of first components, `k*` the ideal `{c : w c ∈ C}`, and `h*` is the
/// w-part of a preimage of `g*`, reduced mod `k*`.
pub fn canonical_generators(code: &GeneratorMatrixCode) -> Result<(Poly, Poly, Poly)> {
    if code.alpha() != 0 {
        return Err(Error::ShapeMismatch("canonical pure generators need α = 0".into()));
    }
    let n = code.beta();
    let tower = code.tower();
    let base = tower.base();
    let modulus = Poly::x_n_minus_one(base, n);
    let order: Vec<usize> = (0..n).map(|j| 2 * j).chain((0..n).map(|j| 2 * j + 1)).collect();
    let (r, pivots) = code.matrix().rref_with_order(&order);
    let rows = &r.rows()[..pivots.len()];
    let b_poly = |row: &[u16]| Poly::new(base, (0..n).map(|j| row[2 * j]).collect());
    let c_poly = |row: &[u16]| Poly::new(base, (0..n).map(|j| row[2 * j + 1]).collect());

    let (psi_rows, ker_rows): (Vec<_>, Vec<_>) = rows.iter().partition(|row| !b_poly(row).is_zero());
    let g = psi_rows
        .iter()
        .try_fold(modulus.clone(), |acc, row| acc.gcd(&b_poly(row)))?;
    let k = ker_rows
        .iter()
        .try_fold(modulus.clone(), |acc, row| acc.gcd(&c_poly(row)))?;
    let g = if g.degree() == Some(n) { modulus.clone() } else { g };
    let k = if k.degree() == Some(n) { modulus.clone() } else { k };

    let h = if psi_rows.is_empty() {
        Poly::zero(base)
    } else {
        let target: Vec<u16> = (0..n).map(|j| g.coeff(j)).collect();
        let mut combo = vec![0u16; 2 * n];
        for (row, &piv) in psi_rows.iter().zip(&pivots) {
            crate::linalg::axpy(base, &mut combo, target[piv / 2], row);
        }
        debug_assert_eq!(b_poly(&combo), g, "g* lies in the first-component ideal");
        c_poly(&combo).rem(&k)?
    };
    Ok((g, h, k))
}

/// Canonical generators of the code `⟨g + w h, w k⟩` of length `n`.
pub fn canonicalize_pure(tower: &FieldTower, n: usize, g: &Poly, h: &Poly, k: &Poly) -> Result<(Poly, Poly, Poly)> {
    let code = build_pure(tower, n, g, h, k)?;
    canonical_generators(code.closure())
}

/// F_q-basis `{x^i (g + w h)} ∪ {w x^j k}`; requires `g` and `k` to be the
/// canonical ideal generators.
pub fn pure_basis(code: &PureCode) -> Result<Vec<QuotElem>> {
    let (g, _, k) = canonical_generators(code.closure())?;
    let mut problems = Vec::new();
    if g != code.g {
        problems.push(format!("g should be {}", g.render(&code.tower)));
    }
    if k != code.k {
        problems.push(format!("k should be {}", k.render(&code.tower)));
    }
    if !problems.is_empty() {
        return Err(Error::NotCanonical(problems.join(", ")));
    }
    let ext = code.tower.ext();
    let n = code.n;
    let w = Poly::constant(ext, code.tower.omega());
    let gh = code.g.embed(ext)?.add(&code.h.embed(ext)?.mul(&w));
    let wk = code.k.embed(ext)?.mul(&w);
    let mut out = Vec::new();
    for i in 0..n - gen_degree(&code.g) {
        out.push(QuotElem::new(&gh.shift(i), n));
    }
    for j in 0..n - gen_degree(&code.k) {
        out.push(QuotElem::new(&wk.shift(j), n));
    }
    Ok(out)
}

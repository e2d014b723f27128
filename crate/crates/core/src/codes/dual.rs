//! The F_{q²}-valued form `⟨u, v⟩ = w Σ u_i v_i + Σ u'_j v'_j` and duals.

use crate::error::{Error, Result};
use crate::gf::{FieldTower, Fq2Elem};
use crate::linalg::FqMatrix;
use crate::poly::Poly;

use super::mixed::build_mixed;
use super::pure::canonical_generators;
use super::{GeneratorMatrixCode, MixedWord};

pub fn inner_product(tower: &FieldTower, u: &MixedWord, v: &MixedWord) -> Result<Fq2Elem> {
    if u.alpha() != v.alpha() || u.beta() != v.beta() {
        return Err(Error::ShapeMismatch(format!(
            "block lengths ({}, {}) and ({}, {})",
            u.alpha(),
            u.beta(),
            v.alpha(),
            v.beta()
        )));
    }
    let base = tower.base();
    let ext = tower.ext();
    let a = u
        .u
        .iter()
        .zip(&v.u)
        .fold(0u16, |acc, (x, y)| base.add(acc, base.mul(x.0, y.0)));
    let mut acc = ext.mul(tower.omega(), a);
    for (x, y) in u.u_prime.iter().zip(&v.u_prime) {
        acc = ext.add(acc, ext.mul(tower.from_fq2(*x), tower.from_fq2(*y)));
    }
    Ok(tower.to_fq2(acc))
}

/// The two F_q-linear functionals `v ↦ (1-part, w-part) of ⟨row, v⟩`.
fn functionals(tower: &FieldTower, alpha: usize, beta: usize, row: &[u16]) -> [Vec<u16>; 2] {
    let ext = tower.ext();
    let width = alpha + 2 * beta;
    let mut ones = vec![0u16; width];
    let mut omegas = vec![0u16; width];
    for (i, &x) in row[..alpha].iter().enumerate() {
        // ⟨row, e_i⟩ = w·u_i
        omegas[i] = x;
    }
    for j in 0..beta {
        let z = tower.compose(
            crate::gf::FqElem(row[alpha + 2 * j]),
            crate::gf::FqElem(row[alpha + 2 * j + 1]),
        );
        for (col, val) in [(alpha + 2 * j, z), (alpha + 2 * j + 1, ext.mul(z, tower.omega()))] {
            let (b, c) = tower.decompose(val);
            ones[col] = b.0;
            omegas[col] = c.0;
        }
    }
    [ones, omegas]
}

/// `C^⊥` under the F_{q²}-valued form, solved as an F_q kernel.
pub fn dual(code: &GeneratorMatrixCode) -> GeneratorMatrixCode {
    let tower = code.tower();
    let (alpha, beta) = (code.alpha(), code.beta());
    let mut constraints = FqMatrix::empty(tower.base(), code.width());
    for row in code.matrix().rows() {
        for f in functionals(tower, alpha, beta, row) {
            constraints.push_row(f);
        }
    }
    GeneratorMatrixCode::from_matrix(tower, alpha, beta, &constraints.kernel())
}

/// Polynomial generators `(s, l, g, h, k)` recovered from a cyclic code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGenerators {
    pub s: Poly,
    pub l: Poly,
    pub g: Poly,
    pub h: Poly,
    pub k: Poly,
}

impl MixedGenerators {
    pub fn render(&self, tower: &FieldTower) -> [String; 5] {
        [
            self.s.render(tower),
            self.l.render(tower),
            self.g.render(tower),
            self.h.render(tower),
            self.k.render(tower),
        ]
    }
}

/// Recovers generators of a cyclic code with `α, β ≥ 1` and checks that
/// they rebuild exactly the same code.
pub fn extract_generators(code: &GeneratorMatrixCode) -> Result<MixedGenerators> {
    let tower = code.tower();
    let (alpha, beta) = (code.alpha(), code.beta());
    if alpha == 0 || beta == 0 {
        return Err(Error::ShapeMismatch("generator extraction needs α, β ≥ 1".into()));
    }
    if !code.is_cyclic() {
        return Err(Error::Conditions(vec!["code is not cyclic".into()]));
    }
    let base = tower.base();
    let ext = tower.ext();
    let order: Vec<usize> = (0..alpha)
        .chain((0..beta).map(|j| alpha + 2 * j))
        .chain((0..beta).map(|j| alpha + 2 * j + 1))
        .collect();
    let (r, pivots) = code.matrix().rref_with_order(&order);
    let rows = &r.rows()[..pivots.len()];
    let n_alpha_rows = pivots.iter().take_while(|&&c| c < alpha).count();
    let (alpha_rows, kernel_rows) = rows.split_at(n_alpha_rows);

    let xa = Poly::x_n_minus_one(base, alpha);
    let s = alpha_rows.iter().try_fold(xa.clone(), |acc, row| {
        acc.gcd(&Poly::new(base, row[..alpha].to_vec()))
    })?;
    let s = if s.degree() == Some(alpha) { xa } else { s };
    let l = if alpha_rows.is_empty() {
        Poly::zero(ext)
    } else {
        let mut combo = vec![0u16; code.width()];
        for (row, &piv) in alpha_rows.iter().zip(&pivots) {
            crate::linalg::axpy(base, &mut combo, s.coeff(piv), row);
        }
        let word = MixedWord::from_expanded(alpha, beta, &combo);
        Poly::new(ext, word.u_prime.iter().map(|z| tower.from_fq2(*z)).collect())
    };
    let kernel_beta: Vec<Vec<u16>> = kernel_rows.iter().map(|r| r[alpha..].to_vec()).collect();
    let kernel = GeneratorMatrixCode::from_rows(tower, 0, beta, kernel_beta)?;
    let (g, h, k) = canonical_generators(&kernel)?;
    let rebuilt = build_mixed(tower, alpha, beta, &s, &l, &g, &h, &k)?;
    if !rebuilt.closure().same_code(code) {
        return Err(Error::Conditions(vec![
            "extracted generators do not rebuild the code".into(),
        ]));
    }
    Ok(MixedGenerators { s, l, g, h, k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::mixed::parse_mixed;
    use crate::gf::FqElem;

    #[test]
    fn inner_product_examples() {
        let t = FieldTower::with_defaults(3).unwrap();
        let one = MixedWord {
            u: vec![FqElem(1)],
            u_prime: vec![Fq2Elem::ZERO],
        };
        let ip = inner_product(&t, &one, &one).unwrap();
        assert_eq!((ip.b.0, ip.c.0), (0, 1));
        let zero = MixedWord::zero(1, 1);
        assert!(inner_product(&t, &one, &zero).unwrap().is_zero());
        let uw = MixedWord {
            u: vec![FqElem(1)],
            u_prime: vec![Fq2Elem {
                b: FqElem(0),
                c: FqElem(1),
            }],
        };
        // w + w² = 2 + w
        let ip = inner_product(&t, &uw, &uw).unwrap();
        assert_eq!((ip.b.0, ip.c.0), (2, 1));
        assert!(inner_product(&t, &uw, &MixedWord::zero(2, 1)).is_err());
    }

    #[test]
    fn dual_of_trivial_codes() {
        let t = FieldTower::with_defaults(3).unwrap();
        assert_eq!(dual(&GeneratorMatrixCode::full(&t, 2, 3)).rank(), 0);
        assert_eq!(dual(&GeneratorMatrixCode::zero(&t, 2, 3)).rank(), 8);
    }

    #[test]
    fn dual_is_cyclic_and_extractable() {
        let t = FieldTower::with_defaults(3).unwrap();
        let c = parse_mixed(&t, 3, 3, "1", "2w+2", "1", "x", "x^3+2").unwrap();
        let d = dual(c.closure());
        assert!(d.is_cyclic());
        let gens = extract_generators(&d).unwrap();
        let again = build_mixed(&t, 3, 3, &gens.s, &gens.l, &gens.g, &gens.h, &gens.k).unwrap();
        assert!(again.closure().same_code(&d));
    }
}

//! Additive cyclic codes over `F_q^α × F_{q²}^β`.
//!
//! Every code is ultimately represented by a [`GeneratorMatrixCode`]: an
//! F_q-basis (in RREF) of the codeword set, laid out over `α + 2β` base-field
//! columns as `u_0 … u_{α-1}, b_0, c_0, b_1, c_1, …` where `u'_j = b_j + w c_j`.
//! The polynomial generators are convenient inputs, but cardinalities and
//! spanning claims are always checked against the module closure.

mod dual;
mod mixed;
mod pure;

pub use dual::{dual, extract_generators, inner_product, MixedGenerators};
pub use mixed::{build_mixed, build_mixed_relaxed, cardinality, spanning_set, Cardinality, MixedCode, SpanningSet};
pub use pure::{build_pure, canonical_generators, canonicalize_pure, pure_basis, PureCode};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldTower, Fq2Elem, FqElem};
use crate::linalg::{axpy, FqMatrix};
use crate::poly::Poly;

/// A word `(u | u')` of the ambient space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedWord {
    pub u: Vec<FqElem>,
    pub u_prime: Vec<Fq2Elem>,
}

impl MixedWord {
    pub fn zero(alpha: usize, beta: usize) -> Self {
        MixedWord {
            u: vec![FqElem(0); alpha],
            u_prime: vec![Fq2Elem::ZERO; beta],
        }
    }

    /// `(a(x) | b(x))` with `a` reduced mod `x^α - 1` and `b` mod `x^β - 1`.
    /// `a` must be a base-field polynomial; `b` may be over either level.
    pub fn from_polys(tower: &FieldTower, alpha: usize, beta: usize, a: &Poly, b: &Poly) -> Self {
        let u = if alpha == 0 {
            Vec::new()
        } else {
            let r = a.reduce_cyclic(alpha);
            (0..alpha).map(|i| FqElem(r.coeff(i))).collect()
        };
        let u_prime = if beta == 0 {
            Vec::new()
        } else {
            let r = b.reduce_cyclic(beta);
            (0..beta).map(|j| tower.to_fq2(r.coeff(j))).collect()
        };
        MixedWord { u, u_prime }
    }

    pub fn alpha(&self) -> usize {
        self.u.len()
    }

    pub fn beta(&self) -> usize {
        self.u_prime.len()
    }

    /// F_q-expansion: each extension coordinate becomes `b, c`.
    pub fn expand(&self) -> Vec<u16> {
        let mut v = Vec::with_capacity(self.u.len() + 2 * self.u_prime.len());
        v.extend(self.u.iter().map(|x| x.0));
        for z in &self.u_prime {
            v.push(z.b.0);
            v.push(z.c.0);
        }
        v
    }

    pub fn from_expanded(alpha: usize, beta: usize, row: &[u16]) -> Self {
        assert_eq!(row.len(), alpha + 2 * beta);
        MixedWord {
            u: row[..alpha].iter().map(|&x| FqElem(x)).collect(),
            u_prime: (0..beta)
                .map(|j| Fq2Elem {
                    b: FqElem(row[alpha + 2 * j]),
                    c: FqElem(row[alpha + 2 * j + 1]),
                })
                .collect(),
        }
    }

    /// Mixed Hamming weight: each coordinate of either block counts once.
    pub fn weight(&self) -> usize {
        self.u.iter().filter(|x| x.0 != 0).count() + self.u_prime.iter().filter(|z| !z.is_zero()).count()
    }

    pub fn shifted(&self) -> Self {
        let mut out = self.clone();
        if !out.u.is_empty() {
            out.u.rotate_right(1);
        }
        if !out.u_prime.is_empty() {
            out.u_prime.rotate_right(1);
        }
        out
    }
}

/// Simultaneous right cyclic shift of both blocks of an expanded row.
pub fn shift_expanded(row: &[u16], alpha: usize, beta: usize) -> Vec<u16> {
    let mut out = vec![0u16; row.len()];
    for i in 0..alpha {
        out[(i + 1) % alpha] = row[i];
    }
    for j in 0..beta {
        let t = (j + 1) % beta;
        out[alpha + 2 * t] = row[alpha + 2 * j];
        out[alpha + 2 * t + 1] = row[alpha + 2 * j + 1];
    }
    out
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    match (a, b) {
        (0, 0) => 1,
        (0, x) | (x, 0) => x,
        _ => a / gcd(a, b) * b,
    }
}

/// An F_q-linear code in the expanded layout, stored as an RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrixCode {
    tower: FieldTower,
    alpha: usize,
    beta: usize,
    matrix: FqMatrix,
}

impl GeneratorMatrixCode {
    /// Row space of the given expanded rows.
    pub fn from_rows(tower: &FieldTower, alpha: usize, beta: usize, rows: Vec<Vec<u16>>) -> Result<Self> {
        let m = FqMatrix::new(tower.base(), alpha + 2 * beta, rows)?;
        Ok(Self::from_matrix(tower, alpha, beta, &m))
    }

    pub fn from_matrix(tower: &FieldTower, alpha: usize, beta: usize, m: &FqMatrix) -> Self {
        assert_eq!(m.cols(), alpha + 2 * beta, "matrix width");
        GeneratorMatrixCode {
            tower: tower.clone(),
            alpha,
            beta,
            matrix: m.basis(),
        }
    }

    pub fn from_words(tower: &FieldTower, alpha: usize, beta: usize, words: &[MixedWord]) -> Result<Self> {
        let rows = words
            .iter()
            .map(|w| {
                if w.alpha() != alpha || w.beta() != beta {
                    Err(Error::ShapeMismatch(format!(
                        "word of block length ({}, {}) in a ({alpha}, {beta}) code",
                        w.alpha(),
                        w.beta()
                    )))
                } else {
                    Ok(w.expand())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(tower, alpha, beta, rows)
    }

    pub fn zero(tower: &FieldTower, alpha: usize, beta: usize) -> Self {
        GeneratorMatrixCode {
            tower: tower.clone(),
            alpha,
            beta,
            matrix: FqMatrix::empty(tower.base(), alpha + 2 * beta),
        }
    }

    pub fn full(tower: &FieldTower, alpha: usize, beta: usize) -> Self {
        GeneratorMatrixCode {
            tower: tower.clone(),
            alpha,
            beta,
            matrix: FqMatrix::identity(tower.base(), alpha + 2 * beta),
        }
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    /// Number of F_q columns, `α + 2β`.
    pub fn width(&self) -> usize {
        self.alpha + 2 * self.beta
    }

    pub fn matrix(&self) -> &FqMatrix {
        &self.matrix
    }

    /// F_q-dimension.
    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    /// `|C| = q^rank`, if it fits.
    pub fn size(&self) -> Option<u128> {
        (self.tower.q() as u128).checked_pow(self.rank() as u32)
    }

    pub fn words(&self) -> Vec<MixedWord> {
        self.matrix
            .rows()
            .iter()
            .map(|r| MixedWord::from_expanded(self.alpha, self.beta, r))
            .collect()
    }

    pub fn contains(&self, word: &MixedWord) -> bool {
        self.matrix.contains(&word.expand())
    }

    pub fn same_code(&self, other: &GeneratorMatrixCode) -> bool {
        self.alpha == other.alpha && self.beta == other.beta && self.matrix.rows() == other.matrix.rows()
    }

    /// Every codeword in expanded form. Intended for small codes only.
    pub fn codewords(&self) -> Vec<Vec<u16>> {
        let f = self.tower.base();
        let q = f.order();
        let k = self.rank();
        let total = q.checked_pow(k as u32).expect("code too large to enumerate");
        let mut out = Vec::with_capacity(total);
        for idx in 0..total {
            let mut v = vec![0u16; self.width()];
            let mut t = idx;
            for r in self.matrix.rows() {
                axpy(f, &mut v, (t % q) as u16, r);
                t /= q;
            }
            out.push(v);
        }
        out
    }

    /// Closed under the simultaneous right cyclic shift of both blocks.
    pub fn is_cyclic(&self) -> bool {
        let shifted = self
            .matrix
            .map_rows(self.width(), |r| shift_expanded(r, self.alpha, self.beta));
        self.matrix.contains_space(&shifted).expect("same shape")
    }

    /// `C_α` and `C_β`: images under the two coordinate projections.
    pub fn projections(&self) -> (GeneratorMatrixCode, GeneratorMatrixCode) {
        let a_cols: Vec<usize> = (0..self.alpha).collect();
        let b_cols: Vec<usize> = (self.alpha..self.width()).collect();
        (
            Self::from_matrix(&self.tower, self.alpha, 0, &self.matrix.select_columns(&a_cols)),
            Self::from_matrix(&self.tower, 0, self.beta, &self.matrix.select_columns(&b_cols)),
        )
    }

    /// `C ⊆ other`.
    pub fn is_subcode_of(&self, other: &GeneratorMatrixCode) -> bool {
        other.matrix.contains_space(&self.matrix).unwrap_or(false)
    }

    /// Mixed Hamming weight profile for this layout.
    pub fn mixed_profile(&self) -> crate::distance::WeightProfile {
        crate::distance::WeightProfile::mixed(self.alpha, self.beta)
    }
}

/// `is_cyclic` with an explicit declared split.
pub fn is_cyclic(code: &GeneratorMatrixCode, alpha: usize, beta: usize) -> Result<bool> {
    if code.alpha != alpha || code.beta != beta {
        return Err(Error::ShapeMismatch(format!(
            "code has split ({}, {}), expected ({alpha}, {beta})",
            code.alpha, code.beta
        )));
    }
    Ok(code.is_cyclic())
}

/// F_q-span of all `x^i * gen`, `0 ≤ i < lcm(α, β)`.
pub fn module_closure(
    generators: &[MixedWord],
    tower: &FieldTower,
    alpha: usize,
    beta: usize,
) -> Result<GeneratorMatrixCode> {
    let period = lcm(alpha, beta);
    let mut rows = Vec::with_capacity(generators.len() * period);
    for g in generators {
        if g.alpha() != alpha || g.beta() != beta {
            return Err(Error::ShapeMismatch(format!(
                "generator of block length ({}, {}) in a ({alpha}, {beta}) code",
                g.alpha(),
                g.beta()
            )));
        }
        let mut row = g.expand();
        for _ in 0..period {
            let next = shift_expanded(&row, alpha, beta);
            rows.push(row);
            row = next;
        }
    }
    GeneratorMatrixCode::from_rows(tower, alpha, beta, rows)
}

/// Result of comparing `|C|` against the Singleton bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingletonStatus {
    Attains,
    /// `n - d + 1 - log_Q |C|`.
    Slack(u32),
}

/// Checks `M ≤ Q^(n-d+1)` for a code of `M` words over an alphabet of size `Q`.
pub fn singleton_check(n: usize, size: u128, alphabet: u128, d: usize) -> Result<SingletonStatus> {
    if d == 0 || d > n {
        return Err(Error::Conditions(vec![format!("distance {d} outside 1..={n}")]));
    }
    let mut k = 0u32;
    let mut acc = 1u128;
    while acc < size {
        acc = acc
            .checked_mul(alphabet)
            .ok_or_else(|| Error::Conditions(vec!["code size overflows u128".into()]))?;
        k += 1;
    }
    if acc != size {
        return Err(Error::Conditions(vec![format!(
            "|C| = {size} is not a power of the alphabet size {alphabet}"
        )]));
    }
    let top = (n - d + 1) as u32;
    if k > top {
        let bound = alphabet.checked_pow(top).unwrap_or(u128::MAX);
        return Err(Error::SingletonViolation { size, bound });
    }
    Ok(if k == top {
        SingletonStatus::Attains
    } else {
        SingletonStatus::Slack(top - k)
    })
}

/// Singleton-type bound for `F_q^α × F_{q²}^β`: puncturing any `d - 1`
/// coordinates is injective, and deleting extension coordinates first gives
/// the tightest bound `log_q |C| ≤ α + 2β - 2·min(d-1, β) - max(0, d-1-β)`.
pub fn singleton_check_mixed(alpha: usize, beta: usize, rank: usize, d: usize) -> Result<SingletonStatus> {
    if d == 0 || d > alpha + beta {
        return Err(Error::Conditions(vec![format!("distance {d} outside 1..={}", alpha + beta)]));
    }
    let removed = 2 * (d - 1).min(beta) + (d - 1).saturating_sub(beta);
    let top = alpha + 2 * beta - removed;
    if rank > top {
        return Err(Error::Conditions(vec![format!(
            "log_q |C| = {rank} exceeds the Singleton bound {top}"
        )]));
    }
    Ok(if rank == top {
        SingletonStatus::Attains
    } else {
        SingletonStatus::Slack((top - rank) as u32)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_singleton() {
        // pure codes reduce to the F_{q²} bound
        assert_eq!(singleton_check_mixed(0, 5, 6, 3).unwrap(), SingletonStatus::Attains);
        assert_eq!(singleton_check_mixed(3, 3, 4, 3).unwrap(), SingletonStatus::Slack(1));
        assert!(singleton_check_mixed(3, 3, 6, 3).is_err());
        assert_eq!(singleton_check_mixed(2, 1, 1, 3).unwrap(), SingletonStatus::Attains);
        assert!(singleton_check_mixed(2, 1, 2, 3).is_err());
    }

    #[test]
    fn singleton_examples() {
        assert_eq!(singleton_check(5, 16u128.pow(3), 16, 3).unwrap(), SingletonStatus::Attains);
        assert_eq!(singleton_check(6, 16u128.pow(2), 16, 5).unwrap(), SingletonStatus::Attains);
        assert_eq!(singleton_check(5, 16u128.pow(2), 16, 3).unwrap(), SingletonStatus::Slack(1));
        assert!(matches!(
            singleton_check(5, 16u128.pow(4), 16, 3),
            Err(Error::SingletonViolation { .. })
        ));
    }

    #[test]
    fn shift_moves_both_blocks() {
        // α = 2, β = 2: (a0 a1 | b0 c0 b1 c1)
        assert_eq!(shift_expanded(&[1, 2, 3, 4, 5, 6], 2, 2), vec![2, 1, 5, 6, 3, 4]);
    }

    #[test]
    fn closure_of_nothing_is_zero() {
        let t = FieldTower::with_defaults(3).unwrap();
        let c = module_closure(&[], &t, 3, 3).unwrap();
        assert_eq!(c.rank(), 0);
    }

    #[test]
    fn unit_vector_span_is_not_cyclic() {
        let t = FieldTower::with_defaults(3).unwrap();
        let mut row = vec![0u16; 3 + 6];
        row[0] = 1;
        let c = GeneratorMatrixCode::from_rows(&t, 3, 3, vec![row]).unwrap();
        assert!(!c.is_cyclic());
        assert!(is_cyclic(&c, 3, 2).is_err());
    }

    #[test]
    fn projections_of_degenerate_codes() {
        let t = FieldTower::with_defaults(3).unwrap();
        let z = GeneratorMatrixCode::zero(&t, 2, 3);
        let (a, b) = z.projections();
        assert_eq!((a.rank(), b.rank()), (0, 0));
        let f = GeneratorMatrixCode::full(&t, 0, 3);
        let (a, b) = f.projections();
        assert_eq!((a.width(), a.rank(), b.rank()), (0, 0, 6));
    }
}

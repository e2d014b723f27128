//! Gray maps `φ(b + w c) = (b + c, c)` and `Φ(u | u') = (u, φ(u'))`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codes::{GeneratorMatrixCode, MixedCode, MixedWord};
use crate::gf::{FieldTower, Fq2Elem, FqElem};
use crate::linalg::FqMatrix;

/// Structure of `Φ(C)` for an additive cyclic code with block length `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// `α = β`: quasi-cyclic of index 3.
    QuasiCyclicIndex3,
    /// `3 | α + 2β`: generalized quasi-cyclic with blocks `(α, 2β)`.
    GeneralizedQuasiCyclic { alpha: usize, two_beta: usize },
    /// Otherwise: equivalent to a cyclic code (no permutation is built).
    CyclicEquivalent,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::QuasiCyclicIndex3 => write!(f, "quasi-cyclic, index 3"),
            Classification::GeneralizedQuasiCyclic { alpha, two_beta } => {
                write!(f, "generalized quasi-cyclic, block length ({alpha}, {two_beta})")
            }
            Classification::CyclicEquivalent => write!(f, "equivalent to a cyclic code"),
        }
    }
}

pub fn classify_image(alpha: usize, beta: usize) -> Classification {
    if alpha == beta {
        Classification::QuasiCyclicIndex3
    } else if (alpha + 2 * beta).is_multiple_of(3) {
        Classification::GeneralizedQuasiCyclic {
            alpha,
            two_beta: 2 * beta,
        }
    } else {
        Classification::CyclicEquivalent
    }
}

pub fn phi(tower: &FieldTower, u_prime: &[Fq2Elem]) -> Vec<FqElem> {
    let f = tower.base();
    u_prime
        .iter()
        .map(|z| FqElem(f.add(z.b.0, z.c.0)))
        .chain(u_prime.iter().map(|z| z.c))
        .collect()
}

#[allow(non_snake_case)]
pub fn Phi(tower: &FieldTower, word: &MixedWord) -> Vec<FqElem> {
    let mut out = word.u.clone();
    out.extend(phi(tower, &word.u_prime));
    out
}

/// Inverse of `Φ` for block length `(α, β)`.
pub fn phi_inverse(tower: &FieldTower, alpha: usize, beta: usize, image: &[FqElem]) -> MixedWord {
    assert_eq!(image.len(), alpha + 2 * beta);
    let f = tower.base();
    MixedWord {
        u: image[..alpha].to_vec(),
        u_prime: (0..beta)
            .map(|j| {
                let c = image[alpha + beta + j];
                Fq2Elem {
                    b: FqElem(f.sub(image[alpha + j].0, c.0)),
                    c,
                }
            })
            .collect(),
    }
}

/// `Φ` on the expanded layout `u…, b0, c0, b1, c1, …`.
pub fn phi_expanded(f: &crate::gf::Gf, alpha: usize, beta: usize, row: &[u16]) -> Vec<u16> {
    let mut out = Vec::with_capacity(row.len());
    out.extend_from_slice(&row[..alpha]);
    out.extend((0..beta).map(|j| f.add(row[alpha + 2 * j], row[alpha + 2 * j + 1])));
    out.extend((0..beta).map(|j| row[alpha + 2 * j + 1]));
    out
}

/// A Gray image: an F_q-linear code of length `α + 2β` with its origin split.
#[derive(Debug, Clone)]
pub struct GrayImageCode {
    base: GeneratorMatrixCode,
    alpha: usize,
    beta: usize,
    classification: Classification,
}

impl GrayImageCode {
    /// The image code, stored with split `(α + 2β, 0)`.
    pub fn base(&self) -> &GeneratorMatrixCode {
        &self.base
    }

    pub fn split(&self) -> (usize, usize) {
        (self.alpha, self.beta)
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn length(&self) -> usize {
        self.alpha + 2 * self.beta
    }

    pub fn dimension(&self) -> usize {
        self.base.rank()
    }

    pub fn matrix(&self) -> &FqMatrix {
        self.base.matrix()
    }
}

/// `Φ(C)` for any code in the expanded layout.
pub fn image_of(code: &GeneratorMatrixCode) -> GrayImageCode {
    let (alpha, beta) = (code.alpha(), code.beta());
    let f = code.tower().base();
    let m = code
        .matrix()
        .map_rows(alpha + 2 * beta, |r| phi_expanded(f, alpha, beta, r));
    GrayImageCode {
        base: GeneratorMatrixCode::from_matrix(code.tower(), alpha + 2 * beta, 0, &m),
        alpha,
        beta,
        classification: classify_image(alpha, beta),
    }
}

pub fn image_code(code: &MixedCode) -> GrayImageCode {
    image_of(code.closure())
}

/// `σ`: cyclic shift of the α-block together with the simultaneous shift of
/// the two β-halves. `Φ` carries `x*` to `σ`.
pub fn sigma(row: &[u16], alpha: usize, beta: usize) -> Vec<u16> {
    let mut out = vec![0u16; row.len()];
    for i in 0..alpha {
        out[(i + 1) % alpha] = row[i];
    }
    for half in 0..2 {
        let off = alpha + half * beta;
        for j in 0..beta {
            out[off + (j + 1) % beta] = row[off + j];
        }
    }
    out
}

pub fn shift_invariance_check(image: &GrayImageCode) -> bool {
    let (alpha, beta) = image.split();
    let m = image.matrix();
    let shifted = m.map_rows(m.cols(), |r| sigma(r, alpha, beta));
    m.contains_space(&shifted).expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_examples() {
        let t3 = FieldTower::with_defaults(3).unwrap();
        let w = Fq2Elem {
            b: FqElem(0),
            c: FqElem(1),
        };
        assert_eq!(phi(&t3, &[w]), vec![FqElem(1), FqElem(1)]);
        assert_eq!(phi(&t3, &[Fq2Elem::ZERO; 3]), vec![FqElem(0); 6]);
        let t4 = FieldTower::with_defaults(4).unwrap();
        let u = t4.u().unwrap();
        let z = Fq2Elem {
            b: FqElem(u),
            c: FqElem(1),
        };
        assert_eq!(phi(&t4, &[z]), vec![FqElem(u ^ 1), FqElem(1)]);
        let word = MixedWord {
            u: vec![FqElem(2)],
            u_prime: vec![w],
        };
        assert_eq!(Phi(&t3, &word), vec![FqElem(2), FqElem(1), FqElem(1)]);
        assert_eq!(phi_inverse(&t3, 1, 1, &Phi(&t3, &word)), word);
    }

    #[test]
    fn classification_cases() {
        assert_eq!(classify_image(3, 3), Classification::QuasiCyclicIndex3);
        assert_eq!(
            classify_image(1, 7),
            Classification::GeneralizedQuasiCyclic { alpha: 1, two_beta: 14 }
        );
        assert_eq!(classify_image(3, 4), Classification::CyclicEquivalent);
    }

    #[test]
    fn unit_vector_is_not_sigma_invariant() {
        let t = FieldTower::with_defaults(3).unwrap();
        let mut row = vec![0u16; 9];
        row[0] = 1;
        let c = GeneratorMatrixCode::from_rows(&t, 3, 3, vec![row]).unwrap();
        assert!(!shift_invariance_check(&image_of(&c)));
    }
}

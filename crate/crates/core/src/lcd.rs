//! Euclidean hulls, LCD tests, and the sufficient condition for `Φ(C)` to
//! be LCD: `C_α` self-orthogonal, rows of `G_β` F_q-independent and
//! `φ(C_β)` LCD.

use serde::{Deserialize, Serialize};

use crate::codes::{GeneratorMatrixCode, MixedCode, MixedWord};
use crate::error::{Error, Result};
use crate::gf::{FieldTower, Fq2Elem};
use crate::gray::{image_of, phi_expanded};
use crate::linalg::{dot, FqMatrix};

/// Basis of `rowspace(G) ∩ rowspace(G)^⊥` (standard dot product).
pub fn hull_matrix(g: &FqMatrix) -> FqMatrix {
    let dual = g.kernel();
    g.intersect(&dual).expect("same shape")
}

/// LCD test through the Gram matrix: for a full-rank `G`, `C` is LCD iff
/// `G·Gᵀ` is nonsingular.
pub fn is_lcd_gram(g: &FqMatrix) -> bool {
    let basis = g.basis();
    let gram = basis.mul(&basis.transpose()).expect("conformable");
    gram.rank() == basis.nrows()
}

pub fn hull(code: &GeneratorMatrixCode) -> GeneratorMatrixCode {
    GeneratorMatrixCode::from_matrix(code.tower(), code.alpha(), code.beta(), &hull_matrix(code.matrix()))
}

pub fn is_lcd(code: &GeneratorMatrixCode) -> bool {
    let by_hull = hull_matrix(code.matrix()).rank() == 0;
    debug_assert_eq!(by_hull, is_lcd_gram(code.matrix()), "hull and Gram LCD tests disagree");
    by_hull
}

pub fn is_self_orthogonal_matrix(g: &FqMatrix) -> bool {
    let f = g.field();
    let rows = g.rows();
    (0..rows.len()).all(|i| (i..rows.len()).all(|j| dot(f, &rows[i], &rows[j]) == 0))
}

pub fn is_self_orthogonal(code: &GeneratorMatrixCode) -> bool {
    is_self_orthogonal_matrix(code.matrix())
}

/// Whether the F_q-expansions of the rows are linearly independent.
pub fn rows_fq_independent(tower: &FieldTower, g_beta: &[Vec<Fq2Elem>]) -> bool {
    let Some(width) = g_beta.first().map(|r| 2 * r.len()) else {
        return true;
    };
    let rows: Vec<Vec<u16>> = g_beta
        .iter()
        .map(|r| r.iter().flat_map(|z| [z.b.0, z.c.0]).collect())
        .collect();
    match FqMatrix::new(tower.base(), width, rows) {
        Ok(m) => m.rank() == g_beta.len(),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LcdConclusion {
    LcdGuaranteed,
    Inapplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LcdCertificate {
    pub c_alpha_self_orthogonal: bool,
    pub g_beta_rows_independent: bool,
    pub phi_c_beta_lcd: bool,
    pub conclusion: LcdConclusion,
    /// `dim(Φ(C) ∩ Φ(C)^⊥)`, computed regardless of the conclusion.
    pub hull_dimension_observed: usize,
}

/// `φ(C_β)` for a generator matrix given row-wise.
pub fn phi_c_beta(tower: &FieldTower, rows: &[MixedWord]) -> Result<GeneratorMatrixCode> {
    let (alpha, beta) = block_length(rows)?;
    let f = tower.base();
    let images = rows
        .iter()
        .map(|w| phi_expanded(f, 0, beta, &w.expand()[alpha..]))
        .collect();
    GeneratorMatrixCode::from_rows(tower, 2 * beta, 0, images)
}

fn block_length(rows: &[MixedWord]) -> Result<(usize, usize)> {
    let first = rows
        .first()
        .ok_or_else(|| Error::ShapeMismatch("generator matrix has no rows".into()))?;
    let (alpha, beta) = (first.alpha(), first.beta());
    if rows.iter().any(|r| r.alpha() != alpha || r.beta() != beta) {
        return Err(Error::ShapeMismatch("rows of different block length".into()));
    }
    Ok((alpha, beta))
}

/// Evaluates the three hypotheses on `G = (G_α | G_β)` and observes the hull
/// of `Φ(C)` independently.
pub fn lcd_pipeline(tower: &FieldTower, rows: &[MixedWord]) -> Result<LcdCertificate> {
    let (alpha, beta) = block_length(rows)?;
    let code = GeneratorMatrixCode::from_words(tower, alpha, beta, rows)?;
    let (c_alpha, _) = code.projections();
    let g_beta: Vec<Vec<Fq2Elem>> = rows.iter().map(|r| r.u_prime.clone()).collect();
    let c_alpha_self_orthogonal = is_self_orthogonal(&c_alpha);
    let g_beta_rows_independent = rows_fq_independent(tower, &g_beta);
    let phi_c_beta_lcd = is_lcd(&phi_c_beta(tower, rows)?);
    let hull_dimension_observed = hull(image_of(&code).base()).rank();
    let conclusion = if c_alpha_self_orthogonal && g_beta_rows_independent && phi_c_beta_lcd {
        LcdConclusion::LcdGuaranteed
    } else {
        LcdConclusion::Inapplicable
    };
    Ok(LcdCertificate {
        c_alpha_self_orthogonal,
        g_beta_rows_independent,
        phi_c_beta_lcd,
        conclusion,
        hull_dimension_observed,
    })
}

/// The pipeline applied to the RREF generator matrix of a cyclic code.
pub fn lcd_pipeline_code(code: &MixedCode) -> Result<LcdCertificate> {
    lcd_pipeline(code.tower(), &code.closure().words())
}

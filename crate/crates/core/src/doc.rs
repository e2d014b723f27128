//! JSON input documents: cyclic-code definitions and raw generator matrices.

use serde::{Deserialize, Serialize};

use crate::codes::{build_mixed_relaxed, build_pure, GeneratorMatrixCode, MixedCode, MixedWord, PureCode};
use crate::error::{Error, Result};
use crate::gf::{prime_power, FieldTower, Level};
use crate::parse::{parse_elem, parse_poly};

/// `{ "q", "alpha", "beta", "s", "l", "g", "h", "k", "f1"?, "f2"? }`; pure
/// codes use `alpha = 0` and omit `s` and `l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDefinition {
    pub q: usize,
    #[serde(default)]
    pub alpha: usize,
    pub beta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<String>,
    pub g: String,
    pub h: String,
    pub k: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<String>,
}

/// `{ "q", "alpha", "beta", "rows" }`: each row lists `α` entries of F_q
/// followed by `β` entries of F_{q²}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub q: usize,
    pub alpha: usize,
    pub beta: usize,
    pub rows: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f2: Option<String>,
}

#[derive(Debug, Clone)]
pub enum BuiltCode {
    Pure(PureCode),
    Mixed(MixedCode),
}

impl BuiltCode {
    pub fn closure(&self) -> &GeneratorMatrixCode {
        match self {
            BuiltCode::Pure(c) => c.closure(),
            BuiltCode::Mixed(c) => c.closure(),
        }
    }

    pub fn tower(&self) -> &FieldTower {
        match self {
            BuiltCode::Pure(c) => c.tower(),
            BuiltCode::Mixed(c) => c.tower(),
        }
    }
}

/// Tower for `q`, with defining polynomials given as text (`f1` in `x` over
/// F_p, `f2` in `x` over F_q with `u` for the root of `f1`).
pub fn tower_for(q: usize, f1: Option<&str>, f2: Option<&str>) -> Result<FieldTower> {
    let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidTower(format!("{q} is not a prime power")))?;
    let with_f1 = match f1 {
        None => FieldTower::with_defaults(q)?,
        Some(text) => {
            let prime = FieldTower::with_defaults(p as usize)?;
            let f1 = parse_poly(text, &prime, Level::Prime)?;
            if f1.degree() != Some(m) {
                return Err(Error::InvalidTower(format!("f1 must have degree {m} for q = {q}")));
            }
            FieldTower::with_f1(p, f1.coeffs().to_vec())?
        }
    };
    match f2 {
        None => Ok(with_f1),
        Some(text) => {
            let f2 = parse_poly(text, &with_f1, Level::Base)?;
            FieldTower::new(p, with_f1.f1().to_vec(), f2.coeffs().to_vec())
        }
    }
}

impl CodeDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn tower(&self) -> Result<FieldTower> {
        tower_for(self.q, self.f1.as_deref(), self.f2.as_deref())
    }

    /// Builds the code, rejecting generators that violate any structural
    /// condition.
    pub fn build(&self) -> Result<BuiltCode> {
        let (code, violated) = self.build_relaxed()?;
        if !violated.is_empty() {
            return Err(Error::Conditions(violated));
        }
        Ok(code)
    }

    /// Builds the module closure of the generators whenever the divisibility
    /// conditions hold, returning the other violated conditions alongside.
    pub fn build_relaxed(&self) -> Result<(BuiltCode, Vec<String>)> {
        let tower = self.tower()?;
        let base = |s: &str| parse_poly(s, &tower, Level::Base);
        let (g, h, k) = (base(&self.g)?, base(&self.h)?, base(&self.k)?);
        if self.alpha == 0 {
            if self.s.is_some() || self.l.is_some() {
                return Err(Error::Document("s and l must be omitted when alpha = 0".into()));
            }
            return Ok((BuiltCode::Pure(build_pure(&tower, self.beta, &g, &h, &k)?), Vec::new()));
        }
        let missing = |name: &str| Error::Document(format!("field `{name}` is required when alpha > 0"));
        let s = base(self.s.as_deref().ok_or_else(|| missing("s"))?)?;
        let l = parse_poly(self.l.as_deref().ok_or_else(|| missing("l"))?, &tower, Level::Ext)?;
        let (code, violated) = build_mixed_relaxed(&tower, self.alpha, self.beta, &s, &l, &g, &h, &k)?;
        Ok((BuiltCode::Mixed(code), violated))
    }
}

impl MatrixDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn tower(&self) -> Result<FieldTower> {
        tower_for(self.q, self.f1.as_deref(), self.f2.as_deref())
    }

    /// Parses the rows into mixed words.
    pub fn words(&self, tower: &FieldTower) -> Result<Vec<MixedWord>> {
        if self.rows.is_empty() {
            return Err(Error::Document("matrix has no rows".into()));
        }
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != self.alpha + self.beta {
                    return Err(Error::Document(format!(
                        "row {} has {} entries, expected alpha + beta = {}",
                        i + 1,
                        row.len(),
                        self.alpha + self.beta
                    )));
                }
                let u = row[..self.alpha]
                    .iter()
                    .map(|e| parse_elem(e, tower, Level::Base).map(crate::gf::FqElem))
                    .collect::<Result<Vec<_>>>()?;
                let u_prime = row[self.alpha..]
                    .iter()
                    .map(|e| parse_elem(e, tower, Level::Ext).map(|z| tower.to_fq2(z)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(MixedWord { u, u_prime })
            })
            .collect()
    }
}

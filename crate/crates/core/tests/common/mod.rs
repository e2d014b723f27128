#![allow(dead_code)]

pub mod properties;

use fqcodes::codes::{module_closure, GeneratorMatrixCode, MixedWord};
use fqcodes::gf::FieldTower;
use fqcodes::poly::Poly;
use proptest::prelude::*;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

pub fn tower(q: usize) -> FieldTower {
    static CACHE: OnceLock<Mutex<HashMap<usize, FieldTower>>> = OnceLock::new();
    let mut cache = CACHE.get_or_init(Default::default).lock().unwrap();
    cache
        .entry(q)
        .or_insert_with(|| FieldTower::with_defaults(q).unwrap())
        .clone()
}

/// Block lengths and raw expanded generator rows over F_q.
#[derive(Debug, Clone)]
pub struct Seed {
    pub q: usize,
    pub alpha: usize,
    pub beta: usize,
    pub rows: Vec<Vec<u16>>,
}

impl Seed {
    pub fn tower(&self) -> FieldTower {
        tower(self.q)
    }

    pub fn words(&self) -> Vec<MixedWord> {
        self.rows
            .iter()
            .map(|r| MixedWord::from_expanded(self.alpha, self.beta, r))
            .collect()
    }

    /// Cyclic code generated by the rows.
    pub fn cyclic(&self) -> GeneratorMatrixCode {
        module_closure(&self.words(), &self.tower(), self.alpha, self.beta).unwrap()
    }

    /// Linear (not necessarily cyclic) code spanned by the rows.
    pub fn linear(&self) -> GeneratorMatrixCode {
        GeneratorMatrixCode::from_rows(&self.tower(), self.alpha, self.beta, self.rows.clone()).unwrap()
    }
}

/// Rows that are zero with some probability, so that small codes are common.
fn sparse_row(q: usize, width: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(prop_oneof![2 => Just(0u16), 3 => 0..q as u16], width)
}

pub fn seed(qs: &'static [usize], alphas: std::ops::RangeInclusive<usize>, betas: std::ops::RangeInclusive<usize>, max_rows: usize) -> impl Strategy<Value = Seed> {
    (prop::sample::select(qs), alphas, betas, 1..=max_rows).prop_flat_map(|(q, alpha, beta, n)| {
        prop::collection::vec(sparse_row(q, alpha + 2 * beta), n).prop_map(move |rows| Seed { q, alpha, beta, rows })
    })
}

pub fn poly_coeffs(q: usize, max_len: usize) -> impl Strategy<Value = Vec<u16>> {
    prop::collection::vec(0..q as u16, 0..=max_len)
}

pub fn base_poly(t: &FieldTower, coeffs: &[u16]) -> Poly {
    Poly::new(t.base(), coeffs.to_vec())
}

/// All F_q-combinations of the rows, enumerated directly.
pub fn span(t: &FieldTower, rows: &[Vec<u16>], width: usize) -> Vec<Vec<u16>> {
    let f = t.base();
    let q = f.order();
    let mut out = vec![vec![0u16; width]];
    for row in rows {
        let mut next = Vec::with_capacity(out.len() * q);
        for v in &out {
            for c in 0..q as u16 {
                next.push(v.iter().zip(row).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// Minimum nonzero weight with each F_{q²} pair counted once.
pub fn naive_distance(words: &[Vec<u16>], alpha: usize, beta: usize) -> Option<usize> {
    words
        .iter()
        .map(|v| {
            v[..alpha].iter().filter(|&&x| x != 0).count()
                + (0..beta).filter(|j| v[alpha + 2 * j] != 0 || v[alpha + 2 * j + 1] != 0).count()
        })
        .filter(|&w| w > 0)
        .min()
}

pub fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 1000,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

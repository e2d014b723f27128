//! Minimum distance: exact enumeration and seeded upper bounds.
//!
//! The exact engine walks all `p^N` F_p-combinations of the `N = k·m`
//! F_p-expanded generator rows in a minimal-change order: step `t` adds one
//! copy of row `v_p(t)`, so after `t` steps the coefficient of row `i` is
//! `t_i - t_{i+1} mod p` (base-`p` digits of `t`). That map is a bijection,
//! which lets any range of `t` be started directly and enumerated in
//! parallel. Codewords are bitsliced into `u128` planes when the width
//! allows.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::GeneratorMatrixCode;
use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::linalg::axpy;

pub const DEFAULT_BUDGET: u128 = 1 << 24;

/// A partition of the columns into groups; the weight of a word is the
/// number of groups on which it is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightProfile {
    width: usize,
    groups: Vec<Vec<usize>>,
}

impl WeightProfile {
    pub fn new(width: usize, groups: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; width];
        for &c in groups.iter().flatten() {
            if c >= width || seen[c] {
                return Err(Error::ShapeMismatch(format!(
                    "column {c} repeated or outside 0..{width}"
                )));
            }
            seen[c] = true;
        }
        if groups.iter().any(|g| g.is_empty()) || seen.iter().any(|&s| !s) {
            return Err(Error::ShapeMismatch("groups must be nonempty and cover every column".into()));
        }
        Ok(WeightProfile { width, groups })
    }

    /// α singletons followed by β pairs `(b_j, c_j)`.
    pub fn mixed(alpha: usize, beta: usize) -> Self {
        let groups = (0..alpha)
            .map(|i| vec![i])
            .chain((0..beta).map(|j| vec![alpha + 2 * j, alpha + 2 * j + 1]))
            .collect();
        WeightProfile {
            width: alpha + 2 * beta,
            groups,
        }
    }

    /// Plain Hamming weight on `n` columns.
    pub fn singletons(n: usize) -> Self {
        Self::mixed(n, 0)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    fn group_weight(&self, nonzero: impl Fn(usize) -> bool) -> usize {
        self.groups.iter().filter(|g| g.iter().any(|&c| nonzero(c))).count()
    }
}

pub fn weight(word: &[u16], profile: &WeightProfile) -> Result<usize> {
    if word.len() != profile.width {
        return Err(Error::ShapeMismatch(format!(
            "word of length {} against a profile of width {}",
            word.len(),
            profile.width
        )));
    }
    Ok(profile.group_weight(|c| word[c] != 0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    /// `None` for the zero code.
    pub value: Option<usize>,
    pub exact: bool,
    pub witnesses_examined: u128,
    pub seed: Option<u64>,
}

/// `q^rank`, saturating.
pub fn codeword_count(code: &GeneratorMatrixCode) -> u128 {
    (code.tower().q() as u128)
        .checked_pow(code.rank() as u32)
        .unwrap_or(u128::MAX)
}

fn check_profile(code: &GeneratorMatrixCode, profile: &WeightProfile) -> Result<()> {
    if profile.width != code.width() {
        return Err(Error::ShapeMismatch(format!(
            "profile width {} for a code of width {}",
            profile.width,
            code.width()
        )));
    }
    Ok(())
}

/// Rows `r·e` for every generator row `r` and every F_p-basis element `e`
/// of F_q; their F_p-span is the code.
fn prime_rows(code: &GeneratorMatrixCode) -> Vec<Vec<u16>> {
    let f = code.tower().base();
    let (p, m) = (f.characteristic(), f.prime_degree());
    let mut out = Vec::new();
    for row in code.matrix().rows() {
        let mut e = 1u16;
        for _ in 0..m {
            out.push(row.iter().map(|&x| f.mul(x, e)).collect());
            e *= p;
        }
    }
    out
}

fn digits(mut t: u64, p: u64, n: usize) -> Vec<u64> {
    let mut d = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        d.push(t % p);
        t /= p;
    }
    d
}

/// Multiplicity of every expanded row in the state reached after `t` steps.
fn start_coefficients(t: u64, p: u64, n: usize) -> Vec<u64> {
    let d = digits(t, p, n);
    (0..n).map(|i| (d[i] + p - d[i + 1]) % p).collect()
}

#[inline]
fn valuation(mut t: u64, p: u64) -> usize {
    if p == 2 {
        return t.trailing_zeros() as usize;
    }
    let mut v = 0;
    while t.is_multiple_of(p) {
        t /= p;
        v += 1;
    }
    v
}

/// Weight evaluation on a bitmask of nonzero columns.
struct MaskProfile {
    single: u128,
    pair_lead: u128,
    general: Option<Vec<u128>>,
}

impl MaskProfile {
    fn new(profile: &WeightProfile) -> Self {
        let mut single = 0u128;
        let mut pair_lead = 0u128;
        let mut simple = true;
        for g in &profile.groups {
            match g.as_slice() {
                [c] => single |= 1 << c,
                [a, b] if *b == a + 1 => pair_lead |= 1 << a,
                _ => simple = false,
            }
        }
        let general = (!simple).then(|| {
            profile
                .groups
                .iter()
                .map(|g| g.iter().fold(0u128, |m, &c| m | (1 << c)))
                .collect()
        });
        MaskProfile {
            single,
            pair_lead,
            general,
        }
    }

    #[inline]
    fn weight(&self, nz: u128) -> u32 {
        match &self.general {
            None => (nz & self.single).count_ones() + ((nz | (nz >> 1)) & self.pair_lead).count_ones(),
            Some(groups) => groups.iter().filter(|&&g| nz & g != 0).count() as u32,
        }
    }
}

/// One digit of every column, bitsliced: `(is_one, is_two)` for `p = 3`;
/// only the first mask is used for `p = 2`.
type Plane = (u128, u128);

const MAX_DIGITS: usize = 5;

#[derive(Clone, Copy)]
struct Packed {
    planes: [Plane; MAX_DIGITS],
}

impl Packed {
    fn from_row(row: &[u16], p: u16, m: usize) -> Self {
        let mut planes = [(0u128, 0u128); MAX_DIGITS];
        for (c, &x) in row.iter().enumerate() {
            let mut v = x;
            for plane in planes.iter_mut().take(m) {
                match v % p {
                    0 => {}
                    1 => plane.0 |= 1 << c,
                    _ => plane.1 |= 1 << c,
                }
                v /= p;
            }
        }
        Packed { planes }
    }

    #[inline]
    fn add2(&mut self, r: &Packed, m: usize) {
        for j in 0..m {
            self.planes[j].0 ^= r.planes[j].0;
        }
    }

    #[inline]
    fn add3(&mut self, r: &Packed, m: usize) {
        for j in 0..m {
            let (s1, s2) = self.planes[j];
            let (r1, r2) = r.planes[j];
            let s0 = !(s1 | s2);
            let r0 = !(r1 | r2);
            self.planes[j] = ((s1 & r0) | (s0 & r1) | (s2 & r2), (s2 & r0) | (s0 & r2) | (s1 & r1));
        }
    }

    #[inline]
    fn nonzero(&self, m: usize) -> u128 {
        self.planes[..m].iter().fold(0, |acc, pl| acc | pl.0 | pl.1)
    }
}

/// Shared state of one exact run.
struct Search {
    best: AtomicU32,
    examined: AtomicU64,
    done: AtomicBool,
}

impl Search {
    fn offer(&self, w: u32) {
        self.best.fetch_min(w, Ordering::Relaxed);
        if w <= 1 {
            self.done.store(true, Ordering::Relaxed);
        }
    }
}

const CHECK_EVERY: u64 = 1 << 14;

fn run_packed(rows: &[Vec<u16>], f: &Gf, profile: &MaskProfile, lo: u64, hi: u64, s: &Search) {
    let p = f.characteristic() as u64;
    let m = f.prime_degree();
    let packed: Vec<Packed> = rows.iter().map(|r| Packed::from_row(r, p as u16, m)).collect();
    let mut state = Packed {
        planes: [(0, 0); MAX_DIGITS],
    };
    for (i, &c) in start_coefficients(lo, p, rows.len()).iter().enumerate() {
        for _ in 0..c {
            if p == 2 {
                state.add2(&packed[i], m);
            } else {
                state.add3(&packed[i], m);
            }
        }
    }
    let mut local = u32::MAX;
    let mut t = lo;
    loop {
        if t != 0 {
            let w = profile.weight(state.nonzero(m));
            if w < local {
                local = w;
                s.offer(w);
            }
        }
        t += 1;
        if t >= hi {
            break;
        }
        if t.is_multiple_of(CHECK_EVERY) && s.done.load(Ordering::Relaxed) {
            break;
        }
        let r = &packed[valuation(t, p)];
        if p == 2 {
            state.add2(r, m);
        } else {
            state.add3(r, m);
        }
    }
    s.examined.fetch_add(t - lo, Ordering::Relaxed);
}

fn run_generic(rows: &[Vec<u16>], f: &Gf, profile: &WeightProfile, lo: u64, hi: u64, s: &Search) {
    let p = f.characteristic() as u64;
    let mut state = vec![0u16; profile.width];
    for (i, &c) in start_coefficients(lo, p, rows.len()).iter().enumerate() {
        axpy(f, &mut state, f.from_int(c), &rows[i]);
    }
    let mut local = u32::MAX;
    let mut t = lo;
    loop {
        if t != 0 {
            let w = profile.group_weight(|c| state[c] != 0) as u32;
            if w < local {
                local = w;
                s.offer(w);
            }
        }
        t += 1;
        if t >= hi {
            break;
        }
        if t.is_multiple_of(CHECK_EVERY) && s.done.load(Ordering::Relaxed) {
            break;
        }
        for (x, &y) in state.iter_mut().zip(&rows[valuation(t, p)]) {
            *x = f.add(*x, y);
        }
    }
    s.examined.fetch_add(t - lo, Ordering::Relaxed);
}

/// Exact minimum weight over all nonzero codewords.
///
/// Refuses with [`Error::BudgetExceeded`] when `q^rank > budget`; use
/// [`min_distance_upper`] for such codes.
pub fn min_distance_exact(code: &GeneratorMatrixCode, profile: &WeightProfile, budget: u128) -> Result<DistanceResult> {
    check_profile(code, profile)?;
    let required = codeword_count(code);
    if required > budget || required > u64::MAX as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    if code.rank() == 0 {
        return Ok(DistanceResult {
            value: None,
            exact: true,
            witnesses_examined: 0,
            seed: None,
        });
    }
    let f = code.tower().base();
    let rows = prime_rows(code);
    let total = required as u64;
    let search = Search {
        best: AtomicU32::new(u32::MAX),
        examined: AtomicU64::new(0),
        done: AtomicBool::new(false),
    };
    let p = f.characteristic();
    let packed = (p == 2 || p == 3) && profile.width <= 128 && f.prime_degree() <= MAX_DIGITS;
    let mask_profile = MaskProfile::new(profile);
    let chunk = (total / (64 * rayon::current_num_threads() as u64)).max(1 << 12);
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    starts.par_iter().for_each(|&lo| {
        if search.done.load(Ordering::Relaxed) {
            return;
        }
        let hi = (lo + chunk).min(total);
        if packed {
            run_packed(&rows, f, &mask_profile, lo, hi, &search);
        } else {
            run_generic(&rows, f, profile, lo, hi, &search);
        }
    });
    Ok(DistanceResult {
        value: Some(search.best.load(Ordering::Relaxed) as usize),
        exact: true,
        witnesses_examined: search.examined.load(Ordering::Relaxed) as u128,
        seed: None,
    })
}

fn sample(code: &GeneratorMatrixCode, profile: &WeightProfile, rng: &mut ChaCha8Rng) -> (usize, u128) {
    let f = code.tower().base();
    let q = f.order() as u16;
    let mut order: Vec<&Vec<usize>> = profile.groups.iter().collect();
    order.shuffle(rng);
    let cols: Vec<usize> = order.into_iter().flatten().copied().collect();
    let (r, pivots) = code.matrix().rref_with_order(&cols);
    let rows = &r.rows()[..pivots.len()];
    let mut best = usize::MAX;
    let mut seen = 0u128;
    let mut offer = |v: &[u16]| {
        let w = profile.group_weight(|c| v[c] != 0);
        seen += 1;
        if w > 0 {
            best = best.min(w);
        }
    };
    for (i, a) in rows.iter().enumerate() {
        offer(a);
        for b in &rows[i + 1..] {
            for c in 1..q {
                let mut v = a.clone();
                axpy(f, &mut v, c, b);
                offer(&v);
            }
        }
    }
    let mut v = vec![0u16; profile.width];
    for row in rows {
        axpy(f, &mut v, rng.gen_range(0..q), row);
    }
    offer(&v);
    (best, seen)
}

/// Upper bound on the minimum weight from `samples` information-set samples.
///
/// Each sample orders the weight groups at random, reduces the generator
/// matrix with that column priority and tries every reduced row, every
/// `row_i + c·row_j` and one uniformly random codeword. Deterministic for a
/// fixed `(samples, seed)`.
pub fn min_distance_upper(
    code: &GeneratorMatrixCode,
    profile: &WeightProfile,
    samples: usize,
    seed: u64,
) -> Result<DistanceResult> {
    check_profile(code, profile)?;
    if code.rank() == 0 {
        return Ok(DistanceResult {
            value: None,
            exact: false,
            witnesses_examined: 0,
            seed: Some(seed),
        });
    }
    let (best, seen) = (0..samples.max(1) as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            sample(code, profile, &mut rng)
        })
        .reduce(|| (usize::MAX, 0), |a, b| (a.0.min(b.0), a.1 + b.1));
    Ok(DistanceResult {
        value: (best != usize::MAX).then_some(best),
        exact: false,
        witnesses_examined: seen,
        seed: Some(seed),
    })
}

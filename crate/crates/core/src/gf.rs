//! Finite field towers `F_p ⊂ F_q = F_p[u]/(f1) ⊂ F_{q²} = F_q[w]/(f2)`.
//!
//! Every element is stored in coordinate form, packed into a `u16` index:
//!
//! * prime level: the residue itself;
//! * base level: `Σ c_i p^i` where `c_i` is the coefficient of `u^i`;
//! * extension level: `b + q·c` for the element `b + w·c`.
//!
//! Arithmetic goes through precomputed tables, which keeps the hot loops
//! in the distance engine free of polynomial reductions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported base field.
pub const MAX_BASE_ORDER: usize = 32;

/// Position of a field inside the tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Prime,
    Base,
    Ext,
}

/// Table-driven arithmetic for one level of a tower.
pub struct Gf {
    level: Level,
    p: u16,
    /// `log_p(order)`.
    dim: usize,
    order: usize,
    /// Identifies the tower this level was built from.
    ident: (u16, Vec<u16>, Vec<u16>),
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf")
            .field("level", &self.level)
            .field("order", &self.order)
            .field("f1", &self.ident.1)
            .field("f2", &self.ident.2)
            .finish()
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.level == other.level && self.ident == other.ident)
    }
}

impl Eq for Gf {}

impl Gf {
    fn from_mul(level: Level, p: u16, dim: usize, ident: (u16, Vec<u16>, Vec<u16>), mul: Vec<u16>) -> Self {
        let order = (p as usize).pow(dim as u32);
        let mut add = vec![0u16; order * order];
        let mut neg = vec![0u16; order];
        for a in 0..order {
            let da = digits(a, p, dim);
            neg[a] = da
                .iter()
                .rev()
                .fold(0usize, |acc, &d| acc * p as usize + ((p - d) % p) as usize)
                as u16;
            for b in 0..order {
                let db = digits(b, p, dim);
                let mut s = 0usize;
                for i in (0..dim).rev() {
                    s = s * p as usize + ((da[i] + db[i]) % p) as usize;
                }
                add[a * order + b] = s as u16;
            }
        }
        let mut inv = vec![0u16; order];
        for a in 1..order {
            inv[a] = (1..order)
                .find(|&b| mul[a * order + b] == 1)
                .expect("multiplication table of a field has inverses") as u16;
        }
        Gf {
            level,
            p,
            dim,
            order,
            ident,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u16 {
        self.p
    }

    /// Degree over the prime field.
    pub fn prime_degree(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            None
        } else {
            Some(self.inv[a as usize])
        }
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The prime-field element `n mod p`, embedded.
    pub fn from_int(&self, n: u64) -> u16 {
        (n % self.p as u64) as u16
    }

    pub fn contains(&self, a: u16) -> bool {
        (a as usize) < self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.order as u16
    }

    /// Base-`p` coordinates of `a` (lowest first).
    pub fn coords(&self, a: u16) -> Vec<u16> {
        digits(a as usize, self.p, self.dim)
    }
}

fn digits(mut a: usize, p: u16, dim: usize) -> Vec<u16> {
    let mut out = Vec::with_capacity(dim);
    for _ in 0..dim {
        out.push((a % p as usize) as u16);
        a /= p as usize;
    }
    out
}

fn is_prime(p: u16) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splits `q` into `(p, m)` with `q = p^m`.
pub fn prime_power(q: usize) -> Option<(u16, usize)> {
    if q < 2 || q > u16::MAX as usize {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))? as u16;
    let (mut r, mut m) = (q, 0);
    while r % p as usize == 0 {
        r /= p as usize;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

/// An element of F_q in coordinate form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FqElem(pub u16);

/// An element `b + w·c` of F_{q²}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Fq2Elem {
    pub b: FqElem,
    pub c: FqElem,
}

impl Fq2Elem {
    pub const ZERO: Fq2Elem = Fq2Elem {
        b: FqElem(0),
        c: FqElem(0),
    };

    pub fn is_zero(&self) -> bool {
        self.b.0 == 0 && self.c.0 == 0
    }
}

/// A tagged element, for the checked arithmetic entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub level: Level,
    pub value: u16,
}

/// Immutable field tower; cloning shares the tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTower {
    p: u16,
    m: usize,
    f1: Vec<u16>,
    f2: Vec<u16>,
    prime: Arc<Gf>,
    base: Arc<Gf>,
    ext: Arc<Gf>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FieldTower(q = {}, f1 = {}, f2 = {})",
            self.q(),
            self.render_defining(Level::Prime, &self.f1),
            self.render_defining(Level::Base, &self.f2)
        )
    }
}

fn prime_field(p: u16, ident: (u16, Vec<u16>, Vec<u16>)) -> Gf {
    let mul = (0..p as usize * p as usize)
        .map(|i| ((i / p as usize) * (i % p as usize) % p as usize) as u16)
        .collect();
    Gf::from_mul(Level::Prime, p, 1, ident, mul)
}

impl FieldTower {
    /// Builds the tower from explicit defining polynomials (coefficients
    /// lowest first; `f1` over F_p, `f2` over F_q in base-level packing).
    pub fn new(p: u16, f1: Vec<u16>, f2: Vec<u16>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidTower(format!("{p} is not prime")));
        }
        let m = f1.len().saturating_sub(1);
        if m == 0 || f1.last() != Some(&1) || f1.iter().any(|&c| c >= p) {
            return Err(Error::InvalidTower(
                "f1 must be a monic polynomial of degree >= 1 over F_p".into(),
            ));
        }
        let q = (p as usize).checked_pow(m as u32).unwrap_or(usize::MAX);
        if q > MAX_BASE_ORDER {
            return Err(Error::InvalidTower(format!(
                "base field of order {q} exceeds the supported maximum {MAX_BASE_ORDER}"
            )));
        }
        let ident = (p, f1.clone(), f2.clone());
        let prime = prime_field(p, ident.clone());
        if !is_irreducible_over_prime(&prime, &f1) {
            return Err(Error::InvalidTower("f1 is reducible over F_p".into()));
        }
        let base = Gf::from_mul(Level::Base, p, m, ident.clone(), base_mul_table(p, &f1));
        if f2.len() != 3 || f2[2] != 1 || f2.iter().any(|&c| !base.contains(c)) {
            return Err(Error::InvalidTower(
                "f2 must be a monic quadratic over F_q".into(),
            ));
        }
        if has_root(&base, &f2) {
            return Err(Error::InvalidTower("f2 has a root in F_q".into()));
        }
        let ext = Gf::from_mul(Level::Ext, p, 2 * m, ident, ext_mul_table(&base, &f2));
        Ok(FieldTower {
            p,
            m,
            f1,
            f2,
            prime: Arc::new(prime),
            base: Arc::new(base),
            ext: Arc::new(ext),
        })
    }

    /// Default tower for `q`: the first irreducible `f1` and `f2` in index
    /// order. This yields `x²+1` for q=3, `f1 = x²+x+1, f2 = x²+x+u` for q=4
    /// and `f1 = x³+x+1, f2 = x²+x+1` for q=8.
    pub fn with_defaults(q: usize) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidTower(format!("{q} is not a prime power")))?;
        if q > MAX_BASE_ORDER {
            return Err(Error::InvalidTower(format!(
                "base field of order {q} exceeds the supported maximum {MAX_BASE_ORDER}"
            )));
        }
        let f1 = Self::default_f1(p, m);
        let f2 = Self::default_f2(p, &f1)?;
        Self::new(p, f1, f2)
    }

    /// Tower over `F_p[u]/(f1)` with the default `f2` for that base field.
    pub fn with_f1(p: u16, f1: Vec<u16>) -> Result<Self> {
        if !is_prime(p) || f1.len() < 2 || f1.last() != Some(&1) || f1.iter().any(|&c| c >= p) {
            return Err(Error::InvalidTower("f1 must be a monic polynomial over a prime field".into()));
        }
        if (p as usize).checked_pow(f1.len() as u32 - 1).is_none_or(|q| q > MAX_BASE_ORDER) {
            return Err(Error::InvalidTower(format!(
                "base field exceeds the supported maximum {MAX_BASE_ORDER}"
            )));
        }
        if !is_irreducible_over_prime(&prime_field(p, (p, vec![], vec![])), &f1) {
            return Err(Error::InvalidTower("f1 is reducible over F_p".into()));
        }
        let f2 = Self::default_f2(p, &f1)?;
        Self::new(p, f1, f2)
    }

    fn default_f1(p: u16, m: usize) -> Vec<u16> {
        if m == 1 {
            return vec![0, 1];
        }
        let prime = prime_field(p, (p, vec![], vec![]));
        let count = (p as usize).pow(m as u32);
        (0..count)
            .map(|i| {
                let mut f = digits(i, p, m);
                f.push(1);
                f
            })
            .find(|f| is_irreducible_over_prime(&prime, f))
            .expect("irreducible polynomials exist in every degree")
    }

    fn default_f2(p: u16, f1: &[u16]) -> Result<Vec<u16>> {
        let m = f1.len() - 1;
        let base = Gf::from_mul(Level::Base, p, m, (p, vec![], vec![]), base_mul_table(p, f1));
        let q = base.order();
        (0..q * q)
            .map(|i| vec![(i % q) as u16, (i / q) as u16, 1])
            .find(|f| !has_root(&base, f))
            .ok_or_else(|| Error::InvalidTower("no irreducible quadratic found".into()))
    }

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> usize {
        self.base.order()
    }

    pub fn f1(&self) -> &[u16] {
        &self.f1
    }

    pub fn f2(&self) -> &[u16] {
        &self.f2
    }

    pub fn prime(&self) -> &Arc<Gf> {
        &self.prime
    }

    pub fn base(&self) -> &Arc<Gf> {
        &self.base
    }

    pub fn ext(&self) -> &Arc<Gf> {
        &self.ext
    }

    pub fn field(&self, level: Level) -> &Arc<Gf> {
        match level {
            Level::Prime => &self.prime,
            Level::Base => &self.base,
            Level::Ext => &self.ext,
        }
    }

    fn check(&self, x: FieldElem, y: FieldElem) -> Result<&Gf> {
        if x.level != y.level {
            return Err(Error::TowerMismatch {
                left: x.level,
                right: y.level,
            });
        }
        let f = self.field(x.level);
        for v in [x.value, y.value] {
            if !f.contains(v) {
                return Err(Error::ElementOutOfRange {
                    value: v as u32,
                    order: f.order(),
                });
            }
        }
        Ok(f)
    }

    pub fn ff_add(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        let f = self.check(x, y)?;
        Ok(FieldElem {
            level: x.level,
            value: f.add(x.value, y.value),
        })
    }

    pub fn ff_mul(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        let f = self.check(x, y)?;
        Ok(FieldElem {
            level: x.level,
            value: f.mul(x.value, y.value),
        })
    }

    pub fn ff_inv(&self, x: FieldElem) -> Result<FieldElem> {
        let f = self.check(x, x)?;
        let value = f.inv(x.value).ok_or(Error::DivisionByZero)?;
        Ok(FieldElem {
            level: x.level,
            value,
        })
    }

    /// Packed extension index of `b + w·c`.
    #[inline]
    pub fn compose(&self, b: FqElem, c: FqElem) -> u16 {
        b.0 + self.q() as u16 * c.0
    }

    /// Splits a packed extension index into its base-field components.
    #[inline]
    pub fn decompose(&self, z: u16) -> (FqElem, FqElem) {
        let q = self.q() as u16;
        (FqElem(z % q), FqElem(z / q))
    }

    pub fn to_fq2(&self, z: u16) -> Fq2Elem {
        let (b, c) = self.decompose(z);
        Fq2Elem { b, c }
    }

    pub fn from_fq2(&self, z: Fq2Elem) -> u16 {
        self.compose(z.b, z.c)
    }

    /// The generator `w` of F_{q²} over F_q.
    pub fn omega(&self) -> u16 {
        self.q() as u16
    }

    /// The generator `u` of F_q over F_p (only meaningful when `m > 1`).
    pub fn u(&self) -> Option<u16> {
        (self.m > 1).then_some(self.p)
    }

    /// Renders an element in the notation accepted by the parser.
    pub fn render(&self, level: Level, value: u16) -> String {
        match level {
            Level::Prime => value.to_string(),
            Level::Base => self.render_base(value),
            Level::Ext => {
                let (b, c) = self.decompose(value);
                let mut terms = Vec::new();
                if c.0 != 0 {
                    let cs = self.render_base(c.0);
                    terms.push(if c.0 == 1 {
                        "w".to_string()
                    } else if cs.contains('+') {
                        format!("({cs})w")
                    } else {
                        format!("{cs}w")
                    });
                }
                if b.0 != 0 || terms.is_empty() {
                    terms.push(self.render_base(b.0));
                }
                terms.join("+")
            }
        }
    }

    fn render_base(&self, value: u16) -> String {
        if self.m == 1 {
            return value.to_string();
        }
        let d = digits(value as usize, self.p, self.m);
        let mut terms = Vec::new();
        for (i, &c) in d.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            terms.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    fn render_defining(&self, level: Level, f: &[u16]) -> String {
        let mut terms = Vec::new();
        for (i, &c) in f.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = self.render(level, c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            terms.push(match (i, c) {
                (0, _) => cs,
                (1, 1) => "x".into(),
                (1, _) => format!("{cs}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{cs}x^{i}"),
            });
        }
        terms.join("+")
    }
}

/// `f` has no monic factor of degree `1..=deg/2` over F_p (exhaustive search).
fn is_irreducible_over_prime(prime: &Gf, f: &[u16]) -> bool {
    let deg = f.len() - 1;
    let p = prime.characteristic();
    for d in 1..=deg / 2 {
        for i in 0..(p as usize).pow(d as u32) {
            let mut g = digits(i, p, d);
            g.push(1);
            if crate::poly::rem_raw(prime, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive root search of a polynomial over `field`.
pub(crate) fn has_root(field: &Gf, f: &[u16]) -> bool {
    field.elements().any(|x| {
        f.iter()
            .rev()
            .fold(0u16, |acc, &c| field.add(field.mul(acc, x), c))
            == 0
    })
}

fn base_mul_table(p: u16, f1: &[u16]) -> Vec<u16> {
    let m = f1.len() - 1;
    let q = (p as usize).pow(m as u32);
    let pp = p as u32;
    let mut table = vec![0u16; q * q];
    for a in 0..q {
        let da = digits(a, p, m);
        for b in 0..q {
            let db = digits(b, p, m);
            let mut prod = vec![0u32; 2 * m];
            for i in 0..m {
                for j in 0..m {
                    prod[i + j] = (prod[i + j] + da[i] as u32 * db[j] as u32) % pp;
                }
            }
            for top in (m..2 * m).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                for (k, &fk) in f1.iter().enumerate().take(m) {
                    let idx = top - m + k;
                    prod[idx] = (prod[idx] + pp * pp - c * fk as u32) % pp;
                }
                prod[top] = 0;
            }
            let mut v = 0usize;
            for i in (0..m).rev() {
                v = v * p as usize + prod[i] as usize;
            }
            table[a * q + b] = v as u16;
        }
    }
    table
}

fn ext_mul_table(base: &Gf, f2: &[u16]) -> Vec<u16> {
    let q = base.order();
    let (a0, a1) = (f2[0], f2[1]);
    let n = q * q;
    let mut table = vec![0u16; n * n];
    for x in 0..n {
        let (b1, c1) = ((x % q) as u16, (x / q) as u16);
        for y in 0..n {
            let (b2, c2) = ((y % q) as u16, (y / q) as u16);
            // w² = -a1·w - a0
            let cc = base.mul(c1, c2);
            let b = base.sub(base.mul(b1, b2), base.mul(a0, cc));
            let c = base.sub(base.add(base.mul(b1, c2), base.mul(c1, b2)), base.mul(a1, cc));
            table[x * n + y] = b + q as u16 * c;
        }
    }
    table
}

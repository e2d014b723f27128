//! Dense polynomials over a tower level and the residue rings `F[x]/(x^n - 1)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldTower, Gf, Level};

/// Dense polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Arc<Gf>,
    coeffs: Vec<u16>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly<{:?}>{:?}", self.field.level(), self.coeffs)
    }
}

impl Poly {
    pub fn new(field: &Arc<Gf>, mut coeffs: Vec<u16>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Arc<Gf>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Arc<Gf>) -> Self {
        Self::new(field, vec![1])
    }

    pub fn constant(field: &Arc<Gf>, c: u16) -> Self {
        Self::new(field, vec![c])
    }

    /// `x^k`.
    pub fn monomial(field: &Arc<Gf>, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Self::new(field, c)
    }

    /// `x^n - 1`.
    pub fn x_n_minus_one(field: &Arc<Gf>, n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        c[0] = field.neg(1);
        if n == 0 {
            c[0] = 0;
        }
        Self::new(field, c)
    }

    pub fn field(&self) -> &Arc<Gf> {
        &self.field
    }

    pub fn level(&self) -> Level {
        self.field.level()
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u16 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u16 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::TowerMismatch {
                left: self.level(),
                right: other.level(),
            })
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field, "polynomials over different fields");
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field, "polynomials over different fields");
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| self.field.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::new(&self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field, "polynomials over different fields");
        Poly::new(&self.field, mul_raw(&self.field, &self.coeffs, &other.coeffs))
    }

    pub fn scale(&self, c: u16) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, c)
    }

    /// Divides out the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.field.inv(self.leading()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn eval(&self, x: u16) -> u16 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.field.add(self.field.mul(acc, x), c))
    }

    /// Reinterprets the coefficients in a larger field of the same tower.
    pub fn embed(&self, target: &Arc<Gf>) -> Result<Poly> {
        let rank = |l: Level| match l {
            Level::Prime => 0,
            Level::Base => 1,
            Level::Ext => 2,
        };
        if rank(target.level()) < rank(self.level()) || target.characteristic() != self.field.characteristic() {
            return Err(Error::TowerMismatch {
                left: self.level(),
                right: target.level(),
            });
        }
        // constants of a lower level keep their packed index
        Ok(Poly::new(target, self.coeffs.clone()))
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let db = divisor.coeffs.len() - 1;
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u16; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = rem[top];
            if c == 0 {
                continue;
            }
            let factor = f.mul(c, lead_inv);
            quot[top - db] = factor;
            for (k, &dk) in divisor.coeffs.iter().enumerate() {
                let idx = top - db + k;
                rem[idx] = f.sub(rem[idx], f.mul(factor, dk));
            }
        }
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Reduction modulo `x^n - 1` (exponents folded mod `n`).
    pub fn reduce_cyclic(&self, n: usize) -> Poly {
        assert!(n > 0, "x^0 - 1 is not a modulus");
        let mut c = vec![0u16; n.min(self.coeffs.len())];
        for (i, &a) in self.coeffs.iter().enumerate() {
            c[i % n] = self.field.add(c[i % n], a);
        }
        Poly::new(&self.field, c)
    }

    /// Renders in the notation accepted by [`crate::parse::parse_poly`].
    pub fn render(&self, tower: &FieldTower) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let level = self.level();
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = tower.render(level, c);
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

pub(crate) fn mul_raw(f: &Gf, a: &[u16], b: &[u16]) -> Vec<u16> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Remainder on raw coefficient slices; `b` must have a nonzero leading coefficient.
pub(crate) fn rem_raw(f: &Gf, a: &[u16], b: &[u16]) -> Vec<u16> {
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return rem;
    }
    for top in (db..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        let factor = f.mul(c, lead_inv);
        for (k, &bk) in b.iter().enumerate() {
            rem[top - db + k] = f.sub(rem[top - db + k], f.mul(factor, bk));
        }
    }
    rem.truncate(db);
    rem
}

/// Residue class in `F[x]/(x^n - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotElem {
    n: usize,
    rep: Poly,
}

impl QuotElem {
    pub fn new(rep: &Poly, n: usize) -> Self {
        QuotElem {
            n,
            rep: rep.reduce_cyclic(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rep(&self) -> &Poly {
        &self.rep
    }

    /// Length-`n` coefficient vector.
    pub fn to_vec(&self) -> Vec<u16> {
        (0..self.n).map(|i| self.rep.coeff(i)).collect()
    }

    pub fn add(&self, other: &QuotElem) -> QuotElem {
        assert_eq!(self.n, other.n);
        QuotElem::new(&self.rep.add(&other.rep), self.n)
    }

    pub fn mul(&self, other: &QuotElem) -> QuotElem {
        assert_eq!(self.n, other.n);
        QuotElem::new(&self.rep.mul(&other.rep), self.n)
    }

    /// Product with a polynomial over the same or a smaller field of the tower.
    pub fn mul_poly(&self, s: &Poly) -> Result<QuotElem> {
        let s = s.embed(self.rep.field())?;
        Ok(QuotElem::new(&self.rep.mul(&s), self.n))
    }
}

/// `s * (a | b) = (s·a | s·b)` on `F_q[x]/(x^α-1) × F_{q²}[x]/(x^β-1)`.
pub fn quot_mul_scalar_poly(s: &Poly, e: &(QuotElem, QuotElem)) -> Result<(QuotElem, QuotElem)> {
    if s.level() == Level::Ext {
        return Err(Error::TowerMismatch {
            left: s.level(),
            right: Level::Base,
        });
    }
    Ok((e.0.mul_poly(s)?, e.1.mul_poly(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(t: &FieldTower, s: &str) -> Poly {
        parse_poly(s, t, Level::Base).unwrap()
    }

    #[test]
    fn divmod_examples() {
        let t = FieldTower::with_defaults(3).unwrap();
        let (q, r) = p(&t, "x^4+2x").divmod(&p(&t, "x^3+2")).unwrap();
        assert_eq!(q, p(&t, "x"));
        assert!(r.is_zero());
        assert_eq!(p(&t, "x^5").rem(&p(&t, "x^3+2")).unwrap(), p(&t, "x^2"));
        let a = p(&t, "2x^3+x+1");
        let (q, r) = a.divmod(&a).unwrap();
        assert_eq!((q, r.is_zero()), (Poly::one(t.base()), true));
        assert_eq!(a.divmod(&Poly::zero(t.base())), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let t = FieldTower::with_defaults(3).unwrap();
        assert_eq!(p(&t, "x^3+2").gcd(&p(&t, "x^4+2x")).unwrap(), p(&t, "x^3+2"));
        assert_eq!(p(&t, "2x+1").gcd(&Poly::zero(t.base())).unwrap(), p(&t, "x+2"));
        assert_eq!(p(&t, "x+2").gcd(&p(&t, "x+1")).unwrap(), Poly::one(t.base()));
        let z = Poly::zero(t.base());
        assert_eq!(z.gcd(&z), Err(Error::UndefinedGcd));
    }

    #[test]
    fn divides_examples() {
        let t3 = FieldTower::with_defaults(3).unwrap();
        assert!(p(&t3, "x+2").divides(&p(&t3, "x^3+2")).unwrap());
        assert!(!p(&t3, "x+1").divides(&p(&t3, "x^3+2")).unwrap());
        let t4 = FieldTower::with_defaults(4).unwrap();
        assert!(p(&t4, "x^2+u").divides(&p(&t4, "x^6+1")).unwrap());
        assert!(Poly::zero(t4.base()).divides(&p(&t4, "x")).is_err());
    }

    #[test]
    fn scalar_action_is_shift() {
        let t = FieldTower::with_defaults(3).unwrap();
        let a = QuotElem::new(&p(&t, "x^2+2"), 3);
        let b = QuotElem::new(&parse_poly("wx^2+x", &t, Level::Ext).unwrap(), 4);
        let (sa, sb) = quot_mul_scalar_poly(&p(&t, "x"), &(a.clone(), b.clone())).unwrap();
        assert_eq!(sa.to_vec(), vec![1, 2, 0]);
        assert_eq!(sb.to_vec(), vec![0, 0, 1, t.omega()]);
        let (ia, ib) = quot_mul_scalar_poly(&Poly::one(t.base()), &(a.clone(), b.clone())).unwrap();
        assert_eq!((ia, ib), (a.clone(), b.clone()));
        let b3 = QuotElem::new(&parse_poly("wx^2+x", &t, Level::Ext).unwrap(), 3);
        let (za, zb) = quot_mul_scalar_poly(&p(&t, "x^3+2"), &(a, b3)).unwrap();
        assert!(za.rep().is_zero() && zb.rep().is_zero());
        let wpoly = parse_poly("w", &t, Level::Ext).unwrap();
        let e = (QuotElem::new(&p(&t, "1"), 3), QuotElem::new(&wpoly, 3));
        assert!(quot_mul_scalar_poly(&wpoly, &e).is_err());
    }

    #[test]
    fn degree_of_zero_is_sentinel() {
        let t = FieldTower::with_defaults(3).unwrap();
        assert_eq!(Poly::zero(t.base()).degree(), None);
        assert_eq!(Poly::x_n_minus_one(t.base(), 4).degree(), Some(4));
    }
}

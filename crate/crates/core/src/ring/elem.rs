//! Exact elements of ℚ and of real quadratic fields ℚ(√d).
//!
//! Every value is stored as `(p + q·√d) / r` with `r > 0` and
//! `gcd(p, q, r) = 1`. Rational values carry `d = 0` and `q = 0`, so the
//! rational number 5 compares equal regardless of which quadratic field
//! it was computed in. Because `{1, √d}` is a ℚ-basis the stored fields
//! are a canonical form: two elements are equal exactly when their fields
//! are.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Elem {
    d: u64,
    p: BigInt,
    q: BigInt,
    r: BigInt,
}

fn join_radicand(d1: u64, d2: u64) -> u64 {
    match (d1, d2) {
        (0, d) | (d, 0) => d,
        (a, b) if a == b => a,
        (a, b) => panic!("cannot combine elements of Q(sqrt({a})) and Q(sqrt({b}))"),
    }
}

impl Elem {
    /// Builds `(p + q·√d) / r` and reduces it. Panics if `r == 0`.
    pub fn new(d: u64, p: BigInt, q: BigInt, r: BigInt) -> Self {
        assert!(!r.is_zero(), "zero denominator");
        let mut e = Elem { d, p, q, r };
        e.normalize();
        e
    }

    pub fn zero() -> Self {
        Elem::from_bigint(BigInt::zero())
    }

    pub fn one() -> Self {
        Elem::from_bigint(BigInt::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Elem::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Elem { d: 0, p: n, q: BigInt::zero(), r: BigInt::one() }
    }

    /// The rational number `num / den`. Panics if `den == 0`.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Elem::new(0, num.into(), BigInt::zero(), den.into())
    }

    /// `(p + q·√d) / r`.
    pub fn quadratic(d: u64, p: impl Into<BigInt>, q: impl Into<BigInt>, r: impl Into<BigInt>) -> Self {
        Elem::new(d, p.into(), q.into(), r.into())
    }

    /// `√d` itself.
    pub fn sqrt_of(d: u64) -> Self {
        Elem::quadratic(d, 0, 1, 1)
    }

    fn normalize(&mut self) {
        if self.r.is_negative() {
            self.p = -&self.p;
            self.q = -&self.q;
            self.r = -&self.r;
        }
        let g = self.p.gcd(&self.q).gcd(&self.r);
        if !g.is_one() {
            self.p /= &g;
            self.q /= &g;
            self.r /= &g;
        }
        if self.q.is_zero() {
            self.d = 0;
        }
    }

    /// Radicand of the field this element needs; 0 for rational values.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    /// Rational part numerator `p`.
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// Coefficient `q` of `√d` in the numerator.
    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Common positive denominator `r`.
    pub fn den(&self) -> &BigInt {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.p.is_one() && self.q.is_zero() && self.r.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// True for rational integers.
    pub fn is_integer(&self) -> bool {
        self.q.is_zero() && self.r.is_one()
    }

    /// The integer value, when this is a rational integer.
    pub fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.p.clone())
    }

    /// Galois conjugate `(p − q·√d) / r`.
    pub fn conj(&self) -> Elem {
        Elem { d: self.d, p: self.p.clone(), q: -&self.q, r: self.r.clone() }
    }

    /// Field norm `(p² − d·q²) / r²`, a rational number.
    pub fn norm(&self) -> Elem {
        let num = &self.p * &self.p - BigInt::from(self.d) * &self.q * &self.q;
        Elem::ratio(num, &self.r * &self.r)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Elem> {
        if self.is_zero() {
            return None;
        }
        // 1 / ((p + q w) / r) = r (p − q w) / (p² − d q²)
        let n = &self.p * &self.p - BigInt::from(self.d) * &self.q * &self.q;
        Some(Elem::new(self.d, &self.r * &self.p, -(&self.r * &self.q), n))
    }

    /// Field division, `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Elem) -> Option<Elem> {
        rhs.inv().map(|inv| self * &inv)
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = Elem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power, negative exponents invert. `None` for `0^(-n)`.
    pub fn powi(&self, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            self.inv().map(|i| i.pow(e.unsigned_abs()))
        }
    }

    /// Sign of the real number under the embedding with `√d > 0`.
    pub fn signum(&self) -> Ordering {
        let sp = self.p.sign_cmp();
        let sq = self.q.sign_cmp();
        if sq == Ordering::Equal || sp == sq {
            return if sp == Ordering::Equal { sq } else { sp };
        }
        if sp == Ordering::Equal {
            return sq;
        }
        // opposite signs: compare p² with d q²
        let pp = &self.p * &self.p;
        let dqq = BigInt::from(self.d) * &self.q * &self.q;
        match pp.cmp(&dqq) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Max of `|p|`, `|q|`, `r`; a crude size measure.
    pub fn height(&self) -> BigInt {
        let mut h = self.p.abs();
        let aq = self.q.abs();
        if aq > h {
            h = aq;
        }
        if self.r > h {
            h = self.r.clone();
        }
        h
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by real value (√d taken positive). Exact, so consistent with `Eq`.
impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn add(self, rhs: &Elem) -> Elem {
        let d = join_radicand(self.d, rhs.d);
        if self.r == rhs.r {
            return Elem::new(d, &self.p + &rhs.p, &self.q + &rhs.q, self.r.clone());
        }
        Elem::new(d, &self.p * &rhs.r + &rhs.p * &self.r, &self.q * &rhs.r + &rhs.q * &self.r, &self.r * &rhs.r)
    }
}

impl<'a> Sub<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn sub(self, rhs: &Elem) -> Elem {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Elem> for &'a Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        let d = join_radicand(self.d, rhs.d);
        let p = &self.p * &rhs.p + BigInt::from(d) * &self.q * &rhs.q;
        let q = &self.p * &rhs.q + &self.q * &rhs.p;
        Elem::new(d, p, q, &self.r * &rhs.r)
    }
}

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { d: self.d, p: -&self.p, q: -&self.q, r: self.r.clone() }
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        Elem { d: self.d, p: -self.p, q: -self.q, r: self.r }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Elem> for &'a Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl From<i64> for Elem {
    fn from(n: i64) -> Self {
        Elem::from_i64(n)
    }
}

impl From<BigInt> for Elem {
    fn from(n: BigInt) -> Self {
        Elem::from_bigint(n)
    }
}

/// Ring-agnostic text form: `p`, `p/r`, or `(p+q*w)/r` with `w = √d`.
impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            if self.r.is_one() {
                write!(f, "{}", self.p)
            } else {
                write!(f, "{}/{}", self.p, self.r)
            }
        } else {
            write!(f, "({}+{}*w)", self.p, self.q)?;
            if !self.r.is_one() {
                write!(f, "/{}", self.r)?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 0 {
            write!(f, "{self}")
        } else {
            write!(f, "{self}[w=sqrt({})]", self.d)
        }
    }
}

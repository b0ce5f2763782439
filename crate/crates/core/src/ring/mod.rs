//! S-integer rings: ℤ, ℤ[1/m] and ℤ[√d][1/m] for squarefree `d ≥ 2`.
//!
//! A [`Ring`] is a small descriptor; its elements are plain [`Elem`] field
//! values and membership is a predicate on the denominator. An element
//! `(p + q·√d)/r` in lowest terms lies in the ring exactly when every
//! prime factor of `r` is one of the inverted primes.

mod elem;
mod units;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub use elem::Elem;
pub use units::{CongruentUnits, ORDER_SEARCH_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("invalid ring parameter: {0}")]
    InvalidParameter(String),
    #[error("{elem} is not an element of {ring}")]
    Mismatch { elem: String, ring: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("{0} is only defined for quadratic rings")]
    NotApplicable(&'static str),
    #[error("no generator order found modulo {modulus} within {cap} steps")]
    OrderNotFound { modulus: String, cap: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    /// ℤ[1/m] with m ≥ 2.
    SIntegers,
    /// ℤ[√d], optionally with primes of m inverted.
    Quadratic,
}

/// Descriptor of one of the supported rings of S-integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    kind: RingKind,
    d: u64,
    m: u64,
    primes: Vec<u64>,
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_squarefree(n: u64) -> bool {
    let mut p = 2u64;
    let mut n = n;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

impl Ring {
    pub fn integers() -> Self {
        Ring { kind: RingKind::Integers, d: 0, m: 1, primes: Vec::new() }
    }

    /// ℤ[1/m]; `m ≥ 2`.
    pub fn s_integers(m: u64) -> Result<Self, RingError> {
        if m < 2 {
            return Err(RingError::InvalidParameter(format!("m = {m} must be at least 2")));
        }
        Ok(Ring { kind: RingKind::SIntegers, d: 0, m, primes: prime_factors(m) })
    }

    /// ℤ[√d][1/m]; `d ≥ 2` squarefree, `m ≥ 1` (1 inverts nothing).
    pub fn quadratic(d: u64, m: u64) -> Result<Self, RingError> {
        if d < 2 {
            return Err(RingError::InvalidParameter(format!("d = {d} must be at least 2")));
        }
        if !is_squarefree(d) {
            return Err(RingError::InvalidParameter(format!("d = {d} is not squarefree")));
        }
        if m < 1 {
            return Err(RingError::InvalidParameter("m must be positive".into()));
        }
        Ok(Ring { kind: RingKind::Quadratic, d, m, primes: prime_factors(m) })
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    /// Radicand `d`, 0 for rational rings.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn inverted_primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_quadratic(&self) -> bool {
        self.kind == RingKind::Quadratic
    }

    /// `√d` for quadratic rings.
    pub fn sqrt_d(&self) -> Option<Elem> {
        self.is_quadratic().then(|| Elem::sqrt_of(self.d))
    }

    pub fn int(&self, n: i64) -> Elem {
        Elem::from_i64(n)
    }

    /// True when `x` lives in this ring's fraction field.
    pub fn in_field(&self, x: &Elem) -> bool {
        x.radicand() == 0 || x.radicand() == self.d
    }

    /// Ring membership: same field and denominator supported on the inverted primes.
    pub fn contains(&self, x: &Elem) -> bool {
        if !self.in_field(x) {
            return false;
        }
        let mut r = x.den().clone();
        for &p in &self.primes {
            let p = BigInt::from(p);
            while r.is_multiple_of(&p) {
                r /= &p;
            }
        }
        r.is_one()
    }

    /// `Mismatch` unless `x` lies in the ring.
    pub fn check(&self, x: &Elem) -> Result<(), RingError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(RingError::Mismatch { elem: x.to_string(), ring: self.to_string() })
        }
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Result<Elem, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(x + y)
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Result<Elem, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(x - y)
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Result<Elem, RingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(x * y)
    }

    pub fn neg(&self, x: &Elem) -> Result<Elem, RingError> {
        self.check(x)?;
        Ok(-x)
    }

    /// `x / y` when the quotient lies in the ring, `None` when it does not.
    pub fn div_exact(&self, x: &Elem, y: &Elem) -> Result<Option<Elem>, RingError> {
        self.check(x)?;
        self.check(y)?;
        let q = x.checked_div(y).ok_or(RingError::DivisionByZero)?;
        Ok(self.contains(&q).then_some(q))
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        if x.is_zero() || !self.contains(x) {
            return false;
        }
        x.inv().is_some_and(|inv| self.contains(&inv))
    }

    /// `x ≡ y (mod a)`, i.e. `x − y ∈ (a)`.
    pub fn congruent_mod(&self, x: &Elem, y: &Elem, a: &Elem) -> Result<bool, RingError> {
        if a.is_zero() {
            return Err(RingError::ZeroModulus);
        }
        Ok(self.div_exact(&(x - y), a)?.is_some())
    }

    /// Ring-aware serialization. Quadratic rings always use the
    /// parenthesized `(p+q*w)/r` template, dropping `+q*w` when `q = 0`
    /// and `/r` when `r = 1`.
    pub fn format(&self, x: &Elem) -> String {
        if !self.is_quadratic() || !x.is_rational() {
            return x.to_string();
        }
        if x.den().is_one() {
            format!("({})", x.p())
        } else {
            format!("({})/{}", x.p(), x.den())
        }
    }

    /// Parses a field element written as `p`, `p/r`, `(p)`, `(p)/r`,
    /// `(p+q*w)` or `(p+q*w)/r`. Ring membership is not checked.
    pub fn parse_elem(&self, s: &str) -> Result<Elem, RingError> {
        let err = || RingError::Parse(s.to_string());
        let s = s.trim();
        let int = |t: &str| BigInt::from_str(t.trim()).map_err(|_| err());
        if let Some(rest) = s.strip_prefix('(') {
            let close = rest.find(')').ok_or_else(err)?;
            let inner = &rest[..close];
            let tail = &rest[close + 1..];
            let r = match tail.strip_prefix('/') {
                Some(r) => int(r)?,
                None if tail.trim().is_empty() => BigInt::one(),
                None => return Err(err()),
            };
            if r.is_zero() {
                return Err(err());
            }
            let (p, q) = match inner.strip_suffix("*w") {
                Some(body) => {
                    if !self.is_quadratic() {
                        return Err(err());
                    }
                    // split at the last sign that is not a leading sign of p
                    let bytes = body.as_bytes();
                    let split = (1..bytes.len())
                        .rev()
                        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'+')
                        .ok_or_else(err)?;
                    let p = int(&body[..split])?;
                    let q = if bytes[split] == b'+' { int(&body[split + 1..])? } else { int(&body[split..])? };
                    (p, q)
                }
                None => (int(inner)?, BigInt::zero()),
            };
            return Ok(Elem::new(self.d, p, q, r));
        }
        match s.split_once('/') {
            Some((n, r)) => {
                let r = int(r)?;
                if r.is_zero() {
                    return Err(err());
                }
                Ok(Elem::ratio(int(n)?, r))
            }
            None => Ok(Elem::from_bigint(int(s)?)),
        }
    }

    /// Parses and requires ring membership.
    pub fn parse_ring_elem(&self, s: &str) -> Result<Elem, RingError> {
        let x = self.parse_elem(s)?;
        self.check(&x)?;
        Ok(x)
    }

    /// Generators of the unit subgroup used throughout: −1, then the
    /// fundamental unit (quadratic rings), then the inverted primes.
    pub fn unit_generators(&self) -> Vec<Elem> {
        let mut gens = vec![Elem::from_i64(-1)];
        if self.is_quadratic() {
            gens.push(units::fundamental_unit_of(self.d));
        }
        gens.extend(self.primes.iter().map(|&p| Elem::from_i64(p as i64)));
        gens
    }

    /// Whether the unit group is infinite (false only for ℤ).
    pub fn has_infinite_units(&self) -> bool {
        self.kind != RingKind::Integers
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::SIntegers => write!(f, "Z[1/{}]", self.m),
            RingKind::Quadratic if self.m == 1 => write!(f, "Z[sqrt({})]", self.d),
            RingKind::Quadratic => write!(f, "Z[sqrt({}),1/{}]", self.d, self.m),
        }
    }
}

impl FromStr for Ring {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RingError::Parse(s.to_string());
        let num = |t: &str| t.parse::<u64>().map_err(|_| err());
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::integers());
        }
        let body = s.strip_prefix("Z[").and_then(|b| b.strip_suffix(']')).ok_or_else(err)?;
        if let Some(m) = body.strip_prefix("1/") {
            return Ring::s_integers(num(m)?);
        }
        let rest = body.strip_prefix("sqrt(").ok_or_else(err)?;
        let (d, tail) = rest.split_once(')').ok_or_else(err)?;
        let d = num(d)?;
        if tail.is_empty() {
            return Ring::quadratic(d, 1);
        }
        let m = tail.strip_prefix(",1/").ok_or_else(err)?;
        Ring::quadratic(d, num(m)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Ring {
        s.parse().unwrap()
    }

    #[test]
    fn make_ring_examples() {
        assert_eq!(ring("Z"), Ring::integers());
        let r = ring("Z[1/6]");
        assert_eq!(r.kind(), RingKind::SIntegers);
        assert_eq!(r.inverted_primes(), &[2, 3]);
        assert!(matches!("Z[sqrt(4)]".parse::<Ring>(), Err(RingError::InvalidParameter(_))));
        assert!(matches!("Z[sqrt(1)]".parse::<Ring>(), Err(RingError::InvalidParameter(_))));
        assert!(matches!("Z[1/1]".parse::<Ring>(), Err(RingError::InvalidParameter(_))));
        assert!(matches!("Q".parse::<Ring>(), Err(RingError::Parse(_))));
        assert_eq!(ring("Z[sqrt(2),1/3]").to_string(), "Z[sqrt(2),1/3]");
        assert_eq!(ring("Z[sqrt(5)]").to_string(), "Z[sqrt(5)]");
    }

    #[test]
    fn arith_examples() {
        let r = ring("Z[1/2]");
        let s = r.add(&Elem::ratio(3, 2), &Elem::ratio(1, 2)).unwrap();
        assert_eq!(s, Elem::from_i64(2));
        let q = ring("Z[sqrt(2)]");
        let p = q.mul(&Elem::quadratic(2, 1, 1, 1), &Elem::quadratic(2, -1, 1, 1)).unwrap();
        assert!(p.is_one());
        let z = Ring::integers();
        assert_eq!(z.div_exact(&Elem::from_i64(3), &Elem::from_i64(2)).unwrap(), None);
        assert_eq!(z.div_exact(&Elem::from_i64(3), &Elem::zero()), Err(RingError::DivisionByZero));
        assert!(matches!(z.add(&Elem::ratio(1, 2), &Elem::one()), Err(RingError::Mismatch { .. })));
        assert!(matches!(r.mul(&Elem::ratio(1, 3), &Elem::one()), Err(RingError::Mismatch { .. })));
    }

    #[test]
    fn is_unit_examples() {
        assert!(ring("Z[1/2]").is_unit(&Elem::from_i64(8)));
        assert!(ring("Z[sqrt(2)]").is_unit(&Elem::quadratic(2, 1, 1, 1)));
        assert!(!Ring::integers().is_unit(&Elem::from_i64(2)));
        assert!(Ring::integers().is_unit(&Elem::from_i64(-1)));
        assert!(!ring("Z[1/2]").is_unit(&Elem::from_i64(6)));
        assert!(ring("Z[1/6]").is_unit(&Elem::ratio(3, 2)));
        assert!(!ring("Z[1/2]").is_unit(&Elem::zero()));
    }

    #[test]
    fn congruence_examples() {
        let z = Ring::integers();
        assert!(z.congruent_mod(&Elem::from_i64(7), &Elem::one(), &Elem::from_i64(3)).unwrap());
        assert!(!z.congruent_mod(&Elem::from_i64(7), &Elem::one(), &Elem::from_i64(4)).unwrap());
        let r = ring("Z[1/2]");
        assert!(r.congruent_mod(&Elem::from_i64(8), &Elem::one(), &Elem::from_i64(7)).unwrap());
        let q = ring("Z[sqrt(2)]");
        let x = Elem::quadratic(2, 3, 2, 1);
        assert!(q.congruent_mod(&x, &Elem::one(), &Elem::from_i64(2)).unwrap());
        assert_eq!(z.congruent_mod(&Elem::one(), &Elem::one(), &Elem::zero()), Err(RingError::ZeroModulus));
    }

    #[test]
    fn serialization_forms() {
        let z = Ring::integers();
        assert_eq!(z.format(&Elem::from_i64(-12)), "-12");
        let r = ring("Z[1/2]");
        assert_eq!(r.format(&Elem::ratio(-3, 4)), "-3/4");
        let q = ring("Z[sqrt(2),1/3]");
        assert_eq!(q.format(&Elem::quadratic(2, 1, 2, 3)), "(1+2*w)/3");
        assert_eq!(q.format(&Elem::quadratic(2, 1, -2, 1)), "(1+-2*w)");
        assert_eq!(q.format(&Elem::from_i64(5)), "(5)");
        assert_eq!(q.format(&Elem::ratio(5, 3)), "(5)/3");
        for s in ["(1+2*w)/3", "(1+-2*w)", "(5)", "(5)/3", "(-4+7*w)/9"] {
            assert_eq!(q.format(&q.parse_elem(s).unwrap()), s);
        }
        assert_eq!(q.parse_elem("(1-2*w)").unwrap(), Elem::quadratic(2, 1, -2, 1));
        assert_eq!(q.parse_elem("-7/3").unwrap(), Elem::ratio(-7, 3));
        assert_eq!(r.parse_elem("6/-4").unwrap(), Elem::ratio(-3, 2));
        assert!(r.parse_elem("(1+2*w)").is_err());
        assert!(r.parse_elem("1/0").is_err());
        assert!(r.parse_elem("abc").is_err());
        assert!(z.parse_ring_elem("1/2").is_err());
    }

    #[test]
    fn membership_needs_inverted_denominators() {
        let r = ring("Z[sqrt(3),1/2]");
        assert!(r.contains(&Elem::quadratic(3, 1, 1, 4)));
        assert!(!r.contains(&Elem::quadratic(3, 1, 1, 3)));
        assert!(!r.contains(&Elem::quadratic(2, 1, 1, 1)));
        assert!(!Ring::integers().contains(&Elem::sqrt_of(2)));
    }
}

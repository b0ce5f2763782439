//! Unit-group machinery: fundamental units, units congruent to 1 modulo a
//! principal ideal, and canonical associates.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, Zero};

use super::{Elem, Ring, RingError};

/// Step cap for the multiplicative-order search of one generator.
pub const ORDER_SEARCH_CAP: u64 = 1_000_000;

/// Smallest unit `ε > 1` of ℤ[√d], from the continued fraction of √d.
pub(super) fn fundamental_unit_of(d: u64) -> Elem {
    let a0 = d.sqrt();
    debug_assert!(a0 * a0 != d);
    let dd = BigInt::from(d);
    let (mut m, mut den, mut a) = (0u64, 1u64, a0);
    // convergents h/k of the expansion
    let (mut h_prev, mut h) = (BigInt::one(), BigInt::from(a0));
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        let n = &h * &h - &dd * &k * &k;
        if n.abs().is_one() {
            return Elem::new(d, h, k, BigInt::one());
        }
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        let ab = BigInt::from(a);
        let h_next = &ab * &h + &h_prev;
        let k_next = &ab * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Result of [`Ring::units_congruent_one`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruentUnits {
    pub units: Vec<Elem>,
    /// The ring's unit group is finite, so `units` lists every qualifying unit other than 1.
    pub finite: bool,
    /// Generators whose order modulo the ideal was not found within [`ORDER_SEARCH_CAP`].
    pub stalled: Vec<Elem>,
}

/// Residues of ℤ[√d] modulo a rational integer `n`, as `(x, y)` for `x + y·√d`.
struct Residue<'a> {
    n: &'a BigInt,
    d: BigInt,
}

impl Residue<'_> {
    fn reduce(&self, x: &Elem) -> (BigInt, BigInt) {
        // denominators are coprime to n by construction
        let inv = modinv(x.den(), self.n);
        ((x.p() * &inv).mod_floor(self.n), (x.q() * &inv).mod_floor(self.n))
    }

    fn mul(&self, a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        ((&a.0 * &b.0 + &self.d * &a.1 * &b.1).mod_floor(self.n), (&a.0 * &b.1 + &a.1 * &b.0).mod_floor(self.n))
    }
}

fn modinv(x: &BigInt, n: &BigInt) -> BigInt {
    let g = x.extended_gcd(n);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(n)
}

impl Ring {
    fn strip_inverted(&self, mut n: BigInt) -> BigInt {
        n = n.abs();
        for &p in &self.primes {
            let p = BigInt::from(p);
            while !n.is_zero() && n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        n
    }

    /// Positive rational integer in the ideal `(a)`, coprime to the inverted primes.
    fn integer_in_ideal(&self, a: &Elem) -> BigInt {
        let n = if a.is_rational() { a.p().clone() } else { a.p() * a.p() - BigInt::from(self.d) * a.q() * a.q() };
        self.strip_inverted(n)
    }

    pub fn fundamental_unit(&self) -> Result<Elem, RingError> {
        if !self.is_quadratic() {
            return Err(RingError::NotApplicable("fundamental_unit"));
        }
        Ok(fundamental_unit_of(self.d))
    }

    /// Multiplicative order of the unit `g` in `(𝒪/(a))^×`, by power iteration.
    ///
    /// Residues live modulo the integer `n ∈ (a)`. For rational `a` the
    /// ideals agree; otherwise `z ∈ (a)` iff `z·ā ≡ 0 (mod n)` with
    /// `ā = p − q√d` the conjugate numerator.
    fn order_mod(&self, g: &Elem, a: &Elem, n: &BigInt, cap: u64) -> Option<u64> {
        if n.is_one() {
            return Some(1);
        }
        let res = Residue { n, d: BigInt::from(self.d) };
        let step = res.reduce(g);
        let one = (BigInt::one(), BigInt::zero());
        let conj = if a.is_rational() { None } else { Some((a.p().mod_floor(n), a.q().mod_floor(n))) };
        let in_ideal = |x: &BigInt, y: &BigInt| match &conj {
            None => x.is_zero() && y.is_zero(),
            Some((p, q)) => {
                let u = (x * p - &res.d * y * q).mod_floor(n);
                let v = (y * p - x * q).mod_floor(n);
                u.is_zero() && v.is_zero()
            }
        };
        let mut cur = step.clone();
        for j in 1..=cap {
            let x = (&cur.0 - &one.0).mod_floor(n);
            if in_ideal(&x, &cur.1) {
                return Some(j);
            }
            cur = res.mul(&cur, &step);
        }
        None
    }

    /// Up to `count` distinct units `v ≠ 1` with `v ≡ 1 (mod a)`.
    ///
    /// Each infinite-order generator `g` contributes `g^(j·ord(g))` for
    /// `j = 1, 2, …`, taken round-robin across generators. For ℤ the
    /// candidates are just `−1`.
    pub fn units_congruent_one(&self, a: &Elem, count: usize) -> Result<CongruentUnits, RingError> {
        self.units_congruent_one_capped(a, count, ORDER_SEARCH_CAP)
    }

    /// [`Ring::units_congruent_one`] with an explicit step cap for each order search.
    pub fn units_congruent_one_capped(&self, a: &Elem, count: usize, cap: u64) -> Result<CongruentUnits, RingError> {
        if a.is_zero() {
            return Err(RingError::ZeroModulus);
        }
        self.check(a)?;
        let n = self.integer_in_ideal(a);
        let gens = self.unit_generators();
        let infinite: Vec<&Elem> = gens.iter().filter(|g| *g != &Elem::from_i64(-1)).collect();

        if infinite.is_empty() {
            let minus = Elem::from_i64(-1);
            let mut units = Vec::new();
            if count > 0 && self.congruent_mod(&minus, &Elem::one(), a)? {
                units.push(minus);
            }
            return Ok(CongruentUnits { units, finite: true, stalled: Vec::new() });
        }

        let mut steps = Vec::new();
        let mut stalled = Vec::new();
        for g in infinite {
            match self.order_mod(g, a, &n, cap) {
                Some(ord) => steps.push(g.pow(ord)),
                None => stalled.push(g.clone()),
            }
        }
        if steps.is_empty() {
            return Err(RingError::OrderNotFound { modulus: self.format(a), cap });
        }
        let mut units = Vec::with_capacity(count);
        let mut current = steps.clone();
        while units.len() < count {
            for (cur, step) in current.iter_mut().zip(&steps) {
                if units.len() == count {
                    break;
                }
                debug_assert!(self.congruent_mod(cur, &Elem::one(), a).unwrap_or(false));
                units.push(cur.clone());
                *cur = &*cur * step;
            }
        }
        Ok(CongruentUnits { units, finite: false, stalled })
    }

    /// `(ã, u)` with `ã = u·a`, `u` a unit and `ã` a normalized generator
    /// of `(a)`. For rational rings ã is the positive integer generator
    /// coprime to the inverted primes. For quadratic rings the numerator is
    /// stripped of inverted primes, then multiplied by powers of the
    /// fundamental unit while that lowers `max(|p|, |q|)`, then made
    /// positive in its leading coordinate.
    pub fn canonical_associate(&self, a: &Elem) -> Result<(Elem, Elem), RingError> {
        if a.is_zero() {
            return Err(RingError::ZeroModulus);
        }
        self.check(a)?;
        let canon = if !self.is_quadratic() {
            Elem::from_bigint(self.strip_inverted(a.p().clone()))
        } else {
            let mut p = a.p().clone();
            let mut q = a.q().clone();
            for &ell in &self.primes {
                let ell = BigInt::from(ell);
                while p.is_multiple_of(&ell) && q.is_multiple_of(&ell) {
                    p /= &ell;
                    q /= &ell;
                }
            }
            let mut x = Elem::new(self.d, p, q, BigInt::one());
            let eps = fundamental_unit_of(self.d);
            let eps_inv = eps.inv().expect("unit");
            let h = |e: &Elem| e.p().abs().max(e.q().abs());
            loop {
                let up = &x * &eps;
                if h(&up) < h(&x) {
                    x = up;
                    continue;
                }
                let down = &x * &eps_inv;
                if h(&down) < h(&x) {
                    x = down;
                    continue;
                }
                break;
            }
            if x.p().is_negative() || (x.p().is_zero() && x.q().is_negative()) {
                x = -x;
            }
            x
        };
        let u = canon.checked_div(a).expect("nonzero");
        debug_assert!(self.is_unit(&u));
        Ok((canon, u))
    }
}

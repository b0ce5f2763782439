//! Producing and transporting points of the factorization varieties.
//!
//! A point of `V_k(A)` (shape [`Shape::Lower`]) is a tuple `(x₁,…,x_k)` with
//! `L(x₁)U(x₂)… = A`; upper-start and D-type points are defined likewise.
//! Points may have coordinates in the fraction field; [`PointTuple`]
//! records whether every coordinate lies in the ring.

mod enumerate;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::continuant::vk_membership;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::sl2::{Elementary, Mat2, Shape, Word};

pub use enumerate::{candidate_values, enumerate_points_bounded, EnumOptions, HeightBound, DEFAULT_ENUM_CAP};

/// Coordinates of a candidate or verified point, with its integrality flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointTuple {
    shape: Shape,
    entries: Vec<Elem>,
    integral: bool,
}

impl PointTuple {
    pub fn new(ring: &Ring, shape: Shape, entries: Vec<Elem>) -> Self {
        let integral = entries.iter().all(|x| ring.contains(x));
        PointTuple { shape, entries, integral }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Elem> {
        self.entries
    }

    pub fn is_integral(&self) -> bool {
        self.integral
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn is_member(&self, a: &Mat2) -> bool {
        vk_membership(a, &self.entries, self.shape)
    }

    pub fn to_word(&self) -> Word {
        Word::new(self.shape, self.entries.clone())
    }

    fn require_member(&self, a: &Mat2) -> Result<()> {
        if self.is_member(a) {
            Ok(())
        } else {
            Err(Error::NotAMember)
        }
    }
}

impl AsRef<[Elem]> for PointTuple {
    fn as_ref(&self) -> &[Elem] {
        &self.entries
    }
}

pub(crate) fn require_sl2(a: &Mat2) -> Result<()> {
    let det = a.det();
    if det.is_one() {
        Ok(())
    } else {
        Err(Error::NotSl2(det.to_string()))
    }
}

/// The word `−I = L(−1)U(1)L(−2)U(1)L(−1)`, i.e. `(L(−1)U(1)L(−1))²`.
const MINUS_IDENTITY: [(Elementary, i64); 5] =
    [(Elementary::L, -1), (Elementary::U, 1), (Elementary::L, -2), (Elementary::U, 1), (Elementary::L, -1)];

/// Factors `A ∈ SL₂(ℤ)` into a lower-start word by Euclidean division on
/// the first column.
///
/// Each step shears the larger entry of `(a, b)` by a multiple of the
/// smaller one (ties reduce `b`) until `b = 0`; the leftover `±U(c)` is
/// appended, with `−I` spelled out as a fixed word.
pub fn factor_euclid(a: &Mat2) -> Result<Word> {
    require_sl2(a)?;
    let ints: Option<Vec<BigInt>> = a.entries().iter().map(|e| e.to_bigint()).collect();
    let [mut ta, mut tc, mut tb, mut td]: [BigInt; 4] =
        ints.ok_or(Error::NonIntegerEntries)?.try_into().expect("four entries");

    // A = F₁ F₂ … F_n · M, with M the working matrix
    let mut factors: Vec<(Elementary, BigInt)> = Vec::new();
    while !tb.is_zero() {
        if ta.is_zero() {
            // b = ±1 here; U(−q) with q = −b sets a = b² = 1
            let q = -&tb;
            ta -= &q * &tb;
            tc -= &q * &td;
            factors.push((Elementary::U, q));
        } else if tb.abs() >= ta.abs() {
            let q = &tb / &ta;
            tb -= &q * &ta;
            td -= &q * &tc;
            factors.push((Elementary::L, q));
        } else {
            let q = &ta / &tb;
            ta -= &q * &tb;
            tc -= &q * &td;
            factors.push((Elementary::U, q));
        }
    }
    debug_assert!(ta.abs().is_one() && ta == td);
    if ta.is_one() {
        factors.push((Elementary::U, tc));
    } else {
        factors.push((Elementary::U, -tc));
        factors.extend(MINUS_IDENTITY.iter().map(|&(k, x)| (k, BigInt::from(x))));
    }

    let word = Word::lower(alternate(factors));
    if !vk_membership(a, &word.entries, Shape::Lower) {
        return Err(Error::NotAMember);
    }
    Ok(word)
}

/// Drops identity factors, merges neighbours of the same kind and pads
/// with `L(0)` so the word starts lower.
fn alternate(factors: Vec<(Elementary, BigInt)>) -> Vec<Elem> {
    let mut out: Vec<(Elementary, BigInt)> = Vec::with_capacity(factors.len());
    for (kind, x) in factors {
        if x.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some((k, acc)) if *k == kind => {
                *acc += x;
                if acc.is_zero() {
                    out.pop();
                }
            }
            _ => out.push((kind, x)),
        }
    }
    let mut entries = Vec::with_capacity(out.len() + 1);
    if matches!(out.first(), Some((Elementary::U, _))) {
        entries.push(Elem::zero());
    }
    entries.extend(out.into_iter().map(|(_, x)| Elem::from_bigint(x)));
    entries
}

/// Points of `V₃(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum K3Solution {
    /// `c ≠ 0`: the single point `((d−1)/c, c, (a−1)/c)`.
    Unique(PointTuple),
    /// `c = 0`, `a ≠ 1`.
    Empty,
    /// `A = L(b)`: the curve `t ↦ (b − t, 0, t)`.
    Family { b: Elem },
}

impl K3Solution {
    /// Member of the one-parameter family at parameter `t`.
    pub fn family_point(b: &Elem, t: &Elem) -> Vec<Elem> {
        vec![b - t, Elem::zero(), t.clone()]
    }
}

/// Solves `L(x₁)U(x₂)L(x₃) = A` in closed form.
pub fn solve_k3(ring: &Ring, a: &Mat2) -> Result<K3Solution> {
    require_sl2(a)?;
    if a.c.is_zero() {
        return Ok(if a.a.is_one() { K3Solution::Family { b: a.b.clone() } } else { K3Solution::Empty });
    }
    let inv = a.c.inv().expect("nonzero");
    let one = Elem::one();
    let xs = vec![&(&a.d - &one) * &inv, a.c.clone(), &(&a.a - &one) * &inv];
    let p = PointTuple::new(ring, Shape::Lower, xs);
    debug_assert!(p.is_member(a));
    Ok(K3Solution::Unique(p))
}

/// Outcome of lifting a tail `(x₄,…,x_k)` to a full point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    /// The fiber over the tail is a single point.
    Generic(PointTuple),
    /// The fiber is a curve; this is its `t = 0` representative.
    NonGeneric(PointTuple),
    /// The fiber is empty.
    Empty,
}

impl LiftOutcome {
    pub fn point(&self) -> Option<&PointTuple> {
        match self {
            LiftOutcome::Generic(p) | LiftOutcome::NonGeneric(p) => Some(p),
            LiftOutcome::Empty => None,
        }
    }
}

/// Inverts the projection `(x₁,…,x_k) ↦ (x₄,…,x_k)` of `V_k(A)`.
///
/// Strips the trailing factors off `A` one at a time and solves the
/// remaining length-3 problem in closed form.
pub fn fiber_lift(ring: &Ring, a: &Mat2, k: usize, tail: &[Elem]) -> Result<LiftOutcome> {
    if k < 3 {
        return Err(Error::InvalidLength(format!("fiber lift needs k >= 3, got {k}")));
    }
    if tail.len() != k - 3 {
        return Err(Error::LengthMismatch { expected: k - 3, got: tail.len() });
    }
    require_sl2(a)?;
    let mut b = a.clone();
    for (j, x) in tail.iter().enumerate().rev() {
        let kind = Shape::Lower.factor_kind(j + 3);
        b = b.mul(&Mat2::elementary(kind, -x));
    }
    let join = |head: Vec<Elem>| {
        let mut xs = head;
        xs.extend_from_slice(tail);
        PointTuple::new(ring, Shape::Lower, xs)
    };
    Ok(match solve_k3(ring, &b)? {
        K3Solution::Unique(p) => LiftOutcome::Generic(join(p.into_entries())),
        K3Solution::Family { b } => LiftOutcome::NonGeneric(join(K3Solution::family_point(&b, &Elem::zero()))),
        K3Solution::Empty => LiftOutcome::Empty,
    })
}

/// Appends zeros up to length `k_new`; `U(0) = L(0) = I` keeps membership.
pub fn pad(p: &PointTuple, a: &Mat2, k_new: usize) -> Result<PointTuple> {
    p.require_member(a)?;
    if k_new < p.k() {
        return Err(Error::InvalidLength(format!("cannot pad length {} down to {k_new}", p.k())));
    }
    let mut out = p.clone();
    out.entries.resize(k_new, Elem::zero());
    out.require_member(a)?;
    Ok(out)
}

/// Reinterprets the same coordinates as a point of another shape.
///
/// Lower-start points of `A` are upper-start and D-type points of `A′`;
/// upper-start and D-type share their matrix.
pub fn convert_shape(p: &PointTuple, a: &Mat2, target: Shape) -> Result<(Mat2, PointTuple)> {
    p.require_member(a)?;
    let m = if (p.shape == Shape::Lower) == (target == Shape::Lower) { a.clone() } else { a.prime() };
    let out = PointTuple { shape: target, ..p.clone() };
    out.require_member(&m)?;
    Ok((m, out))
}

/// Reverses the coordinates: the matrix becomes `A*` for odd `k` and `Aᵗ` for even `k`.
pub fn reverse_point(p: &PointTuple, a: &Mat2) -> Result<(Mat2, PointTuple)> {
    p.require_member(a)?;
    let m = if p.k() % 2 == 1 { a.star() } else { a.transpose() };
    let mut out = p.clone();
    out.entries.reverse();
    out.require_member(&m)?;
    Ok((m, out))
}

/// The point `(u₁,…,u_{k−1}, (u₁⋯u_{k−1})⁻¹)` of `x₁⋯x_k = 1`.
pub fn unit_product_points(ring: &Ring, k: usize, us: &[Elem]) -> Result<Vec<Elem>> {
    if k < 2 {
        return Err(Error::InvalidLength(format!("unit product variety needs k >= 2, got {k}")));
    }
    if us.len() != k - 1 {
        return Err(Error::LengthMismatch { expected: k - 1, got: us.len() });
    }
    if let Some(u) = us.iter().find(|u| !ring.is_unit(u)) {
        return Err(Error::NotAUnit(ring.format(u)));
    }
    let prod = us.iter().fold(Elem::one(), |acc, u| &acc * u);
    let mut out = us.to_vec();
    out.push(prod.inv().expect("product of units"));
    debug_assert!(out.iter().fold(Elem::one(), |acc, u| &acc * u).is_one());
    Ok(out)
}

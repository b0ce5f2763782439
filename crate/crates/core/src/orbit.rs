//! The unit action on length-4 windows and orbit generation.
//!
//! For a window `(y₁, y₂, y₃, y₄)` with modulus `α = 1 + y₂y₃ ≠ 0` and any
//! nonzero `v`,
//!
//! ```text
//! L(y₁)U(y₂)L(y₃)U(y₄) = L(y₁ + (1−v⁻¹)y₃/α) U(v·y₂) L(v⁻¹·y₃) U(y₄ + (1−v)y₂/α)
//! ```
//!
//! so replacing a window leaves the word's matrix unchanged. Applying `′`
//! to both sides gives the same identity for upper-start windows, hence the
//! action is defined at every window position and for every shape. The new
//! coordinates stay integral when `v` is a unit with `v ≡ 1 (mod α)`.

use std::collections::{HashMap, HashSet};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::continuant::{vk_membership, word_matrix_by_continuants};
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring, RingError};
use crate::sl2::{Mat2, Shape};
use crate::varieties::PointTuple;

/// `1 + x_{i+1}·x_{i+2}` for the window starting at 1-based index `i`.
pub fn window_modulus(xs: &[Elem], i: usize) -> Result<Elem> {
    check_window(xs.len(), i)?;
    Ok(&Elem::one() + &(&xs[i] * &xs[i + 1]))
}

fn check_window(len: usize, i: usize) -> Result<()> {
    if i == 0 || i + 3 > len {
        Err(Error::IndexOutOfRange { index: i, len })
    } else {
        Ok(())
    }
}

/// The window action over the fraction field; `v` only needs to be nonzero.
pub fn apply_unit_action(xs: &[Elem], i: usize, v: &Elem) -> Result<Vec<Elem>> {
    let alpha = window_modulus(xs, i)?;
    let alpha_inv = alpha.inv().ok_or(Error::ZeroWindowModulus)?;
    let v_inv = v.inv().ok_or_else(|| Error::NotAUnit(v.to_string()))?;
    let one = Elem::one();
    let (y1, y2, y3, y4) = (&xs[i - 1], &xs[i], &xs[i + 1], &xs[i + 2]);
    let mut out = xs.to_vec();
    out[i - 1] = y1 + &(&(&(&one - &v_inv) * y3) * &alpha_inv);
    out[i] = v * y2;
    out[i + 1] = &v_inv * y3;
    out[i + 2] = y4 + &(&(&(&one - v) * y2) * &alpha_inv);
    Ok(out)
}

/// `v.P` on the window at `i`; `v` must be a unit of `ring`.
pub fn act_v(ring: &Ring, p: &PointTuple, i: usize, v: &Elem) -> Result<PointTuple> {
    if !ring.is_unit(v) {
        return Err(Error::NotAUnit(ring.format(v)));
    }
    let xs = apply_unit_action(p.entries(), i, v)?;
    Ok(PointTuple::new(ring, p.shape(), xs))
}

/// Shear `(y₁ + u·y₃, y₂, y₃, y₄ − u·y₂)` of a window whose modulus is zero.
pub fn act_a0(ring: &Ring, p: &PointTuple, i: usize, u: &Elem) -> Result<PointTuple> {
    let xs = p.entries();
    if !window_modulus(xs, i)?.is_zero() {
        return Err(Error::NonzeroWindowModulus);
    }
    let mut out = xs.to_vec();
    out[i - 1] = &xs[i - 1] + &(u * &xs[i + 1]);
    out[i + 2] = &xs[i + 2] - &(u * &xs[i]);
    Ok(PointTuple::new(ring, p.shape(), out))
}

/// The two families `(u, 0, b−u, c)` and `(b, c−u, 0, u)` of `V₄(A)` when `a = 1`.
///
/// They cover the components `x₂ = 0` and `x₃ = 0` respectively.
pub fn a1_families(ring: &Ring, a: &Mat2, u: &Elem) -> Result<(PointTuple, PointTuple)> {
    crate::varieties::require_sl2(a)?;
    if !a.a.is_one() {
        return Err(Error::TopLeftNotOne);
    }
    let first = vec![u.clone(), Elem::zero(), &a.b - u, a.c.clone()];
    let second = vec![a.b.clone(), &a.c - u, Elem::zero(), u.clone()];
    let first = PointTuple::new(ring, Shape::Lower, first);
    let second = PointTuple::new(ring, Shape::Lower, second);
    if !first.is_member(a) || !second.is_member(a) {
        return Err(Error::NotAMember);
    }
    Ok((first, second))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionKind {
    Seed,
    /// Unit action `v.P`; the parameter is `v`.
    Unit,
    /// Zero-modulus shear; the parameter is `u`.
    Shear,
    /// Jump along an `a = 1` family; the parameter is `u`.
    Family,
}

impl ActionKind {
    pub fn name(self) -> &'static str {
        match self {
            ActionKind::Seed => "seed",
            ActionKind::Unit => "unit",
            ActionKind::Shear => "a0",
            ActionKind::Family => "a1",
        }
    }
}

/// How an orbit point was reached from its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// 1-based window start; 0 for the seed.
    pub window: usize,
    pub action: ActionKind,
    pub param: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPoint {
    pub point: PointTuple,
    pub provenance: Provenance,
}

/// Default step cap for unit orders inside orbit generation, lower than
/// [`crate::ring::ORDER_SEARCH_CAP`] since every visited window may need one.
pub const DEFAULT_ORBIT_ORDER_CAP: u64 = 10_000;

#[derive(Debug, Clone, Copy)]
pub struct OrbitOptions {
    /// Maximum number of points expanded.
    pub budget: usize,
    /// Units drawn per non-unit window modulus (their inverses are used too).
    pub per_window: usize,
    /// `None` explores breadth-first. `Some(seed)` runs a seeded random
    /// walk instead: each step expands a random known point and keeps one
    /// random new child, which spreads the points far from the seed.
    pub walk_seed: Option<u64>,
    /// Step cap for each unit-order search; moduli that hit it are reported as stalled.
    pub order_cap: u64,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions { budget: 100_000, per_window: 2, walk_seed: None, order_cap: DEFAULT_ORBIT_ORDER_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub points: Vec<OrbitPoint>,
    /// Window moduli for which no generator order was found.
    pub stalled: Vec<Elem>,
    /// The expansion budget ran out before the requested count was reached.
    pub budget_exhausted: bool,
}

struct Expander<'a> {
    ring: &'a Ring,
    opts: OrbitOptions,
    units: HashMap<Elem, Vec<Elem>>,
    stalled: Vec<Elem>,
}

impl Expander<'_> {
    /// Units `v` with `v ≡ 1 (mod alpha)`, inverses included.
    fn units_for(&mut self, alpha: &Elem) -> Result<Vec<Elem>> {
        if let Some(v) = self.units.get(alpha) {
            return Ok(v.clone());
        }
        let base = if self.ring.is_unit(alpha) {
            self.ring.unit_generators()
        } else {
            match self.ring.units_congruent_one_capped(alpha, self.opts.per_window, self.opts.order_cap) {
                Ok(found) => {
                    if !found.stalled.is_empty() {
                        self.stalled.push(alpha.clone());
                    }
                    found.units
                }
                Err(RingError::OrderNotFound { .. }) => {
                    self.stalled.push(alpha.clone());
                    Vec::new()
                }
                Err(e) => return Err(e.into()),
            }
        };
        let mut all = Vec::with_capacity(2 * base.len());
        for v in base {
            let inv = v.inv().expect("unit");
            all.push(v);
            if !all.contains(&inv) {
                all.push(inv);
            }
        }
        self.units.insert(alpha.clone(), all.clone());
        Ok(all)
    }

    fn children(&mut self, p: &PointTuple) -> Result<Vec<OrbitPoint>> {
        let xs = p.entries();
        let mut out = Vec::new();
        for i in 1..=xs.len().saturating_sub(3) {
            let alpha = window_modulus(xs, i)?;
            if alpha.is_zero() {
                for u in [Elem::one(), Elem::from_i64(-1)] {
                    let point = act_a0(self.ring, p, i, &u)?;
                    out.push(OrbitPoint {
                        point,
                        provenance: Provenance { window: i, action: ActionKind::Shear, param: u },
                    });
                }
                continue;
            }
            for v in self.units_for(&alpha)? {
                let point = act_v(self.ring, p, i, &v)?;
                out.push(OrbitPoint {
                    point,
                    provenance: Provenance { window: i, action: ActionKind::Unit, param: v },
                });
            }
            if alpha.is_one() {
                self.family_children(p, i, &mut out)?;
            }
        }
        Ok(out)
    }

    /// For `α = 1` the window is a point of a reducible `V₄(W)`; step along
    /// both of its families. This keeps orbits growing when the unit group
    /// is finite.
    fn family_children(&self, p: &PointTuple, i: usize, out: &mut Vec<OrbitPoint>) -> Result<()> {
        let xs = p.entries();
        let window = &xs[i - 1..i + 3];
        let w = word_matrix_by_continuants(window);
        let one = Elem::one();
        let params = [&window[0] - &one, &window[0] + &one, &window[3] - &one, &window[3] + &one];
        for u in params {
            let (f1, f2) = a1_families(self.ring, &w, &u)?;
            for f in [f1, f2] {
                let mut ys = xs.to_vec();
                ys.splice(i - 1..i + 3, f.into_entries());
                let point = PointTuple::new(self.ring, p.shape(), ys);
                out.push(OrbitPoint {
                    point,
                    provenance: Provenance { window: i, action: ActionKind::Family, param: u.clone() },
                });
            }
        }
        Ok(())
    }
}

/// Orbit of an integral point under all window actions.
///
/// Returns up to `n` distinct integral points of the variety of `a`, the
/// seed first. Breadth-first layers are sorted before expansion and the
/// walk is driven by a seeded generator, so the output is deterministic
/// either way. Every emitted point is re-verified.
pub fn orbit_points(ring: &Ring, a: &Mat2, seed: &PointTuple, n: usize, opts: &OrbitOptions) -> Result<OrbitReport> {
    if seed.k() < 4 {
        return Err(Error::InvalidLength(format!("orbits need k >= 4, got {}", seed.k())));
    }
    if !seed.is_member(a) || !seed.is_integral() {
        return Err(Error::NotAMember);
    }
    let mut search = Search {
        a,
        n,
        exp: Expander { ring, opts: *opts, units: HashMap::new(), stalled: Vec::new() },
        seen: HashSet::new(),
        points: Vec::new(),
        expanded: 0,
    };
    let mut budget_exhausted = false;
    if n > 0 {
        search.seen.insert(seed.entries().to_vec());
        search.points.push(OrbitPoint {
            point: seed.clone(),
            provenance: Provenance { window: 0, action: ActionKind::Seed, param: Elem::zero() },
        });
        budget_exhausted = match opts.walk_seed {
            None => search.breadth_first()?,
            Some(s) => search.walk(s)?,
        };
    }
    let mut stalled = search.exp.stalled;
    stalled.sort();
    stalled.dedup();
    Ok(OrbitReport { points: search.points, stalled, budget_exhausted })
}

struct Search<'a> {
    a: &'a Mat2,
    n: usize,
    exp: Expander<'a>,
    seen: HashSet<Vec<Elem>>,
    points: Vec<OrbitPoint>,
    expanded: usize,
}

impl Search<'_> {
    fn is_new(&self, child: &OrbitPoint) -> bool {
        child.point.is_integral() && !self.seen.contains(child.point.entries())
    }

    fn accept(&mut self, child: OrbitPoint) -> Result<()> {
        let pt = &child.point;
        if !vk_membership(self.a, pt.entries(), pt.shape()) {
            return Err(Error::NotAMember);
        }
        self.seen.insert(pt.entries().to_vec());
        self.points.push(child);
        Ok(())
    }

    /// Returns whether the budget ran out.
    fn breadth_first(&mut self) -> Result<bool> {
        let mut frontier = vec![self.points[0].point.clone()];
        while self.points.len() < self.n && !frontier.is_empty() {
            frontier.sort_by(|x, y| x.entries().cmp(y.entries()));
            let mut next = Vec::new();
            for p in &frontier {
                if self.expanded >= self.exp.opts.budget {
                    return Ok(true);
                }
                self.expanded += 1;
                for child in self.exp.children(p)? {
                    if !self.is_new(&child) {
                        continue;
                    }
                    next.push(child.point.clone());
                    self.accept(child)?;
                    if self.points.len() == self.n {
                        return Ok(false);
                    }
                }
            }
            frontier = next;
        }
        Ok(false)
    }

    fn walk(&mut self, seed: u64) -> Result<bool> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // points that may still have unseen children
        let mut open: Vec<usize> = vec![0];
        while self.points.len() < self.n && !open.is_empty() {
            if self.expanded >= self.exp.opts.budget {
                return Ok(true);
            }
            self.expanded += 1;
            let slot = rng.gen_range(0..open.len());
            let from = self.points[open[slot]].point.clone();
            let mut fresh: Vec<OrbitPoint> = self.exp.children(&from)?.into_iter().filter(|c| self.is_new(c)).collect();
            if fresh.len() <= 1 {
                open.swap_remove(slot);
            }
            if !fresh.is_empty() {
                let pick = rng.gen_range(0..fresh.len());
                self.accept(fresh.swap_remove(pick))?;
                open.push(self.points.len() - 1);
            }
        }
        Ok(false)
    }
}

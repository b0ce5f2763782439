//! Exhaustive search for points of bounded height.
//!
//! The word is split into a left half of length `⌊k/2⌋` and a right half.
//! Left-half products are tabulated by matrix; every right half `R` then
//! needs only the lookup of `A·R⁻¹`. This brute force is the reference
//! every closed-form construction is checked against.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::continuant::lower_target;
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::sl2::{Mat2, Shape};

use super::PointTuple;

/// Default cap on the number of half-words visited.
pub const DEFAULT_ENUM_CAP: u128 = 100_000_000;

/// Per-coordinate search box.
///
/// Coordinates are `(p + q·√d)/r` with `|p| ≤ max_abs`, `|q| ≤ max_sqrt_coeff`
/// (quadratic rings only) and `r` a product of inverted primes, each to a
/// power at most `max_den_exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeightBound {
    pub max_abs: u64,
    pub max_den_exp: u32,
    pub max_sqrt_coeff: u64,
}

impl HeightBound {
    /// Integers `|x| ≤ n` (plus `|q| ≤ n` for quadratic rings), no denominators.
    pub fn new(n: u64) -> Self {
        HeightBound { max_abs: n, max_den_exp: 0, max_sqrt_coeff: n }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub cap: u128,
    /// Worker threads; 1 runs on the calling thread.
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { cap: DEFAULT_ENUM_CAP, jobs: 1 }
    }
}

/// Every ring element inside the box, sorted by real value.
pub fn candidate_values(ring: &Ring, bound: &HeightBound) -> Vec<Elem> {
    let mut dens = vec![BigInt::from(1)];
    for &p in ring.inverted_primes() {
        let mut next = Vec::new();
        for r in &dens {
            let mut pow = r.clone();
            for _ in 0..=bound.max_den_exp {
                next.push(pow.clone());
                pow *= p;
            }
        }
        dens = next;
    }
    let n = bound.max_abs as i64;
    let qmax = if ring.is_quadratic() { bound.max_sqrt_coeff as i64 } else { 0 };
    let mut set = BTreeSet::new();
    for r in &dens {
        for p in -n..=n {
            for q in -qmax..=qmax {
                set.insert(Elem::new(ring.radicand(), p.into(), q.into(), r.clone()));
            }
        }
    }
    set.into_iter().collect()
}

fn count_tuples(base: usize, len: usize) -> u128 {
    (0..len).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

/// Depth-first walk over all index tuples of `len` letters starting at
/// word position `offset`, calling `visit` with the running product.
fn walk<F: FnMut(&[u32], &Mat2)>(
    letters: &[Elem],
    offset: usize,
    len: usize,
    prefix: &mut Vec<u32>,
    acc: &Mat2,
    visit: &mut F,
) {
    if prefix.len() == len {
        visit(prefix, acc);
        return;
    }
    let kind = Shape::Lower.factor_kind(offset + prefix.len());
    for (i, x) in letters.iter().enumerate() {
        let next = acc.mul(&Mat2::elementary(kind, x.clone()));
        prefix.push(i as u32);
        walk(letters, offset, len, prefix, &next, visit);
        prefix.pop();
    }
}

/// All points of the variety of `a` whose coordinates lie in the box, in
/// lexicographic order.
pub fn enumerate_points_bounded(
    ring: &Ring,
    a: &Mat2,
    k: usize,
    shape: Shape,
    bound: &HeightBound,
    opts: &EnumOptions,
) -> Result<Vec<PointTuple>> {
    if k == 0 {
        return Err(Error::InvalidLength("enumeration needs k >= 1".into()));
    }
    let target = lower_target(a, shape);
    let letters = candidate_values(ring, bound);
    let left_len = k / 2;
    let right_len = k - left_len;
    let candidates = count_tuples(letters.len(), left_len).saturating_add(count_tuples(letters.len(), right_len));
    if candidates > opts.cap {
        return Err(Error::BoundTooLarge { candidates, cap: opts.cap });
    }

    let mut table: HashMap<Mat2, Vec<Vec<u32>>> = HashMap::new();
    walk(&letters, 0, left_len, &mut Vec::new(), &Mat2::identity(), &mut |idx, m| {
        table.entry(m.clone()).or_default().push(idx.to_vec());
    });

    // split the right half on its first letter so workers get disjoint slices
    let search_from = |first: usize| -> Vec<Vec<u32>> {
        let kind = Shape::Lower.factor_kind(left_len);
        let start = Mat2::elementary(kind, letters[first].clone());
        let mut found = Vec::new();
        let mut prefix = vec![first as u32];
        walk(&letters, left_len, right_len, &mut prefix, &start, &mut |idx, right| {
            let need = target.mul(&right.inverse());
            if let Some(lefts) = table.get(&need) {
                for l in lefts {
                    let mut full = l.clone();
                    full.extend_from_slice(idx);
                    found.push(full);
                }
            }
        });
        found
    };

    let mut hits: Vec<Vec<u32>> = if opts.jobs > 1 {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build().map_err(|e| Error::Format(e.to_string()))?;
        pool.install(|| (0..letters.len()).into_par_iter().flat_map_iter(search_from).collect())
    } else {
        (0..letters.len()).flat_map(search_from).collect()
    };
    // letters are sorted, so index order is value order
    hits.sort_unstable();
    Ok(hits
        .into_iter()
        .map(|idx| {
            let xs = idx.iter().map(|&i| letters[i as usize].clone()).collect();
            PointTuple::new(ring, shape, xs)
        })
        .collect())
}

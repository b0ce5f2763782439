//! Degree-bounded density witnesses.
//!
//! A finite point set is compared with its ambient variety by counting the
//! polynomials of degree `≤ D` that vanish on it: the nullity of the exact
//! monomial evaluation matrix. Points that impose as many conditions as
//! generic points of the variety satisfy no extra low-degree relation.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};
use crate::sl2::Mat2;
use crate::varieties::{fiber_lift, LiftOutcome};

/// Exponent vectors of total degree `≤ degree` in `k` variables, graded-lex.
///
/// Within one degree, vectors are sorted lexicographically from the largest,
/// so `k = 2, degree = 2` gives `1, x₁, x₂, x₁², x₁x₂, x₂²`.
pub fn monomials(k: usize, degree: u32) -> Vec<Vec<u32>> {
    fn fill(k: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == k {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            fill(k, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=degree {
        if k == 0 {
            if total == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        fill(k, total, &mut Vec::new(), &mut out);
    }
    out
}

/// `C(k + degree, degree)`.
pub fn monomial_count(k: usize, degree: u32) -> usize {
    let mut c: u128 = 1;
    for i in 1..=degree as u128 {
        c = c * (k as u128 + i) / i;
    }
    c as usize
}

/// Evaluations of every monomial of degree `≤ D` at every point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub k: usize,
    pub degree: u32,
    pub monomials: Vec<Vec<u32>>,
    pub rows: Vec<Vec<Elem>>,
}

impl MonomialMatrix {
    pub fn new<P: AsRef<[Elem]> + Sync>(points: &[P], degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let k = first.as_ref().len();
        if points.iter().any(|p| p.as_ref().len() != k) {
            return Err(Error::MixedLengths);
        }
        let monomials = monomials(k, degree);
        let rows = points.par_iter().map(|p| evaluate_row(p.as_ref(), &monomials, degree)).collect();
        Ok(MonomialMatrix { k, degree, monomials, rows })
    }

    pub fn cols(&self) -> usize {
        self.monomials.len()
    }

    /// Rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.rows.iter().map(|r| clear_denominators(r)).collect(), self.cols())
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }
}

fn evaluate_row(xs: &[Elem], monomials: &[Vec<u32>], degree: u32) -> Vec<Elem> {
    let powers: Vec<Vec<Elem>> = xs
        .iter()
        .map(|x| {
            let mut pw = vec![Elem::one()];
            for e in 1..=degree as usize {
                let next = &pw[e - 1] * x;
                pw.push(next);
            }
            pw
        })
        .collect();
    monomials
        .iter()
        .map(|m| {
            m.iter().enumerate().filter(|(_, &e)| e > 0).fold(Elem::one(), |acc, (i, &e)| &acc * &powers[i][e as usize])
        })
        .collect()
}

/// Scales a row by the lcm of its denominators so the entries are integral.
fn clear_denominators(row: &[Elem]) -> Vec<Elem> {
    let l = row.iter().fold(BigInt::from(1), |l, x| l.lcm(x.den()));
    let l = Elem::from_bigint(l);
    row.iter().map(|x| x * &l).collect()
}

/// Bareiss elimination; every intermediate entry is a minor of the input,
/// so the divisions are exact.
fn bareiss_rank(mut m: Vec<Vec<Elem>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = Elem::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        let p = &prow[col];
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for j in col + 1..cols {
                let v = &(p * &row[j]) - &(&f * &prow[j]);
                row[j] = v.checked_div(&prev).expect("nonzero previous pivot");
            }
            row[col] = Elem::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Dimension of the space of polynomials of degree `≤ degree` vanishing on `points`.
pub fn vanishing_space_dim<P: AsRef<[Elem]> + Sync>(points: &[P], degree: u32) -> Result<usize> {
    Ok(MonomialMatrix::new(points, degree)?.nullity())
}

/// A basis of the vanishing polynomials, as coefficient vectors over [`monomials`].
///
/// Each vector has a 1 at its own free monomial and 0 at the others, so the
/// basis is unique.
pub fn vanishing_space_basis<P: AsRef<[Elem]> + Sync>(points: &[P], degree: u32) -> Result<Vec<Vec<Elem>>> {
    let mm = MonomialMatrix::new(points, degree)?;
    let cols = mm.cols();
    let mut m = mm.rows;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, pr);
        let inv = m[rank][col].inv().expect("nonzero");
        for x in m[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let prow = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..cols {
                row[j] = &row[j] - &(&f * &prow[j]);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let free = (0..cols).filter(|c| !pivots.contains(c));
    Ok(free
        .map(|fc| {
            let mut v = vec![Elem::zero(); cols];
            v[fc] = Elem::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[r][fc];
            }
            v
        })
        .collect())
}

/// Whether `points` satisfy exactly as many degree-`≤ D` relations as the
/// ambient variety, whose vanishing-space dimension is `baseline`.
pub fn density_witness<P: AsRef<[Elem]> + Sync>(points: &[P], degree: u32, baseline: usize) -> Result<bool> {
    Ok(density_report(points, degree, baseline)?.dense_at_d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub k: usize,
    #[serde(rename = "D")]
    pub degree: u32,
    pub monomials: usize,
    pub points: usize,
    pub nullity: usize,
    pub baseline: usize,
    #[serde(rename = "dense_at_D")]
    pub dense_at_d: bool,
}

pub fn density_report<P: AsRef<[Elem]> + Sync>(points: &[P], degree: u32, baseline: usize) -> Result<DensityReport> {
    let mm = MonomialMatrix::new(points, degree)?;
    let nullity = mm.nullity();
    Ok(DensityReport {
        k: mm.k,
        degree,
        monomials: mm.cols(),
        points: points.len(),
        nullity,
        baseline,
        dense_at_d: nullity == baseline,
    })
}

/// A small random rational, never zero.
fn random_rational(rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let num: i64 = rng.gen_range(-12..=12);
        let den: i64 = rng.gen_range(1..=4);
        if num != 0 {
            return Elem::ratio(num, den);
        }
    }
}

/// Field-valued points of `V_k(A)` from random tails lifted through the fibration.
///
/// Only generic fibers are kept. Fails with [`Error::EmptyPointSet`] if
/// `20·count` tails produce too few points.
pub fn sample_variety_points(ring: &Ring, a: &Mat2, k: usize, count: usize, seed: u64) -> Result<Vec<Vec<Elem>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count.saturating_mul(20).max(20) {
        if out.len() == count {
            break;
        }
        let tail: Vec<Elem> = (0..k.saturating_sub(3)).map(|_| random_rational(&mut rng)).collect();
        if let LiftOutcome::Generic(p) = fiber_lift(ring, a, k, &tail)? {
            out.push(p.into_entries());
        }
    }
    if out.len() < count {
        return Err(Error::EmptyPointSet);
    }
    Ok(out)
}

/// Field-valued points of `x₁⋯x_k = 1`.
pub fn sample_unit_product_points(k: usize, count: usize, seed: u64) -> Result<Vec<Vec<Elem>>> {
    if k == 0 {
        return Err(Error::InvalidLength("unit product variety needs k >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let mut xs: Vec<Elem> = (0..k - 1).map(|_| random_rational(&mut rng)).collect();
            let prod = xs.iter().fold(Elem::one(), |acc, x| &acc * x);
            xs.push(prod.inv().expect("nonzero"));
            xs
        })
        .collect())
}

/// Generic samples drawn beyond the monomial count, so the baseline is
/// the variety's own vanishing dimension with overwhelming probability.
pub const BASELINE_EXTRA_SAMPLES: usize = 10;

/// Vanishing-space dimension of `V_k(A)` at degree `degree`, from generic samples.
pub fn variety_baseline(ring: &Ring, a: &Mat2, k: usize, degree: u32, seed: u64) -> Result<usize> {
    let n = monomial_count(k, degree) + BASELINE_EXTRA_SAMPLES;
    vanishing_space_dim(&sample_variety_points(ring, a, k, n, seed)?, degree)
}

/// Vanishing-space dimension of `x₁⋯x_k = 1` at degree `degree`.
pub fn unit_product_baseline(k: usize, degree: u32, seed: u64) -> Result<usize> {
    let n = monomial_count(k, degree) + BASELINE_EXTRA_SAMPLES;
    vanishing_space_dim(&sample_unit_product_points(k, n, seed)?, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Elem>> {
        v.iter().map(|p| p.iter().map(|&x| Elem::from_i64(x)).collect()).collect()
    }

    #[test]
    fn monomial_order_and_count() {
        let m = monomials(2, 2);
        assert_eq!(m, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(9, 2).len(), 55);
        for k in 0..6 {
            for d in 0..4 {
                assert_eq!(monomials(k, d).len(), monomial_count(k, d));
            }
        }
        assert_eq!(monomials(0, 3), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(vanishing_space_dim(&pts(&[&[0, 0], &[1, 1], &[2, 2]]), 1).unwrap(), 1);
        assert_eq!(vanishing_space_dim(&pts(&[&[7]]), 1).unwrap(), 1);
        let parabola: Vec<Vec<Elem>> = (0..6).map(|i| vec![Elem::from_i64(i), Elem::from_i64(i * i)]).collect();
        assert!(vanishing_space_dim(&parabola, 2).unwrap() >= 1);
    }

    #[test]
    fn errors() {
        let empty: Vec<Vec<Elem>> = Vec::new();
        assert_eq!(vanishing_space_dim(&empty, 2), Err(Error::EmptyPointSet));
        assert_eq!(vanishing_space_dim(&pts(&[&[1, 2], &[3]]), 1), Err(Error::MixedLengths));
        assert_eq!(vanishing_space_dim(&pts(&[&[1, 2]]), 0), Err(Error::ZeroDegree));
    }

    #[test]
    fn witness_flags_extra_relation() {
        let on_plane: Vec<Vec<Elem>> =
            (0..10).map(|i| vec![Elem::zero(), Elem::from_i64(i), Elem::from_i64(i * i - 3)]).collect();
        assert!(!density_witness(&on_plane, 1, 0).unwrap());
    }

    #[test]
    fn unit_curve_basis() {
        let pts: Vec<Vec<Elem>> = (0..10).map(|n| vec![Elem::from_i64(1 << n), Elem::ratio(1, 1 << n)]).collect();
        let basis = vanishing_space_basis(&pts, 2).unwrap();
        // 1, x₁, x₂, x₁², x₁x₂, x₂²
        assert_eq!(
            basis,
            vec![vec![-Elem::one(), Elem::zero(), Elem::zero(), Elem::zero(), Elem::one(), Elem::zero()]]
        );
        assert_eq!(unit_product_baseline(2, 2, 7).unwrap(), 1);
        assert!(density_witness(&pts, 2, 1).unwrap());
    }

    #[test]
    fn quadratic_entries() {
        let s = Elem::sqrt_of(2);
        // the line x₂ = √2·x₁
        let pts: Vec<Vec<Elem>> = (1..5).map(|i| vec![Elem::from_i64(i), &s * &Elem::from_i64(i)]).collect();
        let basis = vanishing_space_basis(&pts, 1).unwrap();
        assert_eq!(basis, vec![vec![Elem::zero(), -&s, Elem::one()]]);
        assert_eq!(vanishing_space_dim(&pts, 1).unwrap(), 1);
    }

    #[test]
    fn rank_agrees_with_reduced_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let n = rng.gen_range(1..12);
            let pts: Vec<Vec<Elem>> = (0..n).map(|_| (0..3).map(|_| random_rational(&mut rng)).collect()).collect();
            let basis = vanishing_space_basis(&pts, 2).unwrap();
            assert_eq!(basis.len(), vanishing_space_dim(&pts, 2).unwrap());
            let mm = MonomialMatrix::new(&pts, 2).unwrap();
            for v in &basis {
                for row in &mm.rows {
                    let s = row.iter().zip(v).fold(Elem::zero(), |acc, (x, c)| &acc + &(x * c));
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn report_json_keys() {
        let r = density_report(&pts(&[&[0, 0], &[1, 1], &[2, 2]]), 1, 1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["D"], 1);
        assert_eq!(v["dense_at_D"], true);
        assert_eq!(v["monomials"], 3);
        assert_eq!(v["nullity"], 1);
    }

    #[test]
    fn variety_samples_are_members() {
        let r = Ring::integers();
        let a = Mat2::from_ints(2, 3, 3, 5);
        for p in sample_variety_points(&r, &a, 6, 12, 1).unwrap() {
            assert!(crate::continuant::vk_membership(&a, &p, crate::sl2::Shape::Lower));
        }
    }
}

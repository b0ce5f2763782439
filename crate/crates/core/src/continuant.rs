//! Euler continuants and the closed form of an alternating word.
//!
//! `K₋₁ = 0`, `K₀ = 1`, `K_n(x₁…x_n) = K_{n−1}(x₁…x_{n−1})·x_n + K_{n−2}(x₁…x_{n−2})`.
//! The lower-start word `L(x₁)U(x₂)…` has entries that are continuants of
//! contiguous runs of its letters, which gives the defining equations of
//! the factorization varieties without ever multiplying matrices.

use crate::ring::Elem;
use crate::sl2::{Mat2, Shape};

/// `K_n(x₁, …, x_n)` by the forward recursion.
pub fn continuant(xs: &[Elem]) -> Elem {
    let mut prev = Elem::zero();
    let mut cur = Elem::one();
    for x in xs {
        let next = &(&cur * x) + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Continuant of `xs[lo..hi]` where `hi = lo − 1` denotes `K₋₁ = 0`.
fn run(xs: &[Elem], lo: usize, hi: usize) -> Elem {
    if hi + 1 == lo {
        Elem::zero()
    } else {
        continuant(&xs[lo..hi])
    }
}

/// Matrix of the lower-start word on `xs`, assembled from four continuants.
pub fn word_matrix_by_continuants(xs: &[Elem]) -> Mat2 {
    let k = xs.len();
    if k == 0 {
        return Mat2::identity();
    }
    // 1-based runs x_i..x_j map to xs[i-1..j]
    let inner = run(xs, 1, k - 1); // x₂…x_{k−1}
    let tail = run(xs, 1, k); // x₂…x_k
    let head = run(xs, 0, k - 1); // x₁…x_{k−1}
    let full = continuant(xs); // x₁…x_k
    if k % 2 == 1 {
        Mat2::new(tail, inner, full, head)
    } else {
        Mat2::new(inner, tail, head, full)
    }
}

/// The matrix whose lower-start equations a tuple of the given shape must satisfy.
///
/// Lower-start tuples for `A` solve the same equations as upper-start and
/// D-type tuples for `A′`, so the latter two test against `A′`.
pub fn lower_target(a: &Mat2, shape: Shape) -> Mat2 {
    match shape {
        Shape::Lower => a.clone(),
        Shape::Upper | Shape::D => a.prime(),
    }
}

/// Whether `xs` is a point of the factorization variety of `a` for `shape`.
pub fn vk_membership(a: &Mat2, xs: &[Elem], shape: Shape) -> bool {
    word_matrix_by_continuants(xs) == lower_target(a, shape)
}

/// Entrywise `continuant side − target side` of the defining equations.
pub fn residuals(a: &Mat2, xs: &[Elem], shape: Shape) -> Mat2 {
    let m = word_matrix_by_continuants(xs);
    let target = lower_target(a, shape);
    Mat2::new(&m.a - &target.a, &m.c - &target.c, &m.b - &target.b, &m.d - &target.d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::word_to_matrix;

    fn ints(xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem::from_i64(x)).collect()
    }

    #[test]
    fn continuant_examples() {
        assert_eq!(continuant(&[]), Elem::one());
        assert_eq!(continuant(&ints(&[2, 3])), Elem::from_i64(7));
        assert_eq!(continuant(&ints(&[1, 2, 3])), Elem::from_i64(10));
        assert_eq!(continuant(&ints(&[1, 1, 1, 1])), Elem::from_i64(5));
    }

    #[test]
    fn continuants_match_expanded_polynomials() {
        // K₄ and K₅ written out term by term
        let xs = ints(&[3, -2, 5, 7, -4]);
        let x: Vec<i64> = vec![3, -2, 5, 7, -4];
        let k4 = x[0] * x[1] * x[2] * x[3] + x[0] * x[1] + x[0] * x[3] + x[2] * x[3] + 1;
        assert_eq!(continuant(&xs[..4]), Elem::from_i64(k4));
        let k5 = x[0] * x[1] * x[2] * x[3] * x[4]
            + x[0] * x[1] * x[2]
            + x[0] * x[1] * x[4]
            + x[0] * x[3] * x[4]
            + x[2] * x[3] * x[4]
            + x[0]
            + x[2]
            + x[4];
        assert_eq!(continuant(&xs), Elem::from_i64(k5));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(word_matrix_by_continuants(&ints(&[0, 1, 1])), Mat2::from_ints(2, 1, 1, 1));
        assert_eq!(word_matrix_by_continuants(&ints(&[1, 1, 1, 1])), Mat2::from_ints(2, 3, 3, 5));
        let b = Elem::ratio(-5, 2);
        assert_eq!(word_matrix_by_continuants(std::slice::from_ref(&b)), Mat2::lower(b));
        assert_eq!(word_matrix_by_continuants(&[]), Mat2::identity());
        let xs = ints(&[2, -1, 4, 0, 3, 3, -7]);
        for k in 0..=xs.len() {
            assert_eq!(word_matrix_by_continuants(&xs[..k]), word_to_matrix(Shape::Lower, &xs[..k]));
        }
    }

    #[test]
    fn membership_examples() {
        let a = Mat2::from_ints(2, 3, 3, 5);
        assert!(vk_membership(&a, &ints(&[1, 1, 1, 1]), Shape::Lower));
        assert!(!vk_membership(&a, &ints(&[1, 1, 1, 2]), Shape::Lower));
        for t in -3..=3 {
            assert!(vk_membership(&Mat2::identity(), &ints(&[t, 0, -t]), Shape::Lower));
        }
        assert!(vk_membership(&a.prime(), &ints(&[1, 1, 1, 1]), Shape::Upper));
        assert!(vk_membership(&a.prime(), &ints(&[1, 1, 1, 1]), Shape::D));
        assert!(vk_membership(&Mat2::identity(), &[], Shape::Lower));
    }

    #[test]
    fn residuals_vanish_exactly_on_members() {
        let a = Mat2::from_ints(2, 3, 3, 5);
        let r = residuals(&a, &ints(&[1, 1, 1, 1]), Shape::Lower);
        assert!(r.entries().iter().all(|e| e.is_zero()));
        let r = residuals(&a, &ints(&[1, 1, 1, 2]), Shape::Lower);
        assert_eq!(r, Mat2::from_ints(0, 2, 0, 3));
    }
}

//! 2×2 matrices of determinant ±1, the elementary generators and words in them.
//!
//! Entries use the layout
//!
//! ```text
//!     ( a  c )
//!     ( b  d )
//! ```
//!
//! so `b` is bottom-left and `c` is top-right. The same layout is used in
//! every serialized form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::Elem;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    /// top-left
    pub a: Elem,
    /// top-right
    pub c: Elem,
    /// bottom-left
    pub b: Elem,
    /// bottom-right
    pub d: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    /// `(1 x; 0 1)`
    U,
    /// `(1 0; x 1)`
    L,
    /// `(x 1; 1 0)`, determinant −1
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    /// `(a c; b d) ↦ (d b; c a)`
    Prime,
    /// `(a c; b d) ↦ (a b; c d)`
    Transpose,
    /// `(a c; b d) ↦ (d c; b a)`
    Star,
}

/// Which alternating product a tuple of letters stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Shape {
    /// `L(x₁)U(x₂)L(x₃)…`
    #[serde(rename = "lower")]
    Lower,
    /// `U(x₁)L(x₂)U(x₃)…`
    #[serde(rename = "upper")]
    Upper,
    /// `D(x₁)D(x₂)…D(x_k)·t^k`
    #[serde(rename = "D")]
    D,
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Lower => "lower",
            Shape::Upper => "upper",
            Shape::D => "D",
        }
    }

    pub fn from_name(s: &str) -> Option<Shape> {
        match s {
            "lower" => Some(Shape::Lower),
            "upper" => Some(Shape::Upper),
            "D" => Some(Shape::D),
            _ => None,
        }
    }

    /// Kind of the `i`-th factor (0-based) in an alternating word of this shape.
    pub fn factor_kind(self, i: usize) -> Elementary {
        match (self, i % 2) {
            (Shape::Lower, 0) | (Shape::Upper, 1) => Elementary::L,
            (Shape::Lower, _) | (Shape::Upper, _) => Elementary::U,
            (Shape::D, _) => Elementary::D,
        }
    }
}

impl Mat2 {
    pub fn new(a: Elem, c: Elem, b: Elem, d: Elem) -> Self {
        Mat2 { a, c, b, d }
    }

    /// Convenience constructor from small integers, in `(a, c, b, d)` order.
    pub fn from_ints(a: i64, c: i64, b: i64, d: i64) -> Self {
        Mat2::new(a.into(), c.into(), b.into(), d.into())
    }

    pub fn identity() -> Self {
        Mat2::from_ints(1, 0, 0, 1)
    }

    pub fn elementary(kind: Elementary, x: Elem) -> Self {
        match kind {
            Elementary::U => Mat2::new(Elem::one(), x, Elem::zero(), Elem::one()),
            Elementary::L => Mat2::new(Elem::one(), Elem::zero(), x, Elem::one()),
            Elementary::D => Mat2::new(x, Elem::one(), Elem::one(), Elem::zero()),
        }
    }

    pub fn upper(x: Elem) -> Self {
        Mat2::elementary(Elementary::U, x)
    }

    pub fn lower(x: Elem) -> Self {
        Mat2::elementary(Elementary::L, x)
    }

    pub fn dmat(x: Elem) -> Self {
        Mat2::elementary(Elementary::D, x)
    }

    /// The swap matrix `t = (0 1; 1 0)`.
    pub fn t() -> Self {
        Mat2::from_ints(0, 1, 1, 0)
    }

    pub fn det(&self) -> Elem {
        &self.a * &self.d - &self.c * &self.b
    }

    pub fn is_sl2(&self) -> bool {
        self.det().is_one()
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.c * &rhs.b,
            c: &self.a * &rhs.c + &self.c * &rhs.d,
            b: &self.b * &rhs.a + &self.d * &rhs.b,
            d: &self.b * &rhs.c + &self.d * &rhs.d,
        }
    }

    /// Inverse via the adjugate. Panics on a singular matrix, which the
    /// determinant ±1 invariant rules out.
    pub fn inverse(&self) -> Mat2 {
        let det = self.det();
        let inv = det.inv().expect("singular matrix");
        Mat2 { a: &self.d * &inv, c: -(&self.c * &inv), b: -(&self.b * &inv), d: &self.a * &inv }
    }

    pub fn involution(&self, which: Involution) -> Mat2 {
        match which {
            Involution::Prime => self.prime(),
            Involution::Transpose => self.transpose(),
            Involution::Star => self.star(),
        }
    }

    pub fn prime(&self) -> Mat2 {
        Mat2::new(self.d.clone(), self.b.clone(), self.c.clone(), self.a.clone())
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }

    pub fn star(&self) -> Mat2 {
        Mat2::new(self.d.clone(), self.c.clone(), self.b.clone(), self.a.clone())
    }

    pub fn entries(&self) -> [&Elem; 4] {
        [&self.a, &self.c, &self.b, &self.d]
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.c, self.b, self.d)
    }
}

/// An alternating word `x₁, …, x_k` of elementary factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub shape: Shape,
    pub entries: Vec<Elem>,
}

impl Word {
    pub fn new(shape: Shape, entries: Vec<Elem>) -> Self {
        Word { shape, entries }
    }

    pub fn lower(entries: Vec<Elem>) -> Self {
        Word::new(Shape::Lower, entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_matrix(&self) -> Mat2 {
        word_to_matrix(self.shape, &self.entries)
    }
}

/// Evaluates the alternating product; D-type words include the trailing `t^k`.
pub fn word_to_matrix(shape: Shape, xs: &[Elem]) -> Mat2 {
    let mut m = Mat2::identity();
    for (i, x) in xs.iter().enumerate() {
        m = m.mul(&Mat2::elementary(shape.factor_kind(i), x.clone()));
    }
    if shape == Shape::D && xs.len() % 2 == 1 {
        m = m.mul(&Mat2::t());
    }
    m
}

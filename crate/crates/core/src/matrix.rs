//! Fixed-size 2×2 matrices and 2-vectors.

use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Real;

pub type Vec2<T> = [T; 2];

/// Real 2×2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T> {
    pub rows: [[T; 2]; 2],
}

impl<T: Real> Mat2<T> {
    pub const fn new(rows: [[T; 2]; 2]) -> Self {
        Self { rows }
    }

    /// Builds a matrix from four numbers in row-major order.
    pub fn from_row_major(v: [T; 4]) -> Self {
        Self::new([[v[0], v[1]], [v[2], v[3]]])
    }

    pub fn identity() -> Self {
        Self::new([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    pub fn zero() -> Self {
        Self::new([[T::zero(); 2]; 2])
    }

    pub fn from_f64(rows: [[f64; 2]; 2]) -> Self {
        Self::new([
            [T::lit(rows[0][0]), T::lit(rows[0][1])],
            [T::lit(rows[1][0]), T::lit(rows[1][1])],
        ])
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        let r = &self.rows;
        [
            [r[0][0].to_f64_lossy(), r[0][1].to_f64_lossy()],
            [r[1][0].to_f64_lossy(), r[1][1].to_f64_lossy()],
        ]
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Self::new([[r[0][0], r[1][0]], [r[0][1], r[1][1]]])
    }

    pub fn det(&self) -> T {
        let r = &self.rows;
        r[0][0] * r[1][1] - r[0][1] * r[1][0]
    }

    /// Inverse via the adjugate; `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == T::zero() {
            return None;
        }
        let r = &self.rows;
        Some(Self::new([
            [r[1][1] / d, -r[0][1] / d],
            [-r[1][0] / d, r[0][0] / d],
        ]))
    }

    pub fn apply(&self, v: Vec2<T>) -> Vec2<T> {
        let r = &self.rows;
        [
            r[0][0] * v[0] + r[0][1] * v[1],
            r[1][0] * v[0] + r[1][1] * v[1],
        ]
    }

    /// Bilinear form `uᵀ·self·v`.
    pub fn bilinear(&self, u: Vec2<T>, v: Vec2<T>) -> T {
        let w = self.apply(v);
        u[0] * w[0] + u[1] * w[1]
    }

    /// Quadratic form `vᵀ·self·v`.
    pub fn quadratic(&self, v: Vec2<T>) -> T {
        self.bilinear(v, v)
    }

    pub fn max_abs(&self) -> T {
        self.rows
            .iter()
            .flatten()
            .fold(T::zero(), |acc, x| acc.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.rows.iter().flatten().all(|x| x.is_finite())
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (&self.rows, &rhs.rows);
        let mut out = [[T::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::new(out)
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let mut out = self.rows;
        for (row, r) in out.iter_mut().zip(rhs.rows.iter()) {
            for (x, y) in row.iter_mut().zip(r.iter()) {
                *x = *x + *y;
            }
        }
        Self::new(out)
    }
}

impl<T: Real> Sub for Mat2<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Mat2<T> {
    type Output = Self;

    fn neg(self) -> Self {
        let mut out = self.rows;
        out.iter_mut().flatten().for_each(|x| *x = -*x);
        Self::new(out)
    }
}

/// Integer 2×2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IMat2 {
    pub rows: [[i64; 2]; 2],
}

impl IMat2 {
    pub const fn new(rows: [[i64; 2]; 2]) -> Self {
        Self { rows }
    }

    pub fn from_row_major(v: [i64; 4]) -> Self {
        Self::new([[v[0], v[1]], [v[2], v[3]]])
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Self::new([[r[0][0], r[1][0]], [r[0][1], r[1][1]]])
    }

    pub fn det(&self) -> i64 {
        let r = &self.rows;
        r[0][0] * r[1][1] - r[0][1] * r[1][0]
    }

    /// Adjugate, so that `self · adj = det · I`.
    pub fn adjugate(&self) -> Self {
        let r = &self.rows;
        Self::new([[r[1][1], -r[0][1]], [-r[1][0], r[0][0]]])
    }

    pub fn apply(&self, v: [i64; 2]) -> [i64; 2] {
        let r = &self.rows;
        [
            r[0][0] * v[0] + r[0][1] * v[1],
            r[1][0] * v[0] + r[1][1] * v[1],
        ]
    }

    pub fn to_real<T: Real>(&self) -> Mat2<T> {
        let r = &self.rows;
        Mat2::new([
            [T::from_int(r[0][0]), T::from_int(r[0][1])],
            [T::from_int(r[1][0]), T::from_int(r[1][1])],
        ])
    }
}

//! Small dense complex matrices: Gaussian elimination with partial pivoting.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Row-major `n×n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex::one()
            } else {
                Complex::zero()
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul_vec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n)
            .map(|i| (0..self.n).fold(Complex::zero(), |acc, j| acc + self.get(i, j) * x[j]))
            .collect()
    }

    pub fn lu(&self) -> Lu<T> {
        Lu::factor(self)
    }

    pub fn det(&self) -> Complex<T> {
        self.lu().det()
    }

    /// Solves `self·x = b`; `None` when a pivot is exactly zero.
    pub fn solve(&self, b: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
        self.lu().solve(b)
    }

    pub fn inverse(&self) -> Option<Self> {
        let lu = self.lu();
        let mut inv = Self::zeros(self.n);
        let mut e = vec![Complex::zero(); self.n];
        for j in 0..self.n {
            e.iter_mut().for_each(|x| *x = Complex::zero());
            e[j] = Complex::one();
            let col = lu.solve(&e)?;
            for (i, v) in col.into_iter().enumerate() {
                inv.set(i, j, v);
            }
        }
        Some(inv)
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        (0..self.n)
            .map(|j| (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, j).norm()))
            .fold(T::zero(), T::max)
    }

    /// `‖A‖₁·‖A⁻¹‖₁`; infinite for a singular matrix.
    pub fn cond1(&self) -> T {
        match self.inverse() {
            Some(inv) => self.norm1() * inv.norm1(),
            None => T::infinity(),
        }
    }
}

/// `PA = LU` with unit lower-triangular `L` packed below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    n: usize,
    lu: Vec<Complex<T>>,
    perm: Vec<usize>,
    odd_swaps: bool,
    singular: bool,
}

impl<T: Real> Lu<T> {
    fn factor(a: &SquareMatrix<T>) -> Self {
        let n = a.n;
        let mut lu = a.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut odd_swaps = false;
        let mut singular = false;
        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n).map(|r| (r, lu[r * n + col].norm())).fold(
                (col, T::lit(-1.0)),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
            if pivot_abs == T::zero() {
                singular = true;
                continue;
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
                odd_swaps = !odd_swaps;
            }
            let pivot = lu[col * n + col];
            for r in col + 1..n {
                let factor = lu[r * n + col] / pivot;
                lu[r * n + col] = factor;
                for j in col + 1..n {
                    let v = lu[col * n + j];
                    lu[r * n + j] = lu[r * n + j] - factor * v;
                }
            }
        }
        Self {
            n,
            lu,
            perm,
            odd_swaps,
            singular,
        }
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn det(&self) -> Complex<T> {
        if self.singular {
            return Complex::zero();
        }
        let d = (0..self.n).fold(Complex::one(), |acc, i| acc * self.lu[i * self.n + i]);
        if self.odd_swaps {
            -d
        } else {
            d
        }
    }

    pub fn solve(&self, b: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
        if self.singular {
            return None;
        }
        let n = self.n;
        let mut x: Vec<Complex<T>> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i * n + j];
                x[i] = x[i] - u * x[j];
            }
            x[i] = x[i] / self.lu[i * n + i];
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn sample() -> SquareMatrix<f64> {
        SquareMatrix::from_fn(3, |i, j| {
            C::new(
                (i * 3 + j) as f64 + if i == j { 4.0 } else { 0.0 },
                (i as f64 - j as f64) * 0.5,
            )
        })
    }

    #[test]
    fn solve_round_trip() {
        let a = sample();
        let x = vec![C::new(1.0, -1.0), C::new(0.5, 2.0), C::new(-3.0, 0.25)];
        let b = a.mul_vec(&x);
        let got = a.solve(&b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-12);
        }
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let a = sample();
        let g = |i, j| a.get(i, j);
        let cofactor = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
            - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
            + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
        assert!((a.det() - cofactor).norm() < 1e-10);
    }

    #[test]
    fn singular_matrix() {
        let a = SquareMatrix::<f64>::from_fn(2, |i, _| C::new(i as f64, 0.0));
        assert_eq!(a.det(), C::new(0.0, 0.0));
        assert!(a.solve(&[C::new(1.0, 0.0), C::new(1.0, 0.0)]).is_none());
        assert!(a.cond1().is_infinite());
        assert!((SquareMatrix::<f64>::identity(4).cond1() - 1.0).abs() < 1e-15);
    }
}

//! Exact evaluation of finite trigonometric polynomials on the uniform
//! `N×N` torus grid, via index folding and a 2D FFT.

use num_complex::Complex;
use num_traits::Zero;
use rustfft::{FftDirection, FftPlanner};

use crate::scalar::Real;
use crate::sequence::{ComplexSequence2D, IndexBox};

/// In-place 2D FFT of a row-major `n×n` buffer (unnormalised).
pub(crate) fn fft2<T: Real>(buf: &mut [Complex<T>], n: usize, direction: FftDirection) {
    fft2_rect(buf, n, n, direction);
}

/// In-place 2D FFT of a row-major `rows×cols` buffer (unnormalised).
pub(crate) fn fft2_rect<T: Real>(
    buf: &mut [Complex<T>],
    rows: usize,
    cols: usize,
    direction: FftDirection,
) {
    debug_assert_eq!(buf.len(), rows * cols);
    let mut planner = FftPlanner::new();
    let row_fft = planner.plan_fft(cols, direction);
    for row in buf.chunks_exact_mut(cols) {
        row_fft.process(row);
    }
    let col_fft = planner.plan_fft(rows, direction);
    let mut col = vec![Complex::zero(); rows];
    for c in 0..cols {
        for r in 0..rows {
            col[r] = buf[r * cols + c];
        }
        col_fft.process(&mut col);
        for r in 0..rows {
            buf[r * cols + c] = col[r];
        }
    }
}

/// Full linear convolution of two row-major arrays; the output has extent
/// `ea + eb − 1` per axis. Large inputs go through a zero-padded FFT.
pub(crate) fn convolve_full<T: Real>(
    a: &[Complex<T>],
    ea: [usize; 2],
    b: &[Complex<T>],
    eb: [usize; 2],
) -> Vec<Complex<T>> {
    let eo = [ea[0] + eb[0] - 1, ea[1] + eb[1] - 1];
    if a.len().saturating_mul(b.len()) <= DIRECT_CONVOLUTION_LIMIT {
        let mut out = vec![Complex::zero(); eo[0] * eo[1]];
        for i0 in 0..ea[0] {
            for i1 in 0..ea[1] {
                let x = a[i0 * ea[1] + i1];
                if x.is_zero() {
                    continue;
                }
                for j0 in 0..eb[0] {
                    let row = &b[j0 * eb[1]..(j0 + 1) * eb[1]];
                    let base = (i0 + j0) * eo[1] + i1;
                    for (j1, &y) in row.iter().enumerate() {
                        out[base + j1] = out[base + j1] + x * y;
                    }
                }
            }
        }
        return out;
    }
    let pad = |src: &[Complex<T>], e: [usize; 2]| {
        let mut buf = vec![Complex::zero(); eo[0] * eo[1]];
        for r in 0..e[0] {
            buf[r * eo[1]..r * eo[1] + e[1]].copy_from_slice(&src[r * e[1]..(r + 1) * e[1]]);
        }
        fft2_rect(&mut buf, eo[0], eo[1], FftDirection::Forward);
        buf
    };
    let fa = pad(a, ea);
    let mut prod: Vec<Complex<T>> = pad(b, eb).iter().zip(&fa).map(|(x, y)| x * y).collect();
    fft2_rect(&mut prod, eo[0], eo[1], FftDirection::Inverse);
    let scale = T::one() / T::from_usize(eo[0] * eo[1]).unwrap();
    prod.iter_mut().for_each(|v| *v = *v * scale);
    prod
}

/// Products of input lengths above this use the FFT path.
const DIRECT_CONVOLUTION_LIMIT: usize = 1 << 24;

/// `G[n₀·N + n₁] = Σ_k w(k)·e^{−2iπ kᵀ(n/N)}` for every grid index `n`.
/// Exact for any support size: indices are folded modulo `N` before the FFT.
pub(crate) fn dtft_grid<T: Real>(w: &ComplexSequence2D<T>, n: usize) -> Vec<Complex<T>> {
    let mut buf = vec![Complex::zero(); n * n];
    let ni = n as i64;
    for (k, v) in w.iter() {
        let r = k[0].rem_euclid(ni) as usize;
        let c = k[1].rem_euclid(ni) as usize;
        buf[r * n + c] = buf[r * n + c] + v;
    }
    fft2(&mut buf, n, FftDirection::Forward);
    buf
}

/// Inverse of [`dtft_grid`] for sequences whose support fits in one period
/// (`support.extent ≤ N` per axis).
pub(crate) fn inverse_dtft_grid<T: Real>(
    spectrum: &[Complex<T>],
    n: usize,
    support: IndexBox,
) -> ComplexSequence2D<T> {
    let mut buf = spectrum.to_vec();
    fft2(&mut buf, n, FftDirection::Inverse);
    let scale = T::one() / T::from_usize(n * n).unwrap();
    let ni = n as i64;
    ComplexSequence2D::from_fn(support, |k| {
        let r = k[0].rem_euclid(ni) as usize;
        let c = k[1].rem_euclid(ni) as usize;
        buf[r * n + c] * scale
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cis;

    #[test]
    fn folded_fft_matches_direct_sum() {
        let support = IndexBox::new([-3, 2], [7, 5]);
        let w = ComplexSequence2D::<f64>::from_fn(support, |k| {
            Complex::new((k[0] * 3 + k[1]) as f64 * 0.1, (k[1] - k[0]) as f64 * 0.05)
        });
        for n in [1usize, 4, 6, 9] {
            let g = dtft_grid(&w, n);
            for n0 in 0..n {
                for n1 in 0..n {
                    let mut direct = Complex::zero();
                    for (k, v) in w.iter() {
                        let x = (k[0] as f64 * n0 as f64 + k[1] as f64 * n1 as f64) / n as f64;
                        direct += v * cis(-2.0 * std::f64::consts::PI * x);
                    }
                    assert!((g[n0 * n + n1] - direct).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn fft_convolution_matches_direct() {
        let a: Vec<Complex<f64>> = (0..12)
            .map(|i| Complex::new(i as f64 * 0.3 - 1.0, (i % 5) as f64))
            .collect();
        let b: Vec<Complex<f64>> = (0..6)
            .map(|i| Complex::new(1.0 / (i + 1) as f64, -(i as f64)))
            .collect();
        let direct = convolve_full(&a, [3, 4], &b, [2, 3]);
        let eo = [4usize, 6usize];
        let pad = |src: &[Complex<f64>], e: [usize; 2]| {
            let mut buf = vec![Complex::zero(); 24];
            for r in 0..e[0] {
                buf[r * eo[1]..r * eo[1] + e[1]].copy_from_slice(&src[r * e[1]..(r + 1) * e[1]]);
            }
            fft2_rect(&mut buf, eo[0], eo[1], FftDirection::Forward);
            buf
        };
        let mut prod: Vec<_> = pad(&a, [3, 4])
            .iter()
            .zip(pad(&b, [2, 3]))
            .map(|(x, y)| x * y)
            .collect();
        fft2_rect(&mut prod, 4, 6, FftDirection::Inverse);
        for (d, f) in direct.iter().zip(&prod) {
            assert!((d - f / 24.0).norm() < 1e-12);
        }
    }

    #[test]
    fn inverse_recovers_sequence() {
        let support = IndexBox::new([-2, 5], [4, 3]);
        let w = ComplexSequence2D::<f64>::from_fn(support, |k| {
            Complex::new(k[0] as f64, k[1] as f64 * 0.5)
        });
        let g = dtft_grid(&w, 8);
        let back = inverse_dtft_grid(&g, 8, support);
        assert!(back.max_abs_diff(&w) < 1e-12);
    }
}

//! Chirp-modulated canonical convolutions.
//!
//! Each convolution multiplies its operands by `λ`, convolves ordinarily,
//! and multiplies the result by `λ̄/√det(iB)`. Their transforms factor as
//! `η̄·(L f)·(L g)`.

use num_complex::Complex;

use crate::dft::convolve_full;
use crate::error::{Error, Result};
use crate::grid::{same_step, GridFunction2D};
use crate::lct::SymplecticParams;
use crate::scalar::Real;
use crate::sequence::ComplexSequence2D;

/// Canonical convolution of two sequences:
/// `h(l) = λ̄(l)/√det(iB) · Σ_k λ(k)s(k)·λ(l−k)c(l−k)`.
///
/// The output box is the Minkowski sum of the input boxes.
pub fn conv_d<T: Real>(
    s: &ComplexSequence2D<T>,
    c: &ComplexSequence2D<T>,
    params: &SymplecticParams<T>,
) -> ComplexSequence2D<T> {
    let ws = s.modulate(|k| params.chirp_lambda_at(k));
    let wc = c.modulate(|k| params.chirp_lambda_at(k));
    let support = s.support().minkowski(&c.support());
    let raw = convolve_full(
        ws.values(),
        s.support().extent,
        wc.values(),
        c.support().extent,
    );
    let norm = params.sqrt_det_ib();
    let mut out = ComplexSequence2D::from_values(support, raw);
    for (o, v) in out.values_mut().iter_mut().enumerate() {
        let l = support.index_at(o);
        *v = *v * params.chirp_lambda_at(l).conj() / norm;
    }
    out
}

/// Sequence-by-function canonical convolution evaluated on the grid of `phi`
/// shifted by the support of `s`:
/// `h(t) = λ̄(t)/√det(iB) · Σ_k λ(k)s(k)·λ(t−k)φ(t−k)`.
///
/// Integer shifts must be whole grid shifts, i.e. `1/h ∈ ℤ`.
pub fn conv_sd<T: Real>(
    s: &ComplexSequence2D<T>,
    phi: &GridFunction2D<T>,
    params: &SymplecticParams<T>,
) -> Result<GridFunction2D<T>> {
    let q = phi.steps_per_unit().ok_or(Error::IncommensurateGrid {
        h: phi.step().to_f64_lossy(),
    })?;
    let sb = s.support();
    let [p0, p1] = phi.extent();
    let extent = [p0 + q * (sb.extent[0] - 1), p1 + q * (sb.extent[1] - 1)];
    let origin = [
        phi.origin()[0] + T::from_int(sb.origin[0]),
        phi.origin()[1] + T::from_int(sb.origin[1]),
    ];
    let chirped_phi: Vec<Complex<T>> = phi
        .iter()
        .map(|(t, v)| v * params.chirp_lambda(t))
        .collect();
    let mut acc = vec![Complex::new(T::zero(), T::zero()); extent[0] * extent[1]];
    for (k, v) in s.iter() {
        if v.norm_sqr() == T::zero() {
            continue;
        }
        let coeff = v * params.chirp_lambda_at(k);
        let off0 = q * (k[0] - sb.origin[0]) as usize;
        let off1 = q * (k[1] - sb.origin[1]) as usize;
        for r in 0..p0 {
            let dst = (off0 + r) * extent[1] + off1;
            for (c, &x) in chirped_phi[r * p1..(r + 1) * p1].iter().enumerate() {
                acc[dst + c] = acc[dst + c] + coeff * x;
            }
        }
    }
    Ok(finish_grid(
        acc,
        origin,
        phi.step(),
        extent,
        params,
        T::one(),
    ))
}

/// Canonical convolution of two grid functions with equal steps; the
/// continuous convolution is a Riemann sum scaled by `h²`.
pub fn conv_c<T: Real>(
    f: &GridFunction2D<T>,
    g: &GridFunction2D<T>,
    params: &SymplecticParams<T>,
) -> Result<GridFunction2D<T>> {
    let h = f.step();
    if !same_step(h, g.step()) {
        return Err(Error::StepMismatch {
            left: h.to_f64_lossy(),
            right: g.step().to_f64_lossy(),
        });
    }
    let chirp = |u: &GridFunction2D<T>| -> Vec<Complex<T>> {
        u.iter().map(|(t, v)| v * params.chirp_lambda(t)).collect()
    };
    let (ef, eg) = (f.extent(), g.extent());
    let raw = convolve_full(&chirp(f), ef, &chirp(g), eg);
    let origin = [f.origin()[0] + g.origin()[0], f.origin()[1] + g.origin()[1]];
    let extent = [ef[0] + eg[0] - 1, ef[1] + eg[1] - 1];
    Ok(finish_grid(raw, origin, h, extent, params, h * h))
}

fn finish_grid<T: Real>(
    raw: Vec<Complex<T>>,
    origin: [T; 2],
    h: T,
    extent: [usize; 2],
    params: &SymplecticParams<T>,
    weight: T,
) -> GridFunction2D<T> {
    let shell = GridFunction2D::new(origin, h, extent, raw);
    let norm = params.sqrt_det_ib();
    let values = shell
        .iter()
        .map(|(t, v)| v * weight * params.chirp_lambda(t).conj() / norm)
        .collect();
    GridFunction2D::new(origin, h, extent, values)
}

/// `aʲ = a ⋆_d ⋯ ⋆_d a` (`j` factors); `a¹ = a`.
pub fn evolution_power<T: Real>(
    a: &ComplexSequence2D<T>,
    j: usize,
    params: &SymplecticParams<T>,
) -> Result<ComplexSequence2D<T>> {
    if j == 0 {
        return Err(Error::InvalidPower);
    }
    let mut acc = a.clone();
    for _ in 1..j {
        acc = conv_d(&acc, a, params);
    }
    Ok(acc)
}

/// Powers `a¹, …, a^count` of a sequence kernel under `⋆_d`.
pub fn evolution_powers<T: Real>(
    a: &ComplexSequence2D<T>,
    count: usize,
    params: &SymplecticParams<T>,
) -> Vec<ComplexSequence2D<T>> {
    let mut out: Vec<ComplexSequence2D<T>> = Vec::with_capacity(count);
    for _ in 0..count {
        let next = match out.last() {
            None => a.clone(),
            Some(prev) => conv_d(prev, a, params),
        };
        out.push(next);
    }
    out
}

/// `aʲ = a ⋆_c ⋯ ⋆_c a` (`j` factors) for a continuous kernel on a grid.
pub fn conv_c_power<T: Real>(
    a: &GridFunction2D<T>,
    j: usize,
    params: &SymplecticParams<T>,
) -> Result<GridFunction2D<T>> {
    if j == 0 {
        return Err(Error::InvalidPower);
    }
    let mut acc = a.clone();
    for _ in 1..j {
        acc = conv_c(&acc, a, params)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat2;
    use crate::sequence::IndexBox;

    type C = Complex<f64>;

    fn params() -> SymplecticParams<f64> {
        let b = Mat2::from_row_major([1.0, 1.0, 1.0, 3.0]);
        SymplecticParams::new(
            Mat2::identity(),
            b,
            Mat2::from_row_major([-0.5, 0.5, 0.5, 0.5]),
            b,
            1e-12,
        )
        .unwrap()
    }

    fn sample_seq() -> ComplexSequence2D<f64> {
        ComplexSequence2D::from_fn(IndexBox::new([-1, 2], [3, 2]), |k| {
            C::new(0.3 * k[0] as f64 + 1.0, 0.2 * k[1] as f64 - 0.1)
        })
    }

    #[test]
    fn delta_rule() {
        let p = params();
        let s = sample_seq();
        let h = conv_d(&s, &ComplexSequence2D::delta([0, 0]), &p);
        assert_eq!(h.support(), s.support());
        for (k, v) in s.iter() {
            assert!((h.get(k) - v / p.sqrt_det_ib()).norm() < 1e-14);
        }
    }

    #[test]
    fn commutative() {
        let p = params();
        let s = sample_seq();
        let c = ComplexSequence2D::from_entries(&[
            ([0, 0], C::new(1.0, 0.5)),
            ([2, -1], C::new(-0.5, 0.0)),
        ]);
        let a = conv_d(&s, &c, &p);
        let b = conv_d(&c, &s, &p);
        assert_eq!(a.support(), b.support());
        assert!(a.max_abs_diff(&b) < 1e-13);
    }

    #[test]
    fn powers() {
        let p = params();
        let a = sample_seq();
        assert_eq!(evolution_power(&a, 1, &p).unwrap(), a);
        assert_eq!(evolution_power(&a, 0, &p), Err(Error::InvalidPower));
        let d2 = evolution_power(&ComplexSequence2D::delta([0, 0]), 2, &p).unwrap();
        assert!((d2.get([0, 0]) - C::new(1.0, 0.0) / p.sqrt_det_ib()).norm() < 1e-15);
        let all = evolution_powers(&a, 3, &p);
        assert_eq!(all.len(), 3);
        assert!(all[2].max_abs_diff(&evolution_power(&a, 3, &p).unwrap()) < 1e-13);
        assert_eq!(all[2].support().extent, [7, 4]);
    }

    #[test]
    fn sd_delta_rule_and_grid_checks() {
        let p = params();
        let phi = GridFunction2D::node_centered(-1.0, 1.0, 0.25, |t| {
            C::new(f64::exp(-t[0] * t[0] - t[1] * t[1]), 0.0)
        });
        let h = conv_sd(&ComplexSequence2D::delta([0, 0]), &phi, &p).unwrap();
        assert!(
            h.max_abs_diff(&phi.scale(C::new(1.0, 0.0) / p.sqrt_det_ib()))
                .unwrap()
                < 1e-14
        );

        let zero = conv_sd(&ComplexSequence2D::zero(), &phi, &p).unwrap();
        assert!(zero.is_zero());

        let bad = GridFunction2D::zeros([0.0, 0.0], 0.3, [3, 3]);
        assert!(matches!(
            conv_sd(&ComplexSequence2D::delta([0, 0]), &bad, &p),
            Err(Error::IncommensurateGrid { .. })
        ));
        let other = GridFunction2D::zeros([0.0, 0.0], 0.5, [3, 3]);
        assert!(matches!(
            conv_c(&phi, &other, &p),
            Err(Error::StepMismatch { .. })
        ));
        assert!(
            conv_c(&phi, &GridFunction2D::zeros([0.0, 0.0], 0.25, [2, 2]), &p)
                .unwrap()
                .is_zero()
        );
    }
}

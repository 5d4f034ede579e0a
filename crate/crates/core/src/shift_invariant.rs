//! Chirp-modulated shift-invariant spaces and dynamical sampling in them.
//!
//! `V(φ) = { s ⋆_sd φ : s ∈ ℓ² }` for a single generator `φ` stored on a grid
//! with `1/h ∈ ℤ`, so that integer shifts and the sampling points `Mᵀk` are
//! grid nodes.
//!
//! Polyphase components carry an extra `λ̄(r)` so that
//! `v_j = Σ_l s_l ⋆_d φ_l^j` holds exactly:
//!
//! ```text
//! s_l(r)   = s(Mᵀr + η_l)·λ(Mᵀr + η_l)·λ̄(r)
//! φ_l^j(r) = φ_j(Mᵀr − η_l)·λ(Mᵀr − η_l)·λ̄(r)
//! v_j(r)   = (aʲ ⋆_c f)(Mᵀr)·λ(Mᵀr)·λ̄(r)
//! ```
//!
//! Taking transforms, `η(ξ)·(L v_j)(ξ) = Σ_l (L φ_l^j)(ξ)·(L s_l)(ξ)`.

use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::convolution::{conv_c, conv_c_power, conv_d, conv_sd};
use crate::error::{Error, Result};
use crate::grid::GridFunction2D;
use crate::lattice::DilationLattice;
use crate::lct::{grid_omega, int_point, LctQuadrature, SpectrumGrid, SymplecticParams};
use crate::linalg::SquareMatrix;
use crate::matrix::Vec2;
use crate::scalar::Real;
use crate::sequence::{ComplexSequence2D, IndexBox};

/// Default lower bound on `min |det B(ξ)|`.
pub const DEFAULT_MIN_DET: f64 = 1e-8;

/// Generator of a shift-invariant space.
#[derive(Debug, Clone)]
pub struct Generator<T> {
    phi: GridFunction2D<T>,
    amalgam_norm: T,
}

impl<T: Real> Generator<T> {
    /// Checks that integers are grid nodes and that the `W(L¹)` norm is finite.
    pub fn new(phi: GridFunction2D<T>) -> Result<Self> {
        if phi.steps_per_unit().is_none() {
            return Err(Error::IncommensurateGrid {
                h: phi.step().to_f64_lossy(),
            });
        }
        if phi.lattice_index([T::zero(); 2]).is_none() {
            return Err(Error::GridMismatch { point: [0.0, 0.0] });
        }
        let amalgam_norm = wiener_amalgam_norm(&phi, T::one())?;
        if !amalgam_norm.is_finite() {
            return Err(Error::NonFinite { what: "generator" });
        }
        Ok(Self { phi, amalgam_norm })
    }

    pub fn phi(&self) -> &GridFunction2D<T> {
        &self.phi
    }

    pub fn amalgam_norm(&self) -> T {
        self.amalgam_norm
    }

    pub fn fingerprint(&self) -> u64 {
        self.phi.fingerprint()
    }
}

/// `(Σ_k (max_{t ∈ k+[0,1)²} |f(t)|)ᵖ)^{1/p}` over the grid samples; `p = ∞`
/// gives the largest cell maximum.
pub fn wiener_amalgam_norm<T: Real>(f: &GridFunction2D<T>, p: T) -> Result<T> {
    if p.is_nan() || p < T::one() {
        return Err(Error::InvalidExponent(p.to_f64_lossy()));
    }
    let mut cells: BTreeMap<[i64; 2], T> = BTreeMap::new();
    for (t, v) in f.iter() {
        // snap samples that sit on a cell edge up to roundoff
        let cell = t.map(|x| {
            let r = x.round();
            let x = if (x - r).abs() <= T::lit(1e-9) { r } else { x };
            x.floor().to_i64().unwrap_or(i64::MAX)
        });
        let e = cells.entry(cell).or_insert_with(T::zero);
        *e = e.max(v.norm());
    }
    if p.is_infinite() {
        return Ok(cells.values().fold(T::zero(), |a, &b| a.max(b)));
    }
    let sum = cells.values().fold(T::zero(), |a, &b| a + b.powf(p));
    Ok(sum.powf(T::one() / p))
}

/// `G(ξ) = Σ_{‖k‖∞ ≤ K} |(L φ)(ξ + Bk)|²`.
pub fn grammian<T: Real>(
    params: &SymplecticParams<T>,
    gen: &Generator<T>,
    xi: Vec2<T>,
    k_max: usize,
) -> T {
    let quad = LctQuadrature::new(params, gen.phi());
    grammian_with_tail(params, &quad, xi, k_max).0
}

/// Grammian from a prepared quadrature, together with the contribution of
/// the outermost shell `‖k‖∞ = K` as a tail estimate.
pub fn grammian_with_tail<T: Real>(
    params: &SymplecticParams<T>,
    quad: &LctQuadrature<T>,
    xi: Vec2<T>,
    k_max: usize,
) -> (T, T) {
    let kk = k_max as i64;
    let mut total = T::zero();
    let mut shell = T::zero();
    for k0 in -kk..=kk {
        for k1 in -kk..=kk {
            let bk = params.b().apply(int_point([k0, k1]));
            let v = quad.eval([xi[0] + bk[0], xi[1] + bk[1]]).norm_sqr();
            total = total + v;
            if k0.abs().max(k1.abs()) == kk {
                shell = shell + v;
            }
        }
    }
    (total, shell)
}

/// Lower and upper Riesz bounds estimated as the extremes of the truncated
/// Grammian over `{Bω}` with `ω` on the `N×N` grid (`N ≥ 4`).
pub fn riesz_bounds<T: Real>(
    params: &SymplecticParams<T>,
    gen: &Generator<T>,
    n: usize,
    k_max: usize,
) -> Result<(T, T)> {
    if n < 4 {
        return Err(Error::InvalidGrid { n, min: 4 });
    }
    let quad = LctQuadrature::new(params, gen.phi());
    let values: Vec<T> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let xi = params.b_omega(grid_omega(idx / n, idx % n, n));
            grammian_with_tail(params, &quad, xi, k_max).0
        })
        .collect();
    let lo = values.iter().fold(T::infinity(), |a, &b| a.min(b));
    let hi = values.iter().fold(T::zero(), |a, &b| a.max(b));
    Ok((lo, hi))
}

/// `f = s ⋆_sd φ`.
pub fn synthesize<T: Real>(
    s: &ComplexSequence2D<T>,
    gen: &Generator<T>,
    params: &SymplecticParams<T>,
) -> Result<GridFunction2D<T>> {
    conv_sd(s, gen.phi(), params)
}

/// Chirp-corrected samples `v_j(k) = (aʲ ⋆_c f)(Mᵀk)·λ(Mᵀk)·λ̄(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SIMeasurementSet<T> {
    pub v: Vec<ComplexSequence2D<T>>,
    pub lattice_id: u64,
    pub params_id: u64,
    pub generator_id: u64,
    pub kernel_id: u64,
}

/// Samples `g(Mᵀk)·λ(Mᵀk)·λ̄(k)` at every `k` with `Mᵀk` an integer node of
/// `g`.
fn chirped_lattice_samples<T: Real>(
    g: &GridFunction2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
) -> Result<ComplexSequence2D<T>> {
    let ints = g.integer_samples().ok_or_else(|| {
        let o = g.origin();
        Error::GridMismatch {
            point: [o[0].to_f64_lossy(), o[1].to_f64_lossy()],
        }
    })?;
    let mt = lat.matrix().transpose();
    let support = lat.transpose_preimage(ints.support());
    Ok(ComplexSequence2D::from_fn(support, |k| {
        let t = mt.apply(k);
        ints.get(t) * params.chirp_lambda_at(t) * params.chirp_lambda_at(k).conj()
    }))
}

/// Synthesizes `f = s ⋆_sd φ`, evolves it under `a`, and takes the `m`
/// chirp-corrected lattice samples.
pub fn si_acquire<T: Real>(
    s: &ComplexSequence2D<T>,
    gen: &Generator<T>,
    a: &GridFunction2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
) -> Result<SIMeasurementSet<T>> {
    let f = synthesize(s, gen, params)?;
    let m = lat.rate();
    let mut v = Vec::with_capacity(m);
    v.push(chirped_lattice_samples(&f, lat, params)?);
    let mut aj = a.clone();
    for j in 1..m {
        if j > 1 {
            aj = conv_c(&aj, a, params)?;
        }
        v.push(chirped_lattice_samples(
            &conv_c(&aj, &f, params)?,
            lat,
            params,
        )?);
    }
    Ok(SIMeasurementSet {
        v,
        lattice_id: lat.fingerprint(),
        params_id: params.fingerprint(),
        generator_id: gen.fingerprint(),
        kernel_id: a.fingerprint(),
    })
}

/// `s_l(r) = s(Mᵀr + η_l)·λ(Mᵀr + η_l)·λ̄(r)` for every coset `l`.
pub fn split_cosets<T: Real>(
    s: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
) -> Vec<ComplexSequence2D<T>> {
    let mt = lat.matrix().transpose();
    lat.eta()
        .iter()
        .map(|&eta| {
            let support = coset_support(lat, s.support(), eta);
            ComplexSequence2D::from_fn(support, |r| {
                let p = mt.apply(r);
                let k = [p[0] + eta[0], p[1] + eta[1]];
                s.get(k) * params.chirp_lambda_at(k) * params.chirp_lambda_at(r).conj()
            })
        })
        .collect()
}

/// Box of `r` with `Mᵀr + η ∈ support`.
fn coset_support(lat: &DilationLattice, support: IndexBox, eta: [i64; 2]) -> IndexBox {
    let shifted = IndexBox::new(
        [support.origin[0] - eta[0], support.origin[1] - eta[1]],
        support.extent,
    );
    lat.transpose_preimage(shifted)
}

/// Inverse of [`split_cosets`].
pub fn interleave_cosets<T: Real>(
    parts: &[ComplexSequence2D<T>],
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
) -> Result<ComplexSequence2D<T>> {
    if parts.len() != lat.rate() {
        return Err(Error::MeasurementCount {
            expected: lat.rate(),
            got: parts.len(),
        });
    }
    let mt = lat.matrix().transpose();
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for (part, eta) in parts.iter().zip(lat.eta()) {
        let b = part.support();
        let last = b.last();
        for r in [
            b.origin,
            [b.origin[0], last[1]],
            [last[0], b.origin[1]],
            last,
        ] {
            let p = mt.apply(r);
            for i in 0..2 {
                lo[i] = lo[i].min(p[i] + eta[i]);
                hi[i] = hi[i].max(p[i] + eta[i]);
            }
        }
    }
    let support = IndexBox::from_corners(lo, hi);
    Ok(ComplexSequence2D::from_fn(support, |k| {
        let (l, r) = lat.transpose_coset_decompose(k);
        parts[l].get(r) * params.chirp_lambda_at(r) * params.chirp_lambda_at(k).conj()
    }))
}

/// `φ_l^j(r) = φ_j(Mᵀr − η_l)·λ(Mᵀr − η_l)·λ̄(r)` over every `r` for which
/// `Mᵀr − η_l` is an integer node of `gen_j`.
pub fn build_polyphase<T: Real>(
    gen_j: &GridFunction2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    l: usize,
) -> Result<ComplexSequence2D<T>> {
    let eta = *lat.eta().get(l).ok_or(Error::IndexOutOfRange {
        index: l,
        len: lat.rate(),
    })?;
    let ints = gen_j.integer_samples().ok_or_else(|| {
        let o = gen_j.origin();
        Error::GridMismatch {
            point: [o[0].to_f64_lossy(), o[1].to_f64_lossy()],
        }
    })?;
    let mt = lat.matrix().transpose();
    let neg = [-eta[0], -eta[1]];
    let support = coset_support(lat, ints.support(), neg);
    Ok(ComplexSequence2D::from_fn(support, |r| {
        let p = mt.apply(r);
        let t = [p[0] - eta[0], p[1] - eta[1]];
        ints.get(t) * params.chirp_lambda_at(t) * params.chirp_lambda_at(r).conj()
    }))
}

/// The polyphase sequences `φ_l^j` for `j, l < m`, with `φ_0 = φ` and
/// `φ_j = aʲ ⋆_c φ`.
#[derive(Debug, Clone)]
pub struct PolyphaseSystem<T> {
    m: usize,
    // components[j][l]
    components: Vec<Vec<ComplexSequence2D<T>>>,
}

impl<T: Real> PolyphaseSystem<T> {
    pub fn new(
        gen: &Generator<T>,
        a: &GridFunction2D<T>,
        lat: &DilationLattice,
        params: &SymplecticParams<T>,
    ) -> Result<Self> {
        let m = lat.rate();
        let mut components = Vec::with_capacity(m);
        for j in 0..m {
            let phi_j = if j == 0 {
                gen.phi().clone()
            } else {
                conv_c(&conv_c_power(a, j, params)?, gen.phi(), params)?
            };
            let row = (0..m)
                .map(|l| build_polyphase(&phi_j, lat, params, l))
                .collect::<Result<Vec<_>>>()?;
            components.push(row);
        }
        Ok(Self { m, components })
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn component(&self, j: usize, l: usize) -> &ComplexSequence2D<T> {
        &self.components[j][l]
    }

    /// `B(ξ)` with entry `(j, l) = (L φ_l^j)(ξ)`.
    pub fn matrix_at(&self, params: &SymplecticParams<T>, xi: Vec2<T>) -> SquareMatrix<T> {
        SquareMatrix::from_fn(self.m, |j, l| params.dt_nslct(&self.components[j][l], xi))
    }

    /// `B(Bω)` for `ω` on the `N×N` grid, row-major in `ω₀`.
    pub fn matrix_field(&self, params: &SymplecticParams<T>, n: usize) -> Vec<SquareMatrix<T>> {
        let grids: Vec<Vec<SpectrumGrid<T>>> = self
            .components
            .iter()
            .map(|row| row.iter().map(|c| params.dt_nslct_grid(c, n)).collect())
            .collect();
        (0..n * n)
            .into_par_iter()
            .map(|idx| SquareMatrix::from_fn(self.m, |j, l| grids[j][l].values()[idx]))
            .collect()
    }
}

/// `B(ξ)` built from scratch; see [`PolyphaseSystem::matrix_at`].
pub fn build_b_matrix<T: Real>(
    gen: &Generator<T>,
    a: &GridFunction2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    xi: Vec2<T>,
) -> Result<SquareMatrix<T>> {
    Ok(PolyphaseSystem::new(gen, a, lat, params)?.matrix_at(params, xi))
}

/// `v_j = Σ_l s_l ⋆_d φ_l^j`, the measurements computed from the polyphase
/// side of the sampling identity.
pub fn measurements_from_polyphase<T: Real>(
    s: &ComplexSequence2D<T>,
    system: &PolyphaseSystem<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
) -> Vec<ComplexSequence2D<T>> {
    let parts = split_cosets(s, lat, params);
    (0..system.dim())
        .map(|j| {
            let terms: Vec<ComplexSequence2D<T>> = parts
                .iter()
                .enumerate()
                .map(|(l, sl)| conv_d(sl, system.component(j, l), params))
                .collect();
            let support = terms
                .iter()
                .skip(1)
                .fold(terms[0].support(), |b, t| b.union(&t.support()));
            ComplexSequence2D::from_fn(support, |r| {
                terms.iter().fold(Complex::zero(), |acc, t| acc + t.get(r))
            })
        })
        .collect()
}

/// Recovers the coefficients `s` on `support` and resynthesizes `f`.
pub fn reconstruct_si<T: Real>(
    meas: &SIMeasurementSet<T>,
    gen: &Generator<T>,
    a: &GridFunction2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
    support: IndexBox,
) -> Result<(ComplexSequence2D<T>, GridFunction2D<T>)> {
    reconstruct_si_with(
        meas,
        gen,
        a,
        lat,
        params,
        n,
        support,
        T::lit(DEFAULT_MIN_DET),
    )
}

/// [`reconstruct_si`] with an explicit stability threshold.
#[allow(clippy::too_many_arguments)]
pub fn reconstruct_si_with<T: Real>(
    meas: &SIMeasurementSet<T>,
    gen: &Generator<T>,
    a: &GridFunction2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
    support: IndexBox,
    min_det: T,
) -> Result<(ComplexSequence2D<T>, GridFunction2D<T>)> {
    let m = lat.rate();
    if meas.v.len() != m {
        return Err(Error::MeasurementCount {
            expected: m,
            got: meas.v.len(),
        });
    }
    for (what, ok) in [
        ("lattice", meas.lattice_id == lat.fingerprint()),
        (
            "transform parameters",
            meas.params_id == params.fingerprint(),
        ),
        ("generator", meas.generator_id == gen.fingerprint()),
        ("evolution kernel", meas.kernel_id == a.fingerprint()),
    ] {
        if !ok {
            return Err(Error::ProvenanceMismatch { what });
        }
    }
    if n == 0 {
        return Err(Error::InvalidGrid { n, min: 1 });
    }
    let part_boxes: Vec<IndexBox> = lat
        .eta()
        .iter()
        .map(|&eta| coset_support(lat, support, eta))
        .collect();
    for b in &part_boxes {
        if b.extent[0] > n || b.extent[1] > n {
            return Err(Error::SupportTooLarge {
                extent: b.extent,
                n,
            });
        }
    }

    let system = PolyphaseSystem::new(gen, a, lat, params)?;
    let field = system.matrix_field(params, n);
    let dets: Vec<T> = field.par_iter().map(|b| b.det().norm()).collect();
    let (worst, at) =
        dets.iter().enumerate().fold(
            (T::infinity(), 0),
            |best, (i, &d)| if d < best.0 { (d, i) } else { best },
        );
    if worst.is_nan() || worst <= min_det {
        let xi = params.b_omega(grid_omega(at / n, at % n, n));
        return Err(Error::UnstableSystem {
            min_det: worst.to_f64_lossy(),
            argmin: [xi[0].to_f64_lossy(), xi[1].to_f64_lossy()],
        });
    }

    let spectra: Vec<SpectrumGrid<T>> = meas.v.iter().map(|v| params.dt_nslct_grid(v, n)).collect();
    let solved: Vec<Vec<Complex<T>>> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let xi = params.b_omega(grid_omega(idx / n, idx % n, n));
            let eta = params.chirp_eta(xi);
            let rhs: Vec<Complex<T>> = spectra.iter().map(|g| g.values()[idx] * eta).collect();
            field[idx]
                .solve(&rhs)
                .unwrap_or_else(|| vec![Complex::zero(); m])
        })
        .collect();

    let parts = (0..m)
        .map(|l| {
            let values = solved.iter().map(|x| x[l]).collect();
            params
                .inverse_dt_nslct_grid(&SpectrumGrid::from_values(params, n, values), part_boxes[l])
        })
        .collect::<Result<Vec<_>>>()?;
    let s = interleave_cosets(&parts, lat, params)?.restrict(support);
    let f = synthesize(&s, gen, params)?;
    Ok((s, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat2;

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

    fn gaussian(w: f64, half: f64) -> GridFunction2D<f64> {
        GridFunction2D::node_centered(-half, half, 0.05, |t| {
            C::new((-0.5 * w * (t[0] * t[0] + t[1] * t[1])).exp(), 0.0)
        })
    }

    fn kernel() -> GridFunction2D<f64> {
        GridFunction2D::node_centered(-1.0, 1.0, 0.05, |t| {
            let d = [t[0] - 0.5, t[1] - 0.25];
            C::new((-4.0 * (d[0] * d[0] + d[1] * d[1])).exp(), 0.0)
        })
    }

    fn coeffs() -> ComplexSequence2D<f64> {
        ComplexSequence2D::from_fn(IndexBox::new([0, 0], [4, 4]), |k| {
            C::new(
                (k[0] as f64 * 1.1 - k[1] as f64).sin(),
                (k[1] as f64 * 0.4).cos(),
            )
        })
    }

    #[test]
    fn tent_amalgam_norms() {
        let tent = GridFunction2D::node_centered(0.0, 2.0, 0.25, |t: [f64; 2]| {
            C::new(
                (1.0f64 - (t[0] - 1.0).abs())
                    .min(1.0 - (t[1] - 1.0).abs())
                    .max(0.0),
                0.0,
            )
        });
        assert!((wiener_amalgam_norm(&tent, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        let zero = GridFunction2D::<f64>::zeros([0.0, 0.0], 0.5, [4, 4]);
        assert_eq!(wiener_amalgam_norm(&zero, 2.0).unwrap(), 0.0);
        assert!(matches!(
            wiener_amalgam_norm(&tent, 0.5),
            Err(Error::InvalidExponent(_))
        ));
    }

    #[test]
    fn generator_checks_grid() {
        let off = GridFunction2D::new([0.01, 0.0], 0.05, [3, 3], vec![C::new(1.0, 0.0); 9]);
        assert!(matches!(
            Generator::new(off),
            Err(Error::GridMismatch { .. })
        ));
        let coarse = GridFunction2D::new([0.0, 0.0], 0.3, [3, 3], vec![C::new(1.0, 0.0); 9]);
        assert!(matches!(
            Generator::new(coarse),
            Err(Error::IncommensurateGrid { .. })
        ));
    }

    #[test]
    fn split_then_interleave_is_identity() {
        let p = params();
        let s = coeffs();
        for m in [[2, 0, 0, 2], [1, 1, 1, 3], [2, 1, -1, 3]] {
            let lat = DilationLattice::from_row_major(m).unwrap();
            let parts = split_cosets(&s, &lat, &p);
            let back = interleave_cosets(&parts, &lat, &p)
                .unwrap()
                .restrict(s.support());
            assert!(back.max_abs_diff(&s) < 1e-14);
        }
    }

    #[test]
    fn polyphase_identity_and_round_trip() {
        let p = params();
        let lat = DilationLattice::from_row_major([2, 0, 0, 2]).unwrap();
        let gen = Generator::new(gaussian(6.0, 2.0)).unwrap();
        let a = kernel();
        let s = coeffs();
        let meas = si_acquire(&s, &gen, &a, &lat, &p).unwrap();
        let sys = PolyphaseSystem::new(&gen, &a, &lat, &p).unwrap();
        for (direct, poly) in meas
            .v
            .iter()
            .zip(measurements_from_polyphase(&s, &sys, &lat, &p))
        {
            let b = direct.support().union(&poly.support());
            assert!(direct.restrict(b).max_abs_diff(&poly.restrict(b)) < 1e-10);
        }
        let (rec, f) = reconstruct_si(&meas, &gen, &a, &lat, &p, 32, s.support()).unwrap();
        assert!(rec.relative_l2_error(&s) < 1e-8);
        let f0 = synthesize(&s, &gen, &p).unwrap();
        assert!(f.max_abs_diff(&f0).unwrap() < 1e-8);
    }

    #[test]
    fn identity_lattice_samples_are_plain() {
        let p = params();
        let lat = DilationLattice::from_row_major([1, 0, 0, 1]).unwrap();
        let gen = Generator::new(gaussian(1.0, 2.0)).unwrap();
        let s = coeffs();
        let meas = si_acquire(&s, &gen, &kernel(), &lat, &p).unwrap();
        assert_eq!(meas.v.len(), 1);
        let f = synthesize(&s, &gen, &p).unwrap();
        for (k, v) in meas.v[0].iter() {
            let t = [k[0] as f64, k[1] as f64];
            assert!((v - f.value_at(t).unwrap()).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_generator_is_unstable() {
        let p = params();
        let lat = DilationLattice::from_row_major([2, 0, 0, 2]).unwrap();
        let gen = Generator::new(gaussian(1.0, 1.0).scale(C::new(0.0, 0.0))).unwrap();
        let a = kernel();
        let s = coeffs();
        let meas = si_acquire(&s, &gen, &a, &lat, &p).unwrap();
        assert!(meas.v.iter().all(|v| v.is_zero()));
        assert!(matches!(
            reconstruct_si(&meas, &gen, &a, &lat, &p, 16, s.support()),
            Err(Error::UnstableSystem { .. })
        ));
    }

    #[test]
    fn grammian_grows_with_truncation() {
        let p = params();
        let gen = Generator::new(gaussian(6.0, 2.0)).unwrap();
        let xi = [0.3, 0.8];
        let mut last = 0.0;
        for k in 0..4 {
            let g = grammian(&p, &gen, xi, k);
            assert!(g >= last);
            last = g;
        }
        let (lo, hi) = riesz_bounds(&p, &gen, 4, 2).unwrap();
        assert!(0.0 < lo && lo <= hi);
        assert!(matches!(
            riesz_bounds(&p, &gen, 3, 2),
            Err(Error::InvalidGrid { .. })
        ));
    }
}

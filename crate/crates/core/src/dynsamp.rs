//! Dynamical sampling in the sequence space.
//!
//! An initial state `c` evolves as `c, a ⋆_d c, a² ⋆_d c, …`; each state is
//! subsampled on `Mᵀℤ²`. With `m = |det M|` time levels the samples
//! determine `c` exactly when the per-frequency system matrix `A_M(ξ)` is
//! invertible on the whole torus.
//!
//! Reconstruction runs on the uniform `N×N` grid of `ξ ∈ 𝕋²`:
//!
//! 1. `Y_j(ξ) = m/√det(iB) · Σ_k y_j(k)·λ(Mᵀk)·e^{−2iπkᵀξ}`
//! 2. solve `A_M(ξ)·C(ξ) = Y(ξ)`; `C_k(ξ) = (L c)(BM⁻¹(ξ + γ_k))`
//! 3. reassemble `(L c)(Bω)` on the `ω` grid: split `Mω = ξ' + γ_k + Mn`,
//!    read `C_k(ξ')`, which sits at `B(ω − n)`, and carry it to `Bω` with
//!    the phase-transport factor
//! 4. invert the grid transform on the caller's support box

use num_complex::Complex;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::convolution::{conv_d, evolution_powers};
use crate::dft::dtft_grid;
use crate::error::{Error, Result};
use crate::lattice::DilationLattice;
use crate::lct::{grid_omega, int_point, SpectrumGrid, SymplecticParams};
use crate::linalg::SquareMatrix;
use crate::matrix::{Mat2, Vec2};
use crate::scalar::Real;
use crate::sequence::{ComplexSequence2D, IndexBox};

/// Default lower bound on `min |det A_M(ξ)|` below which reconstruction
/// refuses to solve.
pub const DEFAULT_MIN_DET: f64 = 1e-8;

/// Subsampled states `y_0(k) = c(Mᵀk)`, `y_j(k) = (aʲ ⋆_d c)(Mᵀk)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet<T> {
    pub y: Vec<ComplexSequence2D<T>>,
    pub lattice_id: u64,
    pub params_id: u64,
    pub kernel_id: u64,
}

/// Takes the `m = |det M|` dynamical samples of `c`.
pub fn acquire<T: Real>(
    c: &ComplexSequence2D<T>,
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
) -> MeasurementSet<T> {
    let m = lat.rate();
    let mut y = Vec::with_capacity(m);
    y.push(lat.subsample(c));
    for aj in evolution_powers(a, m.saturating_sub(1), params) {
        y.push(lat.subsample(&conv_d(&aj, c, params)));
    }
    MeasurementSet {
        y,
        lattice_id: lat.fingerprint(),
        params_id: params.fingerprint(),
        kernel_id: a.fingerprint(),
    }
}

/// `BM⁻¹`, mapping torus frequencies to the aliased transform frequencies.
fn alias_map<T: Real>(lat: &DilationLattice, params: &SymplecticParams<T>) -> Mat2<T> {
    *params.b() * lat.m_inv_real()
}

/// `ξ_k = BM⁻¹(ξ + γ_k)` for every coset representative.
fn alias_points<T: Real>(bm_inv: &Mat2<T>, lat: &DilationLattice, xi: Vec2<T>) -> Vec<Vec2<T>> {
    lat.gamma()
        .iter()
        .map(|&g| {
            let gr: Vec2<T> = int_point(g);
            bm_inv.apply([xi[0] + gr[0], xi[1] + gr[1]])
        })
        .collect()
}

/// Both sides of the Poisson summation formula at `ξ`:
/// `lhs = m/√det(iB)·F[S_M(cλ)](ξ)` and
/// `rhs = Σ_k η̄(ξ_k)·(L c)(ξ_k)` with `ξ_k = BM⁻¹(ξ + γ_k)`.
pub fn poisson_check<T: Real>(
    c: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    xi: Vec2<T>,
) -> (Complex<T>, Complex<T>) {
    let chirped = c.modulate(|k| params.chirp_lambda_at(k));
    let sub = lat.subsample(&chirped);
    let m = T::from_usize(lat.rate()).unwrap();
    let lhs = dtft(&sub, xi) * m / params.sqrt_det_ib();
    let bm_inv = alias_map(lat, params);
    let rhs = alias_points(&bm_inv, lat, xi)
        .into_iter()
        .fold(Complex::zero(), |acc, p| {
            acc + params.chirp_eta(p).conj() * params.dt_nslct(c, p)
        });
    (lhs, rhs)
}

/// `Σ_k w(k)·e^{−2iπkᵀξ}`
pub fn dtft<T: Real>(w: &ComplexSequence2D<T>, xi: Vec2<T>) -> Complex<T> {
    let m2 = -T::lit(2.0);
    w.iter().fold(Complex::zero(), |acc, (k, v)| {
        let kr: Vec2<T> = int_point(k);
        acc + v * crate::scalar::cis_pi(m2 * (kr[0] * xi[0] + kr[1] * xi[1]))
    })
}

/// `A_M(ξ)` with entry `(j, k) = η̄(ξ_k)^{j+1}·(L a)(ξ_k)^j`.
pub fn build_system_matrix<T: Real>(
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    xi: Vec2<T>,
) -> SquareMatrix<T> {
    system_matrix_at(a, lat, params, &alias_map(lat, params), xi)
}

fn system_matrix_at<T: Real>(
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    bm_inv: &Mat2<T>,
    xi: Vec2<T>,
) -> SquareMatrix<T> {
    let m = lat.rate();
    let mut mat = SquareMatrix::zeros(m);
    for (k, p) in alias_points(bm_inv, lat, xi).into_iter().enumerate() {
        let eta_bar = params.chirp_eta(p).conj();
        let la = if m > 1 {
            params.dt_nslct(a, p)
        } else {
            Complex::zero()
        };
        let mut entry = eta_bar;
        for j in 0..m {
            mat.set(j, k, entry);
            entry = entry * eta_bar * la;
        }
    }
    mat
}

/// `A_M(ξ)` sampled at `ξ = (n₀/N, n₁/N)`, row-major in `n₀`.
#[derive(Debug, Clone)]
pub struct SystemMatrixField<T> {
    pub n: usize,
    pub entries: Vec<SquareMatrix<T>>,
    pub det_magnitudes: Vec<T>,
}

impl<T: Real> SystemMatrixField<T> {
    pub fn xi(&self, idx: usize) -> Vec2<T> {
        grid_omega(idx / self.n, idx % self.n, self.n)
    }

    /// 1-norm condition number of the matrix at flat index `idx`.
    pub fn cond(&self, idx: usize) -> T {
        self.entries[idx].cond1()
    }

    /// `(min |det|, flat index)`; the first minimiser wins ties.
    pub fn min_det(&self) -> (T, usize) {
        self.det_magnitudes
            .iter()
            .enumerate()
            .fold(
                (T::infinity(), 0),
                |best, (i, &d)| if d < best.0 { (d, i) } else { best },
            )
    }
}

/// Builds `A_M(ξ)` and `|det A_M(ξ)|` on the `N×N` grid of `𝕋²`.
pub fn system_matrix_field<T: Real>(
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
) -> SystemMatrixField<T> {
    assert!(n >= 1, "grid size must be positive");
    let bm_inv = alias_map(lat, params);
    let entries: Vec<SquareMatrix<T>> = (0..n * n)
        .into_par_iter()
        .map(|idx| system_matrix_at(a, lat, params, &bm_inv, grid_omega(idx / n, idx % n, n)))
        .collect();
    let det_magnitudes = entries.par_iter().map(|m| m.det().norm()).collect();
    SystemMatrixField {
        n,
        entries,
        det_magnitudes,
    }
}

/// Result of scanning `|det A_M(ξ)|` over the torus grid.
#[derive(Debug, Clone)]
pub struct StabilityScan<T> {
    pub min_det: T,
    pub argmin_xi: Vec2<T>,
    pub field: SystemMatrixField<T>,
}

impl<T: Real> StabilityScan<T> {
    /// Grid proxy for the essential-infimum condition: `min |det| > alpha`.
    /// A positive grid minimum does not rule out zeros between grid points.
    pub fn is_recoverable(&self, alpha: T) -> bool {
        self.min_det > alpha
    }

    /// Largest 1-norm condition number over the grid.
    pub fn max_cond(&self) -> T {
        (0..self.field.entries.len())
            .into_par_iter()
            .map(|i| self.field.cond(i))
            .reduce(T::zero, T::max)
    }
}

/// Scans `|det A_M(ξ)|` on the `N×N` torus grid (`N ≥ 4`).
pub fn stability_scan<T: Real>(
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
) -> Result<StabilityScan<T>> {
    if n < 4 {
        return Err(Error::InvalidGrid { n, min: 4 });
    }
    let field = system_matrix_field(a, lat, params, n);
    let (min_det, idx) = field.min_det();
    Ok(StabilityScan {
        min_det,
        argmin_xi: field.xi(idx),
        field,
    })
}

/// `Y_j(ξ)` for every measurement on the `N×N` torus grid.
pub fn measurement_spectra<T: Real>(
    meas: &MeasurementSet<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
) -> Vec<Vec<Complex<T>>> {
    let mt = lat.matrix().transpose();
    let scale = Complex::from(T::from_usize(lat.rate()).unwrap()) / params.sqrt_det_ib();
    meas.y
        .par_iter()
        .map(|y| {
            let w = y.modulate(|k| params.chirp_lambda_at(mt.apply(k)));
            dtft_grid(&w, n).into_iter().map(|v| v * scale).collect()
        })
        .collect()
}

/// Recovers `c` on `support` from its dynamical samples, refusing when
/// `min |det A_M| ≤ DEFAULT_MIN_DET` on the grid.
pub fn reconstruct<T: Real>(
    meas: &MeasurementSet<T>,
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
    support: IndexBox,
) -> Result<ComplexSequence2D<T>> {
    reconstruct_with(meas, a, lat, params, n, support, T::lit(DEFAULT_MIN_DET))
}

/// [`reconstruct`] with an explicit stability threshold.
pub fn reconstruct_with<T: Real>(
    meas: &MeasurementSet<T>,
    a: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
    support: IndexBox,
    min_det: T,
) -> Result<ComplexSequence2D<T>> {
    let m = lat.rate();
    if meas.y.len() != m {
        return Err(Error::MeasurementCount {
            expected: m,
            got: meas.y.len(),
        });
    }
    for (what, ok) in [
        ("lattice", meas.lattice_id == lat.fingerprint()),
        (
            "transform parameters",
            meas.params_id == params.fingerprint(),
        ),
        ("evolution kernel", meas.kernel_id == a.fingerprint()),
    ] {
        if !ok {
            return Err(Error::ProvenanceMismatch { what });
        }
    }
    if support.extent[0] > n || support.extent[1] > n {
        return Err(Error::SupportTooLarge {
            extent: support.extent,
            n,
        });
    }
    // the scan grid never drops below 4x4, even for tiny supports
    let scan = stability_scan(a, lat, params, n.max(4))?;
    if !scan.is_recoverable(min_det) {
        return Err(Error::UnstableSystem {
            min_det: scan.min_det.to_f64_lossy(),
            argmin: [
                scan.argmin_xi[0].to_f64_lossy(),
                scan.argmin_xi[1].to_f64_lossy(),
            ],
        });
    }
    let field = if n == scan.field.n {
        scan.field
    } else {
        system_matrix_field(a, lat, params, n)
    };
    let spectra = measurement_spectra(meas, lat, params, n);

    // C_k(ξ) on the grid, stored as coeffs[idx][k]
    let coeffs: Vec<Vec<Complex<T>>> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let rhs: Vec<Complex<T>> = spectra.iter().map(|y| y[idx]).collect();
            field.entries[idx]
                .solve(&rhs)
                .unwrap_or_else(|| vec![Complex::zero(); m])
        })
        .collect();
    if coeffs
        .iter()
        .flatten()
        .any(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        let (d, i) = field.min_det();
        return Err(Error::UnstableSystem {
            min_det: d.to_f64_lossy(),
            argmin: [field.xi(i)[0].to_f64_lossy(), field.xi(i)[1].to_f64_lossy()],
        });
    }

    let spectrum = assemble_spectrum(&coeffs, lat, params, n);
    params.inverse_dt_nslct_grid(&spectrum, support)
}

/// Places `C_k(ξ')` onto the `Bω` grid; see the module docs, step 3.
fn assemble_spectrum<T: Real>(
    coeffs: &[Vec<Complex<T>>],
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    n: usize,
) -> SpectrumGrid<T> {
    let ni = n as i64;
    let values = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let q = lat.matrix().apply([(idx / n) as i64, (idx % n) as i64]);
            let p = [
                Integer::div_floor(&q[0], &ni),
                Integer::div_floor(&q[1], &ni),
            ];
            let r = [q[0] - p[0] * ni, q[1] - p[1] * ni];
            let (k, shift) = lat.coset_decompose(p);
            let value = coeffs[(r[0] * ni + r[1]) as usize][k];
            if shift == [0, 0] {
                return value;
            }
            let omega: Vec2<T> = grid_omega(idx / n, idx % n, n);
            let sr: Vec2<T> = int_point(shift);
            let base = params.b_omega([omega[0] - sr[0], omega[1] - sr[1]]);
            value * params.phase_transport(base, shift)
        })
        .collect();
    SpectrumGrid::from_values(params, n, values)
}

/// `C(ξ)` computed directly from `c`: `C_k(ξ) = (L c)(BM⁻¹(ξ + γ_k))`.
pub fn coefficient_vector<T: Real>(
    c: &ComplexSequence2D<T>,
    lat: &DilationLattice,
    params: &SymplecticParams<T>,
    xi: Vec2<T>,
) -> Vec<Complex<T>> {
    let bm_inv = alias_map(lat, params);
    alias_points(&bm_inv, lat, xi)
        .into_iter()
        .map(|p| params.dt_nslct(c, p))
        .collect()
}

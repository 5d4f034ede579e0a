//! Validated transform parameters, chirp factors, and the discrete-time and
//! continuous forward transforms.
//!
//! For parameters `(A, B, C, D)` and a finitely supported sequence `s`,
//!
//! ```text
//! (L s)(ξ) = 1/√det(iB) · Σ_k s(k)·exp(iπ kᵀB⁻¹Ak − 2iπ kᵀB⁻¹ξ + iπ ξᵀDB⁻¹ξ)
//! ```
//!
//! Spectra are sampled on `ξ = Bω` with `ω` on the uniform `N×N` grid of the
//! unit torus. On that grid the chirped sum is an ordinary DFT, and
//! `|L s|` is exactly periodic.

use std::hash::{Hash, Hasher};

use num_complex::Complex;
use num_traits::Zero;

use crate::dft;
use crate::error::{Error, Result, SymplecticIdentity};
use crate::grid::GridFunction2D;
use crate::matrix::{Mat2, Vec2};
use crate::scalar::{cis, cis_pi, Real};
use crate::sequence::{ComplexSequence2D, IndexBox};

/// Entrywise residuals of the three symplectic identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticResiduals<T> {
    pub ab: T,
    pub cd: T,
    pub unit: T,
}

impl<T: Real> SymplecticResiduals<T> {
    pub fn max(&self) -> T {
        self.ab.max(self.cd).max(self.unit)
    }
}

/// Parameter matrices `(A, B, C, D)` that passed the symplectic check, with
/// the derived matrices every transform needs.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticParams<T> {
    a: Mat2<T>,
    b: Mat2<T>,
    c: Mat2<T>,
    d: Mat2<T>,
    b_inv: Mat2<T>,
    b_inv_a: Mat2<T>,
    d_b_inv: Mat2<T>,
    det_b: T,
    sqrt_det_ib: Complex<T>,
    tol: T,
}

fn residuals<T: Real>(
    a: &Mat2<T>,
    b: &Mat2<T>,
    c: &Mat2<T>,
    d: &Mat2<T>,
) -> SymplecticResiduals<T> {
    SymplecticResiduals {
        ab: (*a * b.transpose() - *b * a.transpose()).max_abs(),
        cd: (*c * d.transpose() - *d * c.transpose()).max_abs(),
        unit: (*a * d.transpose() - *b * c.transpose() - Mat2::identity()).max_abs(),
    }
}

impl<T: Real> SymplecticParams<T> {
    /// Validates `(A, B, C, D)`: `B` must be non-singular and
    /// `ABᵀ = BAᵀ`, `CDᵀ = DCᵀ`, `ADᵀ − BCᵀ = I` must hold entrywise within `tol`.
    ///
    /// `√det(iB)` is the principal square root of `−det B`.
    pub fn new(a: Mat2<T>, b: Mat2<T>, c: Mat2<T>, d: Mat2<T>, tol: T) -> Result<Self> {
        if !(tol > T::zero() && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol.to_f64_lossy()));
        }
        let det_b = b.det();
        if det_b.abs() <= tol || !det_b.is_finite() {
            return Err(Error::SingularB {
                det_abs: det_b.abs().to_f64_lossy(),
            });
        }
        let r = residuals(&a, &b, &c, &d);
        for (identity, residual) in [
            (SymplecticIdentity::AbSymmetric, r.ab),
            (SymplecticIdentity::CdSymmetric, r.cd),
            (SymplecticIdentity::UnitDeterminant, r.unit),
        ] {
            if residual.is_nan() || residual > tol {
                return Err(Error::SymplecticViolation {
                    identity,
                    residual: residual.to_f64_lossy(),
                });
            }
        }
        let b_inv = b.inverse().ok_or(Error::SingularB { det_abs: 0.0 })?;
        Ok(Self {
            a,
            b,
            c,
            d,
            b_inv,
            b_inv_a: b_inv * a,
            d_b_inv: d * b_inv,
            det_b,
            sqrt_det_ib: Complex::new(-det_b, T::zero()).sqrt(),
            tol,
        })
    }

    /// Recomputes the symplectic residuals from the stored matrices.
    pub fn residuals(&self) -> SymplecticResiduals<T> {
        residuals(&self.a, &self.b, &self.c, &self.d)
    }

    pub fn a(&self) -> &Mat2<T> {
        &self.a
    }

    pub fn b(&self) -> &Mat2<T> {
        &self.b
    }

    pub fn c(&self) -> &Mat2<T> {
        &self.c
    }

    pub fn d(&self) -> &Mat2<T> {
        &self.d
    }

    pub fn b_inv(&self) -> &Mat2<T> {
        &self.b_inv
    }

    pub fn b_inv_a(&self) -> &Mat2<T> {
        &self.b_inv_a
    }

    pub fn d_b_inv(&self) -> &Mat2<T> {
        &self.d_b_inv
    }

    pub fn det_b(&self) -> T {
        self.det_b
    }

    pub fn sqrt_det_ib(&self) -> Complex<T> {
        self.sqrt_det_ib
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    /// Hash of the four parameter matrices; ties spectra to the parameters
    /// that produced them.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        for m in [&self.a, &self.b, &self.c, &self.d] {
            for x in m.rows.iter().flatten() {
                x.to_f64_lossy().to_bits().hash(&mut h);
            }
        }
        h.finish()
    }

    /// `λ(t) = e^{iπ tᵀB⁻¹At}`
    #[inline]
    pub fn chirp_lambda(&self, t: Vec2<T>) -> Complex<T> {
        cis_pi(self.b_inv_a.quadratic(t))
    }

    /// [`chirp_lambda`](Self::chirp_lambda) at an integer point.
    #[inline]
    pub fn chirp_lambda_at(&self, k: [i64; 2]) -> Complex<T> {
        self.chirp_lambda(int_point(k))
    }

    /// `η(ξ) = e^{iπ ξᵀDB⁻¹ξ}`
    #[inline]
    pub fn chirp_eta(&self, xi: Vec2<T>) -> Complex<T> {
        cis_pi(self.d_b_inv.quadratic(xi))
    }

    /// `Bω`, the physical frequency of torus point `ω`.
    #[inline]
    pub fn b_omega(&self, omega: Vec2<T>) -> Vec2<T> {
        self.b.apply(omega)
    }

    /// Unit-modulus factor `P(ξ, l)` with `(L s)(ξ + Bl) = (L s)(ξ)·P(ξ, l)`
    /// for every finitely supported `s`.
    pub fn phase_transport(&self, xi: Vec2<T>, l: [i64; 2]) -> Complex<T> {
        let bl = self.b.apply(int_point(l));
        let lr = int_point(l);
        let exponent =
            self.d_b_inv.bilinear(bl, xi) + self.d.bilinear(xi, lr) + self.d.bilinear(bl, lr);
        cis_pi(exponent)
    }

    /// Discrete-time transform of `s` at `ξ` by direct summation over the
    /// support box.
    pub fn dt_nslct(&self, s: &ComplexSequence2D<T>, xi: Vec2<T>) -> Complex<T> {
        let w = self.b_inv.apply(xi);
        let two = T::lit(2.0);
        let mut acc = Complex::<T>::zero();
        for (k, v) in s.iter() {
            if v.is_zero() {
                continue;
            }
            let kr = int_point(k);
            let phase = self.b_inv_a.quadratic(kr) - two * (kr[0] * w[0] + kr[1] * w[1]);
            acc = acc + v * cis_pi(phase);
        }
        acc * self.chirp_eta(xi) / self.sqrt_det_ib
    }

    /// Samples the transform of `s` at `ξ = Bω` for `ω` on the `N×N` torus
    /// grid: chirp pre-modulation, folded 2D DFT, chirp post-multiplication.
    pub fn dt_nslct_grid(&self, s: &ComplexSequence2D<T>, n: usize) -> SpectrumGrid<T> {
        assert!(n >= 1, "grid size must be positive");
        let w = s.modulate(|k| self.chirp_lambda_at(k));
        let mut values = dft::dtft_grid(&w, n);
        for (idx, v) in values.iter_mut().enumerate() {
            let xi = self.b_omega(grid_omega(idx / n, idx % n, n));
            *v = *v * self.chirp_eta(xi) / self.sqrt_det_ib;
        }
        SpectrumGrid {
            n,
            values,
            params_id: self.fingerprint(),
        }
    }

    /// Recovers the sequence on `support` from its sampled spectrum.
    ///
    /// `√det(iB)·η̄(Bω)·(L s)(Bω)` is the Fourier series of `λ·s`, so an
    /// inverse DFT followed by removing `λ` inverts the grid transform
    /// whenever the support fits in one `N`-period.
    pub fn inverse_dt_nslct_grid(
        &self,
        spectrum: &SpectrumGrid<T>,
        support: IndexBox,
    ) -> Result<ComplexSequence2D<T>> {
        if spectrum.params_id != self.fingerprint() {
            return Err(Error::ParamsMismatch);
        }
        let n = spectrum.n;
        if support.extent[0] > n || support.extent[1] > n {
            return Err(Error::SupportTooLarge {
                extent: support.extent,
                n,
            });
        }
        let g: Vec<Complex<T>> = spectrum
            .values
            .iter()
            .enumerate()
            .map(|(idx, &v)| {
                let xi = self.b_omega(grid_omega(idx / n, idx % n, n));
                v * self.sqrt_det_ib * self.chirp_eta(xi).conj()
            })
            .collect();
        let w = dft::inverse_dtft_grid(&g, n, support);
        Ok(w.modulate(|k| self.chirp_lambda_at(k).conj()))
    }

    /// Midpoint-rule approximation of the continuous transform of the
    /// compactly supported grid function `f` at `ξ`.
    pub fn nslct_quadrature(&self, f: &GridFunction2D<T>, xi: Vec2<T>) -> Complex<T> {
        LctQuadrature::new(self, f).eval(xi)
    }
}

/// Continuous transform of one grid function, with its chirped samples
/// cached so that repeated evaluations cost one separable sum each.
#[derive(Debug, Clone)]
pub struct LctQuadrature<T> {
    b_inv: Mat2<T>,
    d_b_inv: Mat2<T>,
    sqrt_det_ib: Complex<T>,
    axis0: Vec<T>,
    axis1: Vec<T>,
    /// `h²·λ(u)·f(u)`, row-major.
    weighted: Vec<Complex<T>>,
}

impl<T: Real> LctQuadrature<T> {
    pub fn new(params: &SymplecticParams<T>, f: &GridFunction2D<T>) -> Self {
        let [e0, e1] = f.extent();
        let h = f.step();
        let o = f.origin();
        let axis0 = (0..e0)
            .map(|i| o[0] + h * T::from_usize(i).unwrap())
            .collect();
        let axis1 = (0..e1)
            .map(|i| o[1] + h * T::from_usize(i).unwrap())
            .collect();
        let h2 = h * h;
        let weighted = f
            .iter()
            .map(|(t, v)| {
                if v.is_zero() {
                    v
                } else {
                    v * params.chirp_lambda(t) * h2
                }
            })
            .collect();
        Self {
            b_inv: params.b_inv,
            d_b_inv: params.d_b_inv,
            sqrt_det_ib: params.sqrt_det_ib,
            axis0,
            axis1,
            weighted,
        }
    }

    pub fn eval(&self, xi: Vec2<T>) -> Complex<T> {
        let w = self.b_inv.apply(xi);
        let m2pi = -T::lit(2.0) * T::PI();
        let f1: Vec<Complex<T>> = self.axis1.iter().map(|&u| cis(m2pi * u * w[1])).collect();
        let e1 = self.axis1.len();
        let mut acc = Complex::<T>::zero();
        for (i, &u0) in self.axis0.iter().enumerate() {
            let row = &self.weighted[i * e1..(i + 1) * e1];
            let inner = row
                .iter()
                .zip(&f1)
                .fold(Complex::<T>::zero(), |a, (&x, &e)| a + x * e);
            acc = acc + inner * cis(m2pi * u0 * w[0]);
        }
        acc * cis_pi(self.d_b_inv.quadratic(xi)) / self.sqrt_det_ib
    }
}

/// Transform samples at `ξ = Bω`, `ω = (n₀/N, n₁/N)`, stored row-major in `n₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumGrid<T> {
    n: usize,
    values: Vec<Complex<T>>,
    params_id: u64,
}

impl<T: Real> SpectrumGrid<T> {
    /// Wraps externally computed samples; `params` identifies the transform.
    pub fn from_values(params: &SymplecticParams<T>, n: usize, values: Vec<Complex<T>>) -> Self {
        assert!(
            n >= 1 && values.len() == n * n,
            "spectrum must hold N×N samples"
        );
        Self {
            n,
            values,
            params_id: params.fingerprint(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn params_id(&self) -> u64 {
        self.params_id
    }

    #[inline]
    pub fn at(&self, n0: usize, n1: usize) -> Complex<T> {
        self.values[n0 * self.n + n1]
    }

    pub fn omega(&self, n0: usize, n1: usize) -> Vec2<T> {
        grid_omega(n0, n1, self.n)
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// `∫_{B𝕋²} |L s|² dξ` by the rectangle rule on the grid.
    pub fn period_energy(&self, det_b: T) -> T {
        let sum = self.values.iter().fold(T::zero(), |a, v| a + v.norm_sqr());
        sum * det_b.abs() / T::from_usize(self.n * self.n).unwrap()
    }
}

#[inline]
pub(crate) fn int_point<T: Real>(k: [i64; 2]) -> Vec2<T> {
    [T::from_int(k[0]), T::from_int(k[1])]
}

/// `ω = (n₀/N, n₁/N)`
#[inline]
pub fn grid_omega<T: Real>(n0: usize, n1: usize, n: usize) -> Vec2<T> {
    let nf = T::from_usize(n).unwrap();
    [
        T::from_usize(n0).unwrap() / nf,
        T::from_usize(n1).unwrap() / nf,
    ]
}

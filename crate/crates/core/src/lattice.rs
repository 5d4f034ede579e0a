//! Integer dilation lattices: coset representatives of `ℤ²/Mℤ²` and
//! `ℤ²/Mᵀℤ²`, coset decomposition, and subsampling by `Mᵀ`.
//!
//! Membership in the fundamental parallelepiped is decided exactly:
//! `M⁻¹p = adj(M)p / det M`, so floors are integer floor divisions.

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{IMat2, Vec2};
use crate::scalar::{root_of_unity, Real};
use crate::sequence::{ComplexSequence2D, IndexBox};

/// Non-singular integer matrix `M` with `m = |det M|` coset representatives
/// `γ_k` (of `𝒩(M)`) and `η_j` (of `𝒩(Mᵀ)`).
///
/// Both lists start with `[0, 0]`; the remaining representatives follow in
/// lexicographic order. System matrices index rows and columns by this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationLattice {
    m: IMat2,
    det: i64,
    gamma: Vec<[i64; 2]>,
    eta: Vec<[i64; 2]>,
    m_inv: [[Ratio<i64>; 2]; 2],
    mt_inv: [[Ratio<i64>; 2]; 2],
}

impl DilationLattice {
    pub fn new(m: IMat2) -> Result<Self> {
        let det = m.det();
        if det == 0 {
            return Err(Error::SingularM);
        }
        let mt = m.transpose();
        Ok(Self {
            m,
            det,
            gamma: representatives(&m),
            eta: representatives(&mt),
            m_inv: rational_inverse(&m),
            mt_inv: rational_inverse(&mt),
        })
    }

    pub fn from_row_major(v: [i64; 4]) -> Result<Self> {
        Self::new(IMat2::from_row_major(v))
    }

    /// Hash of `M`; identifies the lattice in measurement provenance.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.m.hash(&mut h);
        h.finish()
    }

    pub fn matrix(&self) -> &IMat2 {
        &self.m
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// `m = |det M|`
    pub fn rate(&self) -> usize {
        self.det.unsigned_abs() as usize
    }

    /// Representatives `γ_k` of `𝒩(M)`.
    pub fn gamma(&self) -> &[[i64; 2]] {
        &self.gamma
    }

    /// Representatives `η_j` of `𝒩(Mᵀ)`.
    pub fn eta(&self) -> &[[i64; 2]] {
        &self.eta
    }

    pub fn m_inv(&self) -> &[[Ratio<i64>; 2]; 2] {
        &self.m_inv
    }

    pub fn mt_inv(&self) -> &[[Ratio<i64>; 2]; 2] {
        &self.mt_inv
    }

    /// `M⁻¹` in floating point.
    pub fn m_inv_real<T: Real>(&self) -> crate::matrix::Mat2<T> {
        ratio_to_real(&self.m_inv)
    }

    /// Writes `p = γ_k + M·n` and returns `(k, n)`.
    pub fn coset_decompose(&self, p: [i64; 2]) -> (usize, [i64; 2]) {
        decompose(&self.m, self.det, &self.gamma, p)
    }

    /// Writes `p = η_j + Mᵀ·n` and returns `(j, n)`.
    pub fn transpose_coset_decompose(&self, p: [i64; 2]) -> (usize, [i64; 2]) {
        decompose(&self.m.transpose(), self.det, &self.eta, p)
    }

    /// `Σ_k e^{−2iπ η_jᵀM⁻¹γ_k}`, which equals `m·δ_j`.
    pub fn orthogonality_sum<T: Real>(&self, j: usize) -> Result<Complex<T>> {
        let eta = *self.eta.get(j).ok_or(Error::IndexOutOfRange {
            index: j,
            len: self.eta.len(),
        })?;
        let adj = self.m.adjugate();
        let m = self.rate();
        let sign = self.det.signum();
        Ok(self.gamma.iter().fold(Complex::zero(), |acc, &g| {
            let q = adj.apply(g);
            let num = eta[0] * q[0] + eta[1] * q[1];
            acc + root_of_unity::<T>(-num * sign, m)
        }))
    }

    /// `y(k) = c(Mᵀk)`; the support box is the preimage of `supp(c)` under
    /// `Mᵀ`, rounded outward.
    pub fn subsample<T: Real>(&self, c: &ComplexSequence2D<T>) -> ComplexSequence2D<T> {
        let mt = self.m.transpose();
        let support = self.transpose_preimage(c.support());
        ComplexSequence2D::from_fn(support, |k| c.get(mt.apply(k)))
    }

    /// Zero insertion: `u(Mᵀk) = y(k)`, zero off `Mᵀℤ²`.
    pub fn upsample<T: Real>(&self, y: &ComplexSequence2D<T>) -> ComplexSequence2D<T> {
        let mt = self.m.transpose();
        let b = y.support();
        let last = b.last();
        let corners = [
            b.origin,
            [b.origin[0], last[1]],
            [last[0], b.origin[1]],
            last,
        ]
        .map(|k| mt.apply(k));
        let lo = [0, 1].map(|i| corners.iter().map(|c| c[i]).min().unwrap());
        let hi = [0, 1].map(|i| corners.iter().map(|c| c[i]).max().unwrap());
        let mut u = ComplexSequence2D::zeros(IndexBox::from_corners(lo, hi));
        for (k, v) in y.iter() {
            u.set(mt.apply(k), v);
        }
        u
    }

    /// Smallest box containing every `k` with `Mᵀk ∈ target`.
    pub fn transpose_preimage(&self, target: IndexBox) -> IndexBox {
        preimage_box(&self.m.transpose(), self.det, target)
    }

    /// Smallest box containing every `k` with `Mk ∈ target`.
    pub fn preimage(&self, target: IndexBox) -> IndexBox {
        preimage_box(&self.m, self.det, target)
    }
}

fn representatives(x: &IMat2) -> Vec<[i64; 2]> {
    let det = x.det();
    let cols = [[x.rows[0][0], x.rows[1][0]], [x.rows[0][1], x.rows[1][1]]];
    let corners = [
        [0, 0],
        cols[0],
        cols[1],
        [cols[0][0] + cols[1][0], cols[0][1] + cols[1][1]],
    ];
    let lo = [0, 1].map(|i| corners.iter().map(|c| c[i]).min().unwrap());
    let hi = [0, 1].map(|i| corners.iter().map(|c| c[i]).max().unwrap());
    let adj = x.adjugate();
    let mut reps = Vec::with_capacity(det.unsigned_abs() as usize);
    for p0 in lo[0]..=hi[0] {
        for p1 in lo[1]..=hi[1] {
            let q = adj.apply([p0, p1]);
            if Integer::div_floor(&q[0], &det) == 0 && Integer::div_floor(&q[1], &det) == 0 {
                reps.push([p0, p1]);
            }
        }
    }
    reps.sort_by_key(|&p| (p != [0, 0], p));
    debug_assert_eq!(reps.len(), det.unsigned_abs() as usize);
    reps
}

fn decompose(x: &IMat2, det: i64, reps: &[[i64; 2]], p: [i64; 2]) -> (usize, [i64; 2]) {
    let q = x.adjugate().apply(p);
    let n = [
        Integer::div_floor(&q[0], &det),
        Integer::div_floor(&q[1], &det),
    ];
    let xn = x.apply(n);
    let r = [p[0] - xn[0], p[1] - xn[1]];
    let k = reps
        .iter()
        .position(|&g| g == r)
        .expect("residual lies in the fundamental parallelepiped");
    (k, n)
}

fn rational_inverse(x: &IMat2) -> [[Ratio<i64>; 2]; 2] {
    let det = x.det();
    let adj = x.adjugate();
    adj.rows.map(|row| row.map(|v| Ratio::new(v, det)))
}

fn ratio_to_real<T: Real>(r: &[[Ratio<i64>; 2]; 2]) -> crate::matrix::Mat2<T> {
    let f = |q: &Ratio<i64>| T::from_int(*q.numer()) / T::from_int(*q.denom());
    crate::matrix::Mat2::new([[f(&r[0][0]), f(&r[0][1])], [f(&r[1][0]), f(&r[1][1])]])
}

fn preimage_box(x: &IMat2, det: i64, target: IndexBox) -> IndexBox {
    let adj = x.adjugate();
    let last = target.last();
    let corners = [
        target.origin,
        [target.origin[0], last[1]],
        [last[0], target.origin[1]],
        last,
    ]
    .map(|p| adj.apply(p));
    let mut lo = [i64::MAX; 2];
    let mut hi = [i64::MIN; 2];
    for c in corners {
        for i in 0..2 {
            // c / det, rounded outward
            let (fl, ce) = floor_ceil_div(c[i], det);
            lo[i] = lo[i].min(fl);
            hi[i] = hi[i].max(ce);
        }
    }
    IndexBox::from_corners(lo, hi)
}

fn floor_ceil_div(a: i64, b: i64) -> (i64, i64) {
    let fl = Integer::div_floor(&a, &b);
    let ce = if fl * b == a { fl } else { fl + 1 };
    (fl, ce)
}

/// Splits `v = ξ + p` with `ξ ∈ [0,1)²` and `p = ⌊v⌋`.
pub fn torus_reduce<T: Real>(v: Vec2<T>) -> (Vec2<T>, [i64; 2]) {
    let mut xi = [T::zero(); 2];
    let mut p = [0i64; 2];
    for i in 0..2 {
        let f = v[i].floor();
        let mut frac = v[i] - f;
        let mut pi = f.to_i64().expect("finite coordinate");
        // v slightly below an integer can round the fraction up to exactly 1
        if frac >= T::one() {
            frac = T::zero();
            pi += 1;
        }
        xi[i] = frac;
        p[i] = pi;
    }
    (xi, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_lattice_cosets() {
        let lat = DilationLattice::from_row_major([1, 1, 1, 3]).unwrap();
        assert_eq!(lat.rate(), 2);
        assert_eq!(lat.gamma(), &[[0, 0], [1, 2]]);
        assert_eq!(lat.eta(), &[[0, 0], [1, 2]]);
        assert_eq!(lat.coset_decompose([0, 0]), (0, [0, 0]));
        assert_eq!(lat.coset_decompose([1, 2]), (1, [0, 0]));
        assert_eq!(lat.coset_decompose([2, 2]), (0, [2, 0]));
    }

    #[test]
    fn axis_aligned_lattices() {
        let lat = DilationLattice::from_row_major([2, 0, 0, 2]).unwrap();
        assert_eq!(lat.gamma(), &[[0, 0], [0, 1], [1, 0], [1, 1]]);
        let id = DilationLattice::from_row_major([1, 0, 0, 1]).unwrap();
        assert_eq!(id.gamma(), &[[0, 0]]);
        assert_eq!(
            DilationLattice::from_row_major([1, 2, 2, 4]),
            Err(Error::SingularM)
        );
    }

    #[test]
    fn negative_determinant_lattice() {
        let lat = DilationLattice::from_row_major([0, 1, 3, 0]).unwrap();
        assert_eq!(lat.det(), -3);
        assert_eq!(lat.rate(), 3);
        assert_eq!(lat.gamma()[0], [0, 0]);
        for p0 in -5..5 {
            for p1 in -5..5 {
                let (k, n) = lat.coset_decompose([p0, p1]);
                let mn = lat.matrix().apply(n);
                assert_eq!(
                    [lat.gamma()[k][0] + mn[0], lat.gamma()[k][1] + mn[1]],
                    [p0, p1]
                );
            }
        }
    }

    #[test]
    fn orthogonality_on_worked_lattice() {
        let lat = DilationLattice::from_row_major([1, 1, 1, 3]).unwrap();
        let s0: Complex<f64> = lat.orthogonality_sum(0).unwrap();
        let s1: Complex<f64> = lat.orthogonality_sum(1).unwrap();
        assert!((s0 - Complex::new(2.0, 0.0)).norm() < 1e-12);
        assert!(s1.norm() < 1e-12);
        assert_eq!(
            lat.orthogonality_sum::<f64>(2),
            Err(Error::IndexOutOfRange { index: 2, len: 2 })
        );
    }

    #[test]
    fn subsample_examples() {
        let lat = DilationLattice::from_row_major([1, 1, 1, 3]).unwrap();
        let d = ComplexSequence2D::<f64>::delta([0, 0]);
        let y = lat.subsample(&d);
        assert_eq!(y.get([0, 0]), Complex::new(1.0, 0.0));
        assert_eq!(y.energy(), 1.0);

        let ones = ComplexSequence2D::<f64>::from_fn(IndexBox::new([0, 0], [4, 4]), |_| {
            Complex::new(1.0, 0.0)
        });
        assert_eq!(lat.subsample(&ones).get([1, 0]), Complex::new(1.0, 0.0));

        let two = DilationLattice::from_row_major([2, 0, 0, 2]).unwrap();
        let c = ComplexSequence2D::<f64>::from_fn(IndexBox::new([0, 0], [4, 4]), |k| {
            Complex::new(k[0] as f64, k[1] as f64)
        });
        let y = two.subsample(&c);
        for k in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            assert_eq!(y.get(k), c.get([2 * k[0], 2 * k[1]]));
        }
    }

    #[test]
    fn torus_reduce_examples() {
        assert_eq!(torus_reduce([0.25f64, 0.75]), ([0.25, 0.75], [0, 0]));
        assert_eq!(torus_reduce([-0.25f64, 1.5]), ([0.75, 0.5], [-1, 1]));
        assert_eq!(torus_reduce([1.0f64, 2.0]), ([0.0, 0.0], [1, 2]));
        let (xi, p) = torus_reduce([-1e-18f64, 0.0]);
        assert!(xi[0] >= 0.0 && xi[0] < 1.0);
        assert_eq!(p, [0, 0]);
    }
}

//! Finitely supported complex sequences on ℤ².

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// Axis-aligned box of integer indices `origin + [0, extent)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexBox {
    pub origin: [i64; 2],
    pub extent: [usize; 2],
}

impl IndexBox {
    /// Panics if an extent is zero.
    pub fn new(origin: [i64; 2], extent: [usize; 2]) -> Self {
        assert!(extent[0] >= 1 && extent[1] >= 1, "box extent must be >= 1");
        Self { origin, extent }
    }

    /// Smallest box containing both inclusive corners.
    pub fn from_corners(lo: [i64; 2], hi: [i64; 2]) -> Self {
        Self::new(
            lo,
            [
                (hi[0] - lo[0] + 1).max(1) as usize,
                (hi[1] - lo[1] + 1).max(1) as usize,
            ],
        )
    }

    /// Inclusive upper corner.
    pub fn last(&self) -> [i64; 2] {
        [
            self.origin[0] + self.extent[0] as i64 - 1,
            self.origin[1] + self.extent[1] as i64 - 1,
        ]
    }

    pub fn len(&self) -> usize {
        self.extent[0] * self.extent[1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, k: [i64; 2]) -> bool {
        self.offset(k).is_some()
    }

    /// Row-major storage offset of `k`, if inside.
    #[inline]
    pub fn offset(&self, k: [i64; 2]) -> Option<usize> {
        let d0 = k[0] - self.origin[0];
        let d1 = k[1] - self.origin[1];
        if d0 < 0 || d1 < 0 || d0 as usize >= self.extent[0] || d1 as usize >= self.extent[1] {
            return None;
        }
        Some(d0 as usize * self.extent[1] + d1 as usize)
    }

    #[inline]
    pub fn index_at(&self, offset: usize) -> [i64; 2] {
        [
            self.origin[0] + (offset / self.extent[1]) as i64,
            self.origin[1] + (offset % self.extent[1]) as i64,
        ]
    }

    /// Indices in storage order (first axis major).
    pub fn indices(&self) -> impl Iterator<Item = [i64; 2]> + '_ {
        (0..self.len()).map(move |o| self.index_at(o))
    }

    /// Smallest box containing both.
    pub fn union(&self, other: &Self) -> Self {
        let (a, b) = (self.last(), other.last());
        Self::from_corners(
            [
                self.origin[0].min(other.origin[0]),
                self.origin[1].min(other.origin[1]),
            ],
            [a[0].max(b[0]), a[1].max(b[1])],
        )
    }

    /// Minkowski sum `self ⊕ other`.
    pub fn minkowski(&self, other: &Self) -> Self {
        Self::new(
            [
                self.origin[0] + other.origin[0],
                self.origin[1] + other.origin[1],
            ],
            [
                self.extent[0] + other.extent[0] - 1,
                self.extent[1] + other.extent[1] - 1,
            ],
        )
    }
}

/// Complex sequence on ℤ² with finite support: a dense array over an
/// [`IndexBox`], zero everywhere else.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSequence2D<T> {
    support: IndexBox,
    values: Vec<Complex<T>>,
}

impl<T: Real> ComplexSequence2D<T> {
    pub fn zeros(support: IndexBox) -> Self {
        Self {
            support,
            values: vec![Complex::zero(); support.len()],
        }
    }

    /// The zero sequence stored on the single index `[0, 0]`.
    pub fn zero() -> Self {
        Self::zeros(IndexBox::new([0, 0], [1, 1]))
    }

    /// Kronecker delta at `k`.
    pub fn delta(k: [i64; 2]) -> Self {
        let mut s = Self::zeros(IndexBox::new(k, [1, 1]));
        s.values[0] = Complex::new(T::one(), T::zero());
        s
    }

    /// Panics if `values.len()` does not match the box.
    pub fn from_values(support: IndexBox, values: Vec<Complex<T>>) -> Self {
        assert_eq!(
            values.len(),
            support.len(),
            "value count does not match support box"
        );
        Self { support, values }
    }

    pub fn from_fn(support: IndexBox, mut f: impl FnMut([i64; 2]) -> Complex<T>) -> Self {
        let values = support.indices().map(&mut f).collect();
        Self { support, values }
    }

    /// Builds a sequence from sparse `(index, value)` entries; the support box
    /// is their bounding box. Repeated indices accumulate.
    pub fn from_entries(entries: &[([i64; 2], Complex<T>)]) -> Self {
        let Some(&(first, _)) = entries.first() else {
            return Self::zero();
        };
        let (mut lo, mut hi) = (first, first);
        for &(k, _) in entries {
            lo = [lo[0].min(k[0]), lo[1].min(k[1])];
            hi = [hi[0].max(k[0]), hi[1].max(k[1])];
        }
        let mut s = Self::zeros(IndexBox::from_corners(lo, hi));
        for &(k, v) in entries {
            let o = s.support.offset(k).expect("entry inside bounding box");
            s.values[o] = s.values[o] + v;
        }
        s
    }

    pub fn support(&self) -> IndexBox {
        self.support
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.values
    }

    /// Value at `k`; exactly zero outside the stored box.
    #[inline]
    pub fn get(&self, k: [i64; 2]) -> Complex<T> {
        self.support
            .offset(k)
            .map_or_else(Complex::zero, |o| self.values[o])
    }

    /// Panics if `k` is outside the stored box.
    pub fn set(&mut self, k: [i64; 2], v: Complex<T>) {
        let o = self.support.offset(k).expect("index outside support box");
        self.values[o] = v;
    }

    /// `(index, value)` pairs in storage order, zeros included.
    pub fn iter(&self) -> impl Iterator<Item = ([i64; 2], Complex<T>)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(o, &v)| (self.support.index_at(o), v))
    }

    /// Copy re-stored on `support`; entries outside it are dropped.
    pub fn restrict(&self, support: IndexBox) -> Self {
        Self::from_fn(support, |k| self.get(k))
    }

    /// `Σ|s(k)|²`
    pub fn energy(&self) -> T {
        self.values
            .iter()
            .fold(T::zero(), |acc, v| acc + v.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.energy().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn scale(&self, alpha: Complex<T>) -> Self {
        Self {
            support: self.support,
            values: self.values.iter().map(|&v| v * alpha).collect(),
        }
    }

    /// `α·self + β·other` on the union of both boxes.
    pub fn linear_combination(&self, alpha: Complex<T>, other: &Self, beta: Complex<T>) -> Self {
        let support = self.support.union(&other.support);
        Self::from_fn(support, |k| self.get(k) * alpha + other.get(k) * beta)
    }

    /// Pointwise product with `w(k)`.
    pub fn modulate(&self, mut w: impl FnMut([i64; 2]) -> Complex<T>) -> Self {
        Self::from_fn(self.support, |k| self.get(k) * w(k))
    }

    /// `‖self − other‖ / ‖other‖` over the union of both boxes; the absolute
    /// distance when `other` is zero.
    pub fn relative_l2_error(&self, other: &Self) -> T {
        let support = self.support.union(&other.support);
        let mut num = T::zero();
        for k in support.indices() {
            num = num + (self.get(k) - other.get(k)).norm_sqr();
        }
        let den = other.energy();
        if den > T::zero() {
            (num / den).sqrt()
        } else {
            num.sqrt()
        }
    }

    /// Largest `|self(k) − other(k)|` over the union of both boxes.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let support = self.support.union(&other.support);
        support.indices().fold(T::zero(), |acc, k| {
            acc.max((self.get(k) - other.get(k)).norm())
        })
    }

    /// Deterministic 64-bit fingerprint of the support and values.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.support.hash(&mut h);
        for v in &self.values {
            v.re.to_f64_lossy().to_bits().hash(&mut h);
            v.im.to_f64_lossy().to_bits().hash(&mut h);
        }
        h.finish()
    }
}

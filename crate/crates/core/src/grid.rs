//! Uniformly sampled functions on ℝ² with compact support.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative slack (in units of the step) when snapping a point to a node.
const NODE_SNAP: f64 = 1e-9;

/// Samples of a compactly supported function at `origin + h·(n₀, n₁)`,
/// `0 ≤ nᵢ < extent[i]`; zero off the box.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction2D<T> {
    origin: [T; 2],
    h: T,
    extent: [usize; 2],
    values: Vec<Complex<T>>,
}

impl<T: Real> GridFunction2D<T> {
    /// Panics on a non-positive step, an empty extent, or a length mismatch.
    pub fn new(origin: [T; 2], h: T, extent: [usize; 2], values: Vec<Complex<T>>) -> Self {
        assert!(h > T::zero() && h.is_finite(), "grid step must be positive");
        assert!(extent[0] >= 1 && extent[1] >= 1, "grid extent must be >= 1");
        assert_eq!(
            values.len(),
            extent[0] * extent[1],
            "value count does not match extent"
        );
        Self {
            origin,
            h,
            extent,
            values,
        }
    }

    pub fn zeros(origin: [T; 2], h: T, extent: [usize; 2]) -> Self {
        Self::new(
            origin,
            h,
            extent,
            vec![Complex::zero(); extent[0] * extent[1]],
        )
    }

    pub fn from_fn(
        origin: [T; 2],
        h: T,
        extent: [usize; 2],
        mut f: impl FnMut([T; 2]) -> Complex<T>,
    ) -> Self {
        let mut values = Vec::with_capacity(extent[0] * extent[1]);
        for n0 in 0..extent[0] {
            for n1 in 0..extent[1] {
                values.push(f([
                    origin[0] + h * T::from_usize(n0).unwrap(),
                    origin[1] + h * T::from_usize(n1).unwrap(),
                ]));
            }
        }
        Self::new(origin, h, extent, values)
    }

    /// Cell-centred samples of `f` restricted to the square `[lo, hi]²`:
    /// nodes at `lo + h/2 + n·h`. The midpoint rule on these nodes integrates
    /// the truncated function with `O(h²)` error.
    pub fn cell_centered(lo: T, hi: T, h: T, f: impl FnMut([T; 2]) -> Complex<T>) -> Self {
        let cells = ((hi - lo) / h).round().to_usize().unwrap_or(0).max(1);
        let start = lo + h / T::lit(2.0);
        Self::from_fn([start, start], h, [cells, cells], f)
    }

    /// Node-centred samples on `[lo, hi]²`, both end points included.
    pub fn node_centered(lo: T, hi: T, h: T, f: impl FnMut([T; 2]) -> Complex<T>) -> Self {
        let n = ((hi - lo) / h).round().to_usize().unwrap_or(0) + 1;
        Self::from_fn([lo, lo], h, [n, n], f)
    }

    pub fn origin(&self) -> [T; 2] {
        self.origin
    }

    pub fn step(&self) -> T {
        self.h
    }

    pub fn extent(&self) -> [usize; 2] {
        self.extent
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn node(&self, n: [usize; 2]) -> [T; 2] {
        [
            self.origin[0] + self.h * T::from_usize(n[0]).unwrap(),
            self.origin[1] + self.h * T::from_usize(n[1]).unwrap(),
        ]
    }

    /// Iterates `(t, value)` in storage order.
    pub fn iter(&self) -> impl Iterator<Item = ([T; 2], Complex<T>)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(o, &v)| (self.node([o / self.extent[1], o % self.extent[1]]), v))
    }

    /// Value at lattice index `n` relative to the origin; zero off the box.
    #[inline]
    pub fn get(&self, n: [i64; 2]) -> Complex<T> {
        if n[0] < 0 || n[1] < 0 {
            return Complex::zero();
        }
        let (n0, n1) = (n[0] as usize, n[1] as usize);
        if n0 >= self.extent[0] || n1 >= self.extent[1] {
            return Complex::zero();
        }
        self.values[n0 * self.extent[1] + n1]
    }

    /// Lattice index of `t` relative to the origin, if `t` is a lattice point
    /// (it may lie outside the stored box).
    pub fn lattice_index(&self, t: [T; 2]) -> Option<[i64; 2]> {
        let snap = T::lit(NODE_SNAP);
        let mut out = [0i64; 2];
        for i in 0..2 {
            let x = (t[i] - self.origin[i]) / self.h;
            let r = x.round();
            if (x - r).abs() > snap * (T::one() + r.abs()) {
                return None;
            }
            out[i] = r.to_i64()?;
        }
        Some(out)
    }

    /// Sample at a lattice point `t`; zero outside the box.
    pub fn value_at(&self, t: [T; 2]) -> Result<Complex<T>> {
        let n = self.lattice_index(t).ok_or(Error::GridMismatch {
            point: [t[0].to_f64_lossy(), t[1].to_f64_lossy()],
        })?;
        Ok(self.get(n))
    }

    /// `q` with `q·h = 1`, when the step divides unity.
    pub fn steps_per_unit(&self) -> Option<usize> {
        let q = (T::one() / self.h).round();
        let ok = q >= T::one() && ((q * self.h) - T::one()).abs() <= T::lit(NODE_SNAP);
        if ok {
            q.to_usize()
        } else {
            None
        }
    }

    /// Riemann-sum approximation of `∫|f|²`.
    pub fn l2_norm_sqr(&self) -> T {
        self.h * self.h * self.values.iter().fold(T::zero(), |a, v| a + v.norm_sqr())
    }

    /// Riemann-sum approximation of `∫f`.
    pub fn integral(&self) -> Complex<T> {
        self.values.iter().fold(Complex::zero(), |a, &v| a + v) * (self.h * self.h)
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |a, v| a.max(v.norm()))
    }

    pub fn scale(&self, alpha: Complex<T>) -> Self {
        Self {
            values: self.values.iter().map(|&v| v * alpha).collect(),
            ..self.clone()
        }
    }

    /// Deterministic 64-bit fingerprint of the lattice and values.
    pub fn fingerprint(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut hs = std::collections::hash_map::DefaultHasher::new();
        for x in [self.origin[0], self.origin[1], self.h] {
            x.to_f64_lossy().to_bits().hash(&mut hs);
        }
        self.extent.hash(&mut hs);
        for v in &self.values {
            v.re.to_f64_lossy().to_bits().hash(&mut hs);
            v.im.to_f64_lossy().to_bits().hash(&mut hs);
        }
        hs.finish()
    }

    /// Box of integer points that are nodes of this grid, if any.
    pub fn integer_box(&self) -> Option<crate::sequence::IndexBox> {
        let q = self.steps_per_unit()?;
        let zero = self.lattice_index([T::zero(); 2])?;
        let mut lo = [0i64; 2];
        let mut hi = [0i64; 2];
        for i in 0..2 {
            // node n is the integer (n − zero)/q
            let first = num_integer::Integer::div_ceil(&(-zero[i]), &(q as i64));
            let last = num_integer::Integer::div_floor(
                &(self.extent[i] as i64 - 1 - zero[i]),
                &(q as i64),
            );
            if first > last {
                return None;
            }
            lo[i] = first;
            hi[i] = last;
        }
        Some(crate::sequence::IndexBox::from_corners(lo, hi))
    }

    /// Samples at the integer points of [`Self::integer_box`].
    pub fn integer_samples(&self) -> Option<crate::sequence::ComplexSequence2D<T>> {
        let b = self.integer_box()?;
        let q = self.steps_per_unit()? as i64;
        let zero = self.lattice_index([T::zero(); 2])?;
        Some(crate::sequence::ComplexSequence2D::from_fn(b, |k| {
            self.get([zero[0] + q * k[0], zero[1] + q * k[1]])
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `sup |self − other|` over both boxes; both must share the step and
    /// lie on a common lattice.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if !same_step(self.h, other.h) {
            return Err(Error::StepMismatch {
                left: self.h.to_f64_lossy(),
                right: other.h.to_f64_lossy(),
            });
        }
        let shift = self
            .lattice_index(other.origin)
            .ok_or(Error::GridMismatch {
                point: [
                    other.origin[0].to_f64_lossy(),
                    other.origin[1].to_f64_lossy(),
                ],
            })?;
        let mut worst = T::zero();
        for o in 0..self.len() {
            let n = [(o / self.extent[1]) as i64, (o % self.extent[1]) as i64];
            let theirs = other.get([n[0] - shift[0], n[1] - shift[1]]);
            worst = worst.max((self.values[o] - theirs).norm());
        }
        for o in 0..other.len() {
            let n = [(o / other.extent[1]) as i64, (o % other.extent[1]) as i64];
            let mine = self.get([n[0] + shift[0], n[1] + shift[1]]);
            worst = worst.max((other.values[o] - mine).norm());
        }
        Ok(worst)
    }
}

pub(crate) fn same_step<T: Real>(a: T, b: T) -> bool {
    (a - b).abs() <= T::lit(1e-12) * a.abs().max(b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn node_layout() {
        let g = GridFunction2D::<f64>::node_centered(-1.0, 1.0, 0.5, |t| C::new(t[0], t[1]));
        assert_eq!(g.extent(), [5, 5]);
        assert_eq!(g.value_at([0.5, -1.0]).unwrap(), C::new(0.5, -1.0));
        assert_eq!(g.value_at([3.0, 0.0]).unwrap(), C::new(0.0, 0.0));
        assert!(g.value_at([0.25, 0.0]).is_err());
        assert_eq!(g.steps_per_unit(), Some(2));
    }

    #[test]
    fn cell_centered_integrates_constant_exactly() {
        let g = GridFunction2D::<f64>::cell_centered(-1.0, 1.0, 0.1, |_| C::new(1.0, 0.0));
        assert_eq!(g.extent(), [20, 20]);
        assert!((g.integral().re - 4.0).abs() < 1e-12);
        assert!((g.node([0, 0])[0] + 0.95).abs() < 1e-15);
    }

    #[test]
    fn incommensurate_step() {
        let g = GridFunction2D::<f64>::zeros([0.0, 0.0], 0.3, [2, 2]);
        assert_eq!(g.steps_per_unit(), None);
    }

    #[test]
    fn diff_on_shifted_lattices() {
        let a = GridFunction2D::<f64>::node_centered(0.0, 1.0, 0.5, |_| C::new(1.0, 0.0));
        let b = GridFunction2D::<f64>::node_centered(0.5, 1.0, 0.5, |_| C::new(1.0, 0.0));
        // a has nodes at 0 that b lacks
        assert_eq!(a.max_abs_diff(&b).unwrap(), 1.0);
        assert_eq!(a.max_abs_diff(&a).unwrap(), 0.0);
    }
}

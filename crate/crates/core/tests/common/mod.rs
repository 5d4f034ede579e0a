#![allow(dead_code)]

use lctds::{Complex64, IndexBox, Mat2, Params, Sequence};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn worked_params() -> Params {
    let b = Mat2::from_row_major([1.0, 1.0, 1.0, 3.0]);
    Params::new(
        Mat2::identity(),
        b,
        Mat2::from_row_major([-0.5, 0.5, 0.5, 0.5]),
        b,
        1e-12,
    )
    .unwrap()
}

pub fn fourier_params() -> Params {
    Params::new(
        Mat2::zero(),
        Mat2::identity(),
        -Mat2::identity(),
        Mat2::zero(),
        1e-12,
    )
    .unwrap()
}

/// Symplectic set with `A = BS` (`S` symmetric), `C = 0`, `D = A⁻ᵀ`.
pub fn sheared_params() -> Params {
    let b = Mat2::from_row_major([2.0, 1.0, 1.0, 1.0]);
    let s = Mat2::from_row_major([0.5, 0.25, 0.25, -0.75]);
    let a = b * s;
    let d = a.inverse().unwrap().transpose();
    Params::new(a, b, Mat2::zero(), d, 1e-10).unwrap()
}

pub fn two_tap_kernel(c1: f64, c2: f64) -> Sequence {
    Sequence::from_entries(&[
        ([-1, -1], Complex64::new(c1, 0.0)),
        ([-1, -2], Complex64::new(c2, 0.0)),
    ])
}

/// `(L a)(ξ)` for the two-tap kernel, expanded by hand.
pub fn two_tap_closed_form(c1: f64, c2: f64, xi: [f64; 2]) -> Complex64 {
    let i = Complex64::i();
    let r2 = 2f64.sqrt();
    let q = xi[0] * xi[0] + xi[1] * xi[1];
    let e = |x: f64| (i * std::f64::consts::PI * x).exp();
    -c1 / (r2 * i) * e(2.0 * xi[0] + q) - c2 / r2 * e(xi[0] + xi[1] + q)
}

pub fn random_complex(rng: &mut TestRng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_sequence(rng: &mut TestRng, support: IndexBox) -> Sequence {
    Sequence::from_fn(support, |_| random_complex(rng))
}

pub fn random_box(rng: &mut TestRng, max_extent: usize) -> IndexBox {
    IndexBox::new(
        [rng.gen_range(-4..4), rng.gen_range(-4..4)],
        [rng.gen_range(1..=max_extent), rng.gen_range(1..=max_extent)],
    )
}

pub fn random_xi(rng: &mut TestRng, r: f64) -> [f64; 2] {
    [rng.gen_range(-r..r), rng.gen_range(-r..r)]
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

//! Linear canonical transforms on ℤ² and dynamical sampling.
//!
//! The transform parameters `(A, B, C, D)` are a real symplectic 4×4 matrix
//! split into 2×2 blocks with `det B ≠ 0`. Everything is generic over the
//! scalar type through [`Real`]; the aliases below fix it to `f64`.

pub mod convolution;
mod dft;
pub mod dynsamp;
pub mod error;
pub mod grid;
pub mod lattice;
pub mod lct;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod sequence;
pub mod shift_invariant;

pub use error::{Error, Result, SymplecticIdentity};
pub use lattice::DilationLattice;
pub use matrix::{IMat2, Mat2, Vec2};
pub use scalar::Real;
pub use sequence::IndexBox;

pub type Complex64 = num_complex::Complex<f64>;
pub type Params = lct::SymplecticParams<f64>;
pub type Sequence = sequence::ComplexSequence2D<f64>;
pub type Grid = grid::GridFunction2D<f64>;
pub type Spectrum = lct::SpectrumGrid<f64>;
pub type Measurements = dynsamp::MeasurementSet<f64>;
pub type SIMeasurements = shift_invariant::SIMeasurementSet<f64>;
pub type Generator = shift_invariant::Generator<f64>;

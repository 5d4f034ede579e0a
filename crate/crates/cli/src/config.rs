use std::path::{Path, PathBuf};

use lctds::grid::GridFunction2D;
use lctds::{Complex64, DilationLattice, Grid, IndexBox, Mat2, Params, Sequence};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::rng::random_sequence;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub params: ParamsConfig,
    pub lattice: LatticeConfig,
    pub kernel: KernelConfig,
    pub signal: SignalConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub thresholds: Thresholds,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift_invariant: Option<ShiftInvariantConfig>,
}

/// Transform blocks as row-major 4-lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub a: [f64; 4],
    pub b: [f64; 4],
    pub c: [f64; 4],
    pub d: [f64; 4],
    #[serde(default = "default_tol")]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub m: [i64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub k: [i64; 2],
    pub v: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelConfig {
    #[serde(default)]
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SignalConfig {
    Random {
        seed: u64,
        origin: [i64; 2],
        extent: [usize; 2],
    },
    Sparse {
        entries: Vec<Entry>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_trunc_k")]
    pub trunc_k: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            n: default_n(),
            trunc_k: default_trunc_k(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default = "default_reconstruction_tol")]
    pub reconstruction_tol: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            alpha: default_alpha(),
            reconstruction_tol: default_reconstruction_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default = "default_out")]
    pub dir: PathBuf,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self { dir: default_out() }
    }
}

/// `amplitude·exp(−decay·|t − center|²/2)` sampled on the node-centred grid
/// over `[−half_width, half_width]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianConfig {
    pub decay: f64,
    #[serde(default)]
    pub center: [f64; 2],
    pub half_width: f64,
    #[serde(default = "default_amplitude")]
    pub amplitude: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftInvariantConfig {
    pub h: f64,
    pub generator: GaussianConfig,
    pub kernel: GaussianConfig,
    #[serde(default = "default_coeff_tol")]
    pub coeff_tol: f64,
}

fn default_tol() -> f64 {
    1e-12
}
fn default_n() -> usize {
    64
}
fn default_trunc_k() -> usize {
    3
}
fn default_alpha() -> f64 {
    1e-8
}
fn default_reconstruction_tol() -> f64 {
    1e-8
}
fn default_coeff_tol() -> f64 {
    1e-6
}
fn default_amplitude() -> f64 {
    1.0
}
fn default_out() -> PathBuf {
    PathBuf::from("lctds-out")
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// The worked example: `A = I`, `B = D = [[1,1],[1,3]]`, `M = B` and the
    /// two-tap kernel `a(−1,−1) = c₁`, `a(−1,−2) = c₂`.
    pub fn worked_example(c1: f64, c2: f64) -> Self {
        Self {
            params: ParamsConfig {
                a: [1.0, 0.0, 0.0, 1.0],
                b: [1.0, 1.0, 1.0, 3.0],
                c: [-0.5, 0.5, 0.5, 0.5],
                d: [1.0, 1.0, 1.0, 3.0],
                tol: 1e-12,
            },
            lattice: LatticeConfig { m: [1, 1, 1, 3] },
            kernel: KernelConfig {
                entries: vec![
                    Entry {
                        k: [-1, -1],
                        v: [c1, 0.0],
                    },
                    Entry {
                        k: [-1, -2],
                        v: [c2, 0.0],
                    },
                ],
            },
            signal: SignalConfig::Random {
                seed: 7,
                origin: [0, 0],
                extent: [8, 8],
            },
            grid: GridConfig { n: 32, trunc_k: 3 },
            thresholds: Thresholds::default(),
            output: OutputConfig::default(),
            shift_invariant: None,
        }
    }

    pub fn build_params(&self) -> Result<Params, CliError> {
        let p = &self.params;
        Ok(Params::new(
            Mat2::from_row_major(p.a),
            Mat2::from_row_major(p.b),
            Mat2::from_row_major(p.c),
            Mat2::from_row_major(p.d),
            p.tol,
        )?)
    }

    pub fn build_lattice(&self) -> Result<DilationLattice, CliError> {
        Ok(DilationLattice::from_row_major(self.lattice.m)?)
    }

    pub fn build_kernel(&self) -> Sequence {
        from_entries(&self.kernel.entries)
    }

    /// The ground-truth signal and the box it is recovered on.
    pub fn build_signal(&self) -> Result<(Sequence, IndexBox), CliError> {
        match &self.signal {
            SignalConfig::Random {
                seed,
                origin,
                extent,
            } => {
                if extent[0] == 0 || extent[1] == 0 {
                    return Err(CliError::Config("signal extent must be positive".into()));
                }
                let support = IndexBox::new(*origin, *extent);
                Ok((random_sequence(*seed, support), support))
            }
            SignalConfig::Sparse { entries } => {
                let s = from_entries(entries);
                let support = s.support();
                Ok((s, support))
            }
        }
    }

    pub fn shift_invariant(&self) -> Result<&ShiftInvariantConfig, CliError> {
        self.shift_invariant
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [shift_invariant] section".into()))
    }
}

impl GaussianConfig {
    pub fn sample(&self, h: f64) -> Result<Grid, CliError> {
        if h.is_nan() || h <= 0.0 || self.half_width.is_nan() || self.half_width <= 0.0 {
            return Err(CliError::Config(
                "grid step and half_width must be positive".into(),
            ));
        }
        let g = *self;
        Ok(GridFunction2D::node_centered(
            -g.half_width,
            g.half_width,
            h,
            |t| {
                let d = [t[0] - g.center[0], t[1] - g.center[1]];
                Complex64::new(
                    g.amplitude * (-0.5 * g.decay * (d[0] * d[0] + d[1] * d[1])).exp(),
                    0.0,
                )
            },
        ))
    }
}

fn from_entries(entries: &[Entry]) -> Sequence {
    let e: Vec<([i64; 2], Complex64)> = entries
        .iter()
        .map(|e| (e.k, Complex64::new(e.v[0], e.v[1])))
        .collect();
    Sequence::from_entries(&e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let mut cfg = ExperimentConfig::worked_example(2.0, -3.0);
        cfg.shift_invariant = Some(ShiftInvariantConfig {
            h: 0.05,
            generator: GaussianConfig {
                decay: 6.0,
                center: [0.0, 0.0],
                half_width: 2.0,
                amplitude: 1.0,
            },
            kernel: GaussianConfig {
                decay: 8.0,
                center: [0.5, 0.25],
                half_width: 1.0,
                amplitude: 1.0,
            },
            coeff_tol: 1e-6,
        });
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), cfg);
        let sparse = ExperimentConfig {
            signal: SignalConfig::Sparse {
                entries: vec![Entry {
                    k: [1, -2],
                    v: [0.1, 1e-300],
                }],
            },
            ..ExperimentConfig::worked_example(1.0, 1.0)
        };
        let text = toml::to_string(&sparse).unwrap();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), sparse);
    }

    #[test]
    fn parse_error_has_position() {
        let err = ExperimentConfig::parse("[params]\na = [1, 2\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn random_signal_is_seed_determined() {
        let cfg = ExperimentConfig::worked_example(1.0, 1.0);
        assert_eq!(cfg.build_signal().unwrap().0, cfg.build_signal().unwrap().0);
    }
}

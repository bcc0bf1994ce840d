//! Pure states of a qubit register.
//!
//! Basis index `b₁b₂…b_N` is read as a binary number with qubit 1 as the most
//! significant bit, so `|100⟩` is index 4. `|0⟩` is the spin-up (`σz = +1`)
//! state.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const NORM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::domain("pure state needs at least one amplitude"));
        }
        let state = Self { amplitudes };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!("state is not normalized (norm {norm})")));
        }
        Ok(state)
    }

    /// Scales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::domain("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Computational basis state `index` in a register of `n_qubits`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::domain(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    /// N identical qubits each pointing along the Bloch direction (θ, φ), in radians.
    pub fn product(n_qubits: usize, theta: f64, phi: f64) -> Self {
        let single = [
            Complex64::new((theta / 2.0).cos(), 0.0),
            Complex64::from_polar((theta / 2.0).sin(), phi),
        ];
        let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..n_qubits {
            amplitudes = amplitudes
                .iter()
                .flat_map(|a| single.iter().map(move |s| a * s))
                .collect();
        }
        Self { amplitudes }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Weight α of the GHZ component in `√α|GHZ⟩ + √(1−α)|W⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperpositionSpec {
    alpha: f64,
}

impl SuperpositionSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// `(|000⟩ + |111⟩)/√2`
pub fn ghz_state() -> PureState {
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    amplitudes[0] = a;
    amplitudes[7] = a;
    PureState { amplitudes }
}

/// `(|100⟩ + |010⟩ + |001⟩)/√3`
pub fn w_state() -> PureState {
    let a = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); 8];
    for idx in [4, 2, 1] {
        amplitudes[idx] = a;
    }
    PureState { amplitudes }
}

/// `√α|GHZ⟩ + √(1−α)|W⟩`. GHZ and W have disjoint support so the result is
/// normalized for every admissible α.
pub fn superposition_state(spec: SuperpositionSpec) -> PureState {
    let (g, w) = (spec.alpha.sqrt(), (1.0 - spec.alpha).sqrt());
    let amplitudes = ghz_state()
        .amplitudes
        .iter()
        .zip(w_state().amplitudes())
        .map(|(a, b)| a * g + b * w)
        .collect();
    PureState { amplitudes }
}

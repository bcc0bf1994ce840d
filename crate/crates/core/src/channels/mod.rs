//! Single-qubit decoherence channels and their action on a register.
//!
//! Every channel implements [`DecoherenceChannel`] and is looked up by name
//! through a [`ChannelRegistry`]. A register evolves under independent,
//! identical copies of the channel on each qubit.

mod amplitude;
mod depolarizing;
mod phase;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use amplitude::{amplitude_damping_kraus, amplitude_damping_kraus_positive_exponent, AmplitudeDamping};
pub use depolarizing::{depolarizing_kraus, Depolarizing};
pub use phase::{phase_damping_kraus, PhaseDamping};

use crate::error::{Error, Result};
use crate::qstate::{pauli, ComplexMatrix, DensityMatrix};

/// Completeness tolerance for `Σ E†E = I`.
pub const COMPLETENESS_TOL: f64 = 1e-12;

/// Dimensionless decoherence exposure `γt ≥ 0`. `+∞` is accepted and gives
/// the fully decohered limit.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct ChannelParam {
    gamma_t: f64,
}

impl ChannelParam {
    pub fn new(gamma_t: f64) -> Result<Self> {
        if gamma_t.is_nan() || gamma_t < 0.0 {
            return Err(Error::domain(format!("gamma_t must be >= 0, got {gamma_t}")));
        }
        Ok(Self { gamma_t })
    }

    pub fn gamma_t(&self) -> f64 {
        self.gamma_t
    }

    /// `e^{−γt}`
    pub fn survival(&self) -> f64 {
        (-self.gamma_t).exp()
    }
}

/// Kraus operators of one single-qubit channel at a fixed `γt`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    channel: &'static str,
    param: ChannelParam,
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    /// Builds a set from arbitrary 2×2 operators. Completeness is not
    /// enforced here; see [`validate_kraus`].
    pub fn new(channel: &'static str, param: ChannelParam, operators: Vec<ComplexMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::domain("a Kraus set needs at least one operator"));
        }
        if let Some(bad) = operators.iter().find(|e| e.dim() != 2) {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: bad.dim(),
            });
        }
        Ok(Self::from_parts(channel, param, operators))
    }

    pub(crate) fn from_parts(channel: &'static str, param: ChannelParam, operators: Vec<ComplexMatrix>) -> Self {
        Self {
            channel,
            param,
            operators,
        }
    }

    pub fn channel(&self) -> &'static str {
        self.channel
    }

    pub fn param(&self) -> ChannelParam {
        self.param
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// `Σ E_k† E_k`
    pub fn completeness(&self) -> ComplexMatrix {
        self.operators
            .iter()
            .fold(ComplexMatrix::zeros(2), |acc, e| &acc + &(&e.adjoint() * e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KrausReport {
    /// `max |Σ E†E − I|` over entries.
    pub max_deviation: f64,
}

impl KrausReport {
    pub fn passed(&self) -> bool {
        self.max_deviation < COMPLETENESS_TOL
    }
}

pub fn validate_kraus(set: &KrausSet) -> KrausReport {
    KrausReport {
        max_deviation: set
            .completeness()
            .max_abs_diff(&ComplexMatrix::identity(2))
            .expect("2x2"),
    }
}

/// A single-qubit noise model that yields Kraus operators for any `γt`.
pub trait DecoherenceChannel: Send + Sync {
    /// Canonical registry name.
    fn name(&self) -> &'static str;

    fn aliases(&self) -> &'static [&'static str] {
        &[]
    }

    fn kraus(&self, param: ChannelParam) -> KrausSet;
}

impl fmt::Debug for dyn DecoherenceChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecoherenceChannel({})", self.name())
    }
}

/// Channels addressable by name or alias.
#[derive(Clone, Default)]
pub struct ChannelRegistry {
    channels: Vec<Arc<dyn DecoherenceChannel>>,
}

impl ChannelRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Amplitude damping, phase damping and depolarizing.
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(AmplitudeDamping)).expect("unique");
        r.register(Arc::new(PhaseDamping)).expect("unique");
        r.register(Arc::new(Depolarizing)).expect("unique");
        r
    }

    pub fn register(&mut self, channel: Arc<dyn DecoherenceChannel>) -> Result<()> {
        for key in std::iter::once(channel.name()).chain(channel.aliases().iter().copied()) {
            if self.lookup(key).is_some() {
                return Err(Error::domain(format!("channel name `{key}` is already registered")));
            }
        }
        self.channels.push(channel);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn DecoherenceChannel>> {
        self.lookup(name)
            .cloned()
            .ok_or_else(|| Error::UnknownChannel(name.to_owned()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.channels.iter().map(|c| c.name())
    }

    fn lookup(&self, name: &str) -> Option<&Arc<dyn DecoherenceChannel>> {
        self.channels
            .iter()
            .find(|c| c.name() == name || c.aliases().contains(&name))
    }
}

/// Process-wide registry holding the built-in channels.
pub fn builtin() -> &'static ChannelRegistry {
    static REGISTRY: OnceLock<ChannelRegistry> = OnceLock::new();
    REGISTRY.get_or_init(ChannelRegistry::with_builtins)
}

/// `Σ E ρ E†` for a single-qubit state.
pub fn apply_single_qubit(rho: &ComplexMatrix, set: &KrausSet) -> ComplexMatrix {
    set.operators.iter().fold(ComplexMatrix::zeros(rho.dim()), |acc, e| {
        &acc + &(&(e * rho) * &e.adjoint())
    })
}

fn check_inputs(rho: &DensityMatrix, set: &KrausSet, n_qubits: usize) -> Result<()> {
    let dim = 1usize << n_qubits;
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: rho.dim(),
        });
    }
    let report = validate_kraus(set);
    if !report.passed() {
        return Err(Error::domain(format!(
            "Kraus set for `{}` is not trace preserving (deviation {:.3e})",
            set.channel, report.max_deviation
        )));
    }
    Ok(())
}

/// `ρ′ = Σ_{k₁…k_N} (E_{k₁}⊗…⊗E_{k_N}) ρ (E_{k₁}⊗…⊗E_{k_N})†`.
pub fn apply_channel_all_qubits(rho: &DensityMatrix, set: &KrausSet, n_qubits: usize) -> Result<DensityMatrix> {
    check_inputs(rho, set, n_qubits)?;
    let k = set.operators.len();
    let terms = k.pow(n_qubits as u32);
    let mut out = ComplexMatrix::zeros(rho.dim());
    for mut index in 0..terms {
        let mut lifted = ComplexMatrix::identity(1);
        let mut factors = Vec::with_capacity(n_qubits);
        for _ in 0..n_qubits {
            factors.push(index % k);
            index /= k;
        }
        // qubit 1 is the most significant tensor factor
        for &f in factors.iter().rev() {
            lifted = lifted.tensor(&set.operators[f]);
        }
        out = &out + &(&(&lifted * rho.matrix()) * &lifted.adjoint());
    }
    Ok(DensityMatrix::new_unchecked(out))
}

/// The same channel applied to qubit 1, then 2, …, then N.
pub fn apply_channel_sequential(rho: &DensityMatrix, set: &KrausSet, n_qubits: usize) -> Result<DensityMatrix> {
    check_inputs(rho, set, n_qubits)?;
    let lifted: Vec<Vec<(ComplexMatrix, ComplexMatrix)>> = (0..n_qubits)
        .map(|q| {
            set.operators
                .iter()
                .map(|e| {
                    let l = pauli::embed(e, q, n_qubits);
                    let la = l.adjoint();
                    (l, la)
                })
                .collect()
        })
        .collect();
    let mut m = rho.matrix().clone();
    for ops in &lifted {
        m = ops
            .iter()
            .fold(ComplexMatrix::zeros(m.dim()), |acc, (l, la)| &acc + &(&(l * &m) * la));
    }
    Ok(DensityMatrix::new_unchecked(m))
}

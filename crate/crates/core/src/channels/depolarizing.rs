use super::{ChannelParam, DecoherenceChannel, KrausSet};
use crate::qstate::{pauli, ComplexMatrix};

/// Pauli twirl contracting the Bloch vector by `e^{−γt}`:
/// `ρ ↦ e^{−γt}ρ + (1 − e^{−γt})·I/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Depolarizing;

impl DecoherenceChannel for Depolarizing {
    fn name(&self) -> &'static str {
        "depolarizing"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["depolarization", "depolarising"]
    }

    fn kraus(&self, param: ChannelParam) -> KrausSet {
        depolarizing_kraus(param)
    }
}

/// `E₁ = √((1+3e^{−γt})/4)·I`, `E₂,₃,₄ = √((1−e^{−γt})/4)·σx,y,z`.
pub fn depolarizing_kraus(param: ChannelParam) -> KrausSet {
    let keep = param.survival();
    let id_weight = ((1.0 + 3.0 * keep) / 4.0).sqrt();
    let pauli_weight = ((1.0 - keep) / 4.0).sqrt();
    KrausSet::from_parts(
        "depolarizing",
        param,
        vec![
            ComplexMatrix::identity(2).scale_real(id_weight),
            pauli::x().scale_real(pauli_weight),
            pauli::y().scale_real(pauli_weight),
            pauli::z().scale_real(pauli_weight),
        ],
    )
}

use super::{ChannelParam, DecoherenceChannel, KrausSet};
use crate::qstate::ComplexMatrix;

/// Pure dephasing: populations fixed, coherences scaled by `e^{−γt}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PhaseDamping;

impl DecoherenceChannel for PhaseDamping {
    fn name(&self) -> &'static str {
        "phase"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["phase_damping", "phase-damping", "dephasing"]
    }

    fn kraus(&self, param: ChannelParam) -> KrausSet {
        phase_damping_kraus(param)
    }
}

/// `E₁ = √e^{−γt}·I`, `E₂ = diag(√(1−e^{−γt}), 0)`, `E₃ = diag(0, √(1−e^{−γt}))`.
pub fn phase_damping_kraus(param: ChannelParam) -> KrausSet {
    let keep = param.survival();
    let lost = (1.0 - keep).sqrt();
    KrausSet::from_parts(
        "phase",
        param,
        vec![
            ComplexMatrix::identity(2).scale_real(keep.sqrt()),
            ComplexMatrix::from_real_diag(&[lost, 0.0]),
            ComplexMatrix::from_real_diag(&[0.0, lost]),
        ],
    )
}

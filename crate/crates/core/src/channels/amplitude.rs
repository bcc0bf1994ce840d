use num_complex::Complex64;

use super::{ChannelParam, DecoherenceChannel, KrausSet};
use crate::qstate::ComplexMatrix;

/// Energy relaxation `|1⟩ → |0⟩`, i.e. toward the all-spin-up state.
#[derive(Clone, Copy, Debug, Default)]
pub struct AmplitudeDamping;

impl DecoherenceChannel for AmplitudeDamping {
    fn name(&self) -> &'static str {
        "amplitude"
    }

    fn aliases(&self) -> &'static [&'static str] {
        &["amplitude_damping", "amplitude-damping"]
    }

    fn kraus(&self, param: ChannelParam) -> KrausSet {
        amplitude_damping_kraus(param)
    }
}

/// `E₁ = [[1, 0], [0, √e^{−γt}]]`, `E₂ = [[0, √(1−e^{−γt})], [0, 0]]`.
pub fn amplitude_damping_kraus(param: ChannelParam) -> KrausSet {
    let keep = param.survival();
    let e1 = ComplexMatrix::from_real_diag(&[1.0, keep.sqrt()]);
    let mut e2 = ComplexMatrix::zeros(2);
    e2[(0, 1)] = Complex64::new((1.0 - keep).sqrt(), 0.0);
    KrausSet::from_parts("amplitude", param, vec![e1, e2])
}

/// The amplitude damping pair with `E₁`'s lower diagonal entry written as
/// `√e^{+γt}`. Not trace preserving for `γt > 0`; used to exercise the
/// completeness check.
pub fn amplitude_damping_kraus_positive_exponent(param: ChannelParam) -> KrausSet {
    let mut set = amplitude_damping_kraus(param);
    set.operators[0][(1, 1)] = Complex64::new(param.gamma_t().exp().sqrt(), 0.0);
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::validate_kraus;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn p(g: f64) -> ChannelParam {
        ChannelParam::new(g).unwrap()
    }

    #[test]
    fn identity_at_zero() {
        let set = amplitude_damping_kraus(p(0.0));
        assert_eq!(set.operators()[0], ComplexMatrix::identity(2));
        assert_eq!(set.operators()[1], ComplexMatrix::zeros(2));
    }

    #[test]
    fn full_decay_limit() {
        let set = amplitude_damping_kraus(p(f64::INFINITY));
        assert_eq!(set.operators()[0], ComplexMatrix::from_real_diag(&[1.0, 0.0]));
        let mut lower = ComplexMatrix::zeros(2);
        lower[(0, 1)] = Complex64::new(1.0, 0.0);
        assert_eq!(set.operators()[1], lower);
    }

    #[test]
    fn half_decay() {
        let set = amplitude_damping_kraus(p(LN_2));
        assert!((set.operators()[0][(1, 1)].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((set.operators()[1][(0, 1)].re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn positive_exponent_fails_completeness() {
        assert!(validate_kraus(&amplitude_damping_kraus(p(0.3))).passed());
        let report = validate_kraus(&amplitude_damping_kraus_positive_exponent(p(1.0)));
        assert!(!report.passed());
        // Σ E†E = diag(1, e + 1 − e⁻¹)
        let e = std::f64::consts::E;
        assert!((report.max_deviation - (e - 1.0 / e)).abs() < 1e-12);
    }
}

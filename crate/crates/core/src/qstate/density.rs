//! Density matrices and their physicality checks.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::state::{PureState, NORM_TOL};
use crate::error::{Error, Result};

/// Tolerance applied to the Hermiticity, trace and positivity checks.
pub const PHYSICALITY_TOL: f64 = 1e-10;

/// A register state. Construction through [`DensityMatrix::new`] enforces
/// Hermiticity, unit trace and positivity within [`PHYSICALITY_TOL`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let report = validate_matrix(&matrix);
        if !report.passed() {
            return Err(Error::domain(format!("not a valid density matrix: {report}")));
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix without running the physicality checks. Channel
    /// outputs built from valid inputs use this.
    pub(crate) fn new_unchecked(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    /// `I/d`
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Number of qubits, when the dimension is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    /// `trace(ρ²)`
    pub fn purity(&self) -> f64 {
        self.matrix
            .trace_product(&self.matrix)
            .expect("square matrix")
            .re
    }
}

/// `|ψ⟩⟨ψ|`
pub fn density_from_pure(psi: &PureState) -> Result<DensityMatrix> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::domain(format!("state is not normalized (norm {norm})")));
    }
    let a = psi.amplitudes();
    Ok(DensityMatrix {
        matrix: ComplexMatrix::outer(a, a)?,
    })
}

/// `Re trace(ρ·A)` for a Hermitian observable `A`.
pub fn expectation(rho: &DensityMatrix, obs: &ComplexMatrix) -> Result<f64> {
    if obs.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: obs.dim(),
        });
    }
    if !obs.is_hermitian(1e-12) {
        return Err(Error::domain("observable is not Hermitian"));
    }
    let t: Complex64 = rho.matrix.trace_product(obs)?;
    debug_assert!(t.im.abs() < 1e-10, "imaginary expectation {}", t.im);
    Ok(t.re)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityReport {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.hermiticity_deviation < PHYSICALITY_TOL
            && self.trace_deviation < PHYSICALITY_TOL
            && self.min_eigenvalue >= -PHYSICALITY_TOL
    }
}

impl std::fmt::Display for DensityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "hermiticity {:.3e}, trace deviation {:.3e}, min eigenvalue {:.3e}",
            self.hermiticity_deviation, self.trace_deviation, self.min_eigenvalue
        )
    }
}

pub fn validate_density(rho: &DensityMatrix) -> DensityReport {
    validate_matrix(&rho.matrix)
}

/// Physicality report for an arbitrary square matrix.
pub fn validate_matrix(m: &ComplexMatrix) -> DensityReport {
    let hermiticity_deviation = m.hermiticity_deviation();
    let trace_deviation = (m.trace() - Complex64::new(1.0, 0.0)).norm();
    let min_eigenvalue = m.hermitian_eigenvalues().first().copied().unwrap_or(f64::NAN);
    DensityReport {
        hermiticity_deviation,
        trace_deviation,
        min_eigenvalue,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::matrix::pauli;
    use crate::qstate::state::{ghz_state, w_state};
    use crate::testutil::{random_density, random_pure, rng};

    #[test]
    fn basis_projector() {
        let rho = density_from_pure(&PureState::basis(3, 0).unwrap()).unwrap();
        let mut diag = vec![0.0; 8];
        diag[0] = 1.0;
        assert_eq!(rho.matrix(), &ComplexMatrix::from_real_diag(&diag));
    }

    #[test]
    fn ghz_density_entries() {
        let rho = density_from_pure(&ghz_state()).unwrap();
        let m = rho.matrix();
        for (i, j) in [(0, 0), (7, 7), (0, 7), (7, 0)] {
            assert!((m[(i, j)].re - 0.5).abs() < 1e-15);
        }
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn w_density_has_unit_trace() {
        let rho = density_from_pure(&w_state()).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_of_identity_is_one() {
        let rho = density_from_pure(&w_state()).unwrap();
        assert!((expectation(&rho, &ComplexMatrix::identity(8)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_of_sigma_z_on_ground() {
        let rho = density_from_pure(&PureState::basis(3, 0).unwrap()).unwrap();
        let z1 = pauli::embed(&pauli::z(), 0, 3);
        assert_eq!(expectation(&rho, &z1).unwrap(), 1.0);
    }

    #[test]
    fn expectation_errors() {
        let rho = density_from_pure(&w_state()).unwrap();
        assert!(matches!(
            expectation(&rho, &ComplexMatrix::identity(4)),
            Err(Error::DimensionMismatch { .. })
        ));
        let mut non_herm = ComplexMatrix::zeros(8);
        non_herm[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(expectation(&rho, &non_herm), Err(Error::Domain(_))));
    }

    #[test]
    fn expectation_is_linear() {
        let mut r = rng(3);
        let rho = random_density(&mut r, 8);
        let a = pauli::embed(&pauli::x(), 1, 3);
        let b = pauli::embed(&pauli::y(), 2, 3);
        let lhs = expectation(&rho, &(&a + &b)).unwrap();
        let rhs = expectation(&rho, &a).unwrap() + expectation(&rho, &b).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn unnormalized_pure_state_rejected() {
        let bad = PureState::normalized(vec![Complex64::new(1.0, 0.0); 2]).unwrap();
        let doubled = bad.amplitudes().iter().map(|a| a * 2.0).collect::<Vec<_>>();
        assert!(PureState::new(doubled).is_err());
    }

    #[test]
    fn validation_cases() {
        let mut diag = vec![0.0; 8];
        diag[0] = 1.0;
        assert!(validate_matrix(&ComplexMatrix::from_real_diag(&diag)).passed());
        diag[0] = 0.5;
        diag[1] = 0.5;
        assert!(validate_matrix(&ComplexMatrix::from_real_diag(&diag)).passed());
        diag[0] = 0.4;
        let report = validate_matrix(&ComplexMatrix::from_real_diag(&diag));
        assert!(!report.passed());
        assert!((report.trace_deviation - 0.1).abs() < 1e-12);
        assert!(DensityMatrix::new(ComplexMatrix::from_real_diag(&diag)).is_err());
    }

    #[test]
    fn negative_eigenvalue_fails_validation() {
        let m = ComplexMatrix::from_real_diag(&[1.5, -0.5]);
        let report = validate_matrix(&m);
        assert!((report.min_eigenvalue + 0.5).abs() < 1e-12);
        assert!(!report.passed());
    }

    #[test]
    fn random_pure_states_are_physical() {
        let mut r = rng(11);
        for _ in 0..100 {
            let rho = density_from_pure(&random_pure(&mut r, 8)).unwrap();
            assert!(validate_density(&rho).passed());
            assert!((rho.purity() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn qubit_count() {
        assert_eq!(DensityMatrix::maximally_mixed(8).n_qubits(), Some(3));
        assert_eq!(DensityMatrix::maximally_mixed(6).n_qubits(), None);
    }
}

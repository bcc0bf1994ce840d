//! Collective spin operators and the Kitagawa–Ueda squeezing parameter.
//!
//! `J_a = ½ Σᵢ σ_a⁽ⁱ⁾` with ħ = 1, so a coherent spin state of N qubits has
//! transverse variance N/4 and squeezing parameter `ε = 4·V_min/N = 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::{expectation, pauli, ComplexMatrix, DensityMatrix};

/// Below this norm the mean spin vector has no usable direction.
pub const DEGENERATE_MEAN_TOL: f64 = 1e-9;

const UNIT_TOL: f64 = 1e-12;
const ISOTROPY_TOL: f64 = 1e-12;

pub type Vec3 = [f64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn pauli(self) -> ComplexMatrix {
        match self {
            Axis::X => pauli::x(),
            Axis::Y => pauli::y(),
            Axis::Z => pauli::z(),
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// `J_a = ½ Σᵢ σ_a⁽ⁱ⁾` on `n_qubits` spins.
pub fn collective_operator(axis: Axis, n_qubits: usize) -> ComplexMatrix {
    let sigma = axis.pauli();
    let dim = 1usize << n_qubits;
    (0..n_qubits).fold(ComplexMatrix::zeros(dim), |acc, q| {
        &acc + &pauli::embed(&sigma, q, n_qubits).scale_real(0.5)
    })
}

#[derive(Debug)]
struct Operators {
    j: [ComplexMatrix; 3],
    /// `(J_a J_b + J_b J_a)/2`
    sym: [[ComplexMatrix; 3]; 3],
}

/// An ensemble of N spin-½ particles together with its collective operators,
/// built once and shared read-only.
#[derive(Clone, Debug)]
pub struct SpinEnsemble {
    n_qubits: usize,
    ops: Arc<Operators>,
}

impl SpinEnsemble {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 12 {
            return Err(Error::domain(format!(
                "qubit count must be in 1..=12, got {n_qubits}"
            )));
        }
        let j = Axis::ALL.map(|a| collective_operator(a, n_qubits));
        let sym = std::array::from_fn(|a| {
            std::array::from_fn(|b| (&(&j[a] * &j[b]) + &(&j[b] * &j[a])).scale_real(0.5))
        });
        Ok(Self {
            n_qubits,
            ops: Arc::new(Operators { j, sym }),
        })
    }

    /// Three spins, the register used throughout the sweeps.
    pub fn three() -> Self {
        Self::new(3).expect("3 qubits is in range")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Spin quantum number `J = N/2`.
    pub fn j_total(&self) -> f64 {
        self.n_qubits as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn operator(&self, axis: Axis) -> &ComplexMatrix {
        &self.ops.j[axis.index()]
    }

    /// `n·J` for a 3-vector `n`.
    pub fn along(&self, n: Vec3) -> ComplexMatrix {
        let j = &self.ops.j;
        let sum = &j[0].scale_real(n[0]) + &j[1].scale_real(n[1]);
        &sum + &j[2].scale_real(n[2])
    }

    fn check(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rho.dim(),
            });
        }
        Ok(())
    }
}

/// Reference direction on the Bloch sphere, in degrees.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    theta_deg: f64,
    phi_deg: f64,
}

impl Direction {
    /// `theta_deg ∈ [0, 180]` from +z, `phi_deg ∈ [0, 360)` from +x.
    pub fn new(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        if !(0.0..=180.0).contains(&theta_deg) {
            return Err(Error::domain(format!("theta must lie in [0, 180], got {theta_deg}")));
        }
        if !(0.0..360.0).contains(&phi_deg) {
            return Err(Error::domain(format!("phi must lie in [0, 360), got {phi_deg}")));
        }
        Ok(Self { theta_deg, phi_deg })
    }

    pub fn z() -> Self {
        Self {
            theta_deg: 0.0,
            phi_deg: 0.0,
        }
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta_deg
    }

    pub fn phi_deg(&self) -> f64 {
        self.phi_deg
    }

    pub fn unit_vector(&self) -> Vec3 {
        let (t, p) = (self.theta_deg.to_radians(), self.phi_deg.to_radians());
        [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()]
    }

    /// Direction of a non-zero vector; `None` when it is shorter than [`DEGENERATE_MEAN_TOL`].
    pub fn from_vector(v: Vec3) -> Option<Self> {
        let r = norm(v);
        if r < DEGENERATE_MEAN_TOL {
            return None;
        }
        let theta_deg = (v[2] / r).clamp(-1.0, 1.0).acos().to_degrees();
        let mut phi_deg = if v[0].hypot(v[1]) < 1e-12 * r {
            0.0
        } else {
            v[1].atan2(v[0]).to_degrees().rem_euclid(360.0)
        };
        if phi_deg >= 360.0 {
            phi_deg = 0.0;
        }
        Some(Self { theta_deg, phi_deg })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MeanSpinVector {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl MeanSpinVector {
    pub fn as_array(&self) -> Vec3 {
        [self.jx, self.jy, self.jz]
    }

    pub fn norm(&self) -> f64 {
        norm(self.as_array())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SqueezingResult {
    /// `4·v_min/N`
    pub epsilon: f64,
    pub v_min: f64,
    /// In-plane angle from `e₁` toward `e₂` attaining `v_min`, in `[0, π)`.
    pub phi_star_rad: f64,
    pub mean_spin: MeanSpinVector,
}

impl SqueezingResult {
    pub fn is_squeezed(&self) -> bool {
        self.epsilon < 1.0
    }
}

/// `(⟨Jx⟩, ⟨Jy⟩, ⟨Jz⟩)`
pub fn mean_spin_vector(rho: &DensityMatrix, ensemble: &SpinEnsemble) -> Result<MeanSpinVector> {
    ensemble.check(rho)?;
    let [jx, jy, jz] = Axis::ALL.map(|a| expectation(rho, ensemble.operator(a)));
    Ok(MeanSpinVector {
        jx: jx?,
        jy: jy?,
        jz: jz?,
    })
}

/// `⟨J_n²⟩ − ⟨J_n⟩²` evaluated directly on the operator `J_n = n·J`.
pub fn variance_along(rho: &DensityMatrix, unit_dir: Vec3, ensemble: &SpinEnsemble) -> Result<f64> {
    ensemble.check(rho)?;
    check_unit(unit_dir)?;
    let jn = ensemble.along(unit_dir);
    let mean = expectation(rho, &jn)?;
    let second = rho.matrix().trace_product(&(&jn * &jn))?.re;
    Ok(second - mean * mean)
}

/// Orthonormal pair spanning the plane perpendicular to `n`, with
/// `e₂ = n × e₁`. `e₁ = normalize(ẑ × n)` unless `n` is (anti)parallel to ẑ,
/// in which case `e₁ = x̂`.
pub fn perpendicular_basis(unit_dir: Vec3) -> Result<(Vec3, Vec3)> {
    let r = norm(unit_dir);
    if r == 0.0 || !r.is_finite() {
        return Err(Error::domain("perpendicular basis of a zero vector"));
    }
    let n = unit_dir.map(|c| c / r);
    let e1 = if n[2].abs() < 1.0 - 1e-9 {
        let v = cross([0.0, 0.0, 1.0], n);
        let l = norm(v);
        v.map(|c| c / l)
    } else {
        [1.0, 0.0, 0.0]
    };
    Ok((e1, cross(n, e1)))
}

/// First and second moments of the collective spin for one state. Every
/// directional variance is a quadratic form in these.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinMoments {
    pub mean: Vec3,
    /// `½⟨J_a J_b + J_b J_a⟩`
    pub second: [[f64; 3]; 3],
}

impl SpinMoments {
    pub fn of(rho: &DensityMatrix, ensemble: &SpinEnsemble) -> Result<Self> {
        ensemble.check(rho)?;
        let m = rho.matrix();
        let mut mean = [0.0; 3];
        let mut second = [[0.0; 3]; 3];
        #[allow(clippy::needless_range_loop)]
        for a in 0..3 {
            mean[a] = m.trace_product(&ensemble.ops.j[a])?.re;
            for b in a..3 {
                let v = m.trace_product(&ensemble.ops.sym[a][b])?.re;
                second[a][b] = v;
                second[b][a] = v;
            }
        }
        Ok(Self { mean, second })
    }

    /// Symmetrized covariance `½⟨{J_u, J_v}⟩ − ⟨J_u⟩⟨J_v⟩`.
    pub fn covariance(&self, u: Vec3, v: Vec3) -> f64 {
        let mut acc = 0.0;
        #[allow(clippy::needless_range_loop)]
        for a in 0..3 {
            for b in 0..3 {
                acc += u[a] * self.second[a][b] * v[b];
            }
        }
        acc - dot(self.mean, u) * dot(self.mean, v)
    }

    pub fn mean_spin(&self) -> MeanSpinVector {
        MeanSpinVector {
            jx: self.mean[0],
            jy: self.mean[1],
            jz: self.mean[2],
        }
    }

    /// Minimum of `Var(cosφ·J_{e₁} + sinφ·J_{e₂})` over φ for the plane
    /// perpendicular to `n`, as `(v_min, φ*)`.
    pub fn min_perpendicular_variance(&self, n: Vec3) -> Result<(f64, f64)> {
        let (e1, e2) = perpendicular_basis(n)?;
        let c11 = self.covariance(e1, e1);
        let c22 = self.covariance(e2, e2);
        let c12 = self.covariance(e1, e2);
        Ok(min_eigen_2x2(c11, c22, c12))
    }

    pub fn squeezing(&self, n: Vec3, n_qubits: usize) -> Result<SqueezingResult> {
        let (v_min, phi_star_rad) = self.min_perpendicular_variance(n)?;
        Ok(SqueezingResult {
            epsilon: 4.0 * v_min / n_qubits as f64,
            v_min,
            phi_star_rad,
            mean_spin: self.mean_spin(),
        })
    }
}

/// Smallest eigenvalue of `[[c11, c12], [c12, c22]]` and the angle of its
/// eigenvector reduced to `[0, π)`. Slightly negative minima from rounding
/// are clamped to zero.
fn min_eigen_2x2(c11: f64, c22: f64, c12: f64) -> (f64, f64) {
    let half_gap = ((c11 - c22) * (c11 - c22) + 4.0 * c12 * c12).sqrt();
    let mut v_min = 0.5 * ((c11 + c22) - half_gap);
    if (-crate::qstate::PHYSICALITY_TOL..0.0).contains(&v_min) {
        v_min = 0.0;
    }
    let phi_star = if (c11 - c22).abs() < ISOTROPY_TOL && c12.abs() < ISOTROPY_TOL {
        0.0
    } else {
        let major = 0.5 * (2.0 * c12).atan2(c11 - c22);
        let mut a = (major + PI / 2.0).rem_euclid(PI);
        if a >= PI {
            a -= PI;
        }
        a
    };
    (v_min, phi_star)
}

/// Minimum variance of the collective spin in the plane perpendicular to `dir`.
pub fn min_perpendicular_variance(
    rho: &DensityMatrix,
    dir: Direction,
    ensemble: &SpinEnsemble,
) -> Result<(f64, f64)> {
    SpinMoments::of(rho, ensemble)?.min_perpendicular_variance(dir.unit_vector())
}

/// Kitagawa–Ueda parameter with the variance minimized perpendicular to `dir`.
pub fn squeezing_parameter(
    rho: &DensityMatrix,
    dir: Direction,
    ensemble: &SpinEnsemble,
) -> Result<SqueezingResult> {
    SpinMoments::of(rho, ensemble)?.squeezing(dir.unit_vector(), ensemble.n_qubits())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MeanDirection {
    Defined(Direction),
    /// `|⟨J⟩| < DEGENERATE_MEAN_TOL`; no direction exists.
    Degenerate,
}

pub fn mean_spin_direction(rho: &DensityMatrix, ensemble: &SpinEnsemble) -> Result<MeanDirection> {
    let v = mean_spin_vector(rho, ensemble)?;
    Ok(match Direction::from_vector(v.as_array()) {
        Some(d) => MeanDirection::Defined(d),
        None => MeanDirection::Degenerate,
    })
}

/// Which plane the variance is minimized in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DirectionMode {
    /// Perpendicular to the supplied reference direction.
    #[default]
    Given,
    /// Perpendicular to the state's own mean spin vector.
    Mean,
}

impl FromStr for DirectionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "given" => Ok(Self::Given),
            "mean" => Ok(Self::Mean),
            other => Err(Error::domain(format!(
                "direction mode must be `given` or `mean`, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for DirectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Given => "given",
            Self::Mean => "mean",
        })
    }
}

/// A squeezing evaluation together with whether `Mean` mode found no mean
/// spin direction. In that case the supplied direction is used instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub result: SqueezingResult,
    pub degenerate_mean: bool,
}

pub fn evaluate_moments(
    moments: &SpinMoments,
    dir: Direction,
    mode: DirectionMode,
    n_qubits: usize,
) -> Result<Evaluation> {
    let (n, degenerate_mean) = match mode {
        DirectionMode::Given => (dir.unit_vector(), false),
        DirectionMode::Mean => match Direction::from_vector(moments.mean) {
            Some(d) => (d.unit_vector(), false),
            None => (dir.unit_vector(), true),
        },
    };
    Ok(Evaluation {
        result: moments.squeezing(n, n_qubits)?,
        degenerate_mean,
    })
}

pub fn evaluate(
    rho: &DensityMatrix,
    dir: Direction,
    mode: DirectionMode,
    ensemble: &SpinEnsemble,
) -> Result<Evaluation> {
    evaluate_moments(&SpinMoments::of(rho, ensemble)?, dir, mode, ensemble.n_qubits())
}

fn check_unit(v: Vec3) -> Result<()> {
    let r = norm(v);
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::domain(format!("direction is not a unit vector (norm {r})")));
    }
    Ok(())
}

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(v: Vec3) -> f64 {
    dot(v, v).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{density_from_pure, ghz_state, w_state, PureState};
    use crate::testutil::{random_density, random_unit_vector, rng};
    use num_complex::Complex64;
    use rand::Rng;

    fn ground() -> DensityMatrix {
        density_from_pure(&PureState::basis(3, 0).unwrap()).unwrap()
    }

    fn ghz() -> DensityMatrix {
        density_from_pure(&ghz_state()).unwrap()
    }

    fn w() -> DensityMatrix {
        density_from_pure(&w_state()).unwrap()
    }

    /// Brute-force in-plane minimum: builds `J(φ)` explicitly and contracts
    /// with ρ at `steps` equally spaced angles in `[0, π)`, then polishes the
    /// best bracket by golden-section search on the same contraction.
    fn grid_min_variance(rho: &DensityMatrix, n: Vec3, ens: &SpinEnsemble, steps: usize) -> f64 {
        let (e1, e2) = perpendicular_basis(n).unwrap();
        let at = |phi: f64| {
            let u = [0, 1, 2].map(|i| phi.cos() * e1[i] + phi.sin() * e2[i]);
            direct_variance(rho, u, ens)
        };
        let h = PI / steps as f64;
        let (best_k, best) = (0..steps)
            .map(|k| (k, at(h * k as f64)))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        let (mut a, mut b) = (h * (best_k as f64 - 1.0), h * (best_k as f64 + 1.0));
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..80 {
            let (c, d) = (b - g * (b - a), a + g * (b - a));
            if at(c) < at(d) {
                b = d;
            } else {
                a = c;
            }
        }
        best.min(at(0.5 * (a + b)))
    }

    fn direct_variance(rho: &DensityMatrix, u: Vec3, ens: &SpinEnsemble) -> f64 {
        let op = ens.along(u);
        let sq = &op * &op;
        let m = rho.matrix();
        let (mut first, mut second) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for i in 0..m.dim() {
            for k in 0..m.dim() {
                first += m[(i, k)] * op[(k, i)];
                second += m[(i, k)] * sq[(k, i)];
            }
        }
        second.re - first.re * first.re
    }

    #[test]
    fn jz_is_diagonal() {
        let jz = collective_operator(Axis::Z, 3);
        let expected = ComplexMatrix::from_real_diag(&[1.5, 0.5, 0.5, -0.5, 0.5, -0.5, -0.5, -1.5]);
        assert_eq!(jz, expected);
    }

    #[test]
    fn collective_operators_are_traceless_and_hermitian() {
        for a in Axis::ALL {
            let j = collective_operator(a, 3);
            assert!(j.trace().norm() < 1e-15);
            assert!(j.is_hermitian(0.0));
            let ev = j.hermitian_eigenvalues();
            assert!((ev[0] + 1.5).abs() < 1e-12 && (ev[7] - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn su2_commutators() {
        let ens = SpinEnsemble::three();
        let i = Complex64::new(0.0, 1.0);
        for (a, b, c) in [(Axis::X, Axis::Y, Axis::Z), (Axis::Y, Axis::Z, Axis::X), (Axis::Z, Axis::X, Axis::Y)] {
            let (ja, jb, jc) = (ens.operator(a), ens.operator(b), ens.operator(c));
            let comm = &(ja * jb) - &(jb * ja);
            assert!(comm.max_abs_diff(&jc.scale(i)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn j_total_is_half_n() {
        for n in 1..=4 {
            let e = SpinEnsemble::new(n).unwrap();
            assert_eq!(e.j_total(), n as f64 / 2.0);
        }
        assert!(SpinEnsemble::new(0).is_err());
    }

    #[test]
    fn mean_spin_vectors() {
        let ens = SpinEnsemble::three();
        let g = mean_spin_vector(&ground(), &ens).unwrap();
        assert_eq!(g.as_array(), [0.0, 0.0, 1.5]);
        let h = mean_spin_vector(&ghz(), &ens).unwrap();
        assert!(h.norm() < 1e-15);
        let v = mean_spin_vector(&w(), &ens).unwrap();
        assert!(v.jx.abs() < 1e-15 && v.jy.abs() < 1e-15 && (v.jz - 0.5).abs() < 1e-15);
    }

    #[test]
    fn directional_variances() {
        let ens = SpinEnsemble::three();
        assert!((variance_along(&ground(), [1.0, 0.0, 0.0], &ens).unwrap() - 0.75).abs() < 1e-15);
        assert!(variance_along(&ground(), [0.0, 0.0, 1.0], &ens).unwrap().abs() < 1e-15);
        assert!((variance_along(&ghz(), [0.0, 0.0, 1.0], &ens).unwrap() - 2.25).abs() < 1e-14);
        assert!(variance_along(&ghz(), [1.0, 1.0, 0.0], &ens).is_err());
    }

    #[test]
    fn basis_for_z_and_x() {
        assert_eq!(perpendicular_basis([0.0, 0.0, 1.0]).unwrap(), ([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
        assert_eq!(perpendicular_basis([1.0, 0.0, 0.0]).unwrap(), ([0.0, 1.0, 0.0], [0.0, 0.0, 1.0]));
        assert!(perpendicular_basis([0.0; 3]).is_err());
    }

    #[test]
    fn basis_is_orthonormal() {
        let mut r = rng(5);
        for _ in 0..200 {
            let n = random_unit_vector(&mut r);
            let (e1, e2) = perpendicular_basis(n).unwrap();
            assert!(dot(e1, e2).abs() < 1e-12);
            assert!(dot(e1, n).abs() < 1e-12);
            assert!(dot(e2, n).abs() < 1e-12);
            assert!((norm(e1) - 1.0).abs() < 1e-12 && (norm(e2) - 1.0).abs() < 1e-12);
        }
    }

    // Oracle values computed with `grid_min_variance` at 3600 angles.
    #[test]
    fn static_state_minimum_variances() {
        let ens = SpinEnsemble::three();
        let z = Direction::z();
        for (rho, expected) in [(ground(), 0.75), (ghz(), 0.75), (w(), 1.75)] {
            let oracle = grid_min_variance(&rho, z.unit_vector(), &ens, 3600);
            assert!((oracle - expected).abs() < 1e-12);
            let (v, _) = min_perpendicular_variance(&rho, z, &ens).unwrap();
            assert!((v - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn static_state_squeezing() {
        let ens = SpinEnsemble::three();
        let z = Direction::z();
        let eps = |rho: &DensityMatrix| squeezing_parameter(rho, z, &ens).unwrap().epsilon;
        assert!((eps(&ground()) - 1.0).abs() < 1e-12);
        assert!((eps(&ghz()) - 1.0).abs() < 1e-12);
        assert!((eps(&w()) - 7.0 / 3.0).abs() < 1e-12);
        // isotropic transverse covariance breaks the tie at zero
        assert_eq!(squeezing_parameter(&ghz(), z, &ens).unwrap().phi_star_rad, 0.0);
    }

    #[test]
    fn closed_form_matches_grid_search() {
        let ens = SpinEnsemble::three();
        let mut r = rng(17);
        for _ in 0..20 {
            let rho = random_density(&mut r, 8);
            let moments = SpinMoments::of(&rho, &ens).unwrap();
            for _ in 0..10 {
                let n = random_unit_vector(&mut r);
                let (v, phi) = moments.min_perpendicular_variance(n).unwrap();
                let oracle = grid_min_variance(&rho, n, &ens, 3600);
                assert!(v <= oracle + 1e-12);
                assert!((v - oracle).abs() < 1e-9, "closed {v} grid {oracle}");
                let (e1, e2) = perpendicular_basis(n).unwrap();
                let u = [0, 1, 2].map(|i| phi.cos() * e1[i] + phi.sin() * e2[i]);
                assert!((direct_variance(&rho, u, &ens) - v).abs() < 1e-12);
                assert!((0.0..PI).contains(&phi));
            }
        }
    }

    #[test]
    fn moments_route_matches_operator_route() {
        let ens = SpinEnsemble::three();
        let mut r = rng(23);
        for _ in 0..20 {
            let rho = random_density(&mut r, 8);
            let m = SpinMoments::of(&rho, &ens).unwrap();
            let n = random_unit_vector(&mut r);
            let direct = variance_along(&rho, n, &ens).unwrap();
            assert!((m.covariance(n, n) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn v_min_is_basis_invariant() {
        let ens = SpinEnsemble::three();
        let mut r = rng(29);
        let rho = random_density(&mut r, 8);
        let m = SpinMoments::of(&rho, &ens).unwrap();
        let n = random_unit_vector(&mut r);
        let (e1, e2) = perpendicular_basis(n).unwrap();
        let (reference, _) = m.min_perpendicular_variance(n).unwrap();
        for _ in 0..20 {
            let a: f64 = r.gen_range(0.0..2.0 * PI);
            let f1 = [0, 1, 2].map(|i| a.cos() * e1[i] + a.sin() * e2[i]);
            let f2 = cross(n, f1);
            let (v, _) = min_eigen_2x2(m.covariance(f1, f1), m.covariance(f2, f2), m.covariance(f1, f2));
            assert!((v - reference).abs() < 1e-12);
        }
    }

    #[test]
    fn in_plane_variance_is_pi_periodic() {
        let ens = SpinEnsemble::three();
        let mut r = rng(31);
        let rho = random_density(&mut r, 8);
        let (e1, e2) = perpendicular_basis(random_unit_vector(&mut r)).unwrap();
        for k in 0..100 {
            let phi = 2.0 * PI * k as f64 / 100.0;
            let at = |p: f64| {
                let u = [0, 1, 2].map(|i| p.cos() * e1[i] + p.sin() * e2[i]);
                variance_along(&rho, u, &ens).unwrap()
            };
            assert!((at(phi) - at(phi + PI)).abs() < 1e-12);
        }
    }

    #[test]
    fn coherent_states_have_unit_epsilon() {
        let ens = SpinEnsemble::three();
        let mut r = rng(37);
        for _ in 0..10 {
            let theta: f64 = r.gen_range(0.0..PI);
            let phi: f64 = r.gen_range(0.0..2.0 * PI);
            let rho = density_from_pure(&PureState::product(3, theta, phi)).unwrap();
            let eval = evaluate(&rho, Direction::z(), DirectionMode::Mean, &ens).unwrap();
            assert!(!eval.degenerate_mean);
            assert!((eval.result.epsilon - 1.0).abs() < 1e-10);
            assert!((eval.result.mean_spin.norm() - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn mean_directions() {
        let ens = SpinEnsemble::three();
        assert_eq!(mean_spin_direction(&ground(), &ens).unwrap(), MeanDirection::Defined(Direction::z()));
        match mean_spin_direction(&w(), &ens).unwrap() {
            MeanDirection::Defined(d) => assert!(d.theta_deg().abs() < 1e-12),
            MeanDirection::Degenerate => panic!("W has a mean spin"),
        }
        assert_eq!(mean_spin_direction(&ghz(), &ens).unwrap(), MeanDirection::Degenerate);
        let eval = evaluate(&ghz(), Direction::z(), DirectionMode::Mean, &ens).unwrap();
        assert!(eval.degenerate_mean);
    }

    #[test]
    fn direction_ranges() {
        assert!(Direction::new(181.0, 0.0).is_err());
        assert!(Direction::new(0.0, 360.0).is_err());
        assert!(Direction::new(-1.0, 0.0).is_err());
        let d = Direction::new(90.0, 90.0).unwrap();
        let u = d.unit_vector();
        assert!((norm(u) - 1.0).abs() < 1e-14);
        assert!(u[0].abs() < 1e-15 && (u[1] - 1.0).abs() < 1e-15 && u[2].abs() < 1e-15);
        let back = Direction::from_vector([-1.0, -1.0, 0.0]).unwrap();
        assert!((back.phi_deg() - 225.0).abs() < 1e-12 && (back.theta_deg() - 90.0).abs() < 1e-12);
    }

    #[test]
    fn mismatched_dimension_is_rejected() {
        let ens = SpinEnsemble::new(2).unwrap();
        assert!(matches!(mean_spin_vector(&ghz(), &ens), Err(Error::DimensionMismatch { .. })));
    }
}

//! Built-in invariant checks run by the `check` subcommand.

use std::f64::consts::PI;

use crate::channels::{
    amplitude_damping_kraus_positive_exponent, apply_channel_all_qubits, apply_single_qubit, builtin,
    depolarizing_kraus, validate_kraus, ChannelParam, KrausSet,
};
use crate::error::Result;
use crate::qstate::{density_from_pure, superposition_state, ComplexMatrix, DensityMatrix, PureState, SuperpositionSpec};
use crate::spin::{evaluate, perpendicular_basis, Direction, DirectionMode, SpinEnsemble, SpinMoments, Vec3};
use crate::sweep::inclusive_range;

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    /// Replace the amplitude damping set with its positive-exponent variant,
    /// which is not trace preserving.
    pub inject_positive_exponent: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst deviation observed.
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, deviation: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name,
            passed: deviation < tolerance,
            deviation,
            tolerance,
            detail,
        }
    }
}

pub fn run_checks(opts: CheckOptions) -> Result<Vec<CheckResult>> {
    Ok(vec![
        kraus_completeness(opts)?,
        variance_oracle()?,
        coherent_state_baseline()?,
        identity_at_zero()?,
        depolarizing_fixed_point()?,
    ])
}

fn kraus_set(channel: &str, gamma_t: f64, opts: CheckOptions) -> Result<KrausSet> {
    let ch = builtin().get(channel)?;
    let p = ChannelParam::new(gamma_t)?;
    Ok(if opts.inject_positive_exponent && ch.name() == "amplitude" {
        amplitude_damping_kraus_positive_exponent(p)
    } else {
        ch.kraus(p)
    })
}

fn kraus_completeness(opts: CheckOptions) -> Result<CheckResult> {
    let mut worst = (0.0, String::new());
    for name in builtin().names() {
        for g in inclusive_range(0.0, 5.0, 0.1)? {
            let dev = validate_kraus(&kraus_set(name, g, opts)?).max_deviation;
            if dev > worst.0 || worst.1.is_empty() {
                worst = (dev, format!("{name} at gamma_t={g}"));
            }
        }
    }
    Ok(CheckResult::new(
        "kraus-completeness",
        worst.0,
        crate::channels::COMPLETENESS_TOL,
        format!("max |sum E^dag E - I| over gamma_t in [0, 5]; worst: {}", worst.1),
    ))
}

/// Scans 3600 in-plane angles on the explicit operator `J(φ)`, then refines
/// the best bracket by golden-section search.
pub fn brute_force_min_variance(rho: &DensityMatrix, n: Vec3, ensemble: &SpinEnsemble) -> Result<f64> {
    const STEPS: usize = 3600;
    let (e1, e2) = perpendicular_basis(n)?;
    let m = rho.matrix();
    let at = |phi: f64| -> Result<f64> {
        let u = [0, 1, 2].map(|i| phi.cos() * e1[i] + phi.sin() * e2[i]);
        let op = ensemble.along(u);
        let mean = m.trace_product(&op)?.re;
        Ok(m.trace_product(&(&op * &op))?.re - mean * mean)
    };
    let h = PI / STEPS as f64;
    let mut best = (0usize, f64::INFINITY);
    for k in 0..STEPS {
        let v = at(h * k as f64)?;
        if v < best.1 {
            best = (k, v);
        }
    }
    let (mut a, mut b) = (h * (best.0 as f64 - 1.0), h * (best.0 as f64 + 1.0));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..80 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        if at(c)? < at(d)? {
            b = d;
        } else {
            a = c;
        }
    }
    Ok(best.1.min(at(0.5 * (a + b))?))
}

fn sample_states() -> Result<Vec<DensityMatrix>> {
    let mut out = Vec::new();
    for alpha in [0.0, 0.3, 0.5, 0.9, 1.0] {
        let rho = density_from_pure(&superposition_state(SuperpositionSpec::new(alpha)?))?;
        for name in builtin().names() {
            for g in [0.4, 1.5] {
                out.push(apply_channel_all_qubits(&rho, &builtin().get(name)?.kraus(ChannelParam::new(g)?), 3)?);
            }
        }
        out.push(rho);
    }
    Ok(out)
}

fn variance_oracle() -> Result<CheckResult> {
    let ens = SpinEnsemble::three();
    let dirs = [(0.0, 0.0), (30.0, 60.0), (60.0, 150.0), (90.0, 90.0), (123.0, 321.0)];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for rho in sample_states()? {
        let moments = SpinMoments::of(&rho, &ens)?;
        for (t, p) in dirs {
            let n = Direction::new(t, p)?.unit_vector();
            let (closed, _) = moments.min_perpendicular_variance(n)?;
            worst = worst.max((closed - brute_force_min_variance(&rho, n, &ens)?).abs());
            count += 1;
        }
    }
    Ok(CheckResult::new(
        "variance-oracle",
        worst,
        1e-9,
        format!("closed-form vs brute-force minimum over {count} (state, direction) pairs"),
    ))
}

fn coherent_state_baseline() -> Result<CheckResult> {
    let ens = SpinEnsemble::three();
    let mut worst: f64 = 0.0;
    for (t, p) in [(0.0, 0.0), (0.7, 1.1), (1.6, 4.0), (2.9, 0.3), (PI, 0.0)] {
        let rho = density_from_pure(&PureState::product(3, t, p))?;
        let eval = evaluate(&rho, Direction::z(), DirectionMode::Mean, &ens)?;
        worst = worst.max((eval.result.epsilon - 1.0).abs());
    }
    Ok(CheckResult::new(
        "coherent-state-baseline",
        worst,
        1e-10,
        "|epsilon - 1| for aligned product states along their mean spin".into(),
    ))
}

fn identity_at_zero() -> Result<CheckResult> {
    let mut worst: f64 = 0.0;
    for rho in sample_states()? {
        for name in builtin().names() {
            let out = apply_channel_all_qubits(&rho, &builtin().get(name)?.kraus(ChannelParam::new(0.0)?), 3)?;
            worst = worst.max(out.matrix().max_abs_diff(rho.matrix())?);
        }
    }
    Ok(CheckResult::new(
        "identity-at-zero",
        worst,
        1e-14,
        "max |rho' - rho| at gamma_t = 0 for every channel".into(),
    ))
}

fn depolarizing_fixed_point() -> Result<CheckResult> {
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    let mut worst: f64 = 0.0;
    for g in [0.0, 0.5, 1.0, 5.0, 20.0] {
        let out = apply_single_qubit(&half, &depolarizing_kraus(ChannelParam::new(g)?));
        worst = worst.max(out.max_abs_diff(&half)?);
    }
    Ok(CheckResult::new(
        "depolarizing-fixed-point",
        worst,
        1e-14,
        "max |E(I/2) - I/2| for the single-qubit depolarizing map".into(),
    ))
}

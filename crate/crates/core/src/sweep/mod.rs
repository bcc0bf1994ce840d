//! Parameter sweeps over superposition weight, reference direction and
//! decoherence exposure, and the analyses built on them.

pub mod grid;
pub mod io;
pub mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::{self, apply_channel_all_qubits, ChannelParam, ChannelRegistry};
use crate::error::{Error, Result};
use crate::qstate::{density_from_pure, superposition_state, SuperpositionSpec};
use crate::spin::{evaluate_moments, Direction, DirectionMode, SpinEnsemble, SpinMoments};

pub use grid::{inclusive_range, parse_grid};

/// Qubits in every sweep.
pub const N_QUBITS: usize = 3;

/// Slack on the `ε ≥ 1` test for "no squeezing".
pub const DEFAULT_TOL: f64 = 1e-9;

/// What to evaluate: one record per `(α, θ, φ, γt)` grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub channel: String,
    pub alpha_grid: Vec<f64>,
    pub theta_grid_deg: Vec<f64>,
    pub phi_grid_deg: Vec<f64>,
    pub gamma_t_grid: Vec<f64>,
    pub direction_mode: DirectionMode,
}

impl SweepSpec {
    /// α ∈ {0, 0.1, …, 1}, θ ∈ {0, 30, 60, 90}, φ ∈ {0, 30, …, 180},
    /// γt ∈ {0, 0.05, …, 5}.
    pub fn defaults(channel: impl Into<String>) -> Self {
        Self {
            channel: channel.into(),
            alpha_grid: default_alpha_grid(),
            theta_grid_deg: inclusive_range(0.0, 90.0, 30.0).expect("static range"),
            phi_grid_deg: inclusive_range(0.0, 180.0, 30.0).expect("static range"),
            gamma_t_grid: default_gamma_t_grid(),
            direction_mode: DirectionMode::Given,
        }
    }

    pub fn len(&self) -> usize {
        self.alpha_grid.len() * self.theta_grid_deg.len() * self.phi_grid_deg.len() * self.gamma_t_grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        for (name, grid) in [
            ("alpha", &self.alpha_grid),
            ("theta", &self.theta_grid_deg),
            ("phi", &self.phi_grid_deg),
            ("gamma_t", &self.gamma_t_grid),
        ] {
            if grid.is_empty() {
                return Err(Error::domain(format!("{name} grid is empty")));
            }
        }
        for &a in &self.alpha_grid {
            SuperpositionSpec::new(a)?;
        }
        for &t in &self.theta_grid_deg {
            for &p in &self.phi_grid_deg {
                Direction::new(t, p)?;
            }
        }
        if self.gamma_t_grid[0] != 0.0 {
            return Err(Error::domain("gamma_t grid must start at 0"));
        }
        if self.gamma_t_grid.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
            return Err(Error::domain("gamma_t grid must be strictly ascending"));
        }
        for &g in &self.gamma_t_grid {
            if !g.is_finite() {
                return Err(Error::domain("gamma_t grid values must be finite"));
            }
        }
        Ok(())
    }
}

pub fn default_alpha_grid() -> Vec<f64> {
    inclusive_range(0.0, 1.0, 0.1).expect("static range")
}

pub fn default_gamma_t_grid() -> Vec<f64> {
    inclusive_range(0.0, 5.0, 0.05).expect("static range")
}

/// The α values probed by [`alpha_sensitivity_scan`].
pub fn fine_alpha_grid() -> Vec<f64> {
    inclusive_range(0.0, 1.0, 0.05).expect("static range")
}

/// One evaluated grid point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub channel: String,
    pub alpha: f64,
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub gamma_t: f64,
    pub epsilon: f64,
    #[serde(rename = "vmin")]
    pub v_min: f64,
    pub phi_star_rad: f64,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub degenerate_mean: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

/// Runs `spec` against the built-in channels in parallel.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    run_sweep_with(channels::builtin(), spec, Execution::Parallel)
}

/// Evolves every `(α, γt)` state once, then evaluates each reference
/// direction on its spin moments. Records come back sorted by
/// `(α, θ, φ, γt)` whatever the execution mode.
pub fn run_sweep_with(registry: &ChannelRegistry, spec: &SweepSpec, exec: Execution) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let channel = registry.get(&spec.channel)?;
    let ensemble = SpinEnsemble::new(N_QUBITS)?;

    let kraus = spec
        .gamma_t_grid
        .iter()
        .map(|&g| Ok(channel.kraus(ChannelParam::new(g)?)))
        .collect::<Result<Vec<_>>>()?;
    let initial = spec
        .alpha_grid
        .iter()
        .map(|&a| density_from_pure(&superposition_state(SuperpositionSpec::new(a)?)))
        .collect::<Result<Vec<_>>>()?;

    let pairs: Vec<(usize, usize)> = (0..initial.len())
        .flat_map(|i| (0..kraus.len()).map(move |j| (i, j)))
        .collect();
    let evolve = |&(i, j): &(usize, usize)| -> Result<SpinMoments> {
        let rho = apply_channel_all_qubits(&initial[i], &kraus[j], N_QUBITS)?;
        SpinMoments::of(&rho, &ensemble)
    };
    let moments: Vec<SpinMoments> = match exec {
        Execution::Serial => pairs.iter().map(evolve).collect::<Result<_>>()?,
        Execution::Parallel => pairs.par_iter().map(evolve).collect::<Result<_>>()?,
    };

    let directions: Vec<(f64, f64, Direction)> = spec
        .theta_grid_deg
        .iter()
        .flat_map(|&t| spec.phi_grid_deg.iter().map(move |&p| (t, p)))
        .map(|(t, p)| Ok((t, p, Direction::new(t, p)?)))
        .collect::<Result<_>>()?;

    let n_gamma = spec.gamma_t_grid.len();
    let mut records = Vec::with_capacity(spec.len());
    for (i, &alpha) in spec.alpha_grid.iter().enumerate() {
        for &(theta_deg, phi_deg, dir) in &directions {
            for (j, &gamma_t) in spec.gamma_t_grid.iter().enumerate() {
                let eval = evaluate_moments(&moments[i * n_gamma + j], dir, spec.direction_mode, N_QUBITS)?;
                let r = eval.result;
                records.push(SweepRecord {
                    channel: channel.name().to_owned(),
                    alpha,
                    theta_deg,
                    phi_deg,
                    gamma_t,
                    epsilon: r.epsilon,
                    v_min: r.v_min,
                    phi_star_rad: r.phi_star_rad,
                    jx: r.mean_spin.jx,
                    jy: r.mean_spin.jy,
                    jz: r.mean_spin.jz,
                    degenerate_mean: eval.degenerate_mean,
                });
            }
        }
    }
    records.sort_by(|a, b| {
        a.alpha
            .total_cmp(&b.alpha)
            .then(a.theta_deg.total_cmp(&b.theta_deg))
            .then(a.phi_deg.total_cmp(&b.phi_deg))
            .then(a.gamma_t.total_cmp(&b.gamma_t))
    });
    Ok(records)
}

/// Whether a reference direction showed no squeezing anywhere on the
/// `(α, γt)` grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoSqueezeVerdict {
    pub theta_deg: f64,
    pub phi_deg: f64,
    /// `min_epsilon_over_grid ≥ 1 − tol`
    pub flagged: bool,
    pub min_epsilon_over_grid: f64,
    pub alpha_at_min: f64,
    pub gamma_t_at_min: f64,
}

/// One verdict per `(θ, φ)` in the spec's grid order.
pub fn detect_no_squeezing(spec: &SweepSpec, tol: f64) -> Result<Vec<NoSqueezeVerdict>> {
    check_tol(tol)?;
    let records = run_sweep(spec)?;
    Ok(verdicts_from_records(&records, tol))
}

/// Groups records by `(θ, φ)` and reduces each group to its minimum ε.
pub fn verdicts_from_records(records: &[SweepRecord], tol: f64) -> Vec<NoSqueezeVerdict> {
    let mut out: Vec<NoSqueezeVerdict> = Vec::new();
    for r in records {
        let slot = out
            .iter_mut()
            .find(|v| v.theta_deg == r.theta_deg && v.phi_deg == r.phi_deg);
        match slot {
            Some(v) if r.epsilon < v.min_epsilon_over_grid => {
                v.min_epsilon_over_grid = r.epsilon;
                v.alpha_at_min = r.alpha;
                v.gamma_t_at_min = r.gamma_t;
            }
            Some(_) => {}
            None => out.push(NoSqueezeVerdict {
                theta_deg: r.theta_deg,
                phi_deg: r.phi_deg,
                flagged: false,
                min_epsilon_over_grid: r.epsilon,
                alpha_at_min: r.alpha,
                gamma_t_at_min: r.gamma_t,
            }),
        }
    }
    out.sort_by(|a, b| a.theta_deg.total_cmp(&b.theta_deg).then(a.phi_deg.total_cmp(&b.phi_deg)));
    for v in &mut out {
        v.flagged = v.min_epsilon_over_grid >= 1.0 - tol;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub alpha: f64,
    pub min_epsilon: f64,
    pub gamma_t_at_min: f64,
    pub unsqueezed: bool,
}

/// Minimum ε over γt for each α at one reference direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaScan {
    pub channel: String,
    pub theta_deg: f64,
    pub phi_deg: f64,
    pub entries: Vec<AlphaEntry>,
}

impl AlphaScan {
    pub fn unsqueezed_alphas(&self) -> Vec<f64> {
        self.entries.iter().filter(|e| e.unsqueezed).map(|e| e.alpha).collect()
    }

    pub fn entry(&self, alpha: f64) -> Option<&AlphaEntry> {
        self.entries.iter().find(|e| (e.alpha - alpha).abs() < 1e-12)
    }

    /// Whether α = 0.9 never dips below `1 − tol`.
    pub fn alpha_09_unsqueezed(&self) -> Option<bool> {
        self.entry(0.9).map(|e| e.unsqueezed)
    }
}

/// Scans α ∈ {0, 0.05, …, 1} at a single direction.
pub fn alpha_sensitivity_scan(
    channel: &str,
    dir: Direction,
    gamma_t_grid: &[f64],
    tol: f64,
) -> Result<AlphaScan> {
    let mut scans = alpha_sensitivity_scans(channel, &[dir], gamma_t_grid, tol)?;
    Ok(scans.remove(0))
}

/// [`alpha_sensitivity_scan`] for several directions sharing one evolution.
pub fn alpha_sensitivity_scans(
    channel: &str,
    dirs: &[Direction],
    gamma_t_grid: &[f64],
    tol: f64,
) -> Result<Vec<AlphaScan>> {
    check_tol(tol)?;
    if dirs.is_empty() {
        return Ok(Vec::new());
    }
    let mut thetas: Vec<f64> = dirs.iter().map(|d| d.theta_deg()).collect();
    let mut phis: Vec<f64> = dirs.iter().map(|d| d.phi_deg()).collect();
    for g in [&mut thetas, &mut phis] {
        g.sort_by(f64::total_cmp);
        g.dedup();
    }
    let spec = SweepSpec {
        channel: channel.to_owned(),
        alpha_grid: fine_alpha_grid(),
        theta_grid_deg: thetas,
        phi_grid_deg: phis,
        gamma_t_grid: gamma_t_grid.to_vec(),
        direction_mode: DirectionMode::Given,
    };
    let records = run_sweep(&spec)?;
    Ok(dirs
        .iter()
        .map(|d| alpha_scan_from_records(&records, d.theta_deg(), d.phi_deg(), tol))
        .collect())
}

/// Per-α minima for one `(θ, φ)` out of an existing sweep.
pub fn alpha_scan_from_records(records: &[SweepRecord], theta_deg: f64, phi_deg: f64, tol: f64) -> AlphaScan {
    let mut entries: Vec<AlphaEntry> = Vec::new();
    let mut channel = String::new();
    for r in records.iter().filter(|r| r.theta_deg == theta_deg && r.phi_deg == phi_deg) {
        channel.clone_from(&r.channel);
        match entries.iter_mut().find(|e| e.alpha == r.alpha) {
            Some(e) if r.epsilon < e.min_epsilon => {
                e.min_epsilon = r.epsilon;
                e.gamma_t_at_min = r.gamma_t;
            }
            Some(_) => {}
            None => entries.push(AlphaEntry {
                alpha: r.alpha,
                min_epsilon: r.epsilon,
                gamma_t_at_min: r.gamma_t,
                unsqueezed: false,
            }),
        }
    }
    for e in &mut entries {
        e.unsqueezed = e.min_epsilon >= 1.0 - tol;
    }
    AlphaScan {
        channel,
        theta_deg,
        phi_deg,
        entries,
    }
}

/// Whether initially squeezed points stay squeezed for every `γt > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PersistenceSummary {
    pub channel: String,
    pub gamma_t_max: f64,
    /// `(α, θ, φ)` points with `ε(0) < 1`.
    pub initially_squeezed: usize,
    /// Of those, how many keep `ε(γt) < 1` at every sampled `γt > 0`.
    pub persistent: usize,
    /// Largest `ε` at the final `γt` among persistent points; still below 1
    /// means squeezing has not vanished by the end of the grid.
    pub worst_final_epsilon: Option<f64>,
    /// A persistent point with the deepest initial squeezing, as
    /// `(α, θ, φ, ε(0), ε(γt_max))`.
    pub example: Option<(f64, f64, f64, f64, f64)>,
    /// Points that become squeezed only after decoherence starts.
    pub generated_by_noise: usize,
}

impl PersistenceSummary {
    pub fn any_persistent(&self) -> bool {
        self.persistent > 0
    }
}

/// Reads sorted sweep records in `(α, θ, φ)` blocks of ascending γt. A
/// point counts as squeezed when `ε < 1 − tol`.
pub fn persistence_summary(records: &[SweepRecord], tol: f64) -> PersistenceSummary {
    let squeezed = |r: &SweepRecord| r.epsilon < 1.0 - tol;
    let mut summary = PersistenceSummary {
        channel: records.first().map(|r| r.channel.clone()).unwrap_or_default(),
        gamma_t_max: records.iter().map(|r| r.gamma_t).fold(0.0, f64::max),
        initially_squeezed: 0,
        persistent: 0,
        worst_final_epsilon: None,
        example: None,
        generated_by_noise: 0,
    };
    for block in records.chunk_by(|a, b| a.alpha == b.alpha && a.theta_deg == b.theta_deg && a.phi_deg == b.phi_deg) {
        let Some(first) = block.first().filter(|r| r.gamma_t == 0.0) else {
            continue;
        };
        let later = &block[1..];
        if !squeezed(first) {
            if later.iter().any(squeezed) {
                summary.generated_by_noise += 1;
            }
            continue;
        }
        summary.initially_squeezed += 1;
        if later.iter().all(squeezed) {
            summary.persistent += 1;
            let last = block.last().expect("non-empty").epsilon;
            summary.worst_final_epsilon = Some(summary.worst_final_epsilon.map_or(last, |w: f64| w.max(last)));
            if summary.example.is_none_or(|e| first.epsilon < e.3) {
                summary.example = Some((first.alpha, first.theta_deg, first.phi_deg, first.epsilon, last));
            }
        }
    }
    summary
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(channel: &str, alpha: f64, theta: f64, phi: f64, gammas: Vec<f64>) -> SweepSpec {
        SweepSpec {
            channel: channel.into(),
            alpha_grid: vec![alpha],
            theta_grid_deg: vec![theta],
            phi_grid_deg: vec![phi],
            gamma_t_grid: gammas,
            direction_mode: DirectionMode::Given,
        }
    }

    #[test]
    fn default_grid_cardinality() {
        let spec = SweepSpec::defaults("depolarizing");
        assert_eq!(spec.len(), 11 * 4 * 7 * 101);
        spec.validate().unwrap();
    }

    #[test]
    fn invalid_specs_rejected() {
        let mut spec = single("phase", 0.5, 0.0, 0.0, vec![0.0, 1.0]);
        spec.gamma_t_grid = vec![0.5, 1.0];
        assert!(spec.validate().is_err());
        spec.gamma_t_grid = vec![0.0, 1.0, 1.0];
        assert!(spec.validate().is_err());
        spec.gamma_t_grid = vec![0.0];
        spec.alpha_grid = vec![1.2];
        assert!(spec.validate().is_err());
        spec.alpha_grid = vec![];
        assert!(spec.validate().is_err());
        let unknown = single("bitflip", 0.5, 0.0, 0.0, vec![0.0]);
        assert!(matches!(run_sweep(&unknown), Err(Error::UnknownChannel(_))));
    }

    #[test]
    fn single_point_is_static_state() {
        let recs = run_sweep(&single("depolarizing", 0.5, 0.0, 0.0, vec![0.0])).unwrap();
        assert_eq!(recs.len(), 1);
        let ens = SpinEnsemble::three();
        let rho = density_from_pure(&superposition_state(SuperpositionSpec::new(0.5).unwrap())).unwrap();
        let direct = crate::spin::squeezing_parameter(&rho, Direction::z(), &ens).unwrap();
        assert_eq!(recs[0].epsilon, direct.epsilon);
        assert!(!recs[0].degenerate_mean);
    }

    #[test]
    fn depolarizing_tends_to_unit_epsilon() {
        let recs = run_sweep(&single("depolarizing", 0.3, 60.0, 30.0, default_gamma_t_grid())).unwrap();
        let last = recs.last().unwrap();
        assert_eq!(last.gamma_t, 5.0);
        // ε − 1 shrinks as e^{−2γt}
        let first = &recs[0];
        let ratio = (last.epsilon - 1.0) / (first.epsilon - 1.0);
        assert!((ratio - (-10.0f64).exp()).abs() < 1e-9, "{ratio}");
    }

    #[test]
    fn ghz_starts_unsqueezed_under_amplitude_damping() {
        let recs = run_sweep(&single("amplitude", 1.0, 0.0, 0.0, default_gamma_t_grid())).unwrap();
        assert!((recs[0].epsilon - 1.0).abs() < 1e-12);
    }

    #[test]
    fn records_satisfy_ku_relation() {
        let mut spec = SweepSpec::defaults("phase");
        spec.gamma_t_grid = vec![0.0, 0.5, 2.0];
        for r in run_sweep(&spec).unwrap() {
            assert!((r.epsilon - 4.0 * r.v_min / 3.0).abs() < 1e-12);
            assert!(r.epsilon >= 0.0);
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let mut spec = SweepSpec::defaults("amplitude");
        spec.gamma_t_grid = vec![0.0, 0.3, 1.7];
        let a = run_sweep_with(channels::builtin(), &spec, Execution::Serial).unwrap();
        let b = run_sweep_with(channels::builtin(), &spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn records_are_in_canonical_order() {
        let spec = SweepSpec {
            channel: "phase".into(),
            alpha_grid: vec![0.7, 0.2],
            theta_grid_deg: vec![90.0, 0.0],
            phi_grid_deg: vec![60.0, 30.0],
            gamma_t_grid: vec![0.0, 1.0],
            direction_mode: DirectionMode::Given,
        };
        let recs = run_sweep(&spec).unwrap();
        let keys: Vec<_> = recs.iter().map(|r| (r.alpha, r.theta_deg, r.phi_deg, r.gamma_t)).collect();
        let mut sorted = keys.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(keys, sorted);
    }

    #[test]
    fn mean_mode_flags_ghz() {
        let mut spec = single("phase", 1.0, 0.0, 0.0, vec![0.0]);
        spec.direction_mode = DirectionMode::Mean;
        assert!(run_sweep(&spec).unwrap()[0].degenerate_mean);
    }

    #[test]
    fn verdict_flag_matches_minimum() {
        let mut spec = SweepSpec::defaults("amplitude");
        spec.gamma_t_grid = vec![0.0, 1.0, 3.0];
        for v in detect_no_squeezing(&spec, DEFAULT_TOL).unwrap() {
            assert_eq!(v.flagged, v.min_epsilon_over_grid >= 1.0 - DEFAULT_TOL);
        }
        assert!(detect_no_squeezing(&spec, 0.0).is_err());
    }

    #[test]
    fn refining_gamma_grid_never_raises_minimum() {
        let mut coarse = SweepSpec::defaults("phase");
        coarse.gamma_t_grid = vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0];
        let mut fine = coarse.clone();
        fine.gamma_t_grid = inclusive_range(0.0, 5.0, 0.25).unwrap();
        let c = detect_no_squeezing(&coarse, DEFAULT_TOL).unwrap();
        let f = detect_no_squeezing(&fine, DEFAULT_TOL).unwrap();
        for (vc, vf) in c.iter().zip(&f) {
            assert!(vf.min_epsilon_over_grid <= vc.min_epsilon_over_grid);
            assert!(!vf.flagged || vc.flagged);
        }
    }

    #[test]
    fn alpha_scan_on_pure_ghz() {
        let scan = alpha_sensitivity_scan("amplitude", Direction::z(), &[0.0], DEFAULT_TOL).unwrap();
        assert_eq!(scan.entries.len(), 21);
        let ghz = scan.entry(1.0).unwrap();
        assert!((ghz.min_epsilon - 1.0).abs() < 1e-12);
        assert!(scan.alpha_09_unsqueezed().is_some());
    }

    #[test]
    fn persistence_of_depolarized_squeezing() {
        let spec = SweepSpec {
            gamma_t_grid: inclusive_range(0.0, 5.0, 0.5).unwrap(),
            ..SweepSpec::defaults("depolarizing")
        };
        let summary = persistence_summary(&run_sweep(&spec).unwrap(), DEFAULT_TOL);
        // depolarizing rescales ε − 1 by e^{−2γt}, so squeezing never flips sign
        assert_eq!(summary.initially_squeezed, summary.persistent);
        assert_eq!(summary.generated_by_noise, 0);
    }
}

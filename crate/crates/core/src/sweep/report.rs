//! Side-by-side comparison of published no-squeezing claims with computed
//! sweeps. The report is plain text and always lists every claim, marking
//! the ones whose inputs were not computed as `NOT-RUN`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use super::{
    alpha_sensitivity_scans, default_gamma_t_grid, persistence_summary, run_sweep, verdicts_from_records,
    AlphaScan, NoSqueezeVerdict, PersistenceSummary, SweepSpec,
};
use crate::error::{Error, Result};
use crate::spin::{Direction, DirectionMode};

const ANGLE_TOL: f64 = 1e-9;

/// Directions reported as never squeezing, for any α, under amplitude and phase damping.
pub const NO_SQUEEZE_ROWS: [(f64, f64); 10] = [
    (0.0, 0.0),
    (0.0, 30.0),
    (0.0, 60.0),
    (0.0, 90.0),
    (0.0, 120.0),
    (0.0, 150.0),
    (0.0, 180.0),
    (30.0, 0.0),
    (90.0, 0.0),
    (90.0, 180.0),
];

/// The published claims the report checks.
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceClaims {
    pub no_squeeze_rows: Vec<(f64, f64)>,
    /// Channels the no-squeezing table applies to.
    pub table_channels: Vec<String>,
    /// Superposition weight reported to stay unsqueezed.
    pub unsqueezed_alpha: f64,
    pub unsqueezed_alpha_channels: Vec<String>,
    /// Channel said to squeeze along every θ = 0 direction for every α, and
    /// to keep that squeezing for all γt.
    pub persistent_channel: String,
}

impl ReferenceClaims {
    pub fn published() -> Self {
        Self {
            no_squeeze_rows: NO_SQUEEZE_ROWS.to_vec(),
            table_channels: vec!["amplitude".into(), "phase".into()],
            unsqueezed_alpha: 0.9,
            unsqueezed_alpha_channels: vec!["amplitude".into(), "phase".into()],
            persistent_channel: "depolarizing".into(),
        }
    }

    fn theta_zero_rows(&self) -> Vec<(f64, f64)> {
        self.no_squeeze_rows.iter().copied().filter(|r| r.0 == 0.0).collect()
    }

    /// Default-grid directions not listed in the no-squeezing table.
    fn off_table_directions(&self) -> Vec<(f64, f64)> {
        let spec = SweepSpec::defaults("");
        let mut out = Vec::new();
        for &t in &spec.theta_grid_deg {
            for &p in &spec.phi_grid_deg {
                if !self.no_squeeze_rows.iter().any(|r| same_dir(*r, (t, p))) {
                    out.push((t, p));
                }
            }
        }
        out
    }
}

/// Computed quantities fed to [`discrepancy_report`]; every field is optional.
#[derive(Clone, Debug, Default)]
pub struct ReproductionInputs {
    pub tol: f64,
    pub direction_mode: DirectionMode,
    pub verdicts: BTreeMap<String, Vec<NoSqueezeVerdict>>,
    pub alpha_scans: BTreeMap<String, Vec<AlphaScan>>,
    pub persistence: Option<PersistenceSummary>,
}

impl ReproductionInputs {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }
}

/// Runs the default-grid analyses the report needs for each channel.
pub fn reproduce(channels: &[&str], claims: &ReferenceClaims, tol: f64) -> Result<ReproductionInputs> {
    let mut inputs = ReproductionInputs::new(tol);
    for &channel in channels {
        let spec = SweepSpec::defaults(channel);
        let records = run_sweep(&spec)?;
        let name = records
            .first()
            .map(|r| r.channel.clone())
            .ok_or_else(|| Error::domain("default sweep produced no records"))?;
        inputs.verdicts.insert(name.clone(), verdicts_from_records(&records, tol));
        let scan_dirs = if name == claims.persistent_channel {
            inputs.persistence = Some(persistence_summary(&records, tol));
            claims.theta_zero_rows()
        } else {
            claims.off_table_directions()
        };
        let dirs = scan_dirs
            .into_iter()
            .map(|(t, p)| Direction::new(t, p))
            .collect::<Result<Vec<_>>>()?;
        let scans = alpha_sensitivity_scans(&name, &dirs, &default_gamma_t_grid(), tol)?;
        inputs.alpha_scans.insert(name, scans);
    }
    Ok(inputs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    NotRun,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "MATCH",
            Status::Mismatch => "MISMATCH",
            Status::NotRun => "NOT-RUN",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClaimLine {
    pub status: Status,
    pub claim: String,
    pub computed: String,
    /// Supporting detail printed beneath the claim.
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<ClaimLine>,
}

impl Section {
    pub fn count(&self, status: Status) -> usize {
        self.lines.iter().filter(|l| l.status == status).count()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscrepancyReport {
    pub tol: f64,
    pub direction_mode: DirectionMode,
    pub sections: Vec<Section>,
}

impl DiscrepancyReport {
    pub fn section(&self, title_prefix: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title.starts_with(title_prefix))
    }

    pub fn count(&self, status: Status) -> usize {
        self.sections.iter().map(|s| s.count(status)).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "spin squeezing reproduction report");
        let _ = writeln!(
            out,
            "no-squeezing criterion: epsilon >= 1 - {:e} at every (alpha, gamma_t) grid point",
            self.tol
        );
        let _ = writeln!(out, "direction mode: {}", self.direction_mode);
        for s in &self.sections {
            let _ = writeln!(out, "\n[{}]", s.title);
            for l in &s.lines {
                let _ = writeln!(out, "{:<9} {} | computed: {}", l.status.to_string(), l.claim, l.computed);
                for d in &l.details {
                    let _ = writeln!(out, "          {d}");
                }
            }
            let _ = writeln!(
                out,
                "summary: {} MATCH, {} MISMATCH, {} NOT-RUN",
                s.count(Status::Match),
                s.count(Status::Mismatch),
                s.count(Status::NotRun)
            );
        }
        let _ = writeln!(
            out,
            "\ntotal: {} MATCH, {} MISMATCH, {} NOT-RUN",
            self.count(Status::Match),
            self.count(Status::Mismatch),
            self.count(Status::NotRun)
        );
        out
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn same_dir(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < ANGLE_TOL && (a.1 - b.1).abs() < ANGLE_TOL
}

fn find_verdict(verdicts: &[NoSqueezeVerdict], row: (f64, f64)) -> Option<&NoSqueezeVerdict> {
    verdicts.iter().find(|v| same_dir((v.theta_deg, v.phi_deg), row))
}

fn describe(v: &NoSqueezeVerdict) -> String {
    format!(
        "{} (min epsilon {:.12} at alpha={}, gamma_t={})",
        if v.flagged { "no squeezing" } else { "squeezed" },
        v.min_epsilon_over_grid,
        v.alpha_at_min,
        v.gamma_t_at_min
    )
}

fn not_run(claim: String) -> ClaimLine {
    ClaimLine {
        status: Status::NotRun,
        claim,
        computed: "not computed".into(),
        details: Vec::new(),
    }
}

fn table_section(channel: &str, claims: &ReferenceClaims, inputs: &ReproductionInputs) -> Section {
    let verdicts = inputs.verdicts.get(channel);
    let lines = claims
        .no_squeeze_rows
        .iter()
        .map(|&row| {
            let claim = format!("theta={} phi={}: no squeezing for any alpha", row.0, row.1);
            match verdicts.and_then(|vs| find_verdict(vs, row)) {
                None => not_run(claim),
                Some(v) => ClaimLine {
                    status: if v.flagged { Status::Match } else { Status::Mismatch },
                    claim,
                    computed: describe(v),
                    details: Vec::new(),
                },
            }
        })
        .collect();
    Section {
        title: format!("no-squeezing table: {channel}"),
        lines,
    }
}

fn alpha_section(channel: &str, claims: &ReferenceClaims, inputs: &ReproductionInputs) -> Section {
    let alpha = claims.unsqueezed_alpha;
    let claim = format!("alpha={alpha} stays unsqueezed (epsilon >= 1) for every gamma_t");
    let line = match inputs.alpha_scans.get(channel).filter(|s| !s.is_empty()) {
        None => not_run(claim),
        Some(scans) => {
            let mut squeezed_at = Vec::new();
            let mut details = Vec::new();
            let mut worst: Option<(f64, f64, f64, f64)> = None;
            for scan in scans {
                let Some(e) = scan.entry(alpha) else { continue };
                if !e.unsqueezed {
                    squeezed_at.push((scan.theta_deg, scan.phi_deg));
                }
                if worst.is_none_or(|w| e.min_epsilon < w.2) {
                    worst = Some((scan.theta_deg, scan.phi_deg, e.min_epsilon, e.gamma_t_at_min));
                }
                details.push(format!(
                    "theta={} phi={}: min epsilon {:.12} at gamma_t={}; unsqueezed alphas {:?}",
                    scan.theta_deg,
                    scan.phi_deg,
                    e.min_epsilon,
                    e.gamma_t_at_min,
                    scan.unsqueezed_alphas()
                ));
            }
            match worst {
                None => not_run(claim),
                Some((t, p, eps, g)) => ClaimLine {
                    status: if squeezed_at.is_empty() { Status::Match } else { Status::Mismatch },
                    claim,
                    computed: format!(
                        "squeezed at {} of {} scanned directions; lowest epsilon {:.12} at theta={t} phi={p} gamma_t={g}",
                        squeezed_at.len(),
                        scans.len(),
                        eps
                    ),
                    details,
                },
            }
        }
    };
    Section {
        title: format!("alpha={alpha} insensitivity: {channel}"),
        lines: vec![line],
    }
}

fn persistent_channel_sections(claims: &ReferenceClaims, inputs: &ReproductionInputs) -> Vec<Section> {
    let channel = claims.persistent_channel.as_str();
    let verdicts = inputs.verdicts.get(channel);

    let mut z_lines: Vec<ClaimLine> = claims
        .theta_zero_rows()
        .into_iter()
        .map(|row| {
            let claim = format!("theta={} phi={}: squeezing is generated", row.0, row.1);
            match verdicts.and_then(|vs| find_verdict(vs, row)) {
                None => not_run(claim),
                Some(v) => ClaimLine {
                    status: if v.flagged { Status::Mismatch } else { Status::Match },
                    claim,
                    computed: describe(v),
                    details: Vec::new(),
                },
            }
        })
        .collect();
    let all_alpha_claim = "theta=0: squeezing for every alpha".to_owned();
    z_lines.push(match inputs.alpha_scans.get(channel).filter(|s| !s.is_empty()) {
        None => not_run(all_alpha_claim),
        Some(scans) => {
            let details: Vec<String> = scans
                .iter()
                .map(|s| format!("theta={} phi={}: never-squeezed alphas {:?}", s.theta_deg, s.phi_deg, s.unsqueezed_alphas()))
                .collect();
            let missing: usize = scans.iter().map(|s| s.unsqueezed_alphas().len()).sum();
            ClaimLine {
                status: if missing == 0 { Status::Match } else { Status::Mismatch },
                claim: all_alpha_claim,
                computed: format!("{missing} (alpha, direction) pairs never squeeze"),
                details,
            }
        }
    });

    let persist_claim = "squeezing decays slowly but never vanishes for gamma_t > 0".to_owned();
    let persist = match &inputs.persistence {
        None => not_run(persist_claim),
        Some(p) => {
            let mut details = Vec::new();
            if let Some((a, t, ph, e0, e_end)) = p.example {
                details.push(format!(
                    "deepest persistent point alpha={a} theta={t} phi={ph}: epsilon {e0:.12} -> {e_end:.12} at gamma_t={}",
                    p.gamma_t_max
                ));
            }
            if let Some(w) = p.worst_final_epsilon {
                details.push(format!("largest final epsilon among persistent points: {w:.12}"));
            }
            details.push(format!(
                "points squeezed only after decoherence sets in: {}",
                p.generated_by_noise
            ));
            ClaimLine {
                status: if p.any_persistent() { Status::Match } else { Status::Mismatch },
                claim: persist_claim,
                computed: format!(
                    "{} of {} initially squeezed (alpha, theta, phi) points keep epsilon < 1 for all gamma_t in (0, {}]",
                    p.persistent, p.initially_squeezed, p.gamma_t_max
                ),
                details,
            }
        }
    };

    vec![
        Section {
            title: format!("squeezing along z: {channel}"),
            lines: z_lines,
        },
        Section {
            title: format!("persistent squeezing: {channel}"),
            lines: vec![persist],
        },
    ]
}

/// Builds the full report. Claims without computed inputs are `NOT-RUN`.
pub fn discrepancy_report(inputs: &ReproductionInputs, claims: &ReferenceClaims) -> DiscrepancyReport {
    let mut sections = Vec::new();
    for ch in &claims.table_channels {
        sections.push(table_section(ch, claims, inputs));
    }
    for ch in &claims.unsqueezed_alpha_channels {
        sections.push(alpha_section(ch, claims, inputs));
    }
    sections.extend(persistent_channel_sections(claims, inputs));
    DiscrepancyReport {
        tol: inputs.tol,
        direction_mode: inputs.direction_mode,
        sections,
    }
}

pub fn write_report(report: &DiscrepancyReport, path: &Path) -> Result<()> {
    std::fs::write(path, report.render()).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

//! Parameter grids: `start:stop:step` ranges and comma-separated lists.

use crate::error::{Error, Result};

const MAX_POINTS: usize = 1_000_000;

/// Values kept to 12 decimals so that `0:1:0.1` yields `0.3`, not `0.30000000000000004`.
fn tidy(v: f64) -> f64 {
    let t = (v * 1e12).round() / 1e12;
    if t == 0.0 {
        0.0
    } else {
        t
    }
}

/// `start, start+step, …` up to `stop`; `stop` is included when
/// `stop − start` is a whole multiple of `step` within 1e-12.
pub fn inclusive_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::domain("range bounds must be finite"));
    }
    if step <= 0.0 {
        return Err(Error::domain(format!("range step must be positive, got {step}")));
    }
    if stop <= start {
        return Err(Error::domain(format!("empty range {start}:{stop}:{step}")));
    }
    let q = (stop - start) / step;
    let whole = q.round();
    let last = if (q - whole).abs() < 1e-12 { whole } else { q.floor() };
    if last >= MAX_POINTS as f64 {
        return Err(Error::domain(format!("range {start}:{stop}:{step} is too large")));
    }
    Ok((0..=last as usize).map(|i| tidy(start + i as f64 * step)).collect())
}

/// Parses `start:stop:step`, `a,b,c` or a single number.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    let number = |tok: &str| -> Result<f64> {
        tok.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| Error::domain(format!("invalid number `{}` in grid `{text}`", tok.trim())))
    };
    if text.is_empty() {
        return Err(Error::domain("empty grid"));
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::domain(format!("range `{text}` must have the form start:stop:step")));
        }
        return inclusive_range(number(parts[0])?, number(parts[1])?, number(parts[2])?);
    }
    text.split(',').map(number).collect()
}

//! Sweep-axis parsing and resolution: `--range start:stop` and `--steps N`
//! occur once per axis (in command order) or once to apply everywhere.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
}

impl FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("range '{s}' must look like start:stop"))?;
        let start: f64 = a
            .trim()
            .parse()
            .map_err(|_| format!("bad range start '{a}'"))?;
        let stop: f64 = b
            .trim()
            .parse()
            .map_err(|_| format!("bad range stop '{b}'"))?;
        if !start.is_finite() || !stop.is_finite() || stop < start {
            return Err(format!("range '{s}' must be finite with stop >= start"));
        }
        Ok(Range { start, stop })
    }
}

/// One sweep axis with its defaults and validity domain.
#[derive(Clone, Copy, Debug)]
pub struct Axis {
    pub name: &'static str,
    pub default_start: f64,
    pub default_stop: f64,
    pub default_steps: usize,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

/// Resolve per-axis grids from repeated `--range`/`--steps` flags.
///
/// Arity rules: zero occurrences use the axis defaults, one occurrence
/// applies to every axis, otherwise one occurrence per axis in order.
pub fn resolve_axes(
    axes: &[Axis],
    ranges: &[Range],
    steps: &[usize],
) -> Result<Vec<Vec<f64>>, UsageError> {
    let pick_range = |i: usize| -> Result<Range, UsageError> {
        match ranges.len() {
            0 => Ok(Range {
                start: axes[i].default_start,
                stop: axes[i].default_stop,
            }),
            1 => Ok(ranges[0]),
            n if n == axes.len() => Ok(ranges[i]),
            n => Err(UsageError(format!(
                "expected 0, 1, or {} --range flags, got {n}",
                axes.len()
            ))),
        }
    };
    let pick_steps = |i: usize| -> Result<usize, UsageError> {
        match steps.len() {
            0 => Ok(axes[i].default_steps),
            1 => Ok(steps[0]),
            n if n == axes.len() => Ok(steps[i]),
            n => Err(UsageError(format!(
                "expected 0, 1, or {} --steps flags, got {n}",
                axes.len()
            ))),
        }
    };

    let mut grids = Vec::with_capacity(axes.len());
    for (i, axis) in axes.iter().enumerate() {
        let r = pick_range(i)?;
        let n = pick_steps(i)?;
        if n < 2 {
            return Err(UsageError(format!(
                "axis {}: steps must be >= 2, got {n}",
                axis.name
            )));
        }
        if r.start < axis.min || r.stop > axis.max {
            return Err(UsageError(format!(
                "axis {}: range {}:{} outside validity domain [{}, {}]",
                axis.name, r.start, r.stop, axis.min, axis.max
            )));
        }
        grids.push(linspace(r.start, r.stop, n));
    }
    Ok(grids)
}

pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let h = (stop - start) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                stop
            } else {
                start + i as f64 * h
            }
        })
        .collect()
}

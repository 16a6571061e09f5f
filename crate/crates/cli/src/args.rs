//! Argument types shared by the subcommands.

use std::fmt;
use std::str::FromStr;

/// Inclusive numeric grid "min:max:step" with min < max and step > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| self.min + self.step * i as f64)
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected min:max:step, got {s:?}"));
        }
        let parse = |p: &str| -> Result<f64, String> {
            p.parse::<f64>()
                .map_err(|e| format!("bad number {p:?}: {e}"))
        };
        let spec = GridSpec {
            min: parse(parts[0])?,
            max: parse(parts[1])?,
            step: parse(parts[2])?,
        };
        if spec.min.partial_cmp(&spec.max) != Some(std::cmp::Ordering::Less) {
            return Err(format!("grid needs min < max, got {s:?}"));
        }
        if spec.step.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
            return Err(format!("grid needs step > 0, got {s:?}"));
        }
        Ok(spec)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.min, self.max, self.step)
    }
}

/// Resolves the "--xs a,b,c or --x-grid min:max:step" flag pair.
pub fn values_or_grid(
    explicit: &[f64],
    grid: Option<GridSpec>,
    flag: &str,
) -> Result<Vec<f64>, String> {
    match (explicit.is_empty(), grid) {
        (false, None) => Ok(explicit.to_vec()),
        (true, Some(grid)) => Ok(grid.values()),
        (true, None) => Err(format!("provide --{flag}s or --{flag}-grid")),
        (false, Some(_)) => Err(format!(
            "--{flag}s and --{flag}-grid are mutually exclusive"
        )),
    }
}

//! Parameter schedules `t_k -> 1`, stored by their distance `s = 1 - t`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// `s` range of the tail window, `t in [1 - 1e-3, 1 - 1e-8]`.
pub const TAIL_S_MAX: f64 = 1e-3;
pub const TAIL_S_MIN: f64 = 1e-8;

const WINDOW_SLACK: f64 = 1e-9;

pub fn in_tail_window(s: f64) -> bool {
    (TAIL_S_MIN * (1.0 - WINDOW_SLACK)..=TAIL_S_MAX * (1.0 + WINDOW_SLACK)).contains(&s)
}

/// `t_k = 1 - 10^(-k / divisor)` for `k = first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleSpec {
    pub first: u32,
    pub last: u32,
    pub divisor: u32,
}

impl Default for ScheduleSpec {
    fn default() -> Self {
        Self {
            first: 4,
            last: 32,
            divisor: 4,
        }
    }
}

impl fmt::Display for ScheduleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.first, self.last, self.divisor)
    }
}

impl FromStr for ScheduleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |msg: &str| Error::Parse {
            line: 0,
            field: "schedule".into(),
            message: format!("{msg} (expected FIRST:LAST:DIVISOR, got `{s}`)"),
        };
        let parts: Vec<&str> = s.trim().split(':').collect();
        if parts.len() != 3 {
            return Err(bad("wrong number of fields"));
        }
        let nums: Vec<u32> = parts
            .iter()
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad("not a non-negative integer"))?;
        let spec = ScheduleSpec {
            first: nums[0],
            last: nums[1],
            divisor: nums[2],
        };
        if spec.divisor == 0 || spec.last < spec.first {
            return Err(bad("need DIVISOR > 0 and LAST >= FIRST"));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    s: Vec<f64>,
}

impl Schedule {
    /// Distances must be positive; they are sorted so that `t` increases.
    pub fn from_s(mut s: Vec<f64>) -> Self {
        assert!(
            s.iter().all(|&v| v > 0.0 && v < 1.0),
            "s must lie in (0, 1)"
        );
        s.sort_by(|a, b| b.total_cmp(a));
        s.dedup();
        Self { s }
    }

    pub fn geometric(spec: ScheduleSpec) -> Self {
        let s = (spec.first..=spec.last)
            .map(|k| 10f64.powf(-(k as f64) / spec.divisor as f64))
            .collect();
        Self::from_s(s)
    }

    pub fn s_values(&self) -> &[f64] {
        &self.s
    }

    pub fn t_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.s.iter().map(|s| 1.0 - s)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    pub fn tail_window(&self) -> impl Iterator<Item = f64> + '_ {
        self.s.iter().copied().filter(|&s| in_tail_window(s))
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Self::geometric(ScheduleSpec::default())
    }
}

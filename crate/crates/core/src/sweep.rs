//! Score sweeps over `gamma` and the consistent region of a sweep.

use alloc::format;
use alloc::vec::Vec;

use crate::ahp::{SAATY_MAX, SAATY_MIN};
use crate::model::{self, VoiConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SweepRow {
    pub gamma: f64,
    pub cr: f64,
    pub is_consistent: bool,
    /// One score per source, in `VoiConfig::sources` order.
    pub scores: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    /// Geometric spacing, even steps in `ln(gamma)`.
    Log,
}

/// Closed interval of `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GammaInterval {
    pub lo: f64,
    pub hi: f64,
}

impl GammaInterval {
    pub fn contains(&self, gamma: f64) -> bool {
        (self.lo..=self.hi).contains(&gamma)
    }
}

/// `steps` gamma values from `gamma_min` to `gamma_max`, both included exactly.
pub fn gamma_grid(
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
    spacing: Spacing,
) -> Result<Vec<f64>> {
    for g in [gamma_min, gamma_max] {
        if !(SAATY_MIN..=SAATY_MAX).contains(&g) {
            return Err(Error::Domain(format!("sweep bound {g} outside [1/9, 9]")));
        }
    }
    if gamma_min > gamma_max {
        return Err(Error::Domain(format!(
            "gamma_min {gamma_min} exceeds gamma_max {gamma_max}"
        )));
    }
    if steps < 2 {
        return Err(Error::Domain(format!(
            "a sweep needs at least 2 steps, got {steps}"
        )));
    }

    let last = steps - 1;
    let (lo, hi) = match spacing {
        Spacing::Linear => (gamma_min, gamma_max),
        Spacing::Log => (libm::log(gamma_min), libm::log(gamma_max)),
    };
    let grid = (0..steps)
        .map(|k| {
            if k == 0 {
                return gamma_min;
            }
            if k == last {
                return gamma_max;
            }
            let x = lo + (hi - lo) * k as f64 / last as f64;
            match spacing {
                Spacing::Linear => x,
                Spacing::Log => libm::exp(x).clamp(gamma_min, gamma_max),
            }
        })
        .collect();
    Ok(grid)
}

/// One assessment per gamma value, linearly spaced.
pub fn gamma_sweep(
    config: &VoiConfig,
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
) -> Result<Vec<SweepRow>> {
    gamma_sweep_with(config, gamma_min, gamma_max, steps, Spacing::Linear)
}

pub fn gamma_sweep_with(
    config: &VoiConfig,
    gamma_min: f64,
    gamma_max: f64,
    steps: usize,
    spacing: Spacing,
) -> Result<Vec<SweepRow>> {
    let grid = gamma_grid(gamma_min, gamma_max, steps, spacing)?;
    if config.gamma_slot.is_none() {
        return Err(Error::Config(
            "cannot sweep a config without a gamma slot".into(),
        ));
    }
    grid.into_iter()
        .map(|gamma| sweep_row(config, gamma))
        .collect()
}

/// Assessment at a single gamma as a sweep row.
pub fn sweep_row(config: &VoiConfig, gamma: f64) -> Result<SweepRow> {
    let a = model::assess(config, gamma)?;
    Ok(SweepRow {
        gamma,
        cr: a.report.consistency_ratio,
        is_consistent: a.report.is_consistent,
        scores: a.scores.into_inner(),
    })
}

/// Maximal runs of consistent rows, as `[first gamma, last gamma]` of each run.
/// `rows` must be sorted by gamma.
pub fn consistent_region(rows: &[SweepRow]) -> Vec<GammaInterval> {
    let mut intervals = Vec::new();
    let mut open: Option<GammaInterval> = None;
    for row in rows {
        match (&mut open, row.is_consistent) {
            (Some(iv), true) => iv.hi = row.gamma,
            (None, true) => {
                open = Some(GammaInterval {
                    lo: row.gamma,
                    hi: row.gamma,
                })
            }
            (Some(_), false) => intervals.extend(open.take()),
            (None, false) => {}
        }
    }
    intervals.extend(open);
    intervals
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn row(gamma: f64, ok: bool) -> SweepRow {
        SweepRow {
            gamma,
            cr: if ok { 0.0 } else { 1.0 },
            is_consistent: ok,
            scores: vec![0.5, 0.5],
        }
    }

    #[test]
    fn grid_includes_endpoints() {
        let g = gamma_grid(1.0 / 9.0, 9.0, 1000, Spacing::Linear).unwrap();
        assert_eq!(g.len(), 1000);
        assert_eq!(g[0], 1.0 / 9.0);
        assert_eq!(g[999], 9.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));

        let g = gamma_grid(1.0 / 9.0, 9.0, 9, Spacing::Log).unwrap();
        assert_eq!(g[0], 1.0 / 9.0);
        assert_eq!(g[8], 9.0);
        assert!((g[4] - 1.0).abs() < 1e-12);
        assert!((g[2] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        assert!(matches!(
            gamma_grid(0.1, 9.0, 10, Spacing::Linear),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            gamma_grid(1.0, 9.5, 10, Spacing::Linear),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            gamma_grid(3.0, 1.0, 10, Spacing::Linear),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            gamma_grid(1.0, 3.0, 1, Spacing::Linear),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sweep_through_three_is_consistent_there() {
        let rows = gamma_sweep(&VoiConfig::safety_default(), 1.0, 5.0, 5).unwrap();
        let at3 = rows.iter().find(|r| r.gamma == 3.0).unwrap();
        assert!(at3.cr.abs() < 1e-9);
        assert!(at3.is_consistent);
    }

    #[test]
    fn default_surrounding_score_turns_up_past_consistent_region() {
        // The time criterion favors position, so once the time weight starts
        // dropping fast (gamma > ~8.8, CR > 0.10) surrounding recovers slightly.
        let rows = gamma_sweep(&VoiConfig::safety_default(), 1.0 / 9.0, 9.0, 1000).unwrap();
        let rising: Vec<usize> = (1..rows.len())
            .filter(|&k| rows[k].scores[0] >= rows[k - 1].scores[0])
            .collect();
        assert_eq!(rising.first(), Some(&979));
        assert_eq!(rising.len(), 21);
        assert!(rising.iter().all(|&k| !rows[k].is_consistent));
    }

    #[test]
    fn region_all_consistent() {
        let rows = [row(1.0, true), row(2.0, true), row(3.0, true)];
        assert_eq!(
            consistent_region(&rows),
            [GammaInterval { lo: 1.0, hi: 3.0 }]
        );
    }

    #[test]
    fn region_none_consistent() {
        assert!(consistent_region(&[row(1.0, false), row(2.0, false)]).is_empty());
        assert!(consistent_region(&[]).is_empty());
    }

    #[test]
    fn region_split_runs() {
        let rows = [
            row(1.0, true),
            row(2.0, false),
            row(3.0, true),
            row(4.0, true),
            row(5.0, false),
            row(6.0, true),
        ];
        assert_eq!(
            consistent_region(&rows),
            [
                GammaInterval { lo: 1.0, hi: 1.0 },
                GammaInterval { lo: 3.0, hi: 4.0 },
                GammaInterval { lo: 6.0, hi: 6.0 },
            ]
        );
    }
}

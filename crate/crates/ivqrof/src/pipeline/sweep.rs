use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{solve, GroupProblem, Params};
use crate::critic::DistanceMode;
use crate::error::{Error, Result};
use crate::numeric::round_half_away;

/// Values per parameter; an empty axis keeps the problem's own value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepAxes {
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub alpha: Vec<f64>,
    pub lambda: Vec<f64>,
    pub theta: Vec<f64>,
    pub mode: Vec<DistanceMode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub q: f64,
    pub p: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub theta: f64,
    pub mode: DistanceMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResult {
    pub point: GridPoint,
    pub scores: Vec<f64>,
    pub ranking: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    pub axes: SweepAxes,
    pub points: Vec<PointResult>,
    pub ranking_invariant: bool,
    /// Index of the first point whose ranking differs from the first point's.
    pub first_divergence: Option<usize>,
}

fn or_default<T: Copy>(axis: &[T], dflt: T) -> Vec<T> {
    if axis.is_empty() {
        vec![dflt]
    } else {
        axis.to_vec()
    }
}

impl SweepAxes {
    /// Cartesian grid; q varies slowest, mode fastest.
    pub fn grid(&self, problem: &GroupProblem) -> Vec<GridPoint> {
        let p0 = problem.params();
        let mut out = Vec::new();
        for &q in &or_default(&self.q, problem.effective_q()) {
            for &p in &or_default(&self.p, p0.p) {
                for &alpha in &or_default(&self.alpha, p0.alpha) {
                    for &lambda in &or_default(&self.lambda, p0.lambda) {
                        for &theta in &or_default(&self.theta, p0.theta) {
                            for &mode in &or_default(&self.mode, p0.distance_mode) {
                                out.push(GridPoint { q, p, alpha, lambda, theta, mode });
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Solves at every grid point (in parallel; results keep grid order).
pub fn sweep(problem: &GroupProblem, axes: &SweepAxes) -> Result<SensitivityReport> {
    let grid = axes.grid(problem);
    let points = grid
        .par_iter()
        .map(|pt| {
            let params = Params {
                q: Some(pt.q),
                p: pt.p,
                alpha: pt.alpha,
                lambda: pt.lambda,
                theta: pt.theta,
                distance_mode: pt.mode,
                ..*problem.params()
            };
            let r = problem.with_params(params).and_then(|pr| solve(&pr)).map_err(|e| {
                e.context(&format!(
                    "sweep point q={}, p={}, alpha={}, lambda={}, theta={}, mode={}",
                    pt.q, pt.p, pt.alpha, pt.lambda, pt.theta, pt.mode
                ))
            })?;
            Ok(PointResult { point: *pt, scores: r.scores, ranking: r.ranking })
        })
        .collect::<Result<Vec<_>>>()?;
    let first_divergence = points.iter().position(|pr| pr.ranking != points[0].ranking);
    Ok(SensitivityReport {
        axes: axes.clone(),
        points,
        ranking_invariant: first_divergence.is_none(),
        first_divergence,
    })
}

/// Parses `3`, `0.1,0.3,0.5`, `2..5` (step 1, inclusive) or
/// `0.05..0.95:0.05`.
pub fn parse_axis(s: &str) -> Result<Vec<f64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Error::Parameter(format!("bad number {t:?} in range {s:?}")))
    };
    if let Some((a, rest)) = s.split_once("..") {
        let (b, step) = match rest.split_once(':') {
            Some((b, st)) => (num(b)?, num(st)?),
            None => (num(rest)?, 1.0),
        };
        let a = num(a)?;
        if step <= 0.0 || b < a {
            return Err(Error::Parameter(format!("range {s:?} needs start <= end and step > 0")));
        }
        let steps = ((b - a) / step).round();
        if (a + steps * step - b).abs() > 1e-9 * b.abs().max(1.0) {
            return Err(Error::Parameter(format!("range {s:?}: end is not start plus a whole number of steps")));
        }
        if steps > 1e6 {
            return Err(Error::Parameter(format!("range {s:?} has too many points")));
        }
        Ok((0..=steps as usize).map(|i| round_half_away(a + i as f64 * step, 12)).collect())
    } else {
        s.split(',').map(num).collect()
    }
}

//! Interval WASPAS: Yager weighted sum and product importances and their blend.

use serde::{Deserialize, Serialize};

use crate::aggregation::{ivqrofywa, ivqrofywg, WeightVector};
use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::measures::{score, ScoreParams};
use crate::number::{Arith, IvqRofn, RungContext};

/// Blend factor; 1 is the weighted-sum model, 0 the weighted-product model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaspasParams {
    lambda: f64,
}

impl WaspasParams {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Parameter(format!("WASPAS lambda = {lambda} outside [0, 1]")));
        }
        Ok(WaspasParams { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl Default for WaspasParams {
    fn default() -> Self {
        WaspasParams { lambda: 0.5 }
    }
}

fn rows_with(
    x: &DecisionMatrix,
    w: &WeightVector,
    ctx: &RungContext,
    f: fn(&[IvqRofn], &WeightVector, &RungContext) -> Result<IvqRofn>,
) -> Result<Vec<IvqRofn>> {
    (0..x.rows()).map(|i| f(x.row(i), w, ctx)).collect()
}

pub fn wsm_importance(x: &DecisionMatrix, w: &WeightVector, ctx: &RungContext) -> Result<Vec<IvqRofn>> {
    rows_with(x, w, ctx, ivqrofywa)
}

pub fn wpm_importance(x: &DecisionMatrix, w: &WeightVector, ctx: &RungContext) -> Result<Vec<IvqRofn>> {
    rows_with(x, w, ctx, ivqrofywg)
}

/// `lambda q1 + (1 - lambda) q2` in the classic algebra; the endpoints return
/// `q1` or `q2` unchanged.
pub fn blend(q1: &IvqRofn, q2: &IvqRofn, params: WaspasParams, ctx: &RungContext) -> IvqRofn {
    ctx.arith().blend(q1, q2, params)
}

impl Arith<'_> {
    pub(crate) fn blend(&mut self, q1: &IvqRofn, q2: &IvqRofn, params: WaspasParams) -> IvqRofn {
        let l = params.lambda;
        if l == 1.0 {
            return *q1;
        }
        if l == 0.0 {
            return *q2;
        }
        let a = self.scale(l, q1).expect("0 < lambda < 1");
        let b = self.scale(1.0 - l, q2).expect("0 < lambda < 1");
        self.add(&a, &b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ranking {
    pub scores: Vec<f64>,
    /// Alternative indices, best first.
    pub order: Vec<usize>,
}

/// Descending score; equal scores keep input order.
pub fn rank(r: &[IvqRofn], params: ScoreParams, ctx: &RungContext) -> Result<Ranking> {
    let scores = r.iter().map(|a| score(a, params, ctx)).collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..r.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    Ok(Ranking { scores, order })
}

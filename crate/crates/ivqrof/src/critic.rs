//! Interval-valued CRITIC weighting in the classic fuzzy algebra.

use serde::{Deserialize, Serialize};

use crate::aggregation::WeightVector;
use crate::audit::{AuditEvent, AuditLog};
use crate::error::{Error, Result};
use crate::matrix::{DecisionMatrix, Polarity};
use crate::measures::{cis, nis, pis, score, CisParams, ScoreParams};
use crate::number::{Arith, ClampTrace, IvqRofn, RungContext};
use crate::numeric::ordered_sum;

/// How interval weights become real weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    /// `nis(w_j)` normalized.
    Nis,
    /// `1 - pis(w_j)` normalized.
    Pis,
    /// `1 - cis(w_j, theta)` normalized.
    Cis,
}

impl std::str::FromStr for DistanceMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nis" => Ok(DistanceMode::Nis),
            "pis" => Ok(DistanceMode::Pis),
            "cis" => Ok(DistanceMode::Cis),
            _ => Err(Error::Parameter(format!("unknown distance mode {s:?} (expected nis, pis or cis)"))),
        }
    }
}

impl std::fmt::Display for DistanceMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DistanceMode::Nis => "nis",
            DistanceMode::Pis => "pis",
            DistanceMode::Cis => "cis",
        })
    }
}

pub type IntervalWeightVector = Vec<IvqRofn>;

/// Every CRITIC intermediate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticReport {
    pub standardized: DecisionMatrix,
    pub degenerate_columns: Vec<usize>,
    pub means: Vec<IvqRofn>,
    pub correlations: Vec<Vec<IvqRofn>>,
    pub stddevs: Vec<IvqRofn>,
    pub indices: Vec<IvqRofn>,
    pub weights: IntervalWeightVector,
    pub clamps: ClampTrace,
}

fn extremes(col: &[IvqRofn], ctx: &RungContext) -> Result<(usize, usize)> {
    let sp = ScoreParams::default();
    let scores = col.iter().map(|a| score(a, sp, ctx)).collect::<Result<Vec<_>>>()?;
    let (mut hi, mut lo) = (0, 0);
    for (i, s) in scores.iter().enumerate() {
        if *s > scores[hi] {
            hi = i;
        }
        if *s < scores[lo] {
            lo = i;
        }
    }
    Ok((hi, lo))
}

impl Arith<'_> {
    fn standardize_with(&mut self, a: &DecisionMatrix) -> Result<(DecisionMatrix, Vec<usize>)> {
        if a.rows() < 2 {
            return Err(Error::Domain(format!("standardization needs at least 2 alternatives, got {}", a.rows())));
        }
        let ctx = *self.ctx();
        let mut cells = a.cells().to_vec();
        let mut degenerate = Vec::new();
        for (j, &polarity) in a.polarity().iter().enumerate() {
            let col = a.column(j);
            let (hi, lo) = extremes(&col, &ctx)?;
            let sp = ScoreParams::default();
            if score(&col[hi], sp, &ctx)? == score(&col[lo], sp, &ctx)? {
                degenerate.push(j);
                continue;
            }
            let (max, min) = (col[hi], col[lo]);
            let range = self.sub(&max, &min);
            for (i, x) in col.iter().enumerate() {
                let num = match polarity {
                    Polarity::Benefit => self.sub(x, &min),
                    Polarity::Cost => self.sub(&max, x),
                };
                cells[i][j] = self.div(&num, &range);
            }
        }
        Ok((DecisionMatrix::from_parts(cells, a.polarity().to_vec()), degenerate))
    }

    fn column_mean_with(&mut self, x: &DecisionMatrix, j: usize) -> Result<IvqRofn> {
        let w = WeightVector::uniform(x.rows())?;
        self.ywa(&x.column(j), &w)
    }

    fn deviations(&mut self, x: &DecisionMatrix, j: usize, mean: &IvqRofn) -> Vec<IvqRofn> {
        x.column(j).iter().map(|a| self.sub(a, mean)).collect()
    }

    fn squares_sum(&mut self, dev: &[IvqRofn]) -> Result<IvqRofn> {
        let sq = dev.iter().map(|d| self.power(d, 2.0)).collect::<Result<Vec<_>>>()?;
        Ok(self.sum(&sq).expect("non-empty column"))
    }

    fn correlation_from(&mut self, dj: &[IvqRofn], dk: &[IvqRofn]) -> Result<IvqRofn> {
        let prods: Vec<IvqRofn> = dj.iter().zip(dk).map(|(a, b)| self.mul(a, b)).collect();
        let num = self.sum(&prods).expect("non-empty column");
        let (sj, sk) = (self.squares_sum(dj)?, self.squares_sum(dk)?);
        let den = self.mul(&sj, &sk);
        let den = self.power(&den, 0.5)?;
        Ok(self.div(&num, &den))
    }

    fn stddev_from(&mut self, dev: &[IvqRofn]) -> Result<IvqRofn> {
        let s = self.squares_sum(dev)?;
        let s = self.scale(1.0 / dev.len() as f64, &s)?;
        self.power(&s, 0.5)
    }

    fn index_from(&mut self, sigma: &IvqRofn, rhos: &[IvqRofn]) -> Result<IvqRofn> {
        let gaps: Vec<IvqRofn> = rhos.iter().map(|r| self.sub(&IvqRofn::POSITIVE_IDEAL, r)).collect();
        let conflict =
            self.sum(&gaps).ok_or_else(|| Error::Domain("attribute index needs at least one correlation".into()))?;
        Ok(self.mul(sigma, &conflict))
    }

    fn analyze(&mut self, a: &DecisionMatrix) -> Result<CriticReport> {
        let (x, degenerate_columns) = self.standardize_with(a)?;
        let n = x.cols();
        let means = (0..n).map(|j| self.column_mean_with(&x, j)).collect::<Result<Vec<_>>>()?;
        let devs: Vec<Vec<IvqRofn>> = (0..n).map(|j| self.deviations(&x, j, &means[j])).collect();
        let mut correlations = vec![vec![IvqRofn::NEGATIVE_IDEAL; n]; n];
        for j in 0..n {
            for k in j..n {
                let r = self.correlation_from(&devs[j], &devs[k])?;
                correlations[j][k] = r;
                correlations[k][j] = r;
            }
        }
        let stddevs = devs.iter().map(|d| self.stddev_from(d)).collect::<Result<Vec<_>>>()?;
        let indices = (0..n).map(|j| self.index_from(&stddevs[j], &correlations[j])).collect::<Result<Vec<_>>>()?;
        let total = self.sum(&indices).expect("at least one attribute");
        let weights = indices.iter().map(|nj| self.div(nj, &total)).collect();
        Ok(CriticReport {
            standardized: x,
            degenerate_columns,
            means,
            correlations,
            stddevs,
            indices,
            weights,
            clamps: self.trace(),
        })
    }
}

/// Benefit: `(a - min) / (max - min)`; cost: `(max - a) / (max - min)`, with
/// max and min picked by score (alpha = beta = 0.5, lowest row wins ties).
/// Columns whose max and min tie are returned unchanged.
pub fn standardize(a: &DecisionMatrix, ctx: &RungContext) -> Result<DecisionMatrix> {
    Ok(ctx.arith().standardize_with(a)?.0)
}

/// Uniform-weight Yager average of column `j`.
pub fn column_mean(x: &DecisionMatrix, j: usize, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().column_mean_with(x, j)
}

pub fn correlation(x: &DecisionMatrix, j: usize, k: usize, ctx: &RungContext) -> Result<IvqRofn> {
    if x.rows() < 2 {
        return Err(Error::Domain("correlation needs at least 2 alternatives".into()));
    }
    let mut ar = ctx.arith();
    let (mj, mk) = (ar.column_mean_with(x, j)?, ar.column_mean_with(x, k)?);
    let dj = ar.deviations(x, j, &mj);
    let dk = ar.deviations(x, k, &mk);
    ar.correlation_from(&dj, &dk)
}

pub fn column_stddev(x: &DecisionMatrix, j: usize, ctx: &RungContext) -> Result<IvqRofn> {
    let mut ar = ctx.arith();
    let m = ar.column_mean_with(x, j)?;
    let d = ar.deviations(x, j, &m);
    ar.stddev_from(&d)
}

/// `sigma_j (x) sum_k (1 - rho_jk)`
pub fn attribute_index(sigma: &IvqRofn, rhos: &[IvqRofn], ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().index_from(sigma, rhos)
}

/// Standardization through interval weights, with all intermediates.
pub fn analyze(a: &DecisionMatrix, ctx: &RungContext) -> Result<CriticReport> {
    ctx.arith().analyze(a)
}

pub fn interval_weights(a: &DecisionMatrix, ctx: &RungContext) -> Result<IntervalWeightVector> {
    Ok(analyze(a, ctx)?.weights)
}

/// Real weights and the raw per-attribute distances they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizedWeights {
    pub distances: Vec<f64>,
    pub weights: WeightVector,
}

pub fn realize_weights(
    w: &[IvqRofn],
    mode: DistanceMode,
    cis_params: CisParams,
    ctx: &RungContext,
) -> Result<WeightVector> {
    Ok(realize_weights_logged(w, mode, cis_params, ctx, &mut AuditLog::default())?.weights)
}

pub fn realize_weights_logged(
    w: &[IvqRofn],
    mode: DistanceMode,
    cis_params: CisParams,
    ctx: &RungContext,
    audit: &mut AuditLog,
) -> Result<RealizedWeights> {
    if w.is_empty() {
        return Err(Error::Domain("no interval weights to realize".into()));
    }
    let distances: Vec<f64> = w
        .iter()
        .map(|x| match mode {
            DistanceMode::Nis => nis(x, ctx),
            DistanceMode::Pis => pis(x, ctx),
            DistanceMode::Cis => cis(x, cis_params, ctx),
        })
        .collect();
    let raw: Vec<f64> = distances.iter().map(|d| if mode == DistanceMode::Nis { *d } else { 1.0 - d }).collect();
    let total = ordered_sum(raw.iter().copied());
    let weights = if total > 0.0 {
        WeightVector::new(raw.iter().map(|x| x / total).collect())?
    } else {
        audit.push(AuditEvent::UniformAttributeWeights);
        WeightVector::uniform(w.len())?
    };
    Ok(RealizedWeights { distances, weights })
}

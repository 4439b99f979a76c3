//! Per-alternative decision-maker weights from similarity to the ideals.

use serde::{Deserialize, Serialize};

use crate::audit::{AuditEvent, AuditLog};
use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::measures::{nis, pis};
use crate::number::RungContext;
use crate::numeric::{ordered_sum, round_half_away};

/// `nis / (nis + pis)` per cell of one expert matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimilarityMatrix {
    pub sim: Vec<Vec<f64>>,
    /// Cells where `nis + pis = 0`.
    pub degenerate: Vec<(usize, usize)>,
}

/// m x k; row i holds the weights of the k experts for alternative i.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DmWeightMatrix(Vec<Vec<f64>>);

impl DmWeightMatrix {
    pub fn rows(&self) -> &[Vec<f64>] {
        &self.0
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.0[i]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmWeights {
    pub similarity: Vec<SimilarityMatrix>,
    /// `sums[i][t]` is the row sum of expert t's similarities on alternative i.
    pub sums: Vec<Vec<f64>>,
    pub lambda: DmWeightMatrix,
}

pub fn similarity_matrix(a: &DecisionMatrix, ctx: &RungContext) -> SimilarityMatrix {
    let mut degenerate = Vec::new();
    let sim = (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let c = a.get(i, j);
                    let (dn, dp) = (nis(c, ctx), pis(c, ctx));
                    if dn + dp == 0.0 {
                        degenerate.push((i, j));
                        0.5
                    } else {
                        dn / (dn + dp)
                    }
                })
                .collect()
        })
        .collect();
    SimilarityMatrix { sim, degenerate }
}

pub fn dm_weight_matrix(experts: &[DecisionMatrix], ctx: &RungContext) -> Result<DmWeightMatrix> {
    Ok(dm_weights(experts, ctx, None, &mut AuditLog::default())?.lambda)
}

/// Full derivation. With `similarity_decimals`, each similarity is rounded
/// half away from zero before the row sums are taken.
pub fn dm_weights(
    experts: &[DecisionMatrix],
    ctx: &RungContext,
    similarity_decimals: Option<u32>,
    audit: &mut AuditLog,
) -> Result<DmWeights> {
    let first = experts.first().ok_or_else(|| Error::Domain("at least one expert matrix is required".into()))?;
    if let Some(t) = experts.iter().position(|e| !e.same_shape(first)) {
        return Err(Error::Shape(format!(
            "expert {} is {}x{}, expert 1 is {}x{}",
            t + 1,
            experts[t].rows(),
            experts[t].cols(),
            first.rows(),
            first.cols()
        )));
    }
    let mut similarity: Vec<SimilarityMatrix> = experts.iter().map(|e| similarity_matrix(e, ctx)).collect();
    for (t, s) in similarity.iter_mut().enumerate() {
        for &(row, col) in &s.degenerate {
            audit.push(AuditEvent::DegenerateSimilarity { expert: t, row, col });
        }
        if let Some(d) = similarity_decimals {
            s.sim.iter_mut().flatten().for_each(|x| *x = round_half_away(*x, d));
        }
    }
    let k = experts.len();
    let sums: Vec<Vec<f64>> =
        (0..first.rows()).map(|i| similarity.iter().map(|s| ordered_sum(s.sim[i].iter().copied())).collect()).collect();
    let lambda = sums
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let total = ordered_sum(row.iter().copied());
            if total > 0.0 {
                row.iter().map(|s| s / total).collect()
            } else {
                audit.push(AuditEvent::UniformExpertWeights { row: i });
                vec![1.0 / k as f64; k]
            }
        })
        .collect();
    Ok(DmWeights { similarity, sums, lambda: DmWeightMatrix(lambda) })
}

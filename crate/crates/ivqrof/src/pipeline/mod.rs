//! The group decision chain: expert weights, aggregation, CRITIC, WASPAS,
//! ranking.

mod sweep;

pub use sweep::{parse_axis, sweep, GridPoint, PointResult, SensitivityReport, SweepAxes};

use serde::{Deserialize, Serialize};

use crate::aggregation::WeightVector;
use crate::audit::{AuditEvent, AuditLog};
use crate::critic::{self, CriticReport, DistanceMode};
use crate::dm_weights::{dm_weights, DmWeightMatrix, DmWeights};
use crate::error::{Error, Result};
use crate::matrix::{DecisionMatrix, Polarity};
use crate::measures::{CisParams, ScoreParams};
use crate::number::{infer_q, ClampTrace, IvqRofn, RungContext};
use crate::waspas::{rank, WaspasParams};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expert {
    pub name: String,
    pub matrix: DecisionMatrix,
}

/// Solver parameters. `q = None` means "use the inferred rung".
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub q: Option<f64>,
    pub p: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub theta: f64,
    pub distance_mode: DistanceMode,
    /// Round similarities to this many decimals before forming expert weights.
    pub similarity_decimals: Option<u32>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            q: None,
            p: 2.0,
            alpha: 0.5,
            lambda: 0.5,
            theta: 0.5,
            distance_mode: DistanceMode::Nis,
            similarity_decimals: None,
        }
    }
}

impl Params {
    pub fn validate(&self) -> Result<()> {
        RungContext::new(self.q.unwrap_or(1.0), self.p)?;
        self.score_params()?;
        self.waspas_params()?;
        self.cis_params()?;
        Ok(())
    }

    pub fn score_params(&self) -> Result<ScoreParams> {
        ScoreParams::with_alpha(self.alpha)
    }

    pub fn waspas_params(&self) -> Result<WaspasParams> {
        WaspasParams::new(self.lambda)
    }

    pub fn cis_params(&self) -> Result<CisParams> {
        CisParams::new(self.theta)
    }
}

/// k expert matrices over shared alternatives and attributes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupProblem {
    alternatives: Vec<String>,
    attributes: Vec<Attribute>,
    experts: Vec<Expert>,
    params: Params,
    inferred_q: u32,
}

impl GroupProblem {
    /// Checks shapes and parameters, infers q and validates every cell under
    /// the effective q. Expert matrices take the attributes' polarities.
    pub fn new(
        alternatives: Vec<String>,
        attributes: Vec<Attribute>,
        experts: Vec<Expert>,
        params: Params,
    ) -> Result<Self> {
        params.validate()?;
        if experts.is_empty() {
            return Err(Error::Domain("at least one expert is required".into()));
        }
        let (m, n) = (alternatives.len(), attributes.len());
        let polarity: Vec<Polarity> = attributes.iter().map(|a| a.polarity).collect();
        let mut checked = Vec::with_capacity(experts.len());
        for (t, e) in experts.into_iter().enumerate() {
            if e.matrix.rows() != m || e.matrix.cols() != n {
                return Err(Error::at(
                    format!("expert {}", t + 1),
                    format!(
                        "matrix is {}x{}, expected {m}x{n} (alternatives x attributes)",
                        e.matrix.rows(),
                        e.matrix.cols()
                    ),
                ));
            }
            let matrix = e.matrix.with_polarity(polarity.clone())?;
            checked.push(Expert { name: e.name, matrix });
        }
        let matrices: Vec<DecisionMatrix> = checked.iter().map(|e| e.matrix.clone()).collect();
        let inferred_q = infer_q(&matrices)?;
        let problem = GroupProblem { alternatives, attributes, experts: checked, params, inferred_q };
        let ctx = problem.ctx()?;
        for (t, e) in problem.experts.iter().enumerate() {
            e.matrix.validate(&ctx).map_err(|err| match err {
                Error::Semantic { location, message } => Error::at(format!("expert {}, {location}", t + 1), message),
                other => other,
            })?;
        }
        Ok(problem)
    }

    /// Same data under new parameters, re-validated.
    pub fn with_params(&self, params: Params) -> Result<Self> {
        GroupProblem::new(self.alternatives.clone(), self.attributes.clone(), self.experts.clone(), params)
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn attributes(&self) -> &[Attribute] {
        &self.attributes
    }

    pub fn experts(&self) -> &[Expert] {
        &self.experts
    }

    pub fn matrices(&self) -> Vec<DecisionMatrix> {
        self.experts.iter().map(|e| e.matrix.clone()).collect()
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn inferred_q(&self) -> u32 {
        self.inferred_q
    }

    /// The override if given, else the inferred rung raised to at least 2
    /// (the score needs q > 1).
    pub fn effective_q(&self) -> f64 {
        self.params.q.unwrap_or(self.inferred_q.max(2) as f64)
    }

    pub fn ctx(&self) -> Result<RungContext> {
        RungContext::new(self.effective_q(), self.params.p)
    }
}

/// Every intermediate of one solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingResult {
    pub q: f64,
    pub inferred_q: u32,
    pub params: Params,
    pub dm_weights: DmWeights,
    pub aggregated: DecisionMatrix,
    pub critic: CriticReport,
    /// Per-attribute distances used to realize the weights (per the mode).
    pub distances: Vec<f64>,
    pub weights: WeightVector,
    pub wsm: Vec<IvqRofn>,
    pub wpm: Vec<IvqRofn>,
    pub interval_scores: Vec<IvqRofn>,
    pub scores: Vec<f64>,
    /// Alternative indices, best first.
    pub ranking: Vec<usize>,
    pub audit: AuditLog,
}

/// `r_ij` is the Yager average of the experts' `a_ij` under row i of lambda.
pub fn aggregate_experts(
    experts: &[DecisionMatrix],
    lambda: &DmWeightMatrix,
    ctx: &RungContext,
) -> Result<DecisionMatrix> {
    Ok(aggregate_traced(experts, lambda, ctx)?.0)
}

fn aggregate_traced(
    experts: &[DecisionMatrix],
    lambda: &DmWeightMatrix,
    ctx: &RungContext,
) -> Result<(DecisionMatrix, ClampTrace)> {
    let first = experts.first().ok_or_else(|| Error::Domain("no expert matrices".into()))?;
    if experts.iter().any(|e| !e.same_shape(first)) {
        return Err(Error::Shape("expert matrices differ in shape".into()));
    }
    if lambda.rows().len() != first.rows() || lambda.rows().iter().any(|r| r.len() != experts.len()) {
        return Err(Error::Shape(format!("weight matrix must be {}x{}", first.rows(), experts.len())));
    }
    let mut ar = ctx.arith();
    let mut cells = Vec::with_capacity(first.rows());
    for i in 0..first.rows() {
        let w = WeightVector::new(lambda.row(i).to_vec())?;
        let row = (0..first.cols())
            .map(|j| {
                let items: Vec<IvqRofn> = experts.iter().map(|e| *e.get(i, j)).collect();
                ar.ywa(&items, &w)
            })
            .collect::<Result<Vec<_>>>()?;
        cells.push(row);
    }
    Ok((DecisionMatrix::new(cells, first.polarity().to_vec())?, ar.trace()))
}

fn log_clamps(audit: &mut AuditLog, stage: &str, t: ClampTrace) {
    if t.total() > 0 {
        audit.push(AuditEvent::Clamps { stage: stage.into(), roundoff: t.roundoff, excursions: t.excursions });
    }
}

pub fn solve(problem: &GroupProblem) -> Result<RankingResult> {
    let params = problem.params;
    let ctx = problem.ctx()?;
    let score_params = params.score_params()?;
    let mut audit = AuditLog::default();
    let matrices = problem.matrices();

    let dm = dm_weights(&matrices, &ctx, params.similarity_decimals, &mut audit)?;
    let (aggregated, t) = aggregate_traced(&matrices, &dm.lambda, &ctx)?;
    log_clamps(&mut audit, "aggregation", t);

    let report = critic::analyze(&aggregated, &ctx)?;
    for &col in &report.degenerate_columns {
        audit.push(AuditEvent::DegenerateColumn { col });
    }
    log_clamps(&mut audit, "critic", report.clamps);
    let realized =
        critic::realize_weights_logged(&report.weights, params.distance_mode, params.cis_params()?, &ctx, &mut audit)?;

    let x = &report.standardized;
    let mut ar = ctx.arith();
    let mut wsm = Vec::with_capacity(x.rows());
    let mut wpm = Vec::with_capacity(x.rows());
    let mut interval_scores = Vec::with_capacity(x.rows());
    for i in 0..x.rows() {
        let q1 = ar.ywa(x.row(i), &realized.weights)?;
        let q2 = ar.ywg(x.row(i), &realized.weights)?;
        interval_scores.push(ar.blend(&q1, &q2, params.waspas_params()?));
        wsm.push(q1);
        wpm.push(q2);
    }
    log_clamps(&mut audit, "waspas", ar.trace());
    let ranking = rank(&interval_scores, score_params, &ctx)?;

    Ok(RankingResult {
        q: ctx.q(),
        inferred_q: problem.inferred_q,
        params,
        dm_weights: dm,
        aggregated,
        critic: report,
        distances: realized.distances,
        weights: realized.weights,
        wsm,
        wpm,
        interval_scores,
        scores: ranking.scores,
        ranking: ranking.order,
        audit,
    })
}

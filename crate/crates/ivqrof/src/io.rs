//! Problem files (TOML), result files (JSON) and sweep series (CSV).
//!
//! A problem file looks like:
//!
//! ```toml
//! version = 1
//! alternatives = ["y1", "y2"]
//!
//! [parameters]        # every key optional
//! q = 3
//! p = 2
//! alpha = 0.5
//! lambda = 0.5
//! theta = 0.5
//! distance_mode = "nis"
//!
//! [[attributes]]
//! name = "C1"
//! polarity = "benefit"
//!
//! [[experts]]
//! name = "E1"
//! matrix = [
//!   [[0.85, 0.95, 0.1, 0.2]],
//!   [[0.9, 0.95, 0.1, 0.2]],
//! ]
//! ```
//!
//! Each cell is `[mu_lo, mu_hi, nu_lo, nu_hi]`; rows are alternatives and
//! columns attributes.

use serde::{Deserialize, Serialize};

use crate::critic::DistanceMode;
use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;
use crate::number::IvqRofn;
use crate::numeric::fixed;
use crate::pipeline::{Attribute, Expert, GroupProblem, Params, RankingResult, SensitivityReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    pub alternatives: Vec<String>,
    #[serde(default)]
    pub parameters: ParameterSection,
    pub attributes: Vec<Attribute>,
    pub experts: Vec<ExpertSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_mode: Option<DistanceMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub similarity_decimals: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpertSection {
    pub name: String,
    pub matrix: Vec<Vec<[f64; 4]>>,
}

impl ParameterSection {
    pub fn to_params(&self) -> Params {
        let d = Params::default();
        Params {
            q: self.q,
            p: self.p.unwrap_or(d.p),
            alpha: self.alpha.unwrap_or(d.alpha),
            lambda: self.lambda.unwrap_or(d.lambda),
            theta: self.theta.unwrap_or(d.theta),
            distance_mode: self.distance_mode.unwrap_or(d.distance_mode),
            similarity_decimals: self.similarity_decimals,
        }
    }

    pub fn from_params(p: &Params) -> Self {
        ParameterSection {
            q: p.q,
            p: Some(p.p),
            alpha: Some(p.alpha),
            lambda: Some(p.lambda),
            theta: Some(p.theta),
            distance_mode: Some(p.distance_mode),
            similarity_decimals: p.similarity_decimals,
        }
    }
}

impl ProblemFile {
    pub fn into_problem(self) -> Result<GroupProblem> {
        if self.version != FORMAT_VERSION {
            return Err(Error::at(
                "version",
                format!("unsupported version {} (expected {FORMAT_VERSION})", self.version),
            ));
        }
        let (m, n) = (self.alternatives.len(), self.attributes.len());
        if m == 0 || n == 0 {
            return Err(Error::at("problem", "needs at least one alternative and one attribute"));
        }
        let polarity: Vec<_> = self.attributes.iter().map(|a| a.polarity).collect();
        let mut experts = Vec::with_capacity(self.experts.len());
        for (t, e) in self.experts.into_iter().enumerate() {
            let loc = |rest: String| format!("expert {}{rest}", t + 1);
            if e.matrix.len() != m {
                return Err(Error::at(
                    loc(String::new()),
                    format!("{} rows, expected {m} (one per alternative)", e.matrix.len()),
                ));
            }
            let mut cells = Vec::with_capacity(m);
            for (i, row) in e.matrix.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::at(
                        loc(format!(", row {}", i + 1)),
                        format!("{} cells, expected {n} (one per attribute)", row.len()),
                    ));
                }
                let mut out = Vec::with_capacity(n);
                for (j, c) in row.iter().enumerate() {
                    let a = IvqRofn::try_from(*c)
                        .map_err(|err| Error::at(loc(format!(", row {}, col {}", i + 1, j + 1)), err.to_string()))?;
                    out.push(a);
                }
                cells.push(out);
            }
            experts.push(Expert { name: e.name, matrix: DecisionMatrix::new(cells, polarity.clone())? });
        }
        GroupProblem::new(self.alternatives, self.attributes, experts, self.parameters.to_params())
    }

    pub fn from_problem(p: &GroupProblem) -> Self {
        ProblemFile {
            version: FORMAT_VERSION,
            alternatives: p.alternatives().to_vec(),
            parameters: ParameterSection::from_params(p.params()),
            attributes: p.attributes().to_vec(),
            experts: p
                .experts()
                .iter()
                .map(|e| ExpertSection {
                    name: e.name.clone(),
                    matrix: e.matrix.cells().iter().map(|r| r.iter().map(IvqRofn::to_array).collect()).collect(),
                })
                .collect(),
        }
    }
}

pub fn parse_problem(text: &str) -> Result<GroupProblem> {
    let file: ProblemFile = toml::from_str(text).map_err(|e| Error::Syntax(e.to_string().trim_end().to_string()))?;
    file.into_problem()
}

pub fn problem_to_toml(p: &GroupProblem) -> Result<String> {
    toml::to_string(&ProblemFile::from_problem(p)).map_err(|e| Error::Syntax(e.to_string()))
}

/// Rounded strings for comparison with printed tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrintedViews {
    pub rounding: String,
    /// 4 decimals.
    pub dm_weights: Vec<Vec<String>>,
    /// 2 decimals.
    pub aggregated: Vec<Vec<[String; 4]>>,
    /// 3 decimals.
    pub interval_weights: Vec<[String; 4]>,
    /// 3 decimals.
    pub distances: Vec<String>,
    /// 5 decimals.
    pub weights: Vec<String>,
    /// 3 decimals.
    pub interval_scores: Vec<[String; 4]>,
    /// 5 decimals.
    pub scores: Vec<String>,
    pub ranking: String,
}

fn cell(a: &IvqRofn, d: u32) -> [String; 4] {
    a.to_array().map(|x| fixed(x, d))
}

/// `y2 > y1 = y3`: `=` marks equal scores.
pub fn ranking_line(names: &[String], scores: &[f64], order: &[usize]) -> String {
    let mut s = String::new();
    for (k, &i) in order.iter().enumerate() {
        if k > 0 {
            s.push_str(if scores[order[k - 1]] == scores[i] { " = " } else { " > " });
        }
        s.push_str(&names[i]);
    }
    s
}

impl PrintedViews {
    pub fn new(names: &[String], r: &RankingResult) -> Self {
        PrintedViews {
            rounding: "half away from zero on the exact binary value".into(),
            dm_weights: r
                .dm_weights
                .lambda
                .rows()
                .iter()
                .map(|row| row.iter().map(|x| fixed(*x, 4)).collect())
                .collect(),
            aggregated: r.aggregated.cells().iter().map(|row| row.iter().map(|a| cell(a, 2)).collect()).collect(),
            interval_weights: r.critic.weights.iter().map(|a| cell(a, 3)).collect(),
            distances: r.distances.iter().map(|x| fixed(*x, 3)).collect(),
            weights: r.weights.as_slice().iter().map(|x| fixed(*x, 5)).collect(),
            interval_scores: r.interval_scores.iter().map(|a| cell(a, 3)).collect(),
            scores: r.scores.iter().map(|x| fixed(*x, 5)).collect(),
            ranking: ranking_line(names, &r.scores, &r.ranking),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub version: u32,
    pub alternatives: Vec<String>,
    pub attributes: Vec<String>,
    pub experts: Vec<String>,
    pub result: RankingResult,
    pub printed: PrintedViews,
}

impl ResultFile {
    pub fn new(problem: &GroupProblem, result: RankingResult) -> Self {
        ResultFile {
            version: FORMAT_VERSION,
            alternatives: problem.alternatives().to_vec(),
            attributes: problem.attributes().iter().map(|a| a.name.clone()).collect(),
            experts: problem.experts().iter().map(|e| e.name.clone()).collect(),
            printed: PrintedViews::new(problem.alternatives(), &result),
            result,
        }
    }

    /// Pretty JSON. Floats use the shortest text that reads back to the
    /// same bits.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Domain(format!("cannot serialize result: {e}")))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))
    }
}

pub fn report_to_json(report: &SensitivityReport) -> Result<String> {
    serde_json::to_string_pretty(report).map_err(|e| Error::Domain(format!("cannot serialize report: {e}")))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per grid point and alternative:
/// `q,p,alpha,lambda,theta,mode,alternative,score,rank` (rank 1 is best).
pub fn sweep_series_csv(report: &SensitivityReport, names: &[String]) -> String {
    let mut out = String::from("q,p,alpha,lambda,theta,mode,alternative,score,rank\n");
    for pr in &report.points {
        let pt = &pr.point;
        let mut rank = vec![0; pr.ranking.len()];
        for (pos, &i) in pr.ranking.iter().enumerate() {
            rank[i] = pos + 1;
        }
        for (i, name) in names.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                pt.q,
                pt.p,
                pt.alpha,
                pt.lambda,
                pt.theta,
                pt.mode,
                csv_field(name),
                pr.scores[i],
                rank[i]
            ));
        }
    }
    out
}

//! Distances, ideal distances, the interval score and the score order.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{IvqRofn, RungContext};

/// Score weights. `alpha + beta = 1`, both positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreParams {
    alpha: f64,
    beta: f64,
}

impl ScoreParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0 && (alpha + beta - 1.0).abs() <= 1e-12) {
            return Err(Error::Parameter(format!(
                "score weights need alpha > 0, beta > 0, alpha + beta = 1; got {alpha}, {beta}"
            )));
        }
        Ok(ScoreParams { alpha, beta })
    }

    /// `beta = 1 - alpha`.
    pub fn with_alpha(alpha: f64) -> Result<Self> {
        ScoreParams::new(alpha, 1.0 - alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

impl Default for ScoreParams {
    fn default() -> Self {
        ScoreParams { alpha: 0.5, beta: 0.5 }
    }
}

/// Blend factor theta in [0, 1] for the combined ideal distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CisParams {
    theta: f64,
}

impl CisParams {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::Parameter(format!("theta = {theta} outside [0, 1]")));
        }
        Ok(CisParams { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

impl Default for CisParams {
    fn default() -> Self {
        CisParams { theta: 0.5 }
    }
}

pub fn distance(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> f64 {
    let q = ctx.q();
    let p = |x: f64| x.powf(q);
    let lo = (p(a.mu_lo()) - p(b.mu_lo())) - (p(a.nu_lo()) - p(b.nu_lo()));
    let hi = (p(a.mu_hi()) - p(b.mu_hi())) - (p(a.nu_hi()) - p(b.nu_hi()));
    0.25 * (lo.abs() + hi.abs())
}

/// Distance to the negative ideal `<[0,0],[1,1]>`.
pub fn nis(a: &IvqRofn, ctx: &RungContext) -> f64 {
    distance(a, &IvqRofn::NEGATIVE_IDEAL, ctx)
}

/// Distance to the positive ideal `<[1,1],[0,0]>`.
pub fn pis(a: &IvqRofn, ctx: &RungContext) -> f64 {
    distance(a, &IvqRofn::POSITIVE_IDEAL, ctx)
}

/// `theta * pis + (1 - theta) * nis`
pub fn cis(a: &IvqRofn, params: CisParams, ctx: &RungContext) -> f64 {
    params.theta * pis(a, ctx) + (1.0 - params.theta) * nis(a, ctx)
}

/// Interval score; needs q > 1.
pub fn score(a: &IvqRofn, params: ScoreParams, ctx: &RungContext) -> Result<f64> {
    let q = ctx.q();
    if q <= 1.0 {
        return Err(Error::Parameter(format!("score requires q > 1, got q = {q}")));
    }
    let r = |x: f64| x.powf(1.0 / q);
    let lo = r(a.mu_lo()) + r(1.0 - a.nu_lo());
    let hi = r(a.mu_hi()) + r(1.0 - a.nu_hi());
    Ok(0.5 * (params.alpha * lo + params.beta * hi))
}

/// Orders by score. Equal scores compare `Equal`; callers break ties by
/// position.
pub fn compare(a: &IvqRofn, b: &IvqRofn, params: ScoreParams, ctx: &RungContext) -> Result<Ordering> {
    Ok(score(a, params, ctx)?.total_cmp(&score(b, params, ctx)?))
}

/// Earlier interval score functions, kept for comparison only.
pub mod diagnostics {
    use crate::error::{Error, Result};
    use crate::number::IvqRofn;

    pub fn score_cheng(a: &IvqRofn) -> f64 {
        0.5 * (a.mu_lo() - a.nu_lo() + a.mu_hi() - a.nu_hi()) + 1.0
    }

    pub fn score_bai(a: &IvqRofn) -> f64 {
        let (ul, uh, vl, vh) = (a.mu_lo(), a.mu_hi(), a.nu_lo(), a.nu_hi());
        0.5 * (ul + uh + ul * (1.0 - ul - vl) + uh * (1.0 - uh - vh))
    }

    pub fn score_gongma(a: &IvqRofn) -> Result<f64> {
        let (ul, uh, vl, vh) = (a.mu_lo(), a.mu_hi(), a.nu_lo(), a.nu_hi());
        let den = vh + vl + uh + ul;
        if den == 0.0 {
            return Err(Error::DivisionByZero(format!("Gong-Ma score of {a}")));
        }
        Ok(0.5 * (vh + vl - uh - ul) + (uh + ul + 2.0 * (uh * ul - vh * vl)) / den)
    }
}

//! The IVq-ROF number type and its classic arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::DecisionMatrix;

/// `<[mu_lo, mu_hi], [nu_lo, nu_hi]>`. The rung lives in [`RungContext`].
///
/// Serialized as the 4-array `[mu_lo, mu_hi, nu_lo, nu_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct IvqRofn {
    mu_lo: f64,
    mu_hi: f64,
    nu_lo: f64,
    nu_hi: f64,
}

impl IvqRofn {
    /// `<[1,1],[0,0]>`
    pub const POSITIVE_IDEAL: IvqRofn = IvqRofn::raw(1.0, 1.0, 0.0, 0.0);
    /// `<[0,0],[1,1]>`
    pub const NEGATIVE_IDEAL: IvqRofn = IvqRofn::raw(0.0, 0.0, 1.0, 1.0);

    /// Checks ranges and interval order. The rung constraint is checked
    /// separately by [`RungContext::check`].
    pub fn new(mu_lo: f64, mu_hi: f64, nu_lo: f64, nu_hi: f64) -> Result<Self> {
        let a = IvqRofn::raw(mu_lo, mu_hi, nu_lo, nu_hi);
        for (name, x) in [("mu_lo", mu_lo), ("mu_hi", mu_hi), ("nu_lo", nu_lo), ("nu_hi", nu_hi)] {
            if !x.is_finite() || !(0.0..=1.0).contains(&x) {
                return Err(Error::Validity(format!("{name} = {x} outside [0, 1] in {a}")));
            }
        }
        if mu_lo > mu_hi {
            return Err(Error::Validity(format!("mu_lo > mu_hi in {a}")));
        }
        if nu_lo > nu_hi {
            return Err(Error::Validity(format!("nu_lo > nu_hi in {a}")));
        }
        Ok(a)
    }

    pub(crate) const fn raw(mu_lo: f64, mu_hi: f64, nu_lo: f64, nu_hi: f64) -> Self {
        IvqRofn { mu_lo, mu_hi, nu_lo, nu_hi }
    }

    pub fn mu_lo(&self) -> f64 {
        self.mu_lo
    }
    pub fn mu_hi(&self) -> f64 {
        self.mu_hi
    }
    pub fn nu_lo(&self) -> f64 {
        self.nu_lo
    }
    pub fn nu_hi(&self) -> f64 {
        self.nu_hi
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.mu_lo, self.mu_hi, self.nu_lo, self.nu_hi]
    }

    /// Swaps membership and non-membership.
    pub fn complement(&self) -> Self {
        IvqRofn::raw(self.nu_lo, self.nu_hi, self.mu_lo, self.mu_hi)
    }
}

impl From<IvqRofn> for [f64; 4] {
    fn from(a: IvqRofn) -> Self {
        a.to_array()
    }
}

impl TryFrom<[f64; 4]> for IvqRofn {
    type Error = Error;
    fn try_from(c: [f64; 4]) -> Result<Self> {
        IvqRofn::new(c[0], c[1], c[2], c[3])
    }
}

impl std::fmt::Display for IvqRofn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match f.precision() {
            Some(p) => {
                write!(f, "<[{:.p$}, {:.p$}], [{:.p$}, {:.p$}]>", self.mu_lo, self.mu_hi, self.nu_lo, self.nu_hi)
            }
            None => write!(f, "<[{}, {}], [{}, {}]>", self.mu_lo, self.mu_hi, self.nu_lo, self.nu_hi),
        }
    }
}

/// Rung `q`, Yager parameter `p` and the tolerance policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RungContext {
    q: f64,
    p: f64,
    eps_valid: f64,
    eps_clamp: f64,
}

impl RungContext {
    pub const EPS_VALID: f64 = 1e-9;
    pub const EPS_CLAMP: f64 = 1e-12;

    pub fn new(q: f64, p: f64) -> Result<Self> {
        if !q.is_finite() || q < 1.0 {
            return Err(Error::Parameter(format!("rung q = {q} must be a finite real >= 1")));
        }
        if !p.is_finite() || p < 1.0 {
            return Err(Error::Parameter(format!("Yager p = {p} must be a finite real >= 1")));
        }
        Ok(RungContext { q, p, eps_valid: Self::EPS_VALID, eps_clamp: Self::EPS_CLAMP })
    }

    pub fn with_tolerances(mut self, eps_valid: f64, eps_clamp: f64) -> Result<Self> {
        if !(eps_valid >= 0.0 && eps_clamp >= 0.0) {
            return Err(Error::Parameter("tolerances must be >= 0".into()));
        }
        self.eps_valid = eps_valid;
        self.eps_clamp = eps_clamp;
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q
    }
    pub fn p(&self) -> f64 {
        self.p
    }
    pub fn eps_valid(&self) -> f64 {
        self.eps_valid
    }
    pub fn eps_clamp(&self) -> f64 {
        self.eps_clamp
    }

    /// Rung constraint `mu_hi^q + nu_hi^q <= 1 + eps_valid`.
    pub fn check(&self, a: &IvqRofn) -> Result<()> {
        let s = a.mu_hi.powf(self.q) + a.nu_hi.powf(self.q);
        if s > 1.0 + self.eps_valid {
            return Err(Error::Validity(format!("mu_hi^q + nu_hi^q = {s:.6} > 1 at q = {} for {a}", self.q)));
        }
        Ok(())
    }

    pub fn is_valid(&self, a: &IvqRofn) -> bool {
        self.check(a).is_ok()
    }

    pub fn arith(&self) -> Arith<'_> {
        Arith::new(self)
    }
}

/// Counts of clamps applied to intermediates before root extraction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClampTrace {
    /// Within `eps_clamp` of [0, 1].
    pub roundoff: usize,
    /// Beyond `eps_clamp`; the value is clamped anyway.
    pub excursions: usize,
}

impl ClampTrace {
    pub fn total(&self) -> usize {
        self.roundoff + self.excursions
    }

    pub fn merge(&mut self, other: ClampTrace) {
        self.roundoff += other.roundoff;
        self.excursions += other.excursions;
    }
}

/// Classic operations bound to a context, recording clamp events.
///
/// The free functions in this module wrap a throwaway `Arith`; long chains
/// (CRITIC) keep one to collect the trace.
#[derive(Debug)]
pub struct Arith<'a> {
    ctx: &'a RungContext,
    trace: ClampTrace,
}

impl<'a> Arith<'a> {
    pub fn new(ctx: &'a RungContext) -> Self {
        Arith { ctx, trace: ClampTrace::default() }
    }

    pub fn ctx(&self) -> &RungContext {
        self.ctx
    }

    pub fn trace(&self) -> ClampTrace {
        self.trace
    }

    pub(crate) fn unit(&mut self, x: f64) -> f64 {
        if x < 0.0 {
            self.note(-x);
            0.0
        } else if x > 1.0 {
            self.note(x - 1.0);
            1.0
        } else {
            x
        }
    }

    fn note(&mut self, excess: f64) {
        if excess > self.ctx.eps_clamp {
            self.trace.excursions += 1;
        } else {
            self.trace.roundoff += 1;
        }
    }

    /// q-th root of a clamped value.
    pub(crate) fn root(&mut self, x: f64) -> f64 {
        self.unit(x).powf(1.0 / self.ctx.q)
    }

    pub(crate) fn pq(&self, x: f64) -> f64 {
        x.powf(self.ctx.q)
    }

    /// `(x^q + y^q - x^q y^q)^(1/q)`
    fn qsum(&mut self, x: f64, y: f64) -> f64 {
        let (xq, yq) = (self.pq(x), self.pq(y));
        self.root(xq + yq - xq * yq)
    }

    /// `(1 - (1 - x^q)^lambda)^(1/q)`, computed without cancellation for small x.
    fn grow(&mut self, x: f64, lambda: f64) -> f64 {
        let xq = self.pq(x);
        if xq >= 1.0 {
            return self.root(xq);
        }
        self.root(-(lambda * (-xq).ln_1p()).exp_m1())
    }

    pub(crate) fn finish(&mut self, mu_lo: f64, mu_hi: f64, nu_lo: f64, nu_hi: f64) -> IvqRofn {
        let (mut a, b, mut c, d) = (self.unit(mu_lo), self.unit(mu_hi), self.unit(nu_lo), self.unit(nu_hi));
        if a > b {
            self.note(a - b);
            a = b;
        }
        if c > d {
            self.note(c - d);
            c = d;
        }
        IvqRofn::raw(a, b, c, d)
    }

    pub fn add(&mut self, a: &IvqRofn, b: &IvqRofn) -> IvqRofn {
        let ml = self.qsum(a.mu_lo, b.mu_lo);
        let mh = self.qsum(a.mu_hi, b.mu_hi);
        self.finish(ml, mh, a.nu_lo * b.nu_lo, a.nu_hi * b.nu_hi)
    }

    pub fn mul(&mut self, a: &IvqRofn, b: &IvqRofn) -> IvqRofn {
        let nl = self.qsum(a.nu_lo, b.nu_lo);
        let nh = self.qsum(a.nu_hi, b.nu_hi);
        self.finish(a.mu_lo * b.mu_lo, a.mu_hi * b.mu_hi, nl, nh)
    }

    pub fn scale(&mut self, lambda: f64, a: &IvqRofn) -> Result<IvqRofn> {
        positive("scale", lambda)?;
        let ml = self.grow(a.mu_lo, lambda);
        let mh = self.grow(a.mu_hi, lambda);
        Ok(self.finish(ml, mh, a.nu_lo.powf(lambda), a.nu_hi.powf(lambda)))
    }

    pub fn power(&mut self, a: &IvqRofn, lambda: f64) -> Result<IvqRofn> {
        positive("power", lambda)?;
        let nl = self.grow(a.nu_lo, lambda);
        let nh = self.grow(a.nu_hi, lambda);
        Ok(self.finish(a.mu_lo.powf(lambda), a.mu_hi.powf(lambda), nl, nh))
    }

    pub fn sub(&mut self, a: &IvqRofn, b: &IvqRofn) -> IvqRofn {
        let nl = self.qsum(a.nu_lo, b.mu_lo);
        let nh = self.qsum(a.nu_hi, b.mu_hi);
        self.finish(a.mu_lo * b.nu_lo, a.mu_hi * b.nu_hi, nl, nh)
    }

    pub fn div(&mut self, a: &IvqRofn, b: &IvqRofn) -> IvqRofn {
        let ml = self.qsum(a.mu_lo, b.nu_lo);
        let mh = self.qsum(a.mu_hi, b.nu_hi);
        self.finish(ml, mh, a.nu_lo * b.mu_lo, a.nu_hi * b.mu_hi)
    }

    /// Left-to-right fold of [`Arith::add`]; `None` for an empty slice.
    pub fn sum(&mut self, items: &[IvqRofn]) -> Option<IvqRofn> {
        let (first, rest) = items.split_first()?;
        Some(rest.iter().fold(*first, |acc, x| self.add(&acc, x)))
    }
}

fn positive(op: &str, lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{op} requires lambda > 0, got {lambda}")))
    }
}

pub fn add(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> IvqRofn {
    ctx.arith().add(a, b)
}

pub fn mul(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> IvqRofn {
    ctx.arith().mul(a, b)
}

pub fn scale(lambda: f64, a: &IvqRofn, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().scale(lambda, a)
}

pub fn power(a: &IvqRofn, lambda: f64, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().power(a, lambda)
}

pub fn sub(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> IvqRofn {
    ctx.arith().sub(a, b)
}

pub fn div(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> IvqRofn {
    ctx.arith().div(a, b)
}

/// Hesitancy interval `[pi_lo, pi_hi]`.
pub fn hesitancy(a: &IvqRofn, ctx: &RungContext) -> Result<(f64, f64)> {
    ctx.check(a)?;
    let mut ar = ctx.arith();
    let lo = ar.root(1.0 - ar.pq(a.mu_hi) - ar.pq(a.nu_hi));
    let hi = ar.root(1.0 - ar.pq(a.mu_lo) - ar.pq(a.nu_lo));
    Ok((lo, hi.max(lo)))
}

/// Smallest integer q >= 1 with `mu_hi^q + nu_hi^q <= 1` (up to
/// `RungContext::EPS_VALID`) on every cell of every matrix.
pub fn infer_q(matrices: &[DecisionMatrix]) -> Result<u32> {
    let mut best = None::<u32>;
    for (t, m) in matrices.iter().enumerate() {
        for (i, j, a) in m.iter_cells() {
            let q = cell_rung(a).ok_or_else(|| {
                Error::Infeasible(format!(
                    "expert {}, row {}, col {}: no finite q satisfies mu_hi^q + nu_hi^q <= 1 for {a}",
                    t + 1,
                    i + 1,
                    j + 1
                ))
            })?;
            best = Some(best.map_or(q, |b| b.max(q)));
        }
    }
    best.ok_or_else(|| Error::Domain("infer_q needs at least one entry".into()))
}

fn cell_rung(a: &IvqRofn) -> Option<u32> {
    let ok = |q: u32| a.mu_hi.powi(q as i32) + a.nu_hi.powi(q as i32) <= 1.0 + RungContext::EPS_VALID;
    if ok(1) {
        return Some(1);
    }
    // ok is monotone in q: bracket, then bisect.
    let mut hi = 2u32;
    while !ok(hi) {
        hi = hi.checked_mul(2).filter(|&h| h <= 1 << 30)?;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

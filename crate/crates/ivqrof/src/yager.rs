//! Yager t-conorm/t-norm arithmetic. The parameter `p` comes from the context.

use crate::error::{Error, Result};
use crate::number::{Arith, IvqRofn, RungContext};
use crate::numeric::ordered_sum;

impl Arith<'_> {
    /// `min{1, (x^p + y^p)^(1/p)}`
    fn ysum(&self, x: f64, y: f64) -> f64 {
        let p = self.ctx().p();
        let (hi, lo) = if x >= y { (x, y) } else { (y, x) };
        if hi == 0.0 {
            return 0.0;
        }
        // scaled by the larger term so small inputs do not underflow at large p
        (hi * (1.0 + (lo / hi).powf(p)).powf(1.0 / p)).min(1.0)
    }

    /// `min{1, (delta x^p)^(1/p)}`
    fn yscale(&self, delta: f64, x: f64) -> f64 {
        let p = self.ctx().p();
        (delta.powf(1.0 / p) * x).min(1.0)
    }

    /// `1 - min{1, (sum c_i (1 - z_i)^p)^(1/p)}`, accurate when every z_i is small.
    pub(crate) fn co_ysum(&self, terms: &[(f64, f64)]) -> f64 {
        let p = self.ctx().p();
        let excess = ordered_sum(terms.iter().map(|t| t.0)) - 1.0;
        let t = excess + ordered_sum(terms.iter().map(|&(c, z)| c * (p * (-z).ln_1p()).exp_m1()));
        if t >= 0.0 {
            0.0
        } else {
            -((t.ln_1p() / p).exp_m1())
        }
    }

    pub fn yager_add(&mut self, a: &IvqRofn, b: &IvqRofn) -> IvqRofn {
        let ml = self.ysum(self.pq(a.mu_lo()), self.pq(b.mu_lo()));
        let mh = self.ysum(self.pq(a.mu_hi()), self.pq(b.mu_hi()));
        let nl = self.co_ysum(&[(1.0, self.pq(a.nu_lo())), (1.0, self.pq(b.nu_lo()))]);
        let nh = self.co_ysum(&[(1.0, self.pq(a.nu_hi())), (1.0, self.pq(b.nu_hi()))]);
        let (ml, mh) = (self.root(ml), self.root(mh));
        let (nl, nh) = (self.root(nl), self.root(nh));
        self.finish(ml, mh, nl, nh)
    }

    pub fn yager_mul(&mut self, a: &IvqRofn, b: &IvqRofn) -> IvqRofn {
        self.yager_add(&a.complement(), &b.complement()).complement()
    }

    pub fn yager_scale(&mut self, delta: f64, a: &IvqRofn) -> Result<IvqRofn> {
        positive(delta)?;
        let ml = self.yscale(delta, self.pq(a.mu_lo()));
        let mh = self.yscale(delta, self.pq(a.mu_hi()));
        let nl = self.co_ysum(&[(delta, self.pq(a.nu_lo()))]);
        let nh = self.co_ysum(&[(delta, self.pq(a.nu_hi()))]);
        let (ml, mh) = (self.root(ml), self.root(mh));
        let (nl, nh) = (self.root(nl), self.root(nh));
        Ok(self.finish(ml, mh, nl, nh))
    }

    pub fn yager_power(&mut self, a: &IvqRofn, delta: f64) -> Result<IvqRofn> {
        Ok(self.yager_scale(delta, &a.complement())?.complement())
    }
}

fn positive(delta: f64) -> Result<()> {
    if delta.is_finite() && delta > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("Yager scalar requires delta > 0, got {delta}")))
    }
}

pub fn yager_add(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> IvqRofn {
    ctx.arith().yager_add(a, b)
}

pub fn yager_mul(a: &IvqRofn, b: &IvqRofn, ctx: &RungContext) -> IvqRofn {
    ctx.arith().yager_mul(a, b)
}

pub fn yager_scale(delta: f64, a: &IvqRofn, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().yager_scale(delta, a)
}

pub fn yager_power(a: &IvqRofn, delta: f64, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().yager_power(a, delta)
}

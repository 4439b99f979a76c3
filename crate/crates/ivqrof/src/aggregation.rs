//! Yager weighted average and geometric aggregation in closed form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number::{Arith, IvqRofn, RungContext};
use crate::numeric::ordered_sum;

/// Weights in [0, 1] summing to 1 within [`WeightVector::TOLERANCE`].
/// Accepted as given, never renormalized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub const TOLERANCE: f64 = 1e-9;

    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Domain("weight vector is empty".into()));
        }
        if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(0.0..=1.0).contains(*w)) {
            return Err(Error::Parameter(format!("weight {} = {w} outside [0, 1]", i + 1)));
        }
        let s = ordered_sum(weights.iter().copied());
        if (s - 1.0).abs() > Self::TOLERANCE {
            return Err(Error::Parameter(format!("weights sum to {s}, expected 1")));
        }
        Ok(WeightVector(weights))
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("weight vector is empty".into()));
        }
        Ok(WeightVector(vec![1.0 / n as f64; n]))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl TryFrom<Vec<f64>> for WeightVector {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        WeightVector::new(v)
    }
}

impl From<WeightVector> for Vec<f64> {
    fn from(w: WeightVector) -> Self {
        w.0
    }
}

fn check_shape(items: &[IvqRofn], w: &WeightVector) -> Result<()> {
    if items.is_empty() {
        return Err(Error::Domain("cannot aggregate an empty sequence".into()));
    }
    if items.len() != w.len() {
        return Err(Error::Shape(format!("{} items but {} weights", items.len(), w.len())));
    }
    Ok(())
}

impl Arith<'_> {
    /// `min{1, (sum w_i x_i^p)^(1/p)}`, summed in canonical order.
    fn weighted_ysum(&self, w: &WeightVector, xs: impl Iterator<Item = f64>) -> f64 {
        let p = self.ctx().p();
        let xs: Vec<f64> = xs.collect();
        let top = xs.iter().copied().fold(0.0, f64::max);
        if top == 0.0 {
            return 0.0;
        }
        let s = ordered_sum(w.as_slice().iter().zip(&xs).map(|(wi, x)| wi * (x / top).powf(p)));
        (top * s.powf(1.0 / p)).min(1.0)
    }

    pub fn ywa(&mut self, items: &[IvqRofn], w: &WeightVector) -> Result<IvqRofn> {
        check_shape(items, w)?;
        let ml = self.weighted_ysum(w, items.iter().map(|a| self.pq(a.mu_lo())));
        let mh = self.weighted_ysum(w, items.iter().map(|a| self.pq(a.mu_hi())));
        let co = |f: fn(&IvqRofn) -> f64| -> Vec<(f64, f64)> {
            w.as_slice().iter().zip(items).map(|(&wi, a)| (wi, self.pq(f(a)))).collect()
        };
        let nl = self.co_ysum(&co(IvqRofn::nu_lo));
        let nh = self.co_ysum(&co(IvqRofn::nu_hi));
        let (ml, mh) = (self.root(ml), self.root(mh));
        let (nl, nh) = (self.root(nl), self.root(nh));
        Ok(self.finish(ml, mh, nl, nh))
    }

    pub fn ywg(&mut self, items: &[IvqRofn], w: &WeightVector) -> Result<IvqRofn> {
        let swapped: Vec<IvqRofn> = items.iter().map(IvqRofn::complement).collect();
        Ok(self.ywa(&swapped, w)?.complement())
    }
}

/// Yager weighted average (IVq-ROFYWA).
pub fn ivqrofywa(items: &[IvqRofn], w: &WeightVector, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().ywa(items, w)
}

/// Yager weighted geometric (IVq-ROFYWG).
pub fn ivqrofywg(items: &[IvqRofn], w: &WeightVector, ctx: &RungContext) -> Result<IvqRofn> {
    ctx.arith().ywg(items, w)
}

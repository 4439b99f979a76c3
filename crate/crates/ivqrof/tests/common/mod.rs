//! Shared test helpers: an 80-digit fixed-point oracle, random instance
//! generators and fixture loaders.
#![allow(dead_code)]

use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ivqrof::pipeline::GroupProblem;
use ivqrof::{DecisionMatrix, IvqRofn};

pub const DIGITS: u32 = 80;

/// Decimal fixed point, value = n / 10^DIGITS, truncating.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fx(BigInt);

fn scale() -> BigInt {
    BigInt::from(10u32).pow(DIGITS)
}

impl Fx {
    pub fn int(n: i64) -> Fx {
        Fx(BigInt::from(n) * scale())
    }

    pub fn zero() -> Fx {
        Fx(BigInt::zero())
    }

    pub fn one() -> Fx {
        Fx::int(1)
    }

    /// Exact ratio a / b.
    pub fn ratio(a: i64, b: i64) -> Fx {
        Fx(BigInt::from(a) * scale() / BigInt::from(b))
    }

    /// Exact value of the binary double (to 80 digits).
    pub fn from_f64(x: f64) -> Fx {
        assert!(x.is_finite());
        if x == 0.0 {
            return Fx::zero();
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
        let mut n = BigInt::from(mant) * scale();
        if e >= 0 {
            n <<= e as usize;
        } else {
            n >>= (-e) as usize;
        }
        Fx(if neg { -n } else { n })
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}e-{}", self.0, DIGITS).parse().unwrap()
    }

    pub fn powi(&self, n: u32) -> Fx {
        let mut acc = Fx::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// n-th root of a nonnegative value.
    pub fn root(&self, n: u32) -> Fx {
        assert!(!self.0.is_negative(), "root of negative");
        let radicand = &self.0 * scale().pow(n - 1);
        Fx(radicand.nth_root(n))
    }

    /// x^(num/den) for nonnegative x.
    pub fn pow_ratio(&self, num: u32, den: u32) -> Fx {
        self.powi(num).root(den)
    }

    pub fn min(self, other: Fx) -> Fx {
        std::cmp::min(self, other)
    }

    /// Clamps to [0, 1].
    pub fn unit(self) -> Fx {
        std::cmp::max(Fx::zero(), self.min(Fx::one()))
    }

    pub fn abs(&self) -> Fx {
        Fx(self.0.abs())
    }

    pub fn is_one(&self) -> bool {
        self.0 == scale() * BigInt::one()
    }
}

impl Add for &Fx {
    type Output = Fx;
    fn add(self, o: &Fx) -> Fx {
        Fx(&self.0 + &o.0)
    }
}

impl Sub for &Fx {
    type Output = Fx;
    fn sub(self, o: &Fx) -> Fx {
        Fx(&self.0 - &o.0)
    }
}

impl Mul for &Fx {
    type Output = Fx;
    fn mul(self, o: &Fx) -> Fx {
        Fx(&self.0 * &o.0 / scale())
    }
}

/// An IVq-ROF number in the oracle's arithmetic.
#[derive(Clone, Debug)]
pub struct Fn4 {
    pub ul: Fx,
    pub uh: Fx,
    pub vl: Fx,
    pub vh: Fx,
}

impl Fn4 {
    pub fn of(a: &IvqRofn) -> Fn4 {
        Fn4 {
            ul: Fx::from_f64(a.mu_lo()),
            uh: Fx::from_f64(a.mu_hi()),
            vl: Fx::from_f64(a.nu_lo()),
            vh: Fx::from_f64(a.nu_hi()),
        }
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [self.ul.to_f64(), self.uh.to_f64(), self.vl.to_f64(), self.vh.to_f64()]
    }
}

/// Integer-rung classic arithmetic written out term by term.
pub struct Oracle {
    pub q: u32,
    pub p: u32,
}

impl Oracle {
    fn qsum(&self, x: &Fx, y: &Fx) -> Fx {
        let (xq, yq) = (x.powi(self.q), y.powi(self.q));
        (&(&xq + &yq) - &(&xq * &yq)).unit().root(self.q)
    }

    pub fn add(&self, a: &Fn4, b: &Fn4) -> Fn4 {
        Fn4 { ul: self.qsum(&a.ul, &b.ul), uh: self.qsum(&a.uh, &b.uh), vl: &a.vl * &b.vl, vh: &a.vh * &b.vh }
    }

    pub fn mul(&self, a: &Fn4, b: &Fn4) -> Fn4 {
        Fn4 { ul: &a.ul * &b.ul, uh: &a.uh * &b.uh, vl: self.qsum(&a.vl, &b.vl), vh: self.qsum(&a.vh, &b.vh) }
    }

    pub fn sub(&self, a: &Fn4, b: &Fn4) -> Fn4 {
        Fn4 { ul: &a.ul * &b.vl, uh: &a.uh * &b.vh, vl: self.qsum(&a.vl, &b.ul), vh: self.qsum(&a.vh, &b.uh) }
    }

    pub fn div(&self, a: &Fn4, b: &Fn4) -> Fn4 {
        Fn4 { ul: self.qsum(&a.ul, &b.vl), uh: self.qsum(&a.uh, &b.vh), vl: &a.vl * &b.ul, vh: &a.vh * &b.uh }
    }

    /// `1 - (1 - x^q)^(num/den)`, then the q-th root.
    fn grow(&self, x: &Fx, num: u32, den: u32) -> Fx {
        (&Fx::one() - &(&Fx::one() - &x.powi(self.q)).unit().pow_ratio(num, den)).unit().root(self.q)
    }

    /// Scalar multiple by num/den.
    pub fn scale(&self, num: u32, den: u32, a: &Fn4) -> Fn4 {
        Fn4 {
            ul: self.grow(&a.ul, num, den),
            uh: self.grow(&a.uh, num, den),
            vl: a.vl.pow_ratio(num, den),
            vh: a.vh.pow_ratio(num, den),
        }
    }

    pub fn power(&self, a: &Fn4, num: u32, den: u32) -> Fn4 {
        Fn4 {
            ul: a.ul.pow_ratio(num, den),
            uh: a.uh.pow_ratio(num, den),
            vl: self.grow(&a.vl, num, den),
            vh: self.grow(&a.vh, num, den),
        }
    }

    pub fn hesitancy(&self, a: &Fn4) -> (Fx, Fx) {
        let q = self.q;
        let lo = &(&Fx::one() - &a.uh.powi(q)) - &a.vh.powi(q);
        let hi = &(&Fx::one() - &a.ul.powi(q)) - &a.vl.powi(q);
        (lo.unit().root(q), hi.unit().root(q))
    }

    pub fn distance(&self, a: &Fn4, b: &Fn4) -> Fx {
        let q = self.q;
        let lo = &(&a.ul.powi(q) - &b.ul.powi(q)) - &(&a.vl.powi(q) - &b.vl.powi(q));
        let hi = &(&a.uh.powi(q) - &b.uh.powi(q)) - &(&a.vh.powi(q) - &b.vh.powi(q));
        &(&lo.abs() + &hi.abs()) * &Fx::ratio(1, 4)
    }

    /// `min{1, (x^p + y^p)^(1/p)}`
    fn ysum(&self, x: &Fx, y: &Fx) -> Fx {
        (&x.powi(self.p) + &y.powi(self.p)).root(self.p).min(Fx::one())
    }

    pub fn yager_add(&self, a: &Fn4, b: &Fn4) -> Fn4 {
        let q = self.q;
        let one = Fx::one();
        let m = |x: &Fx, y: &Fx| self.ysum(&x.powi(q), &y.powi(q)).root(q);
        let n = |x: &Fx, y: &Fx| (&one - &self.ysum(&(&one - &x.powi(q)), &(&one - &y.powi(q)))).root(q);
        Fn4 { ul: m(&a.ul, &b.ul), uh: m(&a.uh, &b.uh), vl: n(&a.vl, &b.vl), vh: n(&a.vh, &b.vh) }
    }

    pub fn yager_mul(&self, a: &Fn4, b: &Fn4) -> Fn4 {
        let q = self.q;
        let one = Fx::one();
        let m = |x: &Fx, y: &Fx| (&one - &self.ysum(&(&one - &x.powi(q)), &(&one - &y.powi(q)))).root(q);
        let n = |x: &Fx, y: &Fx| self.ysum(&x.powi(q), &y.powi(q)).root(q);
        Fn4 { ul: m(&a.ul, &b.ul), uh: m(&a.uh, &b.uh), vl: n(&a.vl, &b.vl), vh: n(&a.vh, &b.vh) }
    }

    /// `min{1, (delta x^p)^(1/p)}`
    fn yscale(&self, delta: &Fx, x: &Fx) -> Fx {
        (delta * &x.powi(self.p)).root(self.p).min(Fx::one())
    }

    pub fn yager_scale(&self, delta: &Fx, a: &Fn4) -> Fn4 {
        let q = self.q;
        let one = Fx::one();
        let m = |x: &Fx| self.yscale(delta, &x.powi(q)).root(q);
        let n = |x: &Fx| (&one - &self.yscale(delta, &(&one - &x.powi(q)))).root(q);
        Fn4 { ul: m(&a.ul), uh: m(&a.uh), vl: n(&a.vl), vh: n(&a.vh) }
    }

    pub fn yager_power(&self, a: &Fn4, delta: &Fx) -> Fn4 {
        let q = self.q;
        let one = Fx::one();
        let m = |x: &Fx| (&one - &self.yscale(delta, &(&one - &x.powi(q)))).root(q);
        let n = |x: &Fx| self.yscale(delta, &x.powi(q)).root(q);
        Fn4 { ul: m(&a.ul), uh: m(&a.uh), vl: n(&a.vl), vh: n(&a.vh) }
    }

    /// Closed-form Yager weighted average.
    pub fn ywa(&self, items: &[Fn4], w: &[Fx]) -> Fn4 {
        let q = self.q;
        let one = Fx::one();
        let wsum = |f: &dyn Fn(&Fn4) -> Fx| {
            let mut s = Fx::zero();
            for (a, wi) in items.iter().zip(w) {
                s = &s + &(wi * &f(a).powi(self.p));
            }
            s.root(self.p).min(Fx::one())
        };
        Fn4 {
            ul: wsum(&|a| a.ul.powi(q)).root(q),
            uh: wsum(&|a| a.uh.powi(q)).root(q),
            vl: (&one - &wsum(&|a| &one - &a.vl.powi(q))).unit().root(q),
            vh: (&one - &wsum(&|a| &one - &a.vh.powi(q))).unit().root(q),
        }
    }

    pub fn ywg(&self, items: &[Fn4], w: &[Fx]) -> Fn4 {
        let q = self.q;
        let one = Fx::one();
        let wsum = |f: &dyn Fn(&Fn4) -> Fx| {
            let mut s = Fx::zero();
            for (a, wi) in items.iter().zip(w) {
                s = &s + &(wi * &f(a).powi(self.p));
            }
            s.root(self.p).min(Fx::one())
        };
        Fn4 {
            ul: (&one - &wsum(&|a| &one - &a.ul.powi(q))).unit().root(q),
            uh: (&one - &wsum(&|a| &one - &a.uh.powi(q))).unit().root(q),
            vl: wsum(&|a| a.vl.powi(q)).root(q),
            vh: wsum(&|a| a.vh.powi(q)).root(q),
        }
    }

    pub fn fold_add(&self, items: &[Fn4]) -> Fn4 {
        let mut acc = items[0].clone();
        for x in &items[1..] {
            acc = self.add(&acc, x);
        }
        acc
    }
}

pub fn close4(got: &IvqRofn, want: [f64; 4], tol: f64) -> bool {
    got.to_array().iter().zip(want).all(|(g, w)| (g - w).abs() <= tol)
}

pub fn assert_close4(got: &IvqRofn, want: [f64; 4], tol: f64, what: &str) {
    assert!(close4(got, want, tol), "{what}: got {got}, want {want:?} (tol {tol})");
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random number valid at rung q.
pub fn random_number<R: Rng>(r: &mut R, q: f64) -> IvqRofn {
    let uh: f64 = r.gen();
    let vmax = (1.0 - uh.powf(q)).max(0.0).powf(1.0 / q);
    let vh = vmax * r.gen::<f64>();
    let ul = uh * r.gen::<f64>();
    let vl = vh * r.gen::<f64>();
    IvqRofn::new(ul, uh, vl, vh).unwrap()
}

/// Random weights summing to one (the last absorbs roundoff).
pub fn random_weights<R: Rng>(r: &mut R, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| r.gen_range(0.05..1.0)).collect();
    let s: f64 = raw.iter().sum();
    let mut w: Vec<f64> = raw.iter().map(|x| x / s).collect();
    let head: f64 = w[..n - 1].iter().sum();
    w[n - 1] = 1.0 - head;
    w
}

pub fn random_matrix<R: Rng>(r: &mut R, m: usize, n: usize, q: f64) -> DecisionMatrix {
    let cells = (0..m).map(|_| (0..n).map(|_| random_number(r, q)).collect()).collect();
    DecisionMatrix::new(cells, vec![ivqrof::Polarity::Benefit; n]).unwrap()
}

pub fn data_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn load(name: &str) -> GroupProblem {
    let text = std::fs::read_to_string(data_path(name)).unwrap();
    ivqrof::io::parse_problem(&text).unwrap()
}

pub fn case_study() -> GroupProblem {
    load("case_study.toml")
}

pub fn n4(a: f64, b: f64, c: f64, d: f64) -> IvqRofn {
    IvqRofn::new(a, b, c, d).unwrap()
}

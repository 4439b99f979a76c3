//! Scalar helpers shared by the fuzzy modules.

/// Sums the terms in ascending order (by `f64::total_cmp`).
///
/// The result depends only on the multiset of terms, so permuting the inputs
/// never changes a single bit.
pub fn ordered_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut v: Vec<f64> = terms.into_iter().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v.into_iter().fold(0.0, |acc, x| acc + x)
}

/// Rounds half away from zero at `decimals` places, deciding on the exact
/// binary value (0.295 is stored below 0.295 and rounds to 0.29).
pub fn round_half_away(x: f64, decimals: u32) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let d = decimals as usize;
    let s = format!("{:.*}", d + 30, x.abs());
    let (int_part, frac) = s.split_once('.').unwrap_or((s.as_str(), ""));
    let kept = format!("{}{}", int_part, &frac[..d]);
    let up = frac.as_bytes().get(d).is_some_and(|&c| c >= b'5');
    let mut n: u128 = kept.parse().unwrap_or(0);
    if up {
        n += 1;
    }
    let r: f64 = format!("{}e-{}", n, d).parse().unwrap_or(f64::NAN);
    if x < 0.0 {
        -r
    } else {
        r
    }
}

/// Formats with `decimals` places after [`round_half_away`].
pub fn fixed(x: f64, decimals: u32) -> String {
    format!("{:.*}", decimals as usize, round_half_away(x, decimals))
}

//! Discrete power-law fit for degree sequences: maximum-likelihood exponent
//! for each candidate lower cutoff, with the cutoff chosen to minimize the
//! Kolmogorov-Smirnov distance between the empirical and fitted tails.

/// Smallest tail considered when scanning cutoffs.
pub const MIN_TAIL: usize = 10;

const ALPHA_LO: f64 = 1.0 + 1e-9;
const ALPHA_HI: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub xmin: usize,
    /// KS distance at the selected cutoff.
    pub ks_distance: f64,
    /// Observations at or above `xmin`.
    pub tail_len: usize,
}

// B_2j / (2j)! for j = 1..=8
const EM_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
];

/// Hurwitz zeta `sum_{k>=0} (q + k)^-s` for `s > 1`, `q > 0`, via
/// Euler-Maclaurin summation after shifting `q` past 10.
pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    debug_assert!(s > 1.0 && q > 0.0);
    let mut sum = 0.0;
    let mut a = q;
    while a < 10.0 {
        sum += a.powf(-s);
        a += 1.0;
    }
    let a_pow = a.powf(-s);
    sum += a * a_pow / (s - 1.0) + 0.5 * a_pow;
    // Running product s(s+1)...(s+2j-2) * a^(-s-2j+1)
    let inv_a2 = 1.0 / (a * a);
    let mut term = s * a_pow / a;
    for (j, c) in EM_COEFFS.iter().enumerate() {
        sum += c * term;
        let k = 2.0 * j as f64;
        term *= (s + k + 1.0) * (s + k + 2.0) * inv_a2;
    }
    sum
}

/// Closed-form approximation `1 + n / sum ln(x / (xmin - 1/2))`. Biased for
/// small `xmin`; used only to seed the exact estimate in tests and reports.
pub fn approximate_alpha(tail: &[usize], xmin: usize) -> f64 {
    let shift = xmin as f64 - 0.5;
    let s: f64 = tail.iter().map(|&x| (x as f64 / shift).ln()).sum();
    1.0 + tail.len() as f64 / s
}

/// Exact discrete MLE for the exponent given a cutoff: maximizes
/// `-alpha * sum ln x - n ln zeta(alpha, xmin)` by golden-section search
/// (the log-likelihood is concave in alpha).
pub fn mle_alpha(n: usize, sum_ln: f64, xmin: usize) -> f64 {
    let q = xmin as f64;
    let mean_ln = sum_ln / n as f64;
    let neg_ll = |alpha: f64| alpha * mean_ln + hurwitz_zeta(alpha, q).ln();
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (ALPHA_LO, ALPHA_HI);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (neg_ll(c), neg_ll(d));
    while hi - lo > 1e-10 {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = neg_ll(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = neg_ll(d);
        }
    }
    0.5 * (lo + hi)
}

/// KS distance between the empirical CDF of a sorted tail (given as distinct
/// values with counts) and the fitted discrete power law, over every integer
/// from `xmin` to the largest value.
fn ks_distance(values: &[usize], counts: &[usize], n: usize, alpha: f64) -> f64 {
    let xmin = values[0] as f64;
    let norm = hurwitz_zeta(alpha, xmin);
    let fitted_cdf = |x: usize| 1.0 - hurwitz_zeta(alpha, x as f64 + 1.0) / norm;
    let mut cum = 0usize;
    let mut worst: f64 = 0.0;
    for (k, (&v, &c)) in values.iter().zip(counts).enumerate() {
        // Just before the jump at v the empirical CDF is still at `cum`.
        if k > 0 && v > values[k - 1] + 1 {
            let emp = cum as f64 / n as f64;
            worst = worst.max((emp - fitted_cdf(v - 1)).abs());
        }
        cum += c;
        let emp = cum as f64 / n as f64;
        worst = worst.max((emp - fitted_cdf(v)).abs());
    }
    worst
}

/// Fits a discrete power law to the positive entries of `degrees`. Returns
/// `None` with fewer than [`MIN_TAIL`] positive values or when they are all
/// equal.
pub fn powerlaw_fit(degrees: &[usize]) -> Option<PowerLawFit> {
    let mut xs: Vec<usize> = degrees.iter().copied().filter(|&d| d > 0).collect();
    if xs.len() < MIN_TAIL {
        return None;
    }
    xs.sort_unstable();
    let mut values = Vec::new();
    let mut counts = Vec::new();
    for &x in &xs {
        if values.last() == Some(&x) {
            *counts.last_mut().unwrap() += 1;
        } else {
            values.push(x);
            counts.push(1);
        }
    }
    if values.len() < 2 {
        return None;
    }
    // Suffix sums of counts and of count * ln(value).
    let k = values.len();
    let mut tail_n = vec![0usize; k + 1];
    let mut tail_ln = vec![0.0f64; k + 1];
    for i in (0..k).rev() {
        tail_n[i] = tail_n[i + 1] + counts[i];
        tail_ln[i] = tail_ln[i + 1] + counts[i] as f64 * (values[i] as f64).ln();
    }
    let mut best: Option<PowerLawFit> = None;
    for i in 0..k - 1 {
        let n = tail_n[i];
        if n < MIN_TAIL {
            break;
        }
        let xmin = values[i];
        let alpha = mle_alpha(n, tail_ln[i], xmin);
        let d = ks_distance(&values[i..], &counts[i..], n, alpha);
        if best.is_none_or(|b| d < b.ks_distance) {
            best = Some(PowerLawFit {
                alpha,
                xmin,
                ks_distance: d,
                tail_len: n,
            });
        }
    }
    best
}

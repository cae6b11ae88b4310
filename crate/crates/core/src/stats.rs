//! Small numeric helpers shared by the samplers and summaries.

/// Arithmetic mean; 0 for an empty slice.
pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    kahan_sum(xs.iter().copied()) / xs.len() as f64
}

/// Sample standard deviation (n - 1 divisor).
pub fn sample_sd(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss = kahan_sum(xs.iter().map(|x| (x - m) * (x - m)));
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Compensated summation; deterministic for a fixed iteration order and
/// far less drift than naive accumulation on long streams.
pub fn kahan_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut c = 0.0;
    for x in xs {
        let y = x - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Empirical quantile with linear interpolation between order statistics.
/// `q` in [0, 1]; `sorted` must be ascending and non-empty.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&q));
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = h - lo as f64;
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Two-sample Kolmogorov-Smirnov statistic: the largest absolute gap
/// between the two empirical CDFs.
pub fn two_sample_ks(xs: &[f64], ys: &[f64]) -> f64 {
    assert!(!xs.is_empty() && !ys.is_empty());
    let mut x: Vec<f64> = xs.to_vec();
    let mut y: Vec<f64> = ys.to_vec();
    x.sort_unstable_by(|a, b| a.total_cmp(b));
    y.sort_unstable_by(|a, b| a.total_cmp(b));
    let (nx, ny) = (x.len() as f64, y.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut max_gap = 0.0f64;
    while i < x.len() && j < y.len() {
        let t = x[i].min(y[j]);
        while i < x.len() && x[i] <= t {
            i += 1;
        }
        while j < y.len() && y[j] <= t {
            j += 1;
        }
        let gap = (i as f64 / nx - j as f64 / ny).abs();
        max_gap = max_gap.max(gap);
    }
    max_gap
}

/// Split-chain potential scale reduction. `series` holds the draws
/// chain-major (`chains` consecutive blocks of `steps` draws); each chain
/// is split in half, so the diagnostic sees 2 * chains sequences.
/// Returns 1.0 when the draws carry no variance at all.
pub fn split_rhat(series: &[f64], chains: usize, steps: usize) -> f64 {
    assert_eq!(series.len(), chains * steps);
    let half = steps / 2;
    if half < 2 {
        return f64::NAN;
    }
    let mut seq_means = Vec::with_capacity(chains * 2);
    let mut seq_vars = Vec::with_capacity(chains * 2);
    for c in 0..chains {
        let chain = &series[c * steps..(c + 1) * steps];
        // Odd step counts drop the middle draw.
        for seq in [&chain[..half], &chain[steps - half..]] {
            seq_means.push(mean(seq));
            seq_vars.push({
                let m = mean(seq);
                kahan_sum(seq.iter().map(|x| (x - m) * (x - m))) / (half - 1) as f64
            });
        }
    }
    let m = seq_means.len() as f64;
    let n = half as f64;
    let grand = mean(&seq_means);
    let b_over_n = kahan_sum(seq_means.iter().map(|x| (x - grand) * (x - grand))) / (m - 1.0);
    let w = mean(&seq_vars);
    if w == 0.0 {
        return 1.0;
    }
    let var_plus = (n - 1.0) / n * w + b_over_n;
    (var_plus / w).sqrt()
}

/// Effective sample size from the initial positive sequence of
/// autocorrelation pair sums (Geyer truncation), summed over chains.
/// Capped at the raw draw count.
pub fn effective_sample_size(series: &[f64], chains: usize, steps: usize) -> f64 {
    assert_eq!(series.len(), chains * steps);
    if steps < 4 {
        return series.len() as f64;
    }
    let mut total = 0.0;
    for c in 0..chains {
        let chain = &series[c * steps..(c + 1) * steps];
        total += steps as f64 / autocorrelation_time(chain);
    }
    total.min(series.len() as f64)
}

fn autocorrelation_time(chain: &[f64]) -> f64 {
    let n = chain.len();
    let m = mean(chain);
    let var = kahan_sum(chain.iter().map(|x| (x - m) * (x - m))) / n as f64;
    if var == 0.0 {
        return 1.0;
    }
    let rho = |lag: usize| -> f64 {
        let mut s = 0.0;
        for i in 0..n - lag {
            s += (chain[i] - m) * (chain[i + lag] - m);
        }
        s / (n as f64 * var)
    };
    let mut tau = 1.0;
    let mut lag = 1;
    while lag + 1 < n {
        let pair = rho(lag) + rho(lag + 1);
        if pair <= 0.0 {
            break;
        }
        tau += 2.0 * pair;
        lag += 2;
    }
    tau.max(1.0)
}

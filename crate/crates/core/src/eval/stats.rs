use serde::{Deserialize, Serialize};

use super::EvalError;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 (Lanczos, g = 7).
fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Continued fraction for I_x(a, b), evaluated with the modified Lentz
/// method. Converges quickly for x < (a + 1) / (a + b + 2).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-15;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=10_000 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
pub fn regularized_beta(x: f64, a: f64, b: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_cf(a, b, x) / a
    } else {
        1.0 - front * beta_cf(b, a, 1.0 - x) / b
    }
}

/// Two-sided tail probability P(|T| >= |t|) of Student's t with `df`
/// degrees of freedom.
pub fn student_t_two_sided(t: f64, df: f64) -> f64 {
    if t.is_infinite() {
        return 0.0;
    }
    regularized_beta(df / (df + t * t), df / 2.0, 0.5).clamp(0.0, 1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TTest {
    pub t: f64,
    /// Two-sided.
    pub p: f64,
    pub df: usize,
    /// All differences equal and non-zero: t is infinite and p is 0.
    pub degenerate: bool,
}

/// Paired t-test on `a[i] - b[i]`.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> Result<TTest, EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::Argument(format!(
            "paired vectors differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    if a.len() < 2 {
        return Err(EvalError::Argument("a paired t-test needs at least 2 pairs".into()));
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = d.len();
    let df = n - 1;
    if d.iter().all(|&x| x == 0.0) {
        return Ok(TTest {
            t: 0.0,
            p: 1.0,
            df,
            degenerate: false,
        });
    }
    if d.iter().all(|&x| x == d[0]) {
        return Ok(TTest {
            t: f64::INFINITY.copysign(d[0]),
            p: 0.0,
            df,
            degenerate: true,
        });
    }
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / df as f64;
    let t = mean / (var / n as f64).sqrt();
    Ok(TTest {
        t,
        p: student_t_two_sided(t, df as f64),
        df,
        degenerate: false,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct McNemar {
    /// Instances only `a` got right.
    pub only_a: usize,
    /// Instances only `b` got right.
    pub only_b: usize,
    /// Continuity-corrected statistic, 1 degree of freedom.
    pub chi2: f64,
    pub p: f64,
}

/// McNemar's test on two aligned 0/1 correctness vectors.
pub fn mcnemar(a: &[u8], b: &[u8]) -> Result<McNemar, EvalError> {
    if a.len() != b.len() {
        return Err(EvalError::Argument(format!(
            "correctness vectors differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    let only_a = a.iter().zip(b).filter(|(x, y)| **x == 1 && **y == 0).count();
    let only_b = a.iter().zip(b).filter(|(x, y)| **x == 0 && **y == 1).count();
    let discordant = (only_a + only_b) as f64;
    if discordant == 0.0 {
        return Ok(McNemar {
            only_a,
            only_b,
            chi2: 0.0,
            p: 1.0,
        });
    }
    let diff = ((only_a as f64 - only_b as f64).abs() - 1.0).max(0.0);
    let chi2 = diff * diff / discordant;
    let p = statrs::function::erf::erfc((chi2 / 2.0).sqrt());
    Ok(McNemar { only_a, only_b, chi2, p })
}

/// Mean of each round-robin fold: instance `i` belongs to fold
/// `i % folds`. Uses `min(folds, len)` folds.
pub fn fold_means(values: &[f64], folds: usize) -> Result<Vec<f64>, EvalError> {
    if folds == 0 {
        return Err(EvalError::Argument("fold count must be at least 1".into()));
    }
    let k = folds.min(values.len());
    let mut sums = vec![0.0; k];
    let mut counts = vec![0usize; k];
    for (i, v) in values.iter().enumerate() {
        sums[i % k] += v;
        counts[i % k] += 1;
    }
    Ok(sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect())
}

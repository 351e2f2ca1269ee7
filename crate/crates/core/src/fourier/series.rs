use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gearbox::success_probability;

/// Quadrature nodes per period used by [`fourier_coefficients`].
pub const DEFAULT_NODES: usize = 1 << 14;

/// `s_N(x) = a0/2 + Σ_n a_n cos(2πnx/P) + b_n sin(2πnx/P)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierSeries {
    pub period: f64,
    pub a0: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierSeries {
    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let w = 2.0 * PI / self.period;
        self.a
            .iter()
            .zip(&self.b)
            .enumerate()
            .fold(self.a0 / 2.0, |acc, (i, (a, b))| {
                let arg = w * (i + 1) as f64 * x;
                acc + a * arg.cos() + b * arg.sin()
            })
    }
}

/// Coefficients by the composite midpoint rule with [`DEFAULT_NODES`] nodes.
pub fn fourier_coefficients(
    f: impl Fn(f64) -> f64,
    period: f64,
    order: usize,
) -> Result<FourierSeries> {
    fourier_coefficients_with_nodes(f, period, order, DEFAULT_NODES)
}

/// Midpoint rule on one period. For smooth periodic `f` this converges
/// geometrically in the node count.
pub fn fourier_coefficients_with_nodes(
    f: impl Fn(f64) -> f64,
    period: f64,
    order: usize,
    nodes: usize,
) -> Result<FourierSeries> {
    if !(period.is_finite() && period > 0.0) {
        return Err(Error::Input(format!("period {period} must be positive")));
    }
    if nodes == 0 {
        return Err(Error::Input("quadrature needs at least one node".into()));
    }
    let h = period / nodes as f64;
    let samples: Vec<(f64, f64)> = (0..nodes)
        .map(|k| {
            let x = (k as f64 + 0.5) * h;
            (x, f(x))
        })
        .collect();
    if let Some((x, v)) = samples.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::Input(format!("f({x}) = {v} is not finite")));
    }
    let scale = 2.0 / nodes as f64;
    let a0 = samples.iter().map(|(_, v)| v).sum::<f64>() * scale;
    let w = 2.0 * PI / period;
    let (mut a, mut b) = (Vec::with_capacity(order), Vec::with_capacity(order));
    for n in 1..=order {
        let (mut ca, mut cb) = (0.0, 0.0);
        for (x, v) in &samples {
            let (s, c) = (w * n as f64 * x).sin_cos();
            ca += v * c;
            cb += v * s;
        }
        a.push(ca * scale);
        b.push(cb * scale);
    }
    Ok(FourierSeries { period, a0, a, b })
}

/// `a'_0 + Σ_n a'_n cos²(πnx/P) + b'_n cos²(πnx/P − π/4)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CosSquaredSeries {
    pub period: f64,
    pub a0_prime: f64,
    pub a_prime: Vec<f64>,
    pub b_prime: Vec<f64>,
}

/// One term `coefficient · cos²(frequency·x + phase)`; the constant term has
/// zero frequency and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosSquaredTerm {
    pub coefficient: f64,
    pub frequency: f64,
    pub phase: f64,
}

impl CosSquaredTerm {
    /// `cos²(frequency·x + phase)`, without the coefficient.
    pub fn shape(&self, x: f64) -> f64 {
        (self.frequency * x + self.phase).cos().powi(2)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coefficient * self.shape(x)
    }
}

impl CosSquaredSeries {
    pub fn zero(period: f64, order: usize) -> Self {
        Self {
            period,
            a0_prime: 0.0,
            a_prime: vec![0.0; order],
            b_prime: vec![0.0; order],
        }
    }

    /// Constant term first, then `a'_n`, `b'_n` interleaved by `n`.
    pub fn terms(&self) -> Vec<CosSquaredTerm> {
        let mut out = vec![CosSquaredTerm {
            coefficient: self.a0_prime,
            frequency: 0.0,
            phase: 0.0,
        }];
        for (i, (a, b)) in self.a_prime.iter().zip(&self.b_prime).enumerate() {
            let frequency = PI * (i + 1) as f64 / self.period;
            out.push(CosSquaredTerm {
                coefficient: *a,
                frequency,
                phase: 0.0,
            });
            out.push(CosSquaredTerm {
                coefficient: *b,
                frequency,
                phase: -FRAC_PI_4,
            });
        }
        out
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms().iter().map(|t| t.eval(x)).sum()
    }

    /// Leading coefficients `a'_0, a'_1, …, a'_N`.
    pub fn leading_cos_terms(&self) -> Vec<f64> {
        std::iter::once(self.a0_prime)
            .chain(self.a_prime.iter().copied())
            .collect()
    }
}

/// Double-angle rewrite: `cos(2y) = 2cos²(y) − 1` and
/// `sin(2y) = 2cos²(y − π/4) − 1`.
pub fn to_cos_squared(series: &FourierSeries) -> CosSquaredSeries {
    let shift: f64 = series.a.iter().zip(&series.b).map(|(a, b)| a + b).sum();
    CosSquaredSeries {
        period: series.period,
        a0_prime: series.a0 / 2.0 - shift,
        a_prime: series.a.iter().map(|a| 2.0 * a).collect(),
        b_prime: series.b.iter().map(|b| 2.0 * b).collect(),
    }
}

/// `2^(1 − 2^d)`: scales `1/ρ²_d` into `[0, 1]`.
pub fn normalization_constant(depth: u32) -> f64 {
    assert!(depth >= 1, "depth must be at least 1");
    2f64.powi(1 - (1i32 << depth))
}

/// `D_d(θ) = 1/ρ²_d(θ)`.
pub fn gearbox_inverse_success(depth: u32, theta: f64) -> f64 {
    1.0 / success_probability(depth, theta)
}

/// Fourier series of `normalization_constant(d) · D_d` over the period `π/2`.
pub fn gearbox_target_series(depth: u32, order: usize) -> Result<FourierSeries> {
    if depth == 0 {
        return Err(Error::Input("depth must be at least 1".into()));
    }
    let n = normalization_constant(depth);
    fourier_coefficients(|t| n * gearbox_inverse_success(depth, t), FRAC_PI_2, order)
}

/// Sign split `D = D⁺ − D⁻` with both parts nonnegative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitSeries {
    pub positive: CosSquaredSeries,
    /// Holds the magnitudes of the negative coefficients.
    pub negative: CosSquaredSeries,
}

impl SplitSeries {
    pub fn eval(&self, x: f64) -> f64 {
        self.positive.eval(x) - self.negative.eval(x)
    }
}

pub fn split_series(series: &CosSquaredSeries) -> SplitSeries {
    let pos = |v: &f64| v.max(0.0);
    let neg = |v: &f64| (-v).max(0.0);
    SplitSeries {
        positive: CosSquaredSeries {
            period: series.period,
            a0_prime: pos(&series.a0_prime),
            a_prime: series.a_prime.iter().map(pos).collect(),
            b_prime: series.b_prime.iter().map(pos).collect(),
        },
        negative: CosSquaredSeries {
            period: series.period,
            a0_prime: neg(&series.a0_prime),
            a_prime: series.a_prime.iter().map(neg).collect(),
            b_prime: series.b_prime.iter().map(neg).collect(),
        },
    }
}

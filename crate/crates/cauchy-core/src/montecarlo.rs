//! Monte Carlo lane: Metropolis sampling of the coupled eigenvalue gas,
//! Haar-unitary draws, and statistical checks of the unitary-group reduction.
//!
//! The joint eigenvalue density of the coupled ensemble is proportional to
//!
//! ```text
//!   Δ(X)² Δ(Y)² / ∏_{i,j}(x_i + y_j) · α(X) β(Y)
//! ```
//!
//! on positive coordinates. [`sample_gas`] runs a Metropolis chain on this
//! density with single-coordinate log-space proposals, so positivity holds by
//! construction. [`haar_unitary`] draws from the unitary group, and
//! [`harnad_orlov_check`] tests the group integral
//!
//! ```text
//!   ∫ dU / det(X + U Y U†)^N  =  det[1/(x_i + y_j)] / (Δ(X) Δ(Y))
//! ```
//!
//! by direct averaging over Haar draws. Everything here runs in f64: the
//! statistical error of any Monte Carlo estimate dwarfs double rounding, and
//! throughput matters more than digits.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::measures::Weight;
use crate::par;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Proposal widths adapt toward this acceptance rate during burn-in.
const ACCEPT_TARGET: f64 = 0.30;
/// The det^{-N} estimator is too heavy-tailed past desk scale.
const HAAR_CHECK_MAX: usize = 4;
/// Haar draws per fixed-stream chunk, so parallel reductions are order-fixed.
const HAAR_CHUNK: usize = 2048;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral E₁(x) for x > 0: the tail transform of the unit
/// exponential weight, which is the exact one-point function at N = 1.
/// Series around the origin, modified Lentz continued fraction beyond it.
pub fn exp_int_e1(x: f64) -> f64 {
    assert!(x > 0.0, "E1 needs a positive argument");
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..=40 {
            term *= -x / k as f64;
            sum -= term / k as f64;
            if term.abs() < 1e-20 {
                break;
            }
        }
        -EULER_GAMMA - x.ln() + sum
    } else {
        let mut b = x + 1.0;
        let mut c = 1e308;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=200 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-x).exp()
    }
}

/// One recorded state of the gas chain.
#[derive(Clone, Debug, PartialEq)]
pub struct GasSample {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub log_density: f64,
}

/// Metropolis chain on the eigenvalue gas. Coordinates move one at a time by
/// multiplicative (log-space) Gaussian proposals; each proposal width adapts
/// toward [`ACCEPT_TARGET`] during burn-in and is frozen afterwards, which
/// keeps detailed balance for the recorded stretch.
pub struct GasChain {
    n: usize,
    x: Vec<f64>,
    y: Vec<f64>,
    log_density: f64,
    /// Log-space proposal widths, x coordinates first, then y.
    step_scale: Vec<f64>,
    accepts: Vec<u64>,
    proposals: Vec<u64>,
    alpha: Weight,
    beta: Weight,
    rng: ChaCha8Rng,
}

impl GasChain {
    /// Fresh chain with a deterministic spread-out initial configuration.
    /// `stream` selects an independent substream of the same seed, so chain
    /// batches stay reproducible when run in parallel.
    pub fn new(alpha: &Weight, beta: &Weight, n: usize, seed: u64, stream: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("gas chain needs at least one particle per species"));
        }
        let x = spread(alpha, n);
        let y = spread(beta, n);
        let log_density = log_gas_density(alpha, beta, &x, &y);
        if !log_density.is_finite() {
            return Err(Error::domain("initial gas configuration has zero density"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(GasChain {
            n,
            x,
            y,
            log_density,
            step_scale: vec![0.5; 2 * n],
            accepts: vec![0; 2 * n],
            proposals: vec![0; 2 * n],
            alpha: alpha.clone(),
            beta: beta.clone(),
            rng,
        })
    }

    pub fn state(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }

    pub fn log_density(&self) -> f64 {
        self.log_density
    }

    /// Recomputes the log density from the current state; the cached value
    /// must match this to within accumulation noise.
    pub fn recompute_log_density(&self) -> f64 {
        log_gas_density(&self.alpha, &self.beta, &self.x, &self.y)
    }

    pub fn acceptance_rate(&self) -> f64 {
        let p: u64 = self.proposals.iter().sum();
        if p == 0 {
            return 0.0;
        }
        self.accepts.iter().sum::<u64>() as f64 / p as f64
    }

    fn total_accepts(&self) -> u64 {
        self.accepts.iter().sum()
    }

    /// One sweep: a single-coordinate proposal on every coordinate in fixed
    /// order. Each coordinate update is a reversible Metropolis kernel for
    /// the gas density, so the sweep composition preserves it.
    fn sweep(&mut self, adapt: bool) {
        for k in 0..2 * self.n {
            self.proposals[k] += 1;
            let old = if k < self.n { self.x[k] } else { self.y[k - self.n] };
            let xi: f64 = self.rng.sample(StandardNormal);
            let new = old * (self.step_scale[k] * xi).exp();
            if k < self.n {
                self.x[k] = new;
            } else {
                self.y[k - self.n] = new;
            }
            let lp_new = log_gas_density(&self.alpha, &self.beta, &self.x, &self.y);
            // multiplicative proposal: the log-space Jacobian weights the
            // ratio by new/old
            let ln_ratio = lp_new - self.log_density + (new / old).ln();
            let accepted = self.rng.gen::<f64>().ln() < ln_ratio;
            if accepted {
                self.log_density = lp_new;
                self.accepts[k] += 1;
            } else if k < self.n {
                self.x[k] = old;
            } else {
                self.y[k - self.n] = old;
            }
            if adapt {
                let gain = (self.proposals[k] as f64).sqrt().recip().min(0.25);
                let push = if accepted { 1.0 - ACCEPT_TARGET } else { -ACCEPT_TARGET };
                self.step_scale[k] = (self.step_scale[k] * (gain * push).exp()).clamp(1e-4, 1e3);
            }
        }
    }
}

/// Deterministic starting configuration inside the first support interval.
fn spread(w: &Weight, n: usize) -> Vec<f64> {
    let iv = &w.support[0];
    let lo = iv.lo.to_f64();
    match &iv.hi {
        Some(hi) => {
            let h = hi.to_f64();
            (0..n).map(|i| lo + (h - lo) * (i as f64 + 1.0) / (n as f64 + 1.0)).collect()
        }
        None => (0..n).map(|i| lo + 0.5 + i as f64).collect(),
    }
}

/// Log of the unnormalized gas density at (X, Y); −∞ off the support and on
/// the coincidence set, where the squared Vandermonde kills the density.
pub fn log_gas_density(alpha: &Weight, beta: &Weight, xs: &[f64], ys: &[f64]) -> f64 {
    let mut lp = 0.0;
    for (w, zs) in [(alpha, xs), (beta, ys)] {
        for &z in zs {
            if !(z > 0.0) || !z.is_finite() || !w.contains_f64(z) {
                return f64::NEG_INFINITY;
            }
            lp += w.ln_f64(z);
        }
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                let gap = (zs[i] - zs[j]).abs();
                if gap == 0.0 {
                    return f64::NEG_INFINITY;
                }
                lp += 2.0 * gap.ln();
            }
        }
    }
    for &x in xs {
        for &y in ys {
            lp -= (x + y).ln();
        }
    }
    lp
}

/// Runs a gas chain for `steps` sweeps and returns the recorded stretch; the
/// first `steps/10` sweeps are the adaptation window and are discarded.
/// Deterministic given the seed.
pub fn sample_gas(
    alpha: &Weight,
    beta: &Weight,
    n: usize,
    steps: usize,
    seed: u64,
) -> Result<Vec<GasSample>> {
    sample_gas_stream(alpha, beta, n, steps, seed, 0)
}

/// [`sample_gas`] on an explicit RNG substream.
pub fn sample_gas_stream(
    alpha: &Weight,
    beta: &Weight,
    n: usize,
    steps: usize,
    seed: u64,
    stream: u64,
) -> Result<Vec<GasSample>> {
    let mut chain = burned_in(alpha, beta, n, steps, seed, stream)?;
    let burn = steps / 10;
    let mut out = Vec::with_capacity(steps - burn);
    for _ in 0..steps - burn {
        chain.sweep(false);
        out.push(GasSample {
            x: chain.x.clone(),
            y: chain.y.clone(),
            log_density: chain.log_density,
        });
    }
    Ok(out)
}

/// Final states of `chains` independent chains, one RNG substream each, run
/// in parallel with an order-fixed collection. Independent chains give clean
/// error bars where a single stream's autocorrelation is hard to budget.
pub fn sample_gas_ensemble(
    alpha: &Weight,
    beta: &Weight,
    n: usize,
    steps: usize,
    seed: u64,
    chains: usize,
) -> Result<Vec<GasSample>> {
    let ids: Vec<u64> = (0..chains as u64).collect();
    let runs = par::map_collect(&ids, |&stream| -> Result<GasSample> {
        let mut chain = burned_in(alpha, beta, n, steps, seed, stream)?;
        let burn = steps / 10;
        for _ in 0..steps - burn {
            chain.sweep(false);
        }
        Ok(GasSample {
            x: chain.x.clone(),
            y: chain.y.clone(),
            log_density: chain.log_density,
        })
    });
    runs.into_iter().collect()
}

fn burned_in(
    alpha: &Weight,
    beta: &Weight,
    n: usize,
    steps: usize,
    seed: u64,
    stream: u64,
) -> Result<GasChain> {
    let mut chain = GasChain::new(alpha, beta, n, seed, stream)?;
    let burn = steps / 10;
    for _ in 0..burn {
        chain.sweep(true);
    }
    if burn > 0 && chain.total_accepts() == 0 {
        return Err(Error::domain(
            "no proposal accepted during the adaptation window; weight pair looks pathological",
        ));
    }
    Ok(chain)
}

// -- Haar unitaries -----------------------------------------------------------

/// Haar-distributed N×N unitary. Independent complex Gaussian entries, then
/// modified Gram–Schmidt on columns: classical normalization leaves diag(R)
/// real positive, which is exactly the phase convention under which the
/// orthonormal factor of a Gaussian matrix is Haar.
pub fn haar_unitary(n: usize, seed: u64) -> Mat<Complex64> {
    assert!(n >= 1, "haar_unitary needs n ≥ 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_from_rng(n, &mut rng)
}

fn haar_from_rng(n: usize, rng: &mut ChaCha8Rng) -> Mat<Complex64> {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        for i in 0..j {
            let qi = cols[i].clone();
            let r: Complex64 = (0..n).map(|k| qi[k].conj() * cols[j][k]).sum();
            for k in 0..n {
                cols[j][k] -= r * qi[k];
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for k in 0..n {
            cols[j][k] /= norm;
        }
    }
    Mat::from_fn(n, n, |i, j| cols[j][i])
}

/// det(X + U diag(Y) U†), real by Hermitian positive-definiteness.
fn coupling_det(xs: &[f64], ys: &[f64], u: &Mat<Complex64>) -> f64 {
    let n = xs.len();
    let m = Mat::from_fn(n, n, |i, j| {
        let mut s = Complex64::new(0.0, 0.0);
        for k in 0..n {
            s += u.at(i, k) * ys[k] * u.at(j, k).conj();
        }
        if i == j {
            s += xs[i];
        }
        s
    });
    m.determinant().re
}

// -- reduction checks ---------------------------------------------------------

/// Monte Carlo test of the group integral against its Cauchy determinant
/// closed form.
#[derive(Clone, Debug)]
pub struct HaarCheck {
    pub mc_mean: f64,
    pub closed_form: f64,
    pub std_error: f64,
    pub rel_gap: f64,
    pub samples: usize,
    pub pass: bool,
}

impl HaarCheck {
    pub fn to_check(&self) -> crate::report::CheckResult {
        crate::report::CheckResult::new(
            "harnad-orlov",
            format!("samples={}", self.samples),
            (self.mc_mean - self.closed_form).abs(),
            3.0 * self.std_error + 1e-12 * self.closed_form.abs(),
        )
    }
}

/// Averages 1/det(X + U Y U†)^N over Haar draws and compares with
/// det[1/(x_i+y_j)] / (Δ(X)Δ(Y)). Passes when the gap is within three
/// standard errors (plus a rounding floor for the zero-variance N = 1 case).
pub fn harnad_orlov_check(xs: &[f64], ys: &[f64], samples: usize, seed: u64) -> Result<HaarCheck> {
    let n = xs.len();
    if n == 0 || ys.len() != n {
        return Err(Error::invalid("spectra must be nonempty and of equal length"));
    }
    if n > HAAR_CHECK_MAX {
        return Err(Error::domain("det^{-N} estimator variance grows too fast past N = 4"));
    }
    if samples == 0 {
        return Err(Error::invalid("need at least one Haar draw"));
    }
    for zs in [xs, ys] {
        if zs.iter().any(|&z| !(z > 0.0) || !z.is_finite()) {
            return Err(Error::domain("spectra must be strictly positive"));
        }
        for i in 0..n {
            for j in i + 1..n {
                if (zs[i] - zs[j]).abs() <= 1e-12 * (zs[i] + zs[j]) {
                    return Err(Error::domain(
                        "coincident spectrum entries degenerate the Cauchy determinant",
                    ));
                }
            }
        }
    }
    let cauchy = Mat::from_fn(n, n, |i, j| 1.0 / (xs[i] + ys[j]));
    let closed_form = cauchy.determinant() / (vandermonde(xs) * vandermonde(ys));

    let chunks = samples.div_ceil(HAAR_CHUNK);
    let ids: Vec<u64> = (0..chunks as u64).collect();
    let partial = par::map_collect(&ids, |&c| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c);
        let count = HAAR_CHUNK.min(samples - c as usize * HAAR_CHUNK);
        let mut s = 0.0;
        let mut s2 = 0.0;
        for _ in 0..count {
            let u = haar_from_rng(n, &mut rng);
            let f = coupling_det(xs, ys, &u).powi(-(n as i32));
            s += f;
            s2 += f * f;
        }
        (s, s2)
    });
    let (mut s, mut s2) = (0.0, 0.0);
    for (a, b) in partial {
        s += a;
        s2 += b;
    }
    let m = samples as f64;
    let mc_mean = s / m;
    let var = ((s2 - m * mc_mean * mc_mean) / (m - 1.0).max(1.0)).max(0.0);
    let std_error = (var / m).sqrt();
    let gap = mc_mean - closed_form;
    Ok(HaarCheck {
        mc_mean,
        closed_form,
        std_error,
        rel_gap: gap / closed_form,
        samples,
        pass: gap.abs() <= 3.0 * std_error + 1e-12 * closed_form.abs(),
    })
}

fn vandermonde(zs: &[f64]) -> f64 {
    let mut p = 1.0;
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            p *= zs[j] - zs[i];
        }
    }
    p
}

/// Monte Carlo estimate of the partition function for the unit exponential
/// pair, with its standard error. Uses the normalized squared-Vandermonde
/// reference ensemble: with L_N = ∏_{j≤N} j!(j−1)! the Laguerre normalization,
/// the gas-average of ∏_{i,j}(x_i+y_j) equals L_N²/Z_gas, and Z_N = Z_gas/N!.
pub fn laguerre_partition_mc(
    n: usize,
    steps: usize,
    chains: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if chains < 2 {
        return Err(Error::invalid("partition estimate needs at least two chains for an error bar"));
    }
    let w = Weight::laguerre();
    let finals = sample_gas_ensemble(&w, &w, n, steps, seed, chains)?;
    let ws: Vec<f64> = finals
        .iter()
        .map(|s| {
            let mut p = 1.0;
            for &x in &s.x {
                for &y in &s.y {
                    p *= x + y;
                }
            }
            p
        })
        .collect();
    let m = chains as f64;
    let mean = ws.iter().sum::<f64>() / m;
    let var = ws.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0);
    let se = (var / m).sqrt();
    let l: f64 = (1..=n).map(|j| factorial(j) * factorial(j - 1)).product();
    let nf = factorial(n);
    let z = l * l / (nf * mean);
    Ok((z, z * se / mean))
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Two-sided Kolmogorov–Smirnov distance between a sample and a reference
/// distribution function.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut v = samples.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("KS sample contains NaN"));
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &t) in v.iter().enumerate() {
        let f = cdf(t);
        d = d.max((f - i as f64 / n).abs()).max((f - (i as f64 + 1.0) / n).abs());
    }
    d
}

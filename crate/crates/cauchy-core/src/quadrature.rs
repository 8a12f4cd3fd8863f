//! Panel-based Gauss–Legendre quadrature in multiprecision.
//!
//! The integrands in this crate are analytic on the open integration domain
//! but typically carry a logarithmic singularity at an endpoint (Cauchy
//! couplings) and exponential decay at infinity. The strategy is uniform
//! everywhere: geometric panel refinement toward singular endpoints, doubling
//! panels along decay tails, and a fixed-order Gauss–Legendre rule per panel.
//! Nodes never touch panel endpoints, so endpoint singularities are only ever
//! seen through the shrinking panel lengths.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::precision;
use crate::scalar::{Bf, Cx};

/// Default Gauss–Legendre order per panel.
pub const DEFAULT_ORDER: usize = 48;

/// Gauss–Legendre rule on [-1, 1].
#[derive(Clone, Debug)]
pub struct GlRule {
    pub order: usize,
    pub nodes: Vec<Bf>,
    pub weights: Vec<Bf>,
}

static RULES: Lazy<Mutex<HashMap<(u32, usize), Arc<GlRule>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Legendre P_m and P'_m at x by the three-term recurrence.
fn legendre_pair(m: usize, x: &Bf) -> (Bf, Bf) {
    let mut p_prev = Bf::one();
    let mut p = x.clone();
    if m == 0 {
        return (Bf::one(), Bf::zero());
    }
    for k in 1..m {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let kp = Bf::from_int(k as i64);
        let two_k_one = Bf::from_int((2 * k + 1) as i64);
        let next = (&two_k_one * x * &p - &kp * &p_prev) / Bf::from_int((k + 1) as i64);
        p_prev = p;
        p = next;
    }
    // P'_m = m (x P_m - P_{m-1}) / (x^2 - 1)
    let mf = Bf::from_int(m as i64);
    let denom = x * x - Bf::one();
    let dp = mf * (x * &p - &p_prev) / denom;
    (p, dp)
}

fn compute_rule(order: usize) -> GlRule {
    assert!(order >= 2, "rule order below 2");
    let prec = precision::bits();
    let newton_steps = (32 - (prec / 53).leading_zeros()) as usize + 3;
    let mut nodes = vec![Bf::zero(); order];
    let mut weights = vec![Bf::zero(); order];
    let half = (order + 1) / 2;
    for k in 0..half {
        // Chebyshev-flavored initial guess, then Newton at full precision.
        let guess =
            (std::f64::consts::PI * (k as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut x = Bf::from_f64(guess);
        for _ in 0..newton_steps {
            let (p, dp) = legendre_pair(order, &x);
            x = x - p / dp;
        }
        let (_, dp) = legendre_pair(order, &x);
        // w = 2 / ((1 - x^2) P'_m(x)^2)
        let one_minus = Bf::one() - &x * &x;
        let w = Bf::from_int(2) / (one_minus * &dp * &dp);
        nodes[order - 1 - k] = x.clone();
        weights[order - 1 - k] = w.clone();
        nodes[k] = -x;
        weights[k] = w;
    }
    if order % 2 == 1 {
        let mid = order / 2;
        let (_, dp) = legendre_pair(order, &Bf::zero());
        nodes[mid] = Bf::zero();
        weights[mid] = Bf::from_int(2) / (&dp * &dp);
    }
    GlRule { order, nodes, weights }
}

/// Cached rule for the current working precision.
pub fn gl_rule(order: usize) -> Arc<GlRule> {
    let key = (precision::bits(), order);
    let mut cache = RULES.lock().unwrap();
    cache.entry(key).or_insert_with(|| Arc::new(compute_rule(order))).clone()
}

/// Values accumulable against real quadrature weights.
pub trait QuadValue: Clone {
    fn q_zero() -> Self;
    fn q_axpy(&mut self, w: &Bf, v: &Self);
}

impl QuadValue for Bf {
    fn q_zero() -> Self {
        Bf::zero()
    }
    fn q_axpy(&mut self, w: &Bf, v: &Self) {
        *self += w * v;
    }
}

impl QuadValue for Cx {
    fn q_zero() -> Self {
        Cx::zero()
    }
    fn q_axpy(&mut self, w: &Bf, v: &Self) {
        self.re += w * &v.re;
        self.im += w * &v.im;
    }
}

/// Expands panels into a flat list of mapped nodes and scaled weights.
pub fn nodes_weights(panels: &[(Bf, Bf)], order: usize) -> (Vec<Bf>, Vec<Bf>) {
    let rule = gl_rule(order);
    let mut xs = Vec::with_capacity(panels.len() * order);
    let mut ws = Vec::with_capacity(panels.len() * order);
    let half = Bf::from_f64(0.5);
    for (a, b) in panels {
        let mid = (a + b) * &half;
        let rad = (b - a) * &half;
        for (t, w) in rule.nodes.iter().zip(rule.weights.iter()) {
            xs.push(&mid + &rad * t);
            ws.push(&rad * w);
        }
    }
    (xs, ws)
}

/// Σ w_i f(x_i) over a flattened node set.
pub fn integrate_nodes<V: QuadValue>(
    xs: &[Bf],
    ws: &[Bf],
    mut f: impl FnMut(&Bf) -> V,
) -> V {
    let mut acc = V::q_zero();
    for (x, w) in xs.iter().zip(ws.iter()) {
        acc.q_axpy(w, &f(x));
    }
    acc
}

/// One-shot panel integration.
pub fn integrate_panels<V: QuadValue>(
    panels: &[(Bf, Bf)],
    order: usize,
    f: impl FnMut(&Bf) -> V,
) -> V {
    let (xs, ws) = nodes_weights(panels, order);
    integrate_nodes(&xs, &ws, f)
}

/// Geometric refinement of [a, b] toward a: breakpoints a, a+(b-a)/2^L, ...,
/// a+(b-a)/2, b. The innermost panel still touches a; with an integrable
/// endpoint singularity its contribution is O(2^-L log 2^-L), which is the
/// truncation floor of the scheme.
pub fn panels_geometric_left(a: &Bf, b: &Bf, levels: u32) -> Vec<(Bf, Bf)> {
    let len = b - a;
    let mut panels = Vec::with_capacity(levels as usize + 1);
    let mut hi = b.clone();
    let mut step = len;
    for _ in 0..levels {
        step = step * Bf::from_f64(0.5);
        let lo = a + &step;
        panels.push((lo.clone(), hi));
        hi = lo;
    }
    panels.push((a.clone(), hi));
    panels.reverse();
    panels
}

/// Mirror image of [`panels_geometric_left`], refining toward b.
pub fn panels_geometric_right(a: &Bf, b: &Bf, levels: u32) -> Vec<(Bf, Bf)> {
    panels_geometric_left(&-b, &-a, levels)
        .into_iter()
        .rev()
        .map(|(lo, hi)| (-hi, -lo))
        .collect()
}

/// Panels [a, a+w], [a+w, a+3w], ... with doubling widths until `b` is
/// reached (final panel clipped to b).
pub fn panels_doubling(a: &Bf, b: &Bf, first_width: &Bf) -> Vec<(Bf, Bf)> {
    let mut panels = Vec::new();
    let mut lo = a.clone();
    let mut w = first_width.clone();
    while &lo < b {
        let hi = (&lo + &w).min(b);
        panels.push((lo.clone(), hi.clone()));
        lo = hi;
        w = &w + &w;
    }
    panels
}

/// Uniform split of [a, b] into k panels.
pub fn panels_linear(a: &Bf, b: &Bf, k: usize) -> Vec<(Bf, Bf)> {
    let step = (b - a) / Bf::from_int(k as i64);
    let mut panels = Vec::with_capacity(k);
    let mut lo = a.clone();
    for i in 0..k {
        let hi = if i + 1 == k { b.clone() } else { &lo + &step };
        panels.push((lo.clone(), hi.clone()));
        lo = hi;
    }
    panels
}

/// Geometric refinement levels matched to the working precision: deep enough
/// that the innermost-panel truncation sits well below the quadrature target
/// of roughly half the working digits.
pub fn singular_levels() -> u32 {
    precision::bits() / 2 + 30
}

/// Cutoff T for integrals of f(x)·e^{-x} tails: e^{-T} times moderate
/// polynomial growth stays below the quadrature target.
pub fn exp_tail_cutoff() -> Bf {
    let t = precision::bits() as f64 * std::f64::consts::LN_2 * 0.8 + 160.0;
    Bf::from_f64(t)
}

/// Standard panel set for ∫_0^∞ f(x) e^{-poly(x)} dx where f may carry a
/// log singularity at 0: geometric panels on [0, 1], doubling panels to the
/// exponential cutoff.
pub fn panels_exp_axis() -> Vec<(Bf, Bf)> {
    let one = Bf::one();
    let mut panels = panels_geometric_left(&Bf::zero(), &one, singular_levels());
    panels.extend(panels_doubling(&one, &exp_tail_cutoff(), &one));
    panels
}

/// Panel set for a finite support [a, b], refined toward both endpoints so
/// Cauchy-coupled inner integrals (log-singular at the endpoints reaching 0)
/// and end-point weight behavior are resolved.
pub fn panels_finite(a: &Bf, b: &Bf) -> Vec<(Bf, Bf)> {
    panels_finite_depth(a, b, singular_levels())
}

/// `panels_finite` with an explicit refinement depth, for callers that trade
/// accuracy for node count (nested double quadrature).
pub fn panels_finite_depth(a: &Bf, b: &Bf, levels: u32) -> Vec<(Bf, Bf)> {
    let mid = (a + b) * Bf::from_f64(0.5);
    let mut panels = panels_geometric_left(a, &mid, levels);
    panels.extend(panels_geometric_right(&mid, b, levels));
    panels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(v: f64) -> Bf {
        Bf::from_f64(v)
    }

    #[test]
    fn cubic_is_exact() {
        let panels = vec![(bf(0.0), bf(1.0))];
        let got: Bf = integrate_panels(&panels, 8, |x| x * x * x);
        assert!((got.to_f64() - 0.25).abs() < 1e-30);
    }

    #[test]
    fn exponential_mass() {
        let got: Bf = integrate_panels(&panels_exp_axis(), DEFAULT_ORDER, |x| (-x).exp());
        let err = (got - Bf::one()).abs();
        assert!(err.to_f64() < 1e-40, "err = {:?}", err);
    }

    #[test]
    fn high_moment() {
        // ∫ x^10 e^{-x} = 10!
        let got: Bf =
            integrate_panels(&panels_exp_axis(), DEFAULT_ORDER, |x| x.powi(10) * (-x).exp());
        let want = Bf::from_int(3_628_800);
        let rel = ((got - &want) / &want).abs();
        assert!(rel.to_f64() < 1e-38, "rel = {:?}", rel);
    }

    #[test]
    fn log_singularity() {
        // ∫_0^∞ e^{-x} (-ln x) dx = Euler-Mascheroni constant
        let got: Bf = integrate_panels(&panels_exp_axis(), DEFAULT_ORDER, |x| {
            -(x.ln()) * (-x).exp()
        });
        assert!((got.to_f64() - 0.577_215_664_901_532_9).abs() < 1e-15);
    }

    #[test]
    fn finite_panels_cover() {
        let panels = panels_finite(&bf(0.0), &bf(4.0));
        let got: Bf = integrate_panels(&panels, 24, |x| x.clone());
        assert!((got.to_f64() - 8.0).abs() < 1e-25);
    }
}

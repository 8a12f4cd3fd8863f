//! Weights on the positive half-line, their moments, Cauchy/Weyl transforms,
//! and Plemelj boundary values.
//!
//! A weight is `x^a * exp(-p(x))` restricted to a finite union of intervals
//! in [0, ∞). Two evaluation channels exist: exact rationals where the data
//! allows it (unit-exponential weights, integer moments) and panel quadrature
//! in multiprecision everywhere else.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly;
use crate::quadrature::{
    self, integrate_nodes, integrate_panels, nodes_weights, panels_doubling,
    panels_finite_depth, panels_geometric_left, panels_geometric_right, DEFAULT_ORDER,
};
use crate::scalar::{Bf, Cx, Rat};

pub const WEIGHT_FORM: &str = "x^a*exp(-p(x))";

#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rat,
    /// None encodes +∞.
    pub hi: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    /// Exponent a of the monomial prefactor.
    pub power: u32,
    /// Coefficients of p(x), ascending.
    pub poly: Vec<Rat>,
    pub support: Vec<Interval>,
}

impl Weight {
    pub fn new(power: u32, poly: Vec<Rat>, support: Vec<Interval>) -> Result<Self> {
        let w = Weight { power, poly, support };
        w.validate()?;
        Ok(w)
    }

    /// e^{-x} on [0, ∞).
    pub fn laguerre() -> Self {
        Weight {
            power: 0,
            poly: vec![Rat::zero(), Rat::one()],
            support: vec![Interval { lo: Rat::zero(), hi: None }],
        }
    }

    /// x^a e^{-x} on [0, ∞).
    pub fn laguerre_pow(a: u32) -> Self {
        Weight { power: a, ..Weight::laguerre() }
    }

    /// e^{-x^2} on (0, 4).
    pub fn gaussian_window() -> Self {
        Weight {
            power: 0,
            poly: vec![Rat::zero(), Rat::zero(), Rat::one()],
            support: vec![Interval { lo: Rat::zero(), hi: Some(Rat::from_int(4)) }],
        }
    }

    fn validate(&self) -> Result<()> {
        if self.support.is_empty() {
            return Err(Error::invalid("weight needs at least one support interval"));
        }
        let mut prev_hi: Option<Rat> = None;
        let mut unbounded = false;
        for iv in &self.support {
            if unbounded {
                return Err(Error::invalid("support intervals after an unbounded one"));
            }
            if iv.lo.signum() < 0 {
                return Err(Error::invalid("support must lie in [0, ∞)"));
            }
            if let Some(hi) = &iv.hi {
                if hi <= &iv.lo {
                    return Err(Error::invalid("support interval with hi <= lo"));
                }
            } else {
                unbounded = true;
            }
            if let Some(p) = &prev_hi {
                if &iv.lo < p {
                    return Err(Error::invalid("support intervals must ascend"));
                }
            }
            prev_hi = iv.hi.clone().or(prev_hi);
        }
        if unbounded {
            match poly::degree(&self.poly) {
                Some(d) if d >= 1 && self.poly[d].signum() > 0 => {}
                _ => {
                    return Err(Error::invalid(
                        "unbounded support needs p(x) → ∞ (positive leading coefficient)",
                    ))
                }
            }
        }
        Ok(())
    }

    // -- JSON ---------------------------------------------------------------

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::invalid("weight must be an object"))?;
        let form = obj
            .get("form")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::invalid("weight missing \"form\""))?;
        if form != WEIGHT_FORM {
            return Err(Error::invalid(format!(
                "unsupported weight form {form:?}, expected {WEIGHT_FORM:?}"
            )));
        }
        let a = obj
            .get("a")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::invalid("weight field \"a\" must be a nonnegative integer"))?;
        let poly = obj
            .get("poly")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("weight field \"poly\" must be an array"))?
            .iter()
            .map(rat_from_json)
            .collect::<Result<Vec<_>>>()?;
        let support = obj
            .get("support")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::invalid("weight field \"support\" must be an array"))?
            .iter()
            .map(|iv| {
                let pair = iv
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::invalid("support entries must be [lo, hi] pairs"))?;
                let lo = rat_from_json(&pair[0])?;
                let hi = match &pair[1] {
                    Value::Null => None,
                    Value::String(s) if s == "inf" => None,
                    other => Some(rat_from_json(other)?),
                };
                Ok(Interval { lo, hi })
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::new(a as u32, poly, support)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Weight::from_json_value(&serde_json::from_str(s)?)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "form": WEIGHT_FORM,
            "a": self.power,
            "poly": self.poly.iter().map(|c| Value::String(c.to_string())).collect::<Vec<_>>(),
            "support": self.support.iter().map(|iv| {
                json!([
                    Value::String(iv.lo.to_string()),
                    iv.hi.as_ref().map_or(Value::Null, |h| Value::String(h.to_string())),
                ])
            }).collect::<Vec<_>>(),
        })
    }

    // -- evaluation ----------------------------------------------------------

    /// True when the weight is x^a e^{-x} on [0, ∞): the exact channel.
    pub fn is_unit_exponential(&self) -> bool {
        self.support.len() == 1
            && self.support[0].lo.is_zero()
            && self.support[0].hi.is_none()
            && poly::degree(&self.poly) == Some(1)
            && self.poly[1] == Rat::one()
            && self.poly[0].is_zero()
    }

    pub fn eval_bf(&self, x: &Bf) -> Bf {
        let p = poly::eval(&poly::map(&self.poly, Rat::to_bf), x);
        x.powi(self.power as i64) * (-p).exp()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let coeffs: Vec<f64> = self.poly.iter().map(Rat::to_f64).collect();
        let mut p = 0.0;
        for c in coeffs.iter().rev() {
            p = p * x + c;
        }
        x.powi(self.power as i32) * (-p).exp()
    }

    /// ln of the weight at x > 0 (f64 channel for samplers).
    pub fn ln_f64(&self, x: f64) -> f64 {
        let coeffs: Vec<f64> = self.poly.iter().map(Rat::to_f64).collect();
        let mut p = 0.0;
        for c in coeffs.iter().rev() {
            p = p * x + c;
        }
        self.power as f64 * x.ln() - p
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.support.iter().any(|iv| {
            let lo = iv.lo.to_f64();
            match &iv.hi {
                Some(hi) => x >= lo && x <= hi.to_f64(),
                None => x >= lo,
            }
        })
    }

    /// Strictly interior test with a margin, used to guard transforms.
    pub fn interior_f64(&self, x: f64, margin: f64) -> bool {
        self.support.iter().any(|iv| {
            let lo = iv.lo.to_f64();
            match &iv.hi {
                Some(hi) => x > lo + margin && x < hi.to_f64() - margin,
                None => x > lo + margin,
            }
        })
    }

    // -- quadrature layout ----------------------------------------------------

    /// Truncation point for the decaying tail: p(T) comfortably exceeds the
    /// working-precision budget.
    pub(crate) fn tail_cutoff(&self) -> Bf {
        let target = crate::precision::bits() as f64 * std::f64::consts::LN_2 * 0.8 + 160.0;
        let coeffs: Vec<f64> = self.poly.iter().map(Rat::to_f64).collect();
        let eval = |x: f64| {
            let mut p = 0.0;
            for c in coeffs.iter().rev() {
                p = p * x + c;
            }
            p
        };
        let mut t = 4.0;
        while eval(t) < target && t < 1e8 {
            t *= 2.0;
        }
        Bf::from_f64(t)
    }

    /// Panel decomposition of the support, refined toward interval endpoints
    /// (Cauchy-coupled integrands are log-singular where the support touches
    /// the origin) and truncated along the decay tail.
    pub fn panels(&self) -> Vec<(Bf, Bf)> {
        self.panels_depth(quadrature::singular_levels())
    }

    /// `panels` with an explicit endpoint refinement depth; nested double
    /// quadrature uses a reduced depth to keep the node product affordable.
    pub fn panels_depth(&self, levels: u32) -> Vec<(Bf, Bf)> {
        let mut panels = Vec::new();
        for iv in &self.support {
            let lo = iv.lo.to_bf();
            match &iv.hi {
                Some(hi) => panels.extend(panels_finite_depth(&lo, &hi.to_bf(), levels)),
                None => {
                    let first = &lo + Bf::one();
                    panels.extend(panels_geometric_left(&lo, &first, levels));
                    panels.extend(panels_doubling(&first, &self.tail_cutoff(), &Bf::one()));
                }
            }
        }
        panels
    }

    // -- moments & transforms --------------------------------------------------

    /// Rate c when the weight is x^a e^{-c x} on all of [0, ∞).
    fn exponential_rate(&self) -> Option<&Rat> {
        let full_axis = self.support.len() == 1
            && self.support[0].lo.is_zero()
            && self.support[0].hi.is_none();
        if full_axis
            && poly::degree(&self.poly) == Some(1)
            && self.poly[0].is_zero()
            && self.poly[1].signum() > 0
        {
            Some(&self.poly[1])
        } else {
            None
        }
    }

    /// Exact j-th moment, available in the exponential channel:
    /// ∫ x^{j+a} e^{-c x} dx = (j+a)! / c^{j+a+1}.
    pub fn moment_exact(&self, j: u32) -> Option<Rat> {
        let c = self.exponential_rate()?;
        Some(Rat::factorial(j + self.power) / c.pow_u(j + self.power + 1))
    }

    pub fn moment(&self, j: u32) -> Bf {
        integrate_panels(&self.panels(), DEFAULT_ORDER, |x| x.powi(j as i64) * self.eval_bf(x))
    }

    /// Moment sequence 0..=k_max in the float channel.
    pub fn moments(&self, k_max: u32) -> Vec<Bf> {
        let panels = self.panels();
        let (xs, ws) = nodes_weights(&panels, DEFAULT_ORDER);
        let mut out = vec![Bf::zero(); k_max as usize + 1];
        for (x, w) in xs.iter().zip(ws.iter()) {
            let mut pow = w * self.eval_bf(x);
            for slot in out.iter_mut() {
                *slot += &pow;
                pow = pow * x;
            }
        }
        out
    }

    /// Moment sequence 0..=k_max in the exact channel, when available.
    pub fn moments_exact(&self, k_max: u32) -> Option<Vec<Rat>> {
        (0..=k_max).map(|j| self.moment_exact(j)).collect()
    }

    pub fn mass(&self) -> Bf {
        self.moment(0)
    }

    /// W(z) = ∫ w(x)/(z - x) dx for z off the support.
    pub fn weyl(&self, z: &Cx) -> Result<Cx> {
        self.guard_off_support(z)?;
        Ok(integrate_panels(&self.panels(), DEFAULT_ORDER, |x| {
            let denom = z - &Cx::from_real(x.clone());
            Cx::from_real(self.eval_bf(x)) / denom
        }))
    }

    /// W_*(z) = ∫ w(x)/(z + x) dx, the reflected-measure Weyl function;
    /// requires -z off the support.
    pub fn weyl_star(&self, z: &Cx) -> Result<Cx> {
        self.guard_off_support(&-z)?;
        Ok(integrate_panels(&self.panels(), DEFAULT_ORDER, |x| {
            let denom = z + &Cx::from_real(x.clone());
            Cx::from_real(self.eval_bf(x)) / denom
        }))
    }

    fn guard_off_support(&self, z: &Cx) -> Result<()> {
        if z.im.is_zero() && self.contains_f64(z.re.to_f64()) {
            return Err(Error::domain(
                "evaluation point on the support; request boundary values instead",
            ));
        }
        Ok(())
    }

    /// Plemelj boundary values of the Weyl function at an interior support
    /// point: (W_+, W_-, PV) with W_± = PV ∓ iπ w(x0).
    pub fn boundary_weyl(&self, x0: &Bf) -> Result<(Cx, Cx, Bf)> {
        let pv = pv_cauchy_transform(self, &[Bf::one()], x0)?;
        let jump = Bf::pi() * self.eval_bf(x0);
        let plus = Cx::new(pv.clone(), -&jump);
        let minus = Cx::new(pv.clone(), jump);
        Ok((plus, minus, pv))
    }
}

fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from_int(i))
            } else {
                Err(Error::invalid(format!(
                    "non-integer numeric literal {n}; use a \"p/q\" string for exactness"
                )))
            }
        }
        Value::String(s) => {
            Rat::parse(s).ok_or_else(|| Error::invalid(format!("bad rational literal {s:?}")))
        }
        other => Err(Error::invalid(format!("expected rational, got {other}"))),
    }
}

// ---------------------------------------------------------------------------
// Cauchy transforms of polynomial densities
// ---------------------------------------------------------------------------

/// ∫ f(x) w(x) / (z - x) dx with f given by float coefficients, z off the
/// support. This is the (eq:ps)-pattern first transform.
pub fn cauchy_transform(weight: &Weight, f: &[Bf], z: &Cx) -> Result<Cx> {
    weight.guard_off_support(z)?;
    Ok(integrate_panels(&weight.panels(), DEFAULT_ORDER, |x| {
        let val = poly::eval(f, x) * weight.eval_bf(x);
        Cx::from_real(val) / (z - &Cx::from_real(x.clone()))
    }))
}

/// PV ∫ f(x) w(x) / (x0 - x) dx at an interior support point x0, by odd-part
/// subtraction on a symmetric window plus refined outer panels.
pub fn pv_cauchy_transform(weight: &Weight, f: &[Bf], x0: &Bf) -> Result<Bf> {
    let x0f = x0.to_f64();
    if !weight.interior_f64(x0f, 1e-12) {
        return Err(Error::domain(format!(
            "PV point {x0f} is not strictly interior to the support"
        )));
    }
    let iv = weight
        .support
        .iter()
        .find(|iv| {
            let lo = iv.lo.to_f64();
            match &iv.hi {
                Some(hi) => x0f > lo && x0f < hi.to_f64(),
                None => x0f > lo,
            }
        })
        .expect("interior point without interval");
    let lo = iv.lo.to_bf();
    let g = |x: &Bf| poly::eval(f, x) * weight.eval_bf(x);

    // Symmetric window radius: half the distance to the nearest endpoint,
    // capped at 1.
    let mut h = (x0 - &lo).min(&Bf::one());
    if let Some(hi) = &iv.hi {
        h = h.min(&(hi.to_bf() - x0));
    }
    h = h * Bf::from_f64(0.5);

    // PV over [x0-h, x0+h] = -∫_0^h (g(x0+t) - g(x0-t))/t dt.
    let window_panels = panels_geometric_left(&Bf::zero(), &h, 40);
    let window: Bf = integrate_panels(&window_panels, DEFAULT_ORDER, |t| {
        -(g(&(x0 + t)) - g(&(x0 - t))) / t
    });

    // Left segment [lo, x0-h], refined toward the window edge.
    let left_edge = x0 - &h;
    let mut total = window;
    if left_edge > lo {
        let panels = panels_geometric_right(&lo, &left_edge, 48);
        total += integrate_panels(&panels, DEFAULT_ORDER, |x| g(x) / (x0 - x));
    }

    // Right segment [x0+h, end], refined toward the window edge.
    let right_edge = x0 + &h;
    match &iv.hi {
        Some(hi) => {
            let hi = hi.to_bf();
            if right_edge < hi {
                let panels = panels_geometric_left(&right_edge, &hi, 48);
                total += integrate_panels(&panels, DEFAULT_ORDER, |x| g(x) / (x0 - x));
            }
        }
        None => {
            let near_end = &right_edge + Bf::one();
            let panels = panels_geometric_left(&right_edge, &near_end, 48);
            total += integrate_panels(&panels, DEFAULT_ORDER, |x| g(x) / (x0 - x));
            let tail = panels_doubling(&near_end, &weight.tail_cutoff(), &Bf::one());
            total += integrate_panels(&tail, DEFAULT_ORDER, |x| g(x) / (x0 - x));
        }
    }
    Ok(total)
}

/// Boundary values of the first transform at an interior support point:
/// (plus, minus) = PV ∓ iπ f(x0) w(x0).
pub fn boundary_cauchy_transform(weight: &Weight, f: &[Bf], x0: &Bf) -> Result<(Cx, Cx)> {
    let pv = pv_cauchy_transform(weight, f, x0)?;
    let jump = Bf::pi() * poly::eval(f, x0) * weight.eval_bf(x0);
    Ok((Cx::new(pv.clone(), -&jump), Cx::new(pv, jump)))
}

// ---------------------------------------------------------------------------
// Cauchy-coupled inner integrals m_k(x) = ∫ y^k w(y)/(x+y) dy
// ---------------------------------------------------------------------------

/// Evaluator for the inner integrals m_k(x) = ∫ y^k w(y)/(x+y) dy, x > 0.
///
/// Unit-exponential weights use the closed recurrence
/// G_0(x) = e^x E1(x), G_j(x) = (j-1)! - x G_{j-1}(x), m_k = G_{k+a};
/// anything else falls back to shared-panel quadrature. At the working
/// precision the forward recurrence keeps far more digits than the
/// quadrature targets need on the truncated axis.
#[derive(Clone, Debug)]
pub struct InnerCauchy {
    weight: Weight,
    closed: bool,
}

impl InnerCauchy {
    pub fn new(weight: &Weight) -> Self {
        InnerCauchy { weight: weight.clone(), closed: weight.is_unit_exponential() }
    }

    pub fn values(&self, x: &Bf, kmax: usize) -> Vec<Bf> {
        assert!(x.signum() > 0, "inner integrals need x > 0");
        if self.closed {
            let a = self.weight.power as usize;
            let top = kmax + a;
            let mut g = Vec::with_capacity(top + 1);
            g.push(x.exp() * x.e1());
            let mut fact = Bf::one();
            for j in 1..=top {
                let next = &fact - x * &g[j - 1];
                g.push(next);
                fact *= Bf::from_int(j as i64);
            }
            (0..=kmax).map(|k| g[k + a].clone()).collect()
        } else {
            let panels = self.weight.panels();
            let (ys, ws) = nodes_weights(&panels, DEFAULT_ORDER);
            let mut out = vec![Bf::zero(); kmax + 1];
            for (y, w) in ys.iter().zip(ws.iter()) {
                let base = w * self.weight.eval_bf(y) / (x + y);
                let mut pow = base;
                for slot in out.iter_mut() {
                    *slot += &pow;
                    pow = pow * y;
                }
            }
            out
        }
    }
}

/// Double Weyl function W_{o*i}(z) = -∫∫ o(t) i(s) / ((z+t)(t+s)) dt ds,
/// i.e. the Cauchy transform (at -z, with a sign) of the o-weighted inner
/// transform of i. `W_{α*β}` is `weyl_double_star(α, β, w)`; `W_{β*α}` is
/// `weyl_double_star(β, α, z)`.
pub fn weyl_double_star(outer: &Weight, inner: &Weight, z: &Cx) -> Result<Cx> {
    outer.guard_off_support(&-z)?;
    let table = InnerCauchy::new(inner);
    let panels = outer.panels();
    let (xs, ws) = nodes_weights(&panels, DEFAULT_ORDER);
    Ok(integrate_nodes(&xs, &ws, |x| {
        let inner_val = table.values(x, 0).pop().unwrap();
        let num = Cx::from_real(outer.eval_bf(x) * inner_val);
        -&(num / (z + &Cx::from_real(x.clone())))
    }))
}

/// Unstarred double transform W_{oi*}(z) = ∫∫ o(t) i(s) / ((z-t)(t+s)) dt ds,
/// the ordinary Cauchy transform of the measure o(t)·(∫ i(s)/(t+s) ds) dt.
/// `W_{βα*}` is `weyl_double(β, α, w)`.
pub fn weyl_double(outer: &Weight, inner: &Weight, z: &Cx) -> Result<Cx> {
    outer.guard_off_support(z)?;
    let table = InnerCauchy::new(inner);
    let panels = outer.panels();
    let (xs, ws) = nodes_weights(&panels, DEFAULT_ORDER);
    Ok(integrate_nodes(&xs, &ws, |x| {
        let inner_val = table.values(x, 0).pop().unwrap();
        let num = Cx::from_real(outer.eval_bf(x) * inner_val);
        num / (z - &Cx::from_real(x.clone()))
    }))
}

/// Tags for the transform family attached to a weight pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylTag {
    /// W_α(z) = ∫ α/(z-x)
    Alpha,
    /// W_β(z) = ∫ β/(z-y)
    Beta,
    /// W_{α*}(z) = ∫ α/(z+x)
    AlphaStar,
    /// W_{β*}(z) = ∫ β/(z+y)
    BetaStar,
    /// W_{α*β}(z) = -∫∫ αβ/((z+x)(x+y))
    AlphaStarBeta,
    /// W_{βα*}(z) = ∫∫ αβ/((z-y)(x+y))
    BetaAlphaStar,
    /// W_{β*α}(z) = -∫∫ αβ/((z+y)(x+y)); not among the displayed four,
    /// fixed by the reflection W_{β*α}(z) = W_{βα*}(-z).
    BetaStarAlpha,
}

impl WeylTag {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "alpha" => WeylTag::Alpha,
            "beta" => WeylTag::Beta,
            "alpha_star" => WeylTag::AlphaStar,
            "beta_star" => WeylTag::BetaStar,
            "alpha_star_beta" => WeylTag::AlphaStarBeta,
            "beta_alpha_star" => WeylTag::BetaAlphaStar,
            "beta_star_alpha" => WeylTag::BetaStarAlpha,
            other => return Err(Error::invalid(format!("unknown transform tag {other:?}"))),
        })
    }
}

/// The Weyl transforms of a weight pair as one dispatchable family.
#[derive(Clone, Debug)]
pub struct WeylSet {
    pub alpha: Weight,
    pub beta: Weight,
}

impl WeylSet {
    pub fn new(alpha: &Weight, beta: &Weight) -> Self {
        WeylSet { alpha: alpha.clone(), beta: beta.clone() }
    }

    pub fn eval(&self, tag: WeylTag, z: &Cx) -> Result<Cx> {
        match tag {
            WeylTag::Alpha => self.alpha.weyl(z),
            WeylTag::Beta => self.beta.weyl(z),
            WeylTag::AlphaStar => self.alpha.weyl_star(z),
            WeylTag::BetaStar => self.beta.weyl_star(z),
            WeylTag::AlphaStarBeta => weyl_double_star(&self.alpha, &self.beta, z),
            WeylTag::BetaAlphaStar => weyl_double(&self.beta, &self.alpha, z),
            WeylTag::BetaStarAlpha => weyl_double_star(&self.beta, &self.alpha, z),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let w = Weight::from_json_str(
            r#"{"form":"x^a*exp(-p(x))","a":1,"poly":[0,"1/1"],"support":[[0,null]]}"#,
        )
        .unwrap();
        assert_eq!(w, Weight::laguerre_pow(1));
        let echoed = Weight::from_json_value(&w.to_json_value()).unwrap();
        assert_eq!(echoed, w);
    }

    #[test]
    fn rejects_bad_weights() {
        // constant p on unbounded support has no decay
        assert!(Weight::from_json_str(
            r#"{"form":"x^a*exp(-p(x))","a":0,"poly":[0],"support":[[0,null]]}"#
        )
        .is_err());
        // negative support
        assert!(Weight::from_json_str(
            r#"{"form":"x^a*exp(-p(x))","a":0,"poly":[0,1],"support":[[-1,null]]}"#
        )
        .is_err());
    }

    #[test]
    fn laguerre_moments() {
        let w = Weight::laguerre();
        assert_eq!(w.moment_exact(4), Some(Rat::from_int(24)));
        let q = w.moment(4);
        assert!((q.to_f64() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn weyl_at_minus_one_matches_e1_form() {
        // W_β(-1) = -e E1(1) = -0.5963473623231940...
        let w = Weight::laguerre();
        let z = Cx::from_f64s(-1.0, 0.0);
        let got = w.weyl(&z).unwrap();
        assert!((got.re.to_f64() + 0.596_347_362_323_194).abs() < 1e-14);
        assert!(got.im.to_f64().abs() < 1e-30);
    }

    #[test]
    fn weyl_conjugate_symmetry() {
        let w = Weight::gaussian_window();
        let z = Cx::from_f64s(1.3, 0.7);
        let a = w.weyl(&z).unwrap();
        let b = w.weyl(&z.conj()).unwrap();
        assert!((a.re.to_f64() - b.re.to_f64()).abs() < 1e-25);
        assert!((a.im.to_f64() + b.im.to_f64()).abs() < 1e-25);
    }

    #[test]
    fn pv_matches_exponential_integral() {
        // For e^{-x} on [0,∞): PV ∫ e^{-x}/(x0-x) dx = e^{-x0} Ei(x0).
        let w = Weight::laguerre();
        let x0 = Bf::from_f64(0.8);
        let (plus, minus, pv) = w.boundary_weyl(&x0).unwrap();
        let exact = (-&x0).exp() * x0.eint();
        assert!((&pv - &exact).abs().to_f64() < 1e-40, "pv gap {:e}", (&pv - &exact).to_f64());
        let jump = Bf::pi() * (-&x0).exp();
        assert!((&plus.im + &jump).abs().to_f64() < 1e-40);
        assert!((&minus.im - &jump).abs().to_f64() < 1e-40);
        assert!((&plus.re - &pv).is_zero());
    }

    #[test]
    fn boundary_values_match_offset_extrapolation() {
        // Richardson in ε against W(x0 + iε) for a weight with no closed
        // form, with panels refined toward x0 so the near-axis peak is
        // resolved: W_+ = PV - iπ w(x0).
        let w = Weight::gaussian_window();
        let x0 = Bf::from_f64(1.5);
        let (plus, _minus, _pv) = w.boundary_weyl(&x0).unwrap();
        let mut panels = panels_geometric_right(&Bf::zero(), &x0, 80);
        panels.extend(panels_geometric_left(&x0, &Bf::from_int(4), 80));
        let eval = |eps: f64| {
            let z = Cx::new(x0.clone(), Bf::from_f64(eps));
            integrate_panels(&panels, DEFAULT_ORDER, |x| {
                Cx::from_real(w.eval_bf(x)) / (&z - &Cx::from_real(x.clone()))
            })
        };
        // three-point Richardson: f(ε) ≈ f0 + c ε + d ε²
        let f1 = eval(1e-5);
        let f2 = eval(5e-6);
        let f4 = eval(2.5e-6);
        let extrap = |a: f64, b: f64, c: f64| (a - 6.0 * b + 8.0 * c) / 3.0;
        let re = extrap(f1.re.to_f64(), f2.re.to_f64(), f4.re.to_f64());
        let im = extrap(f1.im.to_f64(), f2.im.to_f64(), f4.im.to_f64());
        assert!((re - plus.re.to_f64()).abs() < 1e-10, "re gap {:e}", re - plus.re.to_f64());
        assert!((im - plus.im.to_f64()).abs() < 1e-10, "im gap {:e}", im - plus.im.to_f64());
    }

    #[test]
    fn inner_cauchy_closed_form_matches_quadrature() {
        let w = Weight::laguerre();
        let closed = InnerCauchy::new(&w);
        let x = Bf::from_f64(0.7);
        let vals = closed.values(&x, 3);
        for (k, v) in vals.iter().enumerate() {
            let direct: Bf = integrate_panels(&w.panels(), DEFAULT_ORDER, |y| {
                y.powi(k as i64) * (-y).exp() / (&x + y)
            });
            let gap = (v - &direct).abs();
            assert!(gap.to_f64() < 1e-35, "k={k} gap={gap:?}");
        }
    }

    #[test]
    fn weyl_star_is_reflected_weyl() {
        // W_{α*}(z) = -W_α(-z) off both supports.
        let w = Weight::laguerre_pow(1);
        let z = Cx::from_f64s(0.4, 1.1);
        let star = w.weyl_star(&z).unwrap();
        let refl = -&w.weyl(&-&z).unwrap();
        assert!((&star.re - &refl.re).abs().to_f64() < 1e-30);
        assert!((&star.im - &refl.im).abs().to_f64() < 1e-30);
    }

    #[test]
    fn weyl_leading_asymptotics() {
        // z W_β(z) → mass for unit-mass β.
        let w = Weight::laguerre();
        let z = Cx::from_f64s(0.0, 1e6);
        let val = w.weyl(&z).unwrap();
        let scaled = &z * &val;
        assert!((scaled.re.to_f64() - 1.0).abs() < 1e-6);
        assert!(scaled.im.to_f64().abs() < 1e-6);
    }

    #[test]
    fn double_transforms_cancel_at_infinity() {
        // Both doubles decay like ∓I_00/z, so the sum decays one order
        // faster along the imaginary axis.
        let set = WeylSet::new(&Weight::laguerre(), &Weight::laguerre());
        let z = Cx::from_f64s(0.0, 1e3);
        let a = set.eval(WeylTag::AlphaStarBeta, &z).unwrap();
        let b = set.eval(WeylTag::BetaAlphaStar, &z).unwrap();
        let sum = &a + &b;
        let each = a.abs().to_f64();
        assert!(each > 1e-4, "individual transform should decay like 1/z, got {each:e}");
        assert!(sum.abs().to_f64() < 5.0 * each * each, "sum {:e}", sum.abs().to_f64());
    }

    #[test]
    fn beta_star_alpha_reflection() {
        // W_{β*α}(z) = W_{βα*}(-z) at a point off both relevant supports.
        let set = WeylSet::new(&Weight::laguerre(), &Weight::laguerre_pow(1));
        let z = Cx::from_f64s(0.7, 0.9);
        let lhs = set.eval(WeylTag::BetaStarAlpha, &z).unwrap();
        let rhs = set.eval(WeylTag::BetaAlphaStar, &-&z).unwrap();
        assert!((&lhs.re - &rhs.re).abs().to_f64() < 1e-28);
        assert!((&lhs.im - &rhs.im).abs().to_f64() < 1e-28);
    }

    #[test]
    fn double_weyl_orientation() {
        // W_{α*β}(w) at w=1 for Laguerre pairs: -∫∫ e^{-x-y}/((1+x)(x+y));
        // cross-check against nested quadrature with swapped order.
        let a = Weight::laguerre();
        let b = Weight::laguerre();
        let w = Cx::from_f64s(1.0, 0.0);
        let got = weyl_double_star(&a, &b, &w).unwrap();
        let inner = InnerCauchy::new(&a);
        let swapped: Bf = integrate_panels(&b.panels(), DEFAULT_ORDER, |y| {
            // ∫ β(y) [∫ α(x)/((1+x)(x+y)) dx] dy via partial fractions in x:
            // 1/((1+x)(x+y)) = [1/(y-1)] (1/(1+x) - 1/(x+y)) for y ≠ 1.
            let m = inner.values(y, 0).pop().unwrap();
            let at_one = inner.values(&Bf::one(), 0).pop().unwrap();
            (-y).exp() * (at_one - m) / (y - Bf::one())
        });
        let gap = (got.re - &(-&swapped)).abs();
        assert!(gap.to_f64() < 1e-25, "gap={gap:?}");
        assert!(got.im.to_f64().abs() < 1e-30);
    }
}

//! Integral transforms, the 3×3 Christoffel–Darboux matrices, and the
//! Riemann–Hilbert pair Γ/Γ̂ assembled from a biorthogonal family, together
//! with numerical verification of the identities relating them.
//!
//! Evaluation is table-driven. For a fixed complex argument one pass over
//! cached quadrature nodes accumulates the power-basis transforms
//!
//!   T_k(z) = ∫ x^k w(x)/(z−x) dx,
//!   U_k(z) = −∫ m_k(x) ŵ(x)/(z+x) dx,   m_k(x) = ∫ t^k w(t)/(x+t) dt,
//!   star(z) = ∫ ŵ(y)/(z+y) dy,
//!
//! after which every polynomial transform in the window is a short dot
//! product, and the full F-matrix of Weyl combinations falls out of the same
//! tables (the k = 0 entries are exactly the double Weyl functions).
//! Boundary values on the two cuts go through Plemelj decompositions
//! (principal value plus explicit ±iπ·density terms), never through ±iε
//! offsets.

use crate::bops::BopFamily;
use crate::error::{Error, Result};
use crate::linalg::{Mat, RealScalar};
use crate::measures::{InnerCauchy, Weight};
use crate::par;
use crate::quadrature::{
    nodes_weights, panels_doubling, panels_geometric_left, panels_geometric_right, DEFAULT_ORDER,
};
use crate::report::CheckResult;
use crate::scalar::{Bf, Cx};

/// Panel refinement depth for the cached first-transform grid. That
/// integrand is analytic on the support, so moderate depth reaches working
/// accuracy; boundary values never use this grid (they go through the
/// Plemelj paths).
const ENGINE_LEVELS: u32 = 40;

/// Depth for the second-transform grid when the inner integral has a closed
/// form. The integrand carries the logarithmic singularity of m_k at the
/// origin, and the asymptotic checks amplify absolute error by |z|^n, so
/// this grid is refined much deeper. Honest-quadrature inner integrals cap
/// the achievable accuracy anyway and stay at `ENGINE_LEVELS`.
const OUTER_DEEP_LEVELS: u32 = 140;

/// Refinement depth of the odd-part window in principal-value integrals.
const PV_WINDOW_LEVELS: u32 = 40;

/// Refinement depth of the segments flanking the principal-value window.
const PV_SEGMENT_LEVELS: u32 = 48;

/// Which side of a cut a boundary value is taken from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// The four jump contours of the Riemann–Hilbert pair. The parameter t > 0
/// is the point x = t on the positive-axis contours and w = −t (resp.
/// z = −t) on the reflected ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contour {
    /// Γ across supp(β) ⊂ ℝ₊.
    GammaBeta,
    /// Γ across supp(α*) ⊂ ℝ₋.
    GammaAlphaStar,
    /// Γ̂ across supp(α) ⊂ ℝ₊.
    GammaHatAlpha,
    /// Γ̂ across supp(β*) ⊂ ℝ₋.
    GammaHatBetaStar,
}

pub const CONTOURS: [Contour; 4] = [
    Contour::GammaBeta,
    Contour::GammaAlphaStar,
    Contour::GammaHatAlpha,
    Contour::GammaHatBetaStar,
];

impl Contour {
    pub fn label(self) -> &'static str {
        match self {
            Contour::GammaBeta => "gamma-beta",
            Contour::GammaAlphaStar => "gamma-alphastar",
            Contour::GammaHatAlpha => "gammahat-alpha",
            Contour::GammaHatBetaStar => "gammahat-betastar",
        }
    }
}

// ---------------------------------------------------------------------------
// transform engine
// ---------------------------------------------------------------------------

/// Inner-integral evaluator m_k(x) = ∫ t^k w(t)/(x+t) dt: closed recurrence
/// for unit-exponential weights, a cached shared node grid otherwise.
#[derive(Clone)]
enum InnerEval {
    Closed(InnerCauchy),
    Grid(Vec<(Bf, Bf)>),
}

impl InnerEval {
    fn new(weight: &Weight) -> Self {
        if weight.is_unit_exponential() {
            InnerEval::Closed(InnerCauchy::new(weight))
        } else {
            InnerEval::Grid(weighted_nodes(weight, ENGINE_LEVELS))
        }
    }

    fn is_closed(&self) -> bool {
        matches!(self, InnerEval::Closed(_))
    }

    fn values(&self, x: &Bf, kmax: usize) -> Vec<Bf> {
        match self {
            InnerEval::Closed(ic) => ic.values(x, kmax),
            InnerEval::Grid(nodes) => {
                let mut out = vec![Bf::zero(); kmax + 1];
                for (y, wy) in nodes {
                    let mut term = wy / (x + y);
                    for slot in out.iter_mut() {
                        *slot += &term;
                        term = term * y;
                    }
                }
                out
            }
        }
    }
}

struct OuterNode {
    x: Bf,
    w: Bf,
    m: Vec<Bf>,
}

/// Quadrature nodes (x, gl_weight·w(x)) over the weight's panels.
pub(crate) fn weighted_nodes(weight: &Weight, levels: u32) -> Vec<(Bf, Bf)> {
    let (xs, ws) = nodes_weights(&weight.panels_depth(levels), DEFAULT_ORDER);
    xs.into_iter()
        .zip(ws)
        .map(|(x, w)| {
            let v = &w * weight.eval_bf(&x);
            (x, v)
        })
        .collect()
}

/// One side's transform evaluator: `own` is the weight paired with the
/// polynomials (β for q-objects, α for p-objects), `outer` the opposite
/// weight entering the second transform.
pub struct TransformEngine {
    own: Weight,
    outer: Weight,
    kmax: usize,
    own_nodes: Vec<(Bf, Bf)>,
    outer_nodes: Vec<OuterNode>,
    inner: InnerEval,
}

/// Power-basis transform values at one complex argument; all polynomial
/// transforms at that argument are dot products against these.
#[derive(Clone)]
pub struct PointTables {
    pub z: Cx,
    pub t1: Vec<Cx>,
    pub t2: Vec<Cx>,
    pub star: Cx,
}

pub(crate) fn horner(coeffs: &[Bf], z: &Cx) -> Cx {
    let mut acc = Cx::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + Cx::from_real(c.clone());
    }
    acc
}

pub(crate) fn dot(coeffs: &[Bf], basis: &[Cx]) -> Cx {
    let mut acc = Cx::zero();
    for (c, b) in coeffs.iter().zip(basis.iter()) {
        acc += &b.scale(c);
    }
    acc
}

impl PointTables {
    /// Plain transform of order mu ∈ {0, 1, 2}.
    pub fn tr(&self, coeffs: &[Bf], mu: usize) -> Cx {
        match mu {
            0 => horner(coeffs, &self.z),
            1 => dot(coeffs, &self.t1),
            2 => dot(coeffs, &self.t2),
            _ => unreachable!("transform order above 2"),
        }
    }

    /// Hat-corrected transform for p̂: the first transform carries −1 and the
    /// second −star(z), the images of the hat's constant-shift column.
    pub fn tr_hat(&self, coeffs: &[Bf], mu: usize) -> Cx {
        match mu {
            0 => horner(coeffs, &self.z),
            1 => dot(coeffs, &self.t1) - Cx::one(),
            2 => dot(coeffs, &self.t2) - &self.star,
            _ => unreachable!("transform order above 2"),
        }
    }
}

impl TransformEngine {
    pub fn new(own: &Weight, outer: &Weight, kmax: usize) -> Self {
        let own_nodes = weighted_nodes(own, ENGINE_LEVELS);
        let inner = InnerEval::new(own);
        let outer_levels = if inner.is_closed() { OUTER_DEEP_LEVELS } else { ENGINE_LEVELS };
        let outer_nodes = weighted_nodes(outer, outer_levels)
            .into_iter()
            .map(|(x, w)| {
                let m = inner.values(&x, kmax);
                OuterNode { x, w, m }
            })
            .collect();
        TransformEngine {
            own: own.clone(),
            outer: outer.clone(),
            kmax,
            own_nodes,
            outer_nodes,
            inner,
        }
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// T_k(z) = ∫ x^k own(x)/(z−x) dx for k = 0..=kmax; z off supp(own).
    pub fn t1_vec(&self, z: &Cx) -> Vec<Cx> {
        let mut out = vec![Cx::zero(); self.kmax + 1];
        for (x, wx) in &self.own_nodes {
            let mut term = Cx::new(&z.re - x, z.im.clone()).recip().scale(wx);
            for slot in out.iter_mut() {
                *slot += &term;
                term = term.scale(x);
            }
        }
        out
    }

    /// (U_k(z), star(z)) with U_k(z) = −∫ m_k(x) outer(x)/(z+x) dx and
    /// star(z) = ∫ outer(x)/(z+x) dx; −z off supp(outer).
    pub fn t2_star(&self, z: &Cx) -> (Vec<Cx>, Cx) {
        let mut out = vec![Cx::zero(); self.kmax + 1];
        let mut star = Cx::zero();
        for node in &self.outer_nodes {
            let base = Cx::new(&z.re + &node.x, z.im.clone()).recip().scale(&node.w);
            star += &base;
            for (slot, mk) in out.iter_mut().zip(node.m.iter()) {
                *slot -= &base.scale(mk);
            }
        }
        (out, star)
    }

    /// All transform tables at a point off both cuts.
    pub fn tables(&self, z: &Cx) -> PointTables {
        let t1 = self.t1_vec(z);
        let (t2, star) = self.t2_star(z);
        PointTables { z: z.clone(), t1, t2, star }
    }

    /// Boundary tables on the own-weight cut, z = x0 ± i0 with x0 interior
    /// to supp(own). Returns the (plus, minus) pair; the principal values are
    /// shared, only the ±iπ terms differ.
    pub fn boundary_tables_pair(&self, x0: &Bf) -> Result<(PointTables, PointTables)> {
        let kmax = self.kmax;
        let pv = pv_vector(&self.own, x0, kmax, |x| {
            let mut v = Vec::with_capacity(kmax + 1);
            let mut p = Bf::one();
            for _ in 0..=kmax {
                v.push(p.clone());
                p = p * x;
            }
            v
        })?;
        let w0 = self.own.eval_bf(x0);
        let pi = Bf::pi();
        let mut t1_plus = Vec::with_capacity(kmax + 1);
        let mut t1_minus = Vec::with_capacity(kmax + 1);
        let mut pw = Bf::one();
        for pv_k in pv.iter() {
            // T_k(x0 ± i0) = −PV ∫ x^k own/(x−x0) ∓ iπ x0^k own(x0)
            let re = -pv_k;
            let im = &pi * &pw * &w0;
            t1_plus.push(Cx::new(re.clone(), -&im));
            t1_minus.push(Cx::new(re, im));
            pw = pw * x0;
        }
        let z = Cx::from_real(x0.clone());
        let (t2, star) = self.t2_star(&z);
        Ok((
            PointTables { z: z.clone(), t1: t1_plus, t2: t2.clone(), star: star.clone() },
            PointTables { z, t1: t1_minus, t2, star },
        ))
    }

    pub fn boundary_tables(&self, x0: &Bf, side: Side) -> Result<PointTables> {
        let (plus, minus) = self.boundary_tables_pair(x0)?;
        Ok(match side {
            Side::Plus => plus,
            Side::Minus => minus,
        })
    }

    /// Boundary tables on the reflected outer cut, z = −y0 ± i0 with y0
    /// interior to supp(outer). The second transform jumps by Plemelj with
    /// density m_k(y0)·outer(y0); the first transform is regular there.
    pub fn nearcut_tables_pair(&self, y0: &Bf) -> Result<(PointTables, PointTables)> {
        let kmax = self.kmax;
        let z = Cx::new(-y0, Bf::zero());
        let t1 = self.t1_vec(&z);
        let inner = &self.inner;
        let pv = pv_vector(&self.outer, y0, kmax, |x| {
            inner.values(x, kmax).into_iter().map(|v| -v).collect()
        })?;
        let m0 = inner.values(y0, kmax);
        let w0 = self.outer.eval_bf(y0);
        let pi = Bf::pi();
        let mut t2_plus = Vec::with_capacity(kmax + 1);
        let mut t2_minus = Vec::with_capacity(kmax + 1);
        for (pv_k, mk) in pv.iter().zip(m0.iter()) {
            // U_k(−y0 ± i0) = PV ∓ iπ g_k(y0), g_k = −m_k(y0)·outer(y0)
            let im = &pi * mk * &w0;
            t2_plus.push(Cx::new(pv_k.clone(), im.clone()));
            t2_minus.push(Cx::new(pv_k.clone(), -im));
        }
        // star(−y0 ± i0) = −W_outer(y0 ∓ i0)
        let (bw_plus, bw_minus, _) = self.outer.boundary_weyl(y0)?;
        Ok((
            PointTables { z: z.clone(), t1: t1.clone(), t2: t2_plus, star: -bw_minus },
            PointTables { z, t1, t2: t2_minus, star: -bw_plus },
        ))
    }

    pub fn nearcut_tables(&self, y0: &Bf, side: Side) -> Result<PointTables> {
        let (plus, minus) = self.nearcut_tables_pair(y0)?;
        Ok(match side {
            Side::Plus => plus,
            Side::Minus => minus,
        })
    }
}

/// PV ∫ Σ_k basis_k(x)·weight(x)/(x − y0) dx as a vector over k, by odd-part
/// subtraction on a symmetric window plus refined flanking segments, the
/// same decomposition as `measures::pv_cauchy_transform`.
fn pv_vector<F>(weight: &Weight, y0: &Bf, kmax: usize, basis: F) -> Result<Vec<Bf>>
where
    F: Fn(&Bf) -> Vec<Bf>,
{
    let y0f = y0.to_f64();
    if !weight.interior_f64(y0f, 1e-12) {
        return Err(Error::domain(format!(
            "boundary point {y0f} is not strictly interior to the support"
        )));
    }
    let iv = weight
        .support
        .iter()
        .find(|iv| {
            let lo = iv.lo.to_f64();
            match &iv.hi {
                Some(hi) => y0f > lo && y0f < hi.to_f64(),
                None => y0f > lo,
            }
        })
        .expect("interior point without interval");
    let lo = iv.lo.to_bf();
    let mut h = (y0 - &lo).min(&Bf::one());
    if let Some(hi) = &iv.hi {
        h = h.min(&(hi.to_bf() - y0));
    }
    h = h * Bf::from_f64(0.5);

    let mut acc = vec![Bf::zero(); kmax + 1];

    // Window [y0−h, y0+h]: PV = ∫_0^h (G(y0+t) − G(y0−t))/t dt, G = basis·weight.
    let wpanels = panels_geometric_left(&Bf::zero(), &h, PV_WINDOW_LEVELS);
    let (ts, tws) = nodes_weights(&wpanels, DEFAULT_ORDER);
    for (t, wq) in ts.iter().zip(tws.iter()) {
        let xp = y0 + t;
        let xm = y0 - t;
        let bp = basis(&xp);
        let bm = basis(&xm);
        let wp = weight.eval_bf(&xp);
        let wm = weight.eval_bf(&xm);
        let scale = wq / t;
        for (slot, (vp, vm)) in acc.iter_mut().zip(bp.iter().zip(bm.iter())) {
            *slot += (vp * &wp - vm * &wm) * &scale;
        }
    }

    let add_segment = |panels: Vec<(Bf, Bf)>, acc: &mut Vec<Bf>| {
        let (xs, ws) = nodes_weights(&panels, DEFAULT_ORDER);
        for (x, wq) in xs.iter().zip(ws.iter()) {
            let b = basis(x);
            let scale = wq * weight.eval_bf(x) / (x - y0);
            for (slot, v) in acc.iter_mut().zip(b.iter()) {
                *slot += v * &scale;
            }
        }
    };

    // Left segment refined toward both ends: the pole sits just beyond the
    // right edge, and at a support endpoint the basis itself can be
    // log-singular (m_k at the origin).
    let left_edge = y0 - &h;
    if left_edge > lo {
        let mid = (&lo + &left_edge) * Bf::from_f64(0.5);
        add_segment(panels_geometric_left(&lo, &mid, PV_SEGMENT_LEVELS), &mut acc);
        add_segment(panels_geometric_right(&mid, &left_edge, PV_SEGMENT_LEVELS), &mut acc);
    }
    let right_edge = y0 + &h;
    match &iv.hi {
        Some(hi) => {
            let hi = hi.to_bf();
            if right_edge < hi {
                add_segment(panels_geometric_left(&right_edge, &hi, PV_SEGMENT_LEVELS), &mut acc);
            }
        }
        None => {
            let near = &right_edge + Bf::one();
            add_segment(panels_geometric_left(&right_edge, &near, PV_SEGMENT_LEVELS), &mut acc);
            add_segment(panels_doubling(&near, &weight.tail_cutoff(), &Bf::one()), &mut acc);
        }
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// CD context
// ---------------------------------------------------------------------------

/// Float projection of a biorthogonal family plus the transform engines for
/// both sides: everything needed to assemble the CD matrices, the kernels,
/// and the Riemann–Hilbert pair.
pub struct CdContext {
    pub alpha: Weight,
    pub beta: Weight,
    pub n_max: usize,
    p: Vec<Vec<Bf>>,
    q: Vec<Vec<Bf>>,
    hat_p: Vec<Vec<Bf>>,
    hat_q: Vec<Vec<Bf>>,
    c: Vec<Bf>,
    pi: Vec<Bf>,
    eta: Vec<Bf>,
    rec_a: Vec<[Bf; 4]>,
    rec_b: Vec<[Bf; 4]>,
    pub q_engine: TransformEngine,
    pub p_engine: TransformEngine,
}

fn fmt_f(v: &Bf) -> String {
    format!("{:.4}", v.to_f64())
}

fn fmt_cx(z: &Cx) -> String {
    let (re, im) = z.to_f64s();
    if im >= 0.0 {
        format!("{re:.4}+{im:.4}i")
    } else {
        format!("{re:.4}-{:.4}i", -im)
    }
}

fn j_matrix() -> Mat<Cx> {
    Mat::from_fn(3, 3, |i, j| if i + j == 2 { Cx::one() } else { Cx::zero() })
}

fn identity_deviation(m: &Mat<Cx>) -> Bf {
    let mut worst = Bf::zero();
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { Cx::one() } else { Cx::zero() };
            let d = (m.at(i, j) - &target).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

fn max_entry_diff(a: &Mat<Cx>, b: &Mat<Cx>) -> Bf {
    let mut worst = Bf::zero();
    for i in 0..3 {
        for j in 0..3 {
            let d = (a.at(i, j) - b.at(i, j)).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Pinned tolerances for the Riemann–Hilbert verification report.
#[derive(Clone, Copy, Debug)]
pub struct RhpTolerances {
    pub jump: f64,
    pub asymptotic: f64,
    pub minor_ratio: f64,
    pub det: f64,
}

impl Default for RhpTolerances {
    fn default() -> Self {
        RhpTolerances { jump: 1e-6, asymptotic: 1e-4, minor_ratio: 1e-2, det: 1e-8 }
    }
}

impl CdContext {
    pub fn new<T: RealScalar>(fam: &BopFamily<T>, alpha: &Weight, beta: &Weight) -> Result<Self> {
        let n_max = fam.n_max;
        if fam.rec_s_a.len() < n_max || fam.rec_s_b.len() < n_max {
            return Err(Error::insufficient(
                "recurrence pairings missing; run recurrence_coeffs on the family first",
            ));
        }
        let zero_row = || [Bf::zero(), Bf::zero(), Bf::zero(), Bf::zero()];
        let mut rec_a = vec![zero_row(); n_max];
        let mut rec_b = vec![zero_row(); n_max];
        for (n, (ra, rb)) in rec_a.iter_mut().zip(rec_b.iter_mut()).enumerate().skip(1) {
            for i in -1i32..=2 {
                if n as i64 - i as i64 >= 0 {
                    ra[(i + 1) as usize] = fam.rec_a(n, i);
                    rb[(i + 1) as usize] = fam.rec_b(n, i);
                }
            }
        }
        Ok(CdContext {
            alpha: alpha.clone(),
            beta: beta.clone(),
            n_max,
            p: (0..=n_max).map(|n| fam.orthonormal_p(n)).collect(),
            q: (0..=n_max).map(|n| fam.orthonormal_q(n)).collect(),
            hat_p: (0..n_max).map(|n| fam.hat_p_bf(n)).collect(),
            hat_q: (0..n_max).map(|n| fam.hat_q_bf(n)).collect(),
            c: fam.c.clone(),
            pi: fam.pi.clone(),
            eta: fam.eta.clone(),
            rec_a,
            rec_b,
            q_engine: TransformEngine::new(beta, alpha, n_max),
            p_engine: TransformEngine::new(alpha, beta, n_max),
        })
    }

    /// 𝔸_n(x): q-side recurrence coefficients normalized by the orthonormal
    /// first moments η. The only x-dependence is the (1,1) entry x/η_{n−1}.
    /// Contracted as p̂⃗ᵀ·𝔸_n(−w)·q⃗ with p̂⃗ = (p̂_{n−2}, p̂_{n−1}, p̂_n) down
    /// the rows and q⃗ = (q_{n−2}, q_{n−1}, q_n) across the columns.
    pub fn a_matrix(&self, n: usize, x: &Cx) -> Mat<Cx> {
        assert!(n >= 2 && n + 1 < self.n_max, "A_n window needs 2 ≤ n ≤ n_max−2");
        let b = |m: usize, i: i32| self.rec_b[m][(i + 1) as usize].clone();
        let top = b(n - 1, -1) / (&self.eta[n - 2] * &self.eta[n - 1]);
        let den = &self.eta[n - 1] * &self.eta[n];
        let mid = x.scale(&self.eta[n - 1].recip()) - Cx::from_real(b(n, 1) / &den);
        let low = b(n + 1, 2) / (&self.eta[n] * &self.eta[n + 1]);
        Mat::from_rows(vec![
            vec![Cx::zero(), Cx::zero(), Cx::from_real(top)],
            vec![Cx::from_real(-(b(n, 2) / &den)), mid, Cx::zero()],
            vec![Cx::zero(), Cx::from_real(-low), Cx::zero()],
        ])
    }

    /// 𝔹_n(y): the p-side mirror of 𝔸_n with a-coefficients and π,
    /// contracted as q̂⃗ᵀ·𝔹_n(−z)·p⃗.
    pub fn b_matrix(&self, n: usize, y: &Cx) -> Mat<Cx> {
        assert!(n >= 2 && n + 1 < self.n_max, "B_n window needs 2 ≤ n ≤ n_max−2");
        let a = |m: usize, i: i32| self.rec_a[m][(i + 1) as usize].clone();
        let top = a(n - 1, -1) / (&self.pi[n - 2] * &self.pi[n - 1]);
        let den = &self.pi[n - 1] * &self.pi[n];
        let mid = y.scale(&self.pi[n - 1].recip()) - Cx::from_real(a(n, 1) / &den);
        let low = a(n + 1, 2) / (&self.pi[n] * &self.pi[n + 1]);
        Mat::from_rows(vec![
            vec![Cx::zero(), Cx::zero(), Cx::from_real(top)],
            vec![Cx::from_real(-(a(n, 2) / &den)), mid, Cx::zero()],
            vec![Cx::zero(), Cx::from_real(-low), Cx::zero()],
        ])
    }

    /// 𝔽(w, z) from the cached tables at w (q-side) and z (p-side). The
    /// slots are W_β(w) = T⁰_q(w), W_α(z) = T⁰_p(z), W_{α*}(w) = star_q(w),
    /// W_{β*}(z) = star_p(z), W_{α*β}(w) = U⁰_q(w), W_{β*α}(z) = U⁰_p(z).
    pub fn f_matrix(&self, tq: &PointTables, tp: &PointTables) -> Mat<Cx> {
        let f12 = &tp.star + &tq.t1[0];
        let f21 = &tp.t1[0] + &tq.star;
        let f22 = &tq.star * &tp.star + &tq.t2[0] + &tp.t2[0];
        Mat::from_rows(vec![
            vec![Cx::zero(), Cx::zero(), Cx::one()],
            vec![Cx::zero(), Cx::one(), f12],
            vec![Cx::one(), f21, f22],
        ])
    }

    fn qvec(&self, n: usize, mu: usize, tq: &PointTables) -> [Cx; 3] {
        [
            tq.tr(&self.q[n - 2], mu),
            tq.tr(&self.q[n - 1], mu),
            tq.tr(&self.q[n], mu),
        ]
    }

    fn phvec(&self, n: usize, nu: usize, tp: &PointTables) -> [Cx; 3] {
        [
            tp.tr_hat(&self.hat_p[n - 2], nu),
            tp.tr_hat(&self.hat_p[n - 1], nu),
            tp.tr_hat(&self.hat_p[n], nu),
        ]
    }

    /// Max residual of the CD identity over all nine (μ, ν) pairs:
    /// (z+w) Σ_{j<n} q_j^{(μ)}(w) p_j^{(ν)}(z) = p̂⃗^{(ν)}(z)ᵀ·𝔸(−w)·q⃗^{(μ)}(w) − 𝔽_{μν}.
    pub fn cd_residual(&self, n: usize, w: &Cx, z: &Cx) -> Bf {
        let tq = self.q_engine.tables(w);
        let tp = self.p_engine.tables(z);
        let amat = self.a_matrix(n, &-w);
        let fmat = self.f_matrix(&tq, &tp);
        let zw = z + w;
        let qt: Vec<[Cx; 3]> = (0..n)
            .map(|j| [tq.tr(&self.q[j], 0), tq.tr(&self.q[j], 1), tq.tr(&self.q[j], 2)])
            .collect();
        let pt: Vec<[Cx; 3]> = (0..n)
            .map(|j| [tp.tr(&self.p[j], 0), tp.tr(&self.p[j], 1), tp.tr(&self.p[j], 2)])
            .collect();
        let mut worst = Bf::zero();
        for mu in 0..3 {
            let qv = self.qvec(n, mu, &tq);
            for nu in 0..3 {
                let pv = self.phvec(n, nu, &tp);
                let mut lhs = Cx::zero();
                for j in 0..n {
                    lhs += &(&qt[j][mu] * &pt[j][nu]);
                }
                lhs = lhs * &zw;
                let mut rhs = -fmat.at(mu, nu);
                for (r, pr) in pv.iter().enumerate() {
                    for (s, qs) in qv.iter().enumerate() {
                        rhs += &(pr * amat.at(r, s) * qs);
                    }
                }
                let dev = (lhs - rhs).abs();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    /// Max entrywise deviation of the perfect-duality product
    /// p̂⃗^{(ν)}(−w)ᵀ·𝔸(−w)·q⃗^{(μ)}(w) from 𝕁 = antidiag(1,1,1).
    pub fn duality_residual(&self, n: usize, w: &Cx) -> Bf {
        let tq = self.q_engine.tables(w);
        let tph = self.p_engine.tables(&-w);
        let amat = self.a_matrix(n, &-w);
        let mut worst = Bf::zero();
        for mu in 0..3 {
            let qv = self.qvec(n, mu, &tq);
            for nu in 0..3 {
                let pv = self.phvec(n, nu, &tph);
                let mut prod = Cx::zero();
                for (r, pr) in pv.iter().enumerate() {
                    for (s, qs) in qv.iter().enumerate() {
                        prod += &(pr * amat.at(r, s) * qs);
                    }
                }
                let target = if mu + nu == 2 { Cx::one() } else { Cx::zero() };
                let dev = (prod - target).abs();
                if dev > worst {
                    worst = dev;
                }
            }
        }
        worst
    }

    /// Γ(w) assembled from q-side data per the recovery display:
    /// diag(c_n η_n, 1/η_{n−1}, (−1)^n η_{n−2}/c_{n−2}) times the rows
    /// (q̂_{n−1}, q_{n−1}, q̂_{n−2}) under plain transforms.
    pub fn gamma(&self, n: usize, tq: &PointTables) -> Mat<Cx> {
        assert!((2..=self.n_max).contains(&n), "gamma window needs 2 ≤ n ≤ n_max");
        let d0 = &self.c[n] * &self.eta[n];
        let d1 = self.eta[n - 1].recip();
        let mut d2 = &self.eta[n - 2] / &self.c[n - 2];
        if n % 2 == 1 {
            d2 = -d2;
        }
        let rows = [
            (d0, &self.hat_q[n - 1]),
            (d1, &self.q[n - 1]),
            (d2, &self.hat_q[n - 2]),
        ];
        Mat::from_rows(
            rows.iter()
                .map(|(d, f)| (0..3).map(|mu| tq.tr(f, mu).scale(d)).collect())
                .collect(),
        )
    }

    /// Row scalings of Γ̂ at window n: (c_n, (−1)^n/c_{n−1}); the middle row
    /// carries a plain −1.
    fn gamma_hat_scales(&self, n: usize) -> (Bf, Bf) {
        let d0 = self.c[n].clone();
        let mut d2 = self.c[n - 1].recip();
        if n % 2 == 1 {
            d2 = -d2;
        }
        (d0, d2)
    }

    /// Γ̂(z) from p-side data: diag(c_n, −1, (−1)^n/c_{n−1}) times the rows
    /// (p_n, p̂_{n−1}, p_{n−1}); only the hat row uses corrected transforms.
    pub fn gamma_hat(&self, n: usize, tp: &PointTables) -> Mat<Cx> {
        assert!((1..=self.n_max).contains(&n), "gamma_hat window needs 1 ≤ n ≤ n_max");
        let (d0, d2) = self.gamma_hat_scales(n);
        let row0: Vec<Cx> = (0..3).map(|nu| tp.tr(&self.p[n], nu).scale(&d0)).collect();
        let row1: Vec<Cx> = (0..3).map(|nu| -tp.tr_hat(&self.hat_p[n - 1], nu)).collect();
        let row2: Vec<Cx> = (0..3).map(|nu| tp.tr(&self.p[n - 1], nu).scale(&d2)).collect();
        Mat::from_rows(vec![row0, row1, row2])
    }

    /// One column of Γ̂(z), computed with only the transform table that
    /// column needs: ν = 0 is polynomial evaluation, ν = 1 the first
    /// transform, ν = 2 the second. Kernel ratios built from single columns
    /// never evaluate the column that jumps across the cut the argument
    /// sits on.
    pub fn gamma_hat_column(&self, n: usize, z: &Cx, nu: usize) -> [Cx; 3] {
        assert!((1..=self.n_max).contains(&n), "gamma_hat window needs 1 ≤ n ≤ n_max");
        // hat correction images: the first transform shifts by 1, the second
        // by star(z); the plain column is untouched
        let (basis, shift) = match nu {
            0 => (None, Cx::zero()),
            1 => (Some(self.p_engine.t1_vec(z)), Cx::one()),
            2 => {
                let (t2, star) = self.p_engine.t2_star(z);
                (Some(t2), star)
            }
            _ => unreachable!("transform order above 2"),
        };
        let tr = |f: &[Bf]| match &basis {
            None => horner(f, z),
            Some(b) => dot(f, b),
        };
        let (d0, d2) = self.gamma_hat_scales(n);
        [
            tr(&self.p[n]).scale(&d0),
            -(tr(&self.hat_p[n - 1]) - &shift),
            tr(&self.p[n - 1]).scale(&d2),
        ]
    }

    /// Orthonormal coefficient rows in the power basis.
    pub fn p_coeffs(&self, j: usize) -> &[Bf] {
        &self.p[j]
    }

    pub fn q_coeffs(&self, j: usize) -> &[Bf] {
        &self.q[j]
    }

    pub fn gamma_at(&self, n: usize, w: &Cx) -> Mat<Cx> {
        self.gamma(n, &self.q_engine.tables(w))
    }

    pub fn gamma_hat_at(&self, n: usize, z: &Cx) -> Mat<Cx> {
        self.gamma_hat(n, &self.p_engine.tables(z))
    }

    fn contour_density(&self, contour: Contour) -> &Weight {
        match contour {
            Contour::GammaBeta | Contour::GammaHatBetaStar => &self.beta,
            Contour::GammaAlphaStar | Contour::GammaHatAlpha => &self.alpha,
        }
    }

    /// Boundary values (Γ_+, Γ_−) (or the Γ̂ pair) at contour parameter t.
    pub fn gamma_boundary_pair(
        &self,
        n: usize,
        contour: Contour,
        t: &Bf,
    ) -> Result<(Mat<Cx>, Mat<Cx>)> {
        match contour {
            Contour::GammaBeta => {
                let (tp, tm) = self.q_engine.boundary_tables_pair(t)?;
                Ok((self.gamma(n, &tp), self.gamma(n, &tm)))
            }
            Contour::GammaAlphaStar => {
                let (tp, tm) = self.q_engine.nearcut_tables_pair(t)?;
                Ok((self.gamma(n, &tp), self.gamma(n, &tm)))
            }
            Contour::GammaHatAlpha => {
                let (tp, tm) = self.p_engine.boundary_tables_pair(t)?;
                Ok((self.gamma_hat(n, &tp), self.gamma_hat(n, &tm)))
            }
            Contour::GammaHatBetaStar => {
                let (tp, tm) = self.p_engine.nearcut_tables_pair(t)?;
                Ok((self.gamma_hat(n, &tp), self.gamma_hat(n, &tm)))
            }
        }
    }

    /// Right-multiplication jump matrix at contour parameter t: identity
    /// plus −2πi·density in the (1,2) slot on the straight cuts and the
    /// (2,3) slot on the reflected ones.
    pub fn jump_matrix(&self, contour: Contour, t: &Bf) -> Mat<Cx> {
        let dens = self.contour_density(contour).eval_bf(t);
        let val = Cx::new(Bf::zero(), -(Bf::pi() * Bf::from_int(2) * dens));
        let (i, j) = match contour {
            Contour::GammaBeta | Contour::GammaHatAlpha => (0, 1),
            Contour::GammaAlphaStar | Contour::GammaHatBetaStar => (1, 2),
        };
        let mut m = Mat::identity(3);
        *m.at_mut(i, j) = val;
        m
    }

    fn jump_points(&self, contour: Contour, count: usize) -> Vec<Bf> {
        let w = self.contour_density(contour);
        let iv = &w.support[0];
        let lo = iv.lo.to_f64();
        let hi = iv
            .hi
            .as_ref()
            .map(|h| h.to_f64())
            .unwrap_or(lo + 4.0)
            .min(lo + 4.0);
        (1..=count)
            .map(|i| Bf::from_f64(lo + (hi - lo) * i as f64 / (count + 1) as f64))
            .collect()
    }

    /// CD identity and perfect duality over sample pairs, reported per
    /// window size and sample.
    pub fn verify_cd(
        &self,
        ns: &[usize],
        pairs: &[(Cx, Cx)],
        tol_identity: f64,
        tol_duality: f64,
    ) -> Vec<CheckResult> {
        let mut jobs = Vec::new();
        for &n in ns {
            for pair in pairs {
                jobs.push((n, pair.clone()));
            }
        }
        par::map_collect(&jobs, |(n, (w, z))| {
            let point = format!("n={n} w={} z={}", fmt_cx(w), fmt_cx(z));
            vec![
                CheckResult::new(
                    "cd-identity",
                    point.clone(),
                    self.cd_residual(*n, w, z).to_f64(),
                    tol_identity,
                ),
                CheckResult::new(
                    "cd-duality",
                    format!("n={n} w={}", fmt_cx(w)),
                    self.duality_residual(*n, w).to_f64(),
                    tol_duality,
                ),
            ]
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// Jump conditions on all four contours, large-argument asymptotics,
    /// determinant normalization, and the minor-ratio limit.
    pub fn verify_rhp(
        &self,
        ns: &[usize],
        points_per_contour: usize,
        tol: &RhpTolerances,
    ) -> Result<Vec<CheckResult>> {
        let mut out = Vec::new();
        for &n in ns {
            // det Γ = det Γ̂ = 1 off the contours
            for w in [Cx::from_f64s(0.8, 1.1), Cx::from_f64s(-2.3, 0.7)] {
                let g = self.gamma_at(n, &w);
                let gh = self.gamma_hat_at(n, &w);
                out.push(CheckResult::new(
                    "rhp-det-gamma",
                    format!("n={n} w={}", fmt_cx(&w)),
                    (g.determinant() - Cx::one()).abs().to_f64(),
                    tol.det,
                ));
                out.push(CheckResult::new(
                    "rhp-det-gammahat",
                    format!("n={n} z={}", fmt_cx(&w)),
                    (gh.determinant() - Cx::one()).abs().to_f64(),
                    tol.det,
                ));
            }

            // asymptotic normalization at |w| = 10^6, arg = π/4
            let r = Bf::from_int(1_000_000) / Bf::from_int(2).sqrt();
            let big = Cx::new(r.clone(), r);
            let g = self.gamma_at(n, &big);
            let gcols = [
                big.powi(-(n as i64)),
                big.clone(),
                big.powi(n as i64 - 1),
            ];
            let gdev = identity_deviation(&Mat::from_fn(3, 3, |i, j| g.at(i, j) * &gcols[j]));
            out.push(CheckResult::new(
                "rhp-asymptotics-gamma",
                format!("n={n} |w|=1e6"),
                gdev.to_f64(),
                tol.asymptotic,
            ));
            let gh = self.gamma_hat_at(n, &big);
            let ghcols = [big.powi(-(n as i64)), Cx::one(), big.powi(n as i64)];
            let ghdev = identity_deviation(&Mat::from_fn(3, 3, |i, j| gh.at(i, j) * &ghcols[j]));
            out.push(CheckResult::new(
                "rhp-asymptotics-gammahat",
                format!("n={n} |z|=1e6"),
                ghdev.to_f64(),
                tol.asymptotic,
            ));

            // minor ratio (−1)^n w^{2n−1} Γ_23/Γ_21 → c_{n−1}² at |w| = 10^4
            let half = Bf::from_int(5000);
            let w4 = Cx::new(half.clone(), half * Bf::from_int(3).sqrt());
            let g4 = self.gamma_at(n, &w4);
            let mut ratio = w4.powi(2 * n as i64 - 1) * g4.at(1, 2) / g4.at(1, 0);
            if n % 2 == 1 {
                ratio = -ratio;
            }
            let target = &self.c[n - 1] * &self.c[n - 1];
            let rel = ((ratio - Cx::from_real(target.clone())).abs() / target).to_f64();
            out.push(CheckResult::new(
                "rhp-minor-ratio",
                format!("n={n} |w|=1e4"),
                rel,
                tol.minor_ratio,
            ));

            // jumps on the four contours
            for contour in CONTOURS {
                let pts = self.jump_points(contour, points_per_contour);
                let results: Result<Vec<CheckResult>> =
                    par::map_collect(&pts, |t| -> Result<CheckResult> {
                        let (gp, gm) = self.gamma_boundary_pair(n, contour, t)?;
                        let jm = self.jump_matrix(contour, t);
                        let dev = max_entry_diff(&gm.matmul(&jm), &gp);
                        Ok(CheckResult::new(
                            format!("rhp-jump-{}", contour.label()),
                            format!("n={n} t={}", fmt_f(t)),
                            dev.to_f64(),
                            tol.jump,
                        ))
                    })
                    .into_iter()
                    .collect();
                out.extend(results?);
            }
        }
        Ok(out)
    }

    /// ℍ_n(w, z) by the Riemann–Hilbert route 𝕁·Γ̂(−w)^{−1}·Γ̂(z)/(z+w),
    /// with the inverse taken as adjugate over determinant.
    pub fn h_matrix_rhp(&self, n: usize, w: &Cx, z: &Cx) -> Result<Mat<Cx>> {
        let zw = z + w;
        if zw.abs().to_f64() < 1e-10 {
            return Err(Error::domain("z = -w is the duality point; the kernel has no limit there"));
        }
        let ghw = self.gamma_hat_at(n, &-w);
        let ghz = self.gamma_hat_at(n, z);
        let scale = (ghw.determinant() * &zw).recip();
        let prod = j_matrix().matmul(&ghw.adjugate()).matmul(&ghz);
        Ok(Mat::from_fn(3, 3, |i, j| prod.at(i, j) * &scale))
    }

    /// ℍ_n(w, z) by the direct route Σ_{j<n} q_j^{(μ)}(w) p_j^{(ν)}(z)
    /// + 𝔽_{μν}/(z+w).
    pub fn h_matrix_sum(&self, n: usize, w: &Cx, z: &Cx) -> Mat<Cx> {
        let tq = self.q_engine.tables(w);
        let tp = self.p_engine.tables(z);
        let fmat = self.f_matrix(&tq, &tp);
        let inv_zw = (z + w).recip();
        let qt: Vec<[Cx; 3]> = (0..n)
            .map(|j| [tq.tr(&self.q[j], 0), tq.tr(&self.q[j], 1), tq.tr(&self.q[j], 2)])
            .collect();
        let pt: Vec<[Cx; 3]> = (0..n)
            .map(|j| [tp.tr(&self.p[j], 0), tp.tr(&self.p[j], 1), tp.tr(&self.p[j], 2)])
            .collect();
        Mat::from_fn(3, 3, |mu, nu| {
            let mut acc = fmat.at(mu, nu) * &inv_zw;
            for j in 0..n {
                acc += &(&qt[j][mu] * &pt[j][nu]);
            }
            acc
        })
    }

    /// Agreement of the two kernel routes over sample pairs.
    pub fn verify_kernel(
        &self,
        ns: &[usize],
        pairs: &[(Cx, Cx)],
        tol: f64,
    ) -> Result<Vec<CheckResult>> {
        let mut jobs = Vec::new();
        for &n in ns {
            for pair in pairs {
                jobs.push((n, pair.clone()));
            }
        }
        par::map_collect(&jobs, |(n, (w, z))| -> Result<CheckResult> {
            let rhp = self.h_matrix_rhp(*n, w, z)?;
            let direct = self.h_matrix_sum(*n, w, z);
            Ok(CheckResult::new(
                "matrix-kernel",
                format!("n={n} w={} z={}", fmt_cx(w), fmt_cx(z)),
                max_entry_diff(&rhp, &direct).to_f64(),
                tol,
            ))
        })
        .into_iter()
        .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimoments::bimoment_table_exact;
    use crate::bops::{build_family, recurrence_coeffs};
    use crate::measures::{weyl_double_star, WeylSet, WeylTag};

    fn context(alpha: Weight, beta: Weight, n_max: usize) -> CdContext {
        let table = bimoment_table_exact(&alpha, &beta, n_max).unwrap();
        let ma = alpha.moments_exact(n_max as u32).unwrap();
        let mb = beta.moments_exact(n_max as u32).unwrap();
        let mut fam = build_family(&table, n_max, &ma, &mb).unwrap();
        recurrence_coeffs(&mut fam, &table).unwrap();
        CdContext::new(&fam, &alpha, &beta).unwrap()
    }

    fn laguerre_context(n_max: usize) -> CdContext {
        context(Weight::laguerre(), Weight::laguerre(), n_max)
    }

    fn tiny(v: &Bf, bound: f64) {
        assert!(v.to_f64().abs() < bound, "residual {} exceeds {bound}", v.to_f64());
    }

    #[test]
    fn transform_tables_match_independent_routes() {
        let ctx = laguerre_context(3);
        let w = Cx::from_f64s(0.7, 1.3);

        // first transform of x^2 against an independent full-depth quadrature
        let t1 = ctx.q_engine.t1_vec(&w);
        let direct =
            crate::measures::cauchy_transform(&ctx.beta, &[Bf::zero(), Bf::zero(), Bf::one()], &w)
                .unwrap();
        tiny(&(&t1[2] - &direct).abs(), 1e-30);

        // U_0(w) is the double Weyl function W_{α*β}(w)
        let (t2, star) = ctx.q_engine.t2_star(&w);
        let double = weyl_double_star(&ctx.alpha, &ctx.beta, &w).unwrap();
        tiny(&(&t2[0] - &double).abs(), 1e-25);

        // star(w) = ∫ α/(w+x) dx = W_{α*}(w)
        let wstar = ctx.alpha.weyl_star(&w).unwrap();
        tiny(&(&star - &wstar).abs(), 1e-30);

        // q_0^{(2)} at the real point w = 1: second transform is regular there
        let (t2_real, _) = ctx.q_engine.t2_star(&Cx::from_real(Bf::one()));
        let oracle = weyl_double_star(&ctx.alpha, &ctx.beta, &Cx::from_real(Bf::one())).unwrap();
        tiny(&(&t2_real[0] - &oracle).abs(), 1e-8);

        // conjugate symmetry of the tables
        let tw = ctx.q_engine.tables(&w);
        let twc = ctx.q_engine.tables(&w.conj());
        tiny(&(&twc.t1[2] - &tw.t1[2].conj()).abs(), 1e-40);
        tiny(&(&twc.t2[1] - &tw.t2[1].conj()).abs(), 1e-40);
        tiny(&(&twc.star - &tw.star.conj()).abs(), 1e-40);
    }

    #[test]
    fn f_matrix_routes_agree() {
        let ctx = laguerre_context(3);
        let w = Cx::from_f64s(0.8, 1.1);
        let z = Cx::from_f64s(-0.3, 0.9);
        let tables = ctx.f_matrix(&ctx.q_engine.tables(&w), &ctx.p_engine.tables(&z));
        let ws = WeylSet::new(&ctx.alpha, &ctx.beta);
        let f12 = ws.eval(WeylTag::BetaStar, &z).unwrap() + ws.eval(WeylTag::Beta, &w).unwrap();
        let f21 = ws.eval(WeylTag::Alpha, &z).unwrap() + ws.eval(WeylTag::AlphaStar, &w).unwrap();
        let f22 = ws.eval(WeylTag::AlphaStar, &w).unwrap()
            * ws.eval(WeylTag::BetaStar, &z).unwrap()
            + ws.eval(WeylTag::AlphaStarBeta, &w).unwrap()
            + ws.eval(WeylTag::BetaStarAlpha, &z).unwrap();
        let direct = Mat::from_rows(vec![
            vec![Cx::zero(), Cx::zero(), Cx::one()],
            vec![Cx::zero(), Cx::one(), f12],
            vec![Cx::one(), f21, f22],
        ]);
        tiny(&max_entry_diff(&tables, &direct), 1e-25);
    }

    #[test]
    fn a_matrix_affine_structure() {
        let ctx = laguerre_context(6);
        let x = Cx::from_f64s(1.7, -0.4);
        let n = 3;
        let ax = ctx.a_matrix(n, &x);
        let a0 = ctx.a_matrix(n, &Cx::zero());
        for i in 0..3 {
            for j in 0..3 {
                let diff = ax.at(i, j) - a0.at(i, j);
                if (i, j) == (1, 1) {
                    let expected = x.scale(&ctx.eta[n - 1].recip());
                    tiny(&(diff - expected).abs(), 1e-40);
                } else {
                    tiny(&diff.abs(), 1e-40);
                }
            }
        }
        // J² = identity and unit-determinant jumps
        let j = j_matrix();
        tiny(&identity_deviation(&j.matmul(&j)), 1e-40);
        for contour in CONTOURS {
            let jm = ctx.jump_matrix(contour, &Bf::from_f64(0.9));
            tiny(&(jm.determinant() - Cx::one()).abs(), 1e-40);
        }
    }

    #[test]
    fn cd_identity_and_duality() {
        let ctx = laguerre_context(5);
        let w = Cx::from_f64s(0.8, 1.1);
        let z = Cx::from_f64s(-0.3, 0.9);
        tiny(&ctx.cd_residual(3, &w, &z), 1e-30);
        tiny(&ctx.duality_residual(3, &w), 1e-30);
    }

    #[test]
    fn cd_identity_asymmetric_weights() {
        let ctx = context(Weight::laguerre_pow(1), Weight::laguerre(), 4);
        let w = Cx::from_f64s(0.6, 0.9);
        let z = Cx::from_f64s(0.2, -1.2);
        tiny(&ctx.cd_residual(2, &w, &z), 1e-25);
        tiny(&ctx.duality_residual(2, &w), 1e-25);
    }

    #[test]
    fn gamma_det_asymptotics_and_minor_ratio() {
        let ctx = laguerre_context(4);
        let report = ctx
            .verify_rhp(&[3], 0, &RhpTolerances::default())
            .unwrap();
        assert!(!report.is_empty());
        for r in &report {
            assert!(r.pass, "{} at {} residual {}", r.check, r.point, r.residual);
        }
        // the asymptotic deviation is genuinely O(1/|w|), not quadrature noise
        let asym = report
            .iter()
            .find(|r| r.check == "rhp-asymptotics-gamma")
            .unwrap();
        assert!(asym.residual > 1e-8, "deviation {} suspiciously small", asym.residual);
    }

    #[test]
    fn rhp_jumps_hold_on_all_contours() {
        let ctx = laguerre_context(4);
        let n = 2;
        for contour in CONTOURS {
            let t = Bf::from_f64(0.9);
            let (gp, gm) = ctx.gamma_boundary_pair(n, contour, &t).unwrap();
            let jm = ctx.jump_matrix(contour, &t);
            let dev = max_entry_diff(&gm.matmul(&jm), &gp);
            tiny(&dev, 1e-10);
        }
    }

    #[test]
    fn kernel_routes_agree() {
        let ctx = laguerre_context(4);
        let w = Cx::from_f64s(0.8, 1.1);
        let z = Cx::from_f64s(-0.3, 0.9);
        let rhp = ctx.h_matrix_rhp(3, &w, &z).unwrap();
        let direct = ctx.h_matrix_sum(3, &w, &z);
        tiny(&max_entry_diff(&rhp, &direct), 1e-25);

        // n = 1 window: the (0,0) entry is the bare sum q_0 p_0 since F_00 = 0
        let rhp1 = ctx.h_matrix_rhp(1, &w, &z).unwrap();
        let q0 = horner(&ctx.q[0], &w);
        let p0 = horner(&ctx.p[0], &z);
        tiny(&(rhp1.at(0, 0) - &(q0 * p0)).abs(), 1e-25);
    }

    #[test]
    fn transforms_decay_at_infinity() {
        let ctx = laguerre_context(3);
        let r = Bf::from_int(1_000_000) / Bf::from_int(2).sqrt();
        let big = Cx::new(r.clone(), r);
        let t = ctx.q_engine.tables(&big);
        let q2_1 = t.tr(&ctx.q[2], 1);
        let q2_2 = t.tr(&ctx.q[2], 2);
        assert!(q2_1.abs().to_f64() < 1e-5);
        assert!(q2_2.abs().to_f64() < 1e-5);
    }

    #[test]
    fn gamma_rows_real_for_windowed_weights_off_support() {
        // bounded supports leave real points off every cut, where the q-data
        // rows of Γ must be real
        let alpha = Weight::gaussian_window();
        let beta = Weight::gaussian_window();
        let table =
            crate::bimoments::bimoment_table_quadrature(&alpha, &beta, 3, 0.0).unwrap();
        let ma = alpha.moments(3);
        let mb = beta.moments(3);
        let mut fam = build_family(&table, 3, &ma, &mb).unwrap();
        recurrence_coeffs(&mut fam, &table).unwrap();
        let ctx = CdContext::new(&fam, &alpha, &beta).unwrap();
        let g = ctx.gamma_at(2, &Cx::from_real(Bf::from_f64(-6.0)));
        for i in 0..3 {
            for j in 0..3 {
                assert!(g.at(i, j).im.is_zero(), "entry ({i},{j}) has imaginary part");
            }
        }
    }
}

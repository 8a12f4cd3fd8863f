//! Partition functions, Eynard–Mehta window kernels, and correlation
//! functions of the coupled ensemble.
//!
//! All (r,s)-point correlations factor through four kernels built from the
//! first N biorthonormal pairs: the reproducing sum H_00, its one-sided
//! Cauchy contractions H_01 and H_10, and the double contraction H_11,
//! which carries a subtracted 1/(x+y) pole. The kernels come in two
//! routes that must agree: `Sum` expands the CD sum and its transforms
//! term by term; `Gamma` reads the same functions off single entries of
//! Γ̂^{-1}(a)·Γ̂(b). Since det Γ̂ ≡ 1, each such entry is one adjugate row
//! against one column, and the adjugate row for a kernel always deletes
//! exactly the Γ̂ column that jumps on the cut its argument lies on, so
//! the ratios stay regular at physical (on-support) points.

use crate::bimoments::{bimoment_table_quadrature, BimomentTable};
use crate::bops::BopFamily;
use crate::cdrhp::{dot, horner, weighted_nodes, CdContext};
use crate::error::{Error, Result};
use crate::linalg::{Mat, RealScalar};
use crate::measures::Weight;
use crate::par;
use crate::report::CheckResult;
use crate::scalar::{Bf, Cx, Scalar};

/// Geometric panel depth for kernel contractions. Engines bump it by 2N:
/// the integrands are the weight times window polynomials and transforms,
/// and the extra halvings play the degree-raise role of a Gauss rule.
const CONTRACTION_LEVELS: u32 = 40;

/// Below this argument gap the Γ̂ ratio for H_01 or H_10 is a 0/0 limit
/// (the numerator entry of Γ̂^{-1}(a)Γ̂(a) vanishes identically); coincident
/// arguments fall back to the CD sum, which evaluates the limit directly.
const COINCIDENT_GAP: f64 = 1e-8;

/// Z_N = N!·D_N, the N-point partition function as a factorial times the
/// leading bimoment minor; exact when the table is exact.
pub fn partition_function<T: Scalar>(table: &BimomentTable<T>, n: usize) -> Result<T> {
    if n >= table.minors().len() {
        return Err(Error::insufficient(format!(
            "partition function at N = {n} needs the order-{n} minor; table stops at D_{}",
            table.minors().len() - 1
        )));
    }
    let mut z = table.minor(n).clone();
    for k in 2..=n as i64 {
        z = z.s_mul(&T::s_from_i64(k));
    }
    Ok(z)
}

/// Evaluation route for the window kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelRoute {
    /// Expand Σ_{j<N} over the biorthonormal pairs and their transforms.
    Sum,
    /// Single entries of Γ̂^{-1}(a)·Γ̂(b) at the window edge.
    Gamma,
}

/// Immutable kernel evaluator at fixed ensemble size; evaluations are pure
/// and safe to batch in parallel.
pub struct CorrelationEngine {
    ctx: CdContext,
    pub n: usize,
    pub route: KernelRoute,
}

/// Builds the four window kernels for ensemble size `n` over a fully
/// assembled family (orthonormal rows, hats, and recurrence pairings).
pub fn h_kernels<T: RealScalar>(
    fam: &BopFamily<T>,
    alpha: &Weight,
    beta: &Weight,
    n: usize,
    route: KernelRoute,
) -> Result<CorrelationEngine> {
    if n == 0 {
        return Err(Error::domain("ensemble size must be at least 1"));
    }
    if n > fam.n_max {
        return Err(Error::insufficient(format!(
            "kernel window N = {n} exceeds the family degree {}",
            fam.n_max
        )));
    }
    Ok(CorrelationEngine { ctx: CdContext::new(fam, alpha, beta)?, n, route })
}

impl CorrelationEngine {
    pub fn context(&self) -> &CdContext {
        &self.ctx
    }

    /// H_00(x, y) = Σ_{j<N} p_j(x) q_j(y), the reproducing kernel.
    pub fn h00(&self, x: &Cx, y: &Cx) -> Result<Cx> {
        match self.route {
            KernelRoute::Sum => Ok(self.h00_sum(x, y)),
            KernelRoute::Gamma => {
                let den = x + y;
                if den.abs().to_f64() < COINCIDENT_GAP {
                    return Err(Error::domain("H_00 has a pole at x = -y"));
                }
                Ok(self.gamma_ratio(&-y, x, 2, 0) * den.recip())
            }
        }
    }

    /// H_01(x, x') = ∫ H_00(x,y) β(y) dy/(x'+y) = −Σ_{j<N} p_j(x) q_j^{(1)}(−x');
    /// the reflected argument keeps the transform off the β cut.
    pub fn h01(&self, x: &Cx, xp: &Cx) -> Result<Cx> {
        match self.route {
            KernelRoute::Sum => Ok(self.h01_sum(x, xp)),
            KernelRoute::Gamma => {
                let den = xp - x;
                if den.abs().to_f64() < COINCIDENT_GAP {
                    return Ok(self.h01_sum(x, xp));
                }
                Ok(self.gamma_ratio(xp, x, 1, 0) * den.recip())
            }
        }
    }

    /// H_10(y, y') = ∫ H_00(x,y') α(x) dx/(x+y) = −Σ_{j<N} q_j(y') p_j^{(1)}(−y).
    pub fn h10(&self, y: &Cx, yp: &Cx) -> Result<Cx> {
        match self.route {
            KernelRoute::Sum => Ok(self.h10_sum(y, yp)),
            KernelRoute::Gamma => {
                let den = y - yp;
                if den.abs().to_f64() < COINCIDENT_GAP {
                    return Ok(self.h10_sum(y, yp));
                }
                Ok(self.gamma_ratio(&-yp, &-y, 2, 1) * den.recip())
            }
        }
    }

    /// H_11(y, x) = ∫∫ H_00(z,w) α(z)β(w) dz dw/((z+y)(x+w)) − 1/(x+y)
    ///           = Σ_{j<N} p_j^{(1)}(−y) q_j^{(1)}(−x) − 1/(x+y).
    pub fn h11(&self, y: &Cx, x: &Cx) -> Result<Cx> {
        let den = x + y;
        if den.abs().to_f64() < COINCIDENT_GAP {
            return Err(Error::domain("H_11 has a pole at x = -y"));
        }
        match self.route {
            KernelRoute::Sum => {
                let tp = self.ctx.p_engine.t1_vec(&-y);
                let tq = self.ctx.q_engine.t1_vec(&-x);
                let mut acc = -den.recip();
                for j in 0..self.n {
                    acc += &(dot(self.ctx.p_coeffs(j), &tp) * dot(self.ctx.q_coeffs(j), &tq));
                }
                Ok(acc)
            }
            // the subtracted pole is already absorbed by the Γ̂ entry: the
            // ratio carries F_11/(z+w) = −1/(x+y) internally
            KernelRoute::Gamma => Ok(-(self.gamma_ratio(x, &-y, 1, 1) * den.recip())),
        }
    }

    fn h00_sum(&self, x: &Cx, y: &Cx) -> Cx {
        let mut acc = Cx::zero();
        for j in 0..self.n {
            acc += &(horner(self.ctx.p_coeffs(j), x) * horner(self.ctx.q_coeffs(j), y));
        }
        acc
    }

    fn h01_sum(&self, x: &Cx, xp: &Cx) -> Cx {
        let t1 = self.ctx.q_engine.t1_vec(&-xp);
        let mut acc = Cx::zero();
        for j in 0..self.n {
            acc += &(horner(self.ctx.p_coeffs(j), x) * dot(self.ctx.q_coeffs(j), &t1));
        }
        -acc
    }

    fn h10_sum(&self, y: &Cx, yp: &Cx) -> Cx {
        let t1 = self.ctx.p_engine.t1_vec(&-y);
        let mut acc = Cx::zero();
        for j in 0..self.n {
            acc += &(horner(self.ctx.q_coeffs(j), yp) * dot(self.ctx.p_coeffs(j), &t1));
        }
        -acc
    }

    /// Entry (r, c) of Γ̂^{-1}(a)·Γ̂(b) with det Γ̂ taken as its exact value 1:
    /// the adjugate row r, assembled from the two Γ̂(a) columns other than r,
    /// against column c of Γ̂(b). Row r of the adjugate deletes column r, so
    /// the one column of Γ̂(a) that is singular at an on-support argument is
    /// never evaluated.
    fn gamma_ratio(&self, a: &Cx, b: &Cx, r: usize, c: usize) -> Cx {
        let keep: Vec<usize> = (0..3).filter(|&j| j != r).collect();
        let cu = self.ctx.gamma_hat_column(self.n, a, keep[0]);
        let cv = self.ctx.gamma_hat_column(self.n, a, keep[1]);
        let bc = self.ctx.gamma_hat_column(self.n, b, c);
        let minor = |i: usize, j: usize| &cu[i] * &cv[j] - &cu[j] * &cv[i];
        // deleting row k of Γ̂(a) keeps the complementary row pair in order
        let minors = [minor(1, 2), minor(0, 2), minor(0, 1)];
        let mut acc = Cx::zero();
        for (k, m) in minors.iter().enumerate() {
            let term = m * &bc[k];
            if (r + k) % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    fn require_support(&self, xs: &[Bf], ys: &[Bf]) -> Result<()> {
        for x in xs {
            if !self.ctx.alpha.contains_f64(x.to_f64()) {
                return Err(Error::domain(format!(
                    "eigenvalue {} lies outside the α support",
                    x.to_f64()
                )));
            }
        }
        for y in ys {
            if !self.ctx.beta.contains_f64(y.to_f64()) {
                return Err(Error::domain(format!(
                    "eigenvalue {} lies outside the β support",
                    y.to_f64()
                )));
            }
        }
        Ok(())
    }

    /// The (r+s)×(r+s) kernel block matrix [[H_01(x_i,x_j), H_00(x_i,y_j)],
    /// [H_11(y_i,x_j), H_10(y_i,y_j)]]; entries evaluate in parallel.
    fn block_matrix(&self, xs: &[Bf], ys: &[Bf]) -> Result<Mat<Bf>> {
        let (r, s) = (xs.len(), ys.len());
        let cx = |v: &Bf| Cx::from_real(v.clone());
        let mut jobs = Vec::with_capacity((r + s) * (r + s));
        for i in 0..r + s {
            for j in 0..r + s {
                jobs.push((i, j));
            }
        }
        let entries = par::map_collect(&jobs, |&(i, j)| -> Result<Bf> {
            let v = if i < r && j < r {
                self.h01(&cx(&xs[i]), &cx(&xs[j]))?
            } else if i < r {
                self.h00(&cx(&xs[i]), &cx(&ys[j - r]))?
            } else if j < r {
                self.h11(&cx(&ys[i - r]), &cx(&xs[j]))?
            } else {
                self.h10(&cx(&ys[i - r]), &cx(&ys[j - r]))?
            };
            // real arguments keep every quadrature term real
            Ok(v.re)
        })
        .into_iter()
        .collect::<Result<Vec<Bf>>>()?;
        let mut it = entries.into_iter();
        Ok(Mat::from_fn(r + s, r + s, |_, _| it.next().unwrap()))
    }

    /// R^{(r,s)}(x₁..x_r; y₁..y_s): the kernel block determinant times
    /// ∏α(x_i)·∏β(y_j). Blocks indexed by an empty side are absent.
    pub fn correlation(&self, xs: &[Bf], ys: &[Bf]) -> Result<Bf> {
        let (r, s) = (xs.len(), ys.len());
        if r + s == 0 {
            return Err(Error::domain("correlation needs at least one eigenvalue slot"));
        }
        if r > self.n || s > self.n {
            return Err(Error::domain(format!(
                "correlation order ({r},{s}) exceeds the ensemble size {}",
                self.n
            )));
        }
        self.require_support(xs, ys)?;
        let mut out = self.block_matrix(xs, ys)?.determinant();
        for x in xs {
            out = out * self.ctx.alpha.eval_bf(x);
        }
        for y in ys {
            out = out * self.ctx.beta.eval_bf(y);
        }
        Ok(out)
    }

    /// Checks det[H_00(x_i,y_j)]·det[1/(x_i+y_j)] against the 2N×2N kernel
    /// block determinant, and the lower–permutation–upper factorization of
    /// the block matrix entrywise.
    pub fn verify_block_identity(&self, xs: &[Bf], ys: &[Bf], tol: f64) -> Result<Vec<CheckResult>> {
        let n = self.n;
        if xs.len() != n || ys.len() != n {
            return Err(Error::domain(format!("block identity needs exactly N = {n} points per side")));
        }
        for list in [xs, ys] {
            for i in 0..n {
                for j in 0..i {
                    if (&list[i] - &list[j]).to_f64().abs() < COINCIDENT_GAP {
                        return Err(Error::domain(
                            "coincident points degenerate the Cauchy determinant",
                        ));
                    }
                }
            }
        }
        let label = format!(
            "N={n} x=({}) y=({})",
            xs.iter().map(|v| format!("{:.3}", v.to_f64())).collect::<Vec<_>>().join(","),
            ys.iter().map(|v| format!("{:.3}", v.to_f64())).collect::<Vec<_>>().join(",")
        );

        let blocks = self.block_matrix(xs, ys)?;
        let block_det = blocks.determinant();

        let cx = |v: &Bf| Cx::from_real(v.clone());
        let mut kn = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                kn.set(i, j, self.h00(&cx(&xs[i]), &cx(&ys[j]))?.re);
            }
        }
        let cauchy = Mat::from_fn(n, n, |i, j| (&xs[i] + &ys[j]).recip());
        let lhs = kn.determinant() * cauchy.determinant();

        let scale = lhs.to_f64().abs().max(block_det.to_f64().abs()).max(f64::MIN_POSITIVE);
        let rel = (lhs - &block_det).to_f64().abs() / scale;
        let mut out = vec![CheckResult::new("block-identity", label.clone(), rel, tol)];

        // three-factor decomposition: row matrices of values and transforms,
        // degree along rows, points along columns
        let p0 = Mat::from_fn(n, n, |k, j| horner(self.ctx.p_coeffs(k), &cx(&xs[j])).re);
        let q0 = Mat::from_fn(n, n, |k, j| horner(self.ctx.q_coeffs(k), &cx(&ys[j])).re);
        let mut p1 = Mat::zeros(n, n);
        for j in 0..n {
            let t1 = self.ctx.p_engine.t1_vec(&-cx(&ys[j]));
            for k in 0..n {
                p1.set(k, j, dot(self.ctx.p_coeffs(k), &t1).re);
            }
        }
        let mut q1 = Mat::zeros(n, n);
        for j in 0..n {
            let t1 = self.ctx.q_engine.t1_vec(&-cx(&xs[j]));
            for k in 0..n {
                q1.set(k, j, dot(self.ctx.q_coeffs(k), &t1).re);
            }
        }

        let two = 2 * n;
        let mut lower = Mat::zeros(two, two);
        let mut perm = Mat::zeros(two, two);
        let mut upper = Mat::zeros(two, two);
        for i in 0..n {
            lower.set(n + i, n + i, Bf::one());
            perm.set(i, n + i, Bf::one());
            perm.set(n + i, i, Bf::one());
            for j in 0..n {
                lower.set(i, j, p0.at(j, i).clone());
                lower.set(n + i, j, -p1.at(j, i));
                // the H_11 block subtracts the pole at x_j + y_i, so the
                // Cauchy factor enters transposed
                upper.set(i, j, -(&xs[j] + &ys[i]).recip());
                upper.set(n + i, j, -q1.at(i, j));
                upper.set(n + i, n + j, q0.at(i, j).clone());
            }
        }
        let product = lower.matmul(&perm).matmul(&upper);
        let mut worst = 0f64;
        let mut entry_scale = f64::MIN_POSITIVE;
        for i in 0..two {
            for j in 0..two {
                worst = worst.max((product.at(i, j) - blocks.at(i, j)).to_f64().abs());
                entry_scale = entry_scale.max(blocks.at(i, j).to_f64().abs());
            }
        }
        out.push(CheckResult::new("bruhat-factors", label, worst / entry_scale, tol));
        Ok(out)
    }

    /// ∫ R^{(1,0)}(x) dx over the α support by weighted panels; the trace
    /// normalization makes this exactly N.
    pub fn trace_r10(&self) -> Result<Bf> {
        let levels = CONTRACTION_LEVELS + 2 * self.n as u32;
        let nodes = weighted_nodes(&self.ctx.alpha, levels);
        let terms = par::map_collect(&nodes, |(x, w)| -> Result<Bf> {
            let z = Cx::from_real(x.clone());
            Ok(&self.h01(&z, &z)?.re * w)
        });
        let mut acc = Bf::zero();
        for t in terms {
            acc += &t?;
        }
        Ok(acc)
    }

    /// ∫ H_00(x,y) H_11(y,x') β(y) dy at fixed (x, x'); vanishes identically
    /// because both contraction orders produce the same H_01.
    pub fn annihilation_residual(&self, x: &Bf, xp: &Bf) -> Result<Bf> {
        let levels = CONTRACTION_LEVELS + 2 * self.n as u32;
        let nodes = weighted_nodes(&self.ctx.beta, levels);
        let zx = Cx::from_real(x.clone());
        let zxp = Cx::from_real(xp.clone());
        // q-side transform at −x' is shared by every quadrature node
        let tq = self.ctx.q_engine.t1_vec(&-&zxp);
        let qx: Vec<Cx> = (0..self.n).map(|j| dot(self.ctx.q_coeffs(j), &tq)).collect();
        let px: Vec<Cx> = (0..self.n).map(|j| horner(self.ctx.p_coeffs(j), &zx)).collect();
        let terms = par::map_collect(&nodes, |(y, w)| -> Bf {
            let zy = Cx::from_real(y.clone());
            let mut h00 = Cx::zero();
            for j in 0..self.n {
                h00 += &(&px[j] * horner(self.ctx.q_coeffs(j), &zy));
            }
            let tp = self.ctx.p_engine.t1_vec(&-&zy);
            let mut h11 = -(&zxp + &zy).recip();
            for j in 0..self.n {
                h11 += &(dot(self.ctx.p_coeffs(j), &tp) * &qx[j]);
            }
            &(h00 * h11).re * w
        });
        let mut acc = Bf::zero();
        for t in terms {
            acc += &t;
        }
        Ok(acc)
    }

    /// |∫∫ H_00(x,z̃) H_00(w̃,y) α(w̃)β(z̃)/(z̃+w̃) − H_00(x,y)|: the double
    /// contraction reduces to quadrature pairings of the orthonormal rows.
    pub fn reproducing_residual(&self, x: &Bf, y: &Bf) -> Result<Bf> {
        let table = bimoment_table_quadrature(&self.ctx.alpha, &self.ctx.beta, self.n, 0.0)?;
        let zx = Cx::from_real(x.clone());
        let zy = Cx::from_real(y.clone());
        let mut acc = Bf::zero();
        for j in 0..self.n {
            for k in 0..self.n {
                let g = crate::bops::pairing(self.ctx.p_coeffs(k), self.ctx.q_coeffs(j), &table)?;
                let pj = horner(self.ctx.p_coeffs(j), &zx).re;
                let qk = horner(self.ctx.q_coeffs(k), &zy).re;
                acc += &(&(pj * qk) * &g);
            }
        }
        let direct = self.h00(&zx, &zy)?.re;
        Ok((acc - direct).abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimoments::bimoment_table_exact;
    use crate::bops::{build_family, recurrence_coeffs};
    use crate::scalar::Rat;

    fn engine(alpha: Weight, beta: Weight, n: usize, route: KernelRoute) -> CorrelationEngine {
        let deg = n.max(2);
        let table = bimoment_table_exact(&alpha, &beta, deg).unwrap();
        let ma = alpha.moments_exact(deg as u32).unwrap();
        let mb = beta.moments_exact(deg as u32).unwrap();
        let mut fam = build_family(&table, deg, &ma, &mb).unwrap();
        recurrence_coeffs(&mut fam, &table).unwrap();
        h_kernels(&fam, &alpha, &beta, n, route).unwrap()
    }

    fn laguerre_engine(n: usize, route: KernelRoute) -> CorrelationEngine {
        engine(Weight::laguerre(), Weight::laguerre(), n, route)
    }

    fn close(a: &Bf, b: &Bf, tol: f64) {
        let d = (a - b).to_f64().abs();
        assert!(d < tol, "|{} - {}| = {d:.3e} exceeds {tol:.1e}", a.to_f64(), b.to_f64());
    }

    fn close_cx(a: &Cx, b: &Cx, tol: f64) {
        let d = (a - b).abs().to_f64();
        assert!(d < tol, "gap {d:.3e} exceeds {tol:.1e}");
    }

    // ∫ e^{-t}/(t+a) dt = e^a E₁(a)
    fn exp_e1(a: &Bf) -> Bf {
        a.exp() * a.e1()
    }

    #[test]
    fn partition_function_exact_values() {
        let alpha = Weight::laguerre();
        let table = bimoment_table_exact(&alpha, &alpha, 4).unwrap();
        assert_eq!(partition_function(&table, 1).unwrap(), Rat::one());
        let sixth = Rat::one() / Rat::from_int(6);
        assert_eq!(partition_function(&table, 2).unwrap(), sixth);
        // minor ratio consistency: Z_N / Z_{N-1} = N · h_{N-1}
        for n in 1..=4usize {
            let zn = partition_function(&table, n).unwrap();
            let zp = partition_function(&table, n - 1).unwrap();
            let ratio = zn / zp;
            let target = Rat::from_int(n as i64) * table.h_ratio(n - 1);
            assert_eq!(ratio, target, "ratio at N = {n}");
        }
        assert!(partition_function(&table, 7).is_err());
    }

    #[test]
    fn n1_kernels_match_exponential_integral_forms() {
        let x = Bf::from_f64(1.25);
        let xp = Bf::from_f64(0.5);
        let y = Bf::from_f64(0.75);
        let cx = Cx::from_real(x.clone());
        let cxp = Cx::from_real(xp.clone());
        let cy = Cx::from_real(y.clone());
        for route in [KernelRoute::Sum, KernelRoute::Gamma] {
            let eng = laguerre_engine(1, route);
            close(&eng.h00(&cx, &cy).unwrap().re, &Bf::one(), 1e-20);
            close(&eng.h01(&cx, &cxp).unwrap().re, &exp_e1(&xp), 1e-18);
            close(&eng.h10(&cy, &cxp).unwrap().re, &exp_e1(&y), 1e-18);
            let h11 = &exp_e1(&x) * &exp_e1(&y) - (&x + &y).recip();
            close(&eng.h11(&cy, &cx).unwrap().re, &h11, 1e-18);

            // R^{(1,1)} collapses to the joint density e^{-x-y}/(x+y)
            let r11 = eng.correlation(&[x.clone()], &[y.clone()]).unwrap();
            let joint = (-(&x + &y)).exp() / (&x + &y);
            close(&r11, &joint, 1e-18);

            // one-sided densities are plain exponential integrals
            let r10 = eng.correlation(&[x.clone()], &[]).unwrap();
            close(&r10, &x.e1(), 1e-18);
            let r01 = eng.correlation(&[], &[y.clone()]).unwrap();
            close(&r01, &y.e1(), 1e-18);
        }
    }

    #[test]
    fn n2_h01_closed_form_pins_argument_order() {
        // with α = β = e^{-x}: p_1 = q_1 = √12·(x − 1/2) and
        // H_01(x,x') = e^{x'}E₁(x') + 12(x−1/2)(1 − (x'+1/2)e^{x'}E₁(x'))
        let closed = |x: f64, xp: f64| {
            let x = Bf::from_f64(x);
            let xp = Bf::from_f64(xp);
            let ee = exp_e1(&xp);
            let half = Bf::from_f64(0.5);
            let slope = Bf::from_int(12) * (&x - &half);
            let brace = Bf::one() - (&xp + &half) * &ee;
            ee + slope * brace
        };
        for route in [KernelRoute::Sum, KernelRoute::Gamma] {
            let eng = laguerre_engine(2, route);
            let at = |a: f64, b: f64| {
                eng.h01(&Cx::from_f64s(a, 0.0), &Cx::from_f64s(b, 0.0)).unwrap().re
            };
            close(&at(1.0, 2.0), &closed(1.0, 2.0), 1e-18);
            close(&at(2.0, 1.0), &closed(2.0, 1.0), 1e-18);
            // the two orderings genuinely differ
            assert!((&at(1.0, 2.0) - &at(2.0, 1.0)).to_f64().abs() > 0.05);
            // H_10 has the same shape with the roles mirrored: the transform
            // argument is the first one
            let h10 = eng.h10(&Cx::from_f64s(1.0, 0.0), &Cx::from_f64s(2.0, 0.0)).unwrap().re;
            close(&h10, &closed(2.0, 1.0), 1e-18);
        }
    }

    #[test]
    fn asymmetric_weights_agree_across_routes() {
        // α = x e^{-x}, β = e^{-y} breaks every p ↔ q symmetry, pinning the
        // role assignment inside the Γ̂ ratios
        let sum = engine(Weight::laguerre_pow(1), Weight::laguerre(), 2, KernelRoute::Sum);
        let gam = engine(Weight::laguerre_pow(1), Weight::laguerre(), 2, KernelRoute::Gamma);
        let pts = [(0.9, 1.7), (1.3, 0.6)];
        for (a, b) in pts {
            let (za, zb) = (Cx::from_f64s(a, 0.0), Cx::from_f64s(b, 0.0));
            close_cx(&sum.h00(&za, &zb).unwrap(), &gam.h00(&za, &zb).unwrap(), 1e-15);
            close_cx(&sum.h01(&za, &zb).unwrap(), &gam.h01(&za, &zb).unwrap(), 1e-15);
            close_cx(&sum.h10(&za, &zb).unwrap(), &gam.h10(&za, &zb).unwrap(), 1e-15);
            close_cx(&sum.h11(&za, &zb).unwrap(), &gam.h11(&za, &zb).unwrap(), 1e-15);
        }
    }

    #[test]
    fn routes_agree_at_complex_samples() {
        let sum = laguerre_engine(3, KernelRoute::Sum);
        let gam = laguerre_engine(3, KernelRoute::Gamma);
        let samples = [
            (Cx::from_f64s(0.8, 0.6), Cx::from_f64s(1.1, -0.4)),
            (Cx::from_f64s(-0.3, 1.2), Cx::from_f64s(0.5, 0.9)),
        ];
        for (a, b) in &samples {
            close_cx(&sum.h00(a, b).unwrap(), &gam.h00(a, b).unwrap(), 1e-15);
            close_cx(&sum.h01(a, b).unwrap(), &gam.h01(a, b).unwrap(), 1e-15);
            close_cx(&sum.h10(a, b).unwrap(), &gam.h10(a, b).unwrap(), 1e-15);
            close_cx(&sum.h11(a, b).unwrap(), &gam.h11(a, b).unwrap(), 1e-15);
        }
    }

    #[test]
    fn block_identity_and_factorization_hold() {
        let eng = laguerre_engine(2, KernelRoute::Sum);
        let xs = [Bf::from_int(1), Bf::from_int(2)];
        let ys = [Bf::from_int(1), Bf::from_int(3)];
        let checks = eng.verify_block_identity(&xs, &ys, 1e-10).unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");

        // R^{(N,N)} equals the two-determinant form times the weights
        let r22 = eng.correlation(&xs, &ys).unwrap();
        let mut kn = Mat::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                let v = eng
                    .h00(&Cx::from_real(xs[i].clone()), &Cx::from_real(ys[j].clone()))
                    .unwrap()
                    .re;
                kn.set(i, j, v);
            }
        }
        let cauchy = Mat::from_fn(2, 2, |i, j| (&xs[i] + &ys[j]).recip());
        let mut direct = kn.determinant() * cauchy.determinant();
        for v in xs.iter().chain(ys.iter()) {
            direct = direct * (-v).exp();
        }
        close(&r22, &direct, 1e-18);

        // permutation invariance: swapping x₁ ↔ x₂ permutes a row and a
        // column of the block matrix at once
        let swapped = eng.correlation(&[xs[1].clone(), xs[0].clone()], &ys).unwrap();
        close(&r22, &swapped, 1e-25);

        // N = 1 scalar reduction
        let one = laguerre_engine(1, KernelRoute::Sum);
        let checks = one
            .verify_block_identity(&[Bf::from_f64(1.25)], &[Bf::from_f64(0.75)], 1e-10)
            .unwrap();
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");

        // coincident points must be rejected
        assert!(eng
            .verify_block_identity(&[Bf::one(), Bf::one()], &ys, 1e-10)
            .is_err());
    }

    #[test]
    fn trace_matches_ensemble_size() {
        for n in [1usize, 2] {
            let eng = laguerre_engine(n, KernelRoute::Sum);
            let trace = eng.trace_r10().unwrap();
            close(&trace, &Bf::from_int(n as i64), 1e-10);
        }
    }

    #[test]
    fn contraction_identities_hold() {
        let eng = laguerre_engine(2, KernelRoute::Sum);
        let res = eng.annihilation_residual(&Bf::from_f64(0.7), &Bf::from_f64(1.9)).unwrap();
        assert!(res.to_f64().abs() < 1e-10, "annihilation residual {}", res.to_f64());

        let eng3 = laguerre_engine(3, KernelRoute::Sum);
        let rep = eng3.reproducing_residual(&Bf::from_f64(1.1), &Bf::from_f64(0.6)).unwrap();
        assert!(rep.to_f64() < 1e-12, "reproducing residual {}", rep.to_f64());
    }

    #[test]
    fn engine_rejects_bad_requests() {
        let eng = laguerre_engine(2, KernelRoute::Sum);
        assert!(eng.correlation(&[], &[]).is_err());
        assert!(eng.correlation(&[Bf::one(), Bf::one(), Bf::one()], &[]).is_err());
        assert!(eng.correlation(&[-Bf::one()], &[]).is_err());

        let alpha = Weight::laguerre();
        let table = bimoment_table_exact(&alpha, &alpha, 2).unwrap();
        let ma = alpha.moments_exact(2).unwrap();
        let mut fam = build_family(&table, 2, &ma, &ma).unwrap();
        recurrence_coeffs(&mut fam, &table).unwrap();
        assert!(h_kernels(&fam, &alpha, &alpha, 0, KernelRoute::Sum).is_err());
        assert!(h_kernels(&fam, &alpha, &alpha, 3, KernelRoute::Sum).is_err());
    }
}

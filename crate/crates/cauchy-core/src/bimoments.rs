//! Bimoment tables I_jk = ∫∫ x^j y^k K_h(x,y) dα dβ for the kernel family
//! K_h(x,y) = (x+y)^{-(1+h)}, their leading minors D_n, and positivity /
//! sign-regularity certification.

use crate::error::{Error, Result};
use crate::linalg::{scan_minors_positive, Mat, MinorScan, RealScalar};
use crate::measures::{InnerCauchy, Weight};
use crate::quadrature::{nodes_weights, DEFAULT_ORDER};
use crate::scalar::{Bf, Rat, Scalar};

/// Endpoint refinement depth and rule order for honest nested double
/// quadrature (both weights without a closed inner reduction). The node
/// product makes full depth unaffordable; 40 dyadic levels at order 24
/// keep 1e-12 territory.
const NESTED_DEPTH: u32 = 40;
const NESTED_ORDER: usize = 24;

#[derive(Clone, Debug)]
pub struct BimomentTable<T: Scalar> {
    pub alpha: Weight,
    pub beta: Weight,
    /// Kernel exponent parameter; the kernel is (x+y)^{-(1+h)}.
    pub h: f64,
    entries: Mat<T>,
    /// minors[m] = D_m with the D_0 := 1 convention; length n_max + 2.
    minors: Vec<T>,
}

impl<T: Scalar> BimomentTable<T> {
    fn finish(alpha: &Weight, beta: &Weight, h: f64, entries: Mat<T>) -> Self {
        let n = entries.nrows();
        let mut minors = Vec::with_capacity(n + 1);
        minors.push(T::s_one());
        match entries.leading_minors() {
            Some(list) => minors.extend(list),
            None => {
                // a vanishing pivot: fall back to one determinant per size
                for m in 1..=n {
                    let idx: Vec<usize> = (0..m).collect();
                    minors.push(entries.submatrix(&idx, &idx).determinant());
                }
            }
        }
        BimomentTable { alpha: alpha.clone(), beta: beta.clone(), h, entries, minors }
    }

    pub fn n_max(&self) -> usize {
        self.entries.nrows() - 1
    }

    pub fn entry(&self, j: usize, k: usize) -> &T {
        self.entries.at(j, k)
    }

    pub fn entries(&self) -> &Mat<T> {
        &self.entries
    }

    /// Leading minor D_m = det[I_jk]_{j,k<m}; D_0 = 1.
    pub fn minor(&self, m: usize) -> &T {
        &self.minors[m]
    }

    pub fn minors(&self) -> &[T] {
        &self.minors
    }

    /// h_n = D_{n+1}/D_n, the squared orthonormalization constants.
    pub fn h_ratio(&self, n: usize) -> T {
        self.minors[n + 1].s_div(&self.minors[n])
    }

    pub fn leading_block(&self, size: usize) -> Mat<T> {
        let idx: Vec<usize> = (0..size).collect();
        self.entries.submatrix(&idx, &idx)
    }
}

/// Rejects kernel parameters the family cannot represent: 1+h a nonpositive
/// integer (the kernel degenerates to a polynomial of rank ≤ -h) and h at or
/// beyond the divergence threshold of I_00.
fn validate_h(h: f64, a: u32, b: u32) -> Result<()> {
    let s = 1.0 + h;
    if !s.is_finite() {
        return Err(Error::invalid("kernel exponent must be finite"));
    }
    if s <= 0.0 && s.fract() == 0.0 {
        return Err(Error::domain(format!(
            "kernel exponent 1+h = {s} is a nonpositive integer; the kernel family degenerates"
        )));
    }
    let threshold = (a + b + 1) as f64;
    if h >= threshold {
        return Err(Error::domain(format!(
            "bimoment I_00 diverges for h = {h}: need h < a+b+1 = {threshold}"
        )));
    }
    Ok(())
}

/// Exact rational bimoments for the h = 0 Cauchy kernel and unit-exponential
/// weights x^a e^{-x}, y^b e^{-y}: the s-integral reduction gives
/// I_jk = (j+a)!(k+b)!/(j+k+a+b+1).
pub fn bimoment_table_exact(
    alpha: &Weight,
    beta: &Weight,
    n_max: usize,
) -> Result<BimomentTable<Rat>> {
    if !(alpha.is_unit_exponential() && beta.is_unit_exponential()) {
        return Err(Error::invalid(
            "exact bimoments need x^a e^{-x} weights on [0, ∞); use the quadrature channel",
        ));
    }
    let (a, b) = (alpha.power, beta.power);
    let entries = Mat::from_fn(n_max + 1, n_max + 1, |j, k| {
        let jj = j as u32 + a;
        let kk = k as u32 + b;
        Rat::factorial(jj) * Rat::factorial(kk) / Rat::from_int((jj + kk + 1) as i64)
    });
    Ok(BimomentTable::finish(alpha, beta, 0.0, entries))
}

/// Inner integrals n_k(x) = ∫ y^k β(y) (x+y)^{-(1+h)} dy for k = 0..=kmax.
///
/// Three routes, fastest applicable wins:
/// - h = 0, unit-exponential β: the E1 recurrence (`InnerCauchy`).
/// - unit-exponential β, any admissible h: shift t = x+y and expand,
///   n_k(x) = e^x Σ_i C(K,i) (-x)^{K-i} Γ(i-h, x) with K = k+b.
/// - general β: panel quadrature at reduced depth.
enum InnerKernel {
    CauchyClosed(InnerCauchy),
    GammaClosed { b: u32, h: f64 },
    Nested { beta: Weight, h: f64, nodes: Vec<Bf>, weights: Vec<Bf> },
}

impl InnerKernel {
    fn new(beta: &Weight, h: f64) -> Self {
        if h == 0.0 && beta.is_unit_exponential() {
            InnerKernel::CauchyClosed(InnerCauchy::new(beta))
        } else if beta.is_unit_exponential() {
            InnerKernel::GammaClosed { b: beta.power, h }
        } else {
            let panels = beta.panels_depth(NESTED_DEPTH);
            let (nodes, weights) = nodes_weights(&panels, NESTED_ORDER);
            InnerKernel::Nested { beta: beta.clone(), h, nodes, weights }
        }
    }

    fn values(&self, x: &Bf, kmax: usize) -> Vec<Bf> {
        match self {
            InnerKernel::CauchyClosed(ic) => ic.values(x, kmax),
            InnerKernel::GammaClosed { b, h } => {
                let top = kmax + *b as usize;
                let ex = x.exp();
                let gammas: Vec<Bf> = (0..=top)
                    .map(|i| x.gamma_inc_upper(&Bf::from_f64(i as f64 - h)))
                    .collect();
                (0..=kmax)
                    .map(|k| {
                        let kk = k + *b as usize;
                        let mut acc = Bf::zero();
                        for (i, g) in gammas.iter().enumerate().take(kk + 1) {
                            let coeff = Rat::binomial(kk as u32, i as u32).to_bf();
                            let sign_pow = (-x).powi((kk - i) as i64);
                            acc += coeff * sign_pow * g;
                        }
                        &ex * &acc
                    })
                    .collect()
            }
            InnerKernel::Nested { beta, h, nodes, weights } => {
                let mut out = vec![Bf::zero(); kmax + 1];
                let s = Bf::from_f64(-(1.0 + h));
                for (y, v) in nodes.iter().zip(weights.iter()) {
                    let base = x + y;
                    let kern = if *h == 0.0 { base.recip() } else { base.powf(&s) };
                    let mut pow = v * beta.eval_bf(y) * kern;
                    for slot in out.iter_mut() {
                        *slot += &pow;
                        pow = pow * y;
                    }
                }
                out
            }
        }
    }
}

/// Quadrature-channel bimoments: outer Gauss panels over supp(α), inner
/// integrals by the fastest admissible route.
pub fn bimoment_table_quadrature(
    alpha: &Weight,
    beta: &Weight,
    n_max: usize,
    h: f64,
) -> Result<BimomentTable<Bf>> {
    validate_h(h, alpha.power, beta.power)?;
    let inner = InnerKernel::new(beta, h);
    let nested = matches!(inner, InnerKernel::Nested { .. });
    // When the inner integral is honest quadrature, rein in the outer node
    // count too; the error floor is set by the inner rule anyway.
    let (xs, ws) = if nested {
        (alpha.panels_depth(NESTED_DEPTH), NESTED_ORDER)
    } else {
        (alpha.panels(), DEFAULT_ORDER)
    };
    let (xs, ws) = nodes_weights(&xs, ws);

    let mut entries = Mat::zeros(n_max + 1, n_max + 1);
    for (x, w) in xs.iter().zip(ws.iter()) {
        let nk = inner.values(x, n_max);
        let mut powx = w * alpha.eval_bf(x);
        for j in 0..=n_max {
            for (k, nkv) in nk.iter().enumerate() {
                *entries.at_mut(j, k) += &powx * nkv;
            }
            powx = powx * x;
        }
    }
    Ok(BimomentTable::finish(alpha, beta, h, entries))
}

/// Verifies strict positivity of every square submatrix determinant of the
/// leading `size` × `size` block (total positivity of the bimoment matrix).
pub fn check_total_positivity<T: RealScalar>(
    table: &BimomentTable<T>,
    size: usize,
) -> Result<MinorScan> {
    if size > table.n_max() + 1 {
        return Err(Error::invalid("requested size exceeds the table"));
    }
    Ok(scan_minors_positive(&table.leading_block(size)))
}

/// Sign of det[K_h(x_i, y_j)] of the given size per the sign-regularity
/// pattern: positive for 1+h > 0; for s = 1+h < 0 the sign depends only on
/// the size, (-1)^{Σ_{i<size} min(i, ⌈-s⌉)}.
pub fn kernel_minor_sign(h: f64, size: usize) -> i32 {
    let s = 1.0 + h;
    if s > 0.0 {
        return 1;
    }
    let m = (-s).ceil() as usize;
    let sigma: usize = (0..size).map(|i| i.min(m)).sum();
    if sigma % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct SignCheck {
    pub size: usize,
    pub determinant: f64,
    pub expected_sign: i32,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct SignRegularity {
    pub checks: Vec<SignCheck>,
}

impl SignRegularity {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

/// Evaluates det[K_h(x_i, y_j)] on the leading grid blocks of sizes 1..=n and
/// compares each sign against the sign-regularity pattern.
pub fn check_sign_regularity(
    alpha_grid: &[Bf],
    beta_grid: &[Bf],
    h: f64,
    n: usize,
) -> Result<SignRegularity> {
    let s = 1.0 + h;
    if s <= 0.0 && s.fract() == 0.0 {
        return Err(Error::domain(format!(
            "kernel exponent 1+h = {s} is a nonpositive integer; the kernel family degenerates"
        )));
    }
    if n == 0 || n > alpha_grid.len() || n > beta_grid.len() {
        return Err(Error::invalid("need 1 ≤ n ≤ grid length"));
    }
    for grid in [alpha_grid, beta_grid] {
        if grid[0].signum() <= 0 {
            return Err(Error::invalid("grids must be strictly positive"));
        }
        if grid.windows(2).any(|w| (&w[1] - &w[0]).signum() <= 0) {
            return Err(Error::invalid("grids must be strictly increasing"));
        }
    }
    let exponent = Bf::from_f64(-s);
    let kern = Mat::from_fn(n, n, |i, j| {
        let base = &alpha_grid[i] + &beta_grid[j];
        if h == 0.0 {
            base.recip()
        } else {
            base.powf(&exponent)
        }
    });
    let mut checks = Vec::with_capacity(n);
    for size in 1..=n {
        let idx: Vec<usize> = (0..size).collect();
        let det = kern.submatrix(&idx, &idx).determinant();
        let expected = kernel_minor_sign(h, size);
        checks.push(SignCheck {
            size,
            determinant: det.to_f64(),
            expected_sign: expected,
            ok: det.s_sign() == expected,
        });
    }
    Ok(SignRegularity { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laguerre_pair() -> (Weight, Weight) {
        (Weight::laguerre(), Weight::laguerre())
    }

    #[test]
    fn exact_laguerre_entries_and_minors() {
        let (a, b) = laguerre_pair();
        let t = bimoment_table_exact(&a, &b, 4).unwrap();
        assert_eq!(*t.entry(0, 0), Rat::one());
        assert_eq!(*t.entry(1, 1), Rat::new(1, 3));
        assert_eq!(*t.entry(2, 3), Rat::from_int(2)); // 2!·3!/6
        let want = [
            Rat::one(),
            Rat::one(),
            Rat::new(1, 12),
            Rat::new(1, 540),
            Rat::new(1, 42000),
        ];
        for (m, d) in want.iter().enumerate() {
            assert_eq!(t.minor(m), d, "D_{m}");
            if m > 0 {
                assert!(t.h_ratio(m - 1).signum() > 0);
            }
        }
    }

    #[test]
    fn exact_agrees_with_quadrature() {
        let (a, b) = laguerre_pair();
        let exact = bimoment_table_exact(&a, &b, 4).unwrap();
        let quad = bimoment_table_quadrature(&a, &b, 4, 0.0).unwrap();
        for j in 0..=4 {
            for k in 0..=4 {
                let gap = (quad.entry(j, k) - &exact.entry(j, k).to_bf()).abs();
                assert!(gap.to_f64() < 1e-30, "({j},{k}) gap {:e}", gap.to_f64());
            }
        }
    }

    #[test]
    fn swap_transposes_exactly() {
        let a = Weight::laguerre();
        let b = Weight::laguerre_pow(1);
        let t = bimoment_table_exact(&a, &b, 3).unwrap();
        let s = bimoment_table_exact(&b, &a, 3).unwrap();
        assert_eq!(*t.entries(), s.entries().transpose());
    }

    #[test]
    fn degenerate_and_divergent_h_rejected() {
        let (a, b) = laguerre_pair();
        assert!(bimoment_table_quadrature(&a, &b, 2, -1.0).is_err());
        assert!(bimoment_table_quadrature(&a, &b, 2, -3.0).is_err());
        // a = b = 0 ⇒ I_00 diverges at h = 1
        assert!(bimoment_table_quadrature(&a, &b, 2, 1.0).is_err());
    }

    #[test]
    fn gamma_route_oracles() {
        // kernel (x+y)^{-2} against x e^{-x} ⊗ y e^{-y}:
        // I_00 = 1/6, I_01 = 1/6, I_11 = 1/5
        let a = Weight::laguerre_pow(1);
        let b = Weight::laguerre_pow(1);
        let t = bimoment_table_quadrature(&a, &b, 1, 1.0).unwrap();
        for (j, k, want) in [(0, 0, 1.0 / 6.0), (0, 1, 1.0 / 6.0), (1, 1, 0.2)] {
            let gap = (t.entry(j, k) - &Bf::from_f64(want)).abs().to_f64();
            assert!(gap < 1e-16, "({j},{k}) gap {gap:e}");
        }
        // fractional exponents
        let t = bimoment_table_quadrature(&a, &b, 0, 0.5).unwrap();
        let want = Bf::parse("0.2215567313631895034122709354176431478").unwrap();
        assert!((t.entry(0, 0) - &want).abs().to_f64() < 1e-20);
        let (a0, b0) = laguerre_pair();
        let t = bimoment_table_quadrature(&a0, &b0, 0, -0.25).unwrap();
        let want = Bf::parse("0.9064024770554770779826712889669180007").unwrap();
        assert!((t.entry(0, 0) - &want).abs().to_f64() < 1e-20);
    }

    #[test]
    fn nested_route_matches_swapped_closed_route() {
        // α Gaussian window, β exponential: the (β, α) table has a closed
        // inner reduction while (α, β) runs honest nested quadrature;
        // symmetry I_jk(α,β) = I_kj(β,α) ties them together.
        let a = Weight::gaussian_window();
        let b = Weight::laguerre();
        let nested = bimoment_table_quadrature(&a, &b, 2, 0.0).unwrap();
        let closed = bimoment_table_quadrature(&b, &a, 2, 0.0).unwrap();
        for j in 0..=2 {
            for k in 0..=2 {
                let gap = (nested.entry(j, k) - closed.entry(k, j)).abs().to_f64();
                assert!(gap < 1e-11, "({j},{k}) gap {gap:e}");
            }
        }
    }

    #[test]
    fn total_positivity_scan() {
        let (a, b) = laguerre_pair();
        let t = bimoment_table_exact(&a, &b, 2).unwrap();
        let scan = check_total_positivity(&t, 3).unwrap();
        assert!(scan.all_positive());
        assert_eq!(scan.checked, 9 + 9 + 1);

        // a corrupted table is caught at a 1×1 minor
        let mut bad = t.clone();
        let v = bad.entries.at(1, 1).clone();
        bad.entries.set(1, 1, -&v);
        let scan = check_total_positivity(&bad, 3).unwrap();
        let (rows, cols, sign) = scan.failure.expect("must fail");
        assert_eq!((rows, cols, sign), (vec![1], vec![1], -1));
    }

    #[test]
    fn sign_regularity_positive_kernel() {
        let grid: Vec<Bf> = [1, 2, 3].iter().map(|&v| Bf::from_int(v)).collect();
        let rep = check_sign_regularity(&grid, &grid, 0.0, 3).unwrap();
        assert!(rep.all_ok());
        assert!(rep.checks.iter().all(|c| c.expected_sign == 1));
        assert!((rep.checks[0].determinant - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sign_regularity_growing_kernels() {
        // s = 1+h < 0: sign depends only on size; check the pattern against
        // direct determinants for two exponents and two grids.
        let grids = [vec![0.5, 1.0, 2.0, 3.5], vec![1.5, 2.25, 4.0, 8.0]];
        for h in [-1.5_f64, -2.5] {
            for g in &grids {
                let grid: Vec<Bf> = g.iter().map(|&v| Bf::from_f64(v)).collect();
                let rep = check_sign_regularity(&grid, &grid, h, 4).unwrap();
                assert!(rep.all_ok(), "h={h} grid {g:?}: {:?}", rep.checks);
            }
        }
        // the published size-2 example: 1+h = −1/2 gives a negative minor
        assert_eq!(kernel_minor_sign(-1.5, 1), 1);
        assert_eq!(kernel_minor_sign(-1.5, 2), -1);
    }
}

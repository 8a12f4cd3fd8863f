//! The Cauchy biorthogonal polynomial family: monic and orthonormal
//! polynomials, normalization constants, hat polynomials, four-term
//! recurrence data, and zero/interlacing reports.
//!
//! Everything structural is carried in the table's scalar channel T, so the
//! rational channel yields exact polynomial identities and the float channel
//! reuses the same code path.

use crate::bimoments::BimomentTable;
use crate::error::{Error, Result};
use crate::linalg::{Mat, RealScalar};
use crate::measures::Weight;
use crate::poly;
use crate::scalar::{Bf, Scalar};

/// Bilinear pairing ⟨f, g⟩ = Σ f_i g_j I_ij on a bimoment table.
pub fn pairing<T: Scalar>(f: &[T], g: &[T], table: &BimomentTable<T>) -> Result<T> {
    let n_max = table.n_max();
    if f.len() > n_max + 1 || g.len() > n_max + 1 {
        return Err(Error::insufficient(format!(
            "pairing degree overflow: table holds bimoments through degree {n_max}"
        )));
    }
    let mut acc = T::s_zero();
    for (i, fi) in f.iter().enumerate() {
        if fi.s_is_zero() {
            continue;
        }
        for (j, gj) in g.iter().enumerate() {
            acc = acc.s_add(&fi.s_mul(gj).s_mul(table.entry(i, j)));
        }
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct BopFamily<T> {
    pub n_max: usize,
    /// Monic p̃_n, q̃_n coefficients, ascending, length n+1.
    pub monic_p: Vec<Vec<T>>,
    pub monic_q: Vec<Vec<T>>,
    /// h_n = ⟨p̃_n, q̃_n⟩ = D_{n+1}/D_n.
    pub h: Vec<T>,
    /// c_n = √h_n.
    pub c: Vec<Bf>,
    /// ũ_n = ∫ p̃_n dα and ṽ_n = ∫ q̃_n dβ (monic first moments).
    pub u_p: Vec<T>,
    pub u_q: Vec<T>,
    /// π_n = ũ_n/c_n, η_n = ṽ_n/c_n (orthonormal first moments).
    pub pi: Vec<Bf>,
    pub eta: Vec<Bf>,
    /// p̂_n from the determinantal representation, degree n, for n ≤ n_max-1.
    pub hat_p: Vec<Vec<T>>,
    /// q̂_n = q̃_{n+1}/ṽ_{n+1} - q̃_n/ṽ_n, degree n+1, for n ≤ n_max-1.
    pub hat_q: Vec<Vec<T>>,
    /// Cleared recurrence pairings S_{n,i} = ⟨x(ũ_{n-1}p̃_n - ũ_n p̃_{n-1}), q̃_{n-i}⟩
    /// indexed [n][i+1] for i = -1..2; filled by `recurrence_coeffs`.
    pub rec_s_a: Vec<[T; 4]>,
    /// Same on the q side: S'_{n,i} = ⟨p̃_{n-i}, y(ṽ_{n-1}q̃_n - ṽ_n q̃_{n-1})⟩.
    pub rec_s_b: Vec<[T; 4]>,
}

impl<T: RealScalar> BopFamily<T> {
    /// Orthonormal coefficients p_n = p̃_n / c_n in the float channel.
    pub fn orthonormal_p(&self, n: usize) -> Vec<Bf> {
        let inv = self.c[n].recip();
        poly::map(&self.monic_p[n], |v| v.s_to_bf() * &inv)
    }

    pub fn orthonormal_q(&self, n: usize) -> Vec<Bf> {
        let inv = self.c[n].recip();
        poly::map(&self.monic_q[n], |v| v.s_to_bf() * &inv)
    }

    pub fn hat_p_bf(&self, n: usize) -> Vec<Bf> {
        poly::map(&self.hat_p[n], RealScalar::s_to_bf)
    }

    pub fn hat_q_bf(&self, n: usize) -> Vec<Bf> {
        poly::map(&self.hat_q[n], RealScalar::s_to_bf)
    }

    /// Orthonormal-normalization recurrence coefficient
    /// a_n^(i) = S_{n,i}/(c_{n-1} c_n c_{n-i}).
    pub fn rec_a(&self, n: usize, i: i32) -> Bf {
        let s = &self.rec_s_a[n][(i + 1) as usize];
        s.s_to_bf() / (&self.c[n - 1] * &self.c[n] * &self.c[(n as i64 - i as i64) as usize])
    }

    pub fn rec_b(&self, n: usize, i: i32) -> Bf {
        let s = &self.rec_s_b[n][(i + 1) as usize];
        s.s_to_bf() / (&self.c[n - 1] * &self.c[n] * &self.c[(n as i64 - i as i64) as usize])
    }
}

fn monic_solve<T: RealScalar>(
    table: &BimomentTable<T>,
    n: usize,
    transposed: bool,
) -> Result<Vec<T>> {
    if n == 0 {
        return Ok(vec![T::s_one()]);
    }
    // p̃_n: Σ_{m<n} coef_m I_mk = -I_nk for k < n (q̃_n transposes the table).
    let sys = Mat::from_fn(n, n, |k, m| {
        if transposed {
            table.entry(k, m).clone()
        } else {
            table.entry(m, k).clone()
        }
    });
    let rhs: Vec<T> = (0..n)
        .map(|k| {
            if transposed {
                table.entry(k, n).s_neg()
            } else {
                table.entry(n, k).s_neg()
            }
        })
        .collect();
    let mut coef = sys
        .solve(&rhs)
        .ok_or_else(|| Error::domain("singular bimoment block; weights not admissible"))?;
    coef.push(T::s_one());
    Ok(coef)
}

/// p̂_n via the determinantal representation: Laplace expansion of the
/// (n+2)×(n+2) determinant along the x-powers column,
/// p̂_n(x) = (1/D_{n+1}) Σ_r (-1)^{r+n+1} x^r det(minor_r).
fn hat_p_determinantal<T: RealScalar>(
    table: &BimomentTable<T>,
    beta_moments: &[T],
    n: usize,
) -> Vec<T> {
    let mut coeffs = Vec::with_capacity(n + 1);
    let d = table.minor(n + 1);
    for r in 0..=n {
        // rows: all I rows 0..=n except r, then the β-moment row; cols 0..=n
        let mut rows: Vec<Vec<T>> = (0..=n)
            .filter(|&j| j != r)
            .map(|j| (0..=n).map(|k| table.entry(j, k).clone()).collect())
            .collect();
        rows.push(beta_moments[..=n].to_vec());
        let minor = Mat::from_rows(rows).determinant();
        let signed = if (r + n + 1) % 2 == 0 { minor } else { minor.s_neg() };
        coeffs.push(signed.s_div(d));
    }
    coeffs
}

/// Builds the family through degree n_max on a table of the same size.
/// `moments_alpha`/`moments_beta` are the plain moments of the two weights in
/// the table's scalar channel, through order n_max.
pub fn build_family<T: RealScalar>(
    table: &BimomentTable<T>,
    n_max: usize,
    moments_alpha: &[T],
    moments_beta: &[T],
) -> Result<BopFamily<T>> {
    if n_max > table.n_max() {
        return Err(Error::insufficient("table smaller than requested degree"));
    }
    if moments_alpha.len() <= n_max || moments_beta.len() <= n_max {
        return Err(Error::insufficient("need weight moments through degree n_max"));
    }
    for m in 1..=n_max + 1 {
        if table.minor(m).s_sign() <= 0 {
            return Err(Error::domain(format!(
                "leading minor D_{m} is not positive; total positivity violated"
            )));
        }
    }

    let mut monic_p = Vec::with_capacity(n_max + 1);
    let mut monic_q = Vec::with_capacity(n_max + 1);
    let mut h = Vec::with_capacity(n_max + 1);
    let mut c = Vec::with_capacity(n_max + 1);
    let mut u_p = Vec::with_capacity(n_max + 1);
    let mut u_q = Vec::with_capacity(n_max + 1);
    let mut pi = Vec::with_capacity(n_max + 1);
    let mut eta = Vec::with_capacity(n_max + 1);

    for n in 0..=n_max {
        let p = monic_solve(table, n, false)?;
        let q = monic_solve(table, n, true)?;
        let hn = table.h_ratio(n);
        let cn = hn.s_to_bf().sqrt();
        let up = p
            .iter()
            .zip(moments_alpha.iter())
            .fold(T::s_zero(), |acc, (a, m)| acc.s_add(&a.s_mul(m)));
        let uq = q
            .iter()
            .zip(moments_beta.iter())
            .fold(T::s_zero(), |acc, (a, m)| acc.s_add(&a.s_mul(m)));
        pi.push(up.s_to_bf() / &cn);
        eta.push(uq.s_to_bf() / &cn);
        monic_p.push(p);
        monic_q.push(q);
        h.push(hn);
        c.push(cn);
        u_p.push(up);
        u_q.push(uq);
    }

    // π_n, η_n > 0 is a theorem for these kernels; a failure means the input
    // data is outside the admissible class.
    if pi.iter().chain(eta.iter()).any(|v| v.signum() <= 0) {
        return Err(Error::domain("nonpositive π_n or η_n; weights not admissible"));
    }

    let mut hat_p = Vec::new();
    let mut hat_q = Vec::new();
    for n in 0..n_max {
        hat_p.push(hat_p_determinantal(table, moments_beta, n));
        // q̂_n = q_{n+1}/η_{n+1} - q_n/η_n collapses to monic data:
        // q̃_{n+1}/ṽ_{n+1} - q̃_n/ṽ_n (the c's cancel), so it stays in T.
        hat_q.push(poly::sub(
            &poly::scale(&monic_q[n + 1], &T::s_one().s_div(&u_q[n + 1])),
            &poly::scale(&monic_q[n], &T::s_one().s_div(&u_q[n])),
        ));
    }

    Ok(BopFamily {
        n_max,
        monic_p,
        monic_q,
        h,
        c,
        u_p,
        u_q,
        pi,
        eta,
        hat_p,
        hat_q,
        rec_s_a: Vec::new(),
        rec_s_b: Vec::new(),
    })
}

/// Fills the cleared recurrence pairings S_{n,i} for n = 1..n_max-1.
/// Index [n][i+1] holds S_{n,i}; rows for n < 1 stay zero.
pub fn recurrence_coeffs<T: RealScalar>(
    fam: &mut BopFamily<T>,
    table: &BimomentTable<T>,
) -> Result<()> {
    let n_top = fam.n_max.saturating_sub(1);
    if fam.n_max < 2 {
        return Err(Error::insufficient("recurrence needs n_max ≥ 2"));
    }
    let zero_row = || [T::s_zero(), T::s_zero(), T::s_zero(), T::s_zero()];
    fam.rec_s_a = vec![zero_row(); n_top + 1];
    fam.rec_s_b = vec![zero_row(); n_top + 1];
    for n in 1..=n_top {
        for i in -1i32..=2 {
            let m = n as i64 - i as i64;
            if m < 0 {
                continue;
            }
            let m = m as usize;
            // a-side: ⟨x(ũ_{n-1} p̃_n - ũ_n p̃_{n-1}), q̃_m⟩
            let lhs = poly::shift_up(&poly::sub(
                &poly::scale(&fam.monic_p[n], &fam.u_p[n - 1]),
                &poly::scale(&fam.monic_p[n - 1], &fam.u_p[n]),
            ));
            fam.rec_s_a[n][(i + 1) as usize] = pairing(&lhs, &fam.monic_q[m], table)?;
            // b-side: ⟨p̃_m, y(ṽ_{n-1} q̃_n - ṽ_n q̃_{n-1})⟩
            let rhs = poly::shift_up(&poly::sub(
                &poly::scale(&fam.monic_q[n], &fam.u_q[n - 1]),
                &poly::scale(&fam.monic_q[n - 1], &fam.u_q[n]),
            ));
            fam.rec_s_b[n][(i + 1) as usize] = pairing(&fam.monic_p[m], &rhs, table)?;
        }
    }
    Ok(())
}

/// Coefficients of the cleared recurrence residual at row n:
/// x(ũ_{n-1}p̃_n - ũ_n p̃_{n-1}) - Σ_{i=-1}^{2} (S_{n,i}/h_{n-i}) p̃_{n-i}.
/// Identically zero when the four-term recurrence holds.
pub fn recurrence_residual_p<T: RealScalar>(fam: &BopFamily<T>, n: usize) -> Vec<T> {
    let mut res = poly::shift_up(&poly::sub(
        &poly::scale(&fam.monic_p[n], &fam.u_p[n - 1]),
        &poly::scale(&fam.monic_p[n - 1], &fam.u_p[n]),
    ));
    for i in -1i32..=2 {
        let m = n as i64 - i as i64;
        if m < 0 {
            continue;
        }
        let m = m as usize;
        let coeff = fam.rec_s_a[n][(i + 1) as usize].s_div(&fam.h[m]);
        res = poly::sub(&res, &poly::scale(&fam.monic_p[m], &coeff));
    }
    res
}

/// q-side analogue of [`recurrence_residual_p`].
pub fn recurrence_residual_q<T: RealScalar>(fam: &BopFamily<T>, n: usize) -> Vec<T> {
    let mut res = poly::shift_up(&poly::sub(
        &poly::scale(&fam.monic_q[n], &fam.u_q[n - 1]),
        &poly::scale(&fam.monic_q[n - 1], &fam.u_q[n]),
    ));
    for i in -1i32..=2 {
        let m = n as i64 - i as i64;
        if m < 0 {
            continue;
        }
        let m = m as usize;
        let coeff = fam.rec_s_b[n][(i + 1) as usize].s_div(&fam.h[m]);
        res = poly::sub(&res, &poly::scale(&fam.monic_q[m], &coeff));
    }
    res
}

// ---------------------------------------------------------------------------
// zeros
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub p_zeros: Vec<Vec<Bf>>,
    pub q_zeros: Vec<Vec<Bf>>,
    pub all_simple: bool,
    pub all_contained: bool,
    pub interlaced: bool,
}

/// Convex-hull interval of the support, as floats (None = unbounded above).
fn hull(weight: &Weight) -> (f64, Option<f64>) {
    let lo = weight.support[0].lo.to_f64();
    let hi = weight.support.last().unwrap().hi.as_ref().map(|h| h.to_f64());
    (lo, hi)
}

/// Bracket-and-bisect roots of a polynomial with all roots real, simple, and
/// inside the hull. Returns ascending roots; incomplete bracketing surfaces
/// as a shorter list (reported, not fatal).
fn poly_roots(coeffs: &[Bf], hull: (f64, Option<f64>)) -> Vec<Bf> {
    let deg = poly::degree(coeffs).unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    let (lo, hi) = hull;
    // scan grid: linear for bounded hulls, geometric for the half-line
    let mut grid: Vec<Bf> = Vec::new();
    match hi {
        Some(hi) => {
            let n = 64 * deg.max(4);
            for i in 0..=n {
                grid.push(Bf::from_f64(lo + (hi - lo) * i as f64 / n as f64));
            }
        }
        None => {
            grid.push(Bf::from_f64(lo));
            let mut t = 1e-12f64;
            while t < 1e7 {
                grid.push(Bf::from_f64(lo + t));
                t *= 1.090507733; // 2^(1/8)
            }
        }
    }
    let vals: Vec<i32> = grid.iter().map(|x| poly::eval(coeffs, x).signum()).collect();
    let mut roots = Vec::new();
    for i in 1..grid.len() {
        if vals[i - 1] == 0 {
            roots.push(grid[i - 1].clone());
            continue;
        }
        if vals[i - 1] * vals[i] < 0 {
            let mut a = grid[i - 1].clone();
            let mut b = grid[i].clone();
            let fa = vals[i - 1];
            let iters = crate::precision::bits() / 2 + 40;
            for _ in 0..iters {
                let mid = (&a + &b) * Bf::from_f64(0.5);
                let fm = poly::eval(coeffs, &mid).signum();
                if fm == 0 {
                    a = mid.clone();
                    b = mid;
                    break;
                }
                if fm == fa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push((&a + &b) * Bf::from_f64(0.5));
        }
    }
    roots
}

/// Zero/interlacing report per Props 2.2-2.3: simple real zeros strictly
/// inside the support hull, adjacent degrees strictly interlacing.
pub fn zeros_and_interlacing<T: RealScalar>(
    fam: &BopFamily<T>,
    alpha: &Weight,
    beta: &Weight,
) -> ZeroReport {
    let compute = |polys: &[Vec<T>], hull_iv: (f64, Option<f64>)| -> Vec<Vec<Bf>> {
        polys
            .iter()
            .map(|p| poly_roots(&poly::map(p, RealScalar::s_to_bf), hull_iv))
            .collect()
    };
    let p_zeros = compute(&fam.monic_p, hull(alpha));
    let q_zeros = compute(&fam.monic_q, hull(beta));

    let mut all_simple = true;
    let mut all_contained = true;
    let mut interlaced = true;
    for (zeros, weight) in [(&p_zeros, alpha), (&q_zeros, beta)] {
        let (lo, hi) = hull(weight);
        for (n, zs) in zeros.iter().enumerate() {
            if zs.len() != n {
                all_simple = false; // missed or merged bracket = not n simple roots
            }
            for z in zs {
                let zf = z.to_f64();
                if zf <= lo || hi.map_or(false, |h| zf >= h) {
                    all_contained = false;
                }
            }
            if n > 0 {
                // strict interlacing with degree n-1
                let prev = &zeros[n - 1];
                for (k, w) in prev.iter().enumerate() {
                    if k + 1 < zs.len() && !(&zs[k] < w && w < &zs[k + 1]) {
                        interlaced = false;
                    }
                }
            }
        }
    }
    ZeroReport { p_zeros, q_zeros, all_simple, all_contained, interlaced }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimoments::bimoment_table_exact;
    use crate::scalar::Rat;

    fn laguerre_family(n_max: usize) -> (BimomentTable<Rat>, BopFamily<Rat>) {
        let a = Weight::laguerre();
        let b = Weight::laguerre();
        let table = bimoment_table_exact(&a, &b, n_max).unwrap();
        let ma = a.moments_exact(n_max as u32).unwrap();
        let mb = b.moments_exact(n_max as u32).unwrap();
        let fam = build_family(&table, n_max, &ma, &mb).unwrap();
        (table, fam)
    }

    #[test]
    fn monic_and_constants() {
        let (_, fam) = laguerre_family(4);
        assert_eq!(fam.monic_p[1], vec![Rat::new(-1, 2), Rat::one()]);
        assert_eq!(
            fam.monic_p[2],
            vec![Rat::new(1, 3), Rat::from_int(-2), Rat::one()]
        );
        assert_eq!(fam.h[0], Rat::one());
        assert_eq!(fam.h[1], Rat::new(1, 12));
        assert_eq!(fam.h[2], Rat::new(1, 45));
        // c_1 = 1/(2√3)
        let want = 1.0 / (2.0 * 3.0f64.sqrt());
        assert!((fam.c[1].to_f64() - want).abs() < 1e-15);
        // π_0 = 1, π_1 = √3
        assert!((fam.pi[0].to_f64() - 1.0).abs() < 1e-15);
        assert!((fam.pi[1].to_f64() - 3.0f64.sqrt()).abs() < 1e-15);
        assert_eq!(fam.u_p[1], Rat::new(1, 2));
        // symmetric weights: q data mirrors p data
        assert_eq!(fam.monic_p, fam.monic_q);
        assert_eq!(fam.u_p, fam.u_q);
    }

    #[test]
    fn pairing_examples_and_biorthogonality() {
        let (table, fam) = laguerre_family(8);
        let one = vec![Rat::one()];
        assert_eq!(pairing(&one, &one, &table).unwrap(), Rat::one());
        let f = vec![Rat::new(-1, 2), Rat::one()];
        assert_eq!(pairing(&f, &f, &table).unwrap(), Rat::new(1, 12));
        // bilinearity
        let two_f = poly::scale(&f, &Rat::from_int(2));
        assert_eq!(
            pairing(&two_f, &f, &table).unwrap(),
            Rat::from_int(2) * pairing(&f, &f, &table).unwrap()
        );
        // ⟨p̃_j, q̃_k⟩ = h_j δ_jk exactly
        for j in 0..=8 {
            for k in 0..=8 {
                let v = pairing(&fam.monic_p[j], &fam.monic_q[k], &table).unwrap();
                if j == k {
                    assert_eq!(v, fam.h[j], "diagonal {j}");
                } else {
                    assert!(v.is_zero(), "offdiag ({j},{k}) = {v}");
                }
            }
        }
    }

    #[test]
    fn hat_polynomials_exact() {
        let (_, fam) = laguerre_family(6);
        assert_eq!(fam.hat_p[0], vec![Rat::from_int(-1)]);
        assert_eq!(fam.hat_p[1], vec![Rat::from_int(2), Rat::from_int(-6)]);
        // telescoping: p̂_{n-1} - p̂_n = (ũ_n/h_n) p̃_n, with p̂_{-1} = 0
        for n in 0..=5usize {
            let prev: Vec<Rat> = if n == 0 { Vec::new() } else { fam.hat_p[n - 1].clone() };
            let lhs = poly::sub(&prev, &fam.hat_p[n]);
            let rhs = poly::scale(&fam.monic_p[n], &(fam.u_p[n].clone() / fam.h[n].clone()));
            assert_eq!(lhs, rhs, "telescoping at {n}");
        }
        // ∫ q̂_n dβ = 0 exactly
        let mb = Weight::laguerre().moments_exact(6).unwrap();
        for n in 0..=4usize {
            let acc = fam.hat_q[n]
                .iter()
                .zip(mb.iter())
                .fold(Rat::zero(), |acc, (c, m)| acc + &(c.clone() * m.clone()));
            assert!(acc.is_zero(), "q̂_{n} mean {acc}");
        }
        // deg q̂_n = n+1
        for n in 0..=4usize {
            assert_eq!(poly::degree(&fam.hat_q[n]), Some(n + 1));
        }
        // hat biorthogonality ⟨p̂_n, q̂_m⟩ = δ_nm exactly
        let (table, _) = laguerre_family(6);
        for n in 0..=3usize {
            for m in 0..=3usize {
                let v = pairing(&fam.hat_p[n], &fam.hat_q[m], &table).unwrap();
                let tgt = if n == m { Rat::one() } else { Rat::zero() };
                assert_eq!(v, tgt, "hat pairing ({n},{m})");
            }
        }
    }

    #[test]
    fn hat_q_determinantal_cross_check() {
        // the q̂ determinantal representation divided by ũ_n ũ_{n+1} D_n
        // must equal the difference construction exactly
        let (table, fam) = laguerre_family(5);
        let mb = Weight::laguerre().moments_exact(5).unwrap();
        for n in 1..=3usize {
            // matrix rows: I rows j=0..n-1, β-moment row, y-powers row
            // Laplace along the y-powers row (last), columns 0..n+1
            let mut dets = Vec::new();
            for c in 0..=(n + 1) {
                let mut rows: Vec<Vec<Rat>> = (0..n)
                    .map(|j| {
                        (0..=(n + 1)).filter(|&k| k != c).map(|k| table.entry(j, k).clone()).collect()
                    })
                    .collect();
                rows.push((0..=(n + 1)).filter(|&k| k != c).map(|k| mb[k].clone()).collect());
                dets.push(Mat::from_rows(rows).determinant());
            }
            let mut coeffs = Vec::new();
            for (c, d) in dets.into_iter().enumerate() {
                // sign (-1)^{(n+1)+c} from the (n+2)-dim matrix (0-based)
                let signed = if (n + 1 + c) % 2 == 0 { d } else { -&d };
                coeffs.push(signed);
            }
            let scale = (fam.u_q[n].clone() * fam.u_q[n + 1].clone() * table.minor(n).clone()).recip();
            let det_form = poly::scale(&coeffs, &scale);
            assert_eq!(det_form, fam.hat_q[n], "determinantal q̂ at {n}");
        }
    }

    #[test]
    fn recurrence_exact_zero() {
        let (table, mut fam) = laguerre_family(6);
        recurrence_coeffs(&mut fam, &table).unwrap();
        for n in 1..=5usize {
            let rp = recurrence_residual_p(&fam, n);
            let rq = recurrence_residual_q(&fam, n);
            assert!(rp.iter().all(Rat::is_zero), "p residual at {n}: {rp:?}");
            assert!(rq.iter().all(Rat::is_zero), "q residual at {n}: {rq:?}");
            // symmetric weights: S-values coincide
            assert_eq!(fam.rec_s_a[n], fam.rec_s_b[n]);
        }
    }

    #[test]
    fn zeros_interlace() {
        let (_, fam) = laguerre_family(6);
        let a = Weight::laguerre();
        let rep = zeros_and_interlacing(&fam, &a, &a);
        assert!(rep.all_simple && rep.all_contained && rep.interlaced);
        assert_eq!(rep.p_zeros[0].len(), 0);
        assert_eq!(rep.p_zeros[1].len(), 1);
        assert!((rep.p_zeros[1][0].to_f64() - 0.5).abs() < 1e-30);
        // p_1 zero between the two zeros of p_2
        let z2 = &rep.p_zeros[2];
        assert!(z2[0].to_f64() < 0.5 && 0.5 < z2[1].to_f64());
    }
}

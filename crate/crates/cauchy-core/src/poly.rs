//! Dense univariate polynomials as ascending coefficient vectors.

use crate::scalar::Scalar;

/// Horner evaluation; works for any scalar channel, including evaluating a
/// rational-coefficient polynomial at a float or complex point after mapping
/// the coefficients.
pub fn eval<T: Scalar>(coeffs: &[T], x: &T) -> T {
    let mut acc = T::s_zero();
    for c in coeffs.iter().rev() {
        acc = acc.s_mul(x).s_add(c);
    }
    acc
}

pub fn add<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::s_zero);
            let y = b.get(i).cloned().unwrap_or_else(T::s_zero);
            x.s_add(&y)
        })
        .collect()
}

pub fn sub<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(T::s_zero);
            let y = b.get(i).cloned().unwrap_or_else(T::s_zero);
            x.s_sub(&y)
        })
        .collect()
}

pub fn scale<T: Scalar>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|c| c.s_mul(s)).collect()
}

pub fn mul<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::s_zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.s_is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].s_add(&x.s_mul(y));
        }
    }
    out
}

/// Multiplication by the monomial x.
pub fn shift_up<T: Scalar>(a: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(T::s_zero());
    out.extend_from_slice(a);
    out
}

pub fn derivative<T: Scalar>(a: &[T]) -> Vec<T> {
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.s_mul(&T::s_from_i64(k as i64)))
        .collect()
}

/// Degree ignoring trailing zero coefficients; empty or all-zero gives None.
pub fn degree<T: Scalar>(a: &[T]) -> Option<usize> {
    a.iter().rposition(|c| !c.s_is_zero())
}

/// Maps coefficients into another scalar channel.
pub fn map<T: Scalar, U: Scalar>(a: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    a.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn eval_and_mul() {
        // (1 + 2x)(3 - x) = 3 + 5x - 2x^2
        let a = vec![Rat::one(), Rat::from_int(2)];
        let b = vec![Rat::from_int(3), Rat::from_int(-1)];
        let p = mul(&a, &b);
        assert_eq!(p, vec![Rat::from_int(3), Rat::from_int(5), Rat::from_int(-2)]);
        assert_eq!(eval(&p, &Rat::from_int(2)), Rat::from_int(5));
        assert_eq!(degree(&p), Some(2));
        assert_eq!(derivative(&p), vec![Rat::from_int(5), Rat::from_int(-4)]);
    }
}

//! Dense kernels used by the curve fitter: Householder QR, one-sided Jacobi
//! SVD, and real polynomial roots.

use crate::real::Real;

/// Upper-triangular factor of a Householder QR.
///
/// `cols` holds the matrix column by column (all columns the same length,
/// at least as long as the number of columns). Returns `R` as rows. Column
/// order is preserved, so the leading `k x k` block of `R` is the factor of
/// the first `k` columns.
pub fn householder_r<T: Real>(mut cols: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let m = cols.len();
    let n = cols.first().map_or(0, Vec::len);
    assert!(n >= m, "householder_r needs at least as many rows as columns");
    let mut r = vec![vec![T::zero(); m]; m];
    for k in 0..m {
        let (head, tail) = cols.split_at_mut(k + 1);
        let col = &mut head[k];
        let mut norm2 = T::zero();
        for v in &col[k..] {
            norm2 += *v * *v;
        }
        let norm = norm2.sqrt();
        if !(norm > T::zero()) {
            for j in k..m {
                r[k][j] = if j == k { T::zero() } else { tail[j - k - 1][k] };
            }
            continue;
        }
        let alpha = if col[k] > T::zero() { -norm } else { norm };
        // v = x - alpha e1, stored in place; beta = 2 / |v|²
        let xk = col[k];
        col[k] -= alpha;
        let vnorm2 = norm2 - xk * xk + col[k] * col[k];
        let beta = T::from_f64(2.0) / vnorm2;
        r[k][k] = alpha;
        for (jj, other) in tail.iter_mut().enumerate() {
            let mut s = T::zero();
            for i in k..n {
                s += col[i] * other[i];
            }
            let f = s * beta;
            for i in k..n {
                other[i] -= f * col[i];
            }
            r[k][k + 1 + jj] = other[k];
        }
    }
    r
}

/// Singular values in ascending order with their right singular vectors.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

/// One-sided Jacobi SVD of a square matrix given as rows.
pub fn jacobi_svd<T: Real>(rows: &[Vec<T>]) -> Svd<T> {
    let n = rows.len();
    // work on columns of A; V accumulates the rotations
    let mut a: Vec<Vec<T>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let tol = T::from_f64(T::EPSILON * n as f64);
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for (&x, &y) in a[p].iter().zip(&a[q]).take(n) {
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if !(gamma.abs() > tol * (alpha * beta).sqrt()) || !(alpha > T::zero() && beta > T::zero()) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::from_f64(2.0) * gamma);
                let t = if zeta.abs().to_f64() > 1e60 {
                    T::one() / (T::from_f64(2.0) * zeta.abs())
                } else {
                    T::one() / (zeta.abs() + (T::one() + zeta * zeta).sqrt())
                };
                let t = if zeta < T::zero() { -t } else { t };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut a, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut pairs: Vec<(T, Vec<T>)> = a
        .iter()
        .zip(v)
        .map(|(col, vec)| {
            let mut s = T::zero();
            for x in col {
                s += *x * *x;
            }
            (s.sqrt(), vec)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    let (values, vectors) = pairs.into_iter().unzip();
    Svd { values, vectors }
}

fn rotate<T: Real>(m: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (lo, hi) = m.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (xp, xq) = (*x, *y);
        *x = c * xp - s * xq;
        *y = s * xp + c * xq;
    }
}

/// Horner evaluation; coefficients in descending powers.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len().saturating_sub(1);
    coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (deg - i) as f64)
        .collect()
}

/// All real roots of a polynomial (descending coefficients), ascending.
///
/// Roots of the derivative split the line into monotone pieces, each of
/// which holds at most one root; those are refined by bisection.
pub fn real_roots(coeffs: &[f64]) -> Vec<f64> {
    let start = coeffs.iter().position(|c| *c != 0.0).unwrap_or(coeffs.len());
    let c = &coeffs[start..];
    if c.len() <= 1 {
        return Vec::new();
    }
    if c.len() == 2 {
        return vec![-c[1] / c[0]];
    }
    let bound = 1.0 + c[1..].iter().map(|x| (x / c[0]).abs()).fold(0.0, f64::max);
    let mut knots = vec![-bound];
    knots.extend(real_roots(&derivative(c)).into_iter().filter(|x| x.abs() < bound));
    knots.push(bound);
    let mut roots: Vec<f64> = Vec::new();
    for w in knots.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (poly_eval(c, lo), poly_eval(c, hi));
        if flo == 0.0 {
            if roots.last().is_none_or(|r| (r - lo).abs() > 0.0) {
                roots.push(lo);
            }
            continue;
        }
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = poly_eval(c, mid);
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    if poly_eval(c, bound) == 0.0 {
        roots.push(bound);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * b.abs().max(1.0));
    roots
}

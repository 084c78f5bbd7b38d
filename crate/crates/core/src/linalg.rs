//! Dense symmetric eigensolver and singular values, both by Jacobi rotations.
//!
//! Jacobi methods keep small eigenvalues and singular values accurate to
//! roughly machine precision relative to the matrix norm, which the
//! "equals 1 within 1e-9" checks downstream depend on.

use ndarray::Array2;

use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigenpairs of a symmetric matrix, sorted by descending eigenvalue.
/// Column `i` of `vectors` belongs to `values[i]`.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    pub vectors: Array2<T>,
}

/// Cyclic Jacobi. The input is symmetrized as `(A + Aᵀ)/2` first.
pub fn symmetric_eigen<T: Real>(matrix: &Array2<T>) -> SymmetricEigen<T> {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "eigen solve needs a square matrix");
    let half = T::from_f64_lossy(0.5);
    let mut a = Array2::from_shape_fn((n, n), |(i, j)| half * (matrix[(i, j)] + matrix[(j, i)]));
    let mut v = Array2::from_shape_fn((n, n), |(i, j)| if i == j { T::one() } else { T::zero() });

    let frobenius = a.iter().fold(T::zero(), |acc, &x| acc + x * x).sqrt();
    let target = T::epsilon() * T::epsilon() * frobenius * frobenius;

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)] * a[(p, q)];
            }
        }
        if off <= target || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= T::min_positive_value() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (apq + apq);
                let t = if theta.abs() > T::from_f64_lossy(1e150) {
                    (theta + theta).recip()
                } else {
                    let sign = if theta < T::zero() {
                        -T::one()
                    } else {
                        T::one()
                    };
                    sign / (theta.abs() + (theta * theta + T::one()).sqrt())
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .partial_cmp(&a[(i, i)])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(i.cmp(&j))
    });
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let vectors = Array2::from_shape_fn((n, n), |(r, c)| v[(r, order[c])]);
    SymmetricEigen { values, vectors }
}

pub fn symmetric_eigenvalues<T: Real>(matrix: &Array2<T>) -> Vec<T> {
    symmetric_eigen(matrix).values
}

/// Singular values by one-sided (Hestenes) Jacobi, descending, clamped at 0.
/// Returns `min(rows, cols)` values.
pub fn singular_values<T: Real>(matrix: &Array2<T>) -> Vec<T> {
    let mut u = if matrix.nrows() >= matrix.ncols() {
        matrix.clone()
    } else {
        matrix.t().to_owned()
    };
    let (m, n) = u.dim();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                for i in 0..m {
                    let (x, y) = (u[(i, p)], u[(i, q)]);
                    alpha += x * x;
                    beta += y * y;
                    gamma += x * y;
                }
                if gamma == T::zero() || gamma.abs() <= T::epsilon() * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let sign = if zeta < T::zero() {
                    -T::one()
                } else {
                    T::one()
                };
                let t = sign / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                for i in 0..m {
                    let (x, y) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * x - s * y;
                    u[(i, q)] = s * x + c * y;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma: Vec<T> = (0..n)
        .map(|j| {
            u.column(j)
                .iter()
                .fold(T::zero(), |acc, &x| acc + x * x)
                .sqrt()
                .max(T::zero())
        })
        .collect();
    sigma.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sigma
}

//! Symmetric spectral primitives.
//!
//! Everything in the crate that needs a spectrum goes through
//! [`symmetric_eigen`], a cyclic Jacobi solver. Nonsymmetric eigenproblems
//! are never solved directly.

use crate::error::{Error, Result};
use crate::matrix::{axpy, dot, norm2, Matrix};
use crate::tolerance::{scale, Tolerances};

const MAX_SWEEPS: usize = 100;

/// Components smaller than this are skipped when fixing eigenvector signs.
const SIGN_EPS: f64 = 1e-10;

/// Orthogonal eigendecomposition `m = q·diag(values)·qᵀ`, values ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub q: Matrix,
    pub values: Vec<f64>,
}

impl EigenDecomposition {
    pub fn reconstruct(&self) -> Matrix {
        self.map_values(|v| v)
    }

    /// `q·diag(f(values))·qᵀ`
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let n = self.values.len();
        let mut scaled = self.q.clone();
        for j in 0..n {
            let fv = f(self.values[j]);
            for i in 0..n {
                scaled[(i, j)] *= fv;
            }
        }
        (&scaled * &self.q.transpose()).symmetrize()
    }

    pub fn vector(&self, j: usize) -> Vec<f64> {
        self.q.column(j)
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }
}

pub(crate) fn check_square(m: &Matrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(m.rows())
}

/// Returns `n` for a `2n×2n` matrix.
pub(crate) fn check_even_square(m: &Matrix) -> Result<usize> {
    let d = check_square(m)?;
    if d % 2 != 0 || d == 0 {
        return Err(Error::OddDimension(d));
    }
    Ok(d / 2)
}

pub(crate) fn check_symmetric(m: &Matrix, tol: &Tolerances) -> Result<()> {
    check_square(m)?;
    let residual = m.asymmetry();
    if residual > tol.sym_tol * scale(m.norm_inf()) {
        return Err(Error::NotSymmetric { residual });
    }
    Ok(())
}

/// Eigendecomposition of a symmetric PD matrix, or `NotPositiveDefinite`.
pub(crate) fn require_pd(m: &Matrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let eig = symmetric_eigen(m, tol)?;
    if eig.min_value() <= tol.rank_tol * scale(m.norm_inf()) {
        return Err(Error::NotPositiveDefinite {
            min_eigenvalue: eig.min_value(),
        });
    }
    Ok(eig)
}

pub(crate) fn require_psd(m: &Matrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    let eig = symmetric_eigen(m, tol)?;
    if eig.min_value() < -tol.rank_tol * scale(m.norm_inf()) {
        return Err(Error::NotPositiveSemidefinite {
            min_eigenvalue: eig.min_value(),
        });
    }
    Ok(eig)
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps until the off-diagonal Frobenius mass drops below
/// `conv_tol·‖m‖_F`. Eigenvalues come back ascending; each eigenvector is
/// signed so that its first non-negligible component is positive, which makes
/// the output a deterministic function of the input.
pub fn symmetric_eigen(m: &Matrix, tol: &Tolerances) -> Result<EigenDecomposition> {
    check_symmetric(m, tol)?;
    let n = m.rows();
    let mut a = m.symmetrize();
    let mut v = Matrix::identity(n);
    let target = tol.conv_tol * a.norm_fro();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= target {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                rotated = true;
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged && off_diagonal(&a) > target {
        return Err(Error::NotConverged { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut q = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        fix_sign(&mut col);
        q.set_column(dst, &col);
    }
    Ok(EigenDecomposition { q, values })
}

fn off_diagonal(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Flips `v` so its first component above `SIGN_EPS` in magnitude is positive.
pub(crate) fn fix_sign(v: &mut [f64]) {
    if let Some(&x) = v.iter().find(|x| x.abs() > SIGN_EPS) {
        if x < 0.0 {
            v.iter_mut().for_each(|e| *e = -*e);
        }
    }
}

/// `m^s` for symmetric PSD `m` through its eigendecomposition.
///
/// For non-integer or negative `s`, eigenvalues below `rank_tol·scale` are
/// clamped to zero; negative `s` additionally requires `m` to be PD.
pub fn matrix_power(m: &Matrix, s: f64, tol: &Tolerances) -> Result<Matrix> {
    if !s.is_finite() {
        return Err(Error::InvalidParameter(format!("exponent must be finite, got {s}")));
    }
    let eig = symmetric_eigen(m, tol)?;
    let thr = tol.rank_tol * scale(m.norm_inf());
    let min = eig.min_value();
    if min < -thr {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    if s < 0.0 && min <= thr {
        return Err(Error::SingularPower { min_eigenvalue: min });
    }
    let integral = s.fract() == 0.0 && s >= 0.0 && s <= i32::MAX as f64;
    Ok(eig.map_values(|v| {
        if integral {
            v.powi(s as i32)
        } else if v < thr {
            0.0
        } else {
            v.powf(s)
        }
    }))
}

/// Orthonormal basis (as columns) of the numerical kernel of a symmetric PSD matrix.
pub fn nullspace(m: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let eig = symmetric_eigen(m, tol)?;
    let thr = tol.rank_tol * scale(m.norm_inf());
    let cols: Vec<Vec<f64>> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.abs() < thr)
        .map(|(j, _)| eig.vector(j))
        .collect();
    Ok(Matrix::from_columns(m.rows(), &cols))
}

/// Number of eigenvalues above `rank_tol·scale`.
pub fn rank(m: &Matrix, tol: &Tolerances) -> Result<usize> {
    let eig = symmetric_eigen(m, tol)?;
    let thr = tol.rank_tol * scale(m.norm_inf());
    Ok(eig.values.iter().filter(|v| v.abs() >= thr).count())
}

/// Orthonormal basis of the orthogonal complement of `span(columns)` in `ℝ^dim`.
///
/// Uses the spectrum of the orthogonal projector onto the span, whose
/// eigenvalues are 0 or 1 up to roundoff.
pub(crate) fn orthogonal_complement(columns: &[Vec<f64>], dim: usize, tol: &Tolerances) -> Result<Vec<Vec<f64>>> {
    let basis = orthonormalize(columns, 1e-10);
    let mut p = Matrix::zeros(dim, dim);
    for q in &basis {
        for i in 0..dim {
            for j in 0..dim {
                p[(i, j)] += q[i] * q[j];
            }
        }
    }
    let eig = symmetric_eigen(&p, tol)?;
    Ok(eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < 0.5)
        .map(|(j, _)| eig.vector(j))
        .collect())
}

/// Modified Gram–Schmidt with one reorthogonalization pass. Vectors whose
/// residual norm falls below `drop_tol` times their original norm are
/// discarded.
pub(crate) fn orthonormalize(columns: &[Vec<f64>], drop_tol: f64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for c in columns {
        let n0 = norm2(c);
        if n0 == 0.0 {
            continue;
        }
        let mut v = c.clone();
        for _ in 0..2 {
            for q in &out {
                let d = dot(q, &v);
                axpy(&mut v, -d, q);
            }
        }
        let nv = norm2(&v);
        if nv > drop_tol * n0 {
            v.iter_mut().for_each(|x| *x /= nv);
            out.push(v);
        }
    }
    out
}

/// LU factorization with partial pivoting; returns (lu, permutation, sign).
fn lu(m: &Matrix) -> Result<(Matrix, Vec<usize>, f64)> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[(i, k)].abs().total_cmp(&a[(j, k)].abs()))
            .unwrap_or(k);
        if p != k {
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = a[(k, k)];
        if pivot == 0.0 {
            continue;
        }
        for i in (k + 1)..n {
            let f = a[(i, k)] / pivot;
            a[(i, k)] = f;
            for j in (k + 1)..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    Ok((a, perm, sign))
}

pub fn determinant(m: &Matrix) -> Result<f64> {
    let (a, _, sign) = lu(m)?;
    Ok((0..a.rows()).map(|i| a[(i, i)]).product::<f64>() * sign)
}

/// General inverse by LU with partial pivoting.
pub fn inverse(m: &Matrix) -> Result<Matrix> {
    let (a, perm, _) = lu(m)?;
    let n = a.rows();
    let scale = m.max_abs();
    if (0..n).any(|i| a[(i, i)].abs() <= f64::EPSILON * scale * n as f64) {
        return Err(Error::Degeneracy("matrix is numerically singular".into()));
    }
    let mut inv = Matrix::zeros(n, n);
    for col in 0..n {
        let mut x: Vec<f64> = (0..n).map(|i| if perm[i] == col { 1.0 } else { 0.0 }).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= a[(i, k)] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                x[i] -= a[(i, k)] * x[k];
            }
            x[i] /= a[(i, i)];
        }
        inv.set_column(col, &x);
    }
    Ok(inv)
}

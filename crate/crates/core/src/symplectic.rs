//! The standard symplectic structure on `ℝ²ⁿ`.
//!
//! Coordinates are ordered `(x₁,…,xₙ,p₁,…,pₙ)` and the symplectic form is
//! `ω(x, y) = xᵀJy` with `J = [[0, I], [−I, 0]]`.

use crate::error::{Error, Result};
use crate::linalg::check_even_square;
use crate::matrix::{dot, Matrix};
use crate::tolerance::{scale, Tolerances};

/// `J₂ₙ = [[0, Iₙ], [−Iₙ, 0]]`.
pub fn standard_symplectic_form(n: usize) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("symplectic dimension n must be at least 1".into()));
    }
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = 1.0;
        j[(n + i, i)] = -1.0;
    }
    Ok(j)
}

pub(crate) fn j_matrix(n: usize) -> Matrix {
    standard_symplectic_form(n).expect("n >= 1")
}

/// `J·y` without forming `J`.
pub fn apply_j(y: &[f64]) -> Vec<f64> {
    let n = y.len() / 2;
    let mut out = vec![0.0; y.len()];
    for i in 0..n {
        out[i] = y[n + i];
        out[n + i] = -y[i];
    }
    out
}

/// `ω(x, y) = xᵀJy`.
pub fn omega(x: &[f64], y: &[f64]) -> f64 {
    dot(x, &apply_j(y))
}

/// `‖SᵀJS − J‖_∞`.
pub fn symplectic_residual(s: &Matrix) -> Result<f64> {
    let n = check_even_square(s)?;
    let j = j_matrix(n);
    Ok((&(&s.transpose() * &(&j * s)) - &j).norm_inf())
}

pub fn is_symplectic(s: &Matrix, tol: &Tolerances) -> Result<bool> {
    let r = symplectic_residual(s)?;
    let ns = s.norm_inf();
    Ok(r <= tol.sym_tol * scale(ns * ns))
}

/// Symplectic and orthogonal at once.
pub fn is_orthosymplectic(s: &Matrix, tol: &Tolerances) -> Result<bool> {
    if !is_symplectic(s, tol)? {
        return Ok(false);
    }
    let n = s.rows();
    let r = (&(&s.transpose() * s) - &Matrix::identity(n)).norm_inf();
    Ok(r <= tol.sym_tol)
}

/// `S⁻¹ = −J Sᵀ J` for symplectic `S`.
pub fn symplectic_inverse(s: &Matrix) -> Result<Matrix> {
    let n = check_even_square(s)?;
    let j = j_matrix(n);
    Ok(-&(&(&j * &s.transpose()) * &j))
}

/// `diag(values) ⊕ diag(values)`, the Williamson normal form.
pub fn paired_diagonal(values: &[f64]) -> Matrix {
    let mut d = values.to_vec();
    d.extend_from_slice(values);
    Matrix::from_diag(&d)
}

/// `‖SᵀMS − target‖_∞`.
pub fn congruence_residual(s: &Matrix, m: &Matrix, target: &Matrix) -> f64 {
    (&(&s.transpose() * &(m * s)) - target).norm_inf()
}

/// Reorders symplectic pairs: column `j` and `n + j` of the result are
/// columns `perm[j]` and `n + perm[j]` of `s`. Any such permutation keeps `s`
/// symplectic.
pub fn permute_pairs(s: &Matrix, perm: &[usize]) -> Matrix {
    let n = perm.len();
    let mut out = Matrix::zeros(s.rows(), 2 * n);
    for (dst, &src) in perm.iter().enumerate() {
        out.set_column(dst, &s.column(src));
        out.set_column(n + dst, &s.column(n + src));
    }
    out
}

/// Turns the columns of `basis` into a symplectic basis of their span.
///
/// Output columns are `u₁…u_m, v₁…v_m` with `ω(uᵢ, vⱼ) = δᵢⱼ` and all other
/// pairings zero. At each step the remaining pair with the largest
/// `|ω(bᵢ, bⱼ)|` is taken as the next `(u, v)`; the rest are projected onto
/// its ω-complement.
pub fn symplectic_gram_schmidt(basis: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    let dim = basis.rows();
    let k = basis.cols();
    if !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    if !k.is_multiple_of(2) {
        return Err(Error::OddDimension(k));
    }
    let mut rem = basis.columns();
    let size = rem.iter().map(|c| dot(c, c)).fold(0.0, f64::max);
    let thr = tol.rank_tol * scale(size);

    let mut us = Vec::with_capacity(k / 2);
    let mut vs = Vec::with_capacity(k / 2);
    while !rem.is_empty() {
        let mut best = (0, 1, 0.0_f64);
        for i in 0..rem.len() {
            let ji = apply_j(&rem[i]);
            for (j, rj) in rem.iter().enumerate().skip(i + 1) {
                // ω(rem_i, rem_j) = rem_iᵀ J rem_j = −(J rem_i)ᵀ rem_j
                let w = -dot(&ji, rj);
                if w.abs() > best.2.abs() {
                    best = (i, j, w);
                }
            }
        }
        let (i, j, w) = best;
        if w.abs() <= thr {
            return Err(Error::NotSymplecticSubspace { pivot: w.abs() });
        }
        let vj = rem.remove(j);
        let u = rem.remove(i);
        let v: Vec<f64> = vj.iter().map(|x| x / w).collect();
        for r in rem.iter_mut() {
            let a = omega(&v, r);
            let b = omega(&u, r);
            for ((x, uu), vv) in r.iter_mut().zip(&u).zip(&v) {
                *x += a * uu - b * vv;
            }
        }
        us.push(u);
        vs.push(v);
    }
    us.extend(vs);
    Ok(Matrix::from_columns(dim, &us))
}

/// ω-Gram matrix `BᵀJB` of the columns of `b`.
pub fn omega_gram(b: &Matrix) -> Matrix {
    let cols = b.columns();
    let k = cols.len();
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = omega(&cols[i], &cols[j]);
        }
    }
    g
}

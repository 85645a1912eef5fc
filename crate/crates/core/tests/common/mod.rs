//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sympal::linalg::inverse;
use sympal::symplectic::paired_diagonal;
use sympal::Matrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, amp: f64) -> Matrix {
    let data: Vec<f64> = (0..rows * cols).map(|_| uniform(rng, -amp, amp)).collect();
    Matrix::from_row_slice(rows, cols, &data).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize, amp: f64) -> Matrix {
    random_matrix(rng, n, n, amp).symmetrize()
}

/// `GᵀG/dim + shift·I`, comfortably positive-definite.
pub fn random_pd(rng: &mut ChaCha8Rng, dim: usize) -> Matrix {
    let g = random_matrix(rng, dim, dim, 1.0);
    let shift = uniform(rng, 0.2, 1.0);
    (&(&g.transpose() * &g).scale(1.0 / dim as f64) + &Matrix::identity(dim).scale(shift)).symmetrize()
}

fn block(n: usize, a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Matrix {
    let mut m = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)];
            m[(i, n + j)] = b[(i, j)];
            m[(n + i, j)] = c[(i, j)];
            m[(n + i, n + j)] = d[(i, j)];
        }
    }
    m
}

/// Rotation by an independent angle in every `(xⱼ, pⱼ)` plane.
pub fn mode_rotations(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut r = Matrix::identity(2 * n);
    for j in 0..n {
        let (s, c) = uniform(rng, 0.0, std::f64::consts::TAU).sin_cos();
        r[(j, j)] = c;
        r[(j, n + j)] = s;
        r[(n + j, j)] = -s;
        r[(n + j, n + j)] = c;
    }
    r
}

/// `diag(Q, Q)` for a random orthogonal `Q`.
fn orthogonal_lift(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let g = random_matrix(rng, n, n, 1.0);
    // Gram–Schmidt on the columns of a random matrix
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for c in g.columns() {
        let mut v = c.clone();
        for q in &cols {
            let d: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(q).for_each(|(x, y)| *x -= d * y);
        }
        let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= nv);
        cols.push(v);
    }
    let q = Matrix::from_columns(n, &cols);
    let z = Matrix::zeros(n, n);
    block(n, &q, &z, &z, &q)
}

/// Random orthosymplectic matrix: mode rotations mixed by orthogonal lifts.
pub fn random_orthosymplectic(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let mut o = mode_rotations(rng, n);
    for _ in 0..2 {
        o = &o * &orthogonal_lift(rng, n);
        o = &o * &mode_rotations(rng, n);
    }
    o
}

/// Random symplectic matrix of moderate condition number, built from the
/// generators `diag(A, A⁻ᵀ)`, `[[I, B], [0, I]]`, `[[I, 0], [C, I]]` and mode
/// rotations.
pub fn random_symplectic(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    let id = Matrix::identity(n);
    let z = Matrix::zeros(n, n);
    let a = &id + &random_matrix(rng, n, n, 0.3);
    let a_inv_t = inverse(&a).unwrap().transpose();
    let b = random_symmetric(rng, n, 0.5);
    let c = random_symmetric(rng, n, 0.5);
    let mut s = block(n, &a, &z, &z, &a_inv_t);
    s = &s * &mode_rotations(rng, n);
    s = &s * &block(n, &id, &b, &z, &id);
    s = &s * &mode_rotations(rng, n);
    s = &s * &block(n, &id, &z, &c, &id);
    s
}

/// `values` sorted ascending, each drawn from `[lo, hi)`.
pub fn random_spectrum(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| uniform(rng, lo, hi)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// `S⁻ᵀ(Λ⊕Λ)S⁻¹`, whose Williamson spectrum is `Λ` by construction.
pub fn form_with_spectrum(s: &Matrix, spectrum: &[f64]) -> Matrix {
    let inv = inverse(s).unwrap();
    (&inv.transpose() * &(&paired_diagonal(spectrum) * &inv)).symmetrize()
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, amp: f64) -> Vec<f64> {
    (0..dim).map(|_| uniform(rng, -amp, amp)).collect()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Gauss–Hermite nodes and weights for `∫ e^{−u²} f(u) du`.
///
/// Roots of the orthonormal Hermite recurrence found by Newton's method from
/// the standard asymptotic initial guesses; independent of the crate's
/// eigensolver.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    let nf = n as f64;
    let mut z = 0.0_f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// `∫ e^{−β zᵀHz} dz / (2πħ)^{d}` over `ℝ^{2d}` by tensor Gauss–Hermite
/// quadrature, with each axis rescaled by `√(βHᵢᵢ)` so the weight matches the
/// diagonal part of the integrand.
pub fn quadrature_partition(h: &Matrix, beta: f64, hbar: f64, nodes: usize) -> f64 {
    let dim = h.rows();
    let (x, w) = gauss_hermite(nodes);
    let scales: Vec<f64> = (0..dim).map(|i| (beta * h[(i, i)]).sqrt()).collect();
    let mut total = 0.0;
    let mut idx = vec![0usize; dim];
    let mut z = vec![0.0; dim];
    loop {
        let mut weight = 1.0;
        let mut u2 = 0.0;
        for a in 0..dim {
            let u = x[idx[a]];
            z[a] = u / scales[a];
            weight *= w[idx[a]];
            u2 += u * u;
        }
        let e = beta * h.quadratic_form(&z);
        total += weight * (u2 - e).exp();
        // odometer over the node grid
        let mut a = 0;
        loop {
            if a == dim {
                let jac: f64 = scales.iter().map(|s| 1.0 / s).product();
                let d = (dim / 2) as i32;
                return total * jac / (2.0 * std::f64::consts::PI * hbar).powi(d);
            }
            idx[a] += 1;
            if idx[a] < nodes {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

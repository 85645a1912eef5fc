mod common;

use common::*;
use proptest::prelude::*;
use sympal::linalg::{matrix_power, nullspace, symmetric_eigen};
use sympal::symplectic::{is_symplectic, omega, standard_symplectic_form, symplectic_gram_schmidt};
use sympal::{Matrix, Tolerances};

fn tol() -> Tolerances {
    Tolerances::default()
}

#[test]
fn eigen_reconstructs_random_symmetric() {
    let mut r = rng(11);
    for trial in 0..500 {
        let dim = 2 * (1 + trial % 5);
        let m = random_symmetric(&mut r, dim, 3.0);
        let e = symmetric_eigen(&m, &tol()).unwrap();
        let scale = m.norm_inf().max(1.0);
        assert!((&e.reconstruct() - &m).norm_inf() <= 1e-8 * scale);
        let qtq = &e.q.transpose() * &e.q;
        assert!((&qtq - &Matrix::identity(dim)).norm_inf() <= 1e-8);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }
}

#[test]
fn eigen_closed_form_two_by_two() {
    // eigenvalues of [[a, b], [b, c]] are (a+c)/2 ± √(((a−c)/2)² + b²)
    let mut r = rng(12);
    for _ in 0..100 {
        let (a, b, c) = (uniform(&mut r, -5.0, 5.0), uniform(&mut r, -5.0, 5.0), uniform(&mut r, -5.0, 5.0));
        let m = Matrix::from_rows(&[[a, b], [b, c]]).unwrap();
        let e = symmetric_eigen(&m, &tol()).unwrap();
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((e.values[0] - (mid - rad)).abs() < 1e-12);
        assert!((e.values[1] - (mid + rad)).abs() < 1e-12);
    }
    let swap = Matrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
    let e = symmetric_eigen(&swap, &tol()).unwrap();
    assert!((e.values[0] + 1.0).abs() < 1e-15 && (e.values[1] - 1.0).abs() < 1e-15);
}

#[test]
fn eigen_is_deterministic() {
    let mut r = rng(13);
    let m = random_symmetric(&mut r, 6, 1.0);
    assert_eq!(symmetric_eigen(&m, &tol()).unwrap(), symmetric_eigen(&m, &tol()).unwrap());
}

#[test]
fn square_root_multiplies_back() {
    let mut r = rng(14);
    for _ in 0..50 {
        let m = random_pd(&mut r, 4);
        let h = matrix_power(&m, 0.5, &tol()).unwrap();
        assert!((&(&h * &h) - &m).norm_inf() < 1e-10);
    }
    let d = matrix_power(&Matrix::from_diag(&[4.0, 9.0]), 0.5, &tol()).unwrap();
    assert!((&d - &Matrix::from_diag(&[2.0, 3.0])).max_abs() < 1e-15);
    assert_eq!(matrix_power(&Matrix::identity(3), 0.5, &tol()).unwrap(), Matrix::identity(3));
}

#[test]
fn negative_power_of_singular_matrix_is_rejected() {
    let m = Matrix::from_diag(&[1.0, 0.0]);
    assert!(matrix_power(&m, -1.0, &tol()).is_err());
    assert!(matrix_power(&Matrix::from_diag(&[1.0, -1.0]), 0.5, &tol()).is_err());
}

#[test]
fn nullspace_examples() {
    let n = nullspace(&Matrix::from_diag(&[1.0, 0.0]), &tol()).unwrap();
    assert_eq!(n.columns(), vec![vec![0.0, 1.0]]);
    assert_eq!(nullspace(&Matrix::identity(4), &tol()).unwrap().cols(), 0);
    let n = nullspace(&Matrix::from_diag(&[1.0, 0.0, 1.0, 0.0]), &tol()).unwrap();
    assert_eq!(n.columns(), vec![vec![0.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]]);
}

#[test]
fn nullspace_of_random_psd_is_orthonormal() {
    let mut r = rng(15);
    for _ in 0..100 {
        let dim = 6;
        let rank = 3;
        let g = random_matrix(&mut r, rank, dim, 1.0);
        let m = (&g.transpose() * &g).symmetrize();
        let n = nullspace(&m, &tol()).unwrap();
        assert_eq!(n.cols(), dim - rank);
        let gram = &n.transpose() * &n;
        assert!((&gram - &Matrix::identity(dim - rank)).norm_inf() < 1e-10);
        assert!((&m * &n).norm_inf() < 1e-9 * m.norm_inf().max(1.0));
    }
}

#[test]
fn j_squares_to_minus_identity_exactly() {
    for n in 1..6 {
        let j = standard_symplectic_form(n).unwrap();
        assert_eq!(&j * &j, Matrix::identity(2 * n).scale(-1.0));
    }
}

#[test]
fn gram_schmidt_of_full_basis_is_symplectic() {
    let mut r = rng(16);
    for trial in 0..200 {
        let n = 1 + trial % 4;
        let b = random_matrix(&mut r, 2 * n, 2 * n, 1.0);
        let s = symplectic_gram_schmidt(&b, &tol()).unwrap();
        assert!(is_symplectic(&s, &tol()).unwrap(), "trial {trial}");
    }
}

#[test]
fn gram_schmidt_of_symplectic_subspace() {
    // span of two symplectic pairs inside ℝ⁶, mixed by a random invertible map
    let mut r = rng(17);
    let s0 = random_symplectic(&mut r, 3);
    let cols: Vec<Vec<f64>> = [0, 1, 3, 4].iter().map(|&j| s0.column(j)).collect();
    let a = &Matrix::identity(4) + &random_matrix(&mut r, 4, 4, 0.3);
    let mixed: Vec<Vec<f64>> = (0..4)
        .map(|k| {
            let mut v = vec![0.0; 6];
            for (i, c) in cols.iter().enumerate() {
                for (x, y) in v.iter_mut().zip(c) {
                    *x += a[(i, k)] * y;
                }
            }
            v
        })
        .collect();
    let s = symplectic_gram_schmidt(&Matrix::from_columns(6, &mixed), &tol()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expect = match (i, j) {
                (0, 2) | (1, 3) => 1.0,
                (2, 0) | (3, 1) => -1.0,
                _ => 0.0,
            };
            assert!((omega(&s.column(i), &s.column(j)) - expect).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn powers_add(seed in any::<u64>(), a in -1.5f64..1.5, b in -1.5f64..1.5) {
        let mut r = rng(seed);
        let m = random_pd(&mut r, 4);
        let lhs = &matrix_power(&m, a, &tol()).unwrap() * &matrix_power(&m, b, &tol()).unwrap();
        let rhs = matrix_power(&m, a + b, &tol()).unwrap();
        prop_assert!((&lhs - &rhs).norm_inf() <= 1e-8 * rhs.norm_inf().max(1.0));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), rows in 1usize..5, cols in 1usize..5) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, rows, cols, 10.0);
        let text = serde_json::to_string(&m).unwrap();
        let back: Matrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, m);
    }
}

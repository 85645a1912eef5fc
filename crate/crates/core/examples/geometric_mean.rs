//! Weighted geometric means and matrix powers of commuting forms.
//!
//! ```bash
//! cargo run -p sympal --example geometric_mean
//! ```

use sympal::linalg::inverse;
use sympal::{geometric_mean, power_commutator_residual, Matrix, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();
    let a = Matrix::from_rows(&[
        [2.0, 0.3, 0.0, 0.1],
        [0.3, 1.0, 0.2, 0.0],
        [0.0, 0.2, 1.5, 0.4],
        [0.1, 0.0, 0.4, 2.5],
    ])?;
    let b = Matrix::from_diag(&[1.0, 2.0, 3.0, 4.0]);

    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let g = geometric_mean(&a, &b, t, &tol)?;
        println!("t = {t:4}: diag(A♯ₜB) = {:?}", g.diagonal());
    }

    // A♯B is the positive solution of G A⁻¹ G = B
    let g = geometric_mean(&a, &b, 0.5, &tol)?;
    let riccati = &(&g * &(&inverse(&a)? * &g)) - &b;
    println!("‖G A⁻¹ G − B‖ = {:e}", riccati.max_abs());

    // forms that commute with each other and with J keep doing so under powers
    let p = Matrix::from_diag(&[1.0, 2.0, 1.0, 2.0]);
    let q = Matrix::from_diag(&[3.0, 0.5, 3.0, 0.5]);
    for s in [-1.0, 0.5, 2.0, std::f64::consts::PI] {
        println!("s = {s:.4}: ‖[JPˢ, JQˢ]‖ / ‖Pˢ‖‖Qˢ‖ = {:e}", power_commutator_residual(&p, &q, s, &tol)?);
    }
    Ok(())
}

//! Normal form of an arbitrary semidefinite form: elliptic pairs, parabolic
//! directions and kernel.
//!
//! ```bash
//! cargo run -p sympal --example hormander
//! ```

use sympal::{hormander_psd_normal_form, Matrix, Tolerances};

fn report(name: &str, m: &Matrix, tol: &Tolerances) -> sympal::Result<()> {
    let h = hormander_psd_normal_form(m, tol)?;
    println!(
        "{name}: k = {}, l = {}, mu = {:?}, residual {:e}",
        h.k,
        h.l,
        h.mu,
        h.residual_diag(m)
    );
    Ok(())
}

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();

    // a free particle, H = x²: one parabolic direction
    report("diag(1,0)", &Matrix::from_diag(&[1.0, 0.0]), &tol)?;

    // oscillator plus free particle
    report("diag(2,1,2,0)", &Matrix::from_diag(&[2.0, 1.0, 2.0, 0.0]), &tol)?;

    // H = (x₁ + x₂)² + p₁²: the coupling hides one elliptic pair
    let m = Matrix::from_rows(&[
        [1.0, 1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])?;
    report("(x₁+x₂)² + p₁²", &m, &tol)?;

    let h = hormander_psd_normal_form(&m, &tol)?;
    println!("normal form diagonal: {:?}", h.normal_form().diagonal());
    Ok(())
}

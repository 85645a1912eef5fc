//! Classical partition functions of quadratic Hamiltonians.
//!
//! ```bash
//! cargo run -p sympal --example partition
//! ```

use sympal::{partition_interacting, partition_noninteracting, Matrix, QuadraticHamiltonian, ThermoParams, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();
    let params = ThermoParams::new(1.0, 1.0)?;

    // one oscillator H = x² + p²: Z = 1/(2ħβ)
    let h = QuadraticHamiltonian::single(Matrix::identity(2), &tol)?;
    println!("single oscillator: Z = {}", partition_noninteracting(&[h], &params, &tol)?);

    // two independent particles, each on its own phase space
    let a = QuadraticHamiltonian::single(Matrix::from_diag(&[1.0, 4.0]), &tol)?;
    let b = QuadraticHamiltonian::single(Matrix::from_diag(&[2.0, 2.0, 1.0, 1.0]), &tol)?;
    println!("independent pair: Z = {}", partition_noninteracting(&[a, b], &params, &tol)?);

    // commuting terms on one phase space, one of them degenerate
    let h1 = QuadraticHamiltonian::single(Matrix::from_diag(&[1.0, 0.0, 1.0, 0.0]), &tol)?;
    let h2 = QuadraticHamiltonian::single(Matrix::from_diag(&[0.5, 2.0, 0.5, 2.0]), &tol)?;
    for beta in [0.5, 1.0, 2.0] {
        let p = ThermoParams::new(beta, 1.0)?;
        println!("interacting, β = {beta}: Z = {}", partition_interacting(&[h1.clone(), h2.clone()], &p, &tol)?);
    }

    // a flat direction makes the integral diverge
    let flat = QuadraticHamiltonian::single(Matrix::from_diag(&[1.0, 0.0, 1.0, 0.0]), &tol)?;
    if let Err(e) = partition_interacting(&[flat], &params, &tol) {
        println!("{e}");
    }
    Ok(())
}

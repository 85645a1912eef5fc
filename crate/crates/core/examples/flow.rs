//! Exact linear Hamiltonian flow `z(t) = e^{tJM} z(0)` through normal modes.
//!
//! ```bash
//! cargo run -p sympal --example flow
//! ```

use sympal::symplectic::symplectic_residual;
use sympal::{flow_matrix, hamiltonian_flow, Matrix, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();

    // M = diag(4, 1): under ż = JMz the orbit turns at angular frequency μ = 2
    let m = Matrix::from_diag(&[4.0, 1.0]);
    println!("{:>5} {:>10} {:>10} {:>10}", "t", "x", "p", "H");
    for i in 0..=10 {
        let t = 0.2 * i as f64;
        let z = hamiltonian_flow(&m, &[1.0, 0.0], t, &tol)?;
        println!("{t:5.2} {:10.6} {:10.6} {:10.6}", z[0], z[1], m.quadratic_form(&z));
    }

    // two coupled oscillators
    let m = Matrix::from_rows(&[
        [2.0, 0.5, 0.0, 0.0],
        [0.5, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])?;
    let z0 = [1.0, 0.0, 0.0, 0.5];
    let phi = flow_matrix(&m, 3.0, &tol)?;
    let z = phi.mul_vec(&z0);
    println!("coupled: z(3) = {z:?}");
    println!("energy drift {:e}", (m.quadratic_form(&z) - m.quadratic_form(&z0)).abs());
    println!("‖ΦᵀJΦ − J‖ = {:e}", symplectic_residual(&phi)?);
    Ok(())
}

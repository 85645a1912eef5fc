//! Constraints between a degenerate Hamiltonian and its extension, and
//! symplectic capacities of balls, cylinders and ellipsoids.
//!
//! ```bash
//! cargo run -p sympal --example constraints_capacity
//! ```

use sympal::symplectic::symplectic_inverse;
use sympal::{capacity, gromov_gap, hormander_constraints, nonsqueezing_embeddable, Matrix, PhaseSpaceRegion, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();

    // H ignores the second mode; H̃ confines it with strength 3
    let h = Matrix::from_diag(&[2.0, 0.0, 2.0, 0.0]);
    let ht = Matrix::from_diag(&[2.0, 3.0, 2.0, 3.0]);
    let rep = hormander_constraints(&h, &ht, &tol)?;
    println!("k = {}, constrained coordinates {:?}, C = {:?}", rep.k, rep.chi_indices, rep.c);

    let z = [0.3, -0.4, 0.1, 0.7];
    let zeta = symplectic_inverse(&rep.s)?.mul_vec(&z);
    println!(
        "H̃(z) = {}, H(z) + Σ Cχ² = {}",
        ht.quadratic_form(&z),
        h.quadratic_form(&z) + rep.constraint_energy(&zeta)?
    );
    println!("constraint energy − 2 at ζ: {}", gromov_gap(&rep, &zeta)?);

    let ball = PhaseSpaceRegion::Ball { radius: 1.0 };
    let cylinder = PhaseSpaceRegion::Cylinder { axis: 1, radius: 1.0 };
    let ellipsoid = PhaseSpaceRegion::Ellipsoid {
        m: Matrix::from_diag(&[1.0, 0.25, 1.0, 0.25]),
    };
    println!("c(ball)      = {}", capacity(&ball, &tol)?);
    println!("c(cylinder)  = {}", capacity(&cylinder, &tol)?);
    println!("c(ellipsoid) = {}", capacity(&ellipsoid, &tol)?);
    println!("c(2·ellipsoid) = {}", capacity(&ellipsoid.scaled(2.0), &tol)?);
    println!("ball(2) into cylinder(1)? {}", nonsqueezing_embeddable(2.0, 1.0));
    Ok(())
}

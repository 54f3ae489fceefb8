//! Smith and Hermite normal forms, integer kernels and cokernels.
//!
//! `cargo run --example smith_normal_form`

use toricgit::linalg::{cokernel, hermite_normal_form, kernel_basis, smith_normal_form, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("M = {m:?}");
    println!(
        "invariant factors: {:?}",
        snf.diag.iter().map(|d| d.to_string()).collect::<Vec<_>>()
    );
    println!(
        "U M V == D: {}",
        snf.left.mul(&m).mul(&snf.right) == snf.diagonal_matrix()
    );
    println!("Hermite form: {:?}", hermite_normal_form(&m));

    // The ray matrix of P^2 (rays as columns): kernel and class group.
    let rays = IntMatrix::from_rows(&[vec![1i64, 0, -1], vec![0, 1, -1]]);
    println!("kernel of the P^2 ray matrix: {:?}", kernel_basis(&rays));
    let cl = cokernel(&rays.transpose());
    println!(
        "class group of P^2: Z^{} with torsion {:?}",
        cl.free_rank, cl.torsion
    );

    // Rays (1,1), (1,-2), (-2,1) span an index-3 sublattice, hence torsion.
    let fake = IntMatrix::from_rows(&[vec![1i64, 1], vec![1, -2], vec![-2, 1]]);
    let cl = cokernel(&fake);
    println!(
        "fake P^2: Z^{} with torsion {:?}",
        cl.free_rank,
        cl.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>()
    );
}

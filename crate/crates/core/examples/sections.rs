//! Global sections of torus-invariant divisors as lattice points of polytopes.
//!
//! `cargo run --example sections`

use toricgit::corpus;
use toricgit::fan::{count_sections, projective_space_fan};
use toricgit::TorusInvariantDivisor;

fn main() {
    let p2 = projective_space_fan(2).unwrap();
    for d in 0..=4 {
        let div = TorusInvariantDivisor::from_i64(&[0, 0, d]);
        println!("h0(P2, O({d})) = {}", count_sections(&p2, &div).unwrap());
    }
    // On F_1 (rays e1, e2, -e1-e2, e1+e2) the exceptional curve is D_3.
    let f1 = corpus::f1();
    for (a, b) in [(1, 0), (1, 1), (2, 1), (0, 1)] {
        let div = TorusInvariantDivisor::from_i64(&[0, 0, a, b]);
        println!(
            "h0(F1, {a}H + {b}E) = {}",
            count_sections(&f1, &div).unwrap()
        );
    }
    // Negative classes have no sections.
    let div = TorusInvariantDivisor::from_i64(&[0, 0, -1]);
    println!("h0(P2, O(-1)) = {}", count_sections(&p2, &div).unwrap());
}

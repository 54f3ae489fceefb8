//! The Cox grading, the irrelevant ideal and its primary decomposition.
//!
//! `cargo run --example cox_ring`

use toricgit::cox::{
    check_free_action, degree_map, irrelevant_ideal, prime_decomposition, stanley_reisner,
    zero_locus_codim,
};
use toricgit::fan::blowup_pn_along_linear;

fn main() {
    let x = blowup_pn_along_linear(4, 1).unwrap();
    let d = degree_map(&x).unwrap();
    println!(
        "class group: Z^{} with torsion {:?}",
        d.free_rank(),
        d.torsion()
    );
    for (i, g) in d.degrees().iter().enumerate() {
        println!(
            "  deg x{i} = {:?}",
            g.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }
    let ideal = irrelevant_ideal(&x);
    println!(
        "irrelevant ideal generators: {:?}",
        ideal.generator_supports()
    );
    println!("minimal primes: {:?}", prime_decomposition(&ideal).unwrap());
    println!(
        "Stanley-Reisner facets: {:?}",
        stanley_reisner(&ideal).unwrap().facets()
    );
    println!(
        "codimension of the zero locus: {}",
        zero_locus_codim(&ideal).unwrap()
    );
    println!(
        "torus acts freely on the complement: {}",
        check_free_action(&x)
    );
}

//! Unstable loci of the Cox torus action for various characters.
//!
//! `cargo run --example unstable_loci`

use toricgit::corpus;
use toricgit::cox::degree_map;
use toricgit::linalg::Int;
use toricgit::vgit::{ample_character, unstable_supports};

fn main() {
    let f1 = corpus::f1();
    let d = degree_map(&f1).unwrap();
    let ample = ample_character(&f1, &d).unwrap();
    let mut characters = vec![ample];
    for g in d.degrees() {
        if !characters.contains(g) {
            characters.push(g.clone());
        }
    }
    characters.push(d.degrees()[0].iter().map(|x| -x).collect());
    for chi in characters {
        let sig = unstable_supports(&d, &chi).unwrap();
        let shown: Vec<String> = chi.iter().map(Int::to_string).collect();
        if sig.outside_effective {
            println!(
                "chi = ({}): not effective, everything is unstable",
                shown.join(", ")
            );
        } else {
            println!(
                "chi = ({}): unstable facets {:?}, codim {}",
                shown.join(", "),
                sig.facets,
                sig.codim()
            );
        }
    }
}

//! GIT chambers of the effective cone.
//!
//! `cargo run --example chambers`

use toricgit::corpus;
use toricgit::cox::degree_map;
use toricgit::vgit::{enumerate_chambers, nef_chamber_matches};

fn main() {
    for name in ["P2", "F1", "P1xP1", "Bl_P1_P4", "Bl_P0_P3"] {
        let f = corpus::by_name(name).unwrap();
        let d = degree_map(&f).unwrap();
        let dec = enumerate_chambers(&d).unwrap();
        println!(
            "{name}: {} chambers from {} cells, {} walls, coverage certified {}, nef chamber found {}",
            dec.chambers.len(),
            dec.cells,
            dec.walls.len(),
            dec.coverage_certified,
            nef_chamber_matches(&f, &d, &dec).unwrap()
        );
        for c in &dec.chambers {
            let r = c.report();
            println!(
                "  point ({}) codim {} facets {:?}",
                r.interior_point.join(", "),
                r.codim,
                r.facets
            );
        }
    }
}

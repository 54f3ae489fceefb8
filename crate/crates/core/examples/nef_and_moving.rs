//! Nef, moving and effective cones, and an ample character.
//!
//! `cargo run --example nef_and_moving`

use toricgit::corpus;
use toricgit::cox::degree_map;
use toricgit::polycone::cones_equal;
use toricgit::vgit::{ample_character, effective_cone, moving_cone, nef_cone};
use toricgit::RationalCone;

fn rays(c: &RationalCone) -> Vec<Vec<String>> {
    c.rays()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

fn main() {
    for name in ["F1", "Bl_P0_P3", "remark_X"] {
        let f = corpus::by_name(name).unwrap();
        let d = degree_map(&f).unwrap();
        let nef = nef_cone(&f, &d).unwrap();
        let mov = moving_cone(&d);
        println!("{name}");
        println!("  nef       {:?}", rays(&nef));
        println!("  moving    {:?}", rays(&mov));
        println!("  effective {:?}", rays(&effective_cone(&d)));
        println!(
            "  ample     {:?}",
            ample_character(&f, &d)
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
        );
        println!("  nef = moving: {}", cones_equal(&nef, &mov).unwrap());
    }
}

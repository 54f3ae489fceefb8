//! Building fans and reading off their geometric properties.
//!
//! `cargo run --example fans`

use toricgit::fan::{
    blowup_pn_along_linear, hirzebruch_fan, is_isomorphic, product_fan, projective_bundle_fan,
    projective_space_fan, star_subdivision,
};
use toricgit::{Fan, TorusInvariantDivisor};

fn show(name: &str, f: &Fan) {
    let r = f.validate();
    println!(
        "{name:<14} dim {} rays {:>2} cones {:>2}  simplicial {} smooth {} complete {} projective {}",
        f.dim(),
        f.n_rays(),
        f.max_cones().len(),
        r.simplicial,
        r.smooth,
        r.complete,
        r.projective
    );
}

fn main() {
    let p2 = projective_space_fan(2).unwrap();
    show("P2", &p2);
    let f1 = star_subdivision(&p2, &[0, 1]).unwrap();
    show("Bl_pt P2", &f1);
    println!(
        "Bl_pt P2 is F_1: {}",
        is_isomorphic(&f1, &hirzebruch_fan(1).unwrap())
    );
    show(
        "P1 x P2",
        &product_fan(&projective_space_fan(1).unwrap(), &p2),
    );
    show("Bl_line P4", &blowup_pn_along_linear(4, 1).unwrap());
    let bundle = projective_bundle_fan(
        &projective_space_fan(1).unwrap(),
        &[
            TorusInvariantDivisor::from_i64(&[0, 0]),
            TorusInvariantDivisor::from_i64(&[3, 0]),
        ],
    )
    .unwrap();
    show("P(O + O(3))", &bundle);
    println!(
        "P(O + O(3)) is F_3: {}",
        is_isomorphic(&bundle, &hirzebruch_fan(3).unwrap())
    );

    // Two quadrants of the plane: a fan, but neither complete nor projective.
    let partial = Fan::from_i64(
        2,
        &[vec![1, 0], vec![0, 1], vec![-1, 0]],
        &[vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    show("half plane", &partial);

    // Overlapping cones are rejected.
    let bad = Fan::from_i64(
        2,
        &[vec![1, 0], vec![1, 1], vec![0, 1], vec![1, 2]],
        &[vec![0, 2], vec![1, 3]],
    );
    println!("overlapping cones: {}", bad.unwrap_err());
}

//! Rational polyhedral cones: both descriptions, membership with a
//! certificate, intersections.
//!
//! `cargo run --example cones`

use toricgit::linalg::Int;
use toricgit::polycone::lp::cone_certificate;
use toricgit::polycone::{cones_equal, RationalCone};

fn main() {
    let gens = vec![
        vec![1i64, 0, 0],
        vec![0, 1, 0],
        vec![1, 1, 1],
        vec![0, 0, 1],
    ];
    let c = RationalCone::from_generators_i64(3, &gens).unwrap();
    println!("{}", serde_json::to_string(&c.summary()).unwrap());

    let back = RationalCone::from_inequalities(3, &c.facet_normals()).unwrap();
    println!(
        "generators -> facets -> generators is the same cone: {}",
        cones_equal(&c, &back).unwrap()
    );

    let target: Vec<Int> = [2, 3, 1].iter().map(|&x| Int::from(x)).collect();
    let g: Vec<Vec<Int>> = gens
        .iter()
        .map(|v| v.iter().map(|&x| Int::from(x)).collect())
        .collect();
    match cone_certificate(&g, &target) {
        Some(l) => println!(
            "(2,3,1) = sum of {:?} times the generators",
            l.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        ),
        None => println!("(2,3,1) is outside"),
    }

    let half =
        RationalCone::from_inequalities(3, &[vec![Int::from(1), Int::from(-1), Int::from(0)]])
            .unwrap();
    let both = c.intersect(&half).unwrap();
    println!(
        "intersection with x >= y has rays {:?}",
        both.rays()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    );
}

//! Built-in fans used by the check suite and the tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits;
use crate::fan::{
    blowup_pn_along_linear, product_fan, projective_bundle_fan, projective_space_fan,
    star_subdivision, Fan, TorusInvariantDivisor,
};
use crate::Result;

pub const RANDOM_SEED: u64 = 0x7a11_0c0d;
pub const RANDOM_COUNT: usize = 50;
pub const MAX_CORPUS_RAYS: usize = 12;

#[derive(Clone, Debug)]
pub struct NamedFan {
    pub name: String,
    pub fan: Fan,
}

fn named(name: impl Into<String>, fan: Fan) -> NamedFan {
    NamedFan {
        name: name.into(),
        fan,
    }
}

fn pn(n: usize) -> Fan {
    projective_space_fan(n).expect("n >= 1")
}

/// `F_1`, the blowup of `P^2` at a torus-fixed point.
pub fn f1() -> Fan {
    star_subdivision(&pn(2), &[0, 1]).expect("a cone of P^2")
}

/// The divisors `E, H, H` on the blowup of `P^4` along a line, scaled by `m`.
/// Rays of the base: `e_1..e_4` (indices 0..3), `-sum` (index 4, the class
/// `H`) and the exceptional ray (index 5).
pub fn remark_divisors(m: i64) -> Vec<TorusInvariantDivisor> {
    let k = crate::linalg::Int::from(m);
    let e = TorusInvariantDivisor::prime(6, 5).scale(&k);
    let h = TorusInvariantDivisor::prime(6, 4).scale(&k);
    vec![e, h.clone(), h]
}

/// `P(E^m + H^m + H^m)` over the blowup of `P^4` along a line.
pub fn remark_example(m: i64) -> Fan {
    let base = blowup_pn_along_linear(4, 1).expect("valid parameters");
    projective_bundle_fan(&base, &remark_divisors(m)).expect("three summands")
}

/// Named fans with closed-form descriptions.
pub fn standard() -> Vec<NamedFan> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(named(format!("P{n}"), pn(n)));
    }
    out.push(named("P1xP1", product_fan(&pn(1), &pn(1))));
    out.push(named("P1xP3", product_fan(&pn(1), &pn(3))));
    out.push(named("P2xP2", product_fan(&pn(2), &pn(2))));
    out.push(named("F1", f1()));
    for (n, m) in [(3, 0), (4, 0), (4, 1), (5, 1), (5, 2)] {
        out.push(named(
            format!("Bl_P{m}_P{n}"),
            blowup_pn_along_linear(n, m).expect("valid parameters"),
        ));
    }
    out.push(named("remark_X", remark_example(1)));
    out
}

/// Iterated star subdivisions of small smooth projective fans, seeded.
pub fn random_blowups(seed: u64, count: usize) -> Vec<NamedFan> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let starts: Vec<(&str, Fan)> = vec![
        ("P2", pn(2)),
        ("P3", pn(3)),
        ("P4", pn(4)),
        ("P1xP1", product_fan(&pn(1), &pn(1))),
        ("P1xP2", product_fan(&pn(1), &pn(2))),
        (
            "P1xP1xP1",
            product_fan(&product_fan(&pn(1), &pn(1)), &pn(1)),
        ),
    ];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (label, start) = starts.choose(&mut rng).expect("nonempty");
        let mut fan = start.clone();
        let steps = rng.gen_range(1..=3);
        let mut path = Vec::new();
        for _ in 0..steps {
            if fan.n_rays() >= MAX_CORPUS_RAYS {
                break;
            }
            let cone = fan.max_cones().choose(&mut rng).expect("nonempty").clone();
            let size = rng.gen_range(2..=cone.len());
            let mut face: Vec<usize> = cone.choose_multiple(&mut rng, size).copied().collect();
            face.sort_unstable();
            fan = star_subdivision(&fan, &face).expect("faces of maximal cones are cones");
            path.push(format!("{:?}", bits::indices(bits::mask_of(&face))));
        }
        let name = format!("random{}_{}_{}", out.len(), label, path.join(""));
        out.push(named(name, fan));
    }
    out
}

/// The standard fans followed by the seeded random ones.
pub fn builtin() -> Vec<NamedFan> {
    let mut all = standard();
    all.extend(random_blowups(RANDOM_SEED, RANDOM_COUNT));
    all
}

/// Pairs of corpus fans whose products are checked.
pub fn product_pairs() -> Vec<(NamedFan, NamedFan)> {
    let bl = |n, m| blowup_pn_along_linear(n, m).expect("valid parameters");
    let p = |n| named(format!("P{n}"), pn(n));
    vec![
        (p(1), p(1)),
        (p(1), p(3)),
        (p(2), p(2)),
        (named("Bl_P1_P4", bl(4, 1)), named("Bl_P1_P4", bl(4, 1))),
        (p(1), named("F1", f1())),
        (named("F1", f1()), named("F1", f1())),
        (p(2), named("Bl_P0_P3", bl(3, 0))),
        (p(1), named("Bl_P1_P4", bl(4, 1))),
        (named("F1", f1()), p(3)),
        (named("Bl_P0_P4", bl(4, 0)), p(1)),
    ]
}

/// Looks up a standard fan by name.
pub fn by_name(name: &str) -> Result<Fan> {
    standard()
        .into_iter()
        .find(|f| f.name == name)
        .map(|f| f.fan)
        .ok_or_else(|| crate::Error::InvalidParameter(format!("unknown corpus fan {name}")))
}

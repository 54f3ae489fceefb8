//! The projective bundle `P(E + H + H)` over the blowup of `P^4` along a
//! line: small unstable locus, a codimension-3 stable base locus for `O(1)`,
//! and a moving cone larger than the nef cone.
//!
//! `cargo run --release --example bundle_example`

use toricgit::checks::{check_prop4c, check_remark_example, DEFAULT_M_MAX};
use toricgit::corpus;
use toricgit::fan::blowup_pn_along_linear;

fn main() {
    let base = blowup_pn_along_linear(4, 1).unwrap();
    let bundle = check_prop4c(&base, &corpus::remark_divisors(1), DEFAULT_M_MAX).unwrap();
    println!("bundle search: passed {}", bundle.passed);
    println!("{}", serde_json::to_string_pretty(&bundle.witness).unwrap());
    let example = check_remark_example(DEFAULT_M_MAX).unwrap();
    println!("example: passed {}", example.passed);
    println!(
        "{}",
        serde_json::to_string_pretty(&example.witness).unwrap()
    );
}

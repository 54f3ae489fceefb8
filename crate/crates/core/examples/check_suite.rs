//! The full check suite over the built-in corpus.
//!
//! `cargo run --release --example check_suite`

use std::collections::BTreeMap;

use toricgit::checks::{run_all, DEFAULT_M_MAX};

fn main() {
    let results = run_all(DEFAULT_M_MAX).unwrap();
    let mut tally: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for (fan, r) in &results {
        let e = tally.entry(r.name.clone()).or_default();
        if r.passed {
            e.0 += 1;
        } else {
            e.1 += 1;
            println!("FAIL {} on {fan}: {}", r.name, r.witness);
        }
    }
    for (name, (pass, fail)) in tally {
        println!("{name:<22} {pass:>3} passed {fail:>3} failed");
    }
}

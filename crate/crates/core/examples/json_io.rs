//! Reading and writing fans and divisors as JSON.
//!
//! `cargo run --example json_io`

use toricgit::fan::blowup_pn_along_linear;
use toricgit::{Fan, TorusInvariantDivisor};

fn main() {
    let x = blowup_pn_along_linear(3, 0).unwrap();
    let text = x.to_json_string().unwrap();
    println!("{text}");
    let back = Fan::from_json(&text).unwrap();
    println!("round trip preserves the fan: {}", back == x);

    let d = TorusInvariantDivisor::from_json(r#"{"coefficients": [0, 0, 0, 2, -1]}"#).unwrap();
    println!(
        "divisor: {}",
        serde_json::to_string(&d.to_json().unwrap()).unwrap()
    );

    match Fan::from_json("{\"dim\": 2,\n \"rays\": [[1, 0], [0 1]]}") {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("error: {e}"),
    }
    match Fan::from_json(r#"{"dim": 2, "rays": [[2, 0], [0, 1]], "max_cones": [[0, 1]]}"#) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("error: {e}"),
    }
}

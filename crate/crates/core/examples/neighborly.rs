//! Neighborliness: which sets of rays span cones of the fan.
//!
//! `cargo run --example neighborly`

use toricgit::corpus;
use toricgit::fan::{is_m_neighborly, max_neighborliness};

fn main() {
    for f in corpus::standard() {
        println!(
            "{:<12} rays {:>2}  2-neighborly {:<5}  largest m {}",
            f.name,
            f.fan.n_rays(),
            is_m_neighborly(&f.fan, 2),
            max_neighborliness(&f.fan)
        );
    }
}

//! Recompute every counterexample in the registry and print what was found.
//!
//!     cargo run --release --example reproduce_registry [--full-species]

use diversity::axioms::{all_cases, RegistryOptions};

fn main() -> diversity::Result<()> {
    let full = std::env::args().any(|a| a == "--full-species");
    let mut failed = 0;
    for case in all_cases(RegistryOptions { species_full_resolution: full }) {
        let rep = case.run()?;
        println!("{} {:<24} {}", if rep.pass { "PASS" } else { "FAIL" }, rep.id, rep.claim);
        println!("     {}", rep.summary(4));
        failed += usize::from(!rep.pass);
    }
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}

//! Audit one measure against the three axioms and print the witnesses.
//!
//!     cargo run --release --example axiom_audit -- circles 500 7

use diversity::axioms::{check_continuity, check_monotonicity, check_uniqueness, default_continuity_witnesses};
use diversity::{Measure, MeasureHandle};

fn main() -> diversity::Result<()> {
    let mut args = std::env::args().skip(1);
    let measure: Measure = args.next().as_deref().unwrap_or("circles").parse()?;
    let budget = args.next().and_then(|a| a.parse().ok()).unwrap_or(500);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    let h = MeasureHandle::new(measure);
    let witnesses = default_continuity_witnesses(&h, budget / 4, seed);
    for v in [
        check_monotonicity(&h, budget, seed),
        check_uniqueness(&h, budget, seed),
        check_continuity(&h, &witnesses, seed),
    ] {
        print!("{:<13} {:?} after {} probes", v.axiom.name(), v.outcome, v.probes);
        match (&v.witness, v.min_margin) {
            (Some(w), _) => {
                println!();
                println!("  {}: A = {}, B = {}, replays: {}", w.note, w.value_a, w.value_b, w.replays(&h)?);
            }
            (None, Some(m)) => println!(", smallest margin {m:.3e}"),
            (None, None) => println!(),
        }
    }
    Ok(())
}

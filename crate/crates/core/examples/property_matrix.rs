//! Audit all sixteen measures against the three axioms and compare with the
//! bundled expectation.
//!
//!     cargo run --release --example property_matrix -- 500 7

use diversity::axioms::{property_matrix, ExpectedTable};
use diversity::{Measure, MeasureHandle};

fn main() {
    let mut args = std::env::args().skip(1);
    let budget = args.next().and_then(|a| a.parse().ok()).unwrap_or(500);
    let seed = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    let handles: Vec<MeasureHandle> = Measure::table().into_iter().map(MeasureHandle::new).collect();
    let matrix = property_matrix(&handles, budget, seed);
    print!("{}", matrix.to_text());

    for row in &matrix.rows {
        for v in row.verdicts() {
            if let Some(w) = &v.witness {
                println!("{:>20} {:<13} {}  ({} vs {})", row.label, v.axiom.name(), w.note, w.value_a, w.value_b);
            }
        }
    }

    let diff = matrix.mismatches(&ExpectedTable::bundled());
    if diff.is_empty() {
        println!("pattern matches the expected table");
    } else {
        for d in &diff {
            println!("mismatch: {} {:?}: expected holds = {}", d.measure, d.axiom, d.expected_holds);
        }
        std::process::exit(1);
    }
}

//! Where the duplicates go should not matter to a measure that only counts
//! distinct elements. Spread n copies over k distinct points in every
//! possible way and compare the values.
//!
//!     cargo run --release --example duplicate_placement

use diversity::axioms::{check_duplicate_placement_invariance, compositions};
use diversity::{Measure, MeasureHandle};

fn main() -> diversity::Result<()> {
    let (k, n) = (3, 7);
    println!("{} ways to place {n} elements on {k} points", compositions(n, k).len());
    for name in ["multi_dim_volume", "integral_max_clique", "average", "energy"] {
        let h = MeasureHandle::new(name.parse::<Measure>()?);
        let v = check_duplicate_placement_invariance(&h, k, n, 1);
        print!("{name:<20} {:?}", v.outcome);
        match &v.witness {
            Some(w) => println!("  ({}: {} vs {})", w.note, w.value_a, w.value_b),
            None => println!(),
        }
    }
    Ok(())
}

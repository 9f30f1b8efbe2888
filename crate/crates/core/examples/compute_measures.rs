//! Every measure on two sixteen-point layouts of the unit square: four points
//! stacked on each corner, and a 4x4 grid with spacing 1/3.
//!
//!     cargo run --release --example compute_measures

use diversity::axioms::configs::{corners16, grid16};
use diversity::{Kernel, Kind, Measure, MeasureHandle};

fn main() -> diversity::Result<()> {
    let layouts = [("corners", corners16()), ("grid", grid16(1.0 / 3.0))];
    println!("{:<30} {:>14} {:>14}", "measure", layouts[0].0, layouts[1].0);
    for name in Measure::names() {
        let mut h = MeasureHandle::new(name.parse()?);
        // Similarity measures see the points through a Gaussian kernel.
        if h.kind() == Kind::SimilarityBased {
            h = h.with_kernel(Kernel::Rbf { sigma: 0.5 });
        }
        let cells: Vec<String> = layouts
            .iter()
            .map(|(_, d)| match h.eval_distance(d) {
                Ok(v) => format!("{:>14.6}", v.get()),
                Err(e) => format!("{:>14}", format!("({e:.10})")),
            })
            .collect();
        println!("{:<30} {}", h.measure.label(), cells.join(" "));
    }
    Ok(())
}

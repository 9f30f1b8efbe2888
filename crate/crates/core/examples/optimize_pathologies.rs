//! Hill-climb Average and Energy(1) on the unit square and compare where the
//! points end up.
//!
//!     cargo run --release --example optimize_pathologies -- [out_dir]

use std::path::PathBuf;

use diversity::optimize::{corner_mass, maximize, to_svg, SearchConfig};
use diversity::{Measure, MeasureHandle, Space};

fn main() -> diversity::Result<()> {
    let out = std::env::args().nth(1).map(PathBuf::from);
    for measure in [Measure::Average, "energy".parse::<Measure>()?] {
        let cfg = SearchConfig { seed: 2024, ..SearchConfig::new(MeasureHandle::new(measure), Space::UnitSquare, 16) };
        let t = maximize(&cfg)?;
        let mass = corner_mass(&t.final_config, 0.05)?;
        println!(
            "{:<8} value {:.4}  corner mass {:.2}  accepted {} (restart {})",
            cfg.measure.name(),
            t.final_value.get(),
            mass,
            t.steps.len(),
            t.restart
        );
        if let Some(dir) = &out {
            std::fs::create_dir_all(dir).map_err(diversity::Error::from)?;
            std::fs::write(dir.join(format!("{}.svg", cfg.measure.name())), to_svg(&t.final_config))
                .map_err(diversity::Error::from)?;
        }
    }
    Ok(())
}

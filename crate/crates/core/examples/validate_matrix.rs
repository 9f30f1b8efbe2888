//! Validation of raw matrices: what passes, what fails and why, and how
//! duplicate classes fall out of zero distances.
//!
//!     cargo run --example validate_matrix [file.csv]

use diversity::io::{format_csv_matrix, read_raw_matrix};
use diversity::{validate_distance_matrix, validate_similarity_matrix};

fn show(label: &str, raw: Vec<Vec<f64>>) {
    print!("{label:<22}");
    match validate_distance_matrix(raw, 0.0) {
        Ok(d) => {
            let classes: Vec<Vec<usize>> =
                d.duplicate_classes().classes().iter().map(|c| c.iter().map(|i| i + 1).collect()).collect();
            println!("ok, classes {classes:?}");
        }
        Err(e) => println!("rejected: {e}"),
    }
}

fn main() -> diversity::Result<()> {
    if let Some(path) = std::env::args().nth(1) {
        show(&path, read_raw_matrix(path.as_ref())?);
        return Ok(());
    }
    let dup = vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
    print!("{}", format_csv_matrix(&dup));
    show("duplicate pair", dup);
    show("inconsistent zero", vec![vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 2.0], vec![1.0, 2.0, 0.0]]);
    show("asymmetric", vec![vec![0.0, 1.0], vec![2.0, 0.0]]);
    show("negative", vec![vec![0.0, -1.0], vec![-1.0, 0.0]]);
    // No triangle inequality is required.
    show("non-metric", vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]]);

    match validate_similarity_matrix(vec![vec![1.0, 0.9, -0.9], vec![0.9, 1.0, 0.9], vec![-0.9, 0.9, 1.0]], 1e-9) {
        Ok(_) => println!("similarity accepted"),
        Err(e) => println!("{:<22}rejected: {e}", "indefinite similarity"),
    }
    Ok(())
}

//! Recover a graph's maximum clique size from diversity values computed on
//! distance instances built from it.
//!
//!     cargo run --example clique_reduction [graph.txt]
//!
//! The graph file is `n m` followed by `m` lines of 1-based `u v` pairs.

use diversity::measures::hard::{
    circles, clique_size_from_profile, integral_max_clique, recover_clique_size, reduction_instance, volume_profile,
    Scheme, SimpleGraph,
};

fn main() -> diversity::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => SimpleGraph::parse_edge_list(&std::fs::read_to_string(path).map_err(diversity::Error::from)?)?,
        // A 4-clique {0,1,2,3} plus a pendant triangle.
        None => SimpleGraph::new(7, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (3, 5), (5, 6)])?,
    };
    print!("{g}");

    let d = reduction_instance(&g, Scheme::Imc);
    let div = integral_max_clique(&d)?.get();
    println!("integral_max_clique = {div} -> clique size {}", recover_clique_size(div, &d)?);

    let d = reduction_instance(&g, Scheme::Mdv);
    println!("volume profile -> clique size {}", clique_size_from_profile(&volume_profile(&d)?));

    let t = 1.0;
    let d = reduction_instance(&g, Scheme::Circles { t });
    println!("circles({t}) -> clique size {}", circles(&d, t)?.get());
    Ok(())
}

//! The exact solvers behind HamDiv, #Circles, MultiDimVolume and
//! IntegralMaxClique on a random point set, with timings as n grows.
//!
//!     cargo run --release --example exact_solvers

use std::time::Instant;

use diversity::measures::hard::{
    circles, ham_div, integral_max_clique, multi_dim_volume, multi_dim_volume_normalized, volume_profile,
};
use diversity::points::distances_from_points;
use diversity::{PointConfiguration, Space};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> diversity::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [6, 10, 14, 18] {
        let pts = (0..n).map(|_| vec![rng.random::<f64>(), rng.random::<f64>()]).collect();
        let d = distances_from_points(&PointConfiguration::new(Space::UnitSquare, pts)?);
        let start = Instant::now();
        println!("n = {n}");
        println!("  ham_div                     {:.6}", ham_div(&d)?.get());
        println!("  circles(0.3)                {}", circles(&d, 0.3)?.get());
        println!("  multi_dim_volume            {:.6e}", multi_dim_volume(&d)?.get());
        println!("  multi_dim_volume_normalized {:.6}", multi_dim_volume_normalized(&d)?.get());
        println!("  integral_max_clique         {:.6}", integral_max_clique(&d)?.get());
        if n <= 10 {
            let profile = volume_profile(&d)?;
            let ms: Vec<String> = profile.iter().map(|(k, m)| format!("m{k}={:.3e}", m.exp())).collect();
            println!("  profile {}", ms.join(" "));
        }
        println!("  {:.1?}", start.elapsed());
    }
    Ok(())
}

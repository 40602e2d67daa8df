//! Text histogram of normalized vertex distances from the origin. The mass
//! piles up near 1/√2 as d grows.

use hyperlens::exact::{Anchor, CubeSpec};
use hyperlens::montecarlo::{empirical_histogram, HistogramQuantity, SamplerConfig};

fn main() -> hyperlens::Result<()> {
    let config = SamplerConfig::new(7, 50_000, SamplerConfig::default().workers);
    for d in [10, 100, 1000] {
        let spec = CubeSpec::new(d, 1)?;
        let h = empirical_histogram(
            HistogramQuantity::VertexDistance,
            &spec,
            &Anchor::origin(&spec),
            25,
            &config,
        )?;
        let peak = *h.counts.iter().max().unwrap_or(&1) as f64;
        println!("d = {d}");
        for (k, &c) in h.counts.iter().enumerate() {
            let (lo, hi) = h.bin_range(k);
            println!(
                "  [{lo:.2}, {hi:.2}) {}",
                "#".repeat((50.0 * c as f64 / peak).round() as usize)
            );
        }
    }
    Ok(())
}

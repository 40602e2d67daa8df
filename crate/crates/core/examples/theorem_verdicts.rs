//! One Monte Carlo verdict per concentration statement, printed as JSON lines.

use hyperlens::exact::{Anchor, CubeSpec, TheoremId};
use hyperlens::montecarlo::{estimate_theorem, SamplerConfig};
use hyperlens::rational::frac;

fn main() -> hyperlens::Result<()> {
    let config = SamplerConfig::new(1, 20_000, SamplerConfig::default().workers);
    let eta = frac(1, 4);
    for theorem in TheoremId::ALL {
        let (spec, gamma) = match theorem {
            TheoremId::Acv => (CubeSpec::new(10_000, 2)?, Some(frac(1, 4))),
            _ => (CubeSpec::new(400, 10)?, None),
        };
        let eta = if theorem == TheoremId::Acv {
            frac(33, 100)
        } else {
            eta.clone()
        };
        let v = estimate_theorem(
            theorem,
            &spec,
            &Anchor::origin(&spec),
            &eta,
            gamma.as_ref(),
            &config,
        )?;
        println!("{}", serde_json::to_string(&v)?);
    }
    Ok(())
}

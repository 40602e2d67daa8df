//! Closed-form moments and sigma terms for one cube and anchor.
//!
//! cargo run --example exact_moments -- 6 3 coords:0,1/2,1,3/2,2,3

use hyperlens::exact::{moments, sigma, CubeSpec, Population};
use hyperlens::rational::display;
use hyperlens::report::parse_anchor;

fn main() -> hyperlens::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let d = args
        .first()
        .map_or(Ok(6), |s| s.parse())
        .expect("dimension");
    let n = args
        .get(1)
        .map_or(Ok(3), |s| s.parse())
        .expect("side length");
    let spec = CubeSpec::new(d, n)?;
    let anchor = parse_anchor(args.get(2).map_or("origin", String::as_str), &spec)?;

    println!("{spec}, a = {}", anchor.describe(&spec));
    for pop in [Population::Vertices, Population::Lattice] {
        let m = moments(&spec, &anchor, pop)?;
        let s = sigma(&spec, &anchor, pop)?;
        println!("\n{pop}");
        println!("  A  = {}", display(&m.average));
        println!("  M2 = {}", display(&m.second_moment));
        println!(
            "  B  = {}  (√B ≈ {:.6})",
            display(&m.normalized_average),
            hyperlens::rational::to_f64(&m.normalized_average).sqrt()
        );
        for (name, value) in s.fields() {
            println!("  {name:<5} = {}", display(value));
        }
    }
    Ok(())
}

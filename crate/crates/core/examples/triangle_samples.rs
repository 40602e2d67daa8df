//! Samples lattice triangles (a, w1, w2) and writes their normalized side
//! lengths as CSV, next to the typical values they concentrate around.

use hyperlens::exact::{Anchor, CubeSpec, Population};
use hyperlens::geometry::{normalized_distance, FloatPoint, ShapeTargets};
use hyperlens::montecarlo::sample_lattice_point;

fn main() -> hyperlens::Result<()> {
    let spec = CubeSpec::new(500, 4)?;
    let anchor = Anchor::origin(&spec);
    let targets = ShapeTargets::for_population(&spec, &anchor, Population::Lattice)?;
    let a = FloatPoint::from_anchor(&anchor)?;
    println!(
        "# anchor side ≈ {:.6}, mutual side ≈ {:.6}",
        targets.anchor_side, targets.mutual_side
    );
    println!("side_a1,side_a2,side_12");
    for i in 0..1000 {
        let w1 = FloatPoint::from_integers(&sample_lattice_point(&spec, 2 * i, 3));
        let w2 = FloatPoint::from_integers(&sample_lattice_point(&spec, 2 * i + 1, 3));
        println!(
            "{:.6},{:.6},{:.6}",
            normalized_distance(&spec, &a, &w1)?,
            normalized_distance(&spec, &a, &w2)?,
            normalized_distance(&spec, &w1, &w2)?
        );
    }
    Ok(())
}

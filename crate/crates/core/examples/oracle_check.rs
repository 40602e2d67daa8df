//! Recomputes the closed forms by brute-force enumeration and reports any
//! difference.

use hyperlens::exact::{CubeSpec, Population};
use hyperlens::oracle::EnumerationBudget;
use hyperlens::report::{anchor_set, compare_with_oracle, AnchorSet};

fn main() -> hyperlens::Result<()> {
    let budget = EnumerationBudget::default();
    for (pop, dmax, nmax) in [(Population::Vertices, 8, 3), (Population::Lattice, 4, 4)] {
        let mut checked = 0;
        for d in 1..=dmax {
            for n in 1..=nmax {
                let spec = CubeSpec::new(d, n)?;
                for a in anchor_set(&spec, AnchorSet::Random(5), 1) {
                    if let Some(m) = compare_with_oracle(&spec, pop, &a, &budget)? {
                        println!(
                            "{spec} a={}: {} differs ({} vs {})",
                            a.describe(&spec),
                            m.field,
                            m.closed_form,
                            m.brute_force
                        );
                        std::process::exit(1);
                    }
                    checked += 1;
                }
            }
        }
        println!("{pop}: {checked} anchors, every field equal");
    }
    Ok(())
}

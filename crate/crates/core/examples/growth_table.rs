//! Edge counts of the modular and split constructions as CSV.

use hyperturan::turan::{growth_table, write_csv, GoodSetSource, GrowthSpec};
use hyperturan::Budget;

fn main() -> hyperturan::Result<()> {
    let specs = [
        GrowthSpec::Modular { k: 5, primes: vec![7, 11, 13, 17, 19], source: GoodSetSource::Exact },
        GrowthSpec::Split { k: 5, r: 4, ns: vec![10, 14, 18, 22] },
    ];
    for spec in &specs {
        let rows = growth_table(spec, Budget::default())?;
        write_csv(&rows, std::io::stdout().lock())?;
    }
    Ok(())
}

//! Exact Turán numbers for small forbidden families, and the monotone chain.

use hyperturan::patterns::{IPattern, QPattern};
use hyperturan::turan::{bes_family, ex_exact, monotone_chain_check, ForbiddenFamily, Member};
use hyperturan::Budget;

fn main() -> hyperturan::Result<()> {
    let b = Budget::default();
    let fams = [
        ForbiddenFamily::single(Member::Q(QPattern::new(3, 3)?))?,
        ForbiddenFamily::single(Member::I(IPattern::new(3, 2)?))?,
        bes_family(3, 6, 3)?,
    ];
    for fam in &fams {
        for n in 5..=7 {
            let res = ex_exact(n, 3, fam, b)?;
            println!("ex({n}, {}) = {}{}", fam.id(), res.max_edges, if res.budget_hit { " (lower bound)" } else { "" });
        }
    }
    let chain = monotone_chain_check(6, 4, b)?;
    println!("chain n=6 k=4: {:?} holds={}", chain.values, chain.holds);
    Ok(())
}

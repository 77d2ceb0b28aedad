//! Lift an extremal 3-graph to a Q_5(3)-free 5-graph.

use hyperturan::constructions::{construct_lift, LiftConfig};
use hyperturan::patterns::{find_q_copy, IPattern, QPattern};
use hyperturan::turan::{ex_exact, ForbiddenFamily, Member};
use hyperturan::Budget;

fn main() -> hyperturan::Result<()> {
    let fam = ForbiddenFamily::new(3, vec![Member::Q(QPattern::new(3, 3)?), Member::I(IPattern::new(3, 2)?)])?;
    let base = ex_exact(7, 3, &fam, Budget::default())?.witness;
    println!("base: {} edges {:?}", base.m(), base.edges().collect::<Vec<_>>());
    let h = construct_lift(&LiftConfig { r: 3, base, n2: 7 })?;
    let free = find_q_copy(&h, QPattern::new(5, 3)?)?.is_none();
    println!("lift: n={} edges={} Q_5(3)-free={free}", h.n(), h.m());
    Ok(())
}

//! D(e) sets after a k-partite reduction, and the shadow-clique audit.

use hyperturan::constructions::{construct_split, SplitConfig};
use hyperturan::hypercore::{kpartite_reduce, transversal_floor};
use hyperturan::patterns::{d_sets, generate_i, shadow_clique_audit};

fn main() -> hyperturan::Result<()> {
    let h = construct_split(&SplitConfig { n: 16, k: 4, r: 3 })?;
    let (part, kept) = kpartite_reduce(&h, 7)?;
    println!("{} edges, {} transversal (guaranteed {})", h.m(), kept.m(), transversal_floor(4, h.m()));
    let max_d = d_sets(&kept, &part)?.iter().map(|d| d.d.len()).max().unwrap_or(0);
    println!("max |D(e)| = {max_d}");

    let bad = generate_i(4, 3)?;
    let rep = shadow_clique_audit(&bad)?;
    println!("audit on I_4(3): pass={}", rep.pass);
    Ok(())
}

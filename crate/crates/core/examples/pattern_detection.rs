//! Find Q_k(r) and I_k(i) copies and print their certificates.

use hyperturan::constructions::centered_family;
use hyperturan::patterns::{find_i_copy, find_q_copy, generate_q, IPattern, QPattern};

fn main() -> hyperturan::Result<()> {
    let q = generate_q(4, 3)?;
    println!("Q_4(3): {:?}", q.edges().collect::<Vec<_>>());
    let emb = find_q_copy(&q, QPattern::new(4, 3)?)?.expect("Q_4(3) contains itself");
    emb.validate(&q)?;
    println!("certificate: {}", emb.to_json());

    let star = centered_family(8, 3)?;
    println!("star on 8 vertices, Q_3(3) copy: {:?}", find_q_copy(&star, QPattern::new(3, 3)?)?.map(|e| e.to_json()));
    let i = find_i_copy(&star, IPattern::new(3, 1)?)?.expect("two edges meeting only at the centre");
    println!("I_3(1) copy: {}", i.to_json());
    Ok(())
}

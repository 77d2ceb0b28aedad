//! k-good sets: exact maxima on small primes, digit-sphere sets on larger ones,
//! and the AP-free numbers they are compared with.

use hyperturan::numbers::{ap_free_table, behrend_good_set, is_k_good, max_good_set};
use hyperturan::Budget;

fn main() -> hyperturan::Result<()> {
    let r3 = ap_free_table(17, 3, Budget::default())?;
    for p in [5u64, 7, 11, 13, 17] {
        let s = max_good_set(p, 3, Budget::default())?;
        println!("s_3({p:>2}) = {} {:?}   r_3({p}) = {}", s.len(), s.s, r3[p as usize - 1].a.len());
    }
    for p in [101u64, 211] {
        let s = behrend_good_set(p, 3)?;
        assert!(is_k_good(&s.s, p, 3)?.is_none());
        println!("digit-sphere p={p}: |S|={} params={:?}", s.len(), s.params);
    }
    if let Some(v) = is_k_good(&[1, 2, 3], 7, 3)? {
        println!("{{1,2,3}} mod 7 fails: {}", v.to_json());
    }
    Ok(())
}

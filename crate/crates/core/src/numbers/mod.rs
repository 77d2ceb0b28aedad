//! k-good sets in Z_p, AP_k-free sets and (n,r,t)-packings.

mod apfree;
mod goodset;
mod packing;
mod primes;

pub use apfree::{ap_free_table, is_ap_free, max_ap_free, APFreeSet, Progression};
pub use goodset::{
    behrend_good_set, behrend_good_set_with, is_k_good, max_good_set, BehrendParams, DigitPolicy, GoodSet,
    GoodSetViolation, Provenance,
};
pub use packing::{exact_max_packing, greedy_packing, Packing};
pub use primes::{inv_mod, is_prime, modp};

//! Exact Turán numbers for small forbidden families, Brown–Erdős–Sós
//! families and growth/density tables.

mod bes;
mod family;
mod search;
mod tables;

pub use bes::bes_family;
pub use family::{ForbiddenFamily, Member};
pub use search::{ex_exact, ex_exact_capped, monotone_chain_check, ChainReport, SearchResult, DEFAULT_MAX_CANDIDATES};
pub use tables::{
    density_trend, growth_table, write_csv, DensityPoint, DensityReport, GoodSetSource, GrowthRow, GrowthSpec,
    CSV_HEADER,
};

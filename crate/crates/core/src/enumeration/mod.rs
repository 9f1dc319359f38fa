//! Coset enumeration, low-index search and certificates.

mod certificate;
mod certify;
mod coset_table;
mod low_index;
mod todd_coxeter;

pub use certificate::{conventions, Certificate, Check, Claim, Evidence, CONVENTIONS};
pub use certify::{nonabelian_witness, order, order_of, weight_check};
pub use coset_table::CosetTable;
pub use low_index::{for_each_table, low_index_search};
pub use todd_coxeter::{
    enumerate, enumerate_with, EnumerationOptions, EnumerationOutcome, Verdict, WorkStats,
    DEFAULT_CAP,
};

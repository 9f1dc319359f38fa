//! Triangle groups, Brieskorn groups, fixed-knot words, branched-cover
//! presentations and the homology, degree and Gluck-twist arithmetic.

mod arithmetic;
mod knots;
mod sphere;
mod triangle;
mod words;

pub use arithmetic::{
    gluck_ledger, h1_branched_cover, miyazawa_degree, BranchedCoverH1, LedgerRecord, Parity,
    SpinParams,
};
pub use knots::{
    branched_cover_pi1_even, branched_cover_pi1_odd, rp2_connect_sum_group, rp2_unknotting_check,
    torus_knot_group, turned_torus_group, KnotGroupData,
};
pub use sphere::{
    montesinos_param, montesinos_sphere_check, sphere_check, Descriptor, MontesinosCase,
};
pub use triangle::{
    brieskorn_pi1, seifert_invariants, triangle_group, SeifertData, TriangleParams,
};
pub use words::{
    fixed_knot_word, fixed_knot_word_formula, fixed_knot_word_simplified_q3, torus_section_word,
};

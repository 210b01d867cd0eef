//! Cut locus and polar divisor, tangent conjugate locus, Schubert conditions
//! and the conjugate-locus strata.

mod conjugate;
mod cut;
mod schubert;
mod strata;

pub use conjugate::{
    cartan_to_tangent, dexp_min_singular, dexp_singular_values, is_conjugate, tangent_conjugate_times, CartanVector,
    ConjugateTime, Contribution, Family, RootSign, DEFAULT_CONJUGATE_TOL, DEFAULT_FD_STEP,
};
pub use cut::{
    cut_locus_report, cut_locus_test, disjoint_union_check, has_right_angle, CutLocusReport, DivisorClass,
    DEFAULT_CUT_TOL,
};
pub use schubert::{schubert_dims, schubert_membership, Flag, Membership, SchubertSymbol};
pub use strata::{conjugate_stratum_i, conjugate_stratum_w, isoclinic_test, DEFAULT_ANGLE_TOL};

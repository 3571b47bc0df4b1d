//! Lemma-level local analysis: auxiliary functions, Laurent-coefficient
//! matching at poles and zeros, and the degree-sum arithmetic for the
//! three-constant forms.

mod aux;
mod feasibility;
mod matching;

pub use aux::{build_aux, build_aux_all, eval_aux, AuxExpression, AuxKind, AuxParams};
pub use feasibility::{degree_feasibility, qe7_admissible_n, FeasibilityReport};
pub use matching::{
    leading_schwarzian_coeff, pole_germ, pole_matching_check, pole_ratio_relation, zero_matching_check,
    PoleMatchReport, RelationCheck, SeriesSides, ZeroMatchReport,
};

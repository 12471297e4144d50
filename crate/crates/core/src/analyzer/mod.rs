//! The classification theory as executable operations: deciders for the
//! centralizing and commuting properties, canonical decompositions,
//! centralizers, dimension censuses, and audits of closed-form identities.

mod centralizer;
mod census;
mod decide;
mod decompose;
mod identities;
mod lemma;
mod sweep;

pub use centralizer::{centralizer_closed_form, centralizer_oracle, coordinates_span, span_s_rank, s1_generic_family};
pub use census::{map_space_dimension, predicted_dimension, MapSpaceCensus};
pub use decide::{is_centralizing, is_commuting, decide, DecideReport, Property, Witness};
pub use decompose::{
    decompose_centralizing, decompose_commuting, CentralizingDecomposition, CommutingDecomposition,
};
pub use identities::{
    factorial_inequality_check, power_closed_form_check, power_corrected_candidate, power_literal_display,
    s1_commutator_check, s1_commutator_formula, s1_commutator_pair, w1c_formula, w1c_identity_check, CheckRecord, CheckStatus, IdentityCheckReport,
};
pub use lemma::{lemma2_form_check, lemma3_coefficient_system, CoefficientEquation, CoefficientSystemResult};
pub use sweep::{charp_sweep, no_prediction_label, SweepRow};

//! Categories enriched in a finite thin quantale, where presheaf objects are
//! finite and every construction can be enumerated.
//!
//! All 2-cells are unique in this setting, so the law checks reduce to the
//! existence of inequalities.

mod corpus;
mod lattice;
mod nerve;
mod presheaf;
mod vcat;
mod yoneda;

pub use corpus::{
    canonical_form, dense_subsets, labelled_vcats, preorders_up_to_iso, quantale_bases, quantale_corpus, vcats_up_to_iso,
    QuantaleInstance,
};
pub use lattice::{validate_quantale, Quantale, Value};
pub use nerve::{
    nerve_values, v_algebra_carriers, v_check_nerve_theorem, v_kleisli, v_monads, v_nerve, v_pullback, v_semanticiser_apex,
    validate_v_monad, PairedVCat, VNerve, VNerveTheoremReport, VRelMonad,
};
pub use presheaf::{
    check_classification, check_right_lifts, check_yoneda, is_v_presheaf, restrict_values, right_lift, right_lift_by_search,
    v_distributors, v_presheaf_object, PresheafObject,
};
pub use vcat::{is_vcat_isomorphism, validate_vcat, validate_vfunctor, VCat};
pub use yoneda::{check_v_loose_monad, v_loose_monads, v_yo_monad_bijection, yo_monads, YoBijection};

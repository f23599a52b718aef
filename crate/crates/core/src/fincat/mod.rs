//! Finite categories, functors, natural transformations, distributors and
//! presheaves, with validators, enumeration, duality and pullbacks.

mod category;
mod density;
mod distributor;
mod functor;
mod nat;
mod presheaf;
mod pullback;

pub use category::{ConcreteBuilder, FinCat, Mor, Morphism, Obj};
pub use density::{canonical_map_bijective, DensityVerdict, DensityWitness};
pub use distributor::{restrict_distributor, Distributor, Het, HetElement};
pub use functor::{
    all_functors, full_inclusion, fully_faithful_failure, functors_within, is_fully_faithful, is_strict_isomorphism,
    FaithfulnessFailure, Functor,
};
pub use nat::{enumerate_nat_transformations, NatTransformation};
pub use presheaf::{check_presheaf_morphism, presheaf_morphisms, Presheaf, PresheafMorphism};
pub use pullback::{pair_object, pullback_category, Cone, Pullback, PullbackCertificate};

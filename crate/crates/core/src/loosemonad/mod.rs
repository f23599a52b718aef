//! Loose-monads (promonads), their morphisms and modules, the collapse
//! construction, and the semanticiser checker.

mod module;
mod monad;
mod morphism;
mod semanticiser;

pub use module::{algebra_module, enumerate_modules, module_to_algebra, representable_carrier, LooseMonadModule};
pub use monad::{associated_loose_monad, check_loose_monad, collapse, hom_het, loose_identity, Collapse, LooseMonad};
pub use morphism::{dagger_morphism, factor_through_collapse, Factorization, LooseMonadMorphism};
pub(crate) use semanticiser::fibred_distributor;
pub use semanticiser::{check_pi2_transport, em_pi2, em_square, SemanticiserCertificate, SemanticiserCone, Square};

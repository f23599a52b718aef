//! Kleisli and algebra categories of a relative monad, opalgebras and the
//! comparison functor between the two resolutions.

mod algebra;
mod comparison;
mod kleisli;
mod opalgebra;

pub use algebra::{algebras_on, check_algebra, enumerate_algebras, free_algebra, is_algebra_morphism, Algebra, Algebras};
pub use comparison::{comparison_functor, Comparison};
pub use kleisli::{build_kleisli, kleisli_carrier_agrees, Kleisli, Resolution};
pub use opalgebra::{
    check_opalgebra, opalgebra_factorization, opalgebra_factorization_via_collapse, Opalgebra, OpalgebraCheck,
};

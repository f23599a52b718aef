//! Nerves and density, the finite presentation of the nerve pullback, the
//! comparison from algebras, and the nerve theorem with its comonad dual.

mod nerve;
mod pullback;
mod theorem;

pub use nerve::{is_dense, nerve_morphism, nerve_presheaf};
pub use pullback::{
    build_nerve_pullback, comparison_to_pullback, presheaf_pullback_agrees, NervePullback, PullbackObject,
};
pub use theorem::{
    check_conerve_theorem, check_nerve_of_comparison, check_nerve_theorem, check_relative_comonad, dualize_comonad,
    dualize_monad, ConerveTheoremReport, NerveTheoremReport, RelativeComonad,
};

//! Relative monads and relative adjunctions on finite categories.

mod adjunction;
mod index;
mod monad;
mod section;

pub use adjunction::{all_left_relative_adjoints, find_left_relative_adjoint, monad_from_adjunction, RelativeAdjunction};
pub use index::PairIndex;
pub use monad::{
    carrier_functor, check_relative_monad, identity_monad, require_valid, restrict_monad, search_extensions, trivial_monad, MonadCheck,
    RelativeMonad, ALT_ASSOC, LAW_1, LAW_2, LAW_3,
};
pub use section::{monad_from_section, section_from_monad, SectionData};

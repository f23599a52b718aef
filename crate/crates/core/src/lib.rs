//! Relative monads on finite categories and on categories enriched in a
//! finite quantale, with every universal property checked by enumeration.
//!
//! Composition is written in diagrammatic order throughout: `f ⨾ g` is
//! "f then g", and tables store it that way.

pub mod constructions;
pub mod error;
pub mod fincat;
pub mod loosemonad;
pub mod nervepullback;
pub mod quantale;
pub mod relmonad;
pub mod report;
pub mod search;
pub mod zoo;

pub use error::{Caps, Error, Result};
pub use report::{Item, LawReport, Violation};

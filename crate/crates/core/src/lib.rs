//! Exact computation of tangent spaces, group cohomology and surface pairings
//! for representation varieties of finitely presented groups.
//!
//! Everything is over ℚ(i) with exact rational arithmetic. The guide in
//! `book/` walks through the modules in order.

pub mod arith;
pub mod cohomology;
pub mod error;
pub mod groups;
pub mod presentation;
pub mod problem;
pub mod report;
pub mod representation;
pub mod scheme;
pub mod symplectic;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    mod arithmetic {}
    #[doc = include_str!("../../../book/src/presentations.md")]
    mod presentations {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/scheme.md")]
    mod scheme {}
    #[doc = include_str!("../../../book/src/symplectic.md")]
    mod symplectic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

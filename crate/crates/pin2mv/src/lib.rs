//! Exact verification of the arithmetic behind the Mahowald line bound on
//! spin 4-manifolds. The guide in `book/` walks through each module.

pub mod ahss;
pub mod chern;
pub mod error;
pub mod exactarith;
pub mod mahowald;
pub mod report;
pub mod ro;
pub mod steenrod;
pub mod stems;
pub mod valuation_lemmas;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/valuations.md")]
    mod valuations {}
    #[doc = include_str!("../../../book/src/chern.md")]
    mod chern {}
    #[doc = include_str!("../../../book/src/steenrod.md")]
    mod steenrod {}
    #[doc = include_str!("../../../book/src/ro.md")]
    mod ro {}
    #[doc = include_str!("../../../book/src/ahss.md")]
    mod ahss {}
    #[doc = include_str!("../../../book/src/mahowald.md")]
    mod mahowald {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

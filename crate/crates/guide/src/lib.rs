//! The guide's code listings, compiled as doc-tests.
//!
//! Each chapter of `book/` is included as the documentation of a module, so
//! `cargo test -p gwcross-guide --doc` runs every snippet in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/hodge.md")]
pub mod hodge {}
#[doc = include_str!("../../../book/src/wallcross.md")]
pub mod wallcross {}
#[doc = include_str!("../../../book/src/gv.md")]
pub mod gv {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! The guide's chapters compiled as doc comments, one module each, so
//! `cargo test --doc` runs every listing in the book.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/partitions.md")]
pub mod partitions {}
#[doc = include_str!("../../../book/src/refutations.md")]
pub mod refutations {}
#[doc = include_str!("../../../book/src/witnesses.md")]
pub mod witnesses {}
#[doc = include_str!("../../../book/src/intervals.md")]
pub mod intervals {}
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

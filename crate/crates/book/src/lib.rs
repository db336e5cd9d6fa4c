//! Book chapters compiled as doc-tests, so every listing in `book/` runs
//! under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/superspace.md")]
pub mod superspace {}
#[doc = include_str!("../../../book/src/engine.md")]
pub mod engine {}
#[doc = include_str!("../../../book/src/gauss.md")]
pub mod gauss {}
#[doc = include_str!("../../../book/src/evalrep.md")]
pub mod evalrep {}
#[doc = include_str!("../../../book/src/relcheck.md")]
pub mod relcheck {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! The narrative guide, doc-tested.
//!
//! Each chapter of `book/` is included here verbatim so that `cargo test`
//! compiles and runs every code block the book shows; the book cannot
//! drift from the library.

#[doc = include_str!("../../../book/src/overview.md")]
pub mod overview {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/maps.md")]
pub mod maps {}

#[doc = include_str!("../../../book/src/labels.md")]
pub mod labels {}

#[doc = include_str!("../../../book/src/mobiles.md")]
pub mod mobiles {}

#[doc = include_str!("../../../book/src/bijections.md")]
pub mod bijections {}

#[doc = include_str!("../../../book/src/twopoint.md")]
pub mod twopoint {}

#[doc = include_str!("../../../book/src/checks.md")]
pub mod checks {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

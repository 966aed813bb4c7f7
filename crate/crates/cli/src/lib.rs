//! Library surface behind the `kdvtau` binary: JSON documents, rendering,
//! the on-disk cache, and the published reference tables. Split out so the
//! integration and acceptance tests can drive the same code paths.

pub mod cache;
pub mod document;
pub mod reference;
pub mod render;

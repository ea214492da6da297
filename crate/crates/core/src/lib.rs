//! Exact-arithmetic engine for finite probability spaces.

pub mod conditional;
pub mod error;
pub mod event_algebra;
pub mod measure;
pub mod query_language;
pub mod rational;
pub mod theorem_suite;

pub use error::{Error, Result};

//! File format, cache, conversion driver, orbit reports and verification
//! suites on top of `conelab-core`.

pub mod cache;
pub mod convert;
pub mod format;
pub mod report;
pub mod suites;
pub mod table;

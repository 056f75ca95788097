//! Verification harness: manifests, operations, the suite runner and the
//! on-disk enumeration cache.

pub mod cache;
pub mod commands;
pub mod manifest;
pub mod ops;
pub mod runner;

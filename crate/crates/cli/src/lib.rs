//! Model descriptions, coefficient rings and reports behind the `gwistor`
//! command line.

pub mod error;
pub mod report;
pub mod ring;
pub mod spec;

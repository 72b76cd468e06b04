//! Scenario files, the expression language and report encoding behind `qdr`.

pub mod expr;
pub mod model;
pub mod report;
pub mod run;
pub mod scenario;

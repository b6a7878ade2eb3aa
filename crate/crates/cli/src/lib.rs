//! Scenario-driven verification harness over the omega-lab core: JSON
//! scenarios in, verdict reports out.

// NaN must take the failure branch of every threshold test, so negated
// comparisons like `!(x >= y)` are used on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod checks;
pub mod report;
pub mod runner;
pub mod scenario;

//! Batch front end for the `dybe` workbench: job specifications, their
//! execution into canonical JSON artifacts, and the acceptance criteria.

pub mod acceptance;
pub mod job;
pub mod run;
pub mod solution;

pub use job::{JobSpec, Task};
pub use run::{exit_code, parse_job, render, run, Outcome};

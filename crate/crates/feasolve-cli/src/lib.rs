//! JSON problem documents, solve reports, trace serialization, and the
//! differential-fuzz driver behind the `feasolve` binary.

pub mod fuzz;
pub mod input;
pub mod report;
pub mod run;
pub mod trace;

pub use input::{parse_problem, problem_to_document, to_float_problem, InputError, ParsedProblem};
pub use report::{build_report, emit_report, SolveReport};
pub use run::{run_pipeline, Outcome, Pipeline, PipelineOptions};

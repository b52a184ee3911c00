//! Command line front end for the coxtet engine.

pub mod args;
pub mod cache;
pub mod doc;
pub mod render;
mod run;

pub use run::{
    execute, main_with_args, resolve_fundamental, run, AppError, FamilyRun, Session, EXIT_CLASSIFICATION, EXIT_IO, EXIT_OK,
    EXIT_PRECISION, EXIT_USAGE, REFERENCE_SECOND_TYPE,
};

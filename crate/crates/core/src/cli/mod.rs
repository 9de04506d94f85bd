//! Presentation files and the command-line front end.

pub mod build;
pub mod corpus;
pub mod doc;
pub mod parse;
pub mod print;
pub mod run;

pub use doc::{ResultDocument, VerdictRecord};
pub use run::{run, run_command, Cli, Command, Outcome};

//! Front end for `qav-core`: JSON input documents, the pipeline behind each
//! subcommand, and deterministic reports.

pub mod input;
pub mod report;
pub mod run;

pub use input::{parse_input, parse_str, to_json, InputDocument};
pub use report::Report;
pub use run::{run, Command, Flags};

/// Process exit status for an error: 3 for inputs outside the supported
/// class, 2 for everything else.
pub fn exit_code(e: &qav_core::Error) -> i32 {
    if e.is_unsupported() {
        3
    } else {
        2
    }
}

//! Text formats and command-line front end for `robba-core`.
//!
//! Output is JSON on stdout (TSV for `polygon` unless `--json`). Exit codes:
//! 0 success, 1 domain error (`{"error": {"code", "message"}}`), 2 usage or
//! parse error.

pub mod commands;
pub mod config;
pub mod formats;
pub mod parse;
pub mod print;

pub use commands::{run, Outcome};
pub use config::SessionConfig;
pub use parse::{parse_element, parse_hahn, parse_tate, parse_witt, Element, ParseError};
pub use print::tate_to_string;

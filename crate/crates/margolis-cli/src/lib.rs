//! Library side of the `margolis` command line tool: report shapes, table
//! rendering, seeded sampling, and the verification suites. The binary in
//! `main.rs` is a thin dispatcher over these.

pub mod report;
pub mod sample;
pub mod table;
pub mod verify;

pub mod expr;
pub mod instance_file;
pub mod suites;
pub mod commands;

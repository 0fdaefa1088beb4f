pub mod experiment;
pub mod repl;
pub mod service;

pub mod app;
pub mod command;
pub mod grammar;
pub mod search;

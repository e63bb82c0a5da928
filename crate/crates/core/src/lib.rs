pub mod ambient;
pub mod cache;
pub mod counting;
pub mod error;
pub mod hecke;
pub mod oracle;
pub mod poset;
pub mod rational;
pub mod report;

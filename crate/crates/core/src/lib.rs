pub mod gf2;
pub mod group;
pub mod lamp;
pub mod engine;
pub mod paths;
pub mod oracle;
pub mod report;
pub mod suites;

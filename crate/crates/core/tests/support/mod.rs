pub mod extractors;
pub mod oracle;
pub mod quoted;

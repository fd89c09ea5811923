//! Oracles, generators and fixtures for the property suites.

pub mod fixtures;
pub mod flow_oracle;
pub mod generators;
pub mod oracle;

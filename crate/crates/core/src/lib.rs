pub mod backends;
pub mod cli;
pub mod clock;
pub mod discovery;
pub mod domain;
pub mod mentions;
pub mod metrics;
pub mod pipeline;
pub mod report;
pub mod stats;

//! Synthetic replicas of article pages with known body text.

pub mod catalog;
pub mod layout;
pub mod prose;
pub mod random;
pub mod replica;

pub use catalog::{all, Expectation, ExpectedCounts, Fixture, FixtureOptions};
pub use random::{random_layout, repeated_pages, RandomLayout};

pub mod bounds;
pub mod cli;
pub mod dynatomic;
pub mod error;
pub mod factor;
pub mod lemma;
pub mod poly;
pub mod ring;
pub mod series;
pub mod suite;

pub use error::{Error, Result};

pub mod bqf;
pub mod cli;
pub mod expr;
pub mod fintop;
pub mod germs;
pub mod hull;
pub mod hyperreal;
pub mod poly;
pub mod sample;

pub use germs::{AeVerdict, Germ, GermError};
pub use hyperreal::{Classification, Hyperreal, HyperrealError, IntervalKind, StandardPart};

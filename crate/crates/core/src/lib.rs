pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod gf;
pub mod poly;
pub mod verify;
pub mod zeroset;

pub mod approx;
pub mod elliott;
pub mod error;
pub mod goodearl;
pub mod linalg;
pub mod ordmon;
pub mod sample;
pub mod scalar;
pub mod wmodel;

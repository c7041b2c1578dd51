pub mod algebra;
pub mod analysis;
pub mod automorphism;
pub mod curve;
pub mod harness;
pub mod pipeline;

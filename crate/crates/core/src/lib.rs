//! Clarithmetic toolkit: formulas as games, proof checking for CL12 and
//! CLA11, boundclass auditing and metered arithmetic strategies.

pub mod syntax;
pub mod arena;
pub mod cl12;
pub mod bounds;
pub mod strategies;
pub mod cla11;

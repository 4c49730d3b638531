//! Exact computation of the stringy (Chen-Ruan) invariants of a linear
//! quotient orbifold `[C^n/G]` for a finite group G: the age grading,
//! obstruction-bundle multiplicities, the graded stringy ring, and a
//! verification suite for every dimension identity the construction rests
//! on. All arithmetic is exact; no floating point appears anywhere.

pub mod age;
pub mod arith;
pub mod cli;
pub mod crring;
pub mod group;
pub mod matrix;
pub mod obstruction;
pub mod reptheory;
pub mod verify;

//! Exact computations for modular representations of small finite groups.

pub mod cohom;
pub mod ffla;
pub mod gl3toy;
pub mod grouprep;
pub mod jhcount;
pub mod meataxe;
pub mod tame;

//! Finite relational presheaves over the cube category and over labelled
//! graphs: euclidean bricks, blowups, relational automata and their
//! normalization, with every property decided by finite enumeration.

pub mod automata;
pub mod blowup;
pub mod error;
pub mod pcs;
pub mod regex;
pub mod samples;
pub mod toolkit;
pub mod words;

pub use error::{Error, Result};

//! Exact character-theoretic workbench for finite permutation groups:
//! Dixon–Schneider character tables, p-blocks, π-blocks of π-separable
//! groups with their inductively defined defect groups, and a harness that
//! checks class-number and block-size bounds over a corpus of groups.

pub mod algebra;
pub mod blocks;
pub mod catalog;
pub mod chartab;
pub mod error;
pub mod perm;
pub mod run;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};

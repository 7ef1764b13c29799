//! Partitions of two-colored `n x n` arrays into balanced diagonals.
//!
//! A diagonal is a set of `n` cells meeting every row and every column once;
//! it is balanced when it holds both colors. For `n >= 7` a partition into
//! `n` balanced diagonals exists exactly when each color class contains a
//! proper set of `n` cells (see [`grid::CellSet::is_improper`]), and
//! [`decompose::decompose`] builds one by completing partial Latin squares.
//! Smaller orders are settled by the exhaustive search in [`oracle`].

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod decompose;
pub mod grid;
pub mod latin;
pub mod matching;
pub mod oracle;
pub mod ryser;

pub use grid::{
    check_feasibility, verify_partition, BicoloredGrid, Cell, CellSet, Color, Cross, Diagonal,
    DiagonalPartition, FeasibilityWitness,
};

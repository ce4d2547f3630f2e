//! Tantrix rotation puzzles: hexagonal geometry, the catalogued tile sets,
//! an exact solution counter, a library of certified circuit-simulating
//! subpuzzles, and a compiler that lowers CNF formulas to puzzles whose
//! solutions are in bijection with the formula's satisfying assignments.

pub mod hex;
pub mod tiles;
pub mod puzzle;
pub mod solver;
pub mod gadgets;
pub mod circuit;

pub use hex::{direction_between, Color, ColorSequence, Direction, HexCoord};
pub use puzzle::{validate_solution, PuzzleInstance, Solution};
pub use tiles::{tile_set, TileKind, TileSet, TileType};

//! Character tables, class-function algebra, and the Galois-orbit structure
//! that groups absolutely irreducible characters into rational ones.

mod class_function;
pub mod dixon;
mod rational;
mod table;

pub use class_function::{cyclic_character_powers, ClassFunction};
pub use rational::{galois_orbits, is_rational, RationalOrbit, RationalStructure};
pub use table::{CharacterTable, ClassExport, TableExport, TableSource};

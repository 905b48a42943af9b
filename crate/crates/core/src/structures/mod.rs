//! Finite structures, assignments, teams and Kripke structures.

pub mod kripke;
pub mod structure;
pub mod team;
pub mod text;

pub use kripke::{KripkeStructure, WorldSet, MAX_WORLDS};
pub use structure::{all_tuples, tuple_count, tuple_index, Function, Relation, Structure, StructureError};
pub use team::{Assignment, Team};
pub use text::{write_kripke, write_structure, Document, KripkeModel, TextError};

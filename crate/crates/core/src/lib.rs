pub mod syntax;
pub mod structures;
pub mod cli;
pub mod evaluator;
pub mod so_bridge;
pub mod mtl_bridge;
pub mod normal_form;
pub mod random;
pub mod solver;

pub mod catalog;
pub mod cli;
pub mod engine;
pub mod flavor;
pub mod group;
pub mod linalg;
pub mod modular;
pub mod render;
pub mod tol;

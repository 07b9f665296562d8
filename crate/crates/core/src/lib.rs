pub mod algebra;
pub mod bv;
pub mod catalog;
pub mod error;
pub mod expr;
pub mod hopf;
pub mod linear;
pub mod model_file;
pub mod models;
pub mod semidirect;

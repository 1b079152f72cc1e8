pub mod algebra;
pub mod cli;
pub mod alt;
pub mod codim;
pub mod error;
pub mod group;
pub mod linalg;
pub mod perm;
pub mod poly;
pub mod rank;
pub mod ring;
pub mod sym;

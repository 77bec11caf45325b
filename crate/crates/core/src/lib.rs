pub mod atlas;
pub mod bijection;
pub mod classes;
pub mod error;
pub mod fourientation;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod matroid;
pub mod ribbon;
pub mod signature;
pub mod lawrence;
pub mod catalog;
pub mod io;
pub mod selftest;

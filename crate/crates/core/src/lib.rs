pub mod error;
pub mod group;
pub mod corpus;
pub mod repr;
pub mod lattice;
pub mod wreath;
pub mod verify;
pub mod io;

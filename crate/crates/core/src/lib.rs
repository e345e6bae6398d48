pub mod corpus;
pub mod io;
pub mod kernel;
pub mod nuclei;
pub mod sheaves;
pub mod suite;
pub mod syntax;

pub mod cohomology;
pub mod deformation;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod multivector;
pub mod poly;
pub mod surface;

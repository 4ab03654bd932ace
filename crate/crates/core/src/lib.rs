//! Exact algebra for the trifocal variety: tensors built from cameras, their
//! rank invariants, the equations cutting out the variety and a membership test.

pub mod camera;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod orbits;
pub mod poly;
pub mod rep;
pub mod report;
pub mod tensor;

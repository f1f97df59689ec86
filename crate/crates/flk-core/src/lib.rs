//! Exact computations with small quantum groups and Frobenius–Lusztig kernels at roots of unity.

pub mod algebras;
pub mod cohomology;
pub mod linalg;
pub mod persist;
pub mod repr;
pub mod rootdata;
pub mod scalars;

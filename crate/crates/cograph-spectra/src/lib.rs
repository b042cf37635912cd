//! Cographs admit symmetric matrices with at most four distinct
//! eigenvalues. This crate makes that constructive: it recognizes
//! cographs (producing cotrees or induced-P4 witnesses), extracts twin
//! sequences, synthesizes the matrix in exact Z[√2, 1/2] arithmetic, and
//! certifies the spectral claim both exactly (annihilating polynomial,
//! fraction-free rank) and numerically (Jacobi eigensolver).

pub mod cotree;
pub mod exact;
pub mod formats;
pub mod graph;
pub mod pipeline;
pub mod report;
pub mod synthesis;
pub mod verify;

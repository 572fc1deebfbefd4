pub mod checks;
pub mod cli;
pub mod expr;
pub mod qfield;
pub mod superalgebra;
pub mod supermatrix;

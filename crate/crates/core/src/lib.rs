pub mod automata;
pub mod linked;
pub mod murraymiller;
pub mod nandi;
pub mod partitions;
pub mod qalgebra;
pub mod qseries;

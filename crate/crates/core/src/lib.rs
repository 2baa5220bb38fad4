pub mod algebra;
pub mod checks;
pub mod chordio;
pub mod cli;
pub mod finitetype;
pub mod link;
pub mod relations;
pub mod weight;

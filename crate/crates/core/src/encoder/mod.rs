//! Code construction: fitting matrices and minimum rank, the exhaustive
//! shortest-generator search, clique and cycle constructions, and classical
//! code quantities.

mod classical;
mod clique;
mod cover;
mod fitting;
mod generator;
mod search;

pub use classical::{griesmer, ind_q, l_q, min_distance, min_distance_of_parity, ShortestCode};
pub use clique::{clique_from_parity, cycle_code, reed_solomon_parity};
pub(crate) use fitting::combinations;
pub use fitting::{fitting_template, minrank, FittingColumn, FittingTemplate, MinrankResult};
pub use generator::{parse_generator, serialize_generator, GeneratorDoc, GeneratorMatrix};
pub use search::{find_generator_of_length, optimal_length};

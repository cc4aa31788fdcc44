//! Linear index codes for broadcast channels where the receivers' cached side
//! information may contain errors, optionally with additive channel errors.
//!
//! Packets and receivers are 0-based throughout the API; documents on disk
//! and human-readable output use 1-based indices.

pub mod budget;
pub mod catalog;
pub mod codeset;
pub mod decoder;
pub mod encoder;
pub mod error;
pub mod gfield;
pub mod linalg;
pub mod sigraph;
pub mod structure;

pub use budget::Budget;
pub use codeset::{enum_interference, in_support_family, is_valid_generator, oracle_decodable, Verdict};
pub use decoder::{build_context, decode_all, decode_receiver, find_correction, DecodeTrace, ReceiverContext};
pub use encoder::{
    clique_from_parity, cycle_code, find_generator_of_length, fitting_template, ind_q, l_q, minrank, optimal_length,
    parse_generator, serialize_generator, GeneratorMatrix,
};
pub use error::{Error, ParseError, Result};
pub use gfield::{field_make, FieldElement, FieldSpec};
pub use linalg::{parse_vector, FMatrix, FVector, IndexSet};
pub use sigraph::{
    parse_instance, serialize_instance, InstanceDoc, ProblemSpec, SideErrorModel, SideInfoGraph, Violation,
};
pub use structure::{bounds_report, delta_s_mais, find_cycles, gamma, is_acyclic, max_disjoint_cycles, BoundsReport};

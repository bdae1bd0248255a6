//! Agreement and disagreement classification for two-party online
//! dialogue.
//!
//! The pipeline runs corpus loading ([`corpus`]), tokenization
//! ([`textproc`]), lexicon matching ([`lexicons`]), featurization
//! ([`features`]), tree learning ([`learn`]) and evaluation ([`eval`]).

pub mod corpus;
pub mod eval;
pub mod features;
pub mod learn;
pub mod lexicons;
pub mod textproc;

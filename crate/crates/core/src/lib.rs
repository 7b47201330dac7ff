//! Tooling for preparing parallel corpora and evaluating statistical machine
//! translation systems.
//!
//! The crate is organised by pipeline stage:
//!
//! * [`corpus`] – segments, tokenization, vocabularies and dictionary coverage.
//! * [`cleaning`] – duplication/noise detection and length filtering of parallel text.
//! * [`tagged`] – morphosyntactically tagged XML: base forms, SVO reordering, transcoding.
//! * [`lm`] – back-off n-gram language models (Kneser-Ney, Witten-Bell), ARPA I/O,
//!   perplexity and linear interpolation.
//! * [`metrics`] – BLEU, NIST, METEOR and TER.
//! * [`alignment`] – word-alignment symmetrization and MSD orientation statistics.
//!
//! Corpus-level drivers fan out over sentences through [`exec`], which uses rayon
//! when the `parallel` feature is enabled (the default) and plain iterators otherwise.
//! Results never depend on the thread count.

pub mod alignment;
pub mod cleaning;
pub mod corpus;
pub mod exec;
pub mod lm;
pub mod metrics;
pub mod tagged;

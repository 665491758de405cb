//! Command-line surface for the fuzzy qualitative rank classifier:
//! model persistence, evaluation protocol driver and the four verbs
//! (`train`, `infer`, `rank`, `evaluate`).

pub mod commands;
pub mod inputs;
pub mod model_file;
pub mod pipeline;
pub mod report;

//! Exact global minimum cuts by tree packing and a sweep over cuts that
//! cross a spanning tree at most twice.
//!
//! [`min_cut`] is the entry point. [`baselines`] holds the reference
//! algorithms used to check it.

pub mod baselines;
pub mod dsu;
pub mod error;
pub mod generate;
pub mod graph;
pub mod packing;
pub mod path_aggregate;
pub mod respect;
pub mod sampler;
pub mod spanning_tree;

pub use error::{Error, Result};
pub use graph::{cut_weight, parse_graph, write_graph, CutResult, Graph};
pub use respect::{min_1respect, min_2respect, min_cut, min_cut_report, MinCutReport};
pub use sampler::SamplerConfig;
pub use spanning_tree::RootedTree;

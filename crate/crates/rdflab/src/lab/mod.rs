//! The executable surface: exponent ranges, collection generators, the
//! operator-norm ratio search, the sweep harness, and the invariant
//! suites.

pub mod experiment;
pub mod exponents;
pub mod generators;
pub mod search;
pub mod verify;

pub use experiment::{
    generate, run_experiment, summarize, ExperimentConfig, ExperimentOutput, ExperimentSummary,
    GeneratorSpec, SizeBest, TupleSpec, TupleSummary,
};
pub use exponents::{admissible_range, AdmissibleRange, ExponentTuple};
pub use generators::{gen_grid, gen_line, gen_product, gen_random_packing};
pub use search::{estimate_ratio, fmt_f64, CutMode, ExperimentRecord, SearchConfig};
pub use verify::{line_law_spotcheck, run_all, run_suite, SUITES};

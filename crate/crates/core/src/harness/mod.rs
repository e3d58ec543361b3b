//! Graph ingestion, experiment sweeps, CSV and plot output.

pub mod constraint;
pub mod io;
pub mod plot;
pub mod sweep;

pub use constraint::{degree_partition, Constraint, ConstraintSpec};
pub use io::{load_graph, parse_edge_list, parse_matrix_market, GraphFormat, LoadedGraph};
pub use plot::{emit_plot, PlotKind};
pub use sweep::{
    matched_settings, normalized_params, read_csv, run_sweep, sweep_graph, write_csv, Algo,
    ExperimentConfig, GraphSource, ParamRange, RowFailure, SweepOutcome, SweepRow, CSV_HEADER,
};

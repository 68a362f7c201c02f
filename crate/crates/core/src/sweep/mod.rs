//! Figure pipelines, the parallel grid runner and table output.

pub mod config;
pub mod figures;
pub mod grid;
pub mod selftest;
pub mod table;

pub use config::{Fig2Config, Fig3Config, Fig4Config, RunConfig, SweepConfig};
pub use figures::{
    entanglement_series, fig2, fig3, fig3_panel, fig3_spec, fig4, fig4_run, sweep, Context, EntanglementRun, Failure,
    FigureOutput, RunReport, FIG3_PANELS,
};
pub use grid::{grid_points, run_grid, AxisScale, GridAxis, GridOutcome, PointFailure};
pub use selftest::{run_selftest, Check, SelfTestReport};
pub use table::{split_csv, Column, OutputDir, ResultTable};

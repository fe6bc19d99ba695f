//! Config files, CSV tables, run manifests and the command-line front end.

mod cli;
mod config;
mod csv;

pub use cli::{cli_dispatch, exit_code};
pub use config::{parse_config, parse_override, parse_settings_text, RunManifest, Settings, SEED_ENV};
pub use csv::{
    aggregate_csv, cells_csv, emit_timeseries, minima_csv, number, parse_minima_csv, speedup_csv, timeseries_csv,
    write_file, AGGREGATE_HEADER, CELLS_HEADER, MINIMA_HEADER, SPEEDUP_HEADER, TIMESERIES_HEADER,
};

//! File formats: key=value scan configs, result CSV, SVG heatmaps and the
//! binary ground-state cache.

pub mod cache;
pub mod config;
pub mod csv;
pub mod heatmap;

pub use cache::{decode_entry, encode_entry, CacheKey, CachedState, StateCache};
pub use config::{load_config, parse_config_str, render_config, ConfigOverride};
pub use csv::{column_value, csv_string, parse_csv, read_csv, write_csv, CSV_COLUMNS};
pub use heatmap::{render_heatmap, write_heatmap};

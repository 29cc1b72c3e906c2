//! Command-line front end: phase scans, single points, the finite-size study
//! and CSV to SVG rendering.
//!
//! Exit codes: 0 on success, 2 when some points failed, 1 on fatal errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use xxz_ladder::io::csv::format_number;
use xxz_ladder::io::{load_config, read_csv, write_csv, write_heatmap, ConfigOverride, StateCache};
use xxz_ladder::scan::{evaluate_point_with, PointOptions};
use xxz_ladder::{couplings_from_point, run_phase_scan, run_scaling_study, Error, LegMode, ScanConfig, ScalingRow};

#[derive(Parser)]
#[command(name = "xxz-ladder", version, about = "Entanglement phase maps of two-leg XXZ ladders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan the (alpha, Delta) grid and write one CSV row per point
    Scan {
        #[command(flatten)]
        common: Common,
        /// Output CSV path
        #[arg(long, default_value = "scan.csv")]
        out: PathBuf,
        /// Also render this column as an SVG heatmap next to the CSV
        #[arg(long)]
        heatmap: Option<String>,
    },
    /// Evaluate a single (alpha, Delta) point and print a full report
    Point {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        delta: f64,
    },
    /// Gap per spin and GGM against system size at fixed alpha
    Scaling {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
        alpha: f64,
        /// Comma-separated Delta values
        #[arg(long, value_delimiter = ',', default_value = "0.6,0.8,1.0", allow_hyphen_values = true)]
        deltas: Vec<f64>,
        /// Comma-separated total site counts
        #[arg(long, value_delimiter = ',', default_value = "8,12,16")]
        sizes: Vec<usize>,
        /// Output CSV path, standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render one column of a scan CSV as an SVG heatmap
    Render {
        /// Scan CSV to read
        input: PathBuf,
        #[arg(long, default_value = "ggm")]
        column: String,
        /// Leg mode of the scan, selects the alpha axis label
        #[arg(long, default_value = "antiferro")]
        mode: LegMode,
        #[arg(long, default_value = "heatmap.svg")]
        out: PathBuf,
    },
}

/// Flags shared by the solving subcommands. Values stay strings so that the
/// config layer parses them and names the flag in its errors.
#[derive(Args)]
struct Common {
    /// key = value config file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n_rungs: Option<String>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha_max: Option<String>,
    #[arg(long)]
    alpha_steps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta_max: Option<String>,
    #[arg(long)]
    delta_steps: Option<String>,
    /// Comma-separated subset of gap,q_leg,q_rung,corr,ggm or "all"
    #[arg(long)]
    observables: Option<String>,
    #[arg(long)]
    cache_dir: Option<String>,
    /// Worker threads, 0 uses every core
    #[arg(long)]
    workers: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    /// Largest part size searched for GGM, "none" searches every bipartition
    #[arg(long)]
    ggm_max_part: Option<String>,
    /// Fill the solve_seconds column
    #[arg(long)]
    record_timing: bool,
}

impl Common {
    fn config(&self) -> Result<ScanConfig, Error> {
        let flags = [
            ("--n-rungs", &self.n_rungs),
            ("--mode", &self.mode),
            ("--alpha-min", &self.alpha_min),
            ("--alpha-max", &self.alpha_max),
            ("--alpha-steps", &self.alpha_steps),
            ("--delta-min", &self.delta_min),
            ("--delta-max", &self.delta_max),
            ("--delta-steps", &self.delta_steps),
            ("--observables", &self.observables),
            ("--cache-dir", &self.cache_dir),
            ("--workers", &self.workers),
            ("--seed", &self.seed),
            ("--tol", &self.tol),
            ("--ggm-max-part", &self.ggm_max_part),
        ];
        let mut overrides: Vec<ConfigOverride> = flags
            .iter()
            .filter_map(|(flag, v)| v.as_ref().map(|v| ConfigOverride::flag(flag, v.clone())))
            .collect();
        if self.record_timing {
            overrides.push(ConfigOverride::flag("--record-timing", "true"));
        }
        load_config(self.config.as_deref(), &overrides)
    }
}

fn heatmap_path(csv: &Path, column: &str) -> PathBuf {
    let stem = csv.file_stem().and_then(|s| s.to_str()).unwrap_or("scan");
    csv.with_file_name(format!("{stem}_{column}.svg"))
}

fn scan(common: &Common, out: &Path, heatmap: Option<&str>) -> Result<ExitCode, Error> {
    let config = common.config()?;
    info!(
        "scanning {} points at N = {} ({} legs)",
        config.n_points(),
        config.n_sites(),
        config.mode
    );
    let records = run_phase_scan(&config)?;
    write_csv(&records, out)?;
    if let Some(column) = heatmap {
        write_heatmap(&records, column, config.mode, &heatmap_path(out, column))?;
    }
    let failed = records.iter().filter(|r| r.failed).count();
    info!("wrote {} ({failed} failed points)", out.display());
    Ok(if failed > 0 { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn opt(x: Option<f64>) -> String {
    x.map(format_number).unwrap_or_else(|| "-".to_string())
}

fn point(common: &Common, alpha: f64, delta: f64) -> Result<ExitCode, Error> {
    let config = common.config()?;
    let spec = couplings_from_point(&config, alpha, delta)?;
    let cache = config.cache_dir.as_ref().map(StateCache::open).transpose()?;
    let opts = PointOptions {
        observables: config.observables,
        solver: config.solver.clone(),
        ggm_max_part: config.ggm_max_part,
        cache: cache.as_ref(),
        record_timing: true,
    };
    let mut r = evaluate_point_with(&spec, &opts);
    r.alpha = alpha;
    let mut s = String::new();
    let _ = writeln!(s, "mode            {}", config.mode);
    let _ = writeln!(s, "n_sites         {}", r.n_sites);
    let _ = writeln!(s, "alpha           {}", format_number(alpha));
    let _ = writeln!(s, "delta           {}", format_number(delta));
    let _ = writeln!(s, "j_leg           {}", format_number(r.j_leg));
    let _ = writeln!(s, "j_rung          {}", format_number(r.j_rung));
    if r.failed {
        let _ = writeln!(s, "failed          {}", r.failure.as_deref().unwrap_or("unknown"));
    } else {
        for (name, v) in [
            ("e0", r.e0),
            ("e1", r.e1),
            ("gap_per_spin", r.gap_per_spin),
            ("q_leg", r.q_leg),
            ("q_leg_dev", r.q_leg_dev),
            ("q_rung", r.q_rung),
            ("q_rung_dev", r.q_rung_dev),
            ("cxx_leg", r.cxx_leg),
            ("czz_leg", r.czz_leg),
            ("cxx_rung", r.cxx_rung),
            ("czz_rung", r.czz_rung),
            ("corr_dev", r.corr_dev),
            ("xy_isotropy_dev", r.xy_isotropy_dev),
            ("ggm", r.ggm),
        ] {
            let _ = writeln!(s, "{name:<16}{}", opt(v));
        }
        if let Some(mask) = r.ggm_argmax {
            let _ = writeln!(s, "ggm_argmax      {mask:#x}");
            let _ = writeln!(s, "ggm_lower_bound {}", r.ggm_lower_bound);
        }
        let _ = writeln!(s, "degenerate      {}", r.degenerate);
        let _ = writeln!(s, "residual0       {}", opt(r.residual0));
        let _ = writeln!(s, "residual1       {}", opt(r.residual1));
        let _ = writeln!(s, "iterations      {}", r.iterations.map_or("-".into(), |i| i.to_string()));
        let _ = writeln!(s, "cache_hit       {}", r.cache_hit);
    }
    let _ = writeln!(s, "solve_seconds   {}", opt(r.solve_seconds));
    print!("{s}");
    Ok(if r.failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn scaling_csv(rows: &[ScalingRow]) -> String {
    let mut s = String::from("n_sites,delta,gap_per_spin,ggm,degenerate,failed\n");
    for r in rows {
        let num = |x: Option<f64>| x.map(format_number).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.n_sites,
            format_number(r.delta),
            num(r.gap_per_spin),
            num(r.ggm),
            r.degenerate as u8,
            r.failed as u8
        );
    }
    s
}

fn scaling(
    common: &Common,
    alpha: f64,
    deltas: &[f64],
    sizes: &[usize],
    out: Option<&Path>,
) -> Result<ExitCode, Error> {
    let config = common.config()?;
    let rows = run_scaling_study(alpha, deltas, sizes, &config.solver, config.workers)?;
    let text = scaling_csv(&rows);
    match out {
        Some(path) => std::fs::write(path, &text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?,
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    let failed = rows.iter().any(|r| r.failed);
    Ok(if failed { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn render(input: &Path, column: &str, mode: LegMode, out: &Path) -> Result<ExitCode, Error> {
    let records = read_csv(input)?;
    write_heatmap(&records, column, mode, out)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Scan { common, out, heatmap } => scan(common, out, heatmap.as_deref()),
        Command::Point { common, alpha, delta } => point(common, *alpha, *delta),
        Command::Scaling {
            common,
            alpha,
            deltas,
            sizes,
            out,
        } => scaling(common, *alpha, deltas, sizes, out.as_deref()),
        Command::Render {
            input,
            column,
            mode,
            out,
        } => render(input, column, *mode, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

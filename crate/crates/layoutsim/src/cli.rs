//! Command-line front end.
//!
//! Every flag can also be set through a `LAYOUTSIM_*` environment variable;
//! an explicit flag wins.

use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use layoutsim_core::score::score_pair_with;
use layoutsim_core::{RewardWeights, ScoreOptions, ScoreReport};

use crate::bridge::BridgeConfig;
use crate::corpus::{corpus_stats, filter_corpus, BinSpec, CorpusStats, FilterConfig, FilterManifest, MeanStd};
use crate::json::parse_snapshot;
use crate::service::{self, ServiceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "layoutsim", version, about = "Layout and style similarity of rendered pages")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "LAYOUTSIM_FORMAT", value_enum, default_value = "json")]
    pub format: Format,
    /// Worker threads (corpus commands and the service pool).
    #[arg(long, global = true, env = "LAYOUTSIM_WORKERS")]
    pub workers: Option<usize>,
    /// Weight of RDA in the reward.
    #[arg(long, global = true, env = "LAYOUTSIM_ALPHA", default_value_t = 0.6)]
    pub alpha: f64,
    /// Weight of GDA in the reward.
    #[arg(long, global = true, env = "LAYOUTSIM_BETA", default_value_t = 0.2)]
    pub beta: f64,
    /// Weight of SDA in the reward.
    #[arg(long, global = true, env = "LAYOUTSIM_GAMMA", default_value_t = 0.2)]
    pub gamma: f64,
    /// Slack in pixels when testing alignment-axis crossings.
    #[arg(long, global = true, env = "LAYOUTSIM_ALIGN_TOLERANCE", default_value_t = 0.0)]
    pub align_tolerance: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a candidate snapshot against a reference snapshot.
    Score {
        candidate: PathBuf,
        reference: PathBuf,
        /// Include per-pair diagnostics.
        #[arg(long, short, env = "LAYOUTSIM_VERBOSE")]
        verbose: bool,
    },
    /// Tag count, DOM depth and Group Count statistics of a snapshot corpus.
    Stats {
        dir: PathBuf,
        /// Group-Count bin edges (`fine`, `coarse`, or e.g. `0,50,100`).
        #[arg(long, env = "LAYOUTSIM_BINS", default_value = "fine")]
        bins: BinSpec,
    },
    /// Copy snapshots that pass the height and style-quality filters.
    Filter {
        dir: PathBuf,
        out_dir: PathBuf,
        #[arg(long, env = "LAYOUTSIM_MAX_HEIGHT", default_value_t = crate::corpus::DEFAULT_MAX_HEIGHT)]
        max_height: f64,
        #[arg(long, env = "LAYOUTSIM_STYLE_THRESHOLD", default_value_t = crate::corpus::DEFAULT_STYLE_THRESHOLD)]
        style_threshold: f64,
        /// Also write the manifest to this file.
        #[arg(long, env = "LAYOUTSIM_MANIFEST")]
        manifest: Option<PathBuf>,
    },
    /// Run the HTTP reward service.
    Serve {
        #[arg(long, env = "LAYOUTSIM_HOST", default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, env = "LAYOUTSIM_PORT", default_value_t = 8080)]
        port: u16,
        /// Command that renders an HTML file (path appended) to snapshot JSON.
        #[arg(long, env = "LAYOUTSIM_BRIDGE")]
        bridge: Option<String>,
        #[arg(long, env = "LAYOUTSIM_BRIDGE_TIMEOUT_MS", default_value_t = 60_000)]
        bridge_timeout_ms: u64,
    },
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

impl Cli {
    fn weights(&self) -> Result<RewardWeights, layoutsim_core::Error> {
        RewardWeights::new(self.alpha, self.beta, self.gamma)
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let weights = match cli.weights() {
        Ok(w) => w,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INVALID;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_IO;
        }
    };
    match &cli.command {
        Command::Score { candidate, reference, verbose } => {
            let options = ScoreOptions {
                weights,
                alignment_tolerance: cli.align_tolerance,
                verbose: *verbose,
                ..ScoreOptions::default()
            };
            cmd_score(candidate, reference, &options, cli.format, out, err)
        }
        Command::Stats { dir, bins } => match pool.install(|| corpus_stats(dir, bins)) {
            Ok(stats) => emit(out, err, cli.format, &stats, render_stats),
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", dir.display());
                EXIT_IO
            }
        },
        Command::Filter { dir, out_dir, max_height, style_threshold, manifest } => {
            let config = FilterConfig { max_height: *max_height, style_threshold: *style_threshold };
            match pool.install(|| filter_corpus(dir, out_dir, &config)) {
                Ok(m) => {
                    if let Some(path) = manifest {
                        let body = serde_json::to_vec_pretty(&m).expect("manifest serializes");
                        if let Err(e) = std::fs::write(path, body) {
                            let _ = writeln!(err, "error: {}: {e}", path.display());
                            return EXIT_IO;
                        }
                    }
                    emit(out, err, cli.format, &m, render_manifest)
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {}: {e}", dir.display());
                    EXIT_IO
                }
            }
        }
        Command::Serve { host, port, bridge, bridge_timeout_ms } => {
            let config = ServiceConfig {
                addr: SocketAddr::new(*host, *port),
                workers: cli.workers.unwrap_or(ServiceConfig::default().workers),
                weights,
                alignment_tolerance: cli.align_tolerance,
                bridge: bridge
                    .clone()
                    .map(|command| BridgeConfig { command, timeout: Duration::from_millis(*bridge_timeout_ms) }),
                ..ServiceConfig::default()
            };
            let runtime = match tokio::runtime::Runtime::new() {
                Ok(r) => r,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return EXIT_IO;
                }
            };
            match runtime.block_on(service::serve(config)) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e:#}");
                    EXIT_IO
                }
            }
        }
    }
}

fn cmd_score(
    candidate: &Path,
    reference: &Path,
    options: &ScoreOptions,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut pages = Vec::with_capacity(2);
    for path in [candidate, reference] {
        let bytes = match std::fs::read(path) {
            Ok(b) => b,
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_IO;
            }
        };
        match parse_snapshot(&bytes) {
            Ok(p) => pages.push(p),
            Err(e) => {
                let _ = writeln!(err, "error: {}: {e}", path.display());
                return EXIT_INVALID;
            }
        }
    }
    match score_pair_with(&pages[0], &pages[1], options) {
        Ok(report) => emit(out, err, format, &report, render_report),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn emit<T: serde::Serialize>(
    out: &mut dyn Write,
    err: &mut dyn Write,
    format: Format,
    value: &T,
    table: fn(&T) -> String,
) -> i32 {
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize"),
        Format::Table => table(value),
    };
    match writeln!(out, "{text}") {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
    }
}

fn render_report(r: &ScoreReport) -> String {
    let d = &r.diagnostics;
    let mut s = String::new();
    for (name, v) in [("rda", r.rda), ("gda", r.gda), ("sda", r.sda)] {
        s.push_str(&format!("{name:<8}{v:>12.4}\n"));
    }
    s.push_str(&format!("{:<8}{:>12.6}\n", "reward", r.reward));
    s.push_str(&format!(
        "{:<8}{:>12}   ({} text, {} geometry)\n",
        "matched",
        format!("{}/{}", d.matched, d.reference_elements),
        d.text_matches,
        d.geometry_matches
    ));
    if let Some(pairs) = &d.pairs {
        s.push_str(&format!("\n{:>5} {:>5} {:<9} {:>7} {:>9} {:>9} {:>6}\n", "ref", "cand", "method", "text", "rda", "style", "group"));
        for p in pairs {
            s.push_str(&format!(
                "{:>5} {:>5} {:<9} {:>7.3} {:>9.4} {:>9.4} {:>6}\n",
                p.reference,
                p.candidate,
                format!("{:?}", p.method).to_lowercase(),
                p.text_sim,
                p.rda_score,
                p.style_sim,
                p.group_match
            ));
        }
    }
    s.trim_end().to_string()
}

fn cell(m: &MeanStd) -> String {
    format!("{:.2}±{:.2}", m.mean, m.std)
}

fn render_stats(st: &CorpusStats) -> String {
    let mut s = format!("{:<10} {:>7} {:>18} {:>14} {:>18}\n", "bin", "pages", "tag_count", "dom_depth", "group_count");
    for row in &st.bins {
        s.push_str(&format!(
            "{:<10} {:>7} {:>18} {:>14} {:>18}\n",
            row.bin,
            row.pages,
            cell(&row.tag_count),
            cell(&row.dom_depth),
            cell(&row.group_count)
        ));
    }
    s.push_str(&format!(
        "{:<10} {:>7} {:>18} {:>14} {:>18}\n",
        "all",
        st.pages,
        cell(&st.tag_count),
        cell(&st.dom_depth),
        cell(&st.group_count)
    ));
    s.push_str(&format!("skipped {}", st.skipped));
    s
}

fn render_manifest(m: &FilterManifest) -> String {
    let mut s = format!("kept {}  dropped {}\n", m.kept.len(), m.dropped.len());
    for d in &m.dropped {
        s.push_str(&format!("{:<40} {:<7} {}\n", d.file, serde_json::to_value(d.reason).unwrap().as_str().unwrap_or(""), d.detail));
    }
    s.trim_end().to_string()
}

//! `apexobs`: command-line front end for the obstruction, cactus and
//! enumeration routines.

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use apexobs_core::cacti::{central_set, generate_z, verify_holiness};
use apexobs_core::io::{read_edge_lists, read_graph6_lines, to_edge_list, to_graph6};
use apexobs_core::obstruction::{
    load_catalog, load_catalog_from, search_obstructions_in, SearchOptions,
};
use apexobs_core::singularity::analyse;
use apexobs_core::species::{solve_system, DEFAULT_ORDER};
use apexobs_core::{
    apex, is_in_class, is_minor, make_named, min_apex_size, verify_catalog, ClassId, Graph,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Largest `k` accepted by the verification workflows without `--allow-large-k`.
const MAX_ROUTINE_K: usize = 3;

#[derive(Parser)]
#[command(
    name = "apexobs",
    version,
    about = "Minor obstructions for k-apex sub-unicyclic graphs"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for search and generation (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Graph format for input and output.
    #[arg(long, global = true, value_enum, default_value_t = Format::G6)]
    format: Format,
    /// Report wall time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    G6,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Test class membership of each input graph.
    Check {
        #[arg(long, value_parser = parse_class)]
        class: ClassId,
        /// Input files (stdin when absent).
        files: Vec<PathBuf>,
    },
    /// Test whether H is a minor of G. Each argument is a file or a graph name such as K4, C5, Z, 3K3.
    Minor { h: String, g: String },
    /// Smallest vertex deletion into a class, or a yes/no answer with --k.
    Apex {
        #[arg(long, value_parser = parse_class)]
        class: ClassId,
        #[arg(long)]
        k: Option<usize>,
        files: Vec<PathBuf>,
    },
    /// Verify a shipped (or $APEXOBS_DATA) obstruction catalog.
    VerifyCatalog {
        #[arg(long)]
        k: usize,
        /// Catalog directory, overriding $APEXOBS_DATA.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        allow_large_k: bool,
    },
    /// Exhaustive obstruction search.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        connected: bool,
        /// Restrict to graphs of this class, e.g. cactus.
        #[arg(long, value_parser = parse_class)]
        within: Option<ClassId>,
        /// Time budget in seconds; the result is marked incomplete when hit.
        #[arg(long)]
        budget: Option<f64>,
        #[arg(long)]
        allow_large_k: bool,
    },
    /// Generate the butterfly cacti Z_k.
    GenCacti {
        #[arg(long)]
        k: usize,
        /// Write z{k}.g6 and z{k}.json here instead of printing.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Also check that Z_k is an obstruction family at level k-1.
        #[arg(long)]
        verify: bool,
    },
    /// Coefficients of T and G.
    Enumerate {
        /// Truncation order.
        #[arg(long = "N", visible_alias = "n", default_value_t = 10)]
        order: usize,
    },
    /// Saddle point, expansion coefficients and asymptotic constants.
    Asymptotics {
        #[arg(long = "N", default_value_t = 256)]
        order: usize,
        #[arg(long, default_value_t = 1e-13)]
        tol: f64,
    },
}

fn parse_class(s: &str) -> Result<ClassId, String> {
    s.parse::<ClassId>().map_err(|e| e.to_string())
}

/// Distinguishes bad input (exit 2) from failed verification (exit 1).
enum Failure {
    Usage(anyhow::Error),
    Verification(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: String) -> Failure {
    Failure::Usage(anyhow::anyhow!(msg))
}

struct Ctx {
    json: bool,
    timing: bool,
    format: Format,
    out: io::StdoutLock<'static>,
}

impl Ctx {
    fn emit_json<T: Serialize>(&mut self, v: &T) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut self.out, v)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn graph_text(&self, g: &Graph) -> String {
        match self.format {
            Format::G6 => to_graph6(g),
            Format::Edgelist => to_edge_list(g).trim_end().to_string(),
        }
    }
}

fn parse_graphs(text: &str, format: Format) -> anyhow::Result<Vec<Graph>> {
    Ok(match format {
        Format::G6 => read_graph6_lines(text)?,
        Format::Edgelist => read_edge_lists(text)?,
    })
}

fn read_inputs(files: &[PathBuf], format: Format) -> anyhow::Result<Vec<Graph>> {
    if files.is_empty() {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return parse_graphs(&text, format);
    }
    let mut out = Vec::new();
    for f in files {
        let text =
            std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        out.extend(
            parse_graphs(&text, format).with_context(|| format!("parsing {}", f.display()))?,
        );
    }
    Ok(out)
}

/// A graph name, or a file holding exactly one graph.
fn graph_arg(arg: &str, format: Format) -> anyhow::Result<Graph> {
    let path = PathBuf::from(arg);
    if path.exists() {
        let gs = read_inputs(&[path], format)?;
        match gs.as_slice() {
            [g] => Ok(*g),
            _ => bail!("{arg}: expected exactly one graph, found {}", gs.len()),
        }
    } else {
        make_named(arg).with_context(|| format!("{arg} is neither a file nor a graph name"))
    }
}

fn guard_k(k: usize, allow: bool) -> anyhow::Result<()> {
    if k > MAX_ROUTINE_K && !allow {
        bail!("k={k} is above {MAX_ROUTINE_K}; the apex tests get expensive, pass --allow-large-k to proceed");
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckRow {
    graph: String,
    class: ClassId,
    member: bool,
}

#[derive(Serialize)]
struct ApexRow {
    graph: String,
    class: ClassId,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    within_k: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    deletion: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct CactiManifest {
    k: usize,
    count: usize,
    /// Central vertex ids of each graph, in stream order.
    central: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct CactiOutput {
    #[serde(flatten)]
    manifest: CactiManifest,
    graphs: Vec<String>,
}

fn vertices(mask: u32) -> Vec<usize> {
    apexobs_core::graph::bits(mask).collect()
}

fn run(cli: Cli) -> Outcome {
    let mut ctx = Ctx {
        json: cli.json,
        timing: cli.timing,
        format: cli.format,
        out: io::stdout().lock(),
    };
    match cli.command {
        Command::Check { class, files } => {
            let rows: Vec<CheckRow> = read_inputs(&files, cli.format)?
                .iter()
                .map(|g| CheckRow {
                    graph: to_graph6(g),
                    class,
                    member: is_in_class(g, class),
                })
                .collect();
            if ctx.json {
                ctx.emit_json(&rows)?;
            } else {
                for r in &rows {
                    writeln!(ctx.out, "{}", r.member)?;
                }
            }
        }
        Command::Minor { h, g } => {
            let (h, g) = (graph_arg(&h, cli.format)?, graph_arg(&g, cli.format)?);
            let ans = is_minor(&h, &g);
            if ctx.json {
                ctx.emit_json(
                    &serde_json::json!({ "h": to_graph6(&h), "g": to_graph6(&g), "minor": ans }),
                )?;
            } else {
                writeln!(ctx.out, "{ans}")?;
            }
        }
        Command::Apex { class, k, files } => {
            let rows: Vec<ApexRow> = read_inputs(&files, cli.format)?
                .iter()
                .map(|g| match k {
                    Some(k) => {
                        let set = apex::apex_set_at_most(g, class, k);
                        ApexRow {
                            graph: to_graph6(g),
                            class,
                            k: Some(k),
                            within_k: Some(set.is_some()),
                            size: None,
                            deletion: set.map(vertices),
                        }
                    }
                    None => {
                        let s = min_apex_size(g, class);
                        let set = apex::apex_sets_of_size(g, class, s).into_iter().next();
                        ApexRow {
                            graph: to_graph6(g),
                            class,
                            k: None,
                            within_k: None,
                            size: Some(s),
                            deletion: set.map(vertices),
                        }
                    }
                })
                .collect();
            if ctx.json {
                ctx.emit_json(&rows)?;
            } else {
                for r in &rows {
                    let del = r
                        .deletion
                        .as_ref()
                        .map_or("-".to_string(), |d| format!("{d:?}"));
                    match (r.within_k, r.size) {
                        (Some(w), _) => writeln!(ctx.out, "{w} {del}")?,
                        (None, Some(s)) => writeln!(ctx.out, "{s} {del}")?,
                        _ => unreachable!(),
                    }
                }
            }
        }
        Command::VerifyCatalog {
            k,
            data,
            allow_large_k,
        } => {
            guard_k(k, allow_large_k)?;
            let mut cat = match data {
                Some(dir) => load_catalog_from(&dir, k)?,
                None => load_catalog(k)?,
            };
            let mut report = verify_catalog(&mut cat);
            if !ctx.timing {
                report.millis = 0.0;
                for r in &mut report.records {
                    r.millis = 0.0;
                }
            }
            if ctx.json {
                ctx.emit_json(&report)?;
            } else {
                for r in &report.records {
                    let extra = match (r.failed_step, &r.witness) {
                        (Some(step), Some(w)) => format!(" (fails {step}, witness {w})"),
                        (Some(step), None) => format!(" (fails {step})"),
                        _ => String::new(),
                    };
                    writeln!(
                        ctx.out,
                        "{} n={} m={} {:?}{extra}",
                        r.name, r.n, r.m, r.status
                    )?;
                }
                for (a, b) in &report.duplicates {
                    writeln!(ctx.out, "duplicate: {a} and {b}")?;
                }
                writeln!(ctx.out, "{}/{} verified", report.verified, report.total)?;
            }
            if !report.ok() {
                return Err(Failure::Verification(format!(
                    "{} refuted, {} duplicate pairs",
                    report.refuted.len(),
                    report.duplicates.len()
                )));
            }
        }
        Command::Search {
            k,
            max_n,
            connected,
            within,
            budget,
            allow_large_k,
        } => {
            guard_k(k, allow_large_k)?;
            if max_n > apexobs_core::graph::MAX_VERTICES {
                return Err(usage(format!(
                    "--max-n is limited to {}",
                    apexobs_core::graph::MAX_VERTICES
                )));
            }
            let opts = SearchOptions {
                connected_only: connected,
                within,
                budget: budget.map(Duration::from_secs_f64),
                ..SearchOptions::new(k, max_n)
            };
            let cat = search_obstructions_in(&opts);
            if ctx.json {
                ctx.emit_json(&cat)?;
            } else {
                writeln!(ctx.out, "# {}", cat.source_note)?;
                for r in &cat.records {
                    writeln!(ctx.out, "# {} n={} m={}", r.name, r.graph.n(), r.graph.m())?;
                    let text = ctx.graph_text(&r.graph);
                    writeln!(ctx.out, "{text}")?;
                }
                writeln!(
                    ctx.out,
                    "# {} obstructions{}",
                    cat.records.len(),
                    if cat.claimed_complete {
                        ""
                    } else {
                        " (incomplete)"
                    }
                )?;
            }
        }
        Command::GenCacti { k, out_dir, verify } => {
            let zs = generate_z(k)?;
            let mut central = Vec::with_capacity(zs.len());
            for b in &zs {
                if central_set(b)? != b.central {
                    return Err(Failure::Verification(format!(
                        "central set of {} is not unique",
                        to_graph6(&b.graph)
                    )));
                }
                central.push(b.central_vertices());
            }
            let manifest = CactiManifest {
                k,
                count: zs.len(),
                central,
            };
            let stream: String = zs.iter().map(|b| ctx.graph_text(&b.graph) + "\n").collect();
            match out_dir {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)?;
                    let ext = if cli.format == Format::G6 {
                        "g6"
                    } else {
                        "txt"
                    };
                    std::fs::write(dir.join(format!("z{k}.{ext}")), &stream)?;
                    std::fs::write(
                        dir.join(format!("z{k}.json")),
                        serde_json::to_string_pretty(&manifest)? + "\n",
                    )?;
                    writeln!(ctx.out, "{} graphs written to {}", zs.len(), dir.display())?;
                }
                None if ctx.json => {
                    let graphs: Vec<String> = zs.iter().map(|b| to_graph6(&b.graph)).collect();
                    ctx.emit_json(&CactiOutput { manifest, graphs })?
                }
                None => write!(ctx.out, "{stream}")?,
            }
            if verify {
                let rep = verify_holiness(k - 1, None)?;
                eprintln!(
                    "level {}: {}/{} members are obstructions",
                    rep.k, rep.passed, rep.members
                );
                if !rep.ok() {
                    return Err(Failure::Verification(format!(
                        "failures: {:?}",
                        rep.failures
                    )));
                }
            }
        }
        Command::Enumerate { order } => {
            if order == 0 {
                return Err(usage("--N must be at least 1".into()));
            }
            let rows = solve_system(order)?.table();
            if ctx.json {
                ctx.emit_json(&rows)?;
            } else {
                writeln!(ctx.out, "n,t_n,g_n")?;
                for r in &rows {
                    writeln!(ctx.out, "{},{},{}", r.n, r.t, r.g)?;
                }
            }
        }
        Command::Asymptotics { order, tol } => {
            if order < DEFAULT_ORDER {
                return Err(usage(format!("--N must be at least {DEFAULT_ORDER}")));
            }
            let rep = analyse(order, tol).map_err(|e| Failure::Verification(e.to_string()))?;
            if ctx.json {
                ctx.emit_json(&rep)?;
            } else {
                let o = &mut ctx.out;
                writeln!(o, "N         {}", rep.n)?;
                writeln!(o, "rho       {:.12}", rep.rho)?;
                writeln!(o, "1/rho     {:.10}", rep.rho_inv)?;
                writeln!(o, "y0        {:.12}", rep.y0)?;
                writeln!(o, "h0        {:.12}", rep.h0)?;
                writeln!(o, "h1        {:.12}", rep.h1)?;
                writeln!(o, "q1        {:.12}", rep.q1)?;
                for (name, e) in [("T", &rep.c_t), ("G", &rep.c_g)] {
                    writeln!(
                        o,
                        "c_{name}       {:.8} (+-{:.1e}), c*Gamma(-3/2) = {:.6}",
                        e.c, e.tolerance, e.expansion_coefficient
                    )?;
                }
                writeln!(
                    o,
                    "fit       n in [{}, {}]",
                    rep.fit_window.0, rep.fit_window.1
                )?;
                writeln!(
                    o,
                    "residuals saddle ({:.1e}, {:.1e}), Z1 {:.1e}",
                    rep.residuals.saddle.0, rep.residuals.saddle.1, rep.residuals.z1
                )?;
                writeln!(
                    o,
                    "ratio     1/rho from coefficient ratios of T: {:.6}",
                    rep.residuals.ratio_radius_t
                )?;
                if let Some(s) = rep.residuals.log_slope_g {
                    writeln!(o, "slope     log(g_n rho^n) vs log n on [128, 256]: {s:.4}")?;
                }
                let bs = &rep.back_substitution;
                writeln!(
                    o,
                    "fit of T_diamond near rho: X {:.6}, X^2 {:.6}, X^3 {:.6}",
                    bs.fitted[0], bs.fitted[1], bs.fitted[2]
                )?;
                if !bs.q1_consistent {
                    writeln!(o, "note      q1 from the closed form does not match the fitted X^2 coefficient")?;
                }
            }
        }
    }
    ctx.out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let timing = cli.timing;
    let start = Instant::now();
    let result = run(cli);
    if timing {
        eprintln!("elapsed {:.3} s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

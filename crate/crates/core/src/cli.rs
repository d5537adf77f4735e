//! Command-line front end.
//!
//! Every command writes one JSON object to stdout (or CSV with
//! `--format csv` where a table makes sense). Keys are sorted and floats
//! are rounded to 12 significant digits, so identical parameters give
//! byte-identical output. Errors go to stderr as
//! `{"error": CODE, "detail": message}`.
//!
//! Exit codes: 0 success (including `unknown` outcomes), 1 domain error,
//! 2 usage error, 3 budget or limit exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::constructions::{family_census, line_word_tile, slab_tile, SlabColoring, Word, DEFAULT_FAMILY_BUDGET};
use crate::domain::{parse_tile, Certificate, PeriodCertificate, Point, Tile};
use crate::entropy_bound::{
    best_integer_rate, endpoint_lemma_gap, entropy_upper, interpolated_rate, jensen_max_product, log2_cbrt3,
    packing_slack, shearer_bound_from_instance, total_count_log2, BoundParams,
};
use crate::error::{Error, Result};
use crate::lattice_tiler::{
    decide_zd, find_lattice_tiling, tiles_torus, SearchBudget, TorusSpec, DEFAULT_MAX_CELLS, DEFAULT_MAX_HNF,
};
use crate::line_tiler::{
    count_box, count_ground_set, decide_line_with, minimal_period, CensusOptions, CensusReport, LineOptions,
    DEFAULT_MAX_N, DEFAULT_STATE_CAP,
};
use crate::stats::{component_stats, density_report, marginal_frequencies, sample_uniform, window_frequencies};

/// Version of the JSON layout.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "tilecensus", version, about = "Decide, count and construct translational tiles")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Worker threads; 0 uses every core. Never changes numeric output.
    #[arg(long, global = true, env = "TILECENSUS_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Largest box side the census will enumerate.
    #[arg(long, global = true, env = "TILECENSUS_MAX_N", default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Largest torus or region volume, in cells.
    #[arg(long, global = true, env = "TILECENSUS_BUDGET_CELLS", default_value_t = DEFAULT_MAX_CELLS)]
    pub budget_cells: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write the run manifest, with timestamps, to this file.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Decide whether a one-dimensional set tiles Z.
    Decide(DecideArgs),
    /// Minimal period of a tiling of Z by a one-dimensional tile.
    Period(TileArg),
    /// Count the subsets of [0, n) that tile Z.
    Census(CensusArgs),
    /// Count the subsets of a finite set of integers that tile Z.
    CensusSet(CensusSetArgs),
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Search for an exact cover of a torus.
    Torus(TorusArgs),
    /// Tri-state tiling decision in any dimension.
    DecideZd(DecideZdArgs),
    #[command(subcommand)]
    Construct(ConstructCmd),
    #[command(subcommand)]
    Bound(BoundCmd),
    #[command(subcommand)]
    Stats(StatsCmd),
}

#[derive(Args, Debug, Serialize)]
pub struct TileArg {
    /// Tile JSON, inline or as a file path.
    #[arg(long)]
    pub tile: String,
}

#[derive(Args, Debug, Serialize)]
pub struct DecideArgs {
    #[arg(long)]
    pub tile: String,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    pub state_cap: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub min_size: Option<usize>,
    #[arg(long)]
    pub max_size: Option<usize>,
    /// Also write the CSV table to this file.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CensusSetArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub elements: Vec<i64>,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum LatticeCmd {
    /// First sublattice of index |S| that S is a transversal of.
    Find {
        #[arg(long)]
        tile: String,
        #[arg(long, default_value_t = DEFAULT_MAX_HNF)]
        max_candidates: u64,
    },
}

#[derive(Args, Debug, Serialize)]
pub struct TorusArgs {
    #[arg(long)]
    pub tile: String,
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<i64>,
    /// Cell budget for this query; defaults to --budget-cells.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = SearchBudget::default().max_placements)]
    pub max_placements: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DecideZdArgs {
    #[arg(long)]
    pub tile: String,
    /// Cell budget for each torus; defaults to --budget-cells.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long, default_value_t = SearchBudget::default().max_placements)]
    pub max_placements: u64,
    #[arg(long, default_value_t = SearchBudget::default().max_tori)]
    pub max_tori: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_HNF)]
    pub max_candidates: u64,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum ConstructCmd {
    /// Word tile {a_i t + i} in [0, 3t).
    Word {
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', conflicts_with = "random")]
        letters: Option<Vec<u8>>,
        #[arg(long, requires = "seed")]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Slab tile with its lattice certificate.
    Slab {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',')]
        u: Option<Vec<i64>>,
        /// JSON array of layer values, inline or as a file path.
        #[arg(long, conflicts_with = "random")]
        coloring: Option<String>,
        #[arg(long, requires = "seed")]
        random: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Size of a construction family and its number of distinct tiles.
    FamilyCensus {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_FAMILY_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum BoundCmd {
    /// Per-cell rate at ratio rho.
    Rate {
        #[arg(long)]
        rho: f64,
    },
    /// Largest product of m nonnegative integers summing to t.
    Jensen {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        t: u64,
    },
    /// Endpoint gap of the interpolation lemma.
    Lemma {
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long, default_value_t = 10_000)]
        grid: u64,
    },
    /// log2 of the assembled count bound.
    Total {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 1.0)]
        seq_const: f64,
    },
    /// Entropy bound for one translation sequence.
    Entropy {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long)]
        k: Option<u64>,
        /// Number of translates; defaults to 3 k^d.
        #[arg(long)]
        ell: Option<u64>,
        #[arg(long)]
        torus: bool,
    },
    /// Cover sizes and entropy bound of a concrete tiling.
    Shearer {
        #[arg(long)]
        tile: String,
        /// JSON list of points, inline or as a file path.
        #[arg(long)]
        translations: String,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        torus: bool,
    },
}

#[derive(Subcommand, Debug, Serialize)]
pub enum StatsCmd {
    Density {
        #[arg(long)]
        n: usize,
    },
    Marginals {
        #[arg(long)]
        n: usize,
    },
    Windows {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: usize,
    },
    Components {
        #[arg(long)]
        tile: String,
    },
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) | Error::LimitExceeded { .. } => 3,
        _ => 1,
    }
}

/// Rounds every float in `v` to 12 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
            *v = json!(r);
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn round12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// What a command produced, before the manifest is attached.
struct Output {
    value: Value,
    csv: Option<String>,
    seed: Option<u64>,
}

impl Output {
    fn json(value: Value) -> Output {
        Output { value, csv: None, seed: None }
    }
}

fn read_arg(arg: &str) -> Result<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("cannot read {arg}: {e}")))
}

fn load_tile(arg: &str) -> Result<Tile> {
    parse_tile(&read_arg(arg)?)
}

fn load_json<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    let text = read_arg(arg)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: format!("{what}: {e}"),
    })
}

fn csv_table(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).map_err(|e| Error::Invalid(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn census_value(r: &CensusReport) -> Value {
    json!({
        "n": r.n,
        "d": 1,
        "total": r.total,
        "by_size": r.by_size.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<Map<_, _>>(),
        "unknown": r.unknown,
        "ratio": r.ratio,
    })
}

fn census_csv(r: &CensusReport) -> Result<String> {
    let mut rows = vec![vec!["n".into(), "d".into(), "size".into(), "count".into()]];
    for (size, count) in &r.by_size {
        rows.push(vec![r.n.to_string(), "1".into(), size.to_string(), count.to_string()]);
    }
    rows.push(vec![r.n.to_string(), "1".into(), "ALL".into(), r.total.to_string(), round12(r.ratio).to_string()]);
    csv_table(rows)
}

fn census_options(g: &GlobalArgs) -> CensusOptions {
    CensusOptions { max_n: g.max_n, jobs: g.jobs, ..CensusOptions::default() }
}

fn with_tile(mut v: Value, tile: &Tile) -> Value {
    v.as_object_mut().expect("object").insert("tile".into(), tile.to_value());
    v
}

fn execute(cmd: &Command, g: &GlobalArgs) -> Result<Output> {
    let census_opts = census_options(g);
    match cmd {
        Command::Decide(a) => {
            let tile = load_tile(&a.tile)?;
            let d = decide_line_with(&tile, LineOptions { state_cap: a.state_cap })?;
            Ok(Output::json(with_tile(d.to_value(), &tile)))
        }
        Command::Period(a) => {
            let tile = load_tile(&a.tile)?;
            Ok(Output::json(json!({"tile": tile.to_value(), "period": minimal_period(&tile)?})))
        }
        Command::Census(a) => {
            let mut opts = census_opts;
            if a.min_size.is_some() || a.max_size.is_some() {
                opts = opts.with_sizes(a.min_size.unwrap_or(1)..=a.max_size.unwrap_or(usize::MAX));
            }
            let r = count_box(a.n, &opts)?;
            let csv = census_csv(&r)?;
            if let Some(path) = &a.csv {
                std::fs::write(path, &csv)
                    .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Output { value: census_value(&r), csv: Some(csv), seed: None })
        }
        Command::CensusSet(a) => {
            let r = count_ground_set(&a.elements, &census_opts)?;
            let mut v = census_value(&r);
            v["elements"] = json!(a.elements);
            let csv = census_csv(&r)?;
            Ok(Output { value: v, csv: Some(csv), seed: None })
        }
        Command::Lattice(LatticeCmd::Find { tile, max_candidates }) => {
            let tile = load_tile(tile)?;
            let v = match find_lattice_tiling(&tile, *max_candidates)? {
                Some(c) => json!({"status": "tiles", "certificate": Certificate::Lattice(c).to_value()}),
                None => json!({"status": "unknown", "note": "no sublattice of index |S| has S as a transversal"}),
            };
            Ok(Output::json(with_tile(v, &tile)))
        }
        Command::Torus(a) => {
            let tile = load_tile(&a.tile)?;
            let budget = SearchBudget {
                max_cells: a.budget.unwrap_or(g.budget_cells),
                max_placements: a.max_placements,
                ..SearchBudget::default()
            };
            let d = tiles_torus(&tile, &TorusSpec::new(a.dims.clone())?, &budget)?;
            Ok(Output::json(with_tile(d.to_value(), &tile)))
        }
        Command::DecideZd(a) => {
            let tile = load_tile(&a.tile)?;
            let budget = SearchBudget {
                max_cells: a.budget.unwrap_or(g.budget_cells),
                max_hnf: a.max_candidates,
                max_placements: a.max_placements,
                max_tori: a.max_tori,
            };
            let d = decide_zd(&tile, &budget)?;
            Ok(Output::json(with_tile(d.to_value(), &tile)))
        }
        Command::Construct(c) => construct(c),
        Command::Bound(b) => bound(b, g),
        Command::Stats(s) => stats(s, &census_opts),
    }
}

fn construct(cmd: &ConstructCmd) -> Result<Output> {
    match cmd {
        ConstructCmd::Word { t, letters, random, seed } => {
            let word = match (letters, random) {
                (Some(l), false) => {
                    if l.len() != *t {
                        return Err(Error::Invalid(format!("expected {t} letters, got {}", l.len())));
                    }
                    Word::new(l.clone())?
                }
                (None, true) => Word::random(*t, seed.expect("clap requires a seed"))?,
                _ => return Err(Error::Invalid("give either --letters or --random --seed".into())),
            };
            let tile = line_word_tile(&word);
            let cert = PeriodCertificate { period: *t as i64, offsets: vec![0] };
            if !cert.verify(&tile) {
                return Err(Error::CertificateFailed("word tile does not tile by t Z".into()));
            }
            Ok(Output {
                value: json!({
                    "word": word.letters(),
                    "tile": tile.to_value(),
                    "certificate": Certificate::Period(cert).to_value(),
                }),
                csv: None,
                seed: *seed,
            })
        }
        ConstructCmd::Slab { t, d, u, coloring, random, seed } => {
            let col = match (coloring, random) {
                (Some(c), false) => {
                    let u = u.clone().ok_or_else(|| Error::Invalid("--u is required with --coloring".into()))?;
                    SlabColoring::new(*t, *d, u, load_json(c, "coloring")?)?
                }
                (None, true) => {
                    let col = SlabColoring::random(*t, *d, seed.expect("clap requires a seed"))?;
                    match u {
                        Some(u) => SlabColoring::new(*t, *d, u.clone(), col.coloring().to_vec())?,
                        None => col,
                    }
                }
                _ => return Err(Error::Invalid("give either --coloring or --random --seed".into())),
            };
            let (tile, cert) = slab_tile(&col)?;
            Ok(Output {
                value: json!({
                    "t": t,
                    "d": d,
                    "u": col.u(),
                    "coloring": col.coloring(),
                    "tile": tile.to_value(),
                    "certificate": Certificate::Lattice(cert).to_value(),
                }),
                csv: None,
                seed: *seed,
            })
        }
        ConstructCmd::FamilyCensus { t, d, budget } => Ok(Output::json(family_census(*t, *d, *budget)?.to_value())),
    }
}

fn bound(cmd: &BoundCmd, g: &GlobalArgs) -> Result<Output> {
    let v = match cmd {
        BoundCmd::Rate { rho } => json!({
            "rho": rho,
            "bits_per_cell": interpolated_rate(*rho)?,
            "max_bits_per_cell": log2_cbrt3(),
            "best_integer": best_integer_rate().0,
            "best_integer_base": best_integer_rate().1,
        }),
        BoundCmd::Jensen { m, t } => json!({
            "m": m,
            "t": t,
            "max_product": jensen_max_product(*m, *t)?.to_string(),
        }),
        BoundCmd::Lemma { big_n, grid } => json!({
            "N": big_n,
            "grid": grid,
            "gap": endpoint_lemma_gap(*big_n, *grid)?,
        }),
        BoundCmd::Total { n, d, alpha, k, seq_const } => {
            let mut p = BoundParams::new(*n, *d, *alpha)?.with_seq_const(*seq_const);
            if let Some(k) = k {
                p = p.with_k(*k);
            }
            let total = total_count_log2(&p)?;
            let (j_exact, j_simplified) = packing_slack(&p)?;
            json!({
                "n": n, "d": d, "k": p.k, "alpha": alpha, "seq_const": seq_const,
                "total_log2": total,
                "per_cell": total / p.volume(),
                "limit_per_cell": log2_cbrt3(),
                "j_exact": j_exact,
                "j_simplified": j_simplified,
            })
        }
        BoundCmd::Entropy { n, d, alpha, k, ell, torus } => {
            let mut p = BoundParams::new(*n, *d, *alpha)?.with_torus(*torus);
            if let Some(k) = k {
                p = p.with_k(*k).with_ell(3 * k.pow(*d));
            }
            if let Some(ell) = ell {
                p = p.with_ell(*ell);
            }
            let mut v = serde_json::to_value(entropy_upper(&p)?).expect("plain struct");
            v["params"] = serde_json::to_value(p).expect("plain struct");
            v
        }
        BoundCmd::Shearer { tile, translations, k, torus } => {
            let tile = load_tile(tile)?;
            let z: Vec<Vec<i64>> = load_json(translations, "translations")?;
            let region = (tile.n() as u128 * *k as u128).pow(tile.d() as u32);
            if region > g.budget_cells as u128 {
                return Err(Error::LimitExceeded { what: "region cells", value: region as u64, max: g.budget_cells });
            }
            let r = shearer_bound_from_instance(&tile, &z.into_iter().map(Point).collect::<Vec<_>>(), *k, *torus)?;
            let mut v = serde_json::to_value(&r).expect("plain struct");
            v["tile"] = tile.to_value();
            v
        }
    };
    Ok(Output::json(v))
}

fn stats(cmd: &StatsCmd, opts: &CensusOptions) -> Result<Output> {
    match cmd {
        StatsCmd::Density { n } => {
            let r = density_report(*n, opts)?;
            let mut rows = vec![vec!["n".into(), "d".into(), "size".into(), "count".into()]];
            for (size, count) in &r.histogram {
                rows.push(vec![n.to_string(), "1".into(), size.to_string(), count.to_string()]);
            }
            rows.push(vec![
                n.to_string(),
                "1".into(),
                "ALL".into(),
                r.count.to_string(),
                round12(r.mean_density).to_string(),
            ]);
            let mut v = serde_json::to_value(&r).expect("plain struct");
            v["histogram"] = json!(r.histogram.iter().map(|(k, c)| (k.to_string(), json!(c))).collect::<Map<_, _>>());
            Ok(Output { value: v, csv: Some(csv_table(rows)?), seed: None })
        }
        StatsCmd::Marginals { n } => {
            let f = marginal_frequencies(*n, opts)?;
            let mut rows = vec![vec!["n".into(), "position".into(), "frequency".into()]];
            for (i, x) in f.iter().enumerate() {
                rows.push(vec![n.to_string(), i.to_string(), round12(*x).to_string()]);
            }
            Ok(Output { value: json!({"n": n, "marginals": f}), csv: Some(csv_table(rows)?), seed: None })
        }
        StatsCmd::Windows { n, w } => {
            let r = window_frequencies(*n, *w, opts)?;
            let mut rows = vec![vec!["n".into(), "w".into(), "pattern".into(), "frequency".into(), "reference".into()]];
            for (p, f) in &r.frequencies {
                rows.push(vec![
                    n.to_string(),
                    w.to_string(),
                    p.clone(),
                    round12(*f).to_string(),
                    round12(r.reference[p]).to_string(),
                ]);
            }
            let v = serde_json::to_value(&r).expect("plain struct");
            Ok(Output { value: v, csv: Some(csv_table(rows)?), seed: None })
        }
        StatsCmd::Components { tile } => {
            let tile = load_tile(tile)?;
            let c = component_stats(&tile);
            Ok(Output::json(json!({"tile": tile.to_value(), "largest": c.largest, "count": c.count})))
        }
        StatsCmd::Sample { n, seed, count } => {
            let tiles = sample_uniform(*n, *seed, *count, opts)?;
            let rows = std::iter::once(vec!["index".to_string(), "points".to_string()])
                .chain(tiles.iter().enumerate().map(|(i, t)| {
                    let pts = t.coords_1d().expect("line tile").iter().map(|x| x.to_string()).collect::<Vec<_>>();
                    vec![i.to_string(), pts.join(" ")]
                }))
                .collect();
            Ok(Output {
                value: json!({"n": n, "samples": tiles.iter().map(Tile::to_value).collect::<Vec<_>>()}),
                csv: Some(csv_table(rows)?),
                seed: Some(*seed),
            })
        }
    }
}

/// Space-separated subcommand path, e.g. `bound total`.
fn command_name(cmd: &Command) -> String {
    let sub = |v: &dyn std::fmt::Debug| {
        let s = format!("{v:?}");
        let head: String = s.chars().take_while(|c| c.is_alphanumeric()).collect();
        let mut out = String::new();
        for (i, ch) in head.chars().enumerate() {
            if ch.is_uppercase() && i > 0 {
                out.push('-');
            }
            out.push(ch.to_ascii_lowercase());
        }
        out
    };
    match cmd {
        Command::Decide(_) => "decide".into(),
        Command::Period(_) => "period".into(),
        Command::Census(_) => "census".into(),
        Command::CensusSet(_) => "census-set".into(),
        Command::Lattice(c) => format!("lattice {}", sub(c)),
        Command::Torus(_) => "torus".into(),
        Command::DecideZd(_) => "decide-zd".into(),
        Command::Construct(c) => format!("construct {}", sub(c)),
        Command::Bound(c) => format!("bound {}", sub(c)),
        Command::Stats(c) => format!("stats {}", sub(c)),
    }
}

/// Everything that determines the numeric output of a run.
fn manifest(cli: &Cli, seed: Option<u64>) -> Value {
    let mut params = serde_json::to_value(&cli.command).expect("arguments serialize");
    if let Value::Object(m) = &mut params {
        // Subcommand enums serialize with the variant name as the only key.
        if m.len() == 1 && m.values().next().is_some_and(Value::is_object) {
            params = m.values().next().cloned().expect("one entry");
        }
    }
    let mut params = match params {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    params.retain(|_, v| !v.is_null());
    params.insert("max_n".into(), json!(cli.global.max_n));
    params.insert("budget_cells".into(), json!(cli.global.budget_cells));
    json!({
        "command": command_name(&cli.command),
        "parameters": params,
        "versions": {"tool": env!("CARGO_PKG_VERSION"), "format": FORMAT_VERSION},
        "seed": seed,
    })
}

fn unix_millis() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

fn report_error(stderr: &mut dyn Write, code: &str, detail: &str) {
    let line = json!({"error": code, "detail": detail});
    let _ = writeln!(stderr, "{line}");
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let _ = write!(stderr, "{}", e.render());
            report_error(stderr, "USAGE", &e.kind().to_string());
            return 2;
        }
    };
    let started = unix_millis();
    let out = match execute(&cli.command, &cli.global) {
        Ok(o) => o,
        Err(e) => {
            report_error(stderr, e.code(), &e.to_string());
            return exit_code(&e);
        }
    };
    let finished = unix_millis();
    let manifest = manifest(&cli, out.seed);
    if let Some(path) = &cli.global.manifest {
        let mut full = manifest.clone();
        full["started_unix_ms"] = json!(started);
        full["finished_unix_ms"] = json!(finished);
        full["jobs"] = json!(cli.global.jobs);
        let text = serde_json::to_string_pretty(&full).expect("manifest serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            report_error(stderr, "IO", &format!("cannot write manifest {}: {e}", path.display()));
            return 1;
        }
    }
    let text = match (cli.global.format, out.csv) {
        (Format::Csv, Some(csv)) => csv,
        _ => {
            let mut value = out.value;
            if let Value::Object(m) = &mut value {
                m.insert("manifest".into(), manifest);
            }
            round_floats(&mut value);
            serde_json::to_string(&value).expect("output serializes") + "\n"
        }
    };
    if stdout.write_all(text.as_bytes()).is_err() {
        return 1;
    }
    0
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hyperat::coloring::{
    chromatic_number, cn_coloring, exhaustive_lister, f_paintable, is_coloring_polynomial, list_colorable,
    unbalanced_linear_system, ChromaticOutcome, PainterStrategy, DEFAULT_NODE_BUDGET,
};
use hyperat::hypergraph::{degeneracy, edge_density_exact, edge_density_flow, Hypergraph};
use hyperat::onetwothree::{check_ed_hg, find_123_weighting, two_pendant_peel, PeelVerdict, SimpleGraph, WeightingText};
use hyperat::pipeline::{density, fully_balanced_at, span_route, theorem_main, DEFAULT_COMBINATION_BUDGET};
use hyperat::poly::{ExponentVector, LinearSystem, DEFAULT_TERM_GUARD};
use hyperat::random::CoefficientMode;
use hyperat::search::{conjecture_search, SearchConfig};
use hyperat::{Error, FieldDescriptor, Result};

#[derive(Parser)]
#[command(name = "hyperat", version, about = "Alon-Tarsi numbers of hypergraph polynomials")]
struct Cli {
    /// Field: q, zeta:S or gf:P.
    #[arg(long, global = true)]
    field: Option<FieldDescriptor>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of live terms during an expansion.
    #[arg(long, global = true, default_value_t = DEFAULT_TERM_GUARD)]
    term_cap: usize,
    /// Write a JSON sidecar of the report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Exact,
    Flow,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Pool,
    Unbalanced,
    Balanced,
}

#[derive(Subcommand)]
enum Command {
    /// Edge density of a hypergraph (or of a system's hypergraph).
    Density {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Degeneracy and peeling order.
    Degeneracy { file: PathBuf },
    /// Alon-Tarsi number of a system, optionally with the coefficients of given monomials.
    At {
        file: PathBuf,
        /// A monomial such as x1*x3^2; repeatable.
        #[arg(long)]
        check: Vec<String>,
    },
    /// Alon-Tarsi number of the all-ones polynomial of a hypergraph.
    BalancedAt { file: PathBuf },
    /// Coefficient permutations with AT <= 2 ceil(ed) + 1 via representatives and peeling.
    TheoremMain { file: PathBuf },
    /// The same bound via span decompositions.
    SpanRoute {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_COMBINATION_BUDGET)]
        budget: usize,
    },
    /// Chromatic number, a coloring from roots of unity, optional list coloring.
    Color {
        file: PathBuf,
        /// Number of roots of unity (default 2 ceil(ed) + 1).
        #[arg(long)]
        s: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_colors: usize,
        /// One line of colors per vertex.
        #[arg(long)]
        lists: Option<PathBuf>,
    },
    /// Painter from an AT certificate, played against every Lister schedule.
    Paint {
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        states: usize,
    },
    /// 2-pendant peeling, ed(H(G)) <= 1 and a weighting for a graph file.
    Onetwothree {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        weights: Vec<i64>,
    },
    /// Random search for instances with AT > 2 ceil(ed) + 1.
    Search {
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 7)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10)]
        max_edges: usize,
        #[arg(long, default_value_t = 4)]
        max_edge_size: usize,
        #[arg(long, value_enum, default_value_t = Mode::Pool)]
        mode: Mode,
        #[arg(long)]
        repro_dir: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn is_system(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with("field:"))
}

fn load_system(path: &Path, field: Option<FieldDescriptor>) -> Result<LinearSystem> {
    let text = read(path)?;
    if !is_system(&text) {
        return Err(Error::Parse(format!("{}: expected a system file starting with 'field:'", path.display())));
    }
    let sys = LinearSystem::parse(&text)?;
    match field {
        Some(f) => sys.embed(f),
        None => Ok(sys),
    }
}

fn load_hypergraph(path: &Path) -> Result<Hypergraph> {
    let text = read(path)?;
    if is_system(&text) {
        Ok(LinearSystem::parse(&text)?.hypergraph().clone())
    } else {
        Hypergraph::parse(&text)
    }
}

fn set_json(vs: &[usize]) -> Value {
    json!(vs)
}

fn braces(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn run(cli: &Cli) -> Result<(String, Value)> {
    let mut out = String::new();
    let guard = cli.term_cap;
    let value = match &cli.command {
        Command::Density { file, method } => {
            let h = load_hypergraph(file)?;
            let d = match method {
                Method::Auto => density(&h)?,
                Method::Exact => edge_density_exact(&h)?,
                Method::Flow => edge_density_flow(&h)?,
            };
            writeln!(out, "ed = {}", d.density).unwrap();
            writeln!(out, "witness {}", braces(&d.witness)).unwrap();
            json!({ "ed": d.density.to_string(), "ceil": d.ceil(), "witness": set_json(&d.witness) })
        }
        Command::Degeneracy { file } => {
            let h = load_hypergraph(file)?;
            let d = degeneracy(&h);
            writeln!(out, "degeneracy = {}", d.value).unwrap();
            writeln!(out, "order {}", braces(&d.order)).unwrap();
            json!({ "degeneracy": d.value, "order": d.order, "degrees": d.per_step_degrees })
        }
        Command::At { file, check } => {
            let sys = load_system(file, cli.field)?;
            let cert = sys.alon_tarsi_number(guard)?;
            writeln!(out, "AT = {}, certificate {}, coeff {}", cert.at_value, cert.exponents, cert.coefficient).unwrap();
            let mut checks = Vec::new();
            for m in check {
                let alpha = ExponentVector::parse(m)?;
                let c = sys.coefficient_of(&alpha);
                writeln!(out, "coeff({alpha}) = {c}").unwrap();
                checks.push(json!({ "monomial": alpha.to_string(), "coeff": c.to_string() }));
            }
            json!({
                "at": cert.at_value,
                "certificate": cert.exponents.to_string(),
                "coeff": cert.coefficient.to_string(),
                "checks": checks,
            })
        }
        Command::BalancedAt { file } => {
            let h = load_hypergraph(file)?;
            let field = cli.field.unwrap_or(FieldDescriptor::Rational);
            let (cert, how) = if field.characteristic() == 0 {
                (fully_balanced_at(&h, field)?, "representatives")
            } else {
                (LinearSystem::all_ones(h.clone(), field)?.alon_tarsi_number(guard)?, "expansion")
            };
            let ed = density(&h)?;
            writeln!(out, "AT = {}, certificate {}, coeff {} ({how})", cert.at_value, cert.exponents, cert.coefficient).unwrap();
            writeln!(out, "ed = {}, ceil(ed) + 1 = {}", ed.density, ed.ceil() + 1).unwrap();
            json!({ "at": cert.at_value, "certificate": cert.exponents.to_string(), "ed": ed.density.to_string() })
        }
        Command::TheoremMain { file } => {
            let sys = load_system(file, cli.field)?;
            let r = theorem_main(&sys)?;
            writeln!(out, "{r}").unwrap();
            let h = sys.hypergraph();
            let sigma: Vec<String> = (0..h.m()).map(|i| r.search.permutations.cycle_notation(h, i)).collect();
            json!({
                "ed": r.ed.density.to_string(),
                "bound": r.bound,
                "representatives": r.representatives.r,
                "permutations": sigma,
                "certificate": r.search.certificate.exponents.to_string(),
                "coeff": r.search.certificate.coefficient.to_string(),
                "verified": r.search.certificate.verify(&r.permuted),
            })
        }
        Command::SpanRoute { file, budget } => {
            let sys = load_system(file, cli.field)?;
            let r = span_route(&sys, *budget)?;
            let h = sys.hypergraph();
            let sigma: Vec<String> = (0..h.m()).map(|i| r.permutations.cycle_notation(h, i)).collect();
            for (i, s) in sigma.iter().enumerate() {
                writeln!(out, "edge {}: sigma = {s}", i + 1).unwrap();
            }
            let verified = r.certificate.verify(&sys.apply_permutations(&r.permutations)?);
            writeln!(out, "certificate {}, coeff {}", r.certificate.exponents, r.certificate.coefficient).unwrap();
            writeln!(
                out,
                "bound {}, AT(permuted) <= {}, tried {}, certificate {}",
                r.bound,
                r.certificate.at_value,
                r.tried,
                if verified { "verified" } else { "NOT verified" }
            )
            .unwrap();
            json!({ "bound": r.bound, "permutations": sigma, "certificate": r.certificate.exponents.to_string(), "tried": r.tried, "verified": verified })
        }
        Command::Color { file, s, max_colors, lists } => {
            let h = load_hypergraph(file)?;
            let chi = match chromatic_number(&h, *max_colors, DEFAULT_NODE_BUDGET)? {
                ChromaticOutcome::Exact(k, c) => {
                    writeln!(out, "chromatic number = {k}\ncoloring {c}").unwrap();
                    json!(k)
                }
                ChromaticOutcome::Exceeds(k) => {
                    writeln!(out, "chromatic number > {k}").unwrap();
                    Value::Null
                }
            };
            let s = match s {
                Some(s) => *s,
                None => 2 * density(&h)?.ceil() as u32 + 1,
            };
            let cn = cn_coloring(&unbalanced_linear_system(&h), s, DEFAULT_NODE_BUDGET)?;
            match &cn {
                Some(c) => writeln!(out, "roots of unity s = {s}: coloring {c}, proper {}", c.is_proper(&h)).unwrap(),
                None => writeln!(out, "roots of unity s = {s}: no nonvanishing point").unwrap(),
            }
            let mut listed = Value::Null;
            if let Some(path) = lists {
                let text = read(path)?;
                let parsed: Vec<Vec<usize>> = text
                    .lines()
                    .filter(|l| !l.trim().is_empty())
                    .map(|l| l.split_whitespace().map(|t| t.parse().map_err(|_| Error::Parse(format!("bad color {t:?}")))).collect())
                    .collect::<Result<_>>()?;
                let c = list_colorable(&h, &parsed, DEFAULT_NODE_BUDGET)?;
                match &c {
                    Some(c) => writeln!(out, "list coloring {c}").unwrap(),
                    None => writeln!(out, "no coloring from the lists").unwrap(),
                }
                listed = json!(c.map(|c| c.colors));
            }
            json!({ "chromatic_number": chi, "s": s, "cn_coloring": cn.map(|c| c.colors), "list_coloring": listed })
        }
        Command::Paint { file, states } => {
            let text = read(file)?;
            let sys = if is_system(&text) { load_system(file, cli.field)? } else { unbalanced_linear_system(&Hypergraph::parse(&text)?) };
            if !is_coloring_polynomial(&sys) {
                return Err(Error::Invalid("not a coloring polynomial: some bracket's coefficients do not sum to zero".into()));
            }
            let cert = sys.alon_tarsi_number(guard)?;
            let n = sys.hypergraph().n();
            let tokens: Vec<u32> = cert.exponents.dense(n).iter().map(|a| a + 1).collect();
            writeln!(out, "certificate {}, coeff {}", cert.exponents, cert.coefficient).unwrap();
            writeln!(out, "tokens {}", tokens.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).unwrap();
            let mut play = PainterStrategy::new(&sys, &cert.exponents, guard)?;
            while !play.is_finished() {
                let u = play.uncolored();
                play.respond(&u)?;
            }
            write!(out, "{}", play.transcript()).unwrap();
            let painter = PainterStrategy::new(&sys, &cert.exponents, guard)?;
            let report = exhaustive_lister(&painter, *states)?;
            writeln!(out, "exhaustive Lister: {} states, {} moves, {} losses", report.states, report.moves, report.losses.len()).unwrap();
            let exact = if n <= 7 { Some(f_paintable(sys.hypergraph(), &tokens, DEFAULT_NODE_BUDGET)?) } else { None };
            if let Some(p) = exact {
                writeln!(out, "f-paintable (exact game) = {p}").unwrap();
            }
            json!({
                "certificate": cert.exponents.to_string(),
                "tokens": tokens,
                "states": report.states,
                "moves": report.moves,
                "losses": report.losses.len(),
                "f_paintable": exact,
            })
        }
        Command::Onetwothree { file, weights } => {
            let g = SimpleGraph::parse(&read(file)?)?;
            let peel = two_pendant_peel(&g);
            let verdict = match peel.verdict {
                PeelVerdict::EndsK2 => "ends at K2 (tree with a perfect matching: excluded case)",
                PeelVerdict::EndsNotK2 => "ends not at K2",
            };
            writeln!(out, "removed {} 2-pendants; {verdict}", peel.record.pendants.len()).unwrap();
            let mut ed = Value::Null;
            if g.is_connected() && peel.verdict == PeelVerdict::EndsNotK2 {
                let c = check_ed_hg(&g)?;
                let d = c.density.map(|d| d.density.to_string()).unwrap_or_else(|| "0".into());
                writeln!(out, "ed(H(G)) = {d}, bound 1 {}", if c.holds { "holds" } else { "FAILS" }).unwrap();
                ed = json!({ "ed": d, "holds": c.holds });
            }
            let w = find_123_weighting(&g, weights, DEFAULT_NODE_BUDGET)?;
            match &w {
                Some(w) => write!(out, "weighting\n{}", WeightingText(&g, w)).unwrap(),
                None => writeln!(out, "no weighting from {weights:?}").unwrap(),
            }
            json!({ "pendants": peel.record.pendants.len(), "ends_k2": peel.verdict == PeelVerdict::EndsK2, "density": ed, "weighting": w })
        }
        Command::Search { instances, max_vertices, max_edges, max_edge_size, mode, repro_dir } => {
            let mode = match mode {
                Mode::Pool => CoefficientMode::Pool,
                Mode::Unbalanced => CoefficientMode::FullyUnbalanced,
                Mode::Balanced => CoefficientMode::Balanced,
            };
            let config = SearchConfig {
                seed: cli.seed,
                instances: *instances,
                max_vertices: *max_vertices,
                max_edges: *max_edges,
                max_edge_size: *max_edge_size,
                field: cli.field.unwrap_or(FieldDescriptor::Cyclotomic(3)),
                mode,
                term_guard: guard,
                repro_dir: repro_dir.clone(),
            };
            let r = conjecture_search(&config)?;
            write!(out, "{r}").unwrap();
            let records: Vec<Value> = r
                .records
                .iter()
                .map(|x| json!({ "index": x.index, "ed": x.ed.to_string(), "at": x.at, "bound": x.bound, "verdict": x.verdict.to_string() }))
                .collect();
            json!({ "records": records, "violations": r.violations(), "skipped": r.skipped.len(), "repro_files": r.repro_files })
        }
    };
    Ok((out, value))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::Budget(_) => 3,
        Error::Internal(_) => 70,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, value)) => {
            print!("{report}");
            if let Some(path) = &cli.out {
                let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

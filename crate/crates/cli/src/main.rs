//! Batch command-line front end: file in, report out. All computation lives
//! in the `abelkit` library; this binary only parses, dispatches and prints.
//!
//! Exit codes: 0 success, 2 input error, 3 mathematical precondition
//! violated.

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use abelkit::cech::cech_complex;
use abelkit::group_cohomology::tame_duality_pairing;
use abelkit::matrix::{smith_normal_form, IntMatrix};
use abelkit::monodromy::{component_groups, graph_to_datum, monodromy_pairing, torsion_level_map};
use abelkit::valuation::{check_eval_diagram, eval_diagram_case_count};
use abelkit::abelian::BilinearPairing;

mod formats;

#[derive(Parser)]
#[command(name = "abelkit", version, about = "Exact component groups, pairings and cohomology")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix
    Snf { file: PathBuf },
    /// Component groups of a uniformization datum, with optional pairing
    Compgroup {
        file: PathBuf,
        /// print the monodromy pairing table
        #[arg(long)]
        pairing: bool,
        /// print the perfectness verdict of the pairing
        #[arg(long)]
        verify_perfect: bool,
        /// print the level-n surjection onto the component group
        #[arg(long)]
        n: Option<String>,
    },
    /// Critical group of a connected graph with a spanning-tree cross-check
    Graph {
        file: PathBuf,
        /// print the pairing table of the critical group
        #[arg(long)]
        pairing: bool,
    },
    /// Invariants/coinvariants and the tame duality pairing of a module
    Duality { file: PathBuf },
    /// Cohomology table of a bounded cochain complex
    Complex { file: PathBuf },
    /// Čech cohomology table of a covering presheaf
    Cech {
        file: PathBuf,
        /// top degree to report (default: index count - 1)
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Exhaustive commutativity check of the evaluation diagram at level q
    Evaldiag {
        #[arg(long)]
        q: String,
    },
}

/// Input errors exit with 2, violated mathematical preconditions with 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    fn input(msg: String) -> Self {
        CliError::Input(msg)
    }

    fn math(msg: String) -> Self {
        CliError::Math(msg)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Math(m) => write!(f, "precondition violated: {m}"),
        }
    }
}

/// One report field; fractions are always rendered `num/den`.
enum Value {
    Text(String),
    YesNo(bool),
    Matrix(Vec<Vec<String>>),
    Lines(Vec<String>),
}

struct Report {
    command: String,
    digest: String,
    fields: Vec<(&'static str, Value)>,
}

impl Report {
    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("input-digest: {}\n", self.digest));
        for (key, value) in &self.fields {
            match value {
                Value::Text(s) => out.push_str(&format!("{key}: {s}\n")),
                Value::YesNo(b) => {
                    out.push_str(&format!("{key}: {}\n", if *b { "yes" } else { "no" }))
                }
                Value::Matrix(rows) => {
                    out.push_str(&format!("{key}:\n"));
                    for row in rows {
                        out.push_str(&format!("  {}\n", row.join(" ")));
                    }
                }
                Value::Lines(lines) => {
                    out.push_str(&format!("{key}:\n"));
                    for line in lines {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
            }
        }
        out.push_str("status: ok\n");
        out
    }

    fn render_json(&self) -> String {
        let mut results = serde_json::Map::new();
        for (key, value) in &self.fields {
            let v = match value {
                Value::Text(s) => serde_json::Value::String(s.clone()),
                Value::YesNo(b) => serde_json::Value::Bool(*b),
                Value::Matrix(rows) => serde_json::Value::Array(
                    rows.iter()
                        .map(|r| {
                            serde_json::Value::Array(
                                r.iter()
                                    .map(|e| serde_json::Value::String(e.clone()))
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
                Value::Lines(lines) => serde_json::Value::Array(
                    lines
                        .iter()
                        .map(|l| serde_json::Value::String(l.clone()))
                        .collect(),
                ),
            };
            results.insert(key.to_string(), v);
        }
        let report = serde_json::json!({
            "command": self.command,
            "input-digest": self.digest,
            "results": results,
            "status": "ok",
        });
        format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable"))
    }
}

fn fnv1a(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a64:{hash:016x}")
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

fn pairing_fields(pairing: &BilinearPairing) -> (Value, Value) {
    let table = Value::Matrix(
        pairing
            .values()
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect())
            .collect(),
    );
    let mut lines = Vec::new();
    for (i, row) in pairing.values().iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            lines.push(format!("<{},{}> = {}", i + 1, j + 1, v));
        }
    }
    (table, Value::Lines(lines))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Snf { file } => {
            let raw = read_input(file)?;
            let a = formats::parse_matrix(&raw)?;
            let snf = smith_normal_form(&a);
            let chain: Vec<String> = snf.diagonal().iter().map(|d| d.to_string()).collect();
            let (coker, _) = abelkit::abelian::cokernel_group(&a);
            Ok(Report {
                command: format!("snf {}", file.display()),
                digest: fnv1a(raw.as_bytes()),
                fields: vec![
                    ("u", Value::Matrix(matrix_rows(&snf.u))),
                    ("s", Value::Matrix(matrix_rows(&snf.s))),
                    ("v", Value::Matrix(matrix_rows(&snf.v))),
                    ("diagonal", Value::Text(chain.join(","))),
                    ("cokernel", Value::Text(coker.to_string())),
                ],
            })
        }
        Command::Compgroup {
            file,
            pairing,
            verify_perfect,
            n,
        } => {
            let raw = read_input(file)?;
            let datum = formats::parse_datum(&raw)?;
            let cg = component_groups(&datum);
            let mut fields = vec![
                ("phi", Value::Text(cg.phi.to_string())),
                ("phi-prime", Value::Text(cg.phi_prime.to_string())),
                ("order", Value::Text(cg.phi.order().expect("finite").to_string())),
            ];
            if *pairing || *verify_perfect {
                let p = monodromy_pairing(&datum);
                if *pairing {
                    let (table, lines) = pairing_fields(&p);
                    fields.push(("pairing", table));
                    fields.push(("pairing-entries", lines));
                }
                if *verify_perfect {
                    fields.push(("perfect", Value::YesNo(p.is_perfect())));
                }
            }
            if let Some(level) = n {
                let level: BigInt = level
                    .parse()
                    .map_err(|_| CliError::input(format!("bad level {level:?}")))?;
                let map = torsion_level_map(&datum, &level)
                    .map_err(|e| CliError::math(e.to_string()))?;
                fields.push(("level-source", Value::Text(map.source().to_string())));
                fields.push(("level-matrix", Value::Matrix(matrix_rows(map.matrix()))));
                fields.push(("level-surjective", Value::YesNo(true)));
            }
            let mut command = format!("compgroup {}", file.display());
            if *pairing {
                command.push_str(" --pairing");
            }
            if *verify_perfect {
                command.push_str(" --verify-perfect");
            }
            if let Some(level) = n {
                command.push_str(&format!(" --n {level}"));
            }
            Ok(Report {
                command,
                digest: fnv1a(raw.as_bytes()),
                fields,
            })
        }
        Command::Graph { file, pairing } => {
            let raw = read_input(file)?;
            let graph = formats::parse_graph(&raw)?;
            let datum = graph_to_datum(&graph);
            let cg = component_groups(&datum);
            let trees = graph.spanning_tree_count_bruteforce();
            let order = cg.phi.order().expect("critical group is finite");
            let mut fields = vec![
                ("critical-group", Value::Text(cg.phi.to_string())),
                ("spanning-trees", Value::Text(trees.to_string())),
                ("orders-agree", Value::YesNo(order == trees)),
            ];
            if *pairing {
                let p = monodromy_pairing(&datum);
                let (table, lines) = pairing_fields(&p);
                fields.push(("pairing", table));
                fields.push(("pairing-entries", lines));
                fields.push(("perfect", Value::YesNo(p.is_perfect())));
            }
            let mut command = format!("graph {}", file.display());
            if *pairing {
                command.push_str(" --pairing");
            }
            Ok(Report {
                command,
                digest: fnv1a(raw.as_bytes()),
                fields,
            })
        }
        Command::Duality { file } => {
            let raw = read_input(file)?;
            let module = formats::parse_module(&raw)?;
            let (pairing, perfect) = tame_duality_pairing(&module);
            let (table, lines) = pairing_fields(&pairing);
            Ok(Report {
                command: format!("duality {}", file.display()),
                digest: fnv1a(raw.as_bytes()),
                fields: vec![
                    ("module", Value::Text(module.module().to_string())),
                    ("sigma-order", Value::Text(module.order().to_string())),
                    ("h0", Value::Text(pairing.left().to_string())),
                    ("h1-dual", Value::Text(pairing.right().to_string())),
                    ("pairing", table),
                    ("pairing-entries", lines),
                    ("perfect", Value::YesNo(perfect)),
                ],
            })
        }
        Command::Complex { file } => {
            let raw = read_input(file)?;
            let complex = formats::parse_complex(&raw)?;
            let mut lines = Vec::new();
            for (degree, group) in complex.total_cohomology() {
                lines.push(format!("H^{degree} = {group}"));
            }
            Ok(Report {
                command: format!("complex {}", file.display()),
                digest: fnv1a(raw.as_bytes()),
                fields: vec![("cohomology", Value::Lines(lines))],
            })
        }
        Command::Cech { file, max_degree } => {
            let raw = read_input(file)?;
            let presheaf = formats::parse_presheaf(&raw)?;
            let top = max_degree.unwrap_or(presheaf.index_count().saturating_sub(1));
            let cech = cech_complex(&presheaf, top + 1);
            let mut lines = Vec::new();
            for r in 0..=top {
                lines.push(format!("H^{r} = {}", cech.complex.cohomology(r as i64)));
            }
            let mut command = format!("cech {}", file.display());
            if let Some(d) = max_degree {
                command.push_str(&format!(" --max-degree {d}"));
            }
            Ok(Report {
                command,
                digest: fnv1a(raw.as_bytes()),
                fields: vec![("cohomology", Value::Lines(lines))],
            })
        }
        Command::Evaldiag { q } => {
            let q: BigInt = q
                .parse()
                .map_err(|_| CliError::input(format!("bad level {q:?}")))?;
            if q < BigInt::from(2) {
                return Err(CliError::input(format!("q must be at least 2, got {q}")));
            }
            let commutes =
                check_eval_diagram(&q).map_err(|e| CliError::math(e.to_string()))?;
            let cases = eval_diagram_case_count(&q);
            Ok(Report {
                command: format!("evaldiag --q {q}"),
                digest: fnv1a(q.to_string().as_bytes()),
                fields: vec![
                    ("cases", Value::Text(cases.to_string())),
                    ("commutes", Value::YesNo(commutes)),
                    (
                        "verdict",
                        Value::Text(format!(
                            "diagram commutes: {} (all {} cases)",
                            if commutes { "yes" } else { "no" },
                            cases
                        )),
                    ),
                ],
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => print!("{}", report.render_json()),
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{err}");
            match err {
                CliError::Input(_) => ExitCode::from(2),
                CliError::Math(_) => ExitCode::from(3),
            }
        }
    }
}

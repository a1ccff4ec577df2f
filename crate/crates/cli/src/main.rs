//! Command-line front end: parses a point-set file, dispatches to the
//! library computations, and renders the results as text or JSON.
//!
//! # Point-set file grammar
//!
//! A file consists of `#` comment lines, two header lines `m <int>` and
//! `n <int>` giving the two ambient dimensions, and one `point` line per
//! point: `point a_0 … a_m | b_0 … b_n`, with coordinates given as
//! integers or fractions `p/q`.
//!
//! # Polynomial grammar
//!
//! Polynomials print with explicit variable indices, `*` for products and
//! `^` for powers, e.g. `x[0]*x[1] - x[1]^2`; terms are ordered by total
//! degree and then degree-reverse-lexicographically within each variable
//! block.
//!
//! # Exit codes
//!
//! `0` success; `1` input error (message names the file and, for syntax
//! errors, the line); `2` precondition refusal (message names the violated
//! hypothesis).

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use biproj_core::bipoly::Bidegree;
use biproj_core::classify;
use biproj_core::hilbert::{self, DoublePointMethod, OmegaRelative};
use biproj_core::idealgen::vanishing_ideal_min_gens;
use biproj_core::kdiff::hf_kdiff;
use biproj_core::pointset::{parse_pointset, Point, PointSet};
use biproj_core::separators::{minimal_separators, point_degree};

#[derive(Parser)]
#[command(
    name = "biproj",
    about = "Exact bigraded invariants of finite point sets in a product of two projective spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct InputArg {
    /// Point-set file to read.
    #[arg(long)]
    input: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Intersect the squared point ideals per bidegree (reference).
    Intersection,
    /// Rank of the value-and-derivative evaluation matrix (fast).
    Derivative,
}

impl From<Method> for DoublePointMethod {
    fn from(m: Method) -> DoublePointMethod {
        match m {
            Method::Intersection => DoublePointMethod::Intersection,
            Method::Derivative => DoublePointMethod::Derivative,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Hilbert function table with regularity pair and border.
    Hf {
        #[command(flatten)]
        input: InputArg,
        /// Inclusive grid corner I J overriding the default (s1, s2).
        #[arg(long = "box", num_args = 2, value_names = ["I", "J"])]
        box_corner: Option<Vec<usize>>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Minimal bihomogeneous generators of the vanishing ideal.
    Ideal {
        #[command(flatten)]
        input: InputArg,
    },
    /// Kähler different: generator degrees, Hilbert function, border.
    Kdiff {
        #[command(flatten)]
        input: InputArg,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Hilbert functions of the modules of Kähler differentials.
    Omega {
        #[command(flatten)]
        input: InputArg,
        /// Inclusive grid corner I J overriding the default (s1, s2).
        #[arg(long = "box", num_args = 2, value_names = ["I", "J"])]
        box_corner: Option<Vec<usize>>,
        /// How to compute the Hilbert function of the double-point scheme.
        #[arg(long, value_enum, default_value_t = Method::Derivative)]
        method: Method,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Per-point degree sets and, optionally, separator polynomials.
    Separators {
        #[command(flatten)]
        input: InputArg,
        /// Also print one minimal separator per minimal degree.
        #[arg(long)]
        polys: bool,
    },
    /// Structural predicates: ACM, product, cross-point closure, CB, CI.
    Classify {
        #[command(flatten)]
        input: InputArg,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

enum CliError {
    /// Unreadable or malformed input; exit code 1.
    Input(String),
    /// A hypothesis of the requested computation fails; exit code 2.
    Refusal(String),
}

fn load(path: &str) -> Result<PointSet, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    parse_pointset(&text).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn parse_box(corner: &Option<Vec<usize>>) -> Option<Bidegree> {
    corner.as_ref().map(|v| Bidegree::new(v[0], v[1]))
}

fn format_point(p: &Point) -> String {
    let a: Vec<String> = p.a.iter().map(|c| c.to_string()).collect();
    let b: Vec<String> = p.b.iter().map(|c| c.to_string()).collect();
    format!("({} | {})", a.join(" : "), b.join(" : "))
}

fn format_border(bc: &[usize], br: &[usize]) -> String {
    let f = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("(({}),({}))", f(bc), f(br))
}

fn render_matrix(values: &[Vec<usize>]) -> String {
    let width = values
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    values
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| format!("{v:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_hf(x: &PointSet, corner: Option<Bidegree>, json: bool) -> String {
    let table = match corner {
        Some(c) => hilbert::hf_table_box(x, c),
        None => hilbert::hf_table(x),
    };
    if json {
        table.to_json().to_string()
    } else {
        format!(
            "{}\nreg pair: {}\nborder: {}",
            table.to_text(),
            table.reg_pair,
            format_border(&table.border_c, &table.border_r)
        )
    }
}

fn cmd_ideal(x: &PointSet) -> String {
    let gens = vanishing_ideal_min_gens(x);
    gens.generators
        .iter()
        .map(|(g, d)| format!("{d}  {g}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn require_acm(x: &PointSet, what: &str) -> Result<(), CliError> {
    if classify::is_acm(x) {
        Ok(())
    } else {
        Err(CliError::Refusal(format!(
            "{what} requires an arithmetically Cohen-Macaulay configuration; this input is not ACM"
        )))
    }
}

fn cmd_kdiff(x: &PointSet, json: bool) -> Result<String, CliError> {
    require_acm(x, "the Kähler different")?;
    let kd = hf_kdiff(x, true).expect("ACM verified above");
    let table = &kd.hf_table;
    if json {
        let degs: Vec<[usize; 2]> = kd.min_gen_degrees.iter().map(|d| [d.i, d.j]).collect();
        Ok(serde_json::json!({
            "min_gen_degrees": degs,
            "hf": table.to_json(),
        })
        .to_string())
    } else {
        let degs = kd
            .min_gen_degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        Ok(format!(
            "minimal generator degrees: {}\n{}\nstabilization pair: {}\nborder: {}",
            degs,
            table.to_text(),
            table.reg_pair,
            format_border(&table.border_c, &table.border_r)
        ))
    }
}

fn cmd_omega(
    x: &PointSet,
    corner: Option<Bidegree>,
    method: DoublePointMethod,
    json: bool,
) -> Result<String, CliError> {
    let corner = corner.unwrap_or_else(|| Bidegree::new(x.s1(), x.s2()));
    let acm = classify::is_acm(x);
    let grid = |rel: OmegaRelative| -> Vec<Vec<usize>> {
        (0..=corner.i)
            .map(|i| {
                (0..=corner.j)
                    .map(|j| {
                        hilbert::hf_omega(x, Bidegree::new(i, j), rel, acm, method)
                            .expect("ACM checked before requesting the relative module")
                    })
                    .collect()
            })
            .collect()
    };
    let over_k = grid(OmegaRelative::K);
    let over_base = if acm { Some(grid(OmegaRelative::Ro)) } else { None };
    if json {
        Ok(serde_json::json!({
            "box": [corner.i, corner.j],
            "over_k": over_k,
            "over_base": over_base,
        })
        .to_string())
    } else {
        let mut out = format!(
            "HF of the differential module over the base field:\n{}",
            render_matrix(&over_k)
        );
        match over_base {
            Some(v) => {
                out.push_str(&format!(
                    "\nHF of the differential module over the normalization base:\n{}",
                    render_matrix(&v)
                ));
            }
            None => out.push_str(
                "\nrelative module omitted: the configuration is not arithmetically Cohen-Macaulay",
            ),
        }
        Ok(out)
    }
}

fn cmd_separators(x: &PointSet, polys: bool) -> String {
    let mut lines = Vec::new();
    for p in x.points() {
        let degs = point_degree(x, p).expect("point taken from the set itself");
        let set = degs
            .mins
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        lines.push(format!("{}  degrees {{{set}}}", format_point(p)));
        if polys {
            let seps = minimal_separators(x, p).expect("point taken from the set itself");
            for (d, f) in degs.mins.iter().zip(seps.iter()) {
                lines.push(format!("  {d}: {f}"));
            }
        }
    }
    lines.join("\n")
}

fn cmd_classify(x: &PointSet, json: bool) -> String {
    let c = classify::classification(x);
    if json {
        return c.to_json().to_string();
    }
    let ci = match &c.ci {
        Some((a, b)) => {
            let f = |v: &[usize]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!("(({}),({}))", f(a), f(b))
        }
        None => "none".to_string(),
    };
    let evidence: BTreeMap<&String, String> =
        c.evidence.iter().map(|(k, v)| (k, v.to_string())).collect();
    let mut out = format!(
        "acm: {}\nproduct: {}\nstar: {}\ncb: {}\nci: {}",
        c.acm, c.product, c.star, c.cb, ci
    );
    for (k, v) in evidence {
        out.push_str(&format!("\nevidence.{k}: {v}"));
    }
    out
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.cmd {
        Cmd::Hf {
            input,
            box_corner,
            json,
        } => {
            let x = load(&input.input)?;
            Ok(cmd_hf(&x, parse_box(&box_corner), json))
        }
        Cmd::Ideal { input } => {
            let x = load(&input.input)?;
            Ok(cmd_ideal(&x))
        }
        Cmd::Kdiff { input, json } => {
            let x = load(&input.input)?;
            cmd_kdiff(&x, json)
        }
        Cmd::Omega {
            input,
            box_corner,
            method,
            json,
        } => {
            let x = load(&input.input)?;
            cmd_omega(&x, parse_box(&box_corner), method.into(), json)
        }
        Cmd::Separators { input, polys } => {
            let x = load(&input.input)?;
            Ok(cmd_separators(&x, polys))
        }
        Cmd::Classify { input, json } => {
            let x = load(&input.input)?;
            Ok(cmd_classify(&x, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Refusal(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
    }
}

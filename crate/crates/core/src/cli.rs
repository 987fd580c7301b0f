//! Command-line front end. Exit status: 0 on success, 1 on a domain error
//! (reported as `{"error": {"kind", "message"}}` on stdout), 2 on a usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::family::TreeSpec;
use crate::generalized::generalized_census;
use crate::graph::{longest_path_length, path_census, Budget, Census, Graph, DEFAULT_BUDGET};
use crate::invariants::{
    evaluate_invariant, invariant_profile, InvariantFunction, InvariantProfile, Registry,
};
use crate::reconstruct::{
    approx_eq, check_t7_conditions, check_t8_conditions, distinguish, reconstruct_generalized,
    reconstruct_starlike, survey_distinguishability, SurveyFamily, DEFAULT_TOL, DEFAULT_T_MAX,
    DEFAULT_X_MAX,
};
use crate::starlike::starlike_census;

#[derive(Debug, Parser)]
#[command(
    name = "pathseq",
    version,
    about = "Higher-order path degree-sequence invariants"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Cap on path-search node expansions (and on survey pairs).
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Seed for the symmetry trials run on parameterized indices.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Starlike,
    Generalized,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Edge-list file.
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Starlike JSON spec.
    #[arg(long, value_name = "FILE")]
    starlike: Option<PathBuf>,
    /// Generalized starlike JSON spec.
    #[arg(long, value_name = "FILE")]
    generalized: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct SpecInput {
    #[arg(long, value_name = "FILE")]
    starlike: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    generalized: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of the order-h invariant.
    Invariant {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        index: String,
        #[arg(long)]
        order: usize,
    },
    /// Invariant values for h = 0..=max-order, capped at the longest path.
    Profile {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        index: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Degree-sequence classes of the paths of length h.
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        order: usize,
    },
    /// Compare closed forms against path enumeration on the realized tree.
    Verify {
        #[command(flatten)]
        input: SpecInput,
        #[arg(long)]
        index: String,
        #[arg(long)]
        max_order: Option<usize>,
    },
    /// Recover a tree from its profile.
    Reconstruct {
        /// Tree whose profile is computed by path enumeration.
        #[arg(
            long,
            value_name = "FILE",
            conflicts_with = "profile",
            required_unless_present = "profile"
        )]
        graph: Option<PathBuf>,
        /// JSON array of values, or the output of `profile`.
        #[arg(long, value_name = "FILE")]
        profile: Option<PathBuf>,
        #[arg(long)]
        vertices: Option<usize>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Starlike)]
        family: FamilyArg,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        index: String,
    },
    /// First order at which two trees of one family differ.
    Distinguish {
        #[arg(long, value_name = "FILE")]
        starlike: Vec<PathBuf>,
        #[arg(long, value_name = "FILE")]
        generalized: Vec<PathBuf>,
        #[arg(long)]
        index: String,
    },
    /// Bounded scan of the distinguishability conditions on an index.
    CheckConditions {
        #[arg(long)]
        index: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(7..=8))]
        theorem: u8,
        #[arg(long, default_value_t = DEFAULT_X_MAX)]
        x_max: usize,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        t_max: usize,
    },
    /// Compare every pair of trees in a family.
    Survey {
        #[arg(long)]
        vertices: usize,
        #[arg(long, value_enum, default_value_t = FamilyArg::Starlike)]
        family: FamilyArg,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        index: String,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

struct Report {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Emit the report but exit 1 (a verification mismatch).
    failed: bool,
}

impl Report {
    fn new(json: Value, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        Report {
            json,
            header,
            rows,
            failed: false,
        }
    }

    fn render(&self, format: Format) -> std::result::Result<String, Failure> {
        match format {
            Format::Json => Ok(format!("{}\n", self.json)),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                let io = |e: csv::Error| Failure::Domain(Error::Io(e.to_string()));
                w.write_record(&self.header).map_err(io)?;
                for row in &self.rows {
                    w.write_record(row).map_err(io)?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| Failure::Domain(Error::Io(e.to_string())))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

/// Shortest round-trip decimal, as serde_json writes it.
fn num(x: f64) -> String {
    Value::from(x).to_string()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

enum Source {
    Graph(Graph),
    Tree(TreeSpec),
}

impl Source {
    fn load(input: &Input) -> Result<Self> {
        match (&input.graph, &input.starlike, &input.generalized) {
            (Some(p), _, _) => Ok(Source::Graph(Graph::parse_edge_list(&read(p)?)?)),
            (_, Some(p), _) => Ok(Source::Tree(TreeSpec::starlike_from_json(&read(p)?)?)),
            (_, _, Some(p)) => Ok(Source::Tree(TreeSpec::generalized_from_json(&read(p)?)?)),
            _ => unreachable!("clap requires one input"),
        }
    }

    fn longest_path(&self, budget: Budget) -> Result<usize> {
        match self {
            Source::Graph(g) => longest_path_length(g, budget),
            Source::Tree(t) => Ok(t.longest_path()),
        }
    }
}

fn load_spec(input: &SpecInput) -> Result<TreeSpec> {
    match (&input.starlike, &input.generalized) {
        (Some(p), _) => TreeSpec::starlike_from_json(&read(p)?),
        (_, Some(p)) => TreeSpec::generalized_from_json(&read(p)?),
        _ => unreachable!("clap requires one input"),
    }
}

struct Ctx {
    registry: Registry,
    budget: Budget,
    tol: f64,
}

impl Ctx {
    fn index(&mut self, id: &str) -> Result<InvariantFunction> {
        self.registry.resolve(id)
    }
}

fn census_report(census: &Census) -> Report {
    let h = census.order();
    let classes: Vec<Value> = census
        .iter()
        .map(|(class, count)| json!({"degrees": class.degrees(), "count": count}))
        .collect();
    let rows = census
        .iter()
        .map(|(class, count)| {
            let degrees: Vec<String> = class.degrees().iter().map(u32::to_string).collect();
            vec![h.to_string(), degrees.join(" "), count.to_string()]
        })
        .collect();
    Report::new(
        json!({"h": h, "total": census.total(), "classes": classes}),
        vec!["h", "degrees", "count"],
        rows,
    )
}

fn profile_rows(values: &[f64]) -> Vec<Vec<String>> {
    values
        .iter()
        .enumerate()
        .map(|(h, &v)| vec![h.to_string(), num(v)])
        .collect()
}

fn read_profile(path: &Path) -> Result<(InvariantProfile, Option<usize>)> {
    let text = read(path)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let bad = |message: &str| Error::Parse {
        line: 1,
        message: message.to_string(),
    };
    let (values, vertices) = match &doc {
        Value::Array(_) => (&doc, None),
        Value::Object(map) => (
            map.get("values").ok_or_else(|| bad("missing \"values\""))?,
            map.get("vertices")
                .and_then(Value::as_u64)
                .map(|v| v as usize),
        ),
        _ => return Err(bad("expected an array or an object with \"values\"")),
    };
    let values = values
        .as_array()
        .ok_or_else(|| bad("\"values\" is not an array"))?
        .iter()
        .map(|v| {
            v.as_f64()
                .ok_or_else(|| bad("profile values must be numbers"))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok((InvariantProfile::new(values), vertices))
}

fn spec_rows(spec: &TreeSpec) -> Vec<Vec<String>> {
    let star = match spec {
        TreeSpec::Starlike(s) => s,
        TreeSpec::Generalized(g) => g.star(),
    };
    star.branches()
        .map(|(length, count)| vec![length.to_string(), count.to_string()])
        .collect()
}

fn execute(cmd: Command, ctx: &mut Ctx) -> std::result::Result<Report, Failure> {
    let budget = ctx.budget;
    let tol = ctx.tol;
    let report = match cmd {
        Command::Invariant {
            input,
            index,
            order,
        } => {
            let f = ctx.index(&index)?;
            let value = match Source::load(&input)? {
                Source::Graph(g) => evaluate_invariant(&g, order, &f, budget)?,
                Source::Tree(t) => t.invariant(order, &f),
            };
            Report::new(
                json!({"h": order, "value": value}),
                vec!["h", "value"],
                vec![vec![order.to_string(), num(value)]],
            )
        }
        Command::Profile {
            input,
            index,
            max_order,
        } => {
            let f = ctx.index(&index)?;
            let source = Source::load(&input)?;
            let rho = source.longest_path(budget)?;
            let h_max = max_order.unwrap_or(rho).min(rho);
            let (values, vertices) = match &source {
                Source::Graph(g) => (
                    invariant_profile(g, &f, h_max, budget)?.values,
                    g.vertex_count(),
                ),
                Source::Tree(t) => (t.profile(&f, h_max).values, t.vertex_count()),
            };
            Report::new(
                json!({"index": f.name(), "rho": rho, "vertices": vertices, "values": values}),
                vec!["h", "value"],
                profile_rows(&values),
            )
        }
        Command::Census { input, order } => {
            let census = match Source::load(&input)? {
                Source::Graph(g) => path_census(&g, order, budget)?,
                Source::Tree(t) if order < 2 => path_census(&t.realize(), order, budget)?,
                Source::Tree(TreeSpec::Starlike(s)) => starlike_census(&s, order)?,
                Source::Tree(TreeSpec::Generalized(g)) => generalized_census(&g, order)?,
            };
            census_report(&census)
        }
        Command::Verify {
            input,
            index,
            max_order,
        } => {
            let f = ctx.index(&index)?;
            let spec = load_spec(&input)?;
            let h_max = max_order.unwrap_or(spec.longest_path());
            let closed = spec.profile(&f, h_max).values;
            let brute = invariant_profile(&spec.realize(), &f, h_max, budget)?.values;
            let mut max_abs_diff = 0f64;
            let mut ok = true;
            let mut orders = Vec::new();
            let mut rows = Vec::new();
            for (h, (&c, &b)) in closed.iter().zip(&brute).enumerate() {
                max_abs_diff = max_abs_diff.max((c - b).abs());
                ok &= approx_eq(c, b, tol);
                orders.push(json!({"h": h, "closed_form": c, "brute_force": b}));
                rows.push(vec![h.to_string(), num(c), num(b)]);
            }
            let status = if ok { "ok" } else { "mismatch" };
            let mut report = Report::new(
                json!({
                    "max_abs_diff": max_abs_diff,
                    "status": status,
                    "max_order": h_max,
                    "orders": orders,
                }),
                vec!["h", "closed_form", "brute_force"],
                rows,
            );
            report.failed = !ok;
            report
        }
        Command::Reconstruct {
            graph,
            profile,
            vertices,
            family,
            max_degree,
            index,
        } => {
            let f = ctx.index(&index)?;
            let (profile, n, r) = match (graph, profile) {
                (Some(path), _) => {
                    let g = Graph::parse_edge_list(&read(&path)?)?;
                    let rho = longest_path_length(&g, budget)?;
                    let p = invariant_profile(&g, &f, rho, budget)?;
                    let r = g.degrees().into_iter().max().unwrap_or(0) as usize;
                    (p, g.vertex_count(), max_degree.unwrap_or(r))
                }
                (None, Some(path)) => {
                    let (p, doc_n) = read_profile(&path)?;
                    let n = vertices.or(doc_n).ok_or_else(|| {
                        Failure::Usage("--vertices is required with a bare profile array".into())
                    })?;
                    let r = match (family, max_degree) {
                        (FamilyArg::Generalized, None) => {
                            return Err(Failure::Usage(
                                "--max-degree is required to reconstruct a generalized tree from a profile".into(),
                            ))
                        }
                        (_, r) => r.unwrap_or(0),
                    };
                    (p, n, r)
                }
                (None, None) => unreachable!("clap requires --graph or --profile"),
            };
            let (spec, residuals): (TreeSpec, Vec<f64>) = match family {
                FamilyArg::Starlike => {
                    let res = reconstruct_starlike(n, &profile, &f, tol)?;
                    (res.spec.into(), res.residuals)
                }
                FamilyArg::Generalized => {
                    let res = reconstruct_generalized(n, r, &profile, &f, tol)?;
                    (res.spec.into(), res.residuals)
                }
            };
            let max_residual = residuals.iter().copied().fold(0.0, f64::max);
            Report::new(
                json!({
                    "family": spec.family_name(),
                    "spec": spec.to_value(),
                    "residuals": residuals,
                    "max_residual": max_residual,
                }),
                vec!["length", "count"],
                spec_rows(&spec),
            )
        }
        Command::Distinguish {
            starlike,
            generalized,
            index,
        } => {
            if starlike.len() + generalized.len() != 2 {
                return Err(Failure::Usage(
                    "distinguish takes exactly two of --starlike/--generalized".into(),
                ));
            }
            let f = ctx.index(&index)?;
            let mut specs = Vec::new();
            for p in &starlike {
                specs.push(TreeSpec::starlike_from_json(&read(p)?)?);
            }
            for p in &generalized {
                specs.push(TreeSpec::generalized_from_json(&read(p)?)?);
            }
            let d = distinguish(&specs[0], &specs[1], &f, tol)?;
            let mut json = d.to_json();
            json["left"] = specs[0].to_value();
            json["right"] = specs[1].to_value();
            let row = match d {
                crate::reconstruct::Distinction::Separated { order, left, right } => {
                    vec![
                        "separated".to_string(),
                        order.to_string(),
                        num(left),
                        num(right),
                    ]
                }
                crate::reconstruct::Distinction::Indistinguishable { max_order } => {
                    vec![
                        "indistinguishable".to_string(),
                        max_order.to_string(),
                        String::new(),
                        String::new(),
                    ]
                }
            };
            Report::new(json, vec!["status", "h", "left", "right"], vec![row])
        }
        Command::CheckConditions {
            index,
            theorem,
            x_max,
            t_max,
        } => {
            if x_max < 4 {
                return Err(Failure::Usage("--x-max must be at least 4".into()));
            }
            let f = ctx.index(&index)?;
            let report = if theorem == 7 {
                check_t7_conditions(&f, x_max, t_max, tol)
            } else {
                check_t8_conditions(&f, x_max, t_max, tol)
            };
            let verdict = |pass: bool| if pass { "pass" } else { "fail" }.to_string();
            let point =
                |p: Option<(usize, usize)>| p.map(|(a, b)| format!("{a} {b}")).unwrap_or_default();
            let rows = vec![
                vec![
                    "a".to_string(),
                    verdict(report.condition_a.pass),
                    point(report.condition_a.counterexample),
                    num(report.condition_a.min_gap),
                ],
                vec![
                    "b".to_string(),
                    verdict(report.condition_b.pass),
                    point(report.condition_b.counterexample),
                    num(report.condition_b.min_gap),
                ],
            ];
            Report::new(
                report.to_json(),
                vec!["condition", "status", "counterexample", "min_gap"],
                rows,
            )
        }
        Command::Survey {
            vertices,
            family,
            max_degree,
            index,
        } => {
            let family = match (family, max_degree) {
                (FamilyArg::Starlike, _) => SurveyFamily::Starlike,
                (FamilyArg::Generalized, Some(r)) => SurveyFamily::Generalized { max_degree: r },
                (FamilyArg::Generalized, None) => {
                    return Err(Failure::Usage(
                        "--max-degree is required for a generalized survey".into(),
                    ))
                }
            };
            let f = ctx.index(&index)?;
            let report = survey_distinguishability(vertices, family, &f, tol, budget)?;
            let rows = report
                .collisions
                .iter()
                .map(|(a, b)| vec![a.to_value().to_string(), b.to_value().to_string()])
                .collect();
            Report::new(report.to_json(), vec!["left", "right"], rows)
        }
    };
    Ok(report)
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
        }
    }
    Ok(())
}

fn domain_error(e: &Error) -> i32 {
    let doc = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    println!("{doc}");
    1
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        eprintln!("error: --tol must be positive");
        return 2;
    }
    if cli.budget == 0 {
        eprintln!("error: --budget must be positive");
        return 2;
    }
    let mut ctx = Ctx {
        registry: Registry::new(cli.seed),
        budget: Budget(cli.budget),
        tol: cli.tol,
    };
    let report = match execute(cli.command, &mut ctx) {
        Ok(r) => r,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
        Err(Failure::Domain(e)) => return domain_error(&e),
    };
    let text = match report.render(cli.format) {
        Ok(t) => t,
        Err(Failure::Domain(e)) => return domain_error(&e),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    if let Err(e) = emit(&text, cli.output.as_deref()) {
        return domain_error(&e);
    }
    if report.failed {
        1
    } else {
        0
    }
}

//! Command-line front end. Every subcommand writes one JSON document to
//! stdout; diagnostics go to stderr. Exit codes: 0 on success, 1 when a
//! computational cap is exceeded (or a check fails), 2 on malformed input,
//! in which case stdout is `{}`.

use std::fs;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use latdeg::adet::{principal_adet_prism, verify_worked_example};
use latdeg::classify::classify;
use latdeg::construct::{
    basic_simplex, cayley, dilate, exceptional_simplex, lawrence_prism, pyramid, scramble, Heights,
};
use latdeg::ehrhart::{degree_via_interior, hstar};
use latdeg::exactmath::Int;
use latdeg::polytope::{AffineMap, LatticePoint, LatticePolytope};
use latdeg::suite::run_all;
use latdeg::triang::{
    enumerate_all_capped, flip_graph, secondary_polytope, PointConfig, DEFAULT_MAX_POINTS,
};
use latdeg::Error;

/// Largest expansion printed by `adet --heights`.
const ADET_TERM_CAP: usize = 2_000_000;

#[derive(Debug, Parser)]
#[command(name = "latdeg", version, about = "Lattice polytopes of small h*-degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct InputArg {
    /// Polytope document; stdin when omitted.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, vertices and lattice points.
    Info(InputArg),
    /// h*-vector without trailing zeros.
    Hstar(InputArg),
    /// Degree from the h*-vector and from interior points of dilates.
    Degree(InputArg),
    /// Degree-one classification with a unimodular witness.
    Classify(InputArg),
    /// Lattice triangulations of the lattice points.
    Triangulations {
        #[command(subcommand)]
        action: TriangAction,
    },
    /// Combinatorics of the secondary polytope.
    Secondary {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Principal A-determinant of a Lawrence prism.
    Adet {
        #[arg(long, value_delimiter = ',', conflicts_with = "verify_example")]
        heights: Option<Vec<u64>>,
        #[arg(long)]
        verify_example: bool,
    },
    /// Write a polytope document.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
    /// Run a built-in check battery.
    Check {
        #[command(subcommand)]
        which: CheckKind,
    },
}

#[derive(Debug, Subcommand)]
enum TriangAction {
    Count(TriangArgs),
    List(TriangArgs),
    Flipgraph(TriangArgs),
}

#[derive(Debug, Args)]
struct TriangArgs {
    #[command(flatten)]
    input: InputArg,
    /// Largest number of lattice points to enumerate over.
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: usize,
}

#[derive(Debug, Subcommand)]
enum GenerateKind {
    Prism {
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<u64>,
    },
    Exceptional {
        #[arg(long)]
        n: usize,
    },
    Basic {
        #[arg(long)]
        n: usize,
    },
    /// Cayley polytope of a JSON array of documents.
    Cayley(InputArg),
    Pyramid {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    Dilate {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        k: u64,
    },
    Scramble {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum CheckKind {
    /// The eleven acceptance criteria.
    #[command(name = "paper-suite", alias = "acceptance")]
    Acceptance,
}

/// On-disk polytope format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ambient_dim: usize,
    pub points: Vec<Vec<i64>>,
}

impl PolytopeDocument {
    /// Sorts the points and drops duplicates after checking their lengths.
    pub fn canonicalize(mut self) -> Result<Self, Failure> {
        if self.points.is_empty() {
            return Err(Failure::malformed("document has no points"));
        }
        if let Some(p) = self.points.iter().find(|p| p.len() != self.ambient_dim) {
            return Err(Failure::malformed(format!(
                "point {p:?} has length {} but ambient_dim is {}",
                p.len(),
                self.ambient_dim
            )));
        }
        self.points.sort();
        self.points.dedup();
        Ok(self)
    }

    pub fn to_polytope(&self) -> Result<LatticePolytope, Failure> {
        let doc = self.clone().canonicalize()?;
        let points = doc.points.iter().map(|p| LatticePoint::from_i64(p)).collect();
        Ok(LatticePolytope::new(doc.ambient_dim, points)?)
    }

    pub fn from_polytope(p: &LatticePolytope, name: Option<String>) -> Result<Self, Failure> {
        let points = p
            .generators()
            .iter()
            .map(coords_i64)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { name, ambient_dim: p.ambient_dim(), points })
    }
}

/// A failed command: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn cap(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) | Error::Internal(_) | Error::MainTheoremViolation(_) => 1,
            Error::Dimension(_) | Error::Domain(_) | Error::InvalidInput(_) | Error::NotUnimodular => 2,
        };
        Self { code, message: e.to_string() }
    }
}

fn int_i64(x: &Int) -> Result<i64, Failure> {
    x.to_i64()
        .ok_or_else(|| Failure::cap(format!("coordinate {x} does not fit in 64 bits")))
}

fn coords_i64(p: &LatticePoint) -> Result<Vec<i64>, Failure> {
    p.coords().iter().map(int_i64).collect()
}

fn int_json(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn ints_json(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

fn points_json(ps: &[LatticePoint]) -> Value {
    Value::Array(ps.iter().map(|p| ints_json(p.coords())).collect())
}

fn map_json(m: &AffineMap) -> Value {
    let rows: Vec<Value> = m.linear().to_rows().iter().map(|r| ints_json(r)).collect();
    json!({ "linear": rows, "translation": ints_json(m.translation()) })
}

fn read_text(input: &InputArg, stdin: &mut dyn Read) -> Result<String, Failure> {
    match &input.input {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::malformed(format!("cannot read {path}: {e}"))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::malformed(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn parse_document(text: &str) -> Result<PolytopeDocument, Failure> {
    let doc: PolytopeDocument = serde_json::from_str(text)
        .map_err(|e| Failure::malformed(format!("bad polytope document: {e}")))?;
    doc.canonicalize()
}

/// Reads and validates a polytope document.
pub fn read_polytope(text: &str) -> Result<(LatticePolytope, Option<String>), Failure> {
    let doc = parse_document(text)?;
    Ok((doc.to_polytope()?, doc.name))
}

/// Canonical JSON for `p`.
pub fn write_polytope(p: &LatticePolytope, name: Option<String>) -> Result<Value, Failure> {
    serde_json::to_value(PolytopeDocument::from_polytope(p, name)?)
        .map_err(|e| Failure::cap(format!("cannot serialize: {e}")))
}

fn load(input: &InputArg, stdin: &mut dyn Read) -> Result<(LatticePolytope, Option<String>), Failure> {
    read_polytope(&read_text(input, stdin)?)
}

fn heights(h: Vec<u64>) -> Result<Heights, Failure> {
    Ok(Heights::new(h)?)
}

fn execute(cli: Cli, stdin: &mut dyn Read, err: &mut dyn Write) -> Result<(Value, i32), Failure> {
    let ok = |v: Value| Ok((v, 0));
    match cli.command {
        Command::Info(input) => {
            let (p, name) = load(&input, stdin)?;
            let points = p.lattice_points(1)?;
            let mut v = json!({
                "ambient_dim": p.ambient_dim(),
                "dimension": p.dimension(),
                "vertices": points_json(p.vertices()),
                "lattice_point_count": points.len(),
                "lattice_points": points_json(&points),
                "interior_lattice_point_count": p.count_interior_lattice_points(1)?,
            });
            if let Some(n) = name {
                v["name"] = json!(n);
            }
            ok(v)
        }
        Command::Hstar(input) => {
            let (p, _) = load(&input, stdin)?;
            ok(json!({ "hstar": ints_json(hstar(&p)?.trimmed()) }))
        }
        Command::Degree(input) => {
            let (p, _) = load(&input, stdin)?;
            let from_hstar = hstar(&p)?.degree();
            let from_interior = degree_via_interior(&p)?;
            ok(json!({
                "degree": from_hstar,
                "degree_via_interior": from_interior,
                "agree": from_hstar == from_interior,
            }))
        }
        Command::Classify(input) => {
            let (p, _) = load(&input, stdin)?;
            let c = classify(&p)?;
            let mut v = json!({ "tag": c.tag.as_str(), "dimension": c.dim });
            if let Some(h) = &c.heights {
                v["heights"] = json!(h.as_slice());
            }
            if let Some(n) = c.n {
                v["n"] = json!(n);
            }
            if let Some(w) = &c.witness {
                v["witness"] = map_json(w);
            }
            ok(v)
        }
        Command::Triangulations { action } => {
            let (args, kind) = match action {
                TriangAction::Count(a) => (a, 0),
                TriangAction::List(a) => (a, 1),
                TriangAction::Flipgraph(a) => (a, 2),
            };
            let (p, _) = load(&args.input, stdin)?;
            let cfg = PointConfig::new(&p)?;
            let all = enumerate_all_capped(&cfg, args.max_points)?;
            match kind {
                0 => ok(json!({ "count": all.len() })),
                1 => ok(json!({
                    "points": points_json(cfg.points()),
                    "triangulations": all.iter().map(|t| t.simplices().to_vec()).collect::<Vec<_>>(),
                })),
                _ => {
                    let g = flip_graph(&cfg, &all)?;
                    ok(json!({
                        "vertices": g.vertex_count,
                        "edges": g.edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
                        "connected": g.is_connected(),
                    }))
                }
            }
        }
        Command::Secondary { input, max_points } => {
            let (p, _) = load(&input, stdin)?;
            let cfg = PointConfig::new(&p)?;
            let all = enumerate_all_capped(&cfg, max_points)?;
            let sec = secondary_polytope(&cfg, &all)?;
            let r = &sec.report;
            ok(json!({
                "dimension": r.dimension,
                "vertices": r.vertex_count,
                "edges": r.edge_count,
                "facets": r.facet_count,
                "simple": r.is_simple,
                "coherent": r.all_coherent,
                "gkz": sec.gkz.iter().map(|v| ints_json(v)).collect::<Vec<_>>(),
            }))
        }
        Command::Adet { heights: h, verify_example } => {
            if verify_example {
                let r = verify_worked_example()?;
                let mut v = json!({
                    "match": r.matches,
                    "sign": r.sign,
                    "assignment": r.assignment.iter().map(|(a, b)| (a.clone(), json!(b))).collect::<serde_json::Map<_, _>>(),
                });
                if !r.matches {
                    v["diff"] = json!(r.diff);
                    return Ok((v, 1));
                }
                return ok(v);
            }
            let h = h.ok_or_else(|| Failure::malformed("adet needs --heights or --verify-example"))?;
            let e = principal_adet_prism(&heights(h)?)?;
            let p = e.expand(ADET_TERM_CAP)?;
            ok(json!({
                "variables": e.vars,
                "factors": e.factors.iter().map(|(label, f)| json!({ "label": label, "polynomial": f.to_string() })).collect::<Vec<_>>(),
                "total_degree": p.total_degree(),
                "terms": p.to_lines(),
            }))
        }
        Command::Generate { kind } => {
            let (p, name) = match kind {
                GenerateKind::Prism { heights: h } => {
                    let name = format!("lawrence_prism({})", join(&h));
                    (lawrence_prism(&heights(h)?), name)
                }
                GenerateKind::Exceptional { n } => (exceptional_simplex(n)?, format!("exceptional_simplex({n})")),
                GenerateKind::Basic { n } => {
                    if n == 0 {
                        return Err(Failure::malformed("basic simplex needs n >= 1"));
                    }
                    (basic_simplex(n), format!("basic_simplex({n})"))
                }
                GenerateKind::Cayley(input) => {
                    let text = read_text(&input, stdin)?;
                    let docs: Vec<PolytopeDocument> = serde_json::from_str(&text)
                        .map_err(|e| Failure::malformed(format!("expected an array of polytope documents: {e}")))?;
                    let polys = docs
                        .iter()
                        .map(PolytopeDocument::to_polytope)
                        .collect::<Result<Vec<_>, _>>()?;
                    (cayley(&polys)?, format!("cayley of {} polytopes", polys.len()))
                }
                GenerateKind::Pyramid { input, r } => {
                    let (p, _) = load(&input, stdin)?;
                    (pyramid(&p, r)?, format!("pyramid(r={r})"))
                }
                GenerateKind::Dilate { input, k } => {
                    let (p, _) = load(&input, stdin)?;
                    (dilate(&p, k)?, format!("dilate(k={k})"))
                }
                GenerateKind::Scramble { input, seed } => {
                    let (p, _) = load(&input, stdin)?;
                    (scramble(&p, seed).0, format!("scramble(seed={seed})"))
                }
            };
            ok(write_polytope(&p, Some(name))?)
        }
        Command::Check { which: CheckKind::Acceptance } => {
            let outcomes = run_all();
            for o in &outcomes {
                let _ = writeln!(err, "{o}");
            }
            let all_passed = outcomes.iter().all(|o| o.passed);
            let v = json!({
                "passed": all_passed,
                "criteria": outcomes.iter().map(|o| json!({
                    "id": o.id,
                    "title": o.title,
                    "passed": o.passed,
                    "detail": o.detail,
                })).collect::<Vec<_>>(),
            });
            Ok((v, if all_passed { 0 } else { 1 }))
        }
    }
}

fn join(h: &[u64]) -> String {
    h.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Runs the command line `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = write!(err, "{e}");
            let _ = writeln!(out, "{{}}");
            return 2;
        }
    };
    match execute(cli, stdin, err) {
        Ok((value, code)) => {
            let _ = writeln!(out, "{value}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            let _ = writeln!(out, "{{}}");
            f.code
        }
    }
}

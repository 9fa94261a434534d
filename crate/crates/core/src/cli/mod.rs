//! Command-line front end: map-expression parsing and the `ratdyn` subcommands.
//!
//! Every report carries the keys `degree`, `reduced_degree`, `holes`,
//! `verdict`, `witness`, `limits` and `case`, describing the input map;
//! command-specific data sits under further keys.

mod parse;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::degeneration::{certify_indeterminacy, conjugated_limit, normal_form, Certificate, FamilyPoint};
use crate::dynamics::{
    default_horizon, depth_of_iterate, hole_orbit_relations, in_indeterminacy, iterate_direct, iterate_formula,
};
use crate::error::Error;
use crate::exactalg::{Field, FieldContext, QExt, RatFunc, Q};
use crate::git::{classify, iterate_stability, StabilityClass, Strategy, Witness};
use crate::projmap::{decompose, DecomposedMap, HoleDescriptor, MapPoint};

pub use parse::{
    parse_family, parse_family_in, parse_form_in, parse_map, parse_map_in, parse_minpoly, parse_mobius_in,
    parse_point_in, parse_scalar_in, FieldSpec,
};

#[derive(Parser, Debug)]
#[command(name = "ratdyn", version, about = "Exact dynamics of degenerate rational maps on P^1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Scalar field: q, qi, qw:<minpoly> or qt.
    #[arg(long, global = true, default_value = "q")]
    pub field: FieldSpec,
    /// Read map expressions from a file, one per line.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hole polynomial, reduced map and depth profile.
    Decompose { map: Option<String> },
    /// Holes with their depths.
    Holes { map: Option<String> },
    /// GIT stability of the map or of an iterate.
    Stability {
        map: Option<String>,
        #[arg(short, default_value_t = 1)]
        n: u32,
        #[arg(long, value_enum, default_value_t = StrategyArg::Auto)]
        strategy: StrategyArg,
    },
    /// The n-th iterate as a point of P^{2d^n+1}.
    Iterate {
        map: Option<String>,
        #[arg(short)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Depth of the n-th iterate at a point.
    Depth {
        map: Option<String>,
        #[arg(short)]
        z: String,
        #[arg(short, default_value_t = 1)]
        n: u32,
    },
    /// Membership in the indeterminacy locus I(d).
    Indeterminacy { map: Option<String> },
    /// Hole orbit relations under the reduced map.
    Relations {
        map: Option<String>,
        #[arg(long)]
        horizon: Option<u32>,
    },
    /// Conjugate to a normal form.
    NormalForm { map: Option<String> },
    /// Conjugated t -> 0 limit of the n-th iterate of a family in t.
    Limit {
        map: Option<String>,
        #[arg(short, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "[t*X+Y:Y]")]
        conjugator: String,
    },
    /// Certificate that the conjugacy class is indeterminate for the n-th iterate map.
    Certify {
        map: Option<String>,
        #[arg(short, default_value_t = 2)]
        n: u32,
    },
}

impl Command {
    fn map_arg(&self) -> Option<&str> {
        let m = match self {
            Command::Decompose { map }
            | Command::Holes { map }
            | Command::Stability { map, .. }
            | Command::Iterate { map, .. }
            | Command::Depth { map, .. }
            | Command::Indeterminacy { map }
            | Command::Relations { map, .. }
            | Command::NormalForm { map }
            | Command::Limit { map, .. }
            | Command::Certify { map, .. } => map,
        };
        m.as_deref()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    Formula,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyArg {
    Auto,
    Fast,
    Symbolic,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Fast => Strategy::Fast,
            StrategyArg::Symbolic => Strategy::Symbolic,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

/// Result of running one command on one input.
#[derive(Clone, Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// 0 ok, 2 unsupported, 1 error.
    pub status: i32,
}

/// Everything printed by one invocation.
#[derive(Clone, Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

fn holes_json<K: Field>(dm: &DecomposedMap<K>) -> Value {
    let holes: Vec<Value> = dm
        .profile
        .iter()
        .map(|h| match &h.descriptor {
            HoleDescriptor::Point(p) => json!({ "point": p.to_string(), "depth": h.depth }),
            HoleDescriptor::Factor(g) => json!({ "factor": g.to_string(), "depth": h.depth }),
        })
        .collect();
    Value::Array(holes)
}

fn witness_json<K: Field>(w: &Witness<K>) -> Value {
    match w {
        Witness::DepthsWithinBounds => json!({ "kind": "depths_within_bounds" }),
        Witness::Hole { descriptor, depth, fixed } => {
            let mut m = Map::new();
            m.insert("kind".into(), json!("hole"));
            match descriptor {
                HoleDescriptor::Point(p) => m.insert("point".into(), json!(p.to_string())),
                HoleDescriptor::Factor(g) => m.insert("factor".into(), json!(g.to_string())),
            };
            m.insert("depth".into(), json!(depth));
            m.insert("fixed".into(), json!(fixed));
            Value::Object(m)
        }
    }
}

fn base<K: Field>(f: &MapPoint<K>) -> Map<String, Value> {
    let dm = decompose(f);
    let mut m = Map::new();
    m.insert("map".into(), json!(f.to_string()));
    m.insert("degree".into(), json!(dm.degree));
    m.insert("reduced_degree".into(), json!(dm.reduced.degree()));
    m.insert("holes".into(), holes_json(&dm));
    m.insert("verdict".into(), Value::Null);
    m.insert("witness".into(), Value::Null);
    m.insert("limits".into(), json!([]));
    m.insert("case".into(), Value::Null);
    m
}

fn empty_base() -> Map<String, Value> {
    let mut m = Map::new();
    for k in ["map", "degree", "reduced_degree", "verdict", "witness", "case"] {
        m.insert(k.into(), Value::Null);
    }
    m.insert("holes".into(), json!([]));
    m.insert("limits".into(), json!([]));
    m
}

fn set_class<K: Field>(m: &mut Map<String, Value>, c: &StabilityClass<K>) {
    m.insert("verdict".into(), json!(c.verdict));
    m.insert("witness".into(), witness_json(&c.witness));
}

fn limit_json<K: Field>(l: &MapPoint<K>) -> Value {
    let c = classify(l);
    json!({ "map": l.to_string(), "verdict": c.verdict, "holes": holes_json(&decompose(l)) })
}

fn holes_text<K: Field>(dm: &DecomposedMap<K>) -> String {
    if dm.profile.is_empty() {
        return "none".into();
    }
    dm.profile
        .iter()
        .map(|h| format!("{} (depth {})", h.descriptor, h.depth))
        .collect::<Vec<_>>()
        .join(", ")
}

fn ok(m: Map<String, Value>, text: String) -> Result<Report, Error> {
    Ok(Report { json: Value::Object(m), text, status: 0 })
}

/// Runs a command whose input is a map over `K`.
fn run_map<K: Field>(cmd: &Command, f: &MapPoint<K>, ctx: &FieldContext) -> Result<Report, Error> {
    let dm = decompose(f);
    let mut m = base(f);
    match cmd {
        Command::Decompose { .. } => {
            let cls = classify(f);
            set_class(&mut m, &cls);
            m.insert("hole_poly".into(), json!(dm.hole_poly.to_string()));
            m.insert("reduced".into(), json!(dm.reduced.to_string()));
            let text = format!(
                "degree {}\nhole polynomial {}\nreduced map {} of degree {}\nholes {}",
                dm.degree,
                dm.hole_poly,
                dm.reduced,
                dm.reduced.degree(),
                holes_text(&dm)
            );
            ok(m, text)
        }
        Command::Holes { .. } => {
            let text = dm
                .profile
                .iter()
                .map(|h| format!("{}\t{}", h.descriptor, h.depth))
                .collect::<Vec<_>>()
                .join("\n");
            ok(m, text)
        }
        Command::Stability { n, strategy, .. } => {
            let cls = iterate_stability(f, *n, (*strategy).into())?;
            set_class(&mut m, &cls);
            m.insert("n".into(), json!(n));
            let what = if *n == 1 { "f".to_string() } else { format!("f^{n}") };
            ok(m, format!("{what}: {} ({})", cls.verdict, cls.witness))
        }
        Command::Iterate { n, method, .. } => {
            let (it, equal) = match method {
                Method::Direct => (iterate_direct(f, *n)?, None),
                Method::Formula => (iterate_formula(f, *n)?, None),
                Method::Both => {
                    let a = iterate_direct(f, *n)?;
                    let b = iterate_formula(f, *n)?;
                    let eq = a == b;
                    (b, Some(eq))
                }
            };
            let idm = decompose(&it);
            m.insert(
                "iterate".into(),
                json!({
                    "n": n,
                    "map": it.to_string(),
                    "degree": idm.degree,
                    "reduced_degree": idm.reduced.degree(),
                    "holes": holes_json(&idm),
                    "verdict": classify(&it).verdict,
                    "equal": equal,
                }),
            );
            let mut text = format!("f^{n} = {it}");
            if let Some(eq) = equal {
                text.push_str(&format!("\ndirect and formula agree: {eq}"));
            }
            ok(m, text)
        }
        Command::Depth { z, n, .. } => {
            let p = parse_point_in::<K>(z, ctx)?;
            let d = depth_of_iterate(f, *n, &p)?;
            m.insert("point".into(), json!(p.to_string()));
            m.insert("n".into(), json!(n));
            m.insert("depth".into(), json!(d));
            ok(m, format!("depth of f^{n} at {p}: {d}"))
        }
        Command::Indeterminacy { .. } => {
            let w = in_indeterminacy(f);
            let text = match &w {
                Some(w) => format!("in I({}): constant value {} is a hole of depth {}", dm.degree, w.hole, w.depth),
                None => format!("not in I({})", dm.degree),
            };
            m.insert("case".into(), json!(if w.is_some() { "indeterminate" } else { "determinate" }));
            m.insert(
                "indeterminacy".into(),
                match &w {
                    Some(w) => json!({ "member": true, "hole": w.hole.to_string(), "depth": w.depth }),
                    None => json!({ "member": false }),
                },
            );
            ok(m, text)
        }
        Command::Relations { horizon, .. } => {
            let h = horizon.unwrap_or_else(|| default_horizon(dm.degree));
            let rel = hole_orbit_relations(f, h);
            let items: Vec<Value> = rel
                .relations
                .iter()
                .map(|r| json!({ "source": r.source.to_string(), "target": r.target.to_string(), "time": r.time }))
                .collect();
            m.insert(
                "relations".into(),
                json!({
                    "horizon": h,
                    "relations": items,
                    "constant_reduced_map": rel.constant_reduced_map,
                    "irrational_descriptors": rel.irrational_descriptors,
                }),
            );
            let mut lines: Vec<String> = rel
                .relations
                .iter()
                .map(|r| format!("f_hat^{}({}) = {}", r.time, r.source, r.target))
                .collect();
            if rel.constant_reduced_map {
                lines.push("reduced map is constant".into());
            } else if lines.is_empty() {
                lines.push(format!("no relations up to time {h}"));
            }
            ok(m, lines.join("\n"))
        }
        Command::NormalForm { .. } => {
            let nf = normal_form(f)?;
            m.insert("case".into(), json!(nf.tag.to_string()));
            m.insert(
                "normal_form".into(),
                json!({
                    "tag": nf.tag.to_string(),
                    "map": nf.map.to_string(),
                    "witness": nf.witness.to_string(),
                    "residual": nf.residual.to_string(),
                    "parameter": nf.parameter.as_ref().map(|p| p.to_string()),
                }),
            );
            ok(m, format!("{}: {}\nconjugated by {}", nf.tag, nf.map, nf.witness))
        }
        Command::Certify { n, .. } => {
            let cert = certify_indeterminacy(f, *n)?;
            certificate_report(m, &cert)
        }
        Command::Limit { .. } => unreachable!("families are handled separately"),
    }
}

fn certificate_report<K: Field>(mut m: Map<String, Value>, c: &Certificate<K>) -> Result<Report, Error> {
    set_class(&mut m, &classify(&c.map));
    m.insert("limits".into(), Value::Array(c.limits.iter().map(limit_json).collect()));
    m.insert("case".into(), json!(c.route.to_string()));
    let fams: Vec<String> = c.families.iter().map(|f| f.to_string()).collect();
    m.insert(
        "certificate".into(),
        json!({
            "n": c.n,
            "route": c.route.to_string(),
            "normalization": c.normalization.to_string(),
            "normalized": c.normalized.to_string(),
            "families": fams,
            "converges": c.converges,
            "verdicts": c.verdicts,
            "conjugacy": c.conjugacy.to_string(),
            "distinct": c.conjugacy.is_distinct(),
            "period_law": c.period_law,
            "discarded_limits": c.discarded_limits.as_ref().map(|ls| ls.iter().map(|l| l.to_string()).collect::<Vec<_>>()),
            "narrative": c.narrative(),
        }),
    );
    let mut text = format!("[f] is indeterminate for the iterate map of order {} via {}\n", c.n, c.route);
    text.push_str(&format!("normalized f = {}\n", c.normalized));
    for (i, (fam, l)) in c.families.iter().zip(&c.limits).enumerate() {
        text.push_str(&format!("family {}: {fam}\n  limit {l} ({})\n", i + 1, c.verdicts[i]));
    }
    if let Some([a, b]) = &c.discarded_limits {
        text.push_str(&format!("discarded limits {a} and {b}\n"));
    }
    text.push_str(&c.narrative());
    ok(m, text)
}

fn run_family<K: Field>(fam: &FamilyPoint<K>, n: u32) -> Result<Report, Error> {
    let mut m = base(&fam.map);
    let l = conjugated_limit(fam, n)?;
    m.insert("limits".into(), json!([limit_json(&l)]));
    m.insert("conjugator".into(), json!(fam.conjugator.to_string()));
    m.insert("n".into(), json!(n));
    ok(m, format!("limit of f_t^{n} conjugated by {}: {l} ({})", fam.conjugator, classify(&l).verdict))
}

fn run_one_in<K: Field>(cmd: &Command, text: &str, ctx: &FieldContext) -> Result<Report, Error> {
    match cmd {
        Command::Limit { n, conjugator, .. } => {
            let map = parse_map_in::<RatFunc<K>>(text, ctx)?;
            let conj = parse_mobius_in::<RatFunc<K>>(conjugator, ctx)?;
            run_family(&FamilyPoint::with_conjugator(map, conj), *n)
        }
        _ => run_map(cmd, &parse_map_in::<K>(text, ctx)?, ctx),
    }
}

fn error_report(e: &Error) -> Report {
    let mut m = empty_base();
    m.insert("case".into(), json!(if e.is_unsupported() { "unsupported" } else { "error" }));
    m.insert("error".into(), json!({ "code": e.code(), "message": e.to_string() }));
    Report { json: Value::Object(m), text: e.to_string(), status: if e.is_unsupported() { 2 } else { 1 } }
}

/// Runs a command on one map expression.
pub fn run_one(cmd: &Command, field: &FieldSpec, text: &str) -> Report {
    let ctx = field.context();
    let r = match field {
        FieldSpec::Q => run_one_in::<Q>(cmd, text, &ctx),
        FieldSpec::Qi | FieldSpec::Qw(_) => run_one_in::<QExt>(cmd, text, &ctx),
        // Q(t)(t) would be meaningless; families already live over Q(t)
        FieldSpec::Qt => match cmd {
            Command::Limit { .. } => run_one_in::<Q>(cmd, text, &ctx),
            _ => run_one_in::<RatFunc<Q>>(cmd, text, &ctx),
        },
    };
    match r {
        Ok(rep) => rep,
        Err(e) => {
            let mut rep = error_report(&e);
            // keep the input description when the map itself parsed
            if let (Value::Object(m), Ok(Value::Object(b))) = (&mut rep.json, describe(field, text)) {
                for (k, v) in b {
                    if m.get(&k).is_none_or(|x| x.is_null() || x == &json!([])) {
                        m.insert(k, v);
                    }
                }
            }
            rep
        }
    }
}

fn describe(field: &FieldSpec, text: &str) -> Result<Value, Error> {
    let ctx = field.context();
    Ok(Value::Object(match field {
        FieldSpec::Q => base(&parse_map_in::<Q>(text, &ctx)?),
        FieldSpec::Qi | FieldSpec::Qw(_) => base(&parse_map_in::<QExt>(text, &ctx)?),
        FieldSpec::Qt => base(&parse_map_in::<RatFunc<Q>>(text, &ctx)?),
    }))
}

fn inputs(cli: &Cli, stdin: &mut dyn Read) -> Result<Vec<String>, String> {
    let raw = match (cli.command.map_arg(), &cli.file) {
        (Some(m), _) => return Ok(vec![m.to_string()]),
        (None, Some(path)) => {
            std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?
        }
        (None, None) => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| format!("cannot read standard input: {e}"))?;
            s
        }
    };
    let lines: Vec<String> = raw
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect();
    if lines.is_empty() {
        return Err("no map expression given".into());
    }
    Ok(lines)
}

/// Runs a parsed command line. Batch input yields one report per line; the
/// status is the worst one (error over unsupported over success).
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Output {
    let lines = match inputs(cli, stdin) {
        Ok(l) => l,
        Err(e) => return Output { stdout: String::new(), stderr: format!("error: {e}\n"), status: 1 },
    };
    let batch = lines.len() > 1;
    let mut out = Output::default();
    for line in &lines {
        let rep = run_one(&cli.command, &cli.field, line);
        if cli.json {
            let s = if batch {
                serde_json::to_string(&rep.json)
            } else {
                serde_json::to_string_pretty(&rep.json)
            };
            out.stdout.push_str(&s.expect("JSON values serialize"));
            out.stdout.push('\n');
        } else if rep.status == 0 {
            if batch {
                out.stdout.push_str(&format!("# {line}\n"));
            }
            out.stdout.push_str(&rep.text);
            out.stdout.push('\n');
        } else {
            let label = if rep.status == 2 { "unsupported" } else { "error" };
            out.stderr.push_str(&format!("{label}: {}\n", rep.text));
        }
        out.status = match (out.status, rep.status) {
            (1, _) | (_, 1) => 1,
            (2, _) | (_, 2) => 2,
            _ => 0,
        };
    }
    out
}

/// Entry point for the binary: parses arguments, runs, prints, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = execute(&cli, &mut std::io::stdin());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.status
}

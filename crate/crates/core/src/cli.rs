//! The `omegalg` command line.
//!
//! Exit codes: 0 computed, 1 negative verdict, 2 input error, 3 budget or
//! cap exhausted. `--json` switches every report, including errors, to a
//! JSON object carrying `"schema": "omegalg.report/1"`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::algebra::StructuredAlgebra;
use crate::error::{Error, Result};
use crate::format::{parse_action, parse_epsilon, read_algebra, read_text, AlgebraFile};
use crate::identities::{find_separating_identity, identity_space, system_for, translate_from_omega, translate_to_omega, Side};
use crate::isosearch::{find_graded_isomorphism, IsoOutcome, Strategy, DEFAULT_ISO_BUDGET};
use crate::linalg::Vector;
use crate::presets::{
    check_membership, colour_lie_check, generalized_action_preset, hopf_preset, involution_preset,
    superinvolution_preset, trace_preset, Epsilon, GeneralizedAction, Preset,
};
use crate::rewrite::{RewriteSystem, Theory};
use crate::structure::{describe_vector, is_graded_prime_with_cap, is_graded_simple, DEFAULT_PRIME_DIMENSION_CAP};
use crate::syntax::{parse_polynomial, parse_vector, Context};

pub const SCHEMA: &str = "omegalg.report/1";

#[derive(Parser, Debug)]
#[command(name = "omegalg", version, about = "Graded Ω-algebras: normal forms, identities, simplicity and isomorphism")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized strategy.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and check an algebra file, and membership in a preset.
    Validate {
        file: PathBuf,
        #[arg(long)]
        preset: Option<String>,
    },
    /// Normal form of a polynomial.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        preset: Option<String>,
    },
    /// Value of a polynomial at a binding such as "x1=e11, x2=e12 + e21".
    Eval {
        file: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long)]
        at: String,
    },
    /// Multilinear identities of one degree.
    Idspace {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Grading component per variable, e.g. "x1:0,x2:1".
        #[arg(long)]
        constraint: Option<String>,
    },
    /// Whether two algebras have the same identities up to a degree.
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// A lowest-degree identity of one algebra failing in the other.
    Separate {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
    /// Graded simplicity.
    Simple { file: PathBuf },
    /// Graded primeness.
    Prime {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME_DIMENSION_CAP)]
        cap: usize,
    },
    /// Search for a graded isomorphism.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = IsoStrategy::Exhaustive)]
        strategy: IsoStrategy,
        /// Trials for the random strategy.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Between decorated-variable and projection forms.
    Translate {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long)]
        poly: String,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IsoStrategy {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    ToOmega,
    FromOmega,
}

/// Overrides read from `OMEGALG_ENUM_CAP`, `OMEGALG_STEP_BUDGET` and
/// `OMEGALG_ISO_BUDGET`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub enumeration_cap: Option<usize>,
    pub step_budget: Option<usize>,
    pub iso_budget: Option<usize>,
}

impl Settings {
    pub fn from_env() -> std::result::Result<Settings, String> {
        let read = |name: &str| -> std::result::Result<Option<usize>, String> {
            match std::env::var(name) {
                Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("{name} must be a non-negative integer")),
                Err(_) => Ok(None),
            }
        };
        Ok(Settings {
            enumeration_cap: read("OMEGALG_ENUM_CAP")?,
            step_budget: read("OMEGALG_STEP_BUDGET")?,
            iso_budget: read("OMEGALG_ISO_BUDGET")?,
        })
    }

    fn configure(&self, rs: &mut RewriteSystem) {
        if let Some(c) = self.enumeration_cap {
            rs.enumeration_cap = c;
        }
        if let Some(b) = self.step_budget {
            rs.step_budget = b;
        }
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    lines: Vec<String>,
    data: Map<String, Value>,
}

impl Report {
    fn new(code: i32) -> Report {
        Report { code, lines: Vec::new(), data: Map::new() }
    }

    fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.data.insert(key.to_string(), v.into());
        self
    }
}

fn status(code: i32) -> &'static str {
    match code {
        0 => "ok",
        1 => "negative",
        2 => "error",
        _ => "budget",
    }
}

fn error_code(e: &Error) -> i32 {
    if e.is_budget() {
        3
    } else {
        2
    }
}

/// JSON text with every non-ASCII character written as a `\u` escape.
pub fn ascii_json(v: &Value) -> String {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if c.is_ascii() {
            out.push(c);
        } else {
            let mut buf = [0u16; 2];
            for unit in c.encode_utf16(&mut buf) {
                out.push_str(&format!("\\u{unit:04x}"));
            }
        }
    }
    out
}

fn render(command: &str, json_out: bool, r: Report) -> Outcome {
    if json_out {
        let mut obj = Map::new();
        obj.insert("schema".into(), SCHEMA.into());
        obj.insert("command".into(), command.into());
        obj.insert("status".into(), status(r.code).into());
        obj.insert("exit_code".into(), r.code.into());
        obj.extend(r.data);
        Outcome { code: r.code, stdout: ascii_json(&Value::Object(obj)) + "\n", stderr: String::new() }
    } else {
        let mut stdout = r.lines.join("\n");
        stdout.push('\n');
        Outcome { code: r.code, stdout, stderr: String::new() }
    }
}

fn render_error(command: &str, json_out: bool, e: &Error) -> Outcome {
    let code = error_code(e);
    if json_out {
        let mut r = Report::new(code);
        r.set("error", e.to_string());
        render(command, true, r)
    } else {
        Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

/// Runs the command line `args` (program name first) with the given
/// overrides.
pub fn run_with<I, S>(args: I, settings: Settings) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let command = command_name(&cli.command);
    match execute(&cli, settings) {
        Ok(r) => render(command, cli.json, r),
        Err(e) => render_error(command, cli.json, &e),
    }
}

pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Settings::from_env() {
        Ok(s) => run_with(args, s),
        Err(m) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Normalize { .. } => "normalize",
        Command::Eval { .. } => "eval",
        Command::Idspace { .. } => "idspace",
        Command::Compare { .. } => "compare",
        Command::Separate { .. } => "separate",
        Command::Simple { .. } => "simple",
        Command::Prime { .. } => "prime",
        Command::Iso { .. } => "iso",
        Command::Translate { .. } => "translate",
    }
}

fn execute(cli: &Cli, settings: Settings) -> Result<Report> {
    match &cli.command {
        Command::Validate { file, preset } => validate(file, preset.as_deref()),
        Command::Normalize { file, term, preset } => normalize(file, term, preset.as_deref(), settings),
        Command::Eval { file, term, at } => eval(file, term, at),
        Command::Idspace { file, degree, constraint } => idspace(file, *degree, constraint.as_deref(), settings),
        Command::Compare { first, second, max_degree } => separate(first, second, *max_degree, settings, true),
        Command::Separate { first, second, max_degree } => separate(first, second, *max_degree, settings, false),
        Command::Simple { file } => simple(file),
        Command::Prime { file, cap } => prime(file, *cap),
        Command::Iso { first, second, strategy, budget } => iso(first, second, *strategy, *budget, cli.seed, settings),
        Command::Translate { direction, poly, file } => translate(file, *direction, poly, settings),
    }
}

enum ResolvedPreset {
    Rules(Preset),
    ColourLie { bracket: String, epsilon: Epsilon },
}

/// Resolves a preset name; file arguments named inside an algebra file are
/// relative to that file.
fn resolve_preset(name: &str, a: &StructuredAlgebra, base: Option<&Path>) -> Result<(ResolvedPreset, Option<GeneralizedAction>)> {
    let field = a.field();
    let path = |rest: &str| -> PathBuf {
        let p = PathBuf::from(rest);
        match base.and_then(Path::parent) {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p,
        }
    };
    match name.split_once(':') {
        None => match name {
            "involution" => Ok((ResolvedPreset::Rules(involution_preset(field)), None)),
            "superinvolution" => Ok((ResolvedPreset::Rules(superinvolution_preset(field)), None)),
            "trace" => Ok((ResolvedPreset::Rules(trace_preset(field)), None)),
            _ => Err(Error::InvalidPreset(format!("unknown preset {name:?}"))),
        },
        Some((kind @ ("hopf" | "genaction"), rest)) => {
            let p = path(rest);
            let h = parse_action(&read_text(&p)?, &p.display().to_string(), a)?;
            let preset = if kind == "hopf" { hopf_preset(&h)? } else { generalized_action_preset(&h)? };
            Ok((ResolvedPreset::Rules(preset), Some(h)))
        }
        Some(("colour-lie", rest)) => {
            let p = path(rest);
            let group = &a
                .grading()
                .ok_or_else(|| Error::InvalidPreset("colour Lie presets need a graded algebra file".into()))?
                .group;
            let (bracket, epsilon) = parse_epsilon(&read_text(&p)?, &p.display().to_string(), group, field)?;
            Ok((ResolvedPreset::ColourLie { bracket, epsilon }, None))
        }
        Some(_) => Err(Error::InvalidPreset(format!("unknown preset {name:?}"))),
    }
}

/// The preset from the flag, else from the file header.
fn chosen_preset<'a>(flag: Option<&'a str>, file: &'a AlgebraFile, path: &'a Path) -> Option<(&'a str, Option<&'a Path>)> {
    match flag {
        Some(p) => Some((p, None)),
        None => file.preset.as_deref().map(|p| (p, Some(path))),
    }
}

fn describe_algebra(r: &mut Report, a: &StructuredAlgebra) {
    let sig: Vec<String> = a.signature().ops().iter().map(|o| format!("{}/{}", o.name, o.arity)).collect();
    r.set("field", a.field().to_string())
        .set("dimension", a.dim())
        .set("signature", sig.clone())
        .set("basis", a.basis().to_vec());
    let grading = match a.grading() {
        Some(g) => {
            let support: Vec<&str> = g.support().into_iter().map(|i| g.group.name(i)).collect();
            r.line(format!(
                "dimension {} over {}, signature {}, graded by {} elements, support {}",
                a.dim(),
                a.field(),
                sig.join(" "),
                g.group.len(),
                support.join(" ")
            ));
            json!({"elements": g.group.elements(), "support": support})
        }
        None => {
            r.line(format!("dimension {} over {}, signature {}, ungraded", a.dim(), a.field(), sig.join(" ")));
            Value::Null
        }
    };
    r.set("grading", grading);
}

fn validate(path: &Path, preset: Option<&str>) -> Result<Report> {
    let file = read_algebra(path)?;
    let a = &file.algebra;
    let mut r = Report::new(0);
    r.line(format!("valid: {}", path.display()));
    describe_algebra(&mut r, a);
    let Some((name, base)) = chosen_preset(preset, &file, path) else {
        r.set("preset", Value::Null);
        return Ok(r);
    };
    let (resolved, action) = resolve_preset(name, a, base)?;
    let violations: Vec<(String, String)> = match resolved {
        ResolvedPreset::Rules(p) => {
            let target = match &action {
                Some(h) if (0..h.hdim()).any(|b| a.signature().arity(&h.op_name(b)).is_none()) => h.attach(a)?,
                _ => a.clone(),
            };
            check_membership(&target, &p)?.into_iter().map(|v| (v.identity.clone(), v.to_string())).collect()
        }
        ResolvedPreset::ColourLie { bracket, epsilon } => colour_lie_check(a, &bracket, &epsilon)?
            .into_iter()
            .map(|v| (v.axiom.to_string(), format!("{} fails at ({})", v.axiom, v.basis.join(", "))))
            .collect(),
    };
    if violations.is_empty() {
        r.line(format!("preset {name}: satisfied"));
    } else {
        r.code = 1;
        r.line(format!("preset {name}: {} violation(s)", violations.len()));
        for (_, text) in &violations {
            r.line(format!("  {text}"));
        }
    }
    r.set(
        "preset",
        json!({
            "name": name,
            "satisfied": violations.is_empty(),
            "violations": violations.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>(),
        }),
    );
    Ok(r)
}

/// The algebras of the given files with the rewrite system they share: the
/// theory of their common preset when they name one, the free theory
/// otherwise. Hopf-type presets attach their action first.
fn prepare(paths: &[&Path], settings: Settings) -> Result<(Vec<StructuredAlgebra>, RewriteSystem)> {
    let files = paths.iter().map(|p| read_algebra(p)).collect::<Result<Vec<_>>>()?;
    let common = files[0].preset.clone().filter(|p| files.iter().all(|f| f.preset.as_ref() == Some(p)));
    let mut algebras = Vec::with_capacity(files.len());
    let mut theory = Theory::Free;
    for (file, path) in files.iter().zip(paths) {
        let mut a = file.algebra.clone();
        if let Some(name) = &common {
            if let (ResolvedPreset::Rules(p), action) = resolve_preset(name, &a, Some(path))? {
                if let Some(h) = action {
                    a = h.attach(&a)?;
                }
                theory = p.theory.clone();
            }
        }
        algebras.push(a);
    }
    let mut rs = system_for(&algebras.iter().collect::<Vec<_>>(), theory)?;
    settings.configure(&mut rs);
    Ok((algebras, rs))
}

fn file_system(a: &StructuredAlgebra, settings: Settings) -> Result<RewriteSystem> {
    let mut rs = system_for(&[a], Theory::Free)?;
    settings.configure(&mut rs);
    Ok(rs)
}

fn parse_in(rs: &RewriteSystem, text: &str) -> Result<crate::poly::Polynomial> {
    let sig = &rs.signature().base;
    let mut ctx = Context::new(sig).with_source("<term>");
    if let Some(g) = rs.grade_data() {
        ctx = ctx.with_group(&g.group);
    }
    parse_polynomial(text, rs.field(), ctx)
}

fn normalize(path: &Path, term: &str, preset: Option<&str>, settings: Settings) -> Result<Report> {
    let file = read_algebra(path)?;
    let a = &file.algebra;
    let (mut rs, name) = match chosen_preset(preset, &file, path) {
        Some((name, base)) => match resolve_preset(name, a, base)?.0 {
            ResolvedPreset::Rules(p) => (p.rewrite_system()?, Some(name)),
            ResolvedPreset::ColourLie { .. } => (file_system(a, settings)?, Some(name)),
        },
        None => (file_system(a, settings)?, None),
    };
    settings.configure(&mut rs);
    let p = parse_in(&rs, term)?;
    let nf = rs.normalize(&p)?;
    let mut r = Report::new(0);
    r.line(nf.to_string());
    r.set("input", p.to_string()).set("normal_form", nf.to_string()).set("preset", name);
    Ok(r)
}

/// `x1=e11, x2^{1}=e12 + e21`.
fn parse_binding(text: &str, a: &StructuredAlgebra) -> Result<Vec<(u32, Option<String>, Vector)>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("binding {part:?} is not of the form x1=vector")))?;
        let key = key.trim();
        let (var, grade) = match key.split_once("^{") {
            Some((v, g)) => {
                let g = g.strip_suffix('}').ok_or_else(|| Error::Parse(format!("missing '}}' in {key:?}")))?;
                (v, Some(g.to_string()))
            }
            None => (key, None),
        };
        let index: u32 = var
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .filter(|&i| i > 0)
            .ok_or_else(|| Error::Parse(format!("bad variable {key:?}")))?;
        let v = parse_vector(value, a.field(), a.basis(), "<binding>")?;
        out.push((index, grade, v));
    }
    Ok(out)
}

fn eval(path: &Path, term: &str, at: &str) -> Result<Report> {
    let a = read_algebra(path)?.algebra;
    let mut ctx = Context::new(a.signature()).with_source("<term>");
    if let Some(g) = a.grading() {
        ctx = ctx.with_group(&g.group);
    }
    let p = parse_polynomial(term, a.field(), ctx)?;
    let binding = parse_binding(at, &a)?;
    let value = if binding.iter().any(|(_, g, _)| g.is_some()) {
        let mut map = HashMap::new();
        for (i, g, v) in binding {
            let g = g.ok_or_else(|| Error::Parse(format!("x{i} needs a degree like x{i}^{{g}}")))?;
            map.insert((i, g), v);
        }
        a.eval_graded(&p, &map)?
    } else {
        a.eval(&p, &binding.into_iter().map(|(i, _, v)| (i, v)).collect())?
    };
    let text = describe_vector(&a, &value);
    let mut r = Report::new(0);
    r.line(text.clone());
    r.set("polynomial", p.to_string()).set("value", text);
    Ok(r)
}

fn parse_constraint(text: &str, rs: &RewriteSystem, n: usize) -> Result<Vec<usize>> {
    let group = &rs
        .grade_data()
        .ok_or_else(|| Error::InvalidGrading("a degree constraint needs a graded algebra file".into()))?
        .group;
    let mut out = vec![None; n];
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (var, g) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("constraint {part:?} is not of the form x1:g")))?;
        let i: usize = var
            .trim()
            .strip_prefix('x')
            .and_then(|d| d.parse().ok())
            .filter(|&i| (1..=n).contains(&i))
            .ok_or_else(|| Error::Parse(format!("constraint variable {var:?} is not among x1..x{n}")))?;
        let g = group
            .index_of(g.trim())
            .ok_or_else(|| Error::Parse(format!("{} is not a semigroup element", g.trim())))?;
        if out[i - 1].replace(g).is_some() {
            return Err(Error::Parse(format!("x{i} is constrained twice")));
        }
    }
    out.iter()
        .enumerate()
        .map(|(k, g)| g.ok_or_else(|| Error::Parse(format!("constraint does not give x{}", k + 1))))
        .collect()
}

fn constraint_text(rs: &RewriteSystem, c: Option<&[usize]>) -> Option<String> {
    let (c, gd) = (c?, rs.grade_data()?);
    Some(c.iter().enumerate().map(|(k, &g)| format!("x{}:{}", k + 1, gd.group.name(g))).collect::<Vec<_>>().join(","))
}

fn idspace(path: &Path, degree: usize, constraint: Option<&str>, settings: Settings) -> Result<Report> {
    let (algebras, rs) = prepare(&[path], settings)?;
    let a = &algebras[0];
    let c = constraint.map(|t| parse_constraint(t, &rs, degree)).transpose()?;
    let space = identity_space(a, &rs, degree, c.as_deref())?;
    let ids: Vec<String> = space.identities().iter().map(|p| p.to_string()).collect();
    let ctext = constraint_text(&rs, c.as_deref());
    let mut r = Report::new(0);
    r.line(format!(
        "degree {degree}, constraint {}: {} monomials, {} independent identities",
        ctext.as_deref().unwrap_or("none"),
        space.monomials.len(),
        ids.len()
    ));
    for id in &ids {
        r.line(format!("  {id}"));
    }
    if let Some(note) = space.note() {
        r.line(format!("note: {note}"));
    }
    r.set("degree", degree)
        .set("constraint", ctext)
        .set("monomials", space.monomials.len())
        .set("dimension", ids.len())
        .set("identities", ids)
        .set("note", space.note());
    Ok(r)
}

fn separate(first: &Path, second: &Path, max_degree: usize, settings: Settings, compare: bool) -> Result<Report> {
    let (algebras, rs) = prepare(&[first, second], settings)?;
    let (a, b) = (&algebras[0], &algebras[1]);
    let sep = find_separating_identity(a, b, &rs, max_degree)?;
    let mut r = Report::new(0);
    r.set("max_degree", max_degree);
    let Some(sep) = sep else {
        if compare {
            r.line(format!("identities agree up to degree {max_degree}"));
            r.set("equal", true);
        } else {
            r.code = 1;
            r.line(format!("no separating identity up to degree {max_degree}"));
        }
        r.set("separation", Value::Null);
        return Ok(r);
    };
    let ctext = constraint_text(&rs, sep.constraint.as_deref());
    let side = match sep.satisfied_by {
        Side::First => "first",
        Side::Second => "second",
    };
    if compare {
        r.code = 1;
        r.set("equal", false);
        let mut head = format!("differ at degree {}", sep.degree);
        if let Some(c) = &ctext {
            head.push_str(&format!(", constraint {c}"));
        }
        r.line(format!("{head}, separating identity {}", sep.identity));
    } else {
        r.line(format!("separating identity at degree {}: {}", sep.degree, sep.identity));
    }
    if let Some(g) = &sep.graded {
        r.line(format!("graded form: {g}"));
    }
    r.line(format!("satisfied by the {side} algebra ({})", if side == "first" { first } else { second }.display()));
    r.set(
        "separation",
        json!({
            "degree": sep.degree,
            "constraint": ctext,
            "identity": sep.identity.to_string(),
            "graded": sep.graded.as_ref().map(|g| g.to_string()),
            "satisfied_by": side,
        }),
    );
    Ok(r)
}

fn simple(path: &Path) -> Result<Report> {
    let a = read_algebra(path)?.algebra;
    let rep = is_graded_simple(&a)?;
    let mut r = Report::new(if rep.simple { 0 } else { 1 });
    r.line(format!("graded-simple: {}", if rep.simple { "yes" } else { "no" }));
    r.line(format!("reason: {}", rep.reason));
    let witness = rep.witness.as_ref().map(|w| w.describe(&a));
    if let Some(w) = &witness {
        r.line(format!("proper graded ideal: span{{{}}}", w.join("; ")));
    }
    r.set("simple", rep.simple).set("reason", rep.reason.clone()).set("witness", witness);
    Ok(r)
}

fn prime(path: &Path, cap: usize) -> Result<Report> {
    let a = read_algebra(path)?.algebra;
    let rep = is_graded_prime_with_cap(&a, cap)?;
    let mut r = Report::new(if rep.prime { 0 } else { 1 });
    r.line(format!("graded-prime: {}", if rep.prime { "yes" } else { "no" }));
    let witness = rep.witness.as_ref().map(|(i, j)| (i.describe(&a), j.describe(&a)));
    if let Some((i, j)) = &witness {
        r.line(format!("I = span{{{}}}, J = span{{{}}}, IJ = 0", i.join("; "), j.join("; ")));
    }
    r.set("prime", rep.prime)
        .set("exhaustive", rep.exhaustive)
        .set("witness", witness.map(|(i, j)| json!({"I": i, "J": j})));
    Ok(r)
}

fn iso(
    first: &Path,
    second: &Path,
    strategy: IsoStrategy,
    budget: Option<usize>,
    seed: u64,
    settings: Settings,
) -> Result<Report> {
    let a = read_algebra(first)?.algebra;
    let b = read_algebra(second)?.algebra;
    let strategy = match strategy {
        IsoStrategy::Exhaustive => Strategy::Exhaustive,
        IsoStrategy::Random => Strategy::Random {
            budget: budget.or(settings.iso_budget).unwrap_or(DEFAULT_ISO_BUDGET),
            seed,
        },
    };
    let outcome = find_graded_isomorphism(&a, &b, strategy)?;
    let mut r = Report::new(match outcome {
        IsoOutcome::Found(_) => 0,
        IsoOutcome::Exhausted => 1,
        IsoOutcome::BudgetExhausted { .. } => 3,
    });
    r.line(outcome.label()).set("outcome", outcome.label());
    match &outcome {
        IsoOutcome::Found(phi) => {
            let images: Vec<String> = (0..a.dim())
                .map(|j| format!("{} -> {}", a.basis()[j], describe_vector(&b, &phi.column(j))))
                .collect();
            for l in &images {
                r.line(format!("  {l}"));
            }
            r.set("map", images);
        }
        IsoOutcome::BudgetExhausted { trials, .. } => {
            r.line(format!("no isomorphism found within {trials} trials"));
            r.set("trials", *trials);
        }
        IsoOutcome::Exhausted => {}
    }
    Ok(r)
}

fn translate(path: &Path, direction: Direction, poly: &str, settings: Settings) -> Result<Report> {
    let a = read_algebra(path)?.algebra;
    let rs = file_system(&a, settings)?;
    let gd = rs.grade_data().ok_or_else(|| Error::InvalidGrading("translation needs a graded algebra file".into()))?;
    let p = parse_in(&rs, poly)?;
    let out = match direction {
        Direction::ToOmega => rs.normalize(&translate_to_omega(&p, &gd.group)?)?,
        Direction::FromOmega => translate_from_omega(&rs.normalize(&p)?)?,
    };
    let mut r = Report::new(0);
    r.line(out.to_string());
    r.set("input", p.to_string()).set("output", out.to_string()).set(
        "direction",
        match direction {
            Direction::ToOmega => "to-omega",
            Direction::FromOmega => "from-omega",
        },
    );
    Ok(r)
}

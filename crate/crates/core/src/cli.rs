//! Command-line front end: JSON file formats, subcommands and reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::a2::{a2_rigid_module, A2Error};
use crate::algebra::{truncated_path_algebra, AlgebraKind, BoundQuiverAlgebra, NsqAlgebra};
use crate::linalg::{Field, Matrix};
use crate::qh::is_delta_filtered;
use crate::quiver::{classify_components, separation_quiver, ComponentClass, DimFiltration, DimVector, Quiver, QuiverError};
use crate::recollement::RecollementContext;
use crate::repmod::{ext_dim, Module, ModuleError};
use crate::richardson::{component_scan, lift_rigid, richardson_search, LiftMode, RichardsonError, RichardsonVerdict, DEFAULT_FILTRATION_CAP};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource cap reached: {0}")]
    Cap(String, Value),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Cap(..) => 4,
        }
    }
}

impl From<ModuleError> for CliError {
    fn from(e: ModuleError) -> CliError {
        CliError::Invalid(e.to_string())
    }
}

impl From<RichardsonError> for CliError {
    fn from(e: RichardsonError) -> CliError {
        CliError::Invalid(e.to_string())
    }
}

/// `{"vertices": [...], "arrows": [{"name", "from", "to"}]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub from: String,
    pub to: String,
}

impl QuiverFile {
    pub fn to_quiver(&self) -> Result<Quiver, QuiverError> {
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        let arrows: Vec<(&str, &str, &str)> = self.arrows.iter().map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str())).collect();
        Quiver::new(&vertices, &arrows)
    }

    pub fn from_quiver(q: &Quiver) -> QuiverFile {
        QuiverFile {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    name: a.name.clone(),
                    from: q.vertices()[a.source].clone(),
                    to: q.vertices()[a.target].clone(),
                })
                .collect(),
        }
    }
}

/// A quiver given inline or as a path relative to the referring file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QuiverRef {
    Inline(QuiverFile),
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    /// `"kQ/Js"` or `"NsQ"`
    pub kind: String,
    pub s: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

/// A module: dimensions in vertex order of the algebra's quiver, matrices by arrow
/// name as row-major arrays; arrows left out act by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub quiver: QuiverRef,
    pub algebra: AlgebraSpec,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<Entry>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
}

impl ModuleFile {
    pub fn from_module(m: &Module) -> ModuleFile {
        let alg = m.algebra();
        let (kind, s) = match alg.kind() {
            AlgebraKind::Truncated { s } => ("kQ/Js", s),
            AlgebraKind::Nilpotent { s } => ("NsQ", s),
        };
        let matrices = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .filter(|(k, _)| !m.action(*k).is_zero())
            .map(|(k, a)| {
                let rows = m.action(k).to_strings().into_iter().map(|r| r.into_iter().map(Entry::Text).collect()).collect();
                (a.name.clone(), rows)
            })
            .collect();
        ModuleFile {
            quiver: QuiverRef::Inline(QuiverFile::from_quiver(alg.base())),
            algebra: AlgebraSpec { kind: kind.into(), s },
            dims: m.dims().to_vec(),
            matrices,
            field: match m.field() {
                Field::Prime(p) => Some(FieldSpec { p }),
                Field::Rational => None,
            },
        }
    }

    /// Builds the module; `default_field` applies when the file names none.
    pub fn load(&self, base_dir: &FsPath, default_field: Field) -> Result<(Quiver, Module), CliError> {
        let q = match &self.quiver {
            QuiverRef::Inline(f) => f.to_quiver().map_err(|e| CliError::Parse(e.to_string()))?,
            QuiverRef::Path(p) => read_quiver(&base_dir.join(p))?,
        };
        let s = self.algebra.s;
        if s == 0 {
            return Err(CliError::Invalid("s must be at least 1".into()));
        }
        let alg: Arc<BoundQuiverAlgebra> = match self.algebra.kind.as_str() {
            "kQ/Js" => truncated_path_algebra(&q, s),
            "NsQ" => NsqAlgebra::new(&q, s).algebra().clone(),
            other => return Err(CliError::Parse(format!("unknown algebra kind {other:?}"))),
        };
        let field = match &self.field {
            Some(f) => Field::prime(f.p).map_err(|e| CliError::Invalid(e.to_string()))?,
            None => default_field,
        };
        let aq = alg.quiver();
        for name in self.matrices.keys() {
            if aq.arrow_index(name).is_none() {
                return Err(CliError::Parse(format!("unknown arrow {name:?}")));
            }
        }
        if self.dims.len() != aq.n_vertices() {
            return Err(CliError::Invalid(format!("expected {} dimensions, got {}", aq.n_vertices(), self.dims.len())));
        }
        let action = aq
            .arrows()
            .iter()
            .map(|a| {
                let (r, c) = (self.dims[a.target], self.dims[a.source]);
                match self.matrices.get(&a.name) {
                    None => Ok(Matrix::zeros(field, r, c)),
                    Some(rows) => parse_matrix(field, rows, r, c, &a.name),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = Module::new(&alg, field, self.dims.clone(), action)?;
        Ok((q, m))
    }
}

fn parse_matrix(field: Field, rows: &[Vec<Entry>], r: usize, c: usize, name: &str) -> Result<Matrix, CliError> {
    let shape_ok = if r == 0 { rows.is_empty() } else { rows.len() == r && rows.iter().all(|x| x.len() == c) };
    if !shape_ok {
        return Err(CliError::Invalid(format!("matrix for arrow {name} must be {r}x{c}")));
    }
    let mut m = Matrix::zeros(field, r, c);
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let v = match e {
                Entry::Int(x) => field.from_i64(*x),
                Entry::Text(t) => match field.parse(t) {
                    Ok(v) => v,
                    Err(crate::linalg::LinalgError::Parse(_)) => return Err(CliError::Parse(format!("bad matrix entry {t:?}"))),
                    Err(e) => return Err(CliError::Invalid(e.to_string())),
                },
            };
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn read_text(path: &FsPath) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn read_quiver(path: &FsPath) -> Result<Quiver, CliError> {
    let f: QuiverFile = serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    f.to_quiver().map_err(|e| CliError::Parse(e.to_string()))
}

pub fn read_module(path: &FsPath, default_field: Field) -> Result<(Quiver, Module), CliError> {
    let f: ModuleFile = serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    f.load(path.parent().unwrap_or(FsPath::new(".")), default_field)
}

/// `"Q"` or a prime.
pub fn parse_field(text: &str) -> Result<Field, CliError> {
    if text.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    let p: u64 = text.parse().map_err(|_| CliError::Parse(format!("field must be Q or a prime, got {text:?}")))?;
    Field::prime(p).map_err(|e| CliError::Invalid(e.to_string()))
}

fn parse_dd(text: &str, q: &Quiver, s: usize) -> Result<DimFiltration, CliError> {
    let dd = DimFiltration::parse_layers(text).map_err(|e| CliError::Parse(e.to_string()))?;
    if dd.s() != s || dd.n_vertices() != q.n_vertices() {
        return Err(CliError::Invalid(format!(
            "filtration {text:?} must have {s} layers of {} entries",
            q.n_vertices()
        )));
    }
    dd.check_monotone().map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(dd)
}

fn check_s(s: usize) -> Result<(), CliError> {
    if s == 0 {
        Err(CliError::Invalid("s must be at least 1".into()))
    } else {
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "nilquiver", version, about = "Nilpotent quiver algebras, rigid Δ-filtered modules and Richardson orbits")]
pub struct Cli {
    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Field: Q or a prime p.
    #[arg(long, global = true, default_value = "1000003")]
    pub field: String,
    /// Number of random samples.
    #[arg(long, global = true, default_value_t = 50)]
    pub samples: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Staircase quiver, relations and standard basis of N_s(Q).
    Nsq {
        quiver: PathBuf,
        #[arg(long)]
        s: usize,
    },
    /// Search for a rigid Δ-filtered module of dimension filtration dd.
    Richardson {
        quiver: PathBuf,
        #[arg(long)]
        s: usize,
        /// Layers separated by ';', entries by ',' in quiver vertex order.
        #[arg(long)]
        dd: String,
    },
    /// Lifts c(M), r(M) of a module with rigidity and fibre data.
    Analyze {
        module: PathBuf,
        #[arg(long)]
        dd: Option<String>,
    },
    /// Irreducible components of rep_d(kQ/J^s) by maximal Dim c.
    Components {
        quiver: PathBuf,
        #[arg(long)]
        s: usize,
        /// Dimension vector, comma separated.
        #[arg(long)]
        d: String,
        #[arg(long, default_value_t = DEFAULT_FILTRATION_CAP)]
        cap: usize,
    },
    /// The rigid N_s(A_2)-module of a dimension filtration.
    A2 {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        dd: String,
    },
    /// Separation quiver and representation-finiteness of kQ/J².
    Sepquiver { quiver: PathBuf },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok(v) => Outcome {
            code: 0,
            stdout: pretty(&v),
            stderr: String::new(),
        },
        Err(CliError::Cap(msg, partial)) => Outcome {
            code: 4,
            stdout: pretty(&partial),
            stderr: format!("resource cap reached: {msg}\n"),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}

/// Runs with the process arguments, prints, and returns the exit code.
pub fn main_entry() -> i32 {
    let o = run(std::env::args_os());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}

fn header(cli: &Cli, command: &str, field: Field) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("version".into(), json!(VERSION));
    m.insert("seed".into(), json!(cli.seed));
    m.insert("field".into(), json!(field.to_string()));
    m.insert("samples".into(), json!(cli.samples));
    m
}

pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    let field = parse_field(&cli.field)?;
    match &cli.command {
        Command::Nsq { quiver, s } => cmd_nsq(cli, field, &read_quiver(quiver)?, *s),
        Command::Richardson { quiver, s, dd } => cmd_richardson(cli, field, &read_quiver(quiver)?, *s, dd),
        Command::Analyze { module, dd } => {
            let (q, m) = read_module(module, field)?;
            cmd_analyze(cli, &q, &m, dd.as_deref())
        }
        Command::Components { quiver, s, d, cap } => cmd_components(cli, field, &read_quiver(quiver)?, *s, d, *cap),
        Command::A2 { s, dd } => cmd_a2(cli, field, *s, dd),
        Command::Sepquiver { quiver } => cmd_sepquiver(cli, field, &read_quiver(quiver)?),
    }
}

fn cmd_nsq(cli: &Cli, field: Field, q: &Quiver, s: usize) -> Result<Value, CliError> {
    check_s(s)?;
    let n = NsqAlgebra::new(q, s);
    let alg = n.algebra();
    let mut out = header(cli, "nsq", field);
    out.insert("s".into(), json!(s));
    out.insert("staircase".into(), json!(QuiverFile::from_quiver(alg.quiver())));
    out.insert("relations".into(), json!(alg.relations().iter().map(|r| json!({"name": r.name, "relation": alg.display_relation(r)})).collect::<Vec<_>>()));
    out.insert("basis".into(), json!((0..alg.dim()).map(|b| alg.display_basis(b)).collect::<Vec<_>>()));
    out.insert("dim".into(), json!(alg.dim()));
    out.insert("semisimple".into(), json!(s == 1));
    Ok(Value::Object(out))
}

fn cmd_richardson(cli: &Cli, field: Field, q: &Quiver, s: usize, dd: &str) -> Result<Value, CliError> {
    check_s(s)?;
    let dd = parse_dd(dd, q, s)?;
    let n = NsqAlgebra::new(q, s);
    let mut out = header(cli, "richardson", field);
    out.insert("s".into(), json!(s));
    out.insert("dd".into(), json!(dd.compact()));
    match richardson_search(&n, &dd, field, cli.samples, cli.seed)? {
        RichardsonVerdict::RigidFound { witness, sample_index, .. } => {
            out.insert("verdict".into(), json!("rigid-found"));
            out.insert("sample_index".into(), json!(sample_index));
            out.insert("witness".into(), json!(ModuleFile::from_module(&witness.module)));
        }
        RichardsonVerdict::NoRigidAmongSamples { min_ext1, histogram, .. } => {
            out.insert("verdict".into(), json!("no-rigid-among-samples"));
            out.insert("min_ext1".into(), json!(min_ext1));
            let h: BTreeMap<String, u64> = histogram.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            out.insert("ext1_histogram".into(), json!(h));
        }
    }
    Ok(Value::Object(out))
}

fn lift_json(ctx: &RecollementContext, m: &Module, mode: LiftMode) -> Result<Value, CliError> {
    let l = lift_rigid(ctx, m, mode)?;
    Ok(json!({
        "dd": l.dd.compact(),
        "ext1": l.ext1_lift,
        "rigid": l.ext1_lift == 0,
        "delta_filtered": is_delta_filtered(&l.module),
        "relaxed_richardson": l.relaxed,
        "rigidity_transfer_holds": l.transfer_holds,
    }))
}

fn cmd_analyze(cli: &Cli, q: &Quiver, input: &Module, dd: Option<&str>) -> Result<Value, CliError> {
    let s = input.algebra().s();
    let n = NsqAlgebra::new(q, s);
    let ctx = RecollementContext::new(&n).map_err(|e| CliError::Invalid(e.to_string()))?;
    let mut out = header(cli, "analyze", input.field());
    out.insert("s".into(), json!(s));
    let m = match input.algebra().kind() {
        AlgebraKind::Truncated { .. } => {
            out.insert("input".into(), json!({"kind": "kQ/Js", "dims": input.dims()}));
            Module::new(ctx.corner(), input.field(), input.dims().to_vec(), input.actions().to_vec())?
        }
        AlgebraKind::Nilpotent { .. } => {
            let ext1 = ext_dim(input, input, 1)?;
            out.insert(
                "input".into(),
                json!({"kind": "NsQ", "dims": input.dim_filtration()?.compact(), "delta_filtered": is_delta_filtered(input), "ext1": ext1}),
            );
            ctx.restrict_e(input).map_err(|e| CliError::Invalid(e.to_string()))?
        }
    };
    let ext1 = ext_dim(&m, &m, 1)?;
    out.insert("d".into(), json!(m.dims()));
    out.insert("ext1_corner".into(), json!(ext1));
    out.insert("rigid_corner".into(), json!(ext1 == 0));
    out.insert("c".into(), lift_json(&ctx, &m, LiftMode::C)?);
    out.insert("r".into(), lift_json(&ctx, &m, LiftMode::R)?);
    let (end, end_q, rank) = ctx.psi_rank(&m).map_err(|e| CliError::Invalid(e.to_string()))?;
    out.insert("psi".into(), json!({"end_dim": end, "end_qr_dim": end_q, "rank": rank}));
    if let Some(text) = dd {
        let dd = parse_dd(text, q, s)?;
        let f = ctx.fibre_data(&m, &dd).map_err(|e| CliError::Invalid(e.to_string()))?;
        out.insert(
            "fibre".into(),
            json!({
                "dd": dd.compact(),
                "necessary_condition": f.necessary,
                "exact_for_s2": s == 2,
                "grassmannian_dims": f.target.map(|t| t.compact()),
                "qr_dims": f.qr.dim_filtration()?.compact(),
            }),
        );
    }
    Ok(Value::Object(out))
}

fn parse_dim_vector(text: &str, q: &Quiver) -> Result<DimVector, CliError> {
    let v = text
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad dimension vector {text:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != q.n_vertices() {
        return Err(CliError::Invalid(format!("dimension vector needs {} entries", q.n_vertices())));
    }
    Ok(DimVector(v))
}

fn cmd_components(cli: &Cli, field: Field, q: &Quiver, s: usize, d: &str, cap: usize) -> Result<Value, CliError> {
    check_s(s)?;
    let d = parse_dim_vector(d, q)?;
    let ctx = RecollementContext::new(&NsqAlgebra::new(q, s)).map_err(|e| CliError::Invalid(e.to_string()))?;
    let scan = component_scan(&ctx, &d, field, cli.samples.max(1), cli.seed, cap)?;
    let mut out = header(cli, "components", field);
    out.insert("s".into(), json!(s));
    out.insert("d".into(), json!(d.0));
    out.insert(
        "components".into(),
        json!(scan
            .components
            .iter()
            .map(|c| json!({"dd": c.dd.compact(), "dim": c.dim, "witness": ModuleFile::from_module(&c.witness)}))
            .collect::<Vec<_>>()),
    );
    out.insert(
        "histogram".into(),
        json!(scan.histogram.iter().map(|(k, v)| json!({"dim_c": k.compact(), "count": v})).collect::<Vec<_>>()),
    );
    out.insert("filtrations".into(), json!(scan.filtrations));
    out.insert("truncated".into(), json!(scan.truncated));
    let v = Value::Object(out);
    if scan.truncated {
        return Err(CliError::Cap(format!("more than {cap} filtrations"), v));
    }
    Ok(v)
}

fn cmd_a2(cli: &Cli, field: Field, s: usize, dd: &str) -> Result<Value, CliError> {
    check_s(s)?;
    let q = crate::quiver::catalog::a2();
    let parsed = parse_dd(dd, &q, s)?;
    let n = NsqAlgebra::new(&q, s);
    let r = a2_rigid_module(&n, field, &parsed).map_err(|e| match e {
        A2Error::Qh(e) => CliError::Invalid(e.to_string()),
        e => CliError::Invalid(e.to_string()),
    })?;
    let mut out = header(cli, "a2", field);
    out.insert("s".into(), json!(s));
    out.insert("dd".into(), json!(parsed.compact()));
    out.insert(
        "summands".into(),
        json!(r.summands.iter().map(|(k, v)| json!({"summand": k.to_string(), "multiplicity": v})).collect::<Vec<_>>()),
    );
    out.insert("ext1".into(), json!(r.ext1));
    out.insert("certificate".into(), json!(format!("dim Ext^1(M,M) = {} computed exactly", r.ext1)));
    out.insert("module".into(), json!(ModuleFile::from_module(&r.module)));
    Ok(Value::Object(out))
}

fn class_text(c: &ComponentClass) -> String {
    match c {
        ComponentClass::Dynkin(t) => t.to_string(),
        ComponentClass::NotDynkin(why) => format!("not Dynkin ({why})"),
    }
}

fn cmd_sepquiver(cli: &Cli, field: Field, q: &Quiver) -> Result<Value, CliError> {
    let sep = separation_quiver(q);
    let classes = classify_components(&sep);
    let finite = classes.iter().all(|(_, c)| matches!(c, ComponentClass::Dynkin(_)));
    let verdict = if finite {
        let types: Vec<String> = classes.iter().map(|(_, c)| class_text(c)).collect();
        format!("{}; kQ/J² representation-finite", types.join(" + "))
    } else {
        let bad = classes.iter().find(|(_, c)| !matches!(c, ComponentClass::Dynkin(_))).expect("a failing component");
        format!("{}; not representation-finite by this criterion", class_text(&bad.1))
    };
    let mut out = header(cli, "sepquiver", field);
    out.insert("separation_quiver".into(), json!(QuiverFile::from_quiver(&sep)));
    out.insert(
        "components".into(),
        json!(classes
            .iter()
            .map(|(vs, c)| json!({"vertices": vs.iter().map(|&v| sep.vertices()[v].clone()).collect::<Vec<_>>(), "class": class_text(c)}))
            .collect::<Vec<_>>()),
    );
    out.insert("representation_finite".into(), json!(finite));
    out.insert("verdict".into(), json!(verdict));
    Ok(Value::Object(out))
}

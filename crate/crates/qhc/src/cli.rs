//! Command-line interface. Every subcommand builds one serializable payload;
//! the text and LaTeX renderings are produced from the same values as the
//! JSON document.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use qhc_core::atlas::{
    atlas_basis, parse_sum, samples_from, verify_entry, verify_pairwise_distinct, Atom, NormalFormEntry, Sample,
};
use qhc_core::invariants::{invariants, max_constant_rank, representable_by_symplectic};
use qhc_core::restriction::{classical_representatives, RestrictionSpace};
use qhc_core::symmetry::{
    action_table, check_symmetry, liftable_field, moser_reduce, orbit_tangent_space, verify_homotopy, LiftPolicy,
};
use qhc_core::{AlgRestriction, MonomialCurve, Rational, RestrictionBasis};

use crate::atlas::{load_atlas, parse_rational};
use crate::emit::{latex_math, latex_table, latex_text, sample_string, table, Format, RestrictionDoc};
use crate::syntax::{parse_form, parse_map, ParseError};

#[derive(Parser, Debug)]
#[command(name = "qhc", version, about = "Algebraic restrictions of symplectic forms to quasi-homogeneous curves")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Offset into the deterministic parameter-sample sequence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct BasisArgs {
    /// Weights of the curve, e.g. `4,5,6,7`.
    pub semigroup: String,
    /// Ambient dimension (default: number of weights).
    #[arg(long)]
    pub ambient: Option<usize>,
    /// Override the quasi-degree bound.
    #[arg(long)]
    pub max_qdeg: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Policy {
    Grlex,
    #[value(name = "paper")]
    Classical,
}

impl From<Policy> for LiftPolicy {
    fn from(p: Policy) -> LiftPolicy {
        match p {
            Policy::Grlex => LiftPolicy::Grlex,
            Policy::Classical => LiftPolicy::Classical,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Basis of closed 2-form restrictions with quasi-degrees and representatives.
    Basis {
        #[command(flatten)]
        basis: BasisArgs,
    },
    /// Lie action of the liftable fields on the basis.
    ActionTable {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long, value_enum, default_value_t = Policy::Classical)]
        lift_policy: Policy,
    },
    /// Coordinates of the restriction of a closed 2-form.
    Project {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        form: String,
    },
    /// Multiplicity, index of isotropy, tangency order and representability.
    Invariants {
        #[command(flatten)]
        basis: BasisArgs,
        /// Label combination (`a9 + 2*a11-`), coordinates (`1,0,…`) or a 2-form.
        #[arg(long)]
        restriction: String,
        /// Check representability by a symplectic form on R^{2n}.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Tangent space to the orbit of a restriction.
    Tangent {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        restriction: String,
    },
    /// Moser homotopy removing one basis term.
    Moser {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        restriction: String,
        /// Label of the term to remove.
        #[arg(long)]
        kill: String,
    },
    /// Verify every row of the shipped classification atlas.
    VerifyAtlas {
        semigroup: String,
        /// Only rows realizable in R^{2n}; the others must be non-representable.
        #[arg(long)]
        n: Option<usize>,
        /// JSON file of parameter samples (see docs/atlas-schema.md).
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Also check that different rows are pairwise non-equivalent.
        #[arg(long)]
        distinct: bool,
    },
    /// Pull a form back by a polynomial map.
    Pullback {
        #[command(flatten)]
        basis: BasisArgs,
        #[arg(long)]
        map: String,
        #[arg(long)]
        form: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Parse { what: &'static str, err: ParseError },
    Core(qhc_core::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { what, err } => write!(f, "{}: {}", what, err),
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Io(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qhc_core::Error> for CliError {
    fn from(e: qhc_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn parse_err(what: &'static str) -> impl Fn(ParseError) -> CliError {
    move |err| CliError::Parse { what, err }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// A finished command: the document in all formats and whether every
/// verification passed.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub latex: String,
    pub ok: bool,
}

impl Output {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("documents serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text.clone(),
            Format::Latex => self.latex.clone(),
        }
    }

    /// 0 on success, 1 on a failed verification.
    pub fn exit_code(&self) -> u8 {
        if self.ok {
            0
        } else {
            1
        }
    }
}

pub const EXIT_INPUT: u8 = 2;

pub fn parse_semigroup(text: &str) -> CliResult<Vec<u32>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let weights = parts
        .iter()
        .map(|p| p.parse::<u32>().map_err(|_| CliError::Io(format!("semigroup: not a positive integer: {:?}", p))))
        .collect::<CliResult<Vec<u32>>>()?;
    if weights.is_empty() || weights.contains(&0) {
        return Err(CliError::Io(format!("semigroup: expected positive weights, got {:?}", text)));
    }
    Ok(weights)
}

/// The basis used by every subcommand: the classical representatives when
/// they are known for the curve (and fit the quasi-degree bound), the
/// canonical echelon basis otherwise.
pub fn build_basis(args: &BasisArgs) -> CliResult<RestrictionBasis> {
    let weights = parse_semigroup(&args.semigroup)?;
    let ambient = args.ambient.unwrap_or(weights.len());
    let curve = MonomialCurve::new(&weights, ambient)?;
    let space = RestrictionSpace::new(&curve, args.max_qdeg)?;
    let small = MonomialCurve::new(&weights, weights.len())?;
    if let Some(reps) = classical_representatives(&small) {
        let bound = space.bound();
        let reps: Vec<_> =
            reps.into_iter().filter(|(_, w)| w.quasi_degree(small.weights()).is_some_and(|d| d <= bound)).collect();
        if let Ok(b) = RestrictionBasis::with_representatives(space.clone(), reps) {
            return Ok(b);
        }
    }
    Ok(RestrictionBasis::canonical(space)?)
}

/// Reads a restriction given as a label combination, a coordinate list or
/// a closed 2-form.
pub fn parse_restriction(basis: &RestrictionBasis, text: &str) -> CliResult<AlgRestriction> {
    if text.contains("dx") {
        let w = parse_form(text, Some(basis.curve().ambient())).map_err(parse_err("restriction"))?;
        return Ok(basis.project(&w)?);
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() > 1 || (basis.dim() == 1 && parse_rational(parts[0]).is_ok()) {
        let coords = parts.iter().map(|p| parse_rational(p)).collect::<qhc_core::Result<Vec<Rational>>>()?;
        if coords.len() != basis.dim() {
            return Err(CliError::Io(format!("restriction: expected {} coordinates, got {}", basis.dim(), coords.len())));
        }
        return Ok(basis.restriction(coords)?);
    }
    let mut a = basis.zero();
    for (coef, atom) in parse_sum(text)? {
        if !coef.params().is_empty() {
            return Err(CliError::Io(format!("restriction: free parameter in {:?}; substitute a value", text)));
        }
        let c = coef.eval(&Sample::new())?;
        match atom {
            Some(Atom::Label(l)) => a = a.add(&basis.element(&l)?.scale(&c))?,
            Some(other) => return Err(CliError::Io(format!("restriction: {} is not a basis label", other))),
            None => return Err(CliError::Io(format!("restriction: constant term {} without a label", c))),
        }
    }
    Ok(a)
}

#[derive(Serialize)]
struct BasisRow {
    label: String,
    qdeg: u32,
    representative: String,
}

fn header(basis: &RestrictionBasis) -> serde_json::Map<String, Value> {
    let rows: Vec<BasisRow> = basis
        .elements()
        .iter()
        .map(|e| BasisRow { label: e.label.clone(), qdeg: e.qdeg, representative: e.representative.to_string() })
        .collect();
    let mut m = serde_json::Map::new();
    m.insert("semigroup".into(), json!(basis.curve().lambdas()));
    m.insert("ambient".into(), json!(basis.curve().ambient()));
    m.insert("k_f".into(), json!(basis.k_f()));
    m.insert("basis".into(), serde_json::to_value(rows).expect("serializable"));
    m
}

fn header_text(basis: &RestrictionBasis) -> String {
    let c = basis.curve();
    let l: Vec<String> = c.lambdas().iter().map(|x| x.to_string()).collect();
    format!("semigroup ({}) in R^{}; K = {}; dim = {}\n", l.join(","), c.ambient(), basis.k_f(), basis.dim())
}

fn header_latex(basis: &RestrictionBasis) -> String {
    let l: Vec<String> = basis.curve().lambdas().iter().map(|x| x.to_string()).collect();
    format!("% semigroup ({}), K = {}\n", l.join(","), basis.k_f())
}

fn document(basis: &RestrictionBasis, key: &str, payload: impl Serialize) -> Value {
    let mut m = header(basis);
    m.insert(key.into(), serde_json::to_value(payload).expect("serializable"));
    Value::Object(m)
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Basis { basis } => basis_cmd(&build_basis(basis)?),
        Command::ActionTable { basis, lift_policy } => action_cmd(&build_basis(basis)?, *lift_policy),
        Command::Project { basis, form } => project_cmd(&build_basis(basis)?, form),
        Command::Invariants { basis, restriction, n } => {
            let b = build_basis(basis)?;
            let a = parse_restriction(&b, restriction)?;
            invariants_cmd(&b, &a, *n)
        }
        Command::Tangent { basis, restriction } => {
            let b = build_basis(basis)?;
            let a = parse_restriction(&b, restriction)?;
            tangent_cmd(&b, &a)
        }
        Command::Moser { basis, restriction, kill } => {
            let b = build_basis(basis)?;
            let a = parse_restriction(&b, restriction)?;
            moser_cmd(&b, &a, kill)
        }
        Command::VerifyAtlas { semigroup, n, samples, distinct } => {
            verify_cmd(&parse_semigroup(semigroup)?, *n, samples.as_ref(), *distinct, cli.seed)
        }
        Command::Pullback { basis, map, form } => pullback_cmd(&build_basis(basis)?, map, form),
    }
}

fn basis_cmd(basis: &RestrictionBasis) -> CliResult<Output> {
    let rows: Vec<Vec<String>> = basis
        .elements()
        .iter()
        .map(|e| vec![e.label.clone(), e.qdeg.to_string(), e.representative.to_string()])
        .collect();
    let text = header_text(basis) + &table(&["label", "qdeg", "representative"], &rows);
    let lrows: Vec<Vec<String>> =
        rows.iter().map(|r| vec![latex_math(&r[0]), r[1].clone(), latex_math(&r[2])]).collect();
    let latex = header_latex(basis) + &latex_table(&["label", "qdeg", "representative"], &lrows);
    Ok(Output { json: Value::Object(header(basis)), text, latex, ok: true })
}

#[derive(Serialize)]
struct ActionCell {
    label: String,
    value: RestrictionDoc,
}

#[derive(Serialize)]
struct ActionRow {
    shift: u32,
    field: String,
    entries: Vec<ActionCell>,
}

#[derive(Serialize)]
struct ActionDoc {
    lift_policy: &'static str,
    rows: Vec<ActionRow>,
}

fn action_cmd(basis: &RestrictionBasis, policy: Policy) -> CliResult<Output> {
    let t = action_table(basis, policy.into())?;
    let mut rows = Vec::new();
    for (s, entries) in t.shifts.iter().zip(&t.entries) {
        let field = liftable_field(basis.curve(), *s, policy.into())?.field.to_string();
        let entries = t
            .labels
            .iter()
            .zip(entries)
            .map(|(l, a)| ActionCell { label: l.clone(), value: RestrictionDoc::new(basis, a) })
            .collect();
        rows.push(ActionRow { shift: *s, field, entries });
    }
    let doc = ActionDoc {
        lift_policy: match policy {
            Policy::Grlex => "grlex",
            Policy::Classical => "paper",
        },
        rows,
    };
    let mut head: Vec<String> = vec!["".into()];
    head.extend(t.labels.iter().cloned());
    let head_refs: Vec<&str> = head.iter().map(String::as_str).collect();
    let grid: Vec<Vec<String>> = doc
        .rows
        .iter()
        .map(|r| {
            let mut v = vec![format!("X{}", r.shift)];
            v.extend(r.entries.iter().map(|c| c.value.expr.clone()));
            v
        })
        .collect();
    let fields: String = doc.rows.iter().map(|r| format!("X{} = {}\n", r.shift, r.field)).collect();
    let text = format!("{}lift policy: {}\n{}\n{}", header_text(basis), doc.lift_policy, fields, table(&head_refs, &grid));
    let lgrid: Vec<Vec<String>> = grid
        .iter()
        .map(|r| {
            let mut v = vec![format!("$X_{{{}}}$", &r[0][1..])];
            v.extend(r[1..].iter().map(|c| latex_math(c)));
            v
        })
        .collect();
    let lhead: Vec<String> = head.iter().map(|h| if h.is_empty() { String::new() } else { latex_math(h) }).collect();
    let latex = header_latex(basis)
        + &latex_table(&lhead.iter().map(String::as_str).collect::<Vec<_>>(), &lgrid).replace(
            &lhead.iter().map(|h| latex_text(h)).collect::<Vec<_>>().join(" & "),
            &lhead.join(" & "),
        );
    Ok(Output { json: document(basis, "table", doc), text, latex, ok: true })
}

#[derive(Serialize)]
struct ProjectDoc {
    form: String,
    restriction: RestrictionDoc,
}

fn project_cmd(basis: &RestrictionBasis, form: &str) -> CliResult<Output> {
    let w = parse_form(form, Some(basis.curve().ambient())).map_err(parse_err("form"))?;
    let a = basis.project(&w)?;
    let doc = ProjectDoc { form: w.to_string(), restriction: RestrictionDoc::new(basis, &a) };
    let text = format!(
        "{}form: {}\nrestriction: {}\ncoordinates: ({})\n",
        header_text(basis),
        doc.form,
        doc.restriction.expr,
        doc.restriction.coords.join(", ")
    );
    let latex = format!("{}{} \\mapsto {}\n", header_latex(basis), latex_math(&doc.form), latex_math(&doc.restriction.expr));
    Ok(Output { json: document(basis, "report", doc), text, latex, ok: true })
}

#[derive(Serialize)]
struct Representability {
    n: usize,
    representable: bool,
}

#[derive(Serialize)]
struct InvariantsDoc {
    restriction: RestrictionDoc,
    multiplicity: usize,
    isotropy: String,
    tangency: String,
    min_qdeg: Option<u32>,
    min_part: Option<RestrictionDoc>,
    constant_rank: usize,
    symplectic: Option<Representability>,
}

fn invariants_cmd(basis: &RestrictionBasis, a: &AlgRestriction, n: Option<usize>) -> CliResult<Output> {
    let inv = invariants(basis, a)?;
    let symplectic = match n {
        Some(n) => Some(Representability { n, representable: representable_by_symplectic(basis, a, n)? }),
        None => None,
    };
    let doc = InvariantsDoc {
        restriction: RestrictionDoc::new(basis, a),
        multiplicity: inv.multiplicity,
        isotropy: inv.isotropy.to_string(),
        tangency: inv.tangency.to_string(),
        min_qdeg: inv.min_qdeg,
        min_part: inv.min_part.as_ref().map(|p| RestrictionDoc::new(basis, p)),
        constant_rank: max_constant_rank(basis, a)?,
        symplectic,
    };
    let mut rows = vec![
        vec!["restriction".to_string(), doc.restriction.expr.clone()],
        vec!["multiplicity".into(), doc.multiplicity.to_string()],
        vec!["index of isotropy".into(), doc.isotropy.clone()],
        vec!["tangency order".into(), doc.tangency.clone()],
        vec!["min qdeg".into(), doc.min_qdeg.map_or("-".into(), |d| d.to_string())],
        vec!["min part".into(), doc.min_part.as_ref().map_or("0".into(), |p| p.expr.clone())],
        vec!["constant rank".into(), doc.constant_rank.to_string()],
    ];
    if let Some(r) = &doc.symplectic {
        rows.push(vec![format!("representable in R^{}", 2 * r.n), r.representable.to_string()]);
    }
    let text = header_text(basis) + &table(&["invariant", "value"], &rows);
    let lrow = vec![
        latex_math(&doc.restriction.expr),
        doc.multiplicity.to_string(),
        latex_math(&doc.isotropy),
        latex_math(&doc.tangency.replace("n/a", "-")),
    ];
    let latex = header_latex(basis) + &latex_table(&["restriction", "mu", "iota", "Lt"], &[lrow]);
    Ok(Output { json: document(basis, "report", doc), text, latex, ok: true })
}

#[derive(Serialize)]
struct TangentVector {
    shift: u32,
    value: RestrictionDoc,
}

#[derive(Serialize)]
struct TangentDoc {
    restriction: RestrictionDoc,
    dim: usize,
    codim: usize,
    vectors: Vec<TangentVector>,
}

fn tangent_cmd(basis: &RestrictionBasis, a: &AlgRestriction) -> CliResult<Output> {
    let t = orbit_tangent_space(basis, a, LiftPolicy::Grlex)?;
    let doc = TangentDoc {
        restriction: RestrictionDoc::new(basis, a),
        dim: t.dim(),
        codim: basis.dim() - t.dim(),
        vectors: t
            .shifts
            .iter()
            .zip(&t.vectors)
            .map(|(s, v)| TangentVector { shift: *s, value: RestrictionDoc::new(basis, v) })
            .collect(),
    };
    let rows: Vec<Vec<String>> =
        doc.vectors.iter().map(|v| vec![format!("X{}", v.shift), v.value.expr.clone()]).collect();
    let text = format!(
        "{}restriction: {}\ntangent dim = {}; codim = {}\n{}",
        header_text(basis),
        doc.restriction.expr,
        doc.dim,
        doc.codim,
        table(&["field", "L_X a"], &rows)
    );
    let lrows: Vec<Vec<String>> =
        doc.vectors.iter().map(|v| vec![format!("$X_{{{}}}$", v.shift), latex_math(&v.value.expr)]).collect();
    let latex = header_latex(basis) + &latex_table(&["field", "L_X a"], &lrows);
    Ok(Output { json: document(basis, "report", doc), text, latex, ok: true })
}

#[derive(Serialize)]
struct MoserCoefficient {
    shift: u32,
    b: String,
    poles: usize,
}

#[derive(Serialize)]
struct MoserDoc {
    restriction: RestrictionDoc,
    kill: RestrictionDoc,
    target: RestrictionDoc,
    consistent: bool,
    feasible: bool,
    verified: bool,
    coefficients: Vec<MoserCoefficient>,
}

fn moser_cmd(basis: &RestrictionBasis, a: &AlgRestriction, kill: &str) -> CliResult<Output> {
    let i = basis.index_of(kill)?;
    let kill = basis.element(kill)?.scale(&a.coords()[i]);
    let h = moser_reduce(basis, a, &kill)?;
    let verified = verify_homotopy(basis, a, &kill, &h)?;
    let doc = MoserDoc {
        restriction: RestrictionDoc::new(basis, a),
        kill: RestrictionDoc::new(basis, &kill),
        target: RestrictionDoc::new(basis, &a.sub(&kill)?),
        consistent: h.consistent,
        feasible: h.feasible,
        verified,
        coefficients: h
            .shifts
            .iter()
            .zip(&h.coefficients)
            .zip(&h.poles)
            .map(|((s, b), p)| MoserCoefficient { shift: *s, b: b.to_string(), poles: *p })
            .collect(),
    };
    let rows: Vec<Vec<String>> =
        doc.coefficients.iter().map(|c| vec![format!("X{}", c.shift), c.b.clone(), c.poles.to_string()]).collect();
    let text = format!(
        "{}A_t = {} - t*({})\ntarget: {}\nconsistent: {}; feasible on [0,1]: {}; verified: {}\n{}",
        header_text(basis),
        doc.restriction.expr,
        doc.kill.expr,
        doc.target.expr,
        doc.consistent,
        doc.feasible,
        doc.verified,
        table(&["field", "b(t)", "poles in [0,1]"], &rows)
    );
    let lrows: Vec<Vec<String>> = doc
        .coefficients
        .iter()
        .map(|c| vec![format!("$X_{{{}}}$", c.shift), format!("${}$", latex_text(&c.b)), c.poles.to_string()])
        .collect();
    let latex = header_latex(basis) + &latex_table(&["field", "b(t)", "poles"], &lrows);
    let ok = h.feasible && verified;
    Ok(Output { json: document(basis, "report", doc), text, latex, ok })
}

/// A parameter-sample file: `{"samples": [{"row": 3, "values": {"c1": "2"}}]}`.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleFile {
    samples: Vec<SampleSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleSpec {
    row: u32,
    values: BTreeMap<String, String>,
}

fn read_samples(path: &PathBuf, entries: &[NormalFormEntry]) -> CliResult<BTreeMap<u32, Vec<Sample>>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
    let file: SampleFile =
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
    let mut out: BTreeMap<u32, Vec<Sample>> = BTreeMap::new();
    for spec in file.samples {
        let entry = entries
            .iter()
            .find(|e| e.row == spec.row)
            .ok_or_else(|| CliError::Io(format!("{}: no row {}", path.display(), spec.row)))?;
        let mut s = Sample::new();
        for (k, v) in &spec.values {
            if !entry.all_params().contains(k) {
                return Err(CliError::Io(format!("{}: row {} has no parameter {}", path.display(), spec.row, k)));
            }
            s.insert(k.clone(), parse_rational(v)?);
        }
        if let Some(p) = entry.all_params().iter().find(|p| !s.contains_key(*p)) {
            return Err(CliError::Io(format!("{}: row {} needs a value for {}", path.display(), spec.row, p)));
        }
        out.entry(spec.row).or_default().push(s);
    }
    Ok(out)
}

#[derive(Serialize)]
struct CheckDoc {
    name: String,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifiedDoc {
    row: u32,
    template: String,
    n: usize,
    sample: BTreeMap<String, String>,
    map: Option<String>,
    passed: bool,
    checks: Vec<CheckDoc>,
}

#[derive(Serialize)]
struct ExcludedDoc {
    row: u32,
    min_n: usize,
    sample: BTreeMap<String, String>,
    representable: bool,
    passed: bool,
}

#[derive(Serialize)]
struct PairDoc {
    rows: (u32, u32),
    samples: (BTreeMap<String, String>, BTreeMap<String, String>),
}

#[derive(Serialize)]
struct DistinctDoc {
    pairs: usize,
    passed: bool,
    undistinguished: Vec<PairDoc>,
}

#[derive(Serialize)]
struct VerifyDoc {
    n: Option<usize>,
    passed: bool,
    entries: Vec<VerifiedDoc>,
    excluded: Vec<ExcludedDoc>,
    distinct: Option<DistinctDoc>,
}

fn sample_doc(s: &Sample) -> BTreeMap<String, String> {
    s.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
}

fn verify_cmd(
    semigroup: &[u32],
    n: Option<usize>,
    samples: Option<&PathBuf>,
    distinct: bool,
    seed: u64,
) -> CliResult<Output> {
    let entries = load_atlas(semigroup)?;
    let basis = atlas_basis(semigroup)?;
    let given = match samples {
        Some(p) => read_samples(p, &entries)?,
        None => BTreeMap::new(),
    };
    let mut verified = Vec::new();
    let mut excluded = Vec::new();
    for e in &entries {
        if let Some(n) = n.filter(|&n| e.min_n > n) {
            let s = samples_from(e, e.min_n, 1, seed).pop().unwrap_or_default();
            let rep = representable_by_symplectic(&basis, &e.restriction_at(&basis, &s)?, n)?;
            excluded.push(ExcludedDoc { row: e.row, min_n: e.min_n, sample: sample_doc(&s), representable: rep, passed: !rep });
            continue;
        }
        for (k, t) in e.templates.iter().enumerate() {
            if n.is_some_and(|n| t.n > n) {
                continue;
            }
            let list = match given.get(&e.row) {
                Some(list) => {
                    let ok: Vec<Sample> = list.iter().filter(|s| e.admits(s, t.n)).cloned().collect();
                    if ok.len() != list.len() {
                        return Err(CliError::Io(format!("sample for row {} violates its constraints in R^{}", e.row, 2 * t.n)));
                    }
                    ok
                }
                None => samples_from(e, t.n, 3, seed),
            };
            for s in list {
                let r = verify_entry(&basis, e, k, &s)?;
                verified.push(VerifiedDoc {
                    row: e.row,
                    template: t.label.clone(),
                    n: t.n,
                    sample: sample_doc(&s),
                    map: r.map.as_ref().map(|m| m.to_string()),
                    passed: r.passed(),
                    checks: r
                        .checks
                        .iter()
                        .map(|c| CheckDoc { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
                        .collect(),
                });
            }
        }
    }
    let distinct = if distinct {
        let r = verify_pairwise_distinct(&basis, &entries, 2)?;
        Some(DistinctDoc {
            pairs: r.pairs.len(),
            passed: r.passed(),
            undistinguished: r
                .failures()
                .map(|p| PairDoc { rows: p.rows, samples: (sample_doc(&p.samples.0), sample_doc(&p.samples.1)) })
                .collect(),
        })
    } else {
        None
    };
    let passed = verified.iter().all(|v| v.passed)
        && excluded.iter().all(|x| x.passed)
        && distinct.as_ref().is_none_or(|d| d.passed);
    let doc = VerifyDoc { n, passed, entries: verified, excluded, distinct };

    let show = |s: &BTreeMap<String, String>| {
        let s: Sample = s.iter().map(|(k, v)| (k.clone(), parse_rational(v).expect("printed rational"))).collect();
        let t = sample_string(&s);
        if t.is_empty() {
            "-".to_string()
        } else {
            t
        }
    };
    let rows: Vec<Vec<String>> = doc
        .entries
        .iter()
        .map(|v| {
            let fails: Vec<String> =
                v.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect();
            vec![
                v.row.to_string(),
                v.template.clone(),
                show(&v.sample),
                if v.passed { "ok".into() } else { "FAIL".into() },
                fails.join("; "),
            ]
        })
        .collect();
    let mut text = header_text(&basis);
    text.push_str(&table(&["row", "template", "sample", "result", "failures"], &rows));
    for x in &doc.excluded {
        text.push_str(&format!(
            "row {} (n >= {}): representable in R^{} = {} ... {}\n",
            x.row,
            x.min_n,
            2 * n.unwrap_or(0),
            x.representable,
            if x.passed { "ok" } else { "FAIL" }
        ));
    }
    if let Some(d) = &doc.distinct {
        text.push_str(&format!("pairwise distinct: {} pairs, {} undistinguished\n", d.pairs, d.undistinguished.len()));
        for p in &d.undistinguished {
            text.push_str(&format!("  rows {} and {} at {} / {}\n", p.rows.0, p.rows.1, show(&p.samples.0), show(&p.samples.1)));
        }
    }
    let failed = doc.entries.iter().filter(|v| !v.passed).count() + doc.excluded.iter().filter(|x| !x.passed).count();
    text.push_str(&format!(
        "{} samples, {} excluded rows, {} failed: {}\n",
        doc.entries.len(),
        doc.excluded.len(),
        failed,
        if doc.passed { "PASS" } else { "FAIL" }
    ));
    let lrows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r[0].clone(), latex_text(&r[1]), latex_math(&r[2]), r[3].clone()])
        .collect();
    let latex = header_latex(&basis) + &latex_table(&["row", "template", "sample", "result"], &lrows);
    Ok(Output { json: document(&basis, "report", &doc), text, latex, ok: doc.passed })
}

#[derive(Serialize)]
struct SymmetryDoc {
    is_symmetry: bool,
    scale: Option<String>,
    reason: Option<String>,
}

#[derive(Serialize)]
struct PullbackDoc {
    map: String,
    form: String,
    pullback: String,
    symmetry: SymmetryDoc,
    restriction: Option<RestrictionDoc>,
    pulled_restriction: Option<RestrictionDoc>,
}

fn pullback_cmd(basis: &RestrictionBasis, map: &str, form: &str) -> CliResult<Output> {
    let m = basis.curve().ambient();
    let phi = parse_map(map, Some(m)).map_err(parse_err("map"))?;
    if phi.target_dim() != m {
        return Err(CliError::Io(format!("map: expected {} components, got {}", m, phi.target_dim())));
    }
    let w = parse_form(form, Some(m)).map_err(parse_err("form"))?;
    let pulled = w.pullback(&phi)?;
    let symmetry = match check_symmetry(basis.curve(), &phi) {
        Ok(s) => SymmetryDoc { is_symmetry: true, scale: Some(s.scale.to_string()), reason: None },
        Err(e) => SymmetryDoc { is_symmetry: false, scale: None, reason: Some(e.to_string()) },
    };
    let restrict = |f: &qhc_core::DifferentialForm| {
        if f.degree() == 2 {
            basis.project(f).ok().map(|a| RestrictionDoc::new(basis, &a))
        } else {
            None
        }
    };
    let doc = PullbackDoc {
        map: phi.to_string(),
        form: w.to_string(),
        pullback: pulled.to_string(),
        restriction: restrict(&w),
        pulled_restriction: restrict(&pulled),
        symmetry,
    };
    let mut text = format!("{}map: {}\nform: {}\npullback: {}\n", header_text(basis), doc.map, doc.form, doc.pullback);
    match (&doc.symmetry.scale, &doc.symmetry.reason) {
        (Some(c), _) => text.push_str(&format!("curve symmetry: yes (phi(t) = {}*t + ...)\n", c)),
        (_, Some(r)) => text.push_str(&format!("curve symmetry: no ({})\n", r)),
        _ => {}
    }
    if let (Some(a), Some(b)) = (&doc.restriction, &doc.pulled_restriction) {
        text.push_str(&format!("restriction: {} -> {}\n", a.expr, b.expr));
    }
    let latex = format!("{}{}^* \\left({}\\right) = {}\n", header_latex(basis), "\\Phi", latex_math(&doc.form), latex_math(&doc.pullback));
    Ok(Output { json: document(basis, "report", doc), text, latex, ok: true })
}

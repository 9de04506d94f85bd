//! Argument parsing and subcommand dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::comod::algebra::{check_sigma, eta_for_module};
use crate::hopf::lie::{is_graded, LieData};
use crate::hopf::psi::{canonical_candidate, verify_decomposition_psi, Side};
use crate::hopf::smash::gr_hopf_smash;
use crate::hopf::Hopf;
use crate::quotient::checks::braiding_involutive;
use crate::quotient::maps::{check_kappa, check_theta, omega_graded, Chart, Kappa, Theta};
use crate::quotient::{
    check_affinity, check_galois, check_splitting, compute_z, gr_quotient_check, local_consistency_check, prepare_pair,
    quotient_for_pair, trivial_ideal, SubPair, Verdict,
};
use crate::comod::ComoduleAlgebra;
use crate::superlinalg::Field;
use crate::superpoly::Poly;
use crate::Error;

use super::build::{build_hopf, file_field, raw_to_poly, sub_ideal};
use super::corpus::find_block;
use super::doc::{combine, ResultDocument};
use super::parse::{parse_expr, parse_presentation, PresentationFile};
use super::print::print_hopf;

pub const DEFAULT_BOUND: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "superquot", version, about = "Quotients of affine algebraic supergroups, computed exactly")]
pub struct Cli {
    /// Weight bound for truncated computations.
    #[arg(long, global = true, env = "SUPERQUOT_BOUND")]
    pub bound: Option<u32>,
    /// Coefficient field: q or p=PRIME.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Presentation file; names are looked up in the built-in corpus otherwise.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Distinguished open D(x), as `x=EXPR` in the even quotient C.
    #[arg(long, global = true)]
    pub chart: Option<String>,
    /// Run the quotient pipeline even when affinity is not Proven.
    #[arg(long, global = true)]
    pub override_affinity: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hopf axioms on the truncated basis; for a sub block, also the Hopf ideal.
    Validate { name: String },
    /// Even quotient, cotangent data and the decomposition ψ.
    Analyze { name: String },
    /// The Lie superalgebra and the bracket table.
    Lie { name: String },
    /// gr 𝒞 as a smash coproduct.
    Gr { name: String },
    /// 𝔅 = (C ⊗ ∧z)^{co D} for the sub block SUB of PARENT.
    Quotient { parent: String, sub: String },
    /// Galois verdict for C over D.
    Galois { parent: String, sub: String },
    /// Sufficient conditions for A ⊗ W → A ⊗ z to split.
    Splitting { parent: String, sub: String },
    /// κ, θ, σ, ω, the gr comparison and (with --chart) local consistency.
    Consistency { parent: String, sub: String },
}

/// Output text and exit status of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (program name first) and runs the command.
pub fn run(args: &[String]) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match run_command(&cli) {
        Ok(doc) => {
            let stdout = match cli.format {
                Format::Json => doc.to_json(),
                Format::Text => doc.to_text(),
            };
            Outcome { stdout, stderr: String::new(), code: doc.result().exit_code() }
        }
        // an effort cap was hit: the answer is unknown at this bound
        Err(Error::Cap(msg)) => Outcome { stdout: String::new(), stderr: format!("unknown: {msg}\n"), code: Verdict::Unknown.exit_code() },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: 1 },
    }
}

struct Context {
    file: Option<PresentationFile>,
    field_flag: Option<Field>,
    bound_flag: Option<u32>,
}

impl Context {
    fn new(cli: &Cli) -> Result<Context, Error> {
        let file = match &cli.input {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
                Some(parse_presentation(&text)?)
            }
            None => None,
        };
        let field_flag = cli.field.as_deref().map(Field::parse).transpose()?;
        Ok(Context { file, field_flag, bound_flag: cli.bound })
    }

    fn lookup(&self, name: &str) -> Result<PresentationFile, Error> {
        match &self.file {
            Some(f) if f.hopf(name).is_some() || f.sub(name).is_some() => Ok(f.clone()),
            Some(_) => Err(Error::Invalid(format!("unknown name '{name}' in the input file"))),
            None => find_block(name),
        }
    }

    fn field(&self, f: &PresentationFile) -> Result<Field, Error> {
        match self.field_flag {
            Some(x) => Ok(x),
            None => Ok(file_field(f)?.unwrap_or(Field::Rational)),
        }
    }

    fn bound(&self, f: &PresentationFile) -> u32 {
        self.bound_flag.or(f.bound).unwrap_or(DEFAULT_BOUND)
    }
}

fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "q".into(),
        Field::Prime(p) => format!("p={p}"),
    }
}

fn command_echo(c: &Command) -> String {
    match c {
        Command::Validate { name } => format!("validate {name}"),
        Command::Analyze { name } => format!("analyze {name}"),
        Command::Lie { name } => format!("lie {name}"),
        Command::Gr { name } => format!("gr {name}"),
        Command::Quotient { parent, sub } => format!("quotient {parent} {sub}"),
        Command::Galois { parent, sub } => format!("galois {parent} {sub}"),
        Command::Splitting { parent, sub } => format!("splitting {parent} {sub}"),
        Command::Consistency { parent, sub } => format!("consistency {parent} {sub}"),
    }
}

pub fn run_command(cli: &Cli) -> Result<ResultDocument, Error> {
    let ctx = Context::new(cli)?;
    let echo = command_echo(&cli.command);
    let first = match &cli.command {
        Command::Validate { name } | Command::Analyze { name } | Command::Lie { name } | Command::Gr { name } => name,
        Command::Quotient { parent, .. }
        | Command::Galois { parent, .. }
        | Command::Splitting { parent, .. }
        | Command::Consistency { parent, .. } => parent,
    };
    let file = ctx.lookup(first)?;
    let field = ctx.field(&file)?;
    let bound = ctx.bound(&file);
    let mut doc = ResultDocument::new(echo, bound, field_name(field));
    match &cli.command {
        Command::Validate { name } => validate(&mut doc, &file, name, field, bound)?,
        Command::Analyze { name } => analyze(&mut doc, &load_hopf(&file, name, field)?, bound)?,
        Command::Lie { name } => lie(&mut doc, &load_hopf(&file, name, field)?, bound),
        Command::Gr { name } => gr(&mut doc, &load_hopf(&file, name, field)?, bound)?,
        Command::Quotient { parent, sub } => {
            let pair = load_pair(&ctx, &file, parent, sub, field)?;
            quotient(&mut doc, &pair, bound, cli.override_affinity, cli.chart.as_deref())?
        }
        Command::Galois { parent, sub } => galois(&mut doc, &load_pair(&ctx, &file, parent, sub, field)?, bound)?,
        Command::Splitting { parent, sub } => splitting(&mut doc, &load_pair(&ctx, &file, parent, sub, field)?, bound)?,
        Command::Consistency { parent, sub } => {
            let pair = load_pair(&ctx, &file, parent, sub, field)?;
            consistency(&mut doc, &pair, bound, cli.chart.as_deref())?
        }
    }
    Ok(doc)
}

fn load_hopf(file: &PresentationFile, name: &str, field: Field) -> Result<Hopf, Error> {
    let block = file.hopf(name).ok_or_else(|| Error::Invalid(format!("'{name}' is not a hopf block")))?;
    build_hopf(block, field)
}

/// `whole` (J = 0) and `trivial` (J = augmentation) are accepted for any parent.
fn load_pair(ctx: &Context, file: &PresentationFile, parent: &str, sub: &str, field: Field) -> Result<SubPair, Error> {
    let g = load_hopf(file, parent, field)?;
    let j = match sub {
        "whole" => Vec::new(),
        "trivial" => trivial_ideal(&g),
        _ => {
            let f = ctx.lookup(sub)?;
            let s = f.sub(sub).ok_or_else(|| Error::Invalid(format!("'{sub}' is not a sub block")))?;
            if s.parent != parent {
                return Err(Error::Invalid(format!("'{sub}' is a subgroup of '{}', not of '{parent}'", s.parent)));
            }
            sub_ideal(&g, s)?
        }
    };
    prepare_pair(&g, &j, sub)
}

fn validate(doc: &mut ResultDocument, file: &PresentationFile, name: &str, field: Field, bound: u32) -> Result<(), Error> {
    let (parent, sub) = match file.sub(name) {
        Some(s) => (s.parent.as_str(), Some(s)),
        None => (name, None),
    };
    let h = match load_hopf(file, parent, field) {
        Ok(h) => h,
        Err(Error::Axiom(m)) => {
            doc.verdict("hopf_axioms", Verdict::Disproven, bound);
            doc.verdict("result", Verdict::Disproven, bound);
            doc.witness("counterexample", json!({ "law": "antipode", "detail": m }));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    let v = h.validate(bound);
    let axioms = Verdict::from_bool(v.ok);
    doc.verdict("hopf_axioms", axioms, bound);
    doc.dim("checked", v.checked);
    doc.dim("generators", [h.alg.user_vars().iter().filter(|k| **k < h.alg.n_even()).count(), h.alg.n_odd()]);
    if let Some((law, el, l, r)) = v.counterexample {
        doc.witness("counterexample", json!({ "law": law, "element": el, "lhs": l, "rhs": r }));
    }
    let mut all = vec![axioms];
    if let Some(s) = sub {
        let j = sub_ideal(&h, s)?;
        let ideal = match prepare_pair(&h, &j, name) {
            Ok(_) => Verdict::Proven,
            Err(Error::HopfIdeal(m)) => {
                doc.witness("hopf_ideal", m);
                Verdict::Disproven
            }
            Err(e) => return Err(e),
        };
        doc.verdict("hopf_ideal", ideal, bound);
        all.push(ideal);
    }
    doc.verdict("result", combine(all), bound);
    Ok(())
}

fn graded_verdict(doc: &mut ResultDocument, key: &str, h: &Hopf, bound: u32) -> Verdict {
    let (g, w) = is_graded(h);
    let v = Verdict::from_bool(g);
    doc.verdict(key, v, bound);
    if let Some((a, b)) = w {
        doc.witness(key, format!("[{a}*,{b}*] ≠ 0"));
    }
    v
}

fn analyze(doc: &mut ResultDocument, h: &Hopf, bound: u32) -> Result<(), Error> {
    let v = h.validate(bound);
    let axioms = Verdict::from_bool(v.ok);
    doc.verdict("hopf_axioms", axioms, bound);
    if let Some((law, el, l, r)) = v.counterexample {
        doc.witness("counterexample", json!({ "law": law, "element": el, "lhs": l, "rhs": r }));
    }
    let c = h.assoc();
    let cot = h.cotangent();
    doc.gens("C", c.alg.user_vars().into_iter().map(|k| c.alg.var_name(k).to_string()).collect());
    if !c.alg.relations.is_empty() {
        doc.gens("C_relations", c.alg.relations.iter().map(|r| c.alg.fmt(r)).collect());
    }
    doc.gens("W", cot.w_names(h));
    doc.gens("Lie_even", cot.even_names(h).into_iter().map(|n| format!("{n}*")).collect());
    doc.dim("W", cot.dim_w());
    doc.dim("Lie", [cot.dim_even(), cot.dim_w()]);
    let mut all = vec![axioms];
    for (key, side) in [("psi_left", Side::Left), ("psi_right", Side::Right)] {
        let status = match canonical_candidate(h, side) {
            Ok(w) => {
                let r = verify_decomposition_psi(h, &w, bound);
                if let Some((check, wit)) = r.failure {
                    doc.witness(key, json!({ "check": check, "witness": wit }));
                }
                Verdict::from_bool(r.ok)
            }
            Err(e) => {
                doc.witness(key, e.to_string());
                Verdict::Unknown
            }
        };
        doc.verdict(key, status, bound);
        all.push(status);
    }
    graded_verdict(doc, "graded", h, bound);
    doc.verdict("result", combine(all), bound);
    Ok(())
}

fn lie(doc: &mut ResultDocument, h: &Hopf, bound: u32) {
    let l = LieData::compute(h);
    let axioms = match l.check() {
        Ok(()) => Verdict::Proven,
        Err(e) => {
            doc.witness("lie_axioms", e.to_string());
            Verdict::Disproven
        }
    };
    doc.verdict("lie_axioms", axioms, bound);
    doc.dim("sdim", l.sdim());
    doc.gens("even", l.even_names.iter().map(|n| format!("{n}*")).collect());
    doc.gens("odd", l.odd_names.iter().map(|n| format!("{n}*")).collect());
    doc.gens("brackets", l.table());
    graded_verdict(doc, "graded", h, bound);
    doc.verdict("result", axioms, bound);
}

fn gr(doc: &mut ResultDocument, h: &Hopf, bound: u32) -> Result<(), Error> {
    graded_verdict(doc, "graded", h, bound);
    let g = gr_hopf_smash(h)?;
    let gr_graded = graded_verdict(doc, "gr_graded", &g, bound);
    let v = g.validate(bound);
    let axioms = Verdict::from_bool(v.ok);
    doc.verdict("gr_axioms", axioms, bound);
    if let Some((law, el, l, r)) = v.counterexample {
        doc.witness("gr_counterexample", json!({ "law": law, "element": el, "lhs": l, "rhs": r }));
    }
    doc.dim("gr_generators", [g.alg.user_vars().iter().filter(|k| **k < g.alg.n_even()).count(), g.alg.n_odd()]);
    doc.gens("gr_presentation", vec![print_hopf(&g)]);
    doc.verdict("result", combine([gr_graded, axioms]), bound);
    Ok(())
}

fn parse_chart(pair: &SubPair, chart: &str) -> Result<Poly, Error> {
    let expr = match chart.split_once('=') {
        Some((_, e)) => e,
        None => chart,
    };
    let c = &pair.c().alg;
    raw_to_poly(c, &parse_expr(expr)?, (1, 1))
}

fn quotient(doc: &mut ResultDocument, pair: &SubPair, bound: u32, override_affinity: bool, chart: Option<&str>) -> Result<(), Error> {
    let aff = check_affinity(pair, bound);
    doc.verdict("affinity", aff.status, aff.bound);
    doc.witness("affinity", json!({ "method": aff.method, "detail": aff.detail }));
    if let Some(o) = aff.galois.as_ref().and_then(|g| g.obstruction.clone()) {
        doc.witness("obstruction", o);
    }
    let z = compute_z(pair)?;
    doc.dim("z", z.dim());
    doc.gens("z", z.names.clone());
    if aff.status != Verdict::Proven && !override_affinity {
        doc.verdict("result", aff.status, aff.bound);
        return Ok(());
    }
    let q = quotient_for_pair(pair, &z, bound)?;
    let d = &q.data;
    let alg = &d.az.alg;
    let fmt = |ps: &[Poly]| ps.iter().map(|p| alg.fmt(p)).collect::<Vec<_>>();
    doc.dim("layers", d.layer_dims());
    doc.dim("parts", d.parts.iter().map(|p| p.layer_dims()).collect::<Vec<_>>());
    doc.dim("total", d.total_dim());
    doc.dim("graded_ranks", d.graded_ranks());
    doc.dim("b1_cotensor", &q.b1_cotensor);
    doc.gens("B", fmt(d.b_generators()));
    doc.gens("B1", fmt(d.b1_generators()));
    let pres = &d.presentation;
    doc.gens("presentation", pres.names().into_iter().zip(fmt(&pres.images)).map(|(n, p)| format!("{n} = {p}")).collect());
    doc.gens("relations", pres.relations.iter().map(|r| pres.free.fmt(r)).collect());
    doc.verdict("b1_free", Verdict::from_bool(d.b1_free()), bound);
    let exterior = Verdict::from_bool(d.exterior);
    let cotensor = Verdict::from_bool(q.b1_consistent());
    doc.verdict("exterior", exterior, bound);
    doc.verdict("b1_cotensor", cotensor, bound);
    let gate = if override_affinity && aff.status != Verdict::Proven { Verdict::Proven } else { aff.status };
    if gate != aff.status {
        doc.witness("override", "affinity not Proven; pipeline run on request");
    }
    let mut all = vec![gate, exterior, cotensor];
    if let Some(ch) = chart {
        all.push(local(doc, pair, &z, d, ch, bound)?);
    }
    doc.verdict("result", combine(all), bound);
    Ok(())
}

fn local(
    doc: &mut ResultDocument,
    pair: &SubPair,
    z: &crate::quotient::OddKernel,
    global: &crate::quotient::QuotientData,
    chart: &str,
    bound: u32,
) -> Result<Verdict, Error> {
    let x = parse_chart(pair, chart)?;
    let r = local_consistency_check(pair, z, global, &x, bound)?;
    let v = Verdict::from_bool(r.ok);
    doc.verdict("local_consistency", v, bound);
    doc.dim("local_layers", &r.local_layers);
    doc.dim("generated_layers", &r.generated_layers);
    doc.gens("chart", vec![r.element.clone()]);
    Ok(v)
}

fn galois(doc: &mut ResultDocument, pair: &SubPair, bound: u32) -> Result<(), Error> {
    let a = ComoduleAlgebra::restricted(pair.c(), pair.d())?;
    let g = check_galois(&a, bound, Some(pair.c()));
    doc.verdict("galois", g.status, g.bound);
    doc.dim("coinvariants", &g.coinvariant_dims);
    doc.dim(
        "beta",
        g.beta.iter().map(|b| json!({ "degree": b.degree, "pairs": b.pairs, "kernel": b.kernel, "balancing": b.balancing })).collect::<Vec<_>>(),
    );
    doc.gens("alpha", g.alpha.iter().map(|w| format!("{} ↦ {}", w.generator, w.witness)).collect());
    if let Some(o) = &g.obstruction {
        doc.witness("obstruction", o);
    }
    doc.witness("detail", &g.detail);
    doc.verdict("result", g.status, g.bound);
    Ok(())
}

fn splitting(doc: &mut ResultDocument, pair: &SubPair, bound: u32) -> Result<(), Error> {
    let z = compute_z(pair)?;
    let s = check_splitting(pair, &z);
    doc.verdict("costable", s.costable, bound);
    doc.verdict("retraction", s.retraction, bound);
    doc.verdict("graded", s.graded, bound);
    if let Some((a, b)) = &s.graded_witness {
        doc.witness("graded", format!("[{a}*,{b}*] ≠ 0"));
    }
    doc.dim("z", z.dim());
    doc.gens("z", z.names.clone());
    let result = if s.split() {
        Verdict::Proven
    } else if [s.costable, s.retraction, s.graded].contains(&Verdict::Unknown) {
        Verdict::Unknown
    } else {
        Verdict::Disproven
    };
    doc.verdict("result", result, bound);
    Ok(())
}

fn consistency(doc: &mut ResultDocument, pair: &SubPair, bound: u32, chart: Option<&str>) -> Result<(), Error> {
    let z = compute_z(pair)?;
    let main = Chart::main(pair)?;
    let mut all = Vec::new();
    let mut record = |doc: &mut ResultDocument, key: &str, v: Verdict, failure: Option<String>| {
        doc.verdict(key, v, bound);
        if let Some(f) = failure {
            doc.witness(key, f);
        }
        all.push(v);
    };
    let kappa = Kappa::new(&main, pair.c(), &pair.g.cotangent().coaction);
    let k = check_kappa(&main, &kappa, bound);
    record(doc, "kappa", Verdict::from_bool(k.ok()), k.failure);
    let theta = Theta::build(pair, &z, &main, None, bound)?;
    let t = check_theta(&main, &z, &theta, bound);
    doc.witness("theta_route", format!("{:?}", theta.route));
    record(doc, "theta", Verdict::from_bool(t.ok()), t.failure);
    let k_eta = bound.min(2);
    let sigma = match eta_for_module(&main.a, &z.right, k_eta, 2 * k_eta)? {
        Some(eta) => match check_sigma(&main.a, &z.right, &eta, k_eta) {
            Ok(_) => (Verdict::Proven, None),
            Err(e) => (Verdict::Disproven, Some(e)),
        },
        None => (Verdict::Unknown, Some("no η found in the window".to_string())),
    };
    record(doc, "sigma", sigma.0, sigma.1);
    let br = braiding_involutive(pair.field(), &z.w_right.space, &z.right.space);
    record(doc, "braiding", Verdict::from_bool(br), None);
    let q = quotient_for_pair(pair, &z, bound)?;
    let omega = match omega_graded(pair, &z, &main, &theta, bound, &q.data.layer_dims()) {
        Ok(r) => {
            doc.gens("omega", r.images.iter().map(|(a, b)| format!("{a} ↦ {b}")).collect());
            doc.dim("omega_layers", &r.codomain_layers);
            (Verdict::from_bool(r.ok), r.failure.map(|(c, w)| format!("{c}: {w}")))
        }
        Err(e) => (Verdict::Unknown, Some(e.to_string())),
    };
    record(doc, "omega", omega.0, omega.1);
    let g = gr_quotient_check(pair, bound)?;
    doc.dim("gr_layers", [&g.original, &g.graded]);
    doc.gens("gr_ideal", g.ideal.clone());
    record(doc, "gr_quotient", Verdict::from_bool(g.ok), None);
    if let Some(ch) = chart {
        let v = local(doc, pair, &z, &q.data, ch, bound)?;
        all.push(v);
    }
    doc.dim("layers", q.data.layer_dims());
    doc.verdict("result", combine(all), bound);
    Ok(())
}

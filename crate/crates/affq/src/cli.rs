use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use affq_core::adhm::{act, additivity_check, theta, AffineTransform2, RationalPoly};
use affq_core::hall::{
    serre_check, Budget, GenericElement, HallElement, HallEngine, HallKey, SpecializedElement,
};
use affq_core::ic::{
    hecke_dim_audit, hecke_inputs, semismall_audit, strata, support_audit, HeckePoint, PointConfiguration, StalkPolynomial,
    StalkTables,
};
use affq_core::quiver::closure_leq;
use affq_core::root_data::kostant_partitions;
use affq_core::{DimVector, Error, Flavor, Multisegment};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::adhm_io::{parse_points, parse_transform, DatumDoc};
use crate::cache::HallCache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "affq", version, about = "Exact Hall-algebra, Kostant and IC-stalk computations for the cyclic quiver")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Hall-polynomial cache file (JSON lines).
    #[arg(long, global = true, env = "AFFQ_CACHE")]
    cache: Option<PathBuf>,
    /// Ignore any cache file.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest |wt| for brute-force Hall counting.
    #[arg(long, global = true, default_value_t = 8)]
    hall_budget: u32,
    /// Largest number of subspaces visited for one count.
    #[arg(long, global = true, default_value_t = 20_000_000)]
    node_limit: u64,
    /// Largest |alpha| accepted by the stratum audits.
    #[arg(long, global = true, default_value_t = 8)]
    audit_budget: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count or list Kostant partitions (multisegments) of a weight.
    Kostant {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Gl)]
        flavor: FlavorArg,
        /// Print only the number of partitions.
        #[arg(long)]
        count: bool,
    },
    /// Hall polynomials, brute-force counts and products of basis elements.
    Hall(HallArgs),
    /// Orbit-closure order queries and Hasse diagrams.
    Closure {
        #[arg(long)]
        n: usize,
        /// Is LEFT in the closure of RIGHT?
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
        /// List cover relations among all classes of this weight.
        #[arg(long, conflicts_with = "left")]
        hasse: Option<String>,
    },
    /// IC stalk polynomial at a stratum.
    IcStalk(StratumArgs),
    /// Stalk of the pushforward of the constant sheaf at a stratum.
    PushStalk(StratumArgs),
    /// Decomposition identity on one configuration or on every stratum up to a weight.
    DecompCheck {
        #[command(flatten)]
        stratum: StratumArgs,
        /// Check every stratum of every alpha with |alpha| <= this.
        #[arg(long)]
        max_weight: Option<u32>,
        /// Also check the support condition and that each IC stalk is a summand.
        #[arg(long)]
        support: bool,
    },
    /// Semismallness audit: 2 * fiber <= codim on every stratum.
    SemismallAudit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, conflicts_with = "alpha")]
        max_weight: Option<u32>,
    },
    /// Dimension audit of Hecke correspondence strata.
    HeckeAudit {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        /// One point as GAMMA_R:KAPPA_BEFORE:KAPPA_AFTER, e.g. '1,0:0:(0,1)'.
        #[arg(long)]
        point: Vec<String>,
        /// Enumerate every alpha with |alpha| <= this (when --alpha is absent).
        #[arg(long, default_value_t = 2)]
        max_alpha: u32,
        /// Enumerate every gamma with |gamma| <= this (when --gamma is absent).
        #[arg(long, default_value_t = 4)]
        max_gamma: u32,
        /// Print every audited input.
        #[arg(long)]
        verbose: bool,
    },
    /// Serre relations among the Chevalley generators at q = 1.
    Serre {
        #[arg(long)]
        n: usize,
        #[arg(long, requires = "j")]
        i: Option<usize>,
        #[arg(long, requires = "i")]
        j: Option<usize>,
    },
    /// Spectral divisor of an ADHM datum.
    Theta(AdhmArgs),
    /// Validate an ADHM datum and check equivariance and additivity on it.
    AdhmCheck {
        #[command(flatten)]
        adhm: AdhmArgs,
        /// Defect points 'z,t;z,t' for the additivity check.
        #[arg(long, default_value = "")]
        points: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FlavorArg {
    Gl,
    Sl,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Gl => Flavor::Gl,
            FlavorArg::Sl => Flavor::Sl,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Mode {
    Generic,
    Q1,
}

#[derive(Debug, Args)]
struct HallArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Ambient class W.
    #[arg(long, requires_all = ["sub", "quot"])]
    w: Option<String>,
    /// Class of the subrepresentation.
    #[arg(long)]
    sub: Option<String>,
    /// Class of the quotient.
    #[arg(long)]
    quot: Option<String>,
    /// Evaluate by brute force over F_q instead of interpolating.
    #[arg(long)]
    q: Option<u32>,
    /// Exchange the roles of sub and quotient.
    #[arg(long)]
    swapped: bool,
    /// Left factor of a product S_left * S_right.
    #[arg(long, requires = "right", conflicts_with = "w")]
    left: Option<String>,
    #[arg(long, requires = "left")]
    right: Option<String>,
    #[arg(long, value_enum, default_value_t = Mode::Generic)]
    mode: Mode,
    /// Re-verify every cached polynomial by brute force at q = 2 and q = 5.
    #[arg(long, conflicts_with_all = ["w", "left"])]
    verify_cache: bool,
}

#[derive(Debug, Args, Default)]
struct StratumArgs {
    #[arg(long)]
    n: usize,
    /// Saturation degree gamma, e.g. '1,0'.
    #[arg(long)]
    gamma: Option<String>,
    /// Colored point BETA[:COORD], e.g. '1,1:x1'. Repeatable.
    #[arg(long)]
    colored: Vec<String>,
    /// Punctual point D[:COORD], e.g. '2:y1'. Repeatable.
    #[arg(long)]
    punctual: Vec<String>,
}

#[derive(Debug, Args)]
struct AdhmArgs {
    /// JSON document with a, n, B1, B2, i, j (and optionally transform).
    #[arg(long)]
    datum: PathBuf,
    /// Affine transform 'g11,g12,g21,g22,g1,g2'; overrides the document.
    #[arg(long)]
    transform: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check(String),
    Budget(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            Error::NonStabilizing(_) | Error::InconsistentRanks(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx<'a> {
    json: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    budget: Budget,
    audit_budget: u32,
    cache_path: Option<PathBuf>,
}

impl Ctx<'_> {
    /// Writes the text form or the JSON value, whichever was requested.
    fn emit(&mut self, text: &str, value: Value) -> io::Result<()> {
        if self.json {
            writeln!(self.out, "{value}")
        } else {
            write!(self.out, "{text}")?;
            if !text.is_empty() && !text.ends_with('\n') {
                writeln!(self.out)?;
            }
            Ok(())
        }
    }

    fn engine(&mut self) -> Result<(HallEngine, HallCache), Failure> {
        let mut engine = HallEngine::new(self.budget);
        let cache = match &self.cache_path {
            Some(p) => HallCache::open(p.clone(), self.err)?.0,
            None => HallCache::in_memory(),
        };
        cache.preload_into(&mut engine);
        Ok((engine, cache))
    }

    fn finish(&mut self, engine: &HallEngine, cache: &mut HallCache) -> Result<(), Failure> {
        if engine.rejected_preloads() > 0 {
            writeln!(self.err, "warning: {} cached polynomial(s) failed re-verification and were recomputed", engine.rejected_preloads())?;
        }
        cache.absorb(engine);
        cache.flush(self.err)?;
        Ok(())
    }
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        out,
        err,
        budget: Budget { max_weight: cli.hall_budget, max_nodes: cli.node_limit },
        audit_budget: cli.audit_budget,
        cache_path: if cli.no_cache { None } else { cli.cache.clone() },
    };
    let result = dispatch(&mut ctx, cli.command);
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Usage(m) => (EXIT_USAGE, "usage", m),
                Failure::Check(m) => (EXIT_CHECK_FAILED, "check_failed", m),
                Failure::Budget(m) => (EXIT_BUDGET, "budget_exceeded", m),
                Failure::Io(e) => (EXIT_CHECK_FAILED, "io", e.to_string()),
            };
            let _ = if ctx.json {
                writeln!(ctx.err, "{}", json!({"error": kind, "message": msg}))
            } else {
                writeln!(ctx.err, "error[{kind}]: {msg}")
            };
            code
        }
    }
}

fn dispatch(ctx: &mut Ctx<'_>, cmd: Command) -> Outcome {
    match cmd {
        Command::Kostant { n, alpha, flavor, count } => kostant(ctx, n, &alpha, flavor.into(), count),
        Command::Hall(args) => hall(ctx, args),
        Command::Closure { n, left, right, hasse } => closure(ctx, n, left, right, hasse),
        Command::IcStalk(s) => stalk(ctx, &s, true),
        Command::PushStalk(s) => stalk(ctx, &s, false),
        Command::DecompCheck { stratum, max_weight, support } => decomp_check(ctx, &stratum, max_weight, support),
        Command::SemismallAudit { n, alpha, max_weight } => semismall(ctx, n, alpha, max_weight),
        Command::HeckeAudit { n, alpha, gamma, point, max_alpha, max_gamma, verbose } => {
            hecke(ctx, n, alpha, gamma, &point, max_alpha, max_gamma, verbose)
        }
        Command::Serre { n, i, j } => serre(ctx, n, i.zip(j)),
        Command::Theta(a) => theta_cmd(ctx, &a),
        Command::AdhmCheck { adhm, points } => adhm_check(ctx, &adhm, &points),
    }
}

fn dim_vector(n: usize, s: &str) -> Result<DimVector, Failure> {
    let v: DimVector = s.parse().map_err(Failure::from)?;
    if v.rank() != n {
        return Err(Failure::Usage(format!("'{s}' has {} entries, expected {n}", v.rank())));
    }
    Ok(v)
}

fn multiseg(n: usize, s: &str) -> Result<Multisegment, Failure> {
    Ok(Multisegment::parse(n, s)?)
}

fn kostant(ctx: &mut Ctx<'_>, n: usize, alpha: &str, flavor: Flavor, count: bool) -> Outcome {
    let a = dim_vector(n, alpha)?;
    let list = kostant_partitions(n, &a, flavor)?;
    let names: Vec<String> = list.iter().map(ToString::to_string).collect();
    let text = if count { format!("{}", list.len()) } else { names.join("\n") };
    let mut value = json!({"n": n, "alpha": a.to_string(), "flavor": flavor.to_string(), "count": list.len()});
    if !count {
        value["partitions"] = json!(names);
    }
    ctx.emit(&text, value)?;
    Ok(true)
}

fn hall(ctx: &mut Ctx<'_>, args: HallArgs) -> Outcome {
    let (mut engine, mut cache) = ctx.engine()?;
    let result = hall_inner(ctx, &mut engine, &cache, args);
    ctx.finish(&engine, &mut cache)?;
    result
}

fn need_n(n: Option<usize>) -> Result<usize, Failure> {
    n.ok_or_else(|| Failure::Usage("--n is required".into()))
}

fn hall_inner(ctx: &mut Ctx<'_>, engine: &mut HallEngine, cache: &HallCache, args: HallArgs) -> Outcome {
    if args.verify_cache {
        return verify_cache(ctx, engine, cache);
    }
    if let (Some(l), Some(r)) = (&args.left, &args.right) {
        let n = need_n(args.n)?;
        let (a, b) = (multiseg(n, l)?, multiseg(n, r)?);
        let (text, terms) = match args.mode {
            Mode::Generic => {
                let p = engine.multiply(&GenericElement::basis(a), &GenericElement::basis(b))?;
                (p.to_string(), element_json(&p, |c| json!(c.coeffs())))
            }
            Mode::Q1 => {
                let p = engine.multiply(&SpecializedElement::basis(a), &SpecializedElement::basis(b))?;
                (p.to_string(), element_json(&p, |c| json!(c)))
            }
        };
        ctx.emit(&text, json!({"n": n, "left": l, "right": r, "mode": format!("{:?}", args.mode).to_lowercase(), "product": text, "terms": terms}))?;
        return Ok(true);
    }
    let (Some(w), Some(sub), Some(quot)) = (&args.w, &args.sub, &args.quot) else {
        return Err(Failure::Usage("give --w/--sub/--quot, --left/--right, or --verify-cache".into()));
    };
    let n = need_n(args.n)?;
    let (w, mut sub, mut quot) = (multiseg(n, w)?, multiseg(n, sub)?, multiseg(n, quot)?);
    if args.swapped {
        std::mem::swap(&mut sub, &mut quot);
    }
    let key = HallKey::new(w, sub, quot)?;
    let base = json!({"n": n, "W": key.w.to_string(), "sub": key.sub.to_string(), "quot": key.quot.to_string()});
    if let Some(q) = args.q {
        let c = engine.count(&key, q)?;
        let mut v = base;
        v["q"] = json!(q);
        v["count"] = json!(c);
        ctx.emit(&c.to_string(), v)?;
    } else {
        let r = engine.hall_record(&key)?;
        let mut v = base;
        v["poly"] = json!(r.poly.to_string());
        v["coeffs"] = json!(r.poly.coeffs());
        v["q_samples"] = json!(r.samples);
        ctx.emit(&r.poly.to_string(), v)?;
    }
    Ok(true)
}

fn element_json<C: affq_core::hall::Coefficient>(e: &HallElement<C>, coef: impl Fn(&C) -> Value) -> Value {
    Value::Array(e.terms().iter().map(|(k, c)| json!({"kappa": k.to_string(), "coeff": coef(c)})).collect())
}

fn verify_cache(ctx: &mut Ctx<'_>, engine: &mut HallEngine, cache: &HallCache) -> Outcome {
    let mut bad = Vec::new();
    for (key, record) in cache.entries() {
        for q in [2u32, 5] {
            let y = engine.count(key, q)?;
            if record.poly.eval(i64::from(q)) != i128::from(y) {
                bad.push(format!("{} {} {} at q={q}: cached {} but counted {y}", key.w, key.sub, key.quot, record.poly));
            }
        }
    }
    let text = if bad.is_empty() {
        format!("OK: {} cached polynomials verified at q=2,5", cache.len())
    } else {
        format!("FAIL: {} mismatches\n{}", bad.len(), bad.join("\n"))
    };
    ctx.emit(&text, json!({"checked": cache.len(), "mismatches": bad}))?;
    Ok(bad.is_empty())
}

fn closure(ctx: &mut Ctx<'_>, n: usize, left: Option<String>, right: Option<String>, hasse: Option<String>) -> Outcome {
    if let (Some(l), Some(r)) = (&left, &right) {
        let leq = closure_leq(&multiseg(n, l)?, &multiseg(n, r)?)?;
        ctx.emit(&leq.to_string(), json!({"n": n, "left": l, "right": r, "leq": leq}))?;
        return Ok(true);
    }
    let Some(alpha) = hasse else {
        return Err(Failure::Usage("give --left/--right or --hasse ALPHA".into()));
    };
    let a = dim_vector(n, &alpha)?;
    let classes = kostant_partitions(n, &a, Flavor::Gl)?;
    let m = classes.len();
    let mut leq = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            leq[i][j] = closure_leq(&classes[i], &classes[j])?;
        }
    }
    let mut covers = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j && leq[i][j] && !(0..m).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
                covers.push((classes[i].to_string(), classes[j].to_string()));
            }
        }
    }
    let text: Vec<String> = covers.iter().map(|(a, b)| format!("{a} < {b}")).collect();
    let value = json!({
        "n": n,
        "alpha": a.to_string(),
        "classes": classes.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "covers": covers.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
    });
    ctx.emit(&text.join("\n"), value)?;
    Ok(true)
}

fn configuration(s: &StratumArgs) -> Result<PointConfiguration, Failure> {
    let n = s.n;
    let gamma = match &s.gamma {
        Some(g) => dim_vector(n, g)?,
        None => DimVector::zero(n)?,
    };
    let split = |spec: &str, auto: String| match spec.split_once(':') {
        Some((v, c)) => (v.trim().to_string(), c.trim().to_string()),
        None => (spec.trim().to_string(), auto),
    };
    let mut colored = Vec::new();
    for (k, spec) in s.colored.iter().enumerate() {
        let (v, c) = split(spec, format!("colored#{}", k + 1));
        colored.push((dim_vector(n, &v)?, c));
    }
    let mut punctual = Vec::new();
    for (k, spec) in s.punctual.iter().enumerate() {
        let (v, c) = split(spec, format!("punctual#{}", k + 1));
        let d: u32 = v.parse().map_err(|_| Failure::Usage(format!("punctual length '{v}' is not a positive integer")))?;
        punctual.push((d, c));
    }
    let config = PointConfiguration { gamma, colored, punctual };
    config.check_generic()?;
    Ok(config)
}

fn stalk_json(p: &StalkPolynomial) -> Value {
    json!({"text": p.to_string(), "coeffs": p.coeffs()})
}

fn stalk(ctx: &mut Ctx<'_>, args: &StratumArgs, ic: bool) -> Outcome {
    let config = configuration(args)?;
    let s = config.stratum()?;
    let mut tables = StalkTables::new(args.n)?;
    let p = if ic { tables.ic_stalk(&s)? } else { tables.pushforward_stalk(&s)? };
    let value = json!({
        "stratum": s.to_string(),
        "alpha": s.alpha().to_string(),
        "stalk": stalk_json(&p),
        "base_shift": s.base_shift(),
        "dim": s.dim(),
        "codim": s.codim(),
    });
    ctx.emit(&p.to_string(), value)?;
    Ok(true)
}

fn check_audit_budget(ctx: &Ctx<'_>, w: u32) -> Result<(), Failure> {
    if w > ctx.audit_budget {
        return Err(Failure::Budget(format!("|alpha| up to {w} exceeds the audit budget {}", ctx.audit_budget)));
    }
    Ok(())
}

fn decomp_check(ctx: &mut Ctx<'_>, args: &StratumArgs, max_weight: Option<u32>, support: bool) -> Outcome {
    let mut tables = StalkTables::new(args.n)?;
    let Some(w) = max_weight else {
        let config = configuration(args)?;
        let s = config.stratum()?;
        let lhs = tables.pushforward_stalk(&s)?;
        let rhs = tables.decomposition_rhs(&config)?;
        let ok = lhs == rhs;
        let text = format!("{}: {lhs} {} {rhs}", if ok { "OK" } else { "FAIL" }, if ok { "==" } else { "!=" });
        ctx.emit(&text, json!({"stratum": s.to_string(), "ok": ok, "lhs": stalk_json(&lhs), "rhs": stalk_json(&rhs)}))?;
        return Ok(ok);
    };
    if args.gamma.is_some() || !args.colored.is_empty() || !args.punctual.is_empty() {
        return Err(Failure::Usage("--max-weight enumerates strata; drop the explicit stratum".into()));
    }
    check_audit_budget(ctx, w)?;
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for alpha in DimVector::all_up_to(args.n, w)? {
        for s in strata(&alpha)? {
            checked += 1;
            if !tables.decomposition_check(&s.generic_configuration())? {
                failures.push(format!("decomposition fails at {s}"));
            }
        }
        if support {
            for e in support_audit(&mut tables, &alpha, ctx.audit_budget)? {
                if !e.ok {
                    failures.push(format!("support/summand fails at {}: ic={} push={} degree={} codim={}", e.stratum, e.ic, e.push, e.degree, e.codim));
                }
            }
        }
    }
    let text = if failures.is_empty() {
        format!("OK: {checked} strata checked")
    } else {
        format!("FAIL: {} of {checked} strata\n{}", failures.len(), failures.join("\n"))
    };
    ctx.emit(&text, json!({"n": args.n, "max_weight": w, "checked": checked, "support": support, "failures": failures}))?;
    Ok(failures.is_empty())
}

fn semismall(ctx: &mut Ctx<'_>, n: usize, alpha: Option<String>, max_weight: Option<u32>) -> Outcome {
    let alphas = match (alpha, max_weight) {
        (Some(a), _) => vec![dim_vector(n, &a)?],
        (None, Some(w)) => {
            check_audit_budget(ctx, w)?;
            DimVector::all_up_to(n, w)?
        }
        (None, None) => return Err(Failure::Usage("give --alpha or --max-weight".into())),
    };
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    let (mut total, mut relevant, mut violations) = (0usize, 0usize, 0usize);
    for a in &alphas {
        let report = semismall_audit(a, ctx.audit_budget)?;
        for e in &report.entries {
            total += 1;
            relevant += usize::from(e.relevant);
            violations += usize::from(!e.ok);
            let margin = i64::from(e.codim) - 2 * i64::from(e.max_fiber);
            lines.push(format!(
                "alpha=({a}) {} codim={} fiber={} margin={margin}{}{}",
                e.stratum,
                e.codim,
                e.max_fiber,
                if e.relevant { " relevant" } else { "" },
                if e.ok { "" } else { " VIOLATION" }
            ));
            rows.push(json!({
                "alpha": a.to_string(), "stratum": e.stratum.to_string(), "codim": e.codim,
                "max_fiber": e.max_fiber, "margin": margin, "relevant": e.relevant, "ok": e.ok,
            }));
        }
    }
    let verdict = if violations == 0 { "OK" } else { "FAIL" };
    lines.push(format!("{verdict}: {total} strata, {relevant} relevant, {violations} violations"));
    ctx.emit(&lines.join("\n"), json!({"n": n, "strata": rows, "total": total, "relevant": relevant, "violations": violations}))?;
    Ok(violations == 0)
}

fn hecke_point(n: usize, spec: &str) -> Result<HeckePoint, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [g, before, after] = parts[..] else {
        return Err(Failure::Usage(format!("point '{spec}' is not GAMMA_R:KAPPA_BEFORE:KAPPA_AFTER")));
    };
    Ok(HeckePoint { gamma: dim_vector(n, g)?, before: multiseg(n, before)?, after: multiseg(n, after)? })
}

#[allow(clippy::too_many_arguments)]
fn hecke(
    ctx: &mut Ctx<'_>,
    n: usize,
    alpha: Option<String>,
    gamma: Option<String>,
    points: &[String],
    max_alpha: u32,
    max_gamma: u32,
    verbose: bool,
) -> Outcome {
    if !points.is_empty() {
        let (Some(a), Some(g)) = (&alpha, &gamma) else {
            return Err(Failure::Usage("--point needs --alpha and --gamma".into()));
        };
        let (a, g) = (dim_vector(n, a)?, dim_vector(n, g)?);
        let pts = points.iter().map(|p| hecke_point(n, p)).collect::<Result<Vec<_>, _>>()?;
        let r = hecke_dim_audit(&a, &g, &pts)?;
        let text = format!(
            "dim B={} bound={} stratum_dim={} fiber_route={} margin={} top={} predicted_top={} degree_shift={}\n{}",
            r.dim_b, r.bound, r.stratum_dim, r.fiber_route_dim, r.margin, r.top_dimensional, r.predicted_top, r.degree_shift,
            if r.ok() { "OK" } else { "FAIL" }
        );
        let value = json!({
            "dim_b": r.dim_b, "bound": r.bound, "stratum_dim": r.stratum_dim, "fiber_route_dim": r.fiber_route_dim,
            "margin": r.margin, "top_dimensional": r.top_dimensional, "predicted_top": r.predicted_top,
            "degree_shift": r.degree_shift, "ok": r.ok(),
        });
        ctx.emit(&text, value)?;
        return Ok(r.ok());
    }
    let alphas = match &alpha {
        Some(a) => vec![dim_vector(n, a)?],
        None => {
            check_audit_budget(ctx, max_alpha)?;
            DimVector::all_up_to(n, max_alpha)?
        }
    };
    let gammas = match &gamma {
        Some(g) => vec![dim_vector(n, g)?],
        None => DimVector::all_up_to(n, max_gamma)?,
    };
    let (mut total, mut top, mut failures) = (0usize, 0usize, Vec::new());
    let mut lines = Vec::new();
    for a in &alphas {
        for g in &gammas {
            for pts in hecke_inputs(a, g)? {
                let r = hecke_dim_audit(a, g, &pts)?;
                total += 1;
                top += usize::from(r.top_dimensional);
                let desc = pts.iter().map(|p| format!("{}:{}:{}", p.gamma, p.before, p.after)).collect::<Vec<_>>().join(" ");
                if verbose {
                    lines.push(format!("alpha=({a}) gamma=({g}) [{desc}] margin={}{}", r.margin, if r.top_dimensional { " top" } else { "" }));
                }
                if !r.ok() {
                    failures.push(format!("alpha=({a}) gamma=({g}) [{desc}]"));
                }
            }
        }
    }
    let verdict = if failures.is_empty() { "OK" } else { "FAIL" };
    lines.extend(failures.iter().map(|f| format!("violation: {f}")));
    lines.push(format!("{verdict}: {total} inputs audited, {top} top-dimensional"));
    ctx.emit(&lines.join("\n"), json!({"n": n, "total": total, "top_dimensional": top, "failures": failures}))?;
    Ok(failures.is_empty())
}

fn serre(ctx: &mut Ctx<'_>, n: usize, pair: Option<(usize, usize)>) -> Outcome {
    let (mut engine, mut cache) = ctx.engine()?;
    let pairs: Vec<(usize, usize)> = match pair {
        Some(p) => vec![p],
        None => (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect(),
    };
    let mut failed = Vec::new();
    let mut result = Ok(());
    for &(i, j) in &pairs {
        match serre_check(&mut engine, n, i, j) {
            Ok(true) => {}
            Ok(false) => failed.push(format!("i={i} j={j}")),
            Err(e) => {
                result = Err(Failure::from(e));
                break;
            }
        }
    }
    ctx.finish(&engine, &mut cache)?;
    result?;
    let text = if failed.is_empty() { "OK".to_string() } else { format!("FAIL: {}", failed.join(", ")) };
    ctx.emit(&text, json!({"n": n, "pairs": pairs.len(), "failed": failed}))?;
    Ok(failed.is_empty())
}

fn load_datum(args: &AdhmArgs) -> Result<(affq_core::adhm::AdhmDatum, AffineTransform2), Failure> {
    let text = fs::read_to_string(&args.datum)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.datum.display())))?;
    let doc = DatumDoc::from_json(&text).map_err(Failure::Usage)?;
    let d = doc.datum().map_err(Failure::Usage)?;
    let g = match &args.transform {
        Some(t) => parse_transform(t).map_err(Failure::Usage)?,
        None => doc.transform().map_err(Failure::Usage)?.unwrap_or_else(AffineTransform2::identity),
    };
    Ok((d, g))
}

fn poly_json(p: &RationalPoly) -> Value {
    json!({"text": p.to_string(), "coeffs": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>()})
}

fn theta_cmd(ctx: &mut Ctx<'_>, args: &AdhmArgs) -> Outcome {
    let (d, g) = load_datum(args)?;
    let p = theta(&d, &g)?;
    ctx.emit(&p.to_string(), json!({"a": d.a(), "divisor": poly_json(&p)}))?;
    Ok(true)
}

fn adhm_check(ctx: &mut Ctx<'_>, args: &AdhmArgs, points: &str) -> Outcome {
    let (d, g) = load_datum(args)?;
    let pts = parse_points(points).map_err(Failure::Usage)?;
    let valid = d.validate();
    let mut lines = vec![format!("valid: {valid}")];
    let mut value = json!({"a": d.a(), "n": d.n(), "valid": valid});
    let mut ok = valid;
    if valid {
        let moved = act(&g, &d)?;
        let preserved = moved.validate();
        // θ(g·d) read at the identity equals θ(d) read through g
        let equivariant = theta(&moved, &AffineTransform2::identity())? == theta(&d, &g)?;
        let additive = additivity_check(&d, &pts, &g)?;
        lines.push(format!("action preserves validity: {preserved}"));
        lines.push(format!("equivariance: {equivariant}"));
        lines.push(format!("additivity ({} points): {additive}", pts.len()));
        value["action_preserves_validity"] = json!(preserved);
        value["equivariance"] = json!(equivariant);
        value["additivity"] = json!(additive);
        value["points"] = json!(pts.len());
        ok = preserved && equivariant && additive;
    }
    lines.push(if ok { "OK".into() } else { "FAIL".into() });
    value["ok"] = json!(ok);
    ctx.emit(&lines.join("\n"), value)?;
    Ok(ok)
}

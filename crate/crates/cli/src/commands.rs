use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::Args;
use felab_core::constructions::{
    gen_exgamma, gen_fastgrowth, gen_fp_prime_subset, gen_mj_funcs, gen_sidon_levels, gen_thick_nonmaxstar,
    prime_rule_params, FIXTURE_NAMES,
};
use felab_core::embed::{decreasing_chain, sidon_sequence, fe_fip_oracle, fe_prefix_check, fe_witness, me_check, Chain};
use felab_core::largeness::report::check_property;
use felab_core::largeness::{diagram_report, poset_atlas, AtlasReport, LargenessReport, Property, PropertyParams};
use felab_core::setlang::{parse, Exactness, Param, SetExpr, UNBOUNDED};
use felab_core::{Error, Evaluator, FiniteSet, Verdict};
use serde::Serialize;

use crate::{cache, render, Cli, Command, Format};

/// Bounds shared by `check` and `diagram`.
#[derive(Args, Debug, Clone, Default)]
pub struct BoundArgs {
    /// Run length for thickness and piecewise syndeticity.
    #[arg(long = "n")]
    pub run_length: Option<u64>,
    /// Shift / quotient bound for piecewise syndeticity.
    #[arg(long = "t-max")]
    pub t_max: Option<u64>,
    /// Number of IP generators.
    #[arg(long = "L")]
    pub ip_len: Option<usize>,
    /// Anchor bound for J sets and dilation bound for MAX*.
    #[arg(long = "a-max")]
    pub a_max: Option<u64>,
    /// Index bound for J sets.
    #[arg(long = "h-max")]
    pub h_max: Option<usize>,
    /// Divisor bound for MAX.
    #[arg(long = "N")]
    pub max_n: Option<u64>,
    /// Antichain strength for NMAX and NMAX*.
    #[arg(long = "s")]
    pub strength: Option<usize>,
}

impl BoundArgs {
    fn params(&self, horizon: u64) -> PropertyParams {
        let mut p = PropertyParams::new(horizon);
        if let Some(v) = self.run_length {
            p.run_length = v;
        }
        if let Some(v) = self.t_max {
            p.t_max = v;
        }
        if let Some(v) = self.ip_len {
            p.ip_len = v;
        }
        if let Some(v) = self.a_max {
            p.j_a_max = v;
            p.maxstar_a_max = v;
        }
        if let Some(v) = self.h_max {
            p.j_h_max = v;
        }
        if let Some(v) = self.max_n {
            p.max_n = v;
        }
        if let Some(v) = self.strength {
            p.strength = v;
        }
        p
    }
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// One of A-thick, M-thick, A-pcws, M-pcws, A-IP, M-IP, A-IP*, A-J, M-J, MAX, NMAX, MAX*, NMAX*.
    pub property: String,
    pub expr: String,
    #[command(flatten)]
    pub bounds: BoundArgs,
}

#[derive(Args, Debug)]
pub struct FeArgs {
    pub source: String,
    pub target: String,
    /// Number of leading elements of the source to embed.
    #[arg(long, default_value_t = 16)]
    pub prefix: usize,
    /// Largest dilation tried. Defaults to 10^6, lowered to what the
    /// target's known range supports when the target is only partly known.
    #[arg(long)]
    pub kmax: Option<u64>,
}

#[derive(Args, Debug)]
pub struct MeArgs {
    pub source: String,
    pub target: String,
    /// Subset size.
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, default_value_t = 1_000_000)]
    pub kmax: u64,
}

#[derive(Args, Debug)]
pub struct DiagramArgs {
    /// Set expression; omit when using --batch.
    pub expr: Option<String>,
    /// File with one expression per line; prints one JSON report per line.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    #[command(flatten)]
    pub bounds: BoundArgs,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    pub name: String,
    pub params: Vec<String>,
    /// Write the members as an explicit set file.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ChainArgs {
    pub depth: usize,
    pub per_level: usize,
    /// Re-check nesting and every logged refutation.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Args, Debug)]
pub struct AtlasArgs {
    pub n: u64,
    /// Audit every subset even above the default exhaustive size.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    pub expr: String,
}

pub const DEFAULT_KMAX: u64 = 1_000_000;

/// Exit status for an error: 3 input, 4 precision, 5 resource, 6 i/o.
pub fn error_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::Precision { .. }) => 4,
        Some(Error::Resource { .. }) => 5,
        Some(Error::Io(_)) => 6,
        _ if e.downcast_ref::<std::io::Error>().is_some() => 6,
        _ => 3,
    }
}

fn verdict_code(v: &Verdict) -> u8 {
    v.exit_code() as u8
}

fn evaluator(cli: &Cli) -> Result<Evaluator> {
    let path = std::env::var_os("FELAB_CACHE").map(PathBuf::from).or_else(|| cli.cache.clone());
    match path {
        Some(p) => {
            if cli.horizon > felab_core::setlang::MAX_HORIZON {
                return Err(Error::Resource { what: "horizon".into(), limit: felab_core::setlang::MAX_HORIZON }.into());
            }
            let sieve = cache::load_or_build(&p, cli.horizon)?;
            Ok(Evaluator::with_sieve(cli.horizon, Arc::new(sieve))?)
        }
        None => Ok(Evaluator::new(cli.horizon)?),
    }
}

fn format(cli: &Cli) -> Format {
    if cli.json {
        Format::Json
    } else {
        cli.format
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, table: impl FnOnce() -> String) -> Result<()> {
    let text = match format(cli) {
        Format::Json => serde_json::to_string_pretty(value)? + "\n",
        Format::Table => table(),
    };
    write_stdout(&text)
}

fn write_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Check(a) => cmd_check(cli, a),
        Command::Fe(a) => cmd_fe(cli, a),
        Command::Me(a) => cmd_me(cli, a),
        Command::Diagram(a) => cmd_diagram(cli, a),
        Command::Construct(a) => cmd_construct(cli, a),
        Command::Chain(a) => cmd_chain(cli, a),
        Command::Atlas(a) => cmd_atlas(cli, a),
        Command::Parse(a) => cmd_parse(cli, a),
    }
}

#[derive(Serialize)]
struct CheckReport {
    property: String,
    expr: String,
    horizon: u64,
    exactness: Exactness,
    bounds: String,
    #[serde(flatten)]
    verdict: Verdict,
}

fn cmd_check(cli: &Cli, args: &CheckArgs) -> Result<u8> {
    let property: Property = args.property.parse()?;
    let ev = evaluator(cli)?;
    let a = ev.parse_eval(&args.expr)?;
    let params = args.bounds.params(cli.horizon);
    params.validate()?;
    let verdict = check_property(&a, property, &params)?;
    let report = CheckReport {
        property: property.name().into(),
        expr: a.expr().to_string(),
        horizon: cli.horizon,
        exactness: a.exactness(),
        bounds: felab_core::largeness::report::bounds_of(property, &params),
        verdict,
    };
    emit(cli, &report, || {
        format!(
            "{} of {} ({})\n{}\n",
            report.property,
            report.expr,
            report.bounds,
            render::verdict(&report.verdict)
        )
    })?;
    Ok(verdict_code(&report.verdict))
}

#[derive(Serialize)]
struct OracleCheck {
    /// Least k from the direct scan, if any.
    witness_k: Option<u64>,
    /// Least k from the quotient-intersection oracle, if any.
    oracle_k: Option<u64>,
    agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct FeReport {
    source: String,
    target: String,
    horizon: u64,
    prefix: FiniteSet,
    k_max: u64,
    #[serde(flatten)]
    verdict: Verdict,
    oracle: OracleCheck,
}

fn cmd_fe(cli: &Cli, args: &FeArgs) -> Result<u8> {
    let ev = evaluator(cli)?;
    let a = ev.parse_eval(&args.source)?;
    let b = ev.parse_eval(&args.target)?;
    let f = a.first_elements(args.prefix);
    let k_max = match args.kmax {
        Some(k) => k,
        None if b.exact_horizon() != UNBOUNDED => {
            let top = f.max().unwrap_or(1);
            (b.exact_horizon() / top).clamp(1, DEFAULT_KMAX)
        }
        None => DEFAULT_KMAX,
    };
    let verdict = fe_prefix_check(&a, &b, args.prefix, k_max)?;
    let oracle = if f.is_empty() {
        OracleCheck { witness_k: None, oracle_k: None, agrees: true, detail: Some("empty prefix".into()) }
    } else {
        let w = fe_witness(&f, &b, k_max);
        let o = fe_fip_oracle(&f, &b, k_max);
        let agrees = w == o;
        let detail = match (&w, &o) {
            (Err(e), _) | (_, Err(e)) => Some(e.to_string()),
            _ => None,
        };
        OracleCheck {
            witness_k: w.ok().and_then(|x| x.k()),
            oracle_k: o.ok().and_then(|x| x.k()),
            agrees,
            detail,
        }
    };
    let report = FeReport {
        source: a.expr().to_string(),
        target: b.expr().to_string(),
        horizon: cli.horizon,
        prefix: f,
        k_max,
        verdict,
        oracle,
    };
    emit(cli, &report, || {
        let agree = if report.oracle.agrees { "agrees" } else { "DISAGREES" };
        format!(
            "{} into {} (prefix {}, k <= {})\n{}\nquotient-intersection oracle {agree}\n",
            report.source,
            report.target,
            report.prefix,
            report.k_max,
            render::verdict(&report.verdict)
        )
    })?;
    if !report.oracle.agrees {
        bail!("the two embedding searches disagree on {}", report.prefix);
    }
    Ok(verdict_code(&report.verdict))
}

#[derive(Serialize)]
struct MeReport {
    source: String,
    target: String,
    m: usize,
    horizon: u64,
    k_max: u64,
    #[serde(flatten)]
    verdict: Verdict,
}

fn cmd_me(cli: &Cli, args: &MeArgs) -> Result<u8> {
    let ev = evaluator(cli)?;
    let a = ev.parse_eval(&args.source)?;
    let b = ev.parse_eval(&args.target)?;
    let verdict = me_check(&a, &b, args.m, cli.horizon, args.kmax)?;
    let report = MeReport {
        source: a.expr().to_string(),
        target: b.expr().to_string(),
        m: args.m,
        horizon: cli.horizon,
        k_max: args.kmax,
        verdict,
    };
    emit(cli, &report, || {
        format!(
            "{}-subsets of {} into {}\n{}\n",
            report.m,
            report.source,
            report.target,
            render::verdict(&report.verdict)
        )
    })?;
    Ok(verdict_code(&report.verdict))
}

#[derive(Serialize)]
struct BatchError {
    expr: String,
    error: String,
}

fn cmd_diagram(cli: &Cli, args: &DiagramArgs) -> Result<u8> {
    let ev = evaluator(cli)?;
    let params = args.bounds.params(cli.horizon);
    if let Some(path) = &args.batch {
        let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let mut failed = false;
        for line in BufReader::new(file).lines() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let out = ev.parse_eval(text).and_then(|a| diagram_report(&a, &params));
            match out {
                Ok(r) => write_stdout(&(serde_json::to_string(&r)? + "\n"))?,
                Err(e) => {
                    failed = true;
                    let line = serde_json::to_string(&BatchError { expr: text.into(), error: e.to_string() })?;
                    write_stdout(&(line + "\n"))?;
                }
            }
        }
        return Ok(if failed { 3 } else { 0 });
    }
    let Some(expr) = &args.expr else {
        bail!("diagram needs an expression or --batch FILE");
    };
    let a = ev.parse_eval(expr)?;
    let report: LargenessReport = diagram_report(&a, &params)?;
    emit(cli, &report, || render::report(&report))?;
    Ok(if report.consistent() { 0 } else { 1 })
}

#[derive(Serialize, Default)]
struct ConstructOutput {
    name: String,
    expr: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    avoided: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement_primes: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    members_up_to: Option<u64>,
}

fn count_param(params: &[Param], i: usize, name: &str) -> Result<usize> {
    match params.get(i) {
        Some(Param::Nat(n)) => Ok(*n as usize),
        _ => bail!("{name} expects a count as parameter {}", i + 1),
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn cmd_construct(cli: &Cli, args: &ConstructArgs) -> Result<u8> {
    if !FIXTURE_NAMES.contains(&args.name.as_str()) {
        return Err(Error::UnknownGenerator { name: args.name.clone(), catalog: FIXTURE_NAMES.join(", ") }.into());
    }
    let mut text = format!("construct({}", args.name);
    for p in &args.params {
        text.push(',');
        text.push_str(p);
    }
    text.push(')');
    let expr = parse(&text)?;
    let SetExpr::Construct { name, params } = &expr else { unreachable!("parsed a construct call") };
    let ev = evaluator(cli)?;
    let mut out = ConstructOutput { name: name.clone(), expr: expr.to_string(), ..Default::default() };
    match name.as_str() {
        "exgamma" => out.sequence = Some(gen_exgamma(count_param(params, 0, name)?)?),
        "fastgrowth" => out.sequence = Some(gen_fastgrowth(count_param(params, 0, name)?)?),
        "sidon" => out.sequence = Some(sidon_sequence(count_param(params, 0, name)?)),
        "sidon_levels" => out.sequence = Some(gen_sidon_levels(count_param(params, 0, name)?)),
        "thick_nonmaxstar" => {
            let t = gen_thick_nonmaxstar(count_param(params, 0, name)?)?;
            out.blocks = Some(t.blocks);
            out.avoided = Some(t.avoided);
        }
        "mj_funcs" => {
            let m = gen_mj_funcs(ev.sieve(), count_param(params, 0, name)?)?;
            out.f = Some(m.f);
            out.g = Some(m.g);
        }
        "fp_primes" => {
            let (rule, count) = prime_rule_params(params)?;
            let s = gen_fp_prime_subset(&ev, &rule, count)?;
            out.primes = Some(s.primes);
            out.complement_primes = Some(s.complement);
        }
        _ => {}
    }
    if name != "mj_funcs" {
        let set = ev.eval(&expr)?;
        out.members = Some(set.elements().to_vec());
        out.members_up_to = Some(cli.horizon);
    }
    if let Some(path) = &args.emit {
        let Some(members) = &out.members else { bail!("{name} is not a set; nothing to emit") };
        let mut body = format!("# {} members up to {}\n", out.expr, cli.horizon);
        for m in members {
            body.push_str(&format!("{m}\n"));
        }
        fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(cli, &out, || {
        let mut s = String::new();
        if let Some(seq) = &out.sequence {
            s.push_str(&format!("{}\n", join(seq)));
        }
        if let (Some(blocks), Some(avoided)) = (&out.blocks, &out.avoided) {
            for (i, (b, a)) in blocks.iter().zip(avoided).enumerate() {
                s.push_str(&format!("F_{} = {{{}}}  a_{} = {a}\n", i + 1, join(b).replace(' ', ","), i + 1));
            }
        }
        if let (Some(f), Some(g)) = (&out.f, &out.g) {
            s.push_str("n\tf(n)\tg(n)\n");
            for (i, (x, y)) in f.iter().zip(g).enumerate() {
                s.push_str(&format!("{}\t{x}\t{y}\n", i + 1));
            }
        }
        if let Some(p) = &out.primes {
            s.push_str(&format!("primes: {}\n", join(p)));
        }
        if let Some(q) = &out.complement_primes {
            s.push_str(&format!("complementary primes: {}\n", join(q)));
        }
        if out.sequence.is_none() {
            if let Some(m) = &out.members {
                s.push_str(&format!("members up to {}: {}\n", cli.horizon, render::abbreviate(m, 40)));
            }
        }
        s
    })?;
    Ok(0)
}

#[derive(Serialize)]
struct ChainOutput {
    #[serde(flatten)]
    chain: Chain,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn cmd_chain(cli: &Cli, args: &ChainArgs) -> Result<u8> {
    let chain = decreasing_chain(args.depth, args.per_level)?;
    let verified = args.verify.then(|| chain.verify());
    let out = ChainOutput { chain, verified };
    emit(cli, &out, || render::chain(&out.chain, out.verified))?;
    Ok(if verified == Some(false) { 1 } else { 0 })
}

fn cmd_atlas(cli: &Cli, args: &AtlasArgs) -> Result<u8> {
    let report: AtlasReport = poset_atlas(args.n, args.exhaustive.then_some(true))?;
    emit(cli, &report, || render::atlas(&report))?;
    Ok(if report.passed() { 0 } else { 1 })
}

#[derive(Serialize)]
struct ParseOutput {
    canonical: String,
    ast: SetExpr,
}

fn cmd_parse(cli: &Cli, args: &ParseArgs) -> Result<u8> {
    let ast = parse(&args.expr)?;
    let out = ParseOutput { canonical: ast.to_string(), ast };
    emit(cli, &out, || format!("{}\n{}", out.canonical, render::tree(&out.ast)))?;
    Ok(0)
}

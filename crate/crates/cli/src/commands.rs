use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use robba_core::tate::{membership, reduce, strong_complete, CompletionStatus, Membership, ReduceLimits};
use robba_core::{
    divide, eval_at_primitive, factor_primitive, gcd_bezout, homotopy_seminorm, invert_unit, join_radius, polygon,
    point_seminorm, primitive_check, BaseField, DivisionConfig, Error, FactorConfig, FactoredElement, Interval,
    PointSpec, PrimitiveDeg1, Rational, TateSeries, Window, WittSeries,
};
use serde_json::{json, Value};

use crate::config::{parse_file, SessionConfig};
use crate::formats::{polygon_svg, FactoredText, FormatError, GeneratorFile};
use crate::parse::{parse_tate, parse_witt, ParseError};
use crate::print::{exponent, parse_rational, rational, tate_to_string};

#[derive(Parser, Debug)]
#[command(name = "robba", version, about = "Exact arithmetic in extended Robba rings over F_q((t^(1/p^inf)))")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Residue characteristic.
    #[arg(long, global = true, env = "ROBBA_P")]
    pub p: Option<String>,
    /// `f` with `q = p^f`.
    #[arg(long = "q-degree", global = true, env = "ROBBA_Q_DEGREE")]
    pub q_degree: Option<String>,
    /// Radius `r` (default 1).
    #[arg(long, global = true, env = "ROBBA_R")]
    pub r: Option<String>,
    /// Lower radius `s` of `[s, r]` (default `r`).
    #[arg(long, global = true, env = "ROBBA_S")]
    pub s: Option<String>,
    /// Radius exponents `e` with `ρ = p^{-e}`, or `inf`; repeatable.
    #[arg(long, global = true, env = "ROBBA_RHO", value_delimiter = ',', allow_hyphen_values = true)]
    pub rho: Vec<String>,
    /// `t`-adic precision of root expansions.
    #[arg(long = "prec-t", global = true, env = "ROBBA_PREC_T")]
    pub prec_t: Option<String>,
    /// `ϖ`-precision assumed for exact inputs.
    #[arg(long = "prec-pi", global = true, env = "ROBBA_PREC_PI")]
    pub prec_pi: Option<String>,
    /// Exponent denominators are capped at `p^K`.
    #[arg(long = "den-cap", global = true, env = "ROBBA_DEN_CAP")]
    pub den_cap: Option<String>,
    #[arg(long = "stop-exponent", global = true, env = "ROBBA_STOP_EXPONENT", allow_hyphen_values = true)]
    pub stop_exponent: Option<String>,
    /// Worker threads for `--batch`.
    #[arg(long, global = true, env = "ROBBA_JOBS")]
    pub jobs: Option<String>,
    /// `key = value` settings file.
    #[arg(long, global = true, env = "ROBBA_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, conflicts_with = "tsv")]
    pub json: bool,
    #[arg(long, global = true)]
    pub tsv: bool,
    /// Also write the Newton polygon as SVG (`polygon` only).
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Run one command per line of FILE, in parallel.
    #[arg(long, global = true)]
    pub batch: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gauss norm exponent at `--t`, or over `[s, r]`.
    Norm {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        t: Option<String>,
    },
    /// Newton polygon slopes and multiplicities.
    Polygon {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// `y = q·x + w` at radius `r`.
    Divide {
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Normalized gcd with Bézout cofactors.
    Gcd {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Inverse of a unit over `[s, r]`.
    Invert {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Reduction of a Tate series against a generator file.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        gens: PathBuf,
    },
    /// Ideal membership certificate.
    Member {
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        gens: PathBuf,
    },
    /// Bounded completion of a generator set.
    Complete {
        #[arg(long)]
        gens: PathBuf,
    },
    /// `θ(x)` at the point cut out by `pi - [u]`.
    Eval {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Exponent of the point seminorm at `pi - [u]`.
    Seminorm {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// `H(z, ρ)(x)` for each `--rho`; `x` is an element or factored JSON.
    Homotopy {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        z: String,
    },
    /// Radius of the join of two points of the same slope.
    Join {
        #[arg(allow_hyphen_values = true)]
        z1: String,
        #[arg(allow_hyphen_values = true)]
        z2: String,
    },
    /// Unit times product of `pi - [u]` factors.
    Factor {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
}

/// Exit status and the text for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    /// `stdout` as JSON.
    pub fn json(&self) -> Option<Value> {
        serde_json::from_str(&self.stdout).ok()
    }
}

enum Failure {
    Usage(String),
    Parse(ParseError),
    Domain { code: String, message: String, extra: Option<Box<(&'static str, Value)>> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain { code: e.code().into(), message: e.to_string(), extra: None }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Json(e) => Failure::Usage(format!("bad JSON document: {e}")),
            FormatError::Field(m) => Failure::Usage(m.into()),
            FormatError::Parse(e) => Failure::Parse(e),
            FormatError::Kernel(e) => e.into(),
        }
    }
}

impl Failure {
    fn outcome(self) -> Outcome {
        let (code, body) = match self {
            Failure::Usage(message) => (2, json!({"code": "UsageError", "message": message})),
            Failure::Parse(ParseError::Syntax { position, message }) => {
                (2, json!({"code": "SyntaxError", "message": message, "position": position}))
            }
            Failure::Parse(ParseError::Kernel(e)) => (2, json!({"code": e.code(), "message": e.to_string()})),
            Failure::Domain { code, message, extra } => {
                let mut body = json!({"code": code, "message": message});
                if let Some((k, v)) = extra.map(|b| *b) {
                    body[k] = v;
                }
                (1, body)
            }
        };
        let message = body["message"].as_str().unwrap_or_default().to_string();
        Outcome { code, stdout: json!({ "error": body }).to_string() + "\n", stderr: format!("error: {message}\n") }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

struct Session {
    cfg: SessionConfig,
    field: BaseField,
    global: Global,
}

impl Session {
    fn division(&self) -> DivisionConfig<'static> {
        DivisionConfig { pi_cap: self.cfg.prec_pi, ..DivisionConfig::default() }
    }

    fn tate_stop(&self) -> Rational {
        self.cfg.stop.unwrap_or_else(|| Rational::from_integer(self.cfg.prec_pi))
    }

    fn witt(&self, text: &str) -> Result<WittSeries, Failure> {
        Ok(parse_witt(&input(text)?, self.field)?)
    }

    fn primitive(&self, text: &str) -> Result<PrimitiveDeg1, Failure> {
        Ok(primitive_check(&self.witt(text)?)?)
    }

    fn generators(&self, path: &Path) -> Result<(std::sync::Arc<robba_core::TateContext>, Vec<TateSeries>), Failure> {
        let text = read_path(path)?;
        let file: GeneratorFile = serde_json::from_str(&text).map_err(FormatError::from)?;
        Ok(file.load(self.field, self.cfg.weights(), self.cfg.r)?)
    }
}

fn input(text: &str) -> Result<String, Failure> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("reading stdin: {e}")))?;
    Ok(s.trim().to_string())
}

fn read_path(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        return input("-");
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn rat_arg(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).ok_or_else(|| Failure::Usage(format!("{name}: expected a rational, got '{text}'")))
}

fn settings(g: &Global) -> Result<SessionConfig, Failure> {
    let mut map: BTreeMap<String, String> = match &g.config {
        Some(path) => parse_file(&read_path(path)?).map_err(Failure::Usage)?,
        None => BTreeMap::new(),
    };
    let flags = [
        ("p", &g.p),
        ("q_degree", &g.q_degree),
        ("r", &g.r),
        ("s", &g.s),
        ("prec_t", &g.prec_t),
        ("prec_pi", &g.prec_pi),
        ("den_cap", &g.den_cap),
        ("stop_exponent", &g.stop_exponent),
        ("jobs", &g.jobs),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            map.insert(k.into(), v.clone());
        }
    }
    if !g.rho.is_empty() {
        map.insert("rho".into(), g.rho.join(","));
    }
    SessionConfig::from_settings(&map).map_err(Failure::Usage)
}

/// The interval spanned by the polygon slopes of `x`, or `[1, 1]`.
fn slope_span(x: &WittSeries) -> Result<Interval, Failure> {
    let slopes = polygon(x, Window::All)?.slopes();
    let one = Rational::from_integer(1);
    let lo = slopes.iter().map(|s| s.0).min().unwrap_or(one);
    let hi = slopes.iter().map(|s| s.0).max().unwrap_or(one);
    Ok(Interval::new(lo, hi)?)
}

fn factored_json(x: &FactoredElement) -> Value {
    let factors: Vec<Value> =
        x.factors.iter().map(|f| json!({"u_bar": f.u_bar().to_string(), "slope": rational(f.slope())})).collect();
    json!({"unit": x.unit_scalar.to_string(), "pi_power": x.pi_power, "factors": factors})
}

fn tates(xs: &[TateSeries]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(tate_to_string(x))).collect())
}

fn execute(s: &Session, command: &Command) -> Result<Output, Failure> {
    let cfg = &s.cfg;
    let div = s.division();
    let out = match command {
        Command::Norm { x, t } => {
            let x = s.witt(x)?;
            let v = match (t, cfg.s) {
                (Some(t), _) => x.gauss_norm_exponent(rat_arg("--t", t)?),
                (None, Some(_)) => x.interval_norm_exponent(&cfg.interval()?),
                (None, None) => x.gauss_norm_exponent(cfg.radius()),
            };
            json!({"exponent": exponent(v.exponent), "reliable": v.reliable})
        }
        Command::Polygon { x } => {
            let x = s.witt(x)?;
            let window = match (cfg.s, cfg.r) {
                (Some(_), _) => Window::Closed(cfg.interval()?),
                (None, Some(r)) => Window::UpTo(r),
                (None, None) => Window::All,
            };
            let poly = polygon(&x, window)?;
            if let Some(path) = &s.global.svg {
                std::fs::write(path, polygon_svg(&x, &poly)).map_err(|e| Failure::Domain {
                    code: "IoError".into(),
                    message: format!("{}: {e}", path.display()),
                    extra: None,
                })?;
            }
            if !s.global.json {
                let mut text = String::new();
                for seg in &poly.segments {
                    text += &format!("{}\t{}\t{}\n", seg.slope.numer(), seg.slope.denom(), seg.multiplicity);
                }
                return Ok(Output::Text(text));
            }
            let segs: Vec<Value> = poly
                .segments
                .iter()
                .map(|g| json!({"slope": rational(g.slope), "multiplicity": g.multiplicity}))
                .collect();
            json!({ "segments": segs })
        }
        Command::Divide { y, x } => {
            let res = divide(&s.witt(y)?, &s.witt(x)?, cfg.radius(), cfg.stop, &div)?;
            json!({
                "quotient": res.quotient.to_string(),
                "remainder": res.remainder.to_string(),
                "residual_exponent": exponent(res.residual_exponent),
                "status": res.status.as_str(),
                "stop": rational(res.stop),
            })
        }
        Command::Gcd { x, y } => {
            let res = gcd_bezout(&s.witt(x)?, &s.witt(y)?, cfg.radius(), cfg.stop, &div)?;
            let status = if res.residual_exponent.is_infinite() { "Exact" } else { "Converged" };
            json!({
                "gcd": res.g.to_string(),
                "a": res.a.to_string(),
                "b": res.b.to_string(),
                "residual_exponent": exponent(res.residual_exponent),
                "status": status,
                "stop": rational(res.stop),
            })
        }
        Command::Invert { x } => {
            let target = cfg.stop.unwrap_or_else(|| Rational::from_integer(2 * cfg.prec_pi));
            let res = invert_unit(&s.witt(x)?, &cfg.interval()?, target, &div)?;
            let status = if res.residual_exponent.is_infinite() { "Exact" } else { "Converged" };
            json!({
                "inverse": res.value.to_string(),
                "residual_exponent": exponent(res.residual_exponent),
                "status": status,
            })
        }
        Command::Reduce { y, gens } => {
            let (ctx, g) = s.generators(gens)?;
            let y = parse_tate(&input(y)?, &ctx)?;
            let res = reduce(&y, &g, s.tate_stop(), &ReduceLimits::default(), &div)?;
            json!({
                "quotients": tates(&res.quotients),
                "remainder": tate_to_string(&res.remainder),
                "residual_exponent": exponent(res.residual_exponent),
                "eps_gap": exponent(res.eps_gap),
            })
        }
        Command::Member { y, gens } => {
            let (ctx, g) = s.generators(gens)?;
            let y = parse_tate(&input(y)?, &ctx)?;
            match membership(&y, &g, s.tate_stop(), &ReduceLimits::default(), &div)? {
                Membership::Certificate { coefficients, residual_exponent, rounds } => {
                    let rounds: Vec<Value> = rounds
                        .iter()
                        .map(|r| {
                            json!({
                                "before": exponent(r.before),
                                "after": exponent(r.after),
                                "eps_gap": exponent(r.eps_gap),
                            })
                        })
                        .collect();
                    json!({
                        "member": true,
                        "coefficients": tates(&coefficients),
                        "residual_exponent": exponent(residual_exponent),
                        "rounds": rounds,
                    })
                }
                Membership::Residual { remainder, .. } => {
                    return Err(Failure::Domain {
                        code: "NotAMember".into(),
                        message: "reduction stabilized at a nonzero remainder".into(),
                        extra: Some(Box::new(("remainder", Value::String(tate_to_string(&remainder))))),
                    })
                }
            }
        }
        Command::Complete { gens } => {
            let (_, g) = s.generators(gens)?;
            let res = strong_complete(&g, s.tate_stop(), &ReduceLimits::default(), &div)?;
            let certs: Vec<Value> = res.certificates.iter().map(|c| tates(c)).collect();
            let status = match res.status {
                CompletionStatus::Complete => "Complete",
                CompletionStatus::Incomplete => "Incomplete",
            };
            json!({
                "basis": tates(&res.basis),
                "certificates": certs,
                "residual_exponent": exponent(res.residual_exponent),
                "status": status,
            })
        }
        Command::Eval { x, z } => {
            let z = s.primitive(z)?;
            let v = eval_at_primitive(&s.witt(x)?, &z)?;
            json!({"value": v.to_string(), "slope": rational(z.slope())})
        }
        Command::Seminorm { x, z } => {
            let z = s.primitive(z)?;
            json!({"exponent": exponent(point_seminorm(&s.witt(x)?, &z)?)})
        }
        Command::Homotopy { x, z } => {
            let z = s.primitive(z)?;
            let text = input(x)?;
            let fx = if text.trim_start().starts_with('{') {
                let doc: FactoredText = serde_json::from_str(&text).map_err(FormatError::from)?;
                doc.to_element(s.field)?
            } else {
                let x = parse_witt(&text, s.field)?;
                let fc = FactorConfig { t_prec: cfg.prec_t, ..FactorConfig::default() };
                factor_primitive(&x, &slope_span(&x)?, &fc)?.factored
            };
            if cfg.rho.is_empty() {
                return Err(Failure::Usage("homotopy needs at least one --rho".into()));
            }
            let mut values = Vec::new();
            for &rho in &cfg.rho {
                let e = homotopy_seminorm(&fx, &PointSpec::new(z.clone(), rho)?)?;
                values.push(json!({"rho_exponent": exponent(rho), "exponent": exponent(e)}));
            }
            json!({"center": z.to_string(), "values": values})
        }
        Command::Join { z1, z2 } => {
            json!({"rho_exponent": exponent(join_radius(&s.primitive(z1)?, &s.primitive(z2)?)?)})
        }
        Command::Factor { x } => {
            let x = s.witt(x)?;
            let window = if cfg.r.is_some() { cfg.interval()? } else { slope_span(&x)? };
            let fc = FactorConfig { t_prec: cfg.prec_t, ..FactorConfig::default() };
            let f = factor_primitive(&x, &window, &fc)?;
            let mut out = factored_json(&f.factored);
            out["residual_exponent"] = Value::String(exponent(f.residual_exponent));
            out
        }
    };
    Ok(Output::Json(out))
}

fn usage(e: &clap::Error) -> Outcome {
    use clap::error::ErrorKind;
    let rendered = e.render().to_string();
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            Outcome { code: if e.use_stderr() { 2 } else { 0 }, stdout: rendered, stderr: String::new() }
        }
        _ => {
            let message = rendered.lines().next().unwrap_or("usage error").trim_start_matches("error: ").to_string();
            let mut out = Failure::Usage(message).outcome();
            out.stderr = rendered;
            out
        }
    }
}

fn run_inner(args: &[OsString], nested: bool) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return usage(&e),
    };
    let cfg = match settings(&cli.global) {
        Ok(c) => c,
        Err(f) => return f.outcome(),
    };
    if let Some(path) = &cli.global.batch {
        if nested {
            return Failure::Usage("--batch cannot be nested".into()).outcome();
        }
        return run_batch(args, path, cfg.jobs);
    }
    let Some(command) = &cli.command else {
        return Failure::Usage("a subcommand is required (see --help)".into()).outcome();
    };
    let field = match cfg.field() {
        Ok(f) => f,
        Err(e) => return Failure::Usage(e.to_string()).outcome(),
    };
    let session = Session { cfg, field, global: cli.global };
    match execute(&session, command) {
        Ok(Output::Json(v)) => Outcome { code: 0, stdout: v.to_string() + "\n", stderr: String::new() },
        Ok(Output::Text(t)) => Outcome { code: 0, stdout: t, stderr: String::new() },
        Err(f) => f.outcome(),
    }
}

/// Drops `--batch FILE` from the outer arguments so each line can reuse the
/// remaining settings.
fn strip_batch(args: &[OsString]) -> Vec<OsString> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        match a.to_str() {
            Some("--batch") => skip = true,
            Some(s) if s.starts_with("--batch=") => {}
            _ => out.push(a.clone()),
        }
    }
    out
}

fn run_batch(args: &[OsString], path: &Path, jobs: usize) -> Outcome {
    let text = match read_path(path) {
        Ok(t) => t,
        Err(f) => return f.outcome(),
    };
    let base = strip_batch(args);
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return Failure::Usage(format!("thread pool: {e}")).outcome(),
    };
    let results: Vec<(usize, Outcome)> = pool.install(|| {
        lines
            .par_iter()
            .map(|&(n, line)| {
                let out = match shell_words::split(line) {
                    Ok(words) => {
                        let mut a = base.clone();
                        a.extend(words.into_iter().map(OsString::from));
                        run_inner(&a, true)
                    }
                    Err(e) => Failure::Usage(format!("line {n}: {e}")).outcome(),
                };
                (n, out)
            })
            .collect()
    });
    let mut stdout = String::new();
    let mut code = 0;
    for (n, out) in results {
        code = code.max(out.code);
        let body = out.json().unwrap_or(Value::String(out.stdout));
        stdout += &(json!({"line": n, "exit": out.code, "output": body}).to_string() + "\n");
    }
    Outcome { code, stdout, stderr: String::new() }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    run_inner(&args, false)
}

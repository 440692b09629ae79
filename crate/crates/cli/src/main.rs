//! `monogen`: command-line front end for the monogen library.
//!
//! Every subcommand prints a human-readable summary, or with `--json` a
//! single pretty-printed JSON document. Exit status is 0 on success, 1 on a
//! domain error and 2 on a usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use monogen::bounds::{self, real, BoundParams};
use monogen::resolvent::{self, Heights};
use monogen::rings::{self, RankRing};
use monogen::thue::{self, Target};
use monogen::{
    Action, BinaryForm, Error, MonicQuartic, Result, TernaryPair, TernaryQuadraticForm,
    Unimodular2,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "monogen", version, about = "Monogenizations of small-rank rings and Thue bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Decimal digits of working precision for real arithmetic (at least 40).
    #[arg(long, global = true, default_value_t = 60)]
    precision: u32,
    /// The epsilon of the bound optimizer, as a rational such as 1e-9.
    #[arg(long, global = true, allow_hyphen_values = true)]
    epsilon: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Discriminant of a binary form.
    Disc(CoeffsArg),
    /// Content of a binary form, or of a ring read from a file.
    Content(ContentArgs),
    /// Act on a binary form by a matrix of GL_2(Z).
    Act(ActArgs),
    /// Resolvent cubic and discriminant of a pair of ternary quadratic forms.
    ResolvePair(PairArgs),
    /// Embed a binary quartic form as a pair (A_1, B).
    Embed(CoeffsArg),
    /// Recover the binary quartic form from a pair (A_1, B).
    Invert(PairArgs),
    /// The matrix rho(gamma) in SO(A_1).
    Rho(GammaArg),
    /// Monic resolvent cubic of x^4 + b x^3 + c x^2 + d x + e.
    Resolvent(PolyArg),
    /// Count monogenizations of Z[x]/(x^4 + b x^3 + c x^2 + d x + e).
    Count(CountArgs),
    /// Enumerate monogenizers of a ring by brute force.
    Monogenizers(MonogenizerArgs),
    /// Solve a Thue equation in a box.
    Thue(ThueArgs),
    /// The explicit Thue bound optimizer.
    #[command(subcommand)]
    Bounds(BoundsCommand),
}

#[derive(Args, Debug)]
struct CoeffsArg {
    /// Coefficients a0,...,an in descending powers of x.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ContentArgs {
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// JSON file holding a ring as {"rank", "m", "c"}.
    #[arg(long)]
    ring: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Plain,
    CubicTwist,
    QuarticTwist,
}

#[derive(Args, Debug)]
struct ActArgs {
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// Matrix entries p,q,r,s of (p q; r s).
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, value_enum, default_value_t = Mode::Plain)]
    mode: Mode,
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Nine entries of the doubled Gram matrix of A, row-major.
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Nine entries of the doubled Gram matrix of B, row-major.
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Args, Debug)]
struct GammaArg {
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
}

#[derive(Args, Debug)]
struct PolyArg {
    /// b,c,d,e
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// b,c,d,e
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
    /// Search heights Hc,Hq,Hr for the cubic Thue equation, the quartic Thue
    /// equations and the reduction to A_1.
    #[arg(long, default_value = "200,200,50")]
    heights: String,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct RingSource {
    /// JSON file holding a ring as {"rank", "m", "c"}.
    #[arg(long)]
    ring: Option<PathBuf>,
    /// A binary form of degree 2 to 4 whose invariant order is used.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Args, Debug)]
struct MonogenizerArgs {
    #[command(flatten)]
    source: RingSource,
    #[arg(long, default_value_t = 50)]
    height: u64,
}

#[derive(Args, Debug)]
struct ThueArgs {
    #[arg(long, allow_hyphen_values = true)]
    coeffs: String,
    /// An integer m, or pmM for both M and -M.
    #[arg(long, allow_hyphen_values = true)]
    target: String,
    #[arg(long)]
    height: u64,
    /// List (x, y) and (-x, -y) once.
    #[arg(long)]
    identify_sign: bool,
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// Optimal bounds for C = 10^k.
    Table {
        #[arg(long, value_delimiter = ',', default_value = "6,7,8,9,10,11,12,13,14,15,20,30,45")]
        k_list: Vec<u32>,
    },
    /// Optimal bound for a given discriminant threshold C.
    Optimize {
        #[arg(long = "C", alias = "c")]
        c: String,
    },
    /// The discriminant threshold D_1^(1/(1-kappa)).
    Threshold {
        #[arg(long)]
        kappa: String,
    },
    /// Index-r sublattices of Z^2 with cyclic quotient.
    Sublattices {
        #[arg(long)]
        r: u64,
    },
    /// Whether the index-r sublattices cover a box of Z^2.
    Cover {
        #[arg(long)]
        r: u64,
        #[arg(long, default_value_t = 50)]
        size: u64,
    },
}

/// A rendered result.
struct Output {
    json: String,
    text: String,
}

fn output<T: Serialize>(value: &T, text: String) -> Output {
    Output {
        json: serde_json::to_string_pretty(value).expect("serializable"),
        text,
    }
}

fn parse_ints(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("bad integer {t:?} in {s:?}")))
        })
        .collect()
}

fn parse_form(s: &str) -> Result<BinaryForm> {
    BinaryForm::new(parse_ints(s)?)
}

fn parse_gamma(s: &str) -> Result<Unimodular2> {
    let [p, q, r, t]: [BigInt; 4] = parse_ints(s)?
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("expected p,q,r,s, got {s:?}")))?;
    Unimodular2::new([[p, q], [r, t]])
}

fn parse_ternary(s: &str) -> Result<TernaryQuadraticForm> {
    let v: [BigInt; 9] = parse_ints(s)?
        .try_into()
        .map_err(|_| Error::InvalidInput(format!("expected 9 entries, got {s:?}")))?;
    let [a, b, c, d, e, f, g, h, i] = v;
    TernaryQuadraticForm::new([[a, b, c], [d, e, f], [g, h, i]])
}

fn parse_pair(args: &PairArgs) -> Result<TernaryPair> {
    Ok(TernaryPair::new(parse_ternary(&args.a)?, parse_ternary(&args.b)?))
}

fn parse_heights(s: &str) -> Result<Heights> {
    let bad = || Error::InvalidInput(format!("expected positive Hc,Hq,Hr, got {s:?}"));
    let v: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match v[..] {
        [cubic, quartic, reduce] if cubic > 0 && quartic > 0 && reduce > 0 => Ok(Heights {
            cubic,
            quartic,
            reduce,
        }),
        _ => Err(bad()),
    }
}

fn read_ring(path: &PathBuf) -> Result<RankRing> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&data)
        .map_err(|e| Error::InvalidInput(format!("bad ring in {}: {e}", path.display())))
}

fn params(global: &Global, c: BigRational) -> Result<BoundParams> {
    let eps = match &global.epsilon {
        Some(s) => bounds::parse_rational(s)?,
        None => bounds::default_epsilon(),
    };
    BoundParams::new(c, eps, global.precision)
}

#[derive(Serialize)]
struct FormValue<'a> {
    form: &'a BinaryForm,
    #[serde(with = "monogen::json::int")]
    value: BigInt,
}

#[derive(Serialize)]
struct Acted<'a> {
    form: &'a BinaryForm,
    gamma: &'a Unimodular2,
    mode: &'static str,
    result: BinaryForm,
}

#[derive(Serialize)]
struct Resolved<'a> {
    pair: &'a TernaryPair,
    resolvent_cubic: BinaryForm,
    #[serde(with = "monogen::json::int")]
    discriminant: BigInt,
}

#[derive(Serialize)]
struct Monogenizers<'a> {
    ring: &'a RankRing,
    height: u64,
    count: usize,
    monogenizers: Vec<Monogenizer>,
}

#[derive(Serialize)]
struct Monogenizer {
    #[serde(with = "monogen::json::int")]
    element: Vec<BigInt>,
    /// Characteristic polynomial, monic, descending.
    #[serde(with = "monogen::json::int")]
    char_poly: Vec<BigInt>,
}

#[derive(Serialize)]
struct Threshold {
    kappa: String,
    /// Nine significant digits of the lower and upper ends of the enclosure.
    lower: String,
    upper: String,
}

#[derive(Serialize)]
struct SublatticeList {
    r: u64,
    psi: u64,
    sublattices: Vec<bounds::Sublattice>,
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    if g.precision < 40 {
        return Err(Error::InvalidInput(format!(
            "precision must be at least 40 digits, got {}",
            g.precision
        )));
    }
    Ok(match &cli.command {
        Command::Disc(a) => {
            let f = parse_form(&a.coeffs)?;
            let d = f.discriminant();
            let text = format!("disc({f}) = {d}");
            output(&FormValue { form: &f, value: d }, text)
        }
        Command::Content(a) => {
            if let Some(path) = &a.ring {
                let ring = read_ring(path)?;
                let c = rings::content_ring(&ring)?;
                #[derive(Serialize)]
                struct RingContent<'a> {
                    ring: &'a RankRing,
                    #[serde(with = "monogen::json::int")]
                    value: BigInt,
                }
                let text = format!("content = {c}");
                output(&RingContent { ring: &ring, value: c }, text)
            } else {
                let f = parse_form(a.coeffs.as_deref().expect("clap group"))?;
                let c = f.content();
                let text = format!("content({f}) = {c}");
                output(&FormValue { form: &f, value: c }, text)
            }
        }
        Command::Act(a) => {
            let f = parse_form(&a.coeffs)?;
            let gamma = parse_gamma(&a.gamma)?;
            let (mode, name) = match a.mode {
                Mode::Plain => (Action::Plain, "plain"),
                Mode::CubicTwist => (Action::CubicTwist, "cubic-twist"),
                Mode::QuarticTwist => (Action::QuarticTwist, "quartic-twist"),
            };
            let result = f.act(&gamma, mode);
            let text = format!("{result}");
            output(
                &Acted {
                    form: &f,
                    gamma: &gamma,
                    mode: name,
                    result,
                },
                text,
            )
        }
        Command::ResolvePair(a) => {
            let pair = parse_pair(a)?;
            let cubic = pair.resolvent_cubic();
            let disc = pair.discriminant();
            let text = format!("resolvent cubic: {cubic}\ndisc = {disc}");
            output(
                &Resolved {
                    pair: &pair,
                    resolvent_cubic: cubic,
                    discriminant: disc,
                },
                text,
            )
        }
        Command::Embed(a) => {
            let pair = resolvent::psi_embed(&parse_form(&a.coeffs)?)?;
            let text = format!(
                "A = {}\nB = {}",
                matrix_text(pair.a.gram2()),
                matrix_text(pair.b.gram2())
            );
            output(&pair, text)
        }
        Command::Invert(a) => {
            let f = resolvent::psi_inverse(&parse_pair(a)?)?;
            let text = format!("{f}");
            output(&f, text)
        }
        Command::Rho(a) => {
            let m = resolvent::rho(&parse_gamma(&a.gamma)?);
            let text = matrix_text(m.entries());
            output(&m, text)
        }
        Command::Resolvent(a) => {
            let q: MonicQuartic = a.poly.parse()?;
            let cubic = BinaryForm::new(resolvent::monic_resolvent_cubic(&q))?;
            let text = format!("{cubic}");
            output(&cubic, text)
        }
        Command::Count(a) => {
            let q: MonicQuartic = a.poly.parse()?;
            let report = resolvent::count_monogenizations(&q, parse_heights(&a.heights)?)?;
            let text = count_text(&report);
            output(&report, text)
        }
        Command::Monogenizers(a) => {
            let ring = match (&a.source.ring, &a.source.coeffs) {
                (Some(path), _) => read_ring(path)?,
                (None, Some(c)) => rings::invariant_order(&parse_form(c)?)?,
                (None, None) => unreachable!("clap group"),
            };
            let found = rings::enumerate_monogenizers(&ring, a.height)?;
            let list: Vec<Monogenizer> = found
                .iter()
                .map(|e| Monogenizer {
                    element: e.coords.clone(),
                    char_poly: rings::char_poly(&ring, e),
                })
                .collect();
            let mut text = format!("{} monogenizer(s) up to height {}\n", list.len(), a.height);
            for m in &list {
                let _ = writeln!(text, "{}", join(&m.element));
            }
            output(
                &Monogenizers {
                    ring: &ring,
                    height: a.height,
                    count: list.len(),
                    monogenizers: list,
                },
                text.trim_end().to_string(),
            )
        }
        Command::Thue(a) => {
            let f = parse_form(&a.coeffs)?;
            let target: Target = a.target.parse()?;
            let set = thue::solve_box(&f, &target, a.height, a.identify_sign)?;
            let mut text = format!("{} solution(s) with |x|, |y| <= {}\n", set.len(), a.height);
            for (x, y) in &set.solutions {
                let _ = writeln!(text, "{x} {y}");
            }
            output(&set, text.trim_end().to_string())
        }
        Command::Bounds(b) => run_bounds(g, b)?,
    })
}

fn run_bounds(g: &Global, cmd: &BoundsCommand) -> Result<Output> {
    Ok(match cmd {
        BoundsCommand::Table { k_list } => {
            let eps = params(g, BigRational::from_integer(1.into()))?.epsilon;
            let rows = bounds::table(k_list, &eps, g.precision)?;
            let mut text = String::from("k  r  kappa  bound\n");
            for row in &rows {
                let _ = writeln!(text, "{}", row.text());
            }
            output(&rows, text.trim_end().to_string())
        }
        BoundsCommand::Optimize { c } => {
            let rep = bounds::optimize(&params(g, bounds::parse_rational(c)?)?)?;
            let text = format!(
                "r* = {}\nkappa = {}\nbound = {}",
                rep.r_star, rep.kappa.value, rep.bound
            );
            output(&rep, text)
        }
        BoundsCommand::Threshold { kappa } => {
            let t = bounds::corollary_threshold(&bounds::parse_rational(kappa)?, g.precision)?;
            let th = Threshold {
                kappa: kappa.clone(),
                lower: real::sci(&t.lower(), 9, false),
                upper: real::sci(&t.upper(), 9, false),
            };
            let text = if th.lower == th.upper {
                th.lower.clone()
            } else {
                format!("[{}, {}]", th.lower, th.upper)
            };
            output(&th, text)
        }
        BoundsCommand::Sublattices { r } => {
            if *r == 0 {
                return Err(Error::InvalidInput("r must be positive".into()));
            }
            let list = bounds::sublattices(*r);
            let mut text = String::new();
            for l in &list {
                let [[a, b], [_, d]] = l.hnf;
                let _ = writeln!(text, "({a} {b}; 0 {d})");
            }
            output(
                &SublatticeList {
                    r: *r,
                    psi: bounds::dedekind_psi(*r),
                    sublattices: list,
                },
                text.trim_end().to_string(),
            )
        }
        BoundsCommand::Cover { r, size } => {
            if *r == 0 {
                return Err(Error::InvalidInput("r must be positive".into()));
            }
            let res = bounds::cover_check(*r, *size);
            let text = match res.witness {
                None => format!("covered: every point with |x|, |y| <= {size}"),
                Some((x, y)) => format!("not covered: ({x}, {y})"),
            };
            output(&res, text)
        }
    })
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn matrix_text<const N: usize>(m: &[[BigInt; N]; N]) -> String {
    let rows: Vec<String> = m.iter().map(|r| join(r)).collect();
    format!("[{}]", rows.join("; "))
}

fn count_text(r: &monogen::MonogenizationReport) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "quartic: {}", r.form);
    let _ = writeln!(t, "disc: {}", r.discriminant);
    let _ = writeln!(t, "resolvent: {}", r.resolvent);
    for b in &r.branches {
        let (p, q) = &b.cubic_rep;
        let h = b
            .quartic_form
            .as_ref()
            .map_or_else(|| "-".to_string(), ToString::to_string);
        let _ = writeln!(t, "  ({p}, {q}): h = {h}, {} solution(s)", b.count());
    }
    let _ = write!(t, "total: {}", r.total);
    t
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: ErrorInfo<'a>,
}

#[derive(Serialize)]
struct ErrorInfo<'a> {
    kind: &'a str,
    message: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let rendered = e.render().to_string();
            eprint!("{rendered}");
            if !rendered.contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut body = if cli.global.json { out.json } else { out.text };
            body.push('\n');
            match &cli.global.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let body = ErrorBody {
                error: ErrorInfo {
                    kind: e.kind(),
                    message: e.to_string(),
                },
            };
            if cli.global.json {
                println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

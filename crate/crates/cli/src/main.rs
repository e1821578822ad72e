//! `sympcoh`: runs the verification suites and prints JSON reports on stdout.
//!
//! Exit status is 0 when every check passes, 1 when a check fails or a
//! construction breaks down, and 2 on bad arguments.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use sympcoh::dedekind::{
    build_frame, is_integral_frame, pushforward_apartment, standard_frame, verify_frame, ClassGroup, FrameJson,
    QuadraticOrder, SymplecticFrame,
};
use sympcoh::suites;
use sympcoh::{build_xn, class_span_rank, sigma_s_cycle, Check, ClassPair, Error, FiniteAbelianGroup, Report};

#[derive(Parser)]
#[command(name = "sympcoh", version, about = "Checks for symplectic Steinberg cohomology over imaginary quadratic orders")]
struct Cli {
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 20240601)]
    seed: u64,
    /// Worker threads for independent frame checks.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Print compact JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class number, reduced forms and invariant factors.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Reduced homology of X_n(G) against the wedge-of-spheres count.
    Homology {
        #[arg(long)]
        n: usize,
        /// Cyclic orders such as "2" or "2,2"; "1" is the trivial group.
        #[arg(long)]
        group: String,
    },
    /// Good part of the symbolic apartment is the cube sum, bad part vanishes (ranks 1..=n).
    VerifySymbolic {
        #[arg(long)]
        n: usize,
    },
    /// Builds a frame and prints it with its certificates.
    BuildFrame {
        #[command(flatten)]
        frame: FrameArgs,
        /// Also write the frame JSON to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replays the construction invariants on a frame.
    VerifyFrame {
        #[command(flatten)]
        frame: FrameArgs,
    },
    /// Pushes the apartment of a frame forward and compares it with the cube sum.
    Pushforward {
        #[command(flatten)]
        frame: FrameArgs,
    },
    /// Span of all frame images in top homology.
    FrameSpan {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        n: usize,
    },
    /// Integral image counts against the binomial bound.
    Nonintegrality {
        #[arg(long)]
        cl: u64,
        #[arg(long)]
        n: usize,
    },
    /// Class cancellation and unimodular pairs of the standard frame.
    StandardPairs {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        n: usize,
    },
    /// Closure, rank and complement laws on seeded random lattices.
    LatticeProps {
        #[arg(long, default_value_t = 120)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        norm_bound: i64,
    },
    /// Order, good count and bad involution of signed permutations.
    SignedPerms {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Args)]
struct FrameArgs {
    #[arg(long, allow_hyphen_values = true)]
    disc: Option<i64>,
    #[arg(long)]
    n: Option<usize>,
    /// Class-group indices "a1:b1,a2:b2,..." in reduced-form order.
    #[arg(long, conflicts_with_all = ["all_s", "standard", "frame"])]
    classes: Option<String>,
    /// Every admissible choice of class pairs.
    #[arg(long, conflicts_with_all = ["standard", "frame"])]
    all_s: bool,
    /// The frame of coordinate lines.
    #[arg(long, conflicts_with = "frame")]
    standard: bool,
    /// A frame JSON file written by build-frame.
    #[arg(long)]
    frame: Option<PathBuf>,
}

enum FrameSource {
    Classes(QuadraticOrder, Vec<ClassPair>),
    All(QuadraticOrder, usize),
    Standard(QuadraticOrder, usize),
    File(SymplecticFrame),
}

/// Failure of a command before any report exists.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDiscriminant(_)
            | Error::ParameterRange(_)
            | Error::Parse(_)
            | Error::RankCapExceeded { .. }
            | Error::RankMismatch { .. }
            | Error::GroupMismatch(_)
            | Error::ConstraintViolated(_)
            | Error::MalformedSubset(_)
            | Error::NotTwoElementSet { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

fn order_of(disc: Option<i64>) -> Result<QuadraticOrder, Failure> {
    let disc = disc.ok_or_else(|| Failure::Usage("--disc is required".into()))?;
    Ok(QuadraticOrder::new(disc)?)
}

fn rank_of(n: Option<usize>) -> Result<usize, Failure> {
    match n {
        Some(n @ 1..=3) => Ok(n),
        Some(n) => Err(Failure::Usage(format!("concrete frames need 1 <= n <= 3, got {n}"))),
        None => Err(Failure::Usage("--n is required".into())),
    }
}

fn parse_classes(cg: &ClassGroup, text: &str) -> Result<Vec<ClassPair>, Failure> {
    let index = |s: &str| -> Result<_, Failure> {
        let i: usize = s.trim().parse().map_err(|_| Failure::Usage(format!("bad class index {s:?}")))?;
        cg.element(i).map_err(|_| Failure::Usage(format!("class index {i} out of range (h = {})", cg.class_number())))
    };
    text.split(',')
        .map(|pair| {
            let (a, b) = pair.split_once(':').ok_or_else(|| Failure::Usage(format!("expected a:b, got {pair:?}")))?;
            Ok(ClassPair::new(index(a)?, index(b)?))
        })
        .collect()
}

impl FrameArgs {
    fn source(&self) -> Result<FrameSource, Failure> {
        if let Some(path) = &self.frame {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let json: FrameJson =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            return Ok(FrameSource::File(SymplecticFrame::from_json(&json)?));
        }
        let order = order_of(self.disc)?;
        if self.standard {
            return Ok(FrameSource::Standard(order, rank_of(self.n)?));
        }
        if self.all_s {
            return Ok(FrameSource::All(order, rank_of(self.n)?));
        }
        let text = self.classes.as_deref().ok_or_else(|| {
            Failure::Usage("one of --classes, --all-s, --standard or --frame is required".into())
        })?;
        let cg = ClassGroup::for_order(&order);
        let pairs = parse_classes(&cg, text)?;
        if let Some(n) = self.n {
            if n != pairs.len() {
                return Err(Failure::Usage(format!("--n {n} but {} class pairs given", pairs.len())));
            }
        }
        rank_of(Some(pairs.len()))?;
        sympcoh::check_pairs(&pairs)?;
        Ok(FrameSource::Classes(order, pairs))
    }
}

fn params(source: &FrameSource) -> serde_json::Value {
    match source {
        FrameSource::Classes(o, pairs) => json!({ "disc": o.disc(), "n": pairs.len(), "classes": describe(&ClassGroup::for_order(o), pairs) }),
        FrameSource::All(o, n) => json!({ "disc": o.disc(), "n": n, "classes": "all" }),
        FrameSource::Standard(o, n) => json!({ "disc": o.disc(), "n": n, "standard": true }),
        FrameSource::File(f) => json!({ "disc": f.order().disc(), "n": f.n(), "frame_file": true }),
    }
}

/// `frame_checks` over every admissible `S`, split across `jobs` threads and
/// reassembled in enumeration order.
fn all_frames(order: &QuadraticOrder, n: usize, jobs: usize) -> Vec<Check> {
    let cg = ClassGroup::for_order(order);
    let choices = suites::all_class_choices(cg.group(), n);
    let run = |pairs: &Vec<ClassPair>| match suites::frame_checks(order, pairs) {
        Ok((_, checks)) => checks,
        Err(e) => vec![Check::new(format!("build_frame[{}]", describe(&cg, pairs)), false, json!({ "error": e.to_string() }))],
    };
    let jobs = jobs.clamp(1, choices.len().max(1));
    if jobs == 1 {
        return choices.iter().flat_map(run).collect();
    }
    let chunk = choices.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = choices
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().flat_map(run).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("frame worker panicked")).collect()
    })
}

fn describe(cg: &ClassGroup, pairs: &[ClassPair]) -> String {
    pairs
        .iter()
        .map(|p| format!("{}:{}", cg.index_of(&p.a).unwrap_or(usize::MAX), cg.index_of(&p.b).unwrap_or(usize::MAX)))
        .collect::<Vec<_>>()
        .join(",")
}

fn frame_of(source: &FrameSource) -> Result<SymplecticFrame, Failure> {
    match source {
        FrameSource::Classes(o, pairs) => Ok(build_frame(o, pairs)?),
        FrameSource::Standard(o, n) => Ok(standard_frame(o, *n)?),
        FrameSource::File(f) => Ok(f.clone()),
        FrameSource::All(..) => unreachable!("handled by all_frames"),
    }
}

fn cmd_build_frame(args: &FrameArgs, out: Option<&PathBuf>, jobs: usize) -> Outcome {
    let source = args.source()?;
    let mut report = Report::new("build-frame", params(&source));
    if let FrameSource::All(o, n) = &source {
        if out.is_some() {
            return Err(Failure::Usage("--out needs a single frame".into()));
        }
        report.extend(all_frames(o, *n, jobs).into_iter().filter(|c| c.check.starts_with("frame_axiom") || c.check.starts_with("build_frame")));
        return Ok(report);
    }
    let frame = match frame_of(&source) {
        Ok(f) => f,
        Err(Failure::Runtime(e)) => {
            report.push(Check::new("frame_built", false, json!({ "error": e })));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let json = frame.to_json();
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&json).expect("frame JSON serializes");
        std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    }
    report.push(Check::new("frame_built", sympcoh::dedekind::frame_axiom_holds(&frame), json!({ "frame": json })));
    Ok(report)
}

fn cmd_verify_frame(args: &FrameArgs, jobs: usize) -> Outcome {
    let source = args.source()?;
    let mut report = Report::new("verify-frame", params(&source));
    if let FrameSource::All(o, n) = &source {
        report.extend(all_frames(o, *n, jobs).into_iter().filter(|c| !c.check.starts_with("pushforward")));
        return Ok(report);
    }
    match frame_of(&source) {
        Ok(frame) => report.extend(verify_frame(&frame)),
        Err(Failure::Runtime(e)) => report.push(Check::new("frame_built", false, json!({ "error": e }))),
        Err(e) => return Err(e),
    }
    Ok(report)
}

fn cmd_pushforward(args: &FrameArgs, jobs: usize) -> Outcome {
    let source = args.source()?;
    let mut report = Report::new("pushforward", params(&source));
    if let FrameSource::All(o, n) = &source {
        report.extend(all_frames(o, *n, jobs).into_iter().filter(|c| c.check.starts_with("pushforward") || c.check.starts_with("build_frame")));
        return Ok(report);
    }
    let frame = match frame_of(&source) {
        Ok(f) => f,
        Err(Failure::Runtime(e)) => {
            report.push(Check::new("frame_built", false, json!({ "error": e })));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    let cg = ClassGroup::for_order(frame.order());
    let x = build_xn(frame.n(), cg.group())?;
    let push = pushforward_apartment(&frame)?;
    let cycle = x.is_cycle(&push)?;
    report.push(Check::new("pushforward_is_cycle", cycle, json!({ "chain": push.to_json() })));
    let expected = match (&source, frame.certificates()) {
        (FrameSource::Standard(..), _) => None,
        (_, Some(cert)) => Some(sigma_s_cycle(&x, &cert.classes)?),
        (_, None) if is_integral_frame(&frame) => None,
        (_, None) => {
            // No recorded classes: report the rank of the class only.
            let rank = class_span_rank(&x, std::slice::from_ref(&push))?;
            report.push(Check::new("class_rank", true, json!({ "span_rank": rank })));
            return Ok(report);
        }
    };
    match expected {
        Some(target) => {
            let diff = push.sub(&target);
            let rank = class_span_rank(&x, std::slice::from_ref(&diff))?;
            report.push(Check::new(
                "pushforward_in_cube_class",
                rank == 0,
                json!({ "target": target.to_json(), "span_rank_of_difference": rank, "difference": diff.to_json() }),
            ));
        }
        None => {
            let rank = class_span_rank(&x, std::slice::from_ref(&push))?;
            report.push(Check::new(
                "integral_frame_has_zero_class",
                is_integral_frame(&frame) && rank == 0,
                json!({ "integral": is_integral_frame(&frame), "span_rank": rank }),
            ));
        }
    }
    Ok(report)
}

fn run(cli: &Cli) -> Outcome {
    let jobs = cli.jobs.max(1);
    match &cli.command {
        Command::Classgroup { disc } => Ok(suites::class_group(*disc)?),
        Command::Homology { n, group } => {
            let g = FiniteAbelianGroup::parse_orders(group)?;
            if !(1..=4).contains(n) || g.order() > 4 {
                return Err(Failure::Usage(format!("homology needs 1 <= n <= 4 and |G| <= 4, got n = {n}, |G| = {}", g.order())));
            }
            Ok(suites::homology_wedge(&[(*n, g)])?)
        }
        Command::VerifySymbolic { n } => {
            if !(1..=5).contains(n) {
                return Err(Failure::Usage(format!("verify-symbolic needs 1 <= n <= 5, got {n}")));
            }
            Ok(suites::symbolic(*n)?)
        }
        Command::BuildFrame { frame, out } => cmd_build_frame(frame, out.as_ref(), jobs),
        Command::VerifyFrame { frame } => cmd_verify_frame(frame, jobs),
        Command::Pushforward { frame } => cmd_pushforward(frame, jobs),
        Command::FrameSpan { disc, n } => {
            rank_of(Some(*n))?;
            Ok(suites::frame_span(*disc, *n)?)
        }
        Command::Nonintegrality { cl, n } => Ok(suites::nonintegrality(&[(*cl, *n)])?),
        Command::StandardPairs { disc, n } => Ok(suites::standard_frame_pairs(*disc, *n)?),
        Command::LatticeProps { samples, norm_bound } => Ok(suites::lattice_properties(cli.seed, *samples, *norm_bound)?),
        Command::SignedPerms { max_n } => {
            if !(1..=sympcoh::steinberg::SYMBOLIC_RANK_CAP).contains(max_n) {
                return Err(Failure::Usage(format!("signed-perms needs 1 <= max-n <= 5, got {max_n}")));
            }
            Ok(suites::signed_permutations(*max_n)?)
        }
    }
}

fn print_table(report: &Report) {
    let width = report.checks.iter().map(|c| c.check.len()).max().unwrap_or(0);
    eprintln!("{} ({} ms)", report.suite, report.elapsed_ms);
    for c in &report.checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        eprintln!("  {:<width$}  {status}", c.check);
    }
    let failed = report.failures().count();
    eprintln!("{} checks, {failed} failed", report.checks.len());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = std::time::Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if report.elapsed_ms == 0 {
                report.elapsed_ms = start.elapsed().as_millis();
            }
            let text = if cli.compact { serde_json::to_string(&report) } else { serde_json::to_string_pretty(&report) };
            println!("{}", text.expect("report serializes"));
            print_table(&report);
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

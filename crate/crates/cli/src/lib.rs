//! The `twistspin` command line, callable in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::json;

use twistspin_core::enumeration::{nonabelian_witness, order, weight_check, CONVENTIONS};
use twistspin_core::hypgeom::{verify_fixed_word, Tolerances};
use twistspin_core::presentation::{FIXED_KNOT, MERIDIAN};
use twistspin_core::topology::{
    fixed_knot_word, gluck_ledger, h1_branched_cover, miyazawa_degree, montesinos_sphere_check,
    rp2_unknotting_check, sphere_check, torus_section_word, Descriptor, SpinParams,
};
use twistspin_core::{abelianization, AbelianInvariants, Certificate, Claim, Presentation};

const EXIT_CERTIFIED: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_REFUTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "twistspin",
    about = "Certificates for branched double covers of twist-roll spun knots",
    disable_version_flag = true
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    /// Print the version and the convention registry.
    #[arg(short = 'V', long)]
    version: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Maximum coset table rows per enumeration.
    #[arg(long, global = true, env = "TWISTSPIN_CAP", default_value_t = 1_000_000,
          value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,

    /// Tolerance for identity comparisons of matrices.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_real)]
    tolerance: f64,

    /// Largest permutation degree tried by witness searches.
    #[arg(long, global = true, default_value_t = 16)]
    max_degree: usize,

    /// Emit one JSON document on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    parallel_jobs: u64,
}

impl RunConfig {
    fn cap(&self) -> usize {
        usize::try_from(self.cap).unwrap_or(usize::MAX)
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{s:?} is not a positive real")),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify that a branched double cover is a homotopy 4-sphere.
    SphereCheck(SphereArgs),
    /// First homology of the branched double cover of a twist-roll spin.
    Homology {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        /// Determinant of the knot (odd).
        #[arg(long)]
        det: u64,
        /// Torsion of H₁ of the 3-fold branched cover, when known.
        #[arg(long, value_delimiter = ',')]
        torsion: Option<Vec<u64>>,
    },
    /// Mapping degree for the Montesinos knot K(2, 3, |6s+1|).
    Degree {
        #[arg(long, allow_hyphen_values = true)]
        s: i64,
    },
    /// Gluck twists relating two twist counts.
    Ledger {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
    },
    /// Numerically check the fixed-knot word on the hyperbolic triangle.
    GeomVerify {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        r: i64,
        /// Tolerance for the translation-length comparison.
        #[arg(long, default_value_t = 1e-6, value_parser = positive_real)]
        length_tolerance: f64,
    },
    /// Computations on a presentation file or built-in descriptor.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Print words used by the checks.
    Words {
        #[command(subcommand)]
        command: WordsCommand,
    },
}

#[derive(Args, Debug)]
struct SphereArgs {
    /// Montesinos parameter: K(2, 3, |6s+1|).
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["q", "r", "s_range"])]
    s: Option<i64>,
    #[arg(long, requires = "r", conflicts_with = "s_range")]
    q: Option<i64>,
    #[arg(long, requires = "q")]
    r: Option<i64>,
    /// Inclusive sweep `a..b` over s.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    s_range: Option<(i64, i64)>,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("{s:?} is not of the form a..b"))?;
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad start in {s:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad end in {s:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    if b - a > 10_000 {
        return Err(format!("range {s:?} has more than 10^4 cases"));
    }
    Ok((a, b))
}

#[derive(Args, Debug)]
struct Source {
    /// Presentation file.
    #[arg(long, conflicts_with = "descriptor")]
    file: Option<PathBuf>,
    /// Built-in group, e.g. "triangle 2 3 7" or "torus 2 3".
    #[arg(long)]
    descriptor: Option<String>,
}

impl Source {
    fn load(&self) -> anyhow::Result<Presentation> {
        match (&self.file, &self.descriptor) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Presentation::parse(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (None, Some(d)) => Ok(d.parse::<Descriptor>()?.presentation()?),
            _ => bail!("exactly one of --file or --descriptor is required"),
        }
    }
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    Abelianization(Source),
    Order(Source),
    /// Is the word a weight element? Defaults to the marked fixed-knot word.
    Weight {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
    },
    /// Search for a permutation action with noncommuting images.
    Nonabelian(Source),
    /// Order of the group of the connected sum with a projective plane;
    /// needs a marked meridian.
    Rp2Sum(Source),
}

#[derive(Subcommand, Debug)]
enum WordsCommand {
    FixedKnot {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        r: i64,
    },
    Section,
}

fn exit_code(claim: &Claim) -> u8 {
    if claim.is_inconclusive() {
        EXIT_INCONCLUSIVE
    } else if claim.is_refutation() {
        EXIT_REFUTED
    } else {
        EXIT_CERTIFIED
    }
}

fn sweep_exit_code(certs: &[Certificate]) -> u8 {
    let codes: Vec<u8> = certs.iter().map(|c| exit_code(&c.claim)).collect();
    if codes.contains(&EXIT_REFUTED) {
        EXIT_REFUTED
    } else if codes.contains(&EXIT_INCONCLUSIVE) {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_CERTIFIED
    }
}

fn render(c: &Certificate, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    out.push_str(&format!("{pad}{}: {}\n", c.subject, c.claim.summary()));
    for (k, v) in &c.parameters {
        out.push_str(&format!("{pad}  {k} = {v}\n"));
    }
    if let Some(s) = &c.statistics {
        out.push_str(&format!(
            "{pad}  work: {} definitions, {} coincidences, {} max live\n",
            s.definitions, s.coincidences, s.max_live
        ));
    }
    let repeated = |n: &String| depth > 0 && CONVENTIONS.contains(&n.as_str());
    for note in c.convention_notes.iter().filter(|n| !repeated(n)) {
        out.push_str(&format!("{pad}  note: {note}\n"));
    }
    for step in &c.steps {
        render(step, depth + 1, out);
    }
}

fn emit_certificates(
    certs: &[Certificate],
    single: bool,
    config: &RunConfig,
    sink: &mut dyn Write,
) -> anyhow::Result<()> {
    if config.json {
        let doc = if single {
            serde_json::to_string_pretty(&certs[0])?
        } else {
            serde_json::to_string_pretty(certs)?
        };
        writeln!(sink, "{doc}")?;
    } else {
        let mut out = String::new();
        for c in certs {
            render(c, 0, &mut out);
        }
        write!(sink, "{out}")?;
    }
    Ok(())
}

fn emit_value(
    value: serde_json::Value,
    text: String,
    config: &RunConfig,
    sink: &mut dyn Write,
) -> anyhow::Result<()> {
    if config.json {
        writeln!(sink, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        writeln!(sink, "{text}")?;
    }
    Ok(())
}

fn one_certificate(c: Certificate, config: &RunConfig, sink: &mut dyn Write) -> anyhow::Result<u8> {
    let code = exit_code(&c.claim);
    emit_certificates(std::slice::from_ref(&c), true, config, sink)?;
    Ok(code)
}

fn run_sphere(args: &SphereArgs, config: &RunConfig, sink: &mut dyn Write) -> anyhow::Result<u8> {
    let cap = config.cap();
    match (args.s, args.q.zip(args.r), args.s_range) {
        (Some(s), None, None) => one_certificate(montesinos_sphere_check(s, cap)?, config, sink),
        (None, Some((q, r)), None) => one_certificate(sphere_check(q, r, cap)?, config, sink),
        (None, None, Some((a, b))) => {
            log::info!(
                "sweeping s in {a}..={b} on {} worker(s)",
                config.parallel_jobs
            );
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(usize::try_from(config.parallel_jobs)?)
                .build()?;
            let certs: Vec<Certificate> = pool.install(|| {
                (a..=b)
                    .into_par_iter()
                    .map(|s| montesinos_sphere_check(s, cap))
                    .collect::<Result<_, _>>()
            })?;
            emit_certificates(&certs, false, config, sink)?;
            Ok(sweep_exit_code(&certs))
        }
        _ => bail!("give exactly one of --s, --q/--r or --s-range"),
    }
}

fn run_group(
    command: &GroupCommand,
    config: &RunConfig,
    sink: &mut dyn Write,
) -> anyhow::Result<u8> {
    let cap = config.cap();
    match command {
        GroupCommand::Abelianization(src) => {
            let p = src.load()?;
            let ab = abelianization(&p)?;
            emit_value(serde_json::to_value(&ab)?, ab.to_string(), config, sink)?;
            Ok(EXIT_CERTIFIED)
        }
        GroupCommand::Order(src) => one_certificate(order(&src.load()?, cap)?, config, sink),
        GroupCommand::Weight { source, word } => {
            let p = source.load()?;
            let w = match word {
                Some(text) => p.parse_word(text)?,
                None => p
                    .marked(FIXED_KNOT)
                    .cloned()
                    .context("no --word given and the presentation marks no fixed-knot word")?,
            };
            one_certificate(weight_check(&p, &w, cap)?, config, sink)
        }
        GroupCommand::Nonabelian(src) => one_certificate(
            nonabelian_witness(&src.load()?, config.max_degree)?,
            config,
            sink,
        ),
        GroupCommand::Rp2Sum(src) => {
            let p = src.load()?;
            if p.marked(MERIDIAN).is_none() {
                bail!("the presentation must mark a {MERIDIAN}");
            }
            one_certificate(rp2_unknotting_check(&p, cap)?, config, sink)
        }
    }
}

fn run(command: &Command, config: &RunConfig, sink: &mut dyn Write) -> anyhow::Result<u8> {
    match command {
        Command::SphereCheck(args) => run_sphere(args, config, sink),
        Command::Homology { m, n, det, torsion } => {
            let sp = SpinParams::new(*m, *n, *det)?;
            let sigma = torsion.as_ref().map(|t| AbelianInvariants {
                free_rank: 0,
                torsion: t.clone(),
            });
            if let Some(s) = &sigma {
                if !s.is_well_formed() {
                    bail!("--torsion must be a divisibility chain of factors above 1");
                }
            }
            let h = h1_branched_cover(&sp, sigma.as_ref())?;
            let structure = match &h.invariants {
                Some(inv) => inv.to_string(),
                None => "structure not determined by the order alone".into(),
            };
            let text = format!(
                "H1 of the branched double cover has order {}: {structure}",
                h.order
            );
            emit_value(
                json!({ "m": m, "n": n, "det": det, "h1": h }),
                text,
                config,
                sink,
            )?;
            Ok(EXIT_CERTIFIED)
        }
        Command::Degree { s } => {
            let d = miyazawa_degree(*s);
            emit_value(json!({ "s": s, "degree": d }), d.to_string(), config, sink)?;
            Ok(EXIT_CERTIFIED)
        }
        Command::Ledger { from, to, n } => {
            let rec = gluck_ledger(*from, *to, *n)?;
            let parity = serde_json::to_value(rec.parity)?;
            let mut text = format!(
                "k = {} ({})",
                rec.gluck_count,
                parity.as_str().unwrap_or_default()
            );
            for note in &rec.notes {
                text.push_str(&format!("\n{note}"));
            }
            emit_value(serde_json::to_value(&rec)?, text, config, sink)?;
            Ok(EXIT_CERTIFIED)
        }
        Command::GeomVerify {
            q,
            r,
            length_tolerance,
        } => {
            let tol = Tolerances {
                identity: config.tolerance,
                length: *length_tolerance,
            };
            let c = verify_fixed_word(*q, *r, tol)?;
            let code = exit_code(&c.claim);
            if config.json {
                emit_certificates(std::slice::from_ref(&c), true, config, sink)?;
            } else {
                let mut out = String::new();
                render(&c, 0, &mut out);
                if let twistspin_core::enumeration::Evidence::Geometry { checks } = &c.evidence {
                    for check in checks {
                        out.push_str(&format!(
                            "  [{}] {}: deviation {:.3e} (tolerance {:.0e})\n",
                            if check.passed { "pass" } else { "FAIL" },
                            check.name,
                            check.deviation,
                            check.tolerance
                        ));
                    }
                }
                write!(sink, "{out}")?;
            }
            Ok(code)
        }
        Command::Group { command } => run_group(command, config, sink),
        Command::Words { command } => {
            let (name, p, w) = match command {
                WordsCommand::FixedKnot { q, r } => (
                    "fixed-knot",
                    Descriptor::Triangle(2, *q, *r).presentation()?,
                    fixed_knot_word(*q, *r)?,
                ),
                WordsCommand::Section => (
                    "section",
                    Presentation::parse("a, b\na^2\nb^3\n")?,
                    torus_section_word(),
                ),
            };
            let shown = p.show(&w);
            let value = json!({
                "word": name,
                "text": shown,
                "syllables": w.syllable_len(),
                "letters": w.letter_len(),
            });
            emit_value(value, shown.clone(), config, sink)?;
            Ok(EXIT_CERTIFIED)
        }
    }
}

fn print_version(sink: &mut dyn Write) -> std::io::Result<()> {
    writeln!(sink, "twistspin {}", env!("CARGO_PKG_VERSION"))?;
    writeln!(sink, "conventions:")?;
    for c in CONVENTIONS {
        writeln!(sink, "  {c}")?;
    }
    Ok(())
}

/// Runs the command line on `args` (including the program name), writing
/// the report to `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_CERTIFIED;
        }
    };
    if cli.version {
        return match print_version(stdout) {
            Ok(()) => EXIT_CERTIFIED,
            Err(_) => EXIT_USAGE,
        };
    }
    let Some(command) = &cli.command else {
        let _ = writeln!(stderr, "error: a subcommand is required (see --help)");
        return EXIT_USAGE;
    };
    match run(command, &cli.config, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

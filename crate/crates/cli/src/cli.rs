use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use fusion_core::dual::oracle_character;
use fusion_core::geometry::cohomology::cohomology_dim;
use fusion_core::geometry::series::{invert_series, Series};
use fusion_core::linalg::parse_scalar;
use fusion_core::store::ModuleSource;
use fusion_core::submodules::{kernel_dim_formula, submodule_s, verify_filtration};
use fusion_core::{Composition, FusionError, GradedModule};
use serde_json::json;

use crate::cache::DiskStore;
use crate::config::{Format, RunConfig, CACHE_ENV};
use crate::report::{tally, write_reports, Report};
use crate::suites::{run_tasks, tasks, verify, Ctx, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fusion", version, about = "Exact computations with sl2 fusion products and their submodules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, global = true, default_value_t = 5)]
    pub max_entry: u32,
    /// Random sample points per identity.
    #[arg(long, global = true, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Restrict geometric checks to one n.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Module cache directory [default: <tmp>/fusion-cache].
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build M^A and print its bigraded character.
    Build {
        #[arg(long)]
        a: Composition,
    },
    /// Compare the character of M^A with the symmetric-polynomial count.
    Character {
        #[arg(long)]
        a: Composition,
    },
    /// The kernel S_{i,j}(A) of M^A -> M^{A_{i,j}}.
    Submodule {
        #[arg(long)]
        a: Composition,
        #[arg(long)]
        i: usize,
        /// Defaults to i + 1.
        #[arg(long)]
        j: Option<usize>,
    },
    /// Peel S_{i,i+1}(A) into fusion-product quotients.
    Filtration {
        #[arg(long)]
        a: Composition,
        #[arg(long)]
        i: usize,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Sections of O(a_1, .., a_n) by the rewrite recursion; entries may be 0.
    Cohomology {
        #[arg(long, value_delimiter = ',')]
        a: Vec<u32>,
    },
    /// Splitting type of E_n (needs --n).
    Splitting,
    /// Invert x(t) mod t^n; coefficients are rationals.
    Invert {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x: Vec<String>,
    },
}

impl Cli {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            max_n: self.max_n,
            max_entry: self.max_entry,
            samples: self.samples,
            seed: self.seed,
            n: self.n,
            cache_dir: Some(
                self.cache_dir
                    .clone()
                    .unwrap_or_else(|| std::env::temp_dir().join("fusion-cache")),
            ),
            format: self.format,
        }
    }
}

/// Errors that abort a command before any report is produced.
enum Abort {
    Usage(String),
    Integrity(String),
    Other(String),
}

impl From<FusionError> for Abort {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::Integrity { .. } => Abort::Integrity(e.to_string()),
            FusionError::Cache(_) => Abort::Other(e.to_string()),
            _ => Abort::Usage(e.to_string()),
        }
    }
}

pub fn exit_code(reports: &[Report]) -> i32 {
    let t = tally(reports);
    if t.integrity > 0 {
        EXIT_INTEGRITY
    } else if t.fail > 0 {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let cfg = cli.config();
    if let Err(msg) = cfg.validate() {
        let _ = writeln!(err, "error: {msg}");
        return EXIT_USAGE;
    }
    let store = match DiskStore::new(cfg.cache_dir.clone()) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: cannot use cache directory: {e}");
            return EXIT_FAIL;
        }
    };
    let ctx = Ctx { store, config: cfg };
    let start = std::time::Instant::now();
    match dispatch(&cli.command, &ctx) {
        Ok((preface, mut reports)) => {
            if !matches!(cli.command, Command::Verify { .. } | Command::Splitting) {
                let ms = start.elapsed().as_millis() as u64;
                reports.iter_mut().for_each(|r| r.ms = ms);
            }
            if ctx.config.format == Format::Table && !preface.is_empty() {
                let _ = write!(out, "{preface}");
            }
            if let Err(e) = write_reports(out, &reports, ctx.config.format) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAIL;
            }
            exit_code(&reports)
        }
        Err(Abort::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Abort::Integrity(m)) => {
            let _ = writeln!(err, "integrity error: {m}");
            EXIT_INTEGRITY
        }
        Err(Abort::Other(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_FAIL
        }
    }
}

type Outcome = Result<(String, Vec<Report>), Abort>;

fn dispatch(cmd: &Command, ctx: &Ctx) -> Outcome {
    match cmd {
        Command::Build { a } => build(ctx, a),
        Command::Character { a } => character(ctx, a),
        Command::Submodule { a, i, j } => submodule(ctx, a, *i, j.unwrap_or(i + 1)),
        Command::Filtration { a, i } => filtration(ctx, a, *i),
        Command::Verify { suite } => Ok((String::new(), verify(ctx, *suite))),
        Command::Cohomology { a } => cohomology(a),
        Command::Splitting => splitting(ctx),
        Command::Invert { x } => invert(x),
    }
}

fn build(ctx: &Ctx, a: &Composition) -> Outcome {
    let m = ctx.store.module(a)?;
    let ch = m.character();
    let mut text = format!("M^{a}\ndim {}\ncharacter {ch}\n", m.total_dim());
    let _ = writeln!(text, "{:>4} {:>4} {:>6}", "k", "w", "dim");
    for (&(k, w), &d) in ch.entries() {
        let _ = writeln!(text, "{k:>4} {w:>4} {d:>6}");
    }
    text.push('\n');
    let pieces: Vec<[u64; 3]> = ch.entries().iter().map(|(&(k, w), &d)| [k as u64, w as u64, d]).collect();
    let r = Report::new("dim", "Eq. (rel)", json!({ "a": a.parts() })).check(
        json!({ "dim": a.dim() }),
        json!({ "dim": m.total_dim(), "character": ch.to_string(), "pieces": pieces }),
        m.total_dim() == a.dim(),
    );
    Ok((text, vec![r]))
}

fn character(ctx: &Ctx, a: &Composition) -> Outcome {
    let built = ctx.store.module(a)?.character();
    let oracle = oracle_character(a);
    let text = format!("quotient  {built}\nsymmetric {oracle}\n\n");
    let r = Report::new("oracle-character", "Lemma (dual)", json!({ "a": a.parts() }))
        .compare(json!(oracle.to_string()), json!(built.to_string()));
    Ok((text, vec![r]))
}

fn submodule(ctx: &Ctx, a: &Composition, i: usize, j: usize) -> Outcome {
    let s = submodule_s(&ctx.store, a, i, j)?;
    let image = ctx.store.module(&a.moved(i, j)?)?;
    let expected = if j == i + 1 {
        kernel_dim_formula(a, i)
    } else {
        a.dim() - image.total_dim()
    };
    let closed = s.is_closed()?;
    let text = format!("S_{{{i},{j}}}{a}: dim {}\ncharacter {}\n\n", s.dim(), s.character());
    let anchor = if j == i + 1 { "Eq. (first)" } else { "Eq. (submodules)" };
    let r = Report::new("submodule", anchor, json!({ "a": a.parts(), "i": i, "j": j })).check(
        json!({ "dim": expected, "closed": true }),
        json!({ "dim": s.dim(), "closed": closed, "character": s.character().to_string() }),
        s.dim() == expected && closed,
    );
    Ok((text, vec![r]))
}

fn filtration(ctx: &Ctx, a: &Composition, i: usize) -> Outcome {
    let f = verify_filtration(&ctx.store, a, i)?;
    let mut text = format!("S_{{{i},{}}}{a} peeled:\n", i + 1);
    for s in &f.steps {
        let shift = s.embedded_match.shift.map(|x| x.to_string()).unwrap_or_else(|| "none".into());
        let _ = writeln!(
            text,
            "  B = {}: M^{} (dim {}), shift {shift}; next {}",
            s.b,
            s.embedded,
            s.embedded.dim(),
            s.next
        );
    }
    let shift = f.stop_match.shift.map(|x| x.to_string()).unwrap_or_else(|| "none".into());
    let _ = writeln!(
        text,
        "  stop at {} ({:?}): M^{} (dim {}), shift {shift}",
        f.stop_at,
        f.stop_rule,
        f.stop_label,
        f.stop_label.dim()
    );
    let _ = writeln!(text, "  image M^{} (dim {})", f.image, f.image.dim());
    let dims: Vec<String> = f.dims.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(text, "  {} = {} (dim M^{a} = {})\n", dims.join(" + "), f.total(), a.dim());
    let quotients: Vec<&[u32]> = f.quotients.iter().map(|q| q.parts()).collect();
    let r = Report::new("filtration", "Prop. (filt)", json!({ "a": a.parts(), "i": i })).check(
        json!({ "total": a.dim() }),
        json!({ "total": f.total(), "quotients": quotients, "dims": f.dims }),
        f.holds(),
    );
    Ok((text, vec![r]))
}

fn cohomology(label: &[u32]) -> Outcome {
    let c = cohomology_dim(label)?;
    let mut text = String::new();
    for step in &c.chain {
        let _ = writeln!(text, "  {step}");
    }
    let _ = writeln!(text, "d = {} (product {})\n", c.value, c.product);
    let chain: Vec<String> = c.chain.iter().map(ToString::to_string).collect();
    let r = Report::new("cohomology-dim", "Cor. (coheq)", json!({ "label": label })).check(
        json!({ "value": c.product }),
        json!({ "value": c.value, "summands": c.summands(), "chain": chain }),
        c.holds(),
    );
    Ok((text, vec![r]))
}

fn splitting(ctx: &Ctx) -> Outcome {
    match ctx.config.n {
        Some(n) if n >= 2 => Ok((String::new(), run_tasks(ctx, &tasks(Suite::Splitting, &ctx.config)))),
        Some(n) => Err(Abort::Usage(format!("--n must be at least 2, got {n}"))),
        None => Err(Abort::Usage("splitting needs --n".into())),
    }
}

fn invert(x: &[String]) -> Outcome {
    if x.is_empty() {
        return Err(Abort::Usage("--x needs at least one coefficient".into()));
    }
    let coeffs = x
        .iter()
        .map(|s| parse_scalar(s.trim()).map_err(|e| Abort::Usage(format!("bad coefficient {s:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let xs = Series::new(coeffs);
    let y = invert_series(&xs)?;
    let back = invert_series(&y)?;
    let show = |s: &Series<_>| s.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>();
    let text = format!("y = {}\n\n", show(&y).join(","));
    let r = Report::new("inversion-involution", "Eq. (trfun)", json!({ "x": show(&xs) })).check(
        json!({ "inverse_of_inverse": show(&xs) }),
        json!({ "y": show(&y), "inverse_of_inverse": show(&back) }),
        back == xs,
    );
    Ok((text, vec![r]))
}

//! The `facto` command line: argument parsing, dispatch, and output handling.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::equivalence_harness::random::{random_chain, random_factorization, random_ses};
use crate::equivalence_harness::{class_census, hom_dim_compare, quotient_ideal_dims, CensusBounds, CensusError};
use crate::error::AlgebraError;
use crate::factorization::{fac_hom_basis, fac_stable_hom_dim, nu, nu_resolution, rotate, zigzag_check, Factorization, Side};
use crate::field_poly::Field;
use crate::functors::{cok, cok_exactness_check, reconstruct};
use crate::hypersurface_module::HypersurfaceConfig;
use crate::json::{chain_from_json, factorization_from_json};
use crate::monochain::{chain_iso_test_seeded, chain_stable_hom_dim};

#[derive(Debug, Parser)]
#[command(name = "facto", version, about = "Matrix factorizations of x^d and chains of monomorphisms over k[x]/(x^d)")]
pub struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: Field,
    /// Write output here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a factorization file and print its closing map.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Apply the cokernel functor to a factorization.
    Cok {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build a factorization from a chain of monomorphisms.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Rotate a factorization `times` steps (negative for the inverse).
    Rotate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        times: i64,
    },
    /// The factorization `ν^k(⊕S(n))` with identities except `x^d` at position `k`.
    Nu {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated labels `n` of the free summands `S(n)`.
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_delimiter = ',')]
        labels: Vec<i64>,
    },
    /// Projective epic onto, or monic out of, a factorization.
    Resolve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SideArg::Epic)]
        side: SideArg,
    },
    /// Ordinary and stable hom dimensions between two factorizations.
    StableHom {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Enumerate both sides within bounds and compare them through cok.
    Census {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        /// `m=<rank>,dim=<dim>,window=<spread>`.
        #[arg(long, value_parser = parse_bounds)]
        bounds: CensusBounds,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Randomized property checks.
    Selftest {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Epic,
    Monic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

fn parse_bounds(s: &str) -> Result<CensusBounds, String> {
    let (mut m, mut dim, mut window) = (None, None, None);
    for part in s.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("`{part}` is not key=value"))?;
        let n: i64 = value.trim().parse().map_err(|_| format!("`{value}` is not an integer"))?;
        if n < 0 {
            return Err(format!("{key} must be nonnegative"));
        }
        match key.trim() {
            "m" => m = Some(n as usize),
            "dim" => dim = Some(n as usize),
            "window" => window = Some(n),
            other => return Err(format!("unknown bound `{other}`")),
        }
    }
    match (m, dim, window) {
        (Some(m), Some(dim), Some(window)) => Ok(CensusBounds { m, dim, window }),
        _ => Err("bounds need m, dim and window".into()),
    }
}

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Property { message: String, output: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Property { .. } => 2,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: malformed JSON: {e}", path.display())))
}

fn read_factorization(field: Field, path: &Path) -> Result<Factorization, CliError> {
    factorization_from_json(field, &read_json(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn config(d: usize, field: Field) -> Result<HypersurfaceConfig, CliError> {
    Ok(HypersurfaceConfig::new(d, field)?)
}

/// Runs one command and returns the text to emit.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let field = cli.field;
    match &cli.command {
        Command::Validate { input } => {
            let x = read_factorization(field, input)?;
            if let Err(k) = zigzag_check(&x) {
                return Err(CliError::Property { message: format!("zig-zag identity fails at position {k}"), output: String::new() });
            }
            Ok(pretty(&json!({ "valid": true, "rank": x.rank(), "closing": x.closing().to_json() })))
        }
        Command::Cok { input } => Ok(pretty(&cok(&read_factorization(field, input)?)?.to_json())),
        Command::Reconstruct { input } => {
            let v = read_json(input)?;
            let u = chain_from_json(field, &v).map_err(|e| CliError::Invalid(format!("{}: {e}", input.display())))?;
            Ok(pretty(&reconstruct(&u)?.to_json()))
        }
        Command::Rotate { input, times } => {
            let mut x = read_factorization(field, input)?;
            for _ in 0..times.unsigned_abs() {
                x = rotate(&x, *times < 0);
            }
            Ok(pretty(&x.to_json()))
        }
        Command::Nu { d, l, k, labels } => {
            if *k > *l || *l == 0 {
                return Err(CliError::Invalid(format!("need 0 <= k <= l and l >= 1, got k={k}, l={l}")));
            }
            Ok(pretty(&nu(config(*d, field)?, labels, *k, *l)?.to_json()))
        }
        Command::Resolve { input, side } => {
            let x = read_factorization(field, input)?;
            let side = match side {
                SideArg::Epic => Side::Epic,
                SideArg::Monic => Side::Monic,
            };
            let res = nu_resolution(&x, side)?;
            if !res.is_termwise_split_exact() {
                return Err(CliError::Property { message: "resolution is not termwise split exact".into(), output: String::new() });
            }
            Ok(pretty(&json!({
                "object": res.object.to_json(),
                "map": res.map.to_json(),
                "other": res.other.to_json(),
                "other_map": res.other_map.to_json(),
            })))
        }
        Command::StableHom { input, to } => {
            let x = read_factorization(field, input)?;
            let y = read_factorization(field, to)?;
            if x.cfg() != y.cfg() || x.l() != y.l() {
                return Err(CliError::Invalid("the two factorizations have different d or l".into()));
            }
            let cmp = hom_dim_compare(&x, &y)?;
            Ok(pretty(&json!({
                "hom_dim": fac_hom_basis(&x, &y).len(),
                "stable_hom_dim": fac_stable_hom_dim(&x, &y),
                "chain_stable_hom_dim": chain_stable_hom_dim(&cok(&x)?, &cok(&y)?),
                "quotient_hom_dim": cmp.lhs,
                "chain_hom_dim": cmp.rhs,
            })))
        }
        Command::Census { d, l, bounds, format } => {
            if *l == 0 {
                return Err(CliError::Invalid("l must be at least 1".into()));
            }
            let render = |r: &crate::equivalence_harness::CensusReport| match format {
                Format::Table => r.table(),
                Format::Json => pretty(&serde_json::to_value(r).expect("report serializes")),
            };
            match class_census(config(*d, field)?, *l, bounds) {
                Ok(report) => Ok(render(&report)),
                Err(CensusError::Algebra(e)) => Err(e.into()),
                Err(CensusError::MatchFailure { reason, report }) => Err(CliError::Property { message: reason, output: render(&report) }),
            }
        }
        Command::Selftest { d, l, trials } => {
            if *l == 0 {
                return Err(CliError::Invalid("l must be at least 1".into()));
            }
            let lines = selftest(config(*d, field)?, *l, *trials, cli.seed)?;
            let text: String = lines.iter().map(|(name, ok)| format!("{} {name}\n", if *ok { "PASS" } else { "FAIL" })).collect();
            if lines.iter().all(|c| c.1) {
                Ok(text)
            } else {
                Err(CliError::Property { message: "selftest failures".into(), output: text })
            }
        }
    }
}

/// Randomized checks of the main identities; one `(name, passed)` entry each.
pub fn selftest(cfg: HypersurfaceConfig, l: usize, trials: usize, seed: u64) -> Result<Vec<(String, bool)>, AlgebraError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let window = cfg.d as i64;
    let (mut zigzag, mut round_a, mut exact, mut resolved, mut compared, mut ideal) = (true, true, true, true, true, true);
    for t in 0..trials {
        let x = random_factorization(&mut rng, cfg, l, 2, window, &[]);
        let mut spun = x.clone();
        for _ in 0..=l {
            spun = rotate(&spun, false);
        }
        zigzag &= zigzag_check(&x).is_ok() && spun == x.tau(1);
        let u = random_chain(&mut rng, cfg, l, 2, window);
        round_a &= chain_iso_test_seeded(&cok(&reconstruct(&u)?)?, &u, seed.wrapping_add(t as u64));
        exact &= cok_exactness_check(&random_ses(&mut rng, cfg, l, window))?;
        let res = nu_resolution(&x, Side::Epic)?;
        resolved &= res.is_termwise_split_exact() && zigzag_check(&res.other).is_ok();
        let y = random_factorization(&mut rng, cfg, l, 2, window, &[]);
        compared &= hom_dim_compare(&x, &y)?.equal;
        let (a, b) = quotient_ideal_dims(&x, &y)?;
        ideal &= a == b;
    }
    Ok(vec![
        ("zig-zag and rotation".into(), zigzag),
        ("cok(reconstruct(U)) = U".into(), round_a),
        ("cok exactness".into(), exact),
        ("nu-resolution".into(), resolved),
        ("hom dimensions through cok".into(), compared),
        ("quotient ideal".into(), ideal),
    ])
}

/// Writes through a sibling temporary file so a failed run never leaves partial output.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Parses `args`, runs the command, emits output, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(text) => (text, 0),
        Err(e) => {
            let code = e.exit_code();
            match e {
                CliError::Invalid(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    return code;
                }
                CliError::Property { message, output } => {
                    let _ = writeln!(stderr, "failure: {message}");
                    (output, code)
                }
            }
        }
    };
    match &cli.out {
        Some(path) if code == 0 => {
            if let Err(e) = write_atomic(path, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        _ => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn bounds_parsing() {
        let b = parse_bounds("m=1,dim=3,window=3").unwrap();
        assert_eq!((b.m, b.dim, b.window), (1, 3, 3));
        assert!(parse_bounds("m=1,dim=3").is_err());
        assert!(parse_bounds("m=1,dim=3,window=3,x=2").is_err());
    }

    #[test]
    fn census_command() {
        let (code, out, _) = run_capture(&["facto", "census", "--field", "fp:5", "--d", "3", "--l", "1", "--bounds", "m=1,dim=3,window=3"]);
        assert_eq!(code, 0);
        assert!(out.contains("classes: 2 factorization, 2 chain; bijection: yes"), "{out}");
        let (code, _, err) = run_capture(&["facto", "census", "--d", "3", "--l", "1", "--bounds", "m=1,dim=3,window=3"]);
        assert_eq!(code, 1, "{err}");
    }

    #[test]
    fn nu_then_selftest() {
        let (code, out, _) = run_capture(&["facto", "nu", "--d", "2", "--l", "1", "--k", "1", "--labels", "0,-1"]);
        assert_eq!(code, 0);
        assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["m"], 2);
        let (code, out, _) = run_capture(&["facto", "selftest", "--field", "fp:3", "--d", "2", "--l", "2", "--trials", "3"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(out.lines().filter(|s| s.starts_with("PASS")).count(), 6);
    }
}

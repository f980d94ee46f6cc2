//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or precondition
//! error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::arithmetic::is_prime;
use crate::atlas::{enumerate_atlas, region_max_norm, render_svg, render_text, PointClass, Region, RenderConfig};
use crate::character::build_character;
use crate::error::Error;
use crate::field::FieldParams;
use crate::ideals::{check_ideal, find_default_ideal, IdealSpec};
use crate::sieve::{classify_prime, norm_kind, odd_sieve_bytes, sieve_norms_odd, NormKind, NormSet};
use crate::verify;

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Environment variable capping sieve allocations, in bytes.
pub const MEMORY_ENV: &str = "QUADPRIME_MAX_MEMORY";

/// Largest bound `verify` accepts; the factorization oracle is quadratic-ish.
pub const VERIFY_MAX: u64 = 1_000_000;

const DEFAULT_BOX: u32 = 40;
const IDEAL_SEARCH_LIMIT: u64 = 10_000;

#[derive(Debug, Parser)]
#[command(name = "quadprime", version, about = "Primes and prime ideals in quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one period of the quadratic character.
    Character(CharacterArgs),
    /// List the prime-ideal norms up to a bound.
    Sieve(SieveArgs),
    /// Report whether rational primes split, ramify or stay inert.
    Classify(ClassifyArgs),
    /// Render units, primes and ideal classes over a lattice region.
    Atlas(AtlasArgs),
    /// Cross-check the fast paths against brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Text,
    List,
    Binary,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Radicand r of Q(√r); squares are stripped.
    #[arg(short = 'r', long, allow_negative_numbers = true)]
    radicand: Option<i64>,
    /// Field discriminant, as an alternative to the radicand.
    #[arg(short = 'd', long, allow_negative_numbers = true)]
    discriminant: Option<i64>,
}

#[derive(Debug, Args)]
struct CharacterArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Number of character values to print.
    #[arg(long, default_value_t = 80)]
    width: usize,
}

#[derive(Debug, Args)]
struct SieveArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    max: u64,
    #[arg(long, value_enum, default_value_t = Format::List)]
    format: Format,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Primes to classify.
    primes: Vec<u64>,
    /// Classify every prime up to this bound.
    #[arg(long)]
    max: Option<u64>,
}

#[derive(Debug, Args)]
struct AtlasArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Symmetric region |x|, |y| ≤ N in τ-coordinates.
    #[arg(long = "box", conflicts_with_all = ["xmin", "xmax", "ymin", "ymax"])]
    box_size: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    xmin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    xmax: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<i64>,
    /// Sieve bound; defaults to the largest norm in the region.
    #[arg(long)]
    max: Option<u64>,
    #[arg(long, requires = "ideal_shift", conflicts_with = "ideal_auto")]
    ideal_norm: Option<u64>,
    #[arg(long, requires = "ideal_norm")]
    ideal_shift: Option<u64>,
    /// Use the smallest valid ideal above a split prime.
    #[arg(long)]
    ideal_auto: bool,
    #[arg(long, value_enum, default_value_t = Format::Svg)]
    format: Format,
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Character values shown in the header.
    #[arg(long)]
    width: Option<usize>,
    /// Pixels per lattice step.
    #[arg(long)]
    cell_size: Option<f64>,
    /// key=value file with render settings.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    max: u64,
    /// Flip membership of this norm before checking.
    #[arg(long, hide = true)]
    inject_fault: Option<u64>,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

type CmdResult = std::result::Result<u8, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Character(a) => cmd_character(a, out),
        Command::Sieve(a) => cmd_sieve(a, out, err),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Atlas(a) => cmd_atlas(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn resolve_field(args: &FieldArgs) -> std::result::Result<FieldParams, Failure> {
    match (args.radicand, args.discriminant) {
        (Some(r), None) => Ok(FieldParams::new(r)?),
        (None, Some(d)) => Ok(FieldParams::from_discriminant(d)?),
        (Some(r), Some(d)) => {
            let f = FieldParams::new(r)?;
            if f.discriminant() != d {
                return Err(Failure::usage(format!(
                    "radicand {r} gives discriminant {}, not {d}",
                    f.discriminant()
                )));
            }
            Ok(f)
        }
        (None, None) => Err(Failure::usage("one of --radicand or --discriminant is required")),
    }
}

fn describe_field(field: &FieldParams, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "field={}", field.name())?;
    if field.was_reduced() {
        writeln!(
            out,
            "reduced {} = {}*{}^2 -> r={}",
            field.input(),
            field.radicand(),
            field.square_part(),
            field.radicand()
        )?;
    }
    writeln!(out, "d={}", field.discriminant())
}

fn memory_limit() -> std::result::Result<Option<u64>, Failure> {
    match std::env::var(MEMORY_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(Some)
            .map_err(|_| Failure::usage(format!("{MEMORY_ENV} must be a byte count, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

fn run_sieve(field: &FieldParams, max: u64) -> std::result::Result<NormSet, Failure> {
    if let Some(limit) = memory_limit()? {
        let bytes = odd_sieve_bytes(field, max);
        if bytes > limit {
            return Err(Error::Memory { max, bytes, limit }.into());
        }
    }
    Ok(sieve_norms_odd(field, max)?)
}

fn emit(path: Option<&Path>, bytes: &[u8], out: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, bytes),
        None => out.write_all(bytes),
    }
}

fn cmd_character(args: CharacterArgs, out: &mut dyn Write) -> CmdResult {
    let field = resolve_field(&args.field)?;
    let table = build_character(&field)?;
    describe_field(&field, out)?;
    writeln!(out, "{}", table.symbols(args.width))?;
    Ok(EXIT_OK)
}

fn cmd_sieve(args: SieveArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let field = resolve_field(&args.field)?;
    let set = run_sieve(&field, args.max)?;
    let bytes = match args.format {
        Format::List => {
            let mut text = String::with_capacity(set.len() * 8);
            for n in set.iter() {
                text.push_str(&n.to_string());
                text.push('\n');
            }
            text.into_bytes()
        }
        Format::Binary => set.to_binary(),
        other => return Err(Failure::usage(format!("sieve cannot write {other:?} output"))),
    };
    emit(args.output.as_deref(), &bytes, out)?;

    let mut counts = [0usize; 4];
    for n in set.iter() {
        counts[match norm_kind(&field, n) {
            NormKind::Split => 0,
            NormKind::Ramified => 1,
            NormKind::InertSquare => 2,
            NormKind::InertProduct => 3,
        }] += 1;
    }
    writeln!(
        err,
        "d={} max={} members={} split={} ramified={} inert-squares={} inert-products={}",
        field.discriminant(),
        set.max(),
        set.len(),
        counts[0],
        counts[1],
        counts[2],
        counts[3]
    )?;
    Ok(EXIT_OK)
}

fn cmd_classify(args: ClassifyArgs, out: &mut dyn Write) -> CmdResult {
    let field = resolve_field(&args.field)?;
    let mut primes = args.primes;
    if let Some(max) = args.max {
        if max > 10_000_000 {
            return Err(Failure::usage(format!("--max {max} is above 10000000")));
        }
        primes.extend((2..=max).filter(|&p| is_prime(p)));
    }
    if primes.is_empty() {
        return Err(Failure::usage("nothing to classify: pass primes or --max"));
    }
    for p in primes {
        let kind = classify_prime(&field, p)?;
        writeln!(out, "{p} {kind}")?;
    }
    Ok(EXIT_OK)
}

/// Applies `key=value` lines to `config`. Blank lines and `#` comments are
/// skipped.
pub fn parse_render_config(text: &str, mut config: RenderConfig) -> std::result::Result<RenderConfig, String> {
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || format!("line {}: bad value {value:?} for {key}", lineno + 1);
        match key {
            "cell_size" => config.cell_size = value.parse().map_err(|_| bad())?,
            "unit_color" => config.unit_color = value.to_string(),
            "prime_color" => config.prime_color = value.to_string(),
            "ideal_color" => config.ideal_color = value.to_string(),
            "ideal_conj_color" => config.ideal_conj_color = value.to_string(),
            "show_character_row" => config.show_character_row = value.parse().map_err(|_| bad())?,
            "character_row_width" => config.character_row_width = value.parse().map_err(|_| bad())?,
            _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
        }
    }
    Ok(config)
}

fn atlas_region(args: &AtlasArgs) -> std::result::Result<Region, Failure> {
    match (args.xmin, args.xmax, args.ymin, args.ymax) {
        (None, None, None, None) => Ok(Region::symmetric(args.box_size.unwrap_or(DEFAULT_BOX))),
        (Some(x0), Some(x1), Some(y0), Some(y1)) => Ok(Region::new(x0, x1, y0, y1)?),
        _ => Err(Failure::usage(
            "--xmin, --xmax, --ymin and --ymax must be given together",
        )),
    }
}

fn cmd_atlas(args: AtlasArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let field = resolve_field(&args.field)?;
    let region = atlas_region(&args)?;

    let mut config = RenderConfig::default();
    if let Some(path) = &args.config {
        let text =
            fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
        config = parse_render_config(&text, config).map_err(Failure::usage)?;
    }
    if let Some(w) = args.width {
        config.character_row_width = w;
    }
    if let Some(c) = args.cell_size {
        config.cell_size = c;
    }
    config.validate()?;

    let needed = region_max_norm(&field, region)?.max(2);
    let max = match args.max {
        Some(m) if m < needed => {
            return Err(Failure::usage(format!(
                "--max {m} is below the region's largest norm {needed}"
            )))
        }
        Some(m) => m,
        None => needed,
    };

    let ideal =
        match (args.ideal_norm, args.ideal_shift, args.ideal_auto) {
            (Some(norm), Some(shift), _) => Some(IdealSpec::new(norm, shift)),
            (_, _, true) => Some(find_default_ideal(&field, IDEAL_SEARCH_LIMIT).ok_or_else(|| {
                Failure::usage(format!("no valid ideal with split prime norm ≤ {IDEAL_SEARCH_LIMIT}"))
            })?),
            _ => None,
        };
    if let Some(i) = ideal {
        check_ideal(&field, i)?;
    }

    let set = run_sieve(&field, max)?;
    let atlas = enumerate_atlas(&field, region, &set, ideal)?;
    let rendered = match args.format {
        Format::Svg => render_svg(&atlas, &field, &config),
        Format::Text => render_text(&atlas, &field),
        other => return Err(Failure::usage(format!("atlas cannot write {other:?} output"))),
    };
    emit(args.output.as_deref(), rendered.as_bytes(), out)?;

    describe_field(&field, err)?;
    writeln!(err, "sieve bound {max}")?;
    if let Some(i) = ideal {
        writeln!(err, "ideal norm={} shift={}", i.norm, i.shift)?;
    }
    writeln!(
        err,
        "units={} primes={} ideal={} ideal-conj={}",
        atlas.count(PointClass::Unit),
        atlas.count(PointClass::Prime),
        atlas.count(PointClass::IdealClassI),
        atlas.count(PointClass::IdealClassConjI)
    )?;
    Ok(EXIT_OK)
}

const WITNESS_LIMIT: usize = 10;

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let field = resolve_field(&args.field)?;
    if args.max > VERIFY_MAX {
        return Err(Failure::usage(format!("--max {} is above {VERIFY_MAX}", args.max)));
    }
    let mut ok = true;
    describe_field(&field, out)?;

    let bad = verify::character_mismatches(&field)?;
    if bad.is_empty() {
        writeln!(out, "character: ok")?;
    } else {
        ok = false;
        writeln!(
            out,
            "character: {} mismatches, e.g. x = {:?}",
            bad.len(),
            &bad[..bad.len().min(WITNESS_LIMIT)]
        )?;
    }

    let mut set = run_sieve(&field, args.max)?;
    if let Some(n) = args.inject_fault {
        if n > args.max {
            return Err(Failure::usage(format!("fault {n} above --max {}", args.max)));
        }
        set.toggle(n);
    }
    let bad = verify::sieve_mismatches(&field, &set);
    if bad.is_empty() {
        writeln!(out, "sieve: ok ({} norms up to {})", set.len(), args.max)?;
    } else {
        ok = false;
        for &n in bad.iter().take(WITNESS_LIMIT) {
            writeln!(
                out,
                "sieve: mismatch at norm {n}: sieve says {}, factorization says {}",
                set.contains(n),
                !set.contains(n)
            )?;
        }
        writeln!(out, "sieve: {} mismatches", bad.len())?;
    }

    if matches!(field.radicand(), -1 | -3) {
        let region = Region::symmetric(DEFAULT_BOX);
        let needed = region_max_norm(&field, region)?;
        let mut points_set = sieve_norms_odd(&field, needed)?;
        if let Some(n) = args.inject_fault.filter(|&n| n <= needed) {
            points_set.toggle(n);
        }
        let bad = verify::point_mismatches(&field, region, &points_set)?;
        if bad.is_empty() {
            writeln!(out, "points: ok ({} points)", region.point_count())?;
        } else {
            ok = false;
            for z in bad.iter().take(WITNESS_LIMIT) {
                writeln!(out, "points: mismatch at {z} (norm {})", field.norm(*z)?)?;
            }
            writeln!(out, "points: {} mismatches", bad.len())?;
        }
    }

    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

//! The `noncross` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::json;

use crate::bijection::{abs_map, glue, kreweras_decompose, split, GlueIndex};
use crate::census::census_with_limit;
use crate::enumerate::{count_with_limit, enumerate_with_limit, DEFAULT_MAX_POINTS};
use crate::error::{Error, Result};
use crate::family::{DSubfamily, Family, FamilySpec, Mode};
use crate::formulas::{self, Expectation};
use crate::noncrossing::{is_noncrossing, is_noncrossing_signed, kreweras};
use crate::partition::{validate, AnyPartition, BlockSizeVector, ClassicalPartition, Ground};
use crate::sampler::{estimate_with, Sampler, Statistic};
use crate::verify::{self, summarize, SUITES};

#[derive(Parser, Debug)]
#[command(name = "noncross", version, about = "Non-crossing partitions of types A, B and D")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Size of a family, from the closed form or by enumeration.
    Count {
        #[command(flatten)]
        fam: FamilyArgs,
        /// Count by enumerating instead of evaluating the closed form.
        #[arg(long)]
        by_enumeration: bool,
        #[command(flatten)]
        opts: Common,
    },
    /// Every member of a family, one JSON object per line.
    Enumerate {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        opts: Common,
    },
    /// Block-size census of a family as CSV.
    Census {
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        opts: Common,
    },
    /// Evaluates a named closed form.
    Formula {
        #[arg(long, value_enum)]
        name: FormulaName,
        #[command(flatten)]
        fam: FamilyArgs,
        #[command(flatten)]
        sizes: SizeArgs,
        /// Block multiplicities `r_1,r_2,..`, where `r_t` counts blocks of size tk.
        #[arg(long, value_delimiter = ',')]
        r: Vec<usize>,
        #[command(flatten)]
        opts: Common,
    },
    /// Cross-checks closed forms against enumeration on a grid.
    Verify {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        opts: Common,
    },
    /// Applies a bijection to a partition given as JSON.
    Bijection {
        #[arg(long, value_enum)]
        op: BijectionOp,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Glue index, 0..=k.
        #[arg(long, default_value_t = 0)]
        i: usize,
        /// A blocks array or a partition object; read from stdin when omitted.
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        opts: Common,
    },
    /// Kreweras complement of a partition given as JSON.
    Kreweras {
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        opts: Common,
    },
    /// Monte Carlo estimate of a block statistic over uniform draws.
    Sample {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long, value_enum, default_value = "blocks-of-size")]
        statistic: StatisticName,
        #[command(flatten)]
        sizes: SizeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[command(flatten)]
        opts: Common,
    },
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_enum, default_value = "A")]
    family: FamilyName,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Defaults to `all` for type A with k = 1 and `divisible` otherwise.
    #[arg(long, value_enum)]
    mode: Option<ModeName>,
    #[arg(long, value_enum)]
    subfamily: Option<SubfamilyName>,
}

#[derive(Args, Debug)]
struct SizeArgs {
    /// Block size in units of k.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Zero-block half-size in units of k.
    #[arg(long)]
    s: Option<usize>,
}

#[derive(Args, Debug)]
struct Common {
    /// Largest ground set (in points) to enumerate.
    #[arg(long, env = "NONCROSS_MAX_POINTS")]
    max_points: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// Allow verification beyond a suite's declared bound.
    #[arg(long)]
    force: bool,
}

impl Common {
    fn limit(&self) -> usize {
        self.max_points.unwrap_or(DEFAULT_MAX_POINTS)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyName {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "D")]
    D,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeName {
    All,
    Divisible,
    Equal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SubfamilyName {
    #[value(name = "D1")]
    D1,
    #[value(name = "D2")]
    D2,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormulaName {
    /// Number of members of the family.
    FamilyCount,
    /// Members of the block type given by `--r` and `--s`.
    TypeCount,
    /// Blocks of size tk over the family (pairs and zero-blocks for types B, D).
    BlockTotal,
    /// Blocks of size tk over members with m blocks (and zero-block size s).
    BlockTotalGivenM,
    /// Zero-blocks of half-size tk over the family.
    ZeroBlockTotal,
    /// Expected number of blocks in `NC^k(n)`.
    ExpectedBlocks,
    /// Expected number of blocks of size tk in `NC^k(n)`.
    ExpectedBlocksOfSize,
    /// Large-n approximation of the previous one.
    Asymptotic,
    /// Blocks summed over `NC^k(n)`.
    TotalBlockSum,
    /// Members of `NC^k(n)` with 1 and 2 in the same block.
    FirstTwo,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BijectionOp {
    Glue,
    Split,
    Abs,
    Decompose,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StatisticName {
    BlocksOfSize,
    NonzeroPairsOfSize,
    TotalBlocks,
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec> {
        let family = match self.family {
            FamilyName::A => Family::A,
            FamilyName::B => Family::B,
            FamilyName::D => Family::D,
        };
        let mode = match self.mode {
            Some(ModeName::All) => Mode::All,
            Some(ModeName::Divisible) => Mode::Divisible,
            Some(ModeName::Equal) => Mode::Equal,
            None if family == Family::A && self.k == 1 => Mode::All,
            None => Mode::Divisible,
        };
        let subfamily = self.subfamily.map(|s| match s {
            SubfamilyName::D1 => DSubfamily::D1,
            SubfamilyName::D2 => DSubfamily::D2,
        });
        FamilySpec::new(family, self.n, self.k, mode, subfamily)
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| Error::OutOfRange(format!("--{flag} is required")))
}

/// JSON form of a partition: `{"family","n","k","blocks"}`.
#[derive(Serialize)]
struct PartitionJson {
    family: String,
    n: usize,
    k: usize,
    blocks: Vec<Vec<i64>>,
}

fn partition_json(family: &str, n: usize, k: usize, p: &AnyPartition) -> String {
    serde_json::to_string(&PartitionJson {
        family: family.into(),
        n,
        k,
        blocks: p.blocks_i64(),
    })
    .expect("plain data")
}

fn classical_json(p: &ClassicalPartition, k: usize) -> String {
    partition_json("A", p.size() / k, k, &AnyPartition::A(p.clone()))
}

/// Reads blocks from either a bare array or a partition object.
fn parse_blocks(text: &str) -> Result<Vec<Vec<i64>>> {
    let bad = |e: serde_json::Error| Error::NotAPartition(format!("invalid JSON: {e}"));
    let value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
    let blocks = if value.is_object() {
        value["blocks"].clone()
    } else {
        value
    };
    serde_json::from_value(blocks).map_err(bad)
}

fn read_partition(arg: &Option<String>) -> Result<Vec<Vec<i64>>> {
    match arg {
        Some(text) => parse_blocks(text),
        None => {
            let text = std::io::read_to_string(std::io::stdin())
                .map_err(|e| Error::NotAPartition(format!("cannot read stdin: {e}")))?;
            parse_blocks(&text)
        }
    }
}

fn read_classical(arg: &Option<String>) -> Result<ClassicalPartition> {
    let blocks = read_partition(arg)?;
    let size = blocks.iter().map(Vec::len).sum();
    match validate(&blocks, Ground::Classical(size))? {
        AnyPartition::A(p) => Ok(p),
        _ => unreachable!("classical ground"),
    }
}

/// Parses `args` (program name first), writes results to `out` and
/// diagnostics to `err`; returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::OutOfRange(format!("write failed: {e}"))
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Count {
            fam,
            by_enumeration,
            opts,
        } => {
            let spec = fam.spec()?;
            let value = if by_enumeration {
                count_with_limit(&spec, opts.limit())?
            } else {
                formulas::family_count(&spec)?
            };
            if opts.format == Format::Json {
                let v = json!({
                    "family": spec.label(), "n": spec.n, "k": spec.k,
                    "count": value.to_string(),
                    "method": if by_enumeration { "enumeration" } else { "formula" },
                });
                writeln!(out, "{v}").map_err(io)?;
            } else {
                writeln!(out, "{value}").map_err(io)?;
            }
        }
        Command::Enumerate { fam, opts } => {
            let spec = fam.spec()?;
            for p in enumerate_with_limit(&spec, opts.limit())? {
                writeln!(out, "{}", partition_json(spec.label(), spec.n, spec.k, &p)).map_err(io)?;
            }
        }
        Command::Census { fam, opts } => {
            let spec = fam.spec()?;
            write!(out, "{}", census_with_limit(&spec, opts.limit())?.to_csv()).map_err(io)?;
        }
        Command::Formula {
            name,
            fam,
            sizes,
            r,
            opts,
        } => {
            let spec = fam.spec()?;
            let text = formula(name, &spec, &sizes, &r)?;
            if opts.format == Format::Json {
                writeln!(out, "{}", json!({ "name": format!("{name:?}"), "value": text })).map_err(io)?;
            } else {
                writeln!(out, "{text}").map_err(io)?;
            }
        }
        Command::Verify { suite, opts } => return run_verify(&suite, &opts, out),
        Command::Bijection {
            op,
            k,
            i,
            partition,
            opts: _,
        } => match op {
            BijectionOp::Glue => {
                let p = read_classical(&partition)?;
                let q = glue(&p, GlueIndex::new(k, i)?)?;
                writeln!(out, "{}", classical_json(&q, k)).map_err(io)?;
            }
            BijectionOp::Split => {
                let p = read_classical(&partition)?;
                let q = split(&p, k)?;
                writeln!(out, "{}", classical_json(&q, k + 1)).map_err(io)?;
            }
            BijectionOp::Abs => {
                let blocks = read_partition(&partition)?;
                let half = blocks.iter().map(Vec::len).sum::<usize>() / 2;
                let AnyPartition::B(signed) = validate(&blocks, Ground::Signed(half))? else {
                    unreachable!("signed ground")
                };
                if !is_noncrossing_signed(&signed) {
                    return Err(Error::NotNoncrossing);
                }
                writeln!(out, "{}", classical_json(&abs_map(&signed), 1)).map_err(io)?;
            }
            BijectionOp::Decompose => {
                let p = read_classical(&partition)?;
                for part in kreweras_decompose(&p, k)? {
                    writeln!(out, "{}", classical_json(&part, 1)).map_err(io)?;
                }
            }
        },
        Command::Kreweras { partition, opts: _ } => {
            let p = read_classical(&partition)?;
            if !is_noncrossing(&p) {
                return Err(Error::NotNoncrossing);
            }
            writeln!(out, "{}", classical_json(&kreweras(&p)?, 1)).map_err(io)?;
        }
        Command::Sample {
            fam,
            statistic,
            sizes,
            seed,
            trials,
            opts,
        } => {
            let spec = fam.spec()?;
            let statistic = match statistic {
                StatisticName::BlocksOfSize => Statistic::BlocksOfSize(sizes.t.unwrap_or(1)),
                StatisticName::NonzeroPairsOfSize => Statistic::NonzeroPairsOfSize(sizes.t.unwrap_or(1)),
                StatisticName::TotalBlocks => Statistic::TotalBlocks,
            };
            let sampler = Sampler::with_limit(spec, opts.limit())?;
            let report = estimate_with(&sampler, statistic, trials, seed)?;
            writeln!(out, "{}", serde_json::to_string(&report).expect("plain data")).map_err(io)?;
        }
    }
    Ok(0)
}

fn formula(name: FormulaName, spec: &FamilySpec, sizes: &SizeArgs, r: &[usize]) -> Result<String> {
    let type_a = || {
        if spec.family != Family::A || spec.mode == Mode::Equal {
            Err(Error::InvalidSpec("this quantity is stated for NC^k(n)".into()))
        } else {
            Ok(())
        }
    };
    let value: BigUint = match name {
        FormulaName::FamilyCount => formulas::family_count(spec)?,
        FormulaName::TypeCount => {
            let k = spec.k;
            let mut raw = vec![0; spec.half_size()];
            for (t, &c) in r.iter().enumerate() {
                if c > 0 {
                    let size = (t + 1) * k;
                    if size > raw.len() {
                        return Err(Error::MassMismatch(format!("block size {size} exceeds {}", raw.len())));
                    }
                    raw[size - 1] = c;
                }
            }
            formulas::type_count(spec, &BlockSizeVector::new(raw, sizes.s.unwrap_or(0) * k))?
        }
        FormulaName::BlockTotal => formulas::block_total_formula(spec, need(sizes.t, "t")?)?,
        FormulaName::BlockTotalGivenM => {
            formulas::block_total_given_m_formula(spec, need(sizes.t, "t")?, need(sizes.m, "m")?, sizes.s.unwrap_or(0))?
        }
        FormulaName::ZeroBlockTotal => formulas::zero_block_total_formula(spec, need(sizes.t, "t")?)?,
        FormulaName::ExpectedBlocks => {
            type_a()?;
            return Ok(formulas::expectation(spec.n, spec.k, Expectation::BlocksTotal)?.to_string());
        }
        FormulaName::ExpectedBlocksOfSize => {
            type_a()?;
            let t = need(sizes.t, "t")?;
            return Ok(formulas::expectation(spec.n, spec.k, Expectation::BlocksOfSize(t))?.to_string());
        }
        FormulaName::Asymptotic => {
            type_a()?;
            let t = need(sizes.t, "t")?;
            return Ok(formulas::expectation(spec.n, spec.k, Expectation::Asymptotic(t))?.to_string());
        }
        FormulaName::TotalBlockSum => {
            type_a()?;
            return Ok(formulas::expectation(spec.n, spec.k, Expectation::TotalBlockSum)?.to_string());
        }
        FormulaName::FirstTwo => {
            type_a()?;
            formulas::first_two_together_count(spec.n, spec.k)?
        }
    };
    Ok(value.to_string())
}

fn run_verify(suite: &str, opts: &Common, out: &mut dyn Write) -> Result<i32> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.iter().map(|(name, _)| *name).collect()
    } else {
        verify::suite_bound(suite)?;
        vec![suite]
    };
    let mut failed_any = false;
    for name in names {
        let outcomes = verify::verify_grid(name, opts.max_points, opts.force)?;
        let (passed, failed) = summarize(&outcomes);
        failed_any |= failed > 0;
        for o in &outcomes {
            if opts.format == Format::Json {
                writeln!(out, "{}", serde_json::to_string(o).expect("plain data")).map_err(io)?;
            } else {
                writeln!(out, "{o}").map_err(io)?;
            }
        }
        if opts.format == Format::Json {
            writeln!(out, "{}", json!({ "suite": name, "passed": passed, "failed": failed })).map_err(io)?;
        } else {
            writeln!(out, "{name}: {passed} passed, {failed} failed").map_err(io)?;
        }
    }
    Ok(i32::from(failed_any))
}

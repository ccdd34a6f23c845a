//! Command-line front end: build/serialize/render tiling regions, evaluate
//! the closed-form counts, run the oracles, and drive the verification
//! harness.
//!
//! Exit codes: 0 when every performed check matches, 1 when some comparison
//! fails, 2 for usage errors, 3 for parameter errors, 4 when a capacity
//! limit is hit.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lozenge::count::{
    count_tilings, count_tilings_determinant, enumerate_tilings, tiling_weight_sum, Enumeration,
};
use lozenge::error::{Error, Result};
use lozenge::families::{
    build_halved, build_hexagon, build_proctor, build_quartered, build_symmetric, FamilyParams,
    FamilyTag, ProctorKind, QuarteredKind, SymmetricKind,
};
use lozenge::fern::Fern;
use lozenge::formulas::{
    halved_count, halved_count_ratio_form, macmahon, proctor_count, proctor_weighted_count,
    quartered_count, symmetric_count,
};
use lozenge::lattice::{format_rat, Region};
use lozenge::verify::{
    algebraic_identity_fuzz, full_verification, records_to_csv, records_to_json, ParameterGrid,
};

#[derive(Parser)]
#[command(
    name = "lozenge",
    version,
    about = "Exact weighted lozenge-tiling counts of fern-intruded regions"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

/// Flags naming a region family and its parameters.
#[derive(Args, Clone)]
struct FamilyArgs {
    /// Family: a halved-hexagon tag (H1, …, NR4), Q/QP/K/KP (quartered),
    /// P/PP (tilted-corner hexagon), S1/S2 (symmetric), or HEX.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    x: i64,
    #[arg(long, default_value_t = 0)]
    y: i64,
    #[arg(long, default_value_t = 0)]
    z: i64,
    /// West-side fern, e.g. "2,2" (empty string for the empty fern).
    #[arg(long, default_value = "")]
    a: String,
    /// Northeast-side fern, e.g. "2,3".
    #[arg(long, default_value = "")]
    b: String,
    /// Side sequence for the quartered kinds, e.g. "2,1,2,2".
    #[arg(long)]
    t: Option<String>,
    /// Side triple for HEX and P/PP, e.g. "1,1,1".
    #[arg(long)]
    abc: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Ascii,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    /// Transfer-matrix (broken-profile dynamic programming) count.
    Dp,
    /// Signed-adjacency determinant count.
    Det,
    /// Explicit enumeration, summing tiling weights.
    Enum,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a region and write it as JSON.
    RegionBuild {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output path for the region JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a region file as SVG or ASCII art.
    Render {
        /// Region JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: RenderFormat,
        /// Output path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Count the tilings of a region file exactly.
    Count {
        /// Region JSON file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Which counting route to use.
        #[arg(long, value_enum, default_value_t = OracleKind::Dp)]
        oracle: OracleKind,
    },
    /// Evaluate the closed-form count of a family.
    Formula {
        #[command(flatten)]
        family: FamilyArgs,
        /// Evaluate the three-specialisation form instead of the closed
        /// form (halved-hexagon families only).
        #[arg(long)]
        ratio_form: bool,
    },
    /// Run the verification sweep and the structural checks.
    Verify {
        /// Comma-separated halved-hexagon tags, or "all".
        #[arg(long, default_value = "all")]
        families: String,
        #[arg(long, default_value_t = 2)]
        max_x: i64,
        #[arg(long, default_value_t = 2)]
        max_y: i64,
        #[arg(long, default_value_t = 2)]
        max_z: i64,
        /// Fern shapes, e.g. "(),(1),(2),(1,1),(2,1)".
        #[arg(long, default_value = "(),(1),(2),(1,1),(2,1)")]
        ferns: String,
        /// CSV report path (a JSON report is written next to it).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Worker threads for the sweep.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Fuzz the product-formula identities with a seeded generator.
    Identities {
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) => ExitCode::from(2),
                Error::Parameter(_) | Error::Domain(_) | Error::Pole(_) => ExitCode::from(3),
                Error::Capacity(_) => ExitCode::from(4),
            }
        }
    }
}

fn parse_triple(s: &Option<String>, what: &str) -> Result<(i64, i64, i64)> {
    let s = s
        .as_deref()
        .ok_or_else(|| Error::Usage(format!("this family needs --{what}")))?;
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Usage(format!("--{what} needs three integers")));
    }
    let mut v = [0i64; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("bad integer {part:?} in --{what}")))?;
    }
    Ok((v[0], v[1], v[2]))
}

fn family_params(f: &FamilyArgs) -> Result<FamilyParams> {
    FamilyParams::new(f.x, f.y, f.z, Fern::parse(&f.a)?, Fern::parse(&f.b)?)
}

fn fern_t(f: &FamilyArgs) -> Result<Fern> {
    Fern::parse(
        f.t.as_deref()
            .ok_or_else(|| Error::Usage("this family needs --t".into()))?,
    )
}

fn build_region(f: &FamilyArgs) -> Result<Region> {
    let fam = f.family.to_ascii_uppercase();
    match fam.as_str() {
        "Q" | "QP" | "K" | "KP" => build_quartered(quartered_kind(&fam)?, &fern_t(f)?),
        "P" | "PP" => {
            let (a, b, c) = parse_triple(&f.abc, "abc")?;
            build_proctor(proctor_kind(&fam)?, a, b, c)
        }
        "HEX" => {
            let (a, b, c) = parse_triple(&f.abc, "abc")?;
            build_hexagon(a, b, c)
        }
        "S1" => build_symmetric(SymmetricKind::S1, &family_params(f)?),
        "S2" => build_symmetric(SymmetricKind::S2, &family_params(f)?),
        _ => build_halved(fam.parse()?, &family_params(f)?),
    }
}

fn formula_value(f: &FamilyArgs, ratio_form: bool) -> Result<lozenge::Rat> {
    let fam = f.family.to_ascii_uppercase();
    if ratio_form && fam.parse::<FamilyTag>().is_err() {
        return Err(Error::Usage(
            "--ratio-form applies to the halved-hexagon families only".into(),
        ));
    }
    match fam.as_str() {
        "Q" | "QP" | "K" | "KP" => quartered_count(quartered_kind(&fam)?, &fern_t(f)?),
        "P" | "PP" => {
            let (a, b, c) = parse_triple(&f.abc, "abc")?;
            match proctor_kind(&fam)? {
                ProctorKind::P => proctor_count(a, b, c),
                ProctorKind::Pp => proctor_weighted_count(a, b, c),
            }
        }
        "HEX" => {
            let (a, b, c) = parse_triple(&f.abc, "abc")?;
            macmahon(a, b, c)
        }
        "S1" => symmetric_count(SymmetricKind::S1, &family_params(f)?),
        "S2" => symmetric_count(SymmetricKind::S2, &family_params(f)?),
        _ => {
            let tag: FamilyTag = fam.parse()?;
            let p = family_params(f)?;
            if ratio_form {
                halved_count_ratio_form(tag, &p)
            } else {
                halved_count(tag, &p)
            }
        }
    }
}

fn quartered_kind(s: &str) -> Result<QuarteredKind> {
    Ok(match s {
        "Q" => QuarteredKind::Q,
        "QP" => QuarteredKind::Qp,
        "K" => QuarteredKind::K,
        "KP" => QuarteredKind::Kp,
        _ => return Err(Error::Usage(format!("unknown quartered kind {s:?}"))),
    })
}

fn proctor_kind(s: &str) -> Result<ProctorKind> {
    Ok(match s {
        "P" => ProctorKind::P,
        "PP" => ProctorKind::Pp,
        _ => return Err(Error::Usage(format!("unknown kind {s:?}"))),
    })
}

/// Parse a comma-separated list of parenthesized fern shapes.
fn parse_fern_list(s: &str) -> Result<Vec<Fern>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Usage(format!("expected '(' in fern list near {rest:?}")))?;
        let close = rest[open..]
            .find(')')
            .map(|i| open + i)
            .ok_or_else(|| Error::Usage(format!("unclosed '(' in fern list near {rest:?}")))?;
        out.push(Fern::parse(&rest[open..=close])?);
        rest = rest[close + 1..].trim_start_matches([',', ' ']);
    }
    if out.is_empty() {
        return Err(Error::Usage("empty fern list".into()));
    }
    Ok(out)
}

fn parse_families(s: &str) -> Result<Vec<FamilyTag>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(FamilyTag::all().to_vec());
    }
    s.split(',').map(|t| t.trim().parse()).collect()
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn read_region(path: &PathBuf) -> Result<Region> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    Region::from_json(&text)
}

/// Enumeration cap for `count --oracle enum`.
const ENUM_LIMIT: usize = 1_000_000;

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::RegionBuild { family, out } => {
            let r = build_region(&family)?;
            write_file(&out, &r.to_json())?;
            println!("{} cells -> {}", r.cells.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Render { input, format, out } => {
            let r = read_region(&input)?;
            let rendered = match format {
                RenderFormat::Svg => r.render_svg(),
                RenderFormat::Ascii => r.render_ascii(),
            };
            write_file(&out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Count { input, oracle } => {
            let r = read_region(&input)?;
            let value = match oracle {
                OracleKind::Dp => count_tilings(&r)?,
                OracleKind::Det => count_tilings_determinant(&r)?,
                OracleKind::Enum => match enumerate_tilings(&r, ENUM_LIMIT) {
                    Enumeration::Complete(ts) => tiling_weight_sum(&r, &ts),
                    Enumeration::Truncated => {
                        return Err(Error::Capacity(format!(
                            "more than {ENUM_LIMIT} tilings; use --oracle dp or det"
                        )))
                    }
                },
            };
            println!("{}", format_rat(&value));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Formula { family, ratio_form } => {
            let value = formula_value(&family, ratio_form)?;
            println!("{}", format_rat(&value));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify {
            families,
            max_x,
            max_y,
            max_z,
            ferns,
            report,
            jobs,
        } => {
            let tags = parse_families(&families)?;
            let grid = ParameterGrid::ranges(max_x, max_y, max_z, parse_fern_list(&ferns)?);
            let records = full_verification(&tags, &grid, jobs);
            let passed = records.iter().filter(|r| r.matched == Some(true)).count();
            let failed: Vec<_> = records.iter().filter(|r| r.matched == Some(false)).collect();
            let skipped = records.iter().filter(|r| r.matched.is_none()).count();
            for r in &failed {
                println!(
                    "MISMATCH {} {} x={} y={} z={} a={} b={}: formula {} oracle {}",
                    r.check,
                    r.family,
                    r.x,
                    r.y,
                    r.z,
                    r.a,
                    r.b,
                    r.formula.as_deref().unwrap_or("-"),
                    r.oracle.as_deref().unwrap_or("-"),
                );
            }
            println!(
                "{} checks: {passed} passed, {} failed, {skipped} skipped",
                records.len(),
                failed.len()
            );
            if let Some(path) = report {
                write_file(&path, &records_to_csv(&records))?;
                let json_path = path.with_extension("json");
                write_file(&json_path, &records_to_json(&records))?;
                println!("reports: {} and {}", path.display(), json_path.display());
            }
            Ok(if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Cmd::Identities { trials, seed } => {
            let records = algebraic_identity_fuzz(trials, seed);
            let failed = records.iter().filter(|r| r.matched == Some(false)).count();
            println!(
                "{} identity checks: {} passed, {failed} failed",
                records.len(),
                records.len() - failed
            );
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

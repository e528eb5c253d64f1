//! `fussnc`: builds parking spaces and companion objects and writes the
//! results of each check as JSON lines.

mod dfilter;
mod report;

use std::collections::HashSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fussnc::locus::{dihedral_bijection, verify_intermediate_character, BcBijection, Locus};
use fussnc::ncw::NCPoset;
use fussnc::nonnesting::{verify_torus, RootKind, RootPoset, Torus};
use fussnc::parkspace::{enumerate_classical, equivariant_function_count, equivariant_function_formula, power, ParkSpace};
use fussnc::qcatalan::verify_csp;
use fussnc::{Error, Family, Group, GroupSpec, DEFAULT_CAP};
use serde_json::json;

use dfilter::DFilter;
use report::{num, snum, Report};

#[derive(Parser)]
#[command(name = "fussnc", version, about = "Fuss noncrossing parking spaces: enumeration and verification sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One record per class of Park^NC_W(k), in canonical order
    Enumerate(Common),
    /// Character of Park^NC_W(k) against (kh+1)^{dim V^w} on every (w, g^d)
    VerifyWeak(Common),
    /// Fixed k-multichains of g^d against Cat^k(W; ω^d)
    VerifyCsp(Common),
    /// Fixed points on Park^NC_W(k) against fixed points on the locus V^Θ
    VerifyIntermediate(Common),
    /// The equivariant bijection to V^Θ (types B and I2)
    VerifyBijection(Common),
    /// Geometric k-multichains of filters against |NC^k(W)|
    NonnestingCount(Common),
    /// Fixed points on Q/(kh+1)Q against (kh+1)^{dim V^w}
    TorusCharacter(Common),
    /// Fuss parking functions: cardinality, the map from Park^NC, and equivariant counts
    ClassicalPark(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// A, B, C, D or I2
    #[arg(long)]
    family: String,
    /// Rank of the group (A_r, B_r, C_r, D_r)
    #[arg(long)]
    rank: Option<usize>,
    /// m for I2(m)
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Restrict d, e.g. `2`, `1,3` or `0..4`
    #[arg(long)]
    d: Option<String>,
    /// Output file, `-` for stdout
    #[arg(long, default_value = "-")]
    out: String,
    /// Worker threads; 0 uses every core
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Enumeration cap for group elements, vectors and functions
    #[arg(long, env = "FUSSNC_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

/// Validated form of [`Common`].
struct Config {
    command: &'static str,
    spec: GroupSpec,
    /// Only differs from the group's default for `C`.
    root_kind: Option<RootKind>,
    k: usize,
    d: DFilter,
    cap: u64,
}

impl Config {
    fn new(command: &'static str, c: &Common) -> Result<(Config, String), String> {
        let fam = c.family.to_ascii_uppercase();
        let family: Family = fam.parse().map_err(|e: Error| e.to_string())?;
        let param = match (family, c.rank, c.m) {
            (Family::I2, None, Some(m)) => m,
            (Family::I2, _, _) => return Err("I2 takes --m and no --rank".into()),
            (_, Some(r), None) => match family {
                Family::A => r + 1,
                _ => r,
            },
            (_, _, Some(_)) => return Err("--m is only for I2".into()),
            (_, None, None) => return Err("--rank is required".into()),
        };
        let spec = GroupSpec::new(family, param).map_err(|e| e.to_string())?;
        if c.k == 0 {
            return Err("--k must be at least 1".into());
        }
        let d = DFilter::parse(c.d.as_deref().unwrap_or(""))?;
        let root_kind = (fam == "C").then_some(RootKind::C);
        if root_kind.is_some() && !matches!(command, "nonnesting-count" | "torus-character") {
            return Err("family C only changes the root system; use B for this command".into());
        }
        Ok((Config { command, spec, root_kind, k: c.k, d, cap: c.cap }, fam))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common) = match &cli.command {
        Command::Enumerate(c) => ("enumerate", c),
        Command::VerifyWeak(c) => ("verify-weak", c),
        Command::VerifyCsp(c) => ("verify-csp", c),
        Command::VerifyIntermediate(c) => ("verify-intermediate", c),
        Command::VerifyBijection(c) => ("verify-bijection", c),
        Command::NonnestingCount(c) => ("nonnesting-count", c),
        Command::TorusCharacter(c) => ("torus-character", c),
        Command::ClassicalPark(c) => ("classical-park", c),
    };
    let (cfg, family) = match Config::new(name, common) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("fussnc: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if common.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(common.threads).build_global() {
            eprintln!("fussnc: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    let mut report = match Report::open(&common.out, cfg.command, &family, &cfg.spec, cfg.k) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("fussnc: cannot open {}: {e}", common.out);
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let result = match cfg.command {
        "enumerate" => enumerate(&cfg, &mut report),
        "verify-weak" => verify_weak(&cfg, &mut report),
        "verify-csp" => verify_csp_cmd(&cfg, &mut report),
        "verify-intermediate" => verify_intermediate(&cfg, &mut report),
        "verify-bijection" => verify_bijection(&cfg, &mut report),
        "nonnesting-count" => nonnesting_count(&cfg, &mut report),
        "torus-character" => torus_character(&cfg, &mut report),
        _ => classical_park(&cfg, &mut report),
    };
    if let Err(e) = result {
        eprintln!("fussnc: {e}");
        return ExitCode::from(match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::Logic(_) => EXIT_INTERNAL,
            _ => EXIT_CONFIG,
        });
    }
    match report.finish() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("fussnc: write failed: {e}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

type Res = fussnc::Result<()>;

fn space(cfg: &Config) -> fussnc::Result<ParkSpace> {
    ParkSpace::build(cfg.spec, cfg.k, cfg.cap)
}

fn enumerate(cfg: &Config, r: &mut Report) -> Res {
    let p = space(cfg)?;
    for id in 0..p.len() as u32 {
        r.record(json!({ "index": id, "class": p.class_json(id), "pass": true }));
    }
    let expected = power(p.kh() + 1, cfg.spec.rank());
    r.summary_check(num(expected), num(p.len() as u128), expected == p.len() as u128);
    Ok(())
}

fn verify_weak(cfg: &Config, r: &mut Report) -> Res {
    let p = space(cfg)?;
    let g = p.group();
    for row in p.verify_weak()?.into_iter().filter(|x| cfg.d.contains(x.d)) {
        r.record(json!({
            "w": g.elem(row.elem).to_string(), "d": row.d, "mult": row.mult,
            "expected": num(row.expected), "actual": num(row.actual), "pass": row.pass,
        }));
    }
    Ok(())
}

fn verify_csp_cmd(cfg: &Config, r: &mut Report) -> Res {
    let g = Group::build(cfg.spec, cfg.cap)?;
    for row in verify_csp(&g, cfg.k)?.into_iter().filter(|x| cfg.d.contains(x.d)) {
        r.record(json!({ "d": row.d, "expected": row.expected.map(snum), "actual": num(row.actual), "pass": row.pass }));
    }
    Ok(())
}

fn verify_intermediate(cfg: &Config, r: &mut Report) -> Res {
    let p = space(cfg)?;
    let locus = Locus::new(cfg.spec, cfg.k, cfg.cap)?;
    let g = p.group();
    for row in verify_intermediate_character(&p, &locus)?.into_iter().filter(|x| cfg.d.contains(x.d)) {
        r.record(json!({
            "w": g.elem(row.elem).to_string(), "d": row.d, "mult": row.mult, "park": num(row.park),
            "expected": num(row.expected), "actual": num(row.locus), "pass": row.pass,
        }));
    }
    Ok(())
}

fn verify_bijection(cfg: &Config, r: &mut Report) -> Res {
    if !matches!(cfg.spec.family, Family::B | Family::I2) {
        return Err(Error::Invalid(format!("no bijection is constructed for {}", cfg.spec)));
    }
    let p = space(cfg)?;
    let locus = Locus::new(cfg.spec, cfg.k, cfg.cap)?;
    let n = p.len() as u128;
    r.record(json!({ "check": "sizes", "expected": num(n), "actual": num(locus.len() as u128), "pass": n == locus.len() as u128 }));
    let (to_point, failures) = match cfg.spec.family {
        Family::B => {
            let b = BcBijection::build(&p, &locus)?;
            let back = b.to_point.iter().enumerate().filter(|&(i, &x)| b.to_class[x as usize] == i as u32).count() as u128;
            r.record(json!({ "check": "psi-after-phi", "expected": num(n), "actual": num(back), "pass": back == n }));
            let bad = b.equivariance_failures(&p, &locus);
            (b.to_point, bad)
        }
        Family::I2 => {
            let b = dihedral_bijection(&p, &locus)?;
            for (i, s) in b.seeds.iter().enumerate() {
                r.record(json!({ "check": "seed-orbit", "seed": s.point.to_json(), "actual": b.orbit_sizes[i], "pass": true }));
            }
            let reached = b.orbit_sizes.iter().sum::<usize>() as u128;
            r.record(json!({ "check": "reached", "expected": num(n), "actual": num(reached), "pass": reached == n }));
            let bad = b.equivariance_failures(&p, &locus);
            (b.to_point, bad)
        }
        _ => unreachable!(),
    };
    let distinct = to_point.iter().collect::<HashSet<_>>().len() as u128;
    r.record(json!({ "check": "injective", "expected": num(n), "actual": num(distinct), "pass": distinct == n }));
    r.record(json!({ "check": "equivariance-failures", "expected": 0, "actual": failures, "pass": failures == 0 }));
    Ok(())
}

fn root_kind(cfg: &Config) -> fussnc::Result<RootKind> {
    cfg.root_kind.map_or_else(|| RootKind::of(&cfg.spec), Ok)
}

fn nonnesting_count(cfg: &Config, r: &mut Report) -> Res {
    let poset = RootPoset::build_kind(root_kind(cfg)?, cfg.spec.param)?;
    let g = Group::build(cfg.spec, cfg.cap)?;
    let expected = NCPoset::build(&g).multichains(cfg.k).len() as u128;
    let actual = poset.count_geometric(cfg.k);
    r.record(json!({ "roots": poset.len(), "expected": num(expected), "actual": num(actual), "pass": expected == actual }));
    Ok(())
}

fn torus_character(cfg: &Config, r: &mut Report) -> Res {
    let kind = root_kind(cfg)?;
    let g = Group::build(cfg.spec, cfg.cap)?;
    let torus = Torus::with_kind(kind, cfg.spec.param, cfg.k)?;
    for row in verify_torus(&g, &torus, cfg.cap)? {
        r.record(json!({
            "w": g.elem(row.elem).to_string(), "dim": row.dim, "modulus": torus.modulus(),
            "expected": num(row.expected), "actual": num(row.kernel),
            "enumerated": row.enumerated.map(num), "pass": row.pass,
        }));
    }
    Ok(())
}

fn classical_park(cfg: &Config, r: &mut Report) -> Res {
    if cfg.spec.family != Family::A {
        return Err(Error::Invalid("classical parking functions are type A".into()));
    }
    let (n, k) = (cfg.spec.param, cfg.k);
    let kn = k * n;
    let total = power(kn + 1, n);
    if total > cfg.cap as u128 {
        return Err(Error::CapExceeded { what: "functions [n] → [kn] ∪ {0}".into(), needed: total, cap: cfg.cap });
    }
    let all = enumerate_classical(n, k);
    let expected = power(kn + 1, n - 1);
    r.record(json!({ "check": "cardinality", "expected": num(expected), "actual": all.len(), "pass": all.len() as u128 == expected }));
    let p = space(cfg)?;
    let mut images = (0..p.len() as u32).map(|i| p.to_classical(i)).collect::<fussnc::Result<Vec<_>>>()?;
    images.sort();
    images.dedup();
    let onto = images == all;
    r.record(json!({ "check": "nc-to-classical", "expected": all.len(), "actual": images.len(), "pass": onto }));
    let g = p.group();
    for class in g.conjugacy_classes() {
        let w = g.elem(class[0]);
        let perm = w.as_signed().ok_or_else(|| Error::Logic("type A element is not a permutation".into()))?;
        for d in (1..kn).filter(|&d| cfg.d.contains(d)) {
            let (brute, formula) = (equivariant_function_count(n, k, perm, d)?, equivariant_function_formula(n, k, perm, d));
            r.record(json!({
                "check": "equivariant-functions", "w": w.to_string(), "d": d,
                "expected": num(formula), "actual": num(brute), "pass": brute == formula,
            }));
        }
    }
    Ok(())
}

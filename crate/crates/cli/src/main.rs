//! Command-line front end for the border-rank certificate kernel.
//!
//! Reports are deterministic: the same argv and seed produce
//! byte-identical output. Every number is either an exact rational token
//! or a 10-significant-digit decimal.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use multidrop_core::bounds;
use multidrop_core::catalog;
use multidrop_core::field::GaussianRational;
use multidrop_core::hypersurface::{probe_line, probe_multidrop, HypersurfaceInstance};
use multidrop_core::multidrop::{
    bound_b, default_spec, kappa, verify_certificate, MultidropCertificate,
};
use multidrop_core::poly::MultivariatePoly;
use multidrop_core::tensor::FlatteningSpec;
use multidrop_core::Tensor;

#[derive(Parser)]
#[command(
    name = "multidrop",
    about = "Exact border-rank bounds, multidrop certificates and hypersurface probes",
    version
)]
struct Cli {
    /// Output format: human-readable text or line-oriented key=value
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a catalog entry (or all of them)
    Verify {
        /// Entry name, e.g. T, W, elliptic_quintic
        name: Option<String>,
        /// Verify every catalog entry
        #[arg(long)]
        all: bool,
    },
    /// Rank of a flattening of a tensor file
    Rank {
        #[arg(long)]
        file: String,
        #[command(flatten)]
        flattening: FlatteningArgs,
    },
    /// Flattening lower bound on border rank, optionally for a tensor power
    Bound {
        #[arg(long)]
        file: String,
        /// Bound p^(x)k via multiplicativity of the flattening bound
        #[arg(long, default_value_t = 1)]
        power: u32,
        #[command(flatten)]
        flattening: FlatteningArgs,
    },
    /// Print B(r,k) rows or the kappa table
    Table {
        /// Three values r kmin kmax: print B(r,k) for k in kmin..=kmax
        #[arg(long = "B", num_args = 3, value_names = ["R", "KMIN", "KMAX"])]
        b: Option<Vec<u64>>,
        /// Print (kappa_r, B(r,kappa_r)) for r = 1..=RMAX
        #[arg(long)]
        kappa: Option<u64>,
    },
    /// Expand p^(x)k through the drop direction z and verify the certificate
    Multidrop {
        #[arg(long)]
        p: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        k: u32,
        /// Drop level; defaults to the ceiled flattening bound of p minus one
        #[arg(long)]
        r: Option<u64>,
        /// Write the certificate to this file
        #[arg(long)]
        emit_cert: Option<String>,
    },
    /// Probe the multiplicity of a point in a hypersurface along lines
    Probe {
        /// Polynomial file with the hypersurface equation
        #[arg(long)]
        hypersurface: String,
        /// Base point, comma-separated scalar tokens
        #[arg(long)]
        point: String,
        /// Probe one explicit line instead of random trials
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct FlatteningArgs {
    /// standard or koszul; default picks koszul for order-3 tensors
    #[arg(long)]
    flattening: Option<String>,
    /// Comma-separated row modes for a standard flattening
    #[arg(long)]
    row_modes: Option<String>,
    /// Pivot mode of the koszul flattening
    #[arg(long)]
    pivot: Option<usize>,
    /// Contracted mode of the koszul flattening
    #[arg(long)]
    contract: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Info,
}

struct Report {
    command: String,
    items: Vec<(String, String)>,
    status: Status,
}

impl Report {
    fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            items: Vec::new(),
            status: Status::Info,
        }
    }

    fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.items.push((key.into(), value.to_string()));
    }

    fn render(&self, format: Format) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Info => "info",
        };
        let mut out = String::new();
        match format {
            Format::Kv => {
                let _ = writeln!(out, "command={}", self.command);
                for (k, v) in &self.items {
                    let _ = writeln!(out, "{k}={v}");
                }
                let _ = writeln!(out, "status={status}");
            }
            Format::Text => {
                let _ = writeln!(out, "[{}]", self.command);
                for (k, v) in &self.items {
                    let _ = writeln!(out, "  {k} = {v}");
                }
                let _ = writeln!(out, "  status: {status}");
            }
        }
        out
    }

    fn exit_code(&self) -> ExitCode {
        match self.status {
            Status::Fail => ExitCode::from(1),
            _ => ExitCode::SUCCESS,
        }
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn read_tensor(path: &str) -> Result<Tensor, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    Tensor::from_text(&text).map_err(|e| format!("{path}: {e}"))
}

fn parse_point(s: &str) -> Result<Vec<GaussianRational>, String> {
    s.trim_matches(|c| c == '(' || c == ')' || c == ' ')
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<GaussianRational>()
                .map_err(|e| e.to_string())
        })
        .collect()
}

fn resolve_spec(args: &FlatteningArgs, t: &Tensor) -> Result<FlatteningSpec, String> {
    match args.flattening.as_deref() {
        Some("standard") => {
            let modes = args
                .row_modes
                .as_deref()
                .ok_or("--row-modes is required for a standard flattening")?;
            let parsed: Result<Vec<usize>, _> =
                modes.split(',').map(|m| m.trim().parse::<usize>()).collect();
            Ok(FlatteningSpec::standard(
                parsed.map_err(|e| format!("bad --row-modes: {e}"))?,
            ))
        }
        Some("koszul") => {
            let pivot = args.pivot.ok_or("--pivot is required for a koszul flattening")?;
            let contract = args
                .contract
                .ok_or("--contract is required for a koszul flattening")?;
            Ok(FlatteningSpec::koszul(pivot, contract))
        }
        Some(other) => Err(format!("unknown flattening kind `{other}`")),
        None => default_spec(t).ok_or_else(|| "no default flattening for this tensor".to_string()),
    }
}

fn run_verify(name: Option<String>, all: bool) -> Result<Report, String> {
    let mut report = Report::new("verify");
    let reports = if all || name.is_none() {
        catalog::verify_all().map_err(|e| e.to_string())?
    } else {
        vec![catalog::verify(name.as_deref().unwrap()).map_err(|e| e.to_string())?]
    };
    let mut all_pass = true;
    for entry in &reports {
        for check in &entry.checks {
            let value = if check.pass { "pass" } else { "fail" };
            let key = format!("{}.{}", entry.entry, check.name);
            if check.pass || check.detail.is_empty() {
                report.push(key, value);
            } else {
                report.push(key, format!("{value} ({})", check.detail));
            }
            all_pass &= check.pass;
        }
    }
    report.push("entries", reports.len());
    report.status = if all_pass { Status::Pass } else { Status::Fail };
    Ok(report)
}

fn run_rank(file: &str, flattening: &FlatteningArgs) -> Result<Report, String> {
    let t = read_tensor(file)?;
    let spec = resolve_spec(flattening, &t)?;
    let mat = t.flatten(&spec).map_err(|e| e.to_string())?;
    let mut report = Report::new("rank");
    report.push("file", file);
    report.push("flattening", spec.describe());
    report.push("rows", mat.rows());
    report.push("cols", mat.cols());
    report.push("rank", mat.rank());
    Ok(report)
}

fn run_bound(file: &str, power: u32, flattening: &FlatteningArgs) -> Result<Report, String> {
    if power < 1 {
        return Err("--power must be >= 1".into());
    }
    let t = read_tensor(file)?;
    let spec = resolve_spec(flattening, &t)?;
    let bound = bounds::flattening_lower_bound(&t, &spec).map_err(|e| e.to_string())?;
    let mut report = Report::new("bound");
    report.push("file", file);
    report.push("flattening", bound.flattening.clone());
    report.push("rank", bound.rank_value);
    report.push("r0", bound.r0);
    if power == 1 {
        report.push("raw", &bound.raw);
        report.push("bound", &bound.ceiled);
    } else {
        report.push("factor_raw", &bound.raw);
        report.push("power", power);
        let factors: Vec<_> = (0..power).map(|_| bound.clone()).collect();
        let (raw, ceiled) =
            bounds::multiplicative_lower_bound(&factors).map_err(|e| e.to_string())?;
        report.push("raw", raw);
        report.push("bound", ceiled);
    }
    Ok(report)
}

fn run_table(b: Option<Vec<u64>>, kappa_max: Option<u64>) -> Result<Report, String> {
    let mut report = Report::new("table");
    match (b, kappa_max) {
        (Some(args), None) => {
            let (r, kmin, kmax) = (args[0], args[1], args[2]);
            if kmin < 1 || kmax < kmin {
                return Err("need 1 <= KMIN <= KMAX".into());
            }
            for k in kmin..=kmax {
                let v = bound_b(r, k as u32).map_err(|e| e.to_string())?;
                report.push(format!("B({r},{k})"), v);
            }
        }
        (None, Some(rmax)) => {
            if rmax < 1 {
                return Err("--kappa needs RMAX >= 1".into());
            }
            for r in 1..=rmax {
                let (k, v) = kappa(r).map_err(|e| e.to_string())?;
                report.push(format!("kappa({r})"), k);
                report.push(format!("B({r},{k})"), v);
            }
        }
        _ => return Err("pass exactly one of --B R KMIN KMAX or --kappa RMAX".into()),
    }
    Ok(report)
}

fn run_multidrop(
    p_file: &str,
    z_file: &str,
    k: u32,
    r: Option<u64>,
    emit_cert: Option<&str>,
) -> Result<Report, String> {
    let p = read_tensor(p_file)?;
    let z = read_tensor(z_file)?;
    let mut report = Report::new("multidrop");
    report.push("p", p_file);
    report.push("z", z_file);
    report.push("k", k);
    let r = match r {
        Some(r) => {
            report.push("r", format!("{r} (given)"));
            r
        }
        None => {
            let spec = default_spec(&p).ok_or("cannot pick a default flattening for p")?;
            let bound = bounds::flattening_lower_bound(&p, &spec).map_err(|e| e.to_string())?;
            let ceiled: u64 = bound
                .ceiled
                .try_into()
                .map_err(|_| "flattening bound does not fit u64".to_string())?;
            let r = ceiled.saturating_sub(1).max(1);
            report.push("r", format!("{r} (from flattening bound; override with --r)"));
            r
        }
    };
    let cert =
        MultidropCertificate::new(p, z, r, k, None, None).map_err(|e| e.to_string())?;
    let result = verify_certificate(&cert);
    for check in &result.checks {
        let value = if check.pass { "pass" } else { "fail" };
        if check.detail.is_empty() {
            report.push(format!("check.{}", check.name), value);
        } else {
            report.push(
                format!("check.{}", check.name),
                format!("{value} ({})", check.detail),
            );
        }
    }
    report.push("claimed_upper_bound", &cert.claimed_upper_bound);
    report.push("rank_one_terms", &result.term_count);
    if let Some(path) = emit_cert {
        fs::write(path, cert.to_text()).map_err(|e| format!("{path}: {e}"))?;
        report.push("certificate_written", path);
    }
    report.status = if result.pass() { Status::Pass } else { Status::Fail };
    Ok(report)
}

fn run_probe(
    file: &str,
    point: &str,
    direction: Option<&str>,
    trials: usize,
    seed: u64,
) -> Result<Report, String> {
    let text = fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?;
    let f = MultivariatePoly::from_text(&text).map_err(|e| format!("{file}: {e}"))?;
    let degree = f
        .homogeneous_degree()
        .ok_or("hypersurface equation must be homogeneous")?;
    let z = parse_point(point)?;
    let h = HypersurfaceInstance::new(file.to_string(), f, degree, vec![z.clone()])
        .map_err(|e| e.to_string())?;
    let mut report = Report::new("probe");
    report.push("hypersurface", file);
    report.push("degree", degree);
    report.push("point", point);
    match direction {
        Some(dir) => {
            let v = parse_point(dir)?;
            let probe = probe_line(&h, &z, &v).map_err(|e| e.to_string())?;
            report.push("direction", dir);
            report.push("restriction_degree", probe.restriction_degree);
            report.push("mult", probe.multiplicity);
            report.push("extra_distinct_roots", probe.extra_distinct_roots);
            let double = probe.multiplicity + 2 <= degree && probe.extra_distinct_roots >= 2;
            report.push(
                "line_verdict",
                if double { "DOUBLE_DROP" } else { "NO_DROP" },
            );
        }
        None => {
            let probe = probe_multidrop(&h, &z, trials, seed).map_err(|e| e.to_string())?;
            report.push("trials", trials);
            report.push("seed", seed);
            report.push("skipped_inside", probe.skipped_inside);
            report.push("min_mult", probe.min_multiplicity);
            report.push("max_extra_roots", probe.max_extra_roots);
            report.push("verdict", probe.verdict);
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { name, all } => run_verify(name.clone(), *all),
        Command::Rank { file, flattening } => run_rank(file, flattening),
        Command::Bound {
            file,
            power,
            flattening,
        } => run_bound(file, *power, flattening),
        Command::Table { b, kappa } => run_table(b.clone(), *kappa),
        Command::Multidrop {
            p,
            z,
            k,
            r,
            emit_cert,
        } => run_multidrop(p, z, *k, *r, emit_cert.as_deref()),
        Command::Probe {
            hypersurface,
            point,
            direction,
            trials,
            seed,
        } => run_probe(hypersurface, point, direction.as_deref(), *trials, *seed),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            report.exit_code()
        }
        Err(msg) => usage_error(msg),
    }
}

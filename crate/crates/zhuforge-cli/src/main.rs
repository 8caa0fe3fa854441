//! zhuforge: build exact weight-truncated examples, verify the structure
//! theorems on them, and compute quotient algebras, two-sided module
//! quotients, and fusion-dimension tables.
//!
//! Exit codes: 0 everything verified, 1 a check found a counterexample,
//! 2 usage or malformed input, 3 nothing was decidable at this truncation.
//! Wall time goes to stderr only, so report files and stdout are
//! byte-identical across runs with the same inputs and seed.

mod fusion;
mod io;
mod suites;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::time::Instant;

use io::{
    load_algebra, load_module, load_voa, retruncate, usage, write_json, write_text, CliResult,
};
use zhuforge_core::{
    adjoint_module, bimodule_output, build_fock, build_heisenberg, build_trivial, build_virasoro,
    check_factor_products, check_quotient_tensor_factorization, check_relation_span_decomposition,
    convergence_report, matrices_from_json, module_to_json, tensor_voa, voa_to_json, zhu_algebra,
    zhu_output, ActionJson, AlgModule, CheckBounds, CheckStatus, Scalar, SuiteReport,
    TruncatedVoa,
};

#[derive(Parser)]
#[command(
    name = "zhuforge",
    version,
    about = "Exact verification of truncated vertex algebra structure theorems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a standard example and write it as JSON.
    Build(BuildArgs),
    /// Quotient-algebra computations.
    Zhu {
        #[command(subcommand)]
        cmd: ZhuCmd,
    },
    /// Tensor two algebra files; optionally verify structural suites on the product.
    Tensor(TensorArgs),
    /// Compute the two-sided module quotient over the algebra quotient.
    Bimodule(BimoduleArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Shorthand for `verify teh`.
    #[command(name = "verify-teh")]
    VerifyTeh(TehArgs),
    /// Fusion-dimension sector tables.
    Fusion(FusionArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// What to build: heisenberg | virasoro | fock | trivial.
    kind: String,
    /// Weight (or level) cutoff of the truncation.
    #[arg(long)]
    cutoff: usize,
    /// Central charge for virasoro, as an exact rational like 1/2.
    #[arg(long)]
    c: Option<String>,
    /// Charge for fock, as an exact rational.
    #[arg(long)]
    lambda: Option<String>,
    /// Output file.
    #[arg(long)]
    out: PathBuf,
    /// For fock: also write the underlying free-boson algebra here.
    #[arg(long)]
    voa_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ZhuCmd {
    /// Compute the quotient algebra presentation of an algebra file.
    Compute(ZhuComputeArgs),
}

#[derive(Args)]
struct ZhuComputeArgs {
    #[arg(long)]
    voa: PathBuf,
    /// Retruncate the input to this cutoff before computing.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Write the computed table here as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TensorArgs {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    /// Common cutoff (defaults to the smaller of the two stored cutoffs).
    #[arg(long)]
    cutoff: Option<usize>,
    /// Comma-separated suites to verify on the product: izo,ten,kvoc.
    #[arg(long)]
    verify: Option<String>,
    /// Output file: the product algebra (no --verify) or the report JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BimoduleArgs {
    #[arg(long)]
    voa: PathBuf,
    #[arg(long)]
    module: PathBuf,
    /// Expected cutoff of both inputs (checked, never retruncated).
    #[arg(long)]
    cutoff: Option<usize>,
    /// Write the computed two-sided tables here as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: axioms | prop41 | izo | ten | kvoc | teh | zhu-top | lemica |
    /// fusion-mult | main.
    suite: String,
    #[arg(long)]
    voa: Option<PathBuf>,
    /// Module file(s); repeatable where a suite accepts several.
    #[arg(long)]
    module: Vec<PathBuf>,
    #[arg(long)]
    left: Option<PathBuf>,
    #[arg(long)]
    right: Option<PathBuf>,
    #[arg(long)]
    left_module: Option<PathBuf>,
    #[arg(long)]
    right_module: Option<PathBuf>,
    #[arg(long)]
    cutoff: Option<usize>,
    /// Search bound for the associativity-style identities.
    #[arg(long)]
    assoc_bound: Option<u32>,
    /// Search bound for the commutativity-style identities.
    #[arg(long)]
    comm_bound: Option<u32>,
    /// Seed for every randomized trial in the run.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial count for the seeded suites.
    #[arg(long)]
    trials: Option<u32>,
    /// Write the suite report here as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TehArgs {
    #[arg(long)]
    left: PathBuf,
    #[arg(long)]
    right: PathBuf,
    #[arg(long)]
    left_module: PathBuf,
    #[arg(long)]
    right_module: PathBuf,
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FusionArgs {
    /// Algebra file; omitted, the built-in two-sector example is used.
    #[arg(long)]
    algebra: Option<PathBuf>,
    /// Sector module files (action matrices over the algebra).
    #[arg(long)]
    sector: Vec<PathBuf>,
    /// Output format: json | csv.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let started = Instant::now();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(status) => match status {
            CheckStatus::Pass => 0,
            CheckStatus::Fail => 1,
            CheckStatus::Skipped => 3,
        },
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    eprintln!("wall time: {} ms", started.elapsed().as_millis());
    std::process::exit(code);
}

fn run(cli: Cli) -> CliResult<CheckStatus> {
    match cli.cmd {
        Cmd::Build(args) => cmd_build(args),
        Cmd::Zhu {
            cmd: ZhuCmd::Compute(args),
        } => cmd_zhu_compute(args),
        Cmd::Tensor(args) => cmd_tensor(args),
        Cmd::Bimodule(args) => cmd_bimodule(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::VerifyTeh(args) => cmd_verify(VerifyArgs {
            suite: "teh".into(),
            voa: None,
            module: Vec::new(),
            left: Some(args.left),
            right: Some(args.right),
            left_module: Some(args.left_module),
            right_module: Some(args.right_module),
            cutoff: args.cutoff,
            assoc_bound: None,
            comm_bound: None,
            seed: 0,
            trials: None,
            out: args.out,
        }),
        Cmd::Fusion(args) => cmd_fusion(args),
    }
}

fn parse_scalar(field: &str, value: Option<&String>) -> CliResult<Scalar> {
    let s = value.ok_or_else(|| usage(format!("{field} is required for this build kind")))?;
    s.parse::<Scalar>()
        .map_err(|e| usage(format!("{field}: {e}")))
}

fn cmd_build(args: BuildArgs) -> CliResult<CheckStatus> {
    match args.kind.as_str() {
        "heisenberg" => {
            let v = build_heisenberg(args.cutoff)?;
            write_json(&args.out, &voa_to_json(&v))?;
            println!("wrote {} with dims {:?}", args.out.display(), v.dims());
        }
        "virasoro" => {
            if args.cutoff < 2 {
                return Err(usage(
                    "virasoro needs --cutoff at least 2 (the conformal vector has weight 2)",
                ));
            }
            let c = parse_scalar("--c", args.c.as_ref())?;
            let v = build_virasoro(args.cutoff, c)?;
            write_json(&args.out, &voa_to_json(&v))?;
            println!("wrote {} with dims {:?}", args.out.display(), v.dims());
        }
        "fock" => {
            let lambda = parse_scalar("--lambda", args.lambda.as_ref())?;
            let v = build_heisenberg(args.cutoff)?;
            let m = build_fock(&v, lambda, args.cutoff)?;
            write_json(&args.out, &module_to_json(&m))?;
            println!(
                "wrote {} with level dims {:?} (top level dimension {})",
                args.out.display(),
                m.dims(),
                m.top_level_dim()
            );
            if let Some(vp) = &args.voa_out {
                write_json(vp, &voa_to_json(&v))?;
                println!("wrote {} with dims {:?}", vp.display(), v.dims());
            }
        }
        "trivial" => {
            let v = build_trivial(args.cutoff)?;
            write_json(&args.out, &voa_to_json(&v))?;
            println!("wrote {} with dims {:?}", args.out.display(), v.dims());
        }
        other => {
            return Err(usage(format!(
                "unknown build kind '{other}'; expected heisenberg, virasoro, fock, or trivial"
            )));
        }
    }
    Ok(CheckStatus::Pass)
}

fn cmd_zhu_compute(args: ZhuComputeArgs) -> CliResult<CheckStatus> {
    let voa = load_voa(&args.voa, args.cutoff)?;
    let pres = zhu_algebra(&voa)?;
    let conv = if voa.cutoff() >= 1 {
        Some(convergence_report(&voa, &pres)?)
    } else {
        None
    };
    println!(
        "quotient of {} at cutoff {}: dimension {}",
        voa.name(),
        voa.cutoff(),
        pres.dim()
    );
    for k in 0..pres.dim() {
        println!(
            "  class {k}: weight {} representative {}",
            pres.class_weights()[k],
            voa.label(pres.quotient().reps()[k])
        );
    }
    println!("policy:");
    for n in pres.notes() {
        println!("  - {n}");
    }
    if let Some(c) = &conv {
        println!("convergence:");
        for line in c.render() {
            println!("  {line}");
        }
    }
    let out_json = zhu_output(&voa, &pres, conv.as_ref());
    if let Some(p) = &args.out {
        write_json(p, &out_json)?;
        println!("wrote {}", p.display());
    }
    Ok(CheckStatus::Pass)
}

fn load_pair(
    left: &PathBuf,
    right: &PathBuf,
    cutoff: Option<usize>,
) -> CliResult<(TruncatedVoa, TruncatedVoa)> {
    let l = load_voa(left, None)?;
    let r = load_voa(right, None)?;
    let n = cutoff.unwrap_or_else(|| l.cutoff().min(r.cutoff()));
    let l = retruncate(l, n, left)?;
    let r = retruncate(r, n, right)?;
    Ok((l, r))
}

fn cmd_tensor(args: TensorArgs) -> CliResult<CheckStatus> {
    let (l, r) = load_pair(&args.left, &args.right, args.cutoff)?;
    let tv = tensor_voa(&l, &r)?;
    match &args.verify {
        None => {
            println!(
                "tensor of {} and {} at cutoff {}: dims {:?}",
                l.name(),
                r.name(),
                tv.cutoff(),
                tv.product().dims()
            );
            if let Some(p) = &args.out {
                write_json(p, &voa_to_json(tv.product()))?;
                println!("wrote {}", p.display());
            }
            Ok(CheckStatus::Pass)
        }
        Some(list) => {
            let mut suite = SuiteReport::new("tensor");
            suite.param("left", l.name());
            suite.param("right", r.name());
            suite.param("cutoff", tv.cutoff());
            for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                match tok {
                    "izo" => suite.reports.push(check_quotient_tensor_factorization(&tv)?),
                    "ten" => suite.reports.push(check_factor_products(&tv)),
                    "kvoc" => suite.reports.push(check_relation_span_decomposition(&tv)?),
                    other => {
                        return Err(usage(format!(
                            "unknown tensor verification '{other}'; expected izo, ten, or kvoc"
                        )));
                    }
                }
            }
            finish_suite(suite, args.out.as_deref())
        }
    }
}

fn cmd_bimodule(args: BimoduleArgs) -> CliResult<CheckStatus> {
    let voa = load_voa(&args.voa, args.cutoff)?;
    let module = load_module(&voa, &args.module, args.cutoff)?;
    let (suite, _pres, bim) = suites::suite_bimodule_laws(&voa, &module)?;
    if let Some(p) = &args.out {
        write_json(p, &bimodule_output(&module, &bim))?;
        println!("wrote {}", p.display());
    }
    finish_suite(suite, None)
}

fn resolve_bounds(cutoff: usize, args: &VerifyArgs) -> CheckBounds {
    let mut b = CheckBounds::for_cutoff(cutoff);
    if let Some(x) = args.assoc_bound {
        b.assoc_bound = x;
    }
    if let Some(x) = args.comm_bound {
        b.comm_bound = x;
    }
    b
}

fn require<'a>(flag: &str, v: &'a Option<PathBuf>) -> CliResult<&'a PathBuf> {
    v.as_ref()
        .ok_or_else(|| usage(format!("{flag} is required for this suite")))
}

fn cmd_verify(args: VerifyArgs) -> CliResult<CheckStatus> {
    let suite = match args.suite.as_str() {
        "axioms" => {
            let voa = load_voa(require("--voa", &args.voa)?, args.cutoff)?;
            let module = match args.module.first() {
                Some(p) => Some(load_module(&voa, p, args.cutoff)?),
                None => None,
            };
            let bounds = resolve_bounds(voa.cutoff(), &args);
            suites::suite_axioms(&voa, module.as_ref(), &bounds)
        }
        "prop41" => {
            let voa = load_voa(require("--voa", &args.voa)?, args.cutoff)?;
            suites::suite_prop41(&voa)
        }
        "zhu-top" => {
            let voa = load_voa(require("--voa", &args.voa)?, args.cutoff)?;
            let mut modules = vec![adjoint_module(&voa)];
            for p in &args.module {
                modules.push(load_module(&voa, p, args.cutoff)?);
            }
            suites::suite_zhu_top(&voa, &modules)?
        }
        "izo" | "ten" | "kvoc" => {
            let (l, r) = load_pair(
                require("--left", &args.left)?,
                require("--right", &args.right)?,
                args.cutoff,
            )?;
            match args.suite.as_str() {
                "izo" => suites::suite_izo(&l, &r)?,
                "ten" => suites::suite_ten(&l, &r)?,
                _ => suites::suite_kvoc(&l, &r)?,
            }
        }
        "teh" => {
            let (l, r) = load_pair(
                require("--left", &args.left)?,
                require("--right", &args.right)?,
                args.cutoff,
            )?;
            let lm = load_module(&l, require("--left-module", &args.left_module)?, args.cutoff)?;
            let rm = load_module(
                &r,
                require("--right-module", &args.right_module)?,
                args.cutoff,
            )?;
            suites::suite_teh(&l, &r, &lm, &rm)?
        }
        "lemica" => suites::suite_lemica(args.seed, args.trials.unwrap_or(100)),
        "fusion-mult" => suites::suite_fusion_mult(args.seed, args.trials.unwrap_or(25))?,
        "main" => {
            let cutoff = args.cutoff.unwrap_or(4);
            if cutoff < 2 {
                return Err(usage(
                    "main needs --cutoff at least 2 (the conformal vector has weight 2)",
                ));
            }
            let bounds = resolve_bounds(cutoff, &args);
            suites::suite_main(cutoff, args.seed, &bounds)?
        }
        other => {
            return Err(usage(format!(
                "unknown suite '{other}'; expected axioms, prop41, izo, ten, kvoc, teh, \
                 zhu-top, lemica, fusion-mult, or main"
            )));
        }
    };
    let is_izo = args.suite == "izo";
    let status = finish_suite(suite, args.out.as_deref())?;
    if is_izo && status == CheckStatus::Pass {
        if let Some(n) = args.cutoff {
            println!("verified at N = {n}");
        } else {
            println!("verified at the common stored cutoff");
        }
    }
    Ok(status)
}

fn finish_suite(suite: SuiteReport, out: Option<&std::path::Path>) -> CliResult<CheckStatus> {
    print!("{}", suite.render_text());
    if let Some(p) = out {
        write_json(p, &suite)?;
        println!("wrote {}", p.display());
    }
    Ok(suite.overall())
}

fn cmd_fusion(args: FusionArgs) -> CliResult<CheckStatus> {
    let data = match &args.algebra {
        None => fusion::two_sector_demo()?,
        Some(p) => {
            let alg = load_algebra(p)?;
            if args.sector.is_empty() {
                fusion::from_algebra(alg)?
            } else {
                let mut sectors = Vec::new();
                let mut labels = Vec::new();
                for sp in &args.sector {
                    let aj: ActionJson = io::read_json(sp)?;
                    let mats = matrices_from_json(&aj, alg.dim())
                        .map_err(|e| usage(format!("{}: {e}", sp.display())))?;
                    sectors.push(
                        AlgModule::new(&alg, mats)
                            .map_err(|e| usage(format!("{}: {e}", sp.display())))?,
                    );
                    labels.push(
                        sp.file_stem()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_else(|| format!("S{}", labels.len())),
                    );
                }
                let bimods = fusion::induced_bimodules(&alg, &sectors)?;
                fusion::FusionData {
                    algebra: alg,
                    sectors,
                    bimods,
                    labels,
                }
            }
        }
    };
    let table = fusion::sector_table(&data)?;
    match args.format.as_str() {
        "json" => {
            let text = serde_json::to_string_pretty(&table)
                .map_err(|e| usage(format!("serialization: {e}")))?;
            println!("{text}");
            if let Some(p) = &args.out {
                write_json(p, &table)?;
            }
        }
        "csv" => {
            let text = table.to_csv();
            print!("{text}");
            if let Some(p) = &args.out {
                write_text(p, &text)?;
            }
        }
        other => {
            return Err(usage(format!(
                "unknown format '{other}'; expected json or csv"
            )));
        }
    }
    println!(
        "all entries zero or one: {}",
        table.all_dims_zero_or_one
    );
    Ok(CheckStatus::Pass)
}

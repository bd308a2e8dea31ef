//! The `quivhom` command line.
//!
//! ```text
//! quivhom ext|check|hyper|gen [--verify] [--max-degree N] [--seed S] [--json] FILE MODULE_V [MODULE_W]
//! ```
//!
//! Exit codes: 0 success, 2 parse error, 3 validation error, 4 incompatible
//! modules or wrong mode, 5 a cross-check failed. `QUIVHOM_LOG` selects
//! `quiet` (default), `info` or `debug` logging on standard error.

pub mod instance;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::gen::{random_sheaf_pair, random_vector_pair, SheafBounds, VectorBounds};
use crate::p1::{cech_hyper, euler_check, expected_euler, ext_quiver_sheaf};
use crate::twisted::{
    apply_d, build_extension, check_resolution_exactness, delta_matrix, ext1_classes, ext_report, hom_space,
    is_split_extension, lift_beta, random_beta,
};

use instance::{build_instance, parse_document, sheaf_document, vector_document, Instance, Mode};
use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_INCOMPATIBLE: i32 = 4;
pub const EXIT_CHECK_FAILED: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Incompatible(_) => EXIT_INCOMPATIBLE,
        Error::Internal(_) => EXIT_CHECK_FAILED,
        _ => EXIT_VALIDATION,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "quivhom",
    version,
    about = "Hom and Ext of twisted quiver representations and sheaves"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hom and Ext groups through the long exact sequence.
    Ext(PairArgs),
    /// Exactness of the truncated standard resolution and the lifting algorithm.
    Check(CheckArgs),
    /// Hypercohomology of the two-term complex on the projective line.
    Hyper(PairArgs),
    /// Print a random instance file.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
struct PairArgs {
    file: PathBuf,
    module_v: String,
    /// Defaults to MODULE_V.
    module_w: Option<String>,
    /// Recompute by an independent method and compare.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    module_v: String,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Seed for the random cochain fed to the lifting algorithm.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Vector)]
    mode: Mode,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    max_arrows: Option<usize>,
    /// Vertex dimension (vector) or bundle rank (p1).
    #[arg(long)]
    max_dim: Option<usize>,
    /// Twist dimension (vector) or largest absolute twist (p1).
    #[arg(long)]
    max_twist: Option<usize>,
}

fn init_logging() -> Result<()> {
    let level = match std::env::var("QUIVHOM_LOG").as_deref() {
        Err(_) | Ok("quiet") => log::LevelFilter::Off,
        Ok("info") => log::LevelFilter::Info,
        Ok("debug") => log::LevelFilter::Debug,
        Ok(other) => {
            return Err(Error::Validation(format!(
                "QUIVHOM_LOG: expected quiet, info or debug, found `{other}`"
            )))
        }
    };
    // a second call in the same process keeps the first logger
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .try_init();
    log::set_max_level(level);
    Ok(())
}

/// Runs one invocation. `args` excludes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("quivhom".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{e}");
            return code;
        }
    };
    if let Err(e) = init_logging() {
        let _ = writeln!(err, "error: {e}");
        return exit_code(&e);
    }
    let echo = args.join(" ");
    match dispatch(&cli, echo, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli, echo: String, out: &mut dyn Write) -> Result<i32> {
    if let Command::Gen(g) = &cli.command {
        let text = generate(g)?;
        out.write_all(text.as_bytes()).map_err(io_error)?;
        return Ok(EXIT_OK);
    }
    let file = match &cli.command {
        Command::Ext(p) | Command::Hyper(p) => &p.file,
        Command::Check(c) => &c.file,
        Command::Gen(_) => unreachable!("handled above"),
    };
    let bytes = std::fs::read(file).map_err(|e| Error::Validation(format!("{}: {e}", file.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| Error::Parse(format!("byte offset {}: invalid UTF-8", e.valid_up_to())))?;
    let doc = parse_document(text)?;
    let spec = doc.field.spec()?;
    let digest = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    log::info!("loaded {} ({} mode, field {spec})", file.display(), doc.mode.name());
    let report = match spec {
        FieldSpec::Rationals => command(Rationals, cli, &doc, echo, digest)?,
        FieldSpec::Prime(p) => command(PrimeField::new(p)?, cli, &doc, echo, digest)?,
    };
    let rendered = if cli.json { report.to_json() } else { report.to_text() };
    out.write_all(rendered.as_bytes()).map_err(io_error)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn io_error(e: std::io::Error) -> Error {
    Error::Validation(format!("cannot write output: {e}"))
}

fn command<F: Field>(f: F, cli: &Cli, doc: &instance::InstanceDoc, echo: String, digest: String) -> Result<Report> {
    let inst = build_instance(f, doc)?;
    let mut report = Report::new(echo, digest, f.spec().to_string(), inst.mode.name().to_string());
    match &cli.command {
        Command::Ext(p) => ext(&inst, p, &mut report)?,
        Command::Hyper(p) => hyper(&inst, p, &mut report)?,
        Command::Check(c) => check(&inst, c, &mut report)?,
        Command::Gen(_) => unreachable!("handled by dispatch"),
    }
    Ok(report)
}

fn ext<F: Field>(inst: &Instance<F>, p: &PairArgs, report: &mut Report) -> Result<()> {
    let w_name = p.module_w.as_deref().unwrap_or(&p.module_v);
    match inst.mode {
        Mode::Vector => {
            let (v, w) = (inst.vector(&p.module_v)?, inst.vector(w_name)?);
            let r = ext_report(v, w)?;
            report.set("ext0", r.ext0);
            report.set("ext1", r.ext1);
            report.set("ext2", r.ext2);
            report.set("h0_f", r.h0_f);
            report.set("h0_g", r.h0_g);
            report.set("rank_delta0", r.rank_delta0);
            report.sequence = r.trace();
            if p.verify {
                let q = v.quiver();
                let hom = hom_space(v, w)?.len() as i64;
                let vert: i64 = (0..q.n_vertices()).map(|i| (v.dim(i) * w.dim(i)) as i64).sum();
                let arr: i64 = (0..q.n_arrows())
                    .map(|a| (v.twist().dim(a) * v.dim(q.tail(a)) * w.dim(q.head(a))) as i64)
                    .sum();
                report.check(
                    "euler_identity",
                    hom - vert + arr == r.ext1 as i64,
                    format!("{hom} - {vert} + {arr} = {}", r.ext1),
                );
                let zero = vec![v.field().zero(); delta_matrix(v, w)?.rows()];
                let split = is_split_extension(&build_extension(v, w, &zero)?, v, w)?;
                report.check("zero_class_splits", split, "");
                let classes = ext1_classes(v, w)?;
                let mut nonsplit = 0;
                for c in &classes {
                    if !is_split_extension(&build_extension(v, w, c)?, v, w)? {
                        nonsplit += 1;
                    }
                }
                report.check(
                    "basis_classes_do_not_split",
                    nonsplit == classes.len(),
                    format!("{nonsplit} of {}", classes.len()),
                );
            }
        }
        Mode::P1 => {
            let (v, w) = (inst.sheaf(&p.module_v)?, inst.sheaf(w_name)?);
            let r = ext_quiver_sheaf(v, w)?;
            report.set("ext0", r.ext0);
            report.set("ext1", r.ext1);
            report.set("ext2", r.ext2);
            report.set("h0_f", r.h0_f);
            report.set("h0_g", r.h0_g);
            report.set("h1_f", r.h1_f);
            report.set("h1_g", r.h1_g);
            report.set("rank_delta0", r.rank_delta0);
            report.set("rank_delta1", r.rank_delta1);
            report.set("euler", r.euler());
            report.sequence = r.trace();
            if p.verify {
                let h = cech_hyper(v, w)?;
                report.check(
                    "les_equals_cech",
                    h.dims() == r.dims(),
                    format!("{:?} vs {:?}", r.dims(), h.dims()),
                );
                report.check(
                    "euler_identity",
                    euler_check(v, w)?,
                    format!("{} = {}", r.euler(), expected_euler(v, w)),
                );
            }
        }
    }
    Ok(())
}

fn hyper<F: Field>(inst: &Instance<F>, p: &PairArgs, report: &mut Report) -> Result<()> {
    if inst.mode != Mode::P1 {
        return Err(Error::Incompatible("hyper needs a p1-mode instance".into()));
    }
    let w_name = p.module_w.as_deref().unwrap_or(&p.module_v);
    let (v, w) = (inst.sheaf(&p.module_v)?, inst.sheaf(w_name)?);
    let h = cech_hyper(v, w)?;
    log::debug!("Cech total complex dims {:?}, window {}", h.total_dims, h.window);
    report.set("hh0", h.hh0);
    report.set("hh1", h.hh1);
    report.set("hh2", h.hh2);
    report.set("window", h.window);
    report.set("total_dims", h.total_dims.to_vec());
    report.set("rank_d0", h.rank_d0);
    report.set("rank_d1", h.rank_d1);
    if p.verify {
        let r = ext_quiver_sheaf(v, w)?;
        report.check(
            "cech_equals_les",
            h.dims() == r.dims(),
            format!("{:?} vs {:?}", h.dims(), r.dims()),
        );
    }
    Ok(())
}

fn check<F: Field>(inst: &Instance<F>, c: &CheckArgs, report: &mut Report) -> Result<()> {
    if inst.mode != Mode::Vector {
        return Err(Error::Incompatible("check needs a vector-mode instance".into()));
    }
    let v = inst.vector(&c.module_v)?;
    let e = check_resolution_exactness(v, c.max_degree)?;
    report.set("max_degree", c.max_degree);
    report.set("rank_eps", e.rank_eps);
    report.set("rank_d", e.rank_d);
    report.set("middle_dim", e.middle_dim);
    report.set("right_dim", e.right_dim);
    report.check(
        "eps_injective",
        e.eps_injective,
        format!("rank {} = {}", e.rank_eps, v.total_dim()),
    );
    report.check(
        "ker_d_eq_im_eps",
        e.ker_d_eq_im_eps,
        format!("nullity {} = {}", e.middle_dim - e.rank_d, v.total_dim()),
    );
    report.check(
        "d_surjective",
        e.d_surjective,
        format!("rank {} = {}", e.rank_d, e.right_dim),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let beta = random_beta(v, c.max_degree, &mut rng);
    let lifted = match lift_beta(v, &beta) {
        Ok(alpha) => v.quiver().n_arrows() == 0 || apply_d(v, &alpha)? == beta,
        Err(Error::Internal(_)) => false,
        Err(e) => return Err(e),
    };
    report.check("lift_round_trip", lifted, format!("seed {}", c.seed));
    Ok(())
}

fn positive(name: &str, v: Option<usize>, default: usize) -> Result<usize> {
    match v {
        Some(0) => Err(Error::Validation(format!("--{name}: bound must be positive"))),
        Some(n) => Ok(n),
        None => Ok(default),
    }
}

fn generate(g: &GenArgs) -> Result<String> {
    let f = PrimeField::new(101)?;
    let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
    let doc = match g.mode {
        Mode::Vector => {
            let d = VectorBounds::default();
            let b = VectorBounds {
                max_vertices: positive("max-vertices", g.max_vertices, d.max_vertices)?,
                max_arrows: positive("max-arrows", g.max_arrows, d.max_arrows)?,
                max_dim: positive("max-dim", g.max_dim, d.max_dim)?,
                max_twist: positive("max-twist", g.max_twist, d.max_twist)?,
            };
            let (v, w) = random_vector_pair(&mut rng, f, &b);
            vector_document(&[("V", &v), ("W", &w)])
        }
        Mode::P1 => {
            let d = SheafBounds::default();
            let b = SheafBounds {
                max_vertices: positive("max-vertices", g.max_vertices, d.max_vertices)?,
                max_arrows: positive("max-arrows", g.max_arrows, d.max_arrows)?,
                max_rank: positive("max-dim", g.max_dim, d.max_rank)?,
                max_twist: positive("max-twist", g.max_twist, d.max_twist as usize)? as i64,
            };
            let (v, w) = random_sheaf_pair(&mut rng, f, &b);
            sheaf_document(&[("V", &v), ("W", &w)])
        }
    };
    Ok(serde_json::to_string_pretty(&doc).expect("documents serialise") + "\n")
}

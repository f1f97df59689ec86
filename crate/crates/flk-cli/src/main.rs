mod common;
mod verify;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use common::{build_algebra, load_any, parse_list, weight_string, AlgSpec, AnyAlgebra};
use flk_core::algebras::{
    associated_graded, build_dividedpower_kernel_a1, build_small_quantum, pbw_filtration,
    KernelPart, Part,
};
use flk_core::cohomology::{
    cobar_f2_check, graded, minimal_resolution, restriction_on_cohomology, simple_root_embedding,
    torus_invariant_betti,
};
use flk_core::repr::{baby_verma, character, simple_head, Character};
use flk_core::rootdata::{RootDatum, Weight};
use flk_core::scalars::{make_field, Cyclo, Field, Gf};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "flk",
    version,
    about = "Small quantum groups and Frobenius–Lusztig kernels at roots of unity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an algebra and write its dump.
    Build(BuildArgs),
    /// Betti numbers of a dumped algebra, optionally with generator weights.
    Betti(BettiArgs),
    /// Character of a baby Verma module (or of its simple head).
    Verma(VermaArgs),
    /// Dimensions and characters of all simple modules with restricted highest weight.
    Simples(SimplesArgs),
    /// Restriction H^n(big) → H^n(small) along a simple-root embedding.
    Restrict(RestrictArgs),
    /// Checks that the degree-two cochain f₂ of a generator is a cocycle.
    CocycleCheck(CocycleArgs),
    /// Runs a verification suite described by a TOML file.
    Verify(verify::VerifyArgs),
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Order of the root of unity (odd).
    #[arg(long, default_value_t = 5)]
    ell: u64,
    /// Characteristic; 0 selects Q(ξ).
    #[arg(long, default_value_t = 11)]
    p: u64,
    /// Frobenius–Lusztig level.
    #[arg(long, default_value_t = 0)]
    r: u32,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long = "type")]
    root_type: String,
    #[command(flatten)]
    field: FieldArgs,
    /// u, b or g (U, B, G for divided-power kernels).
    #[arg(long, default_value = "u")]
    part: String,
    /// Build the tower algebra instead.
    #[arg(long)]
    tower: bool,
    /// Tower generators (0-based, comma separated) to truncate.
    #[arg(long, default_value = "")]
    kill: String,
    /// Pass to the associated graded algebra of the PBW filtration.
    #[arg(long)]
    gr: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the dump to stdout.
    #[arg(long)]
    dump_json: bool,
}

#[derive(Args)]
struct BettiArgs {
    #[arg(long)]
    alg: PathBuf,
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// Add the multiset of generator weights (dual weights of the classes).
    #[arg(long)]
    weights: bool,
    /// Also count torus-invariant classes for this modulus (p^r ℓ).
    #[arg(long)]
    invariant: Option<i64>,
    /// Internal-degree cutoff for infinite algebras.
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VermaArgs {
    #[arg(long = "type", default_value = "A1")]
    root_type: String,
    #[command(flatten)]
    field: FieldArgs,
    /// Highest weight in fundamental coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Print the character of the dual module.
    #[arg(long)]
    dual: bool,
    /// Print the simple head instead of the Verma module.
    #[arg(long)]
    simple: bool,
}

#[derive(Args)]
struct SimplesArgs {
    #[arg(long = "type", default_value = "A1")]
    root_type: String,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RestrictArgs {
    #[arg(long, default_value = "A2")]
    big: String,
    #[arg(long, default_value = "A1")]
    small: String,
    /// Simple root (1-based) carrying the small algebra.
    #[arg(long, default_value_t = 1)]
    root: usize,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Report invariant classes for this modulus (default ℓ).
    #[arg(long)]
    modulus: Option<i64>,
}

#[derive(Args)]
struct CocycleArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 5)]
    ell: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Generator index: 0 is F, 1 is F(ℓ), …
    #[arg(long, default_value_t = 0)]
    generator: usize,
    /// Use the associated graded algebra.
    #[arg(long)]
    gr: bool,
    /// Perturb f₂ on one pair; the check then succeeds when δf₂ ≠ 0 is detected.
    #[arg(long)]
    mutate: bool,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn char_string(ch: &Character) -> String {
    ch.iter()
        .map(|(w, m)| format!("{}:{m}", weight_string(w)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_build(a: BuildArgs) -> Result<()> {
    let spec = AlgSpec {
        root_type: a.root_type,
        ell: a.field.ell,
        p: a.field.p,
        r: a.field.r,
        part: a.part,
        tower: a.tower,
        kill: parse_list(&a.kill)?,
        gr: a.gr,
    };
    let alg = build_algebra(&spec, common::cache_dir(None).as_deref())?;
    let json = alg.to_json()?;
    if let Some(p) = &a.out {
        std::fs::write(p, &json).with_context(|| format!("writing {}", p.display()))?;
    }
    if a.dump_json {
        println!("{json}");
    } else {
        println!(
            "built {} dim={} tabulated={}",
            alg.describe(),
            alg.dim(),
            alg.tabulated()
        );
    }
    Ok(())
}

fn betti_rows<K: Field>(
    alg: &flk_core::algebras::BasedAlgebra<K>,
    a: &BettiArgs,
) -> Result<Vec<Vec<String>>> {
    let res = minimal_resolution(graded(alg)?, a.max_degree, a.cutoff)?;
    let inv = a
        .invariant
        .map(|m| torus_invariant_betti(&res, m))
        .transpose()?;
    let mut header = vec!["n".to_string(), "b_n".to_string()];
    if inv.is_some() {
        header.push("invariant".into());
    }
    if a.weights {
        header.push("weights".into());
    }
    let mut rows = vec![header];
    for (n, b) in res.betti().into_iter().enumerate() {
        let mut row = vec![n.to_string(), b.to_string()];
        if let Some(v) = &inv {
            row.push(v[n].to_string());
        }
        if a.weights {
            let mut ms: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
            for w in res.class_weights(n) {
                *ms.entry(w).or_default() += 1;
            }
            row.push(char_string(&ms));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn cmd_betti(a: BettiArgs) -> Result<()> {
    let rows = match load_any(&a.alg)? {
        AnyAlgebra::Gf(alg) => betti_rows(&alg, &a)?,
        AnyAlgebra::Q(alg) => betti_rows(&alg, &a)?,
    };
    emit(&a.out, &csv_string(rows)?)
}

fn verma_g<K: Field>(k: &K, t: &str, r: u32) -> Result<flk_core::algebras::BasedAlgebra<K>> {
    if r == 0 {
        Ok(build_small_quantum(
            &RootDatum::from_type_str(t)?,
            k,
            Part::G,
        )?)
    } else {
        if t != "A1" {
            bail!("divided-power kernels with r ≥ 1 are available for A1 only");
        }
        Ok(build_dividedpower_kernel_a1(k, r, KernelPart::G)?)
    }
}

fn verma_text<K: Field>(k: &K, a: &VermaArgs) -> Result<String> {
    let g = verma_g(k, &a.root_type, a.field.r)?;
    let lam = Weight(parse_list(&a.lambda)?);
    let z = baby_verma(&g, &lam)?;
    let (dim, ch) = if a.simple {
        let (l, _) = simple_head(&z);
        (l.dim(), character(&l, a.dual))
    } else {
        (z.dim(), character(&z, a.dual))
    };
    let mut s = format!("dim {dim}\n");
    for (w, m) in &ch {
        s.push_str(&format!("{}:{m}\n", weight_string(w)));
    }
    Ok(s)
}

fn cmd_verma(a: VermaArgs) -> Result<()> {
    let text = if a.field.p == 0 {
        verma_text(&Cyclo::new(&make_field(0, a.field.ell)?)?, &a)?
    } else {
        verma_text(&Gf::new(&make_field(a.field.p, a.field.ell)?)?, &a)?
    };
    emit(&None, &text)
}

fn simples_rows<K: Field>(k: &K, a: &SimplesArgs) -> Result<Vec<Vec<String>>> {
    let rd = RootDatum::from_type_str(&a.root_type)?;
    let g = verma_g(k, &a.root_type, a.field.r)?;
    let mut rows = vec![vec![
        "lambda".to_string(),
        "dim".to_string(),
        "character".to_string(),
    ]];
    for lam in rd.restricted_weights(a.field.p, a.field.r, a.field.ell) {
        let (l, ch) = simple_head(&baby_verma(&g, &lam)?);
        rows.push(vec![
            weight_string(&lam.0),
            l.dim().to_string(),
            char_string(&ch),
        ]);
    }
    Ok(rows)
}

fn cmd_simples(a: SimplesArgs) -> Result<()> {
    let rows = if a.field.p == 0 {
        simples_rows(&Cyclo::new(&make_field(0, a.field.ell)?)?, &a)?
    } else {
        simples_rows(&Gf::new(&make_field(a.field.p, a.field.ell)?)?, &a)?
    };
    emit(&a.out, &csv_string(rows)?)
}

fn restrict_json<K: Field>(k: &K, a: &RestrictArgs) -> Result<serde_json::Value> {
    let small = build_small_quantum(&RootDatum::from_type_str(&a.small)?, k, Part::U)?;
    let big = build_small_quantum(&RootDatum::from_type_str(&a.big)?, k, Part::U)?;
    let emb = simple_root_embedding(&small, &big, a.root)?;
    let modulus = a.modulus.unwrap_or(a.field.ell as i64);
    let reps = restriction_on_cohomology(&small, &big, &emb, a.max_degree, Some(modulus))?;
    let degrees: Vec<serde_json::Value> = reps
        .iter()
        .map(|r| {
            serde_json::json!({
                "degree": r.degree,
                "rank": r.rank,
                "invariant_rank": r.invariant_rank,
                "big_weights": r.big_weights,
                "small_weights": r.small_weights,
                "surviving": r.surviving,
                "dying": r.dying,
            })
        })
        .collect();
    Ok(
        serde_json::json!({ "big": a.big, "small": a.small, "root": a.root, "modulus": modulus, "degrees": degrees }),
    )
}

fn cmd_restrict(a: RestrictArgs) -> Result<()> {
    let v = if a.field.p == 0 {
        restrict_json(&Cyclo::new(&make_field(0, a.field.ell)?)?, &a)?
    } else {
        restrict_json(&Gf::new(&make_field(a.field.p, a.field.ell)?)?, &a)?
    };
    emit(&None, &(serde_json::to_string_pretty(&v)? + "\n"))
}

fn cmd_cocycle(a: CocycleArgs) -> Result<bool> {
    if a.p == 0 {
        bail!("divided-power kernels need positive characteristic");
    }
    let k = Gf::new(&make_field(a.p, a.ell)?)?;
    let mut alg = build_dividedpower_kernel_a1(&k, a.r, KernelPart::U)?;
    if a.gr {
        alg = associated_graded(&alg, &pbw_filtration(&alg)?, 0)?;
    }
    let rep = cobar_f2_check(&alg, a.generator, a.mutate)?;
    emit(
        &None,
        &(serde_json::to_string_pretty(&serde_json::json!({
            "generator": rep.generator,
            "eps": rep.eps,
            "triples": rep.triples,
            "mutation": rep.mutation,
            "witness": rep.witness,
            "is_cocycle": rep.is_cocycle,
        }))? + "\n"),
    )?;
    Ok(rep.is_cocycle != a.mutate)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Cmd::Build(a) => cmd_build(a).map(|_| true),
        Cmd::Betti(a) => cmd_betti(a).map(|_| true),
        Cmd::Verma(a) => cmd_verma(a).map(|_| true),
        Cmd::Simples(a) => cmd_simples(a).map(|_| true),
        Cmd::Restrict(a) => cmd_restrict(a).map(|_| true),
        Cmd::CocycleCheck(a) => cmd_cocycle(a),
        Cmd::Verify(a) => verify::run(a),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use mutants_core::builders::{homology_poincare, mutant_complex, MutantSpec, Space, Variant};
use mutants_core::engine::degreewise::degreewise_report;
use mutants_core::engine::symbolic::{betti_table, cohomology_presentations};
use mutants_core::verify::{
    default_degree_bound, default_suite, intersection_form, realizability_obstruction, run_suite, verify_doubling,
    verify_koszul, verify_mutant, EngineChoice, VerificationReport, VerifyOptions,
};
use mutants_core::{expected_cohomology, CoefficientRing, PresentationDescriptor};

#[derive(Parser)]
#[command(name = "mutants", version, about = "Build and verify equivariant cohomology models")]
struct Cli {
    /// Worker threads for independent models and degrees.
    #[arg(long, global = true, env = "MUTANTS_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a model, run both engines and check the expected decomposition.
    Verify(VerifyArgs),
    /// Hilbert functions, Betti tables, Poincaré polynomials, intersection forms.
    Report(ReportArgs),
    /// Double a presentation read from a JSON descriptor and verify the result.
    Doubling(DoublingArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModelKind {
    Koszul,
    MutantTorus,
    #[value(name = "mutant-2torus")]
    Mutant2torus,
    #[value(name = "example-3-3")]
    Example33,
    Doubling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Symbolic,
    Degreewise,
    Both,
}

impl From<Engine> for EngineChoice {
    fn from(e: Engine) -> Self {
        match e {
            Engine::Symbolic => EngineChoice::Symbolic,
            Engine::Degreewise => EngineChoice::Degreewise,
            Engine::Both => EngineChoice::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Torus,
    TwoTorus,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: Option<ModelKind>,
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Number of variables for `koszul`, the shift for `doubling`.
    #[arg(long)]
    n: Option<i64>,
    /// Q, Z, F2 or Fp:<p>.
    #[arg(long)]
    coeff: Option<CoefficientRing>,
    #[arg(long)]
    max_degree: Option<i64>,
    /// JSON presentation descriptor for `--model doubling`.
    #[arg(long)]
    presentation: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Engine::Both)]
    engine: Engine,
    /// Run the default suite instead of a single model.
    #[arg(long, conflicts_with = "model")]
    all: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ReportArgs {
    /// Poincaré polynomial of X, Y or Z.
    #[arg(long)]
    poincare: Option<Space>,
    #[arg(long, value_enum, default_value_t = VariantArg::Torus)]
    variant: VariantArg,
    #[arg(long)]
    intersection_form: bool,
    /// Degree-one obstruction for a model's expected cohomology.
    #[arg(long, value_enum)]
    obstruction: Option<ModelKind>,
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct DoublingArgs {
    /// JSON presentation descriptor.
    file: PathBuf,
    #[arg(long)]
    n: Option<i64>,
    #[command(flatten)]
    out: Output,
}

fn mutant_spec(kind: ModelKind, args: &ModelArgs) -> anyhow::Result<MutantSpec> {
    Ok(match kind {
        ModelKind::MutantTorus => MutantSpec::torus(args.r, args.coeff.unwrap_or(CoefficientRing::Rationals))?,
        ModelKind::Mutant2torus => {
            let coeff = args.coeff.unwrap_or(CoefficientRing::PrimeField(2));
            if coeff != CoefficientRing::PrimeField(2) {
                bail!("mutant-2torus is defined over F2 only, got {coeff}");
            }
            MutantSpec::two_torus(args.r)?
        }
        ModelKind::Example33 => MutantSpec::example_3_3(args.coeff.unwrap_or(CoefficientRing::Rationals)),
        other => bail!("{other:?} is not a stretched Koszul model"),
    })
}

fn read_presentation(path: &Path) -> anyhow::Result<mutants_core::ModulePresentation> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(PresentationDescriptor::from_json(&text)?.to_presentation()?)
}

fn emit(out: &Output, json: &serde_json::Value, text: &str) -> anyhow::Result<()> {
    let body = match out.format {
        Format::Json => serde_json::to_string_pretty(json)? + "\n",
        Format::Text => text.to_string(),
    };
    match &out.output {
        Some(path) => fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn emit_reports(out: &Output, reports: &[VerificationReport]) -> anyhow::Result<bool> {
    let pass = reports.iter().all(VerificationReport::passed);
    let text: String = reports.iter().map(VerificationReport::to_text).collect::<Vec<_>>().join("\n");
    let json = if let [single] = reports {
        single.to_json()
    } else {
        json!({
            "overall": if pass { "pass" } else { "fail" },
            "reports": reports.iter().map(VerificationReport::to_json).collect::<Vec<_>>(),
        })
    };
    emit(out, &json, &text)?;
    Ok(pass)
}

fn cmd_verify(args: &VerifyArgs) -> anyhow::Result<bool> {
    let opts = VerifyOptions { max_degree: args.model.max_degree, engine: args.engine.into() };
    if args.all {
        let reports = run_suite(&default_suite(), &opts)?;
        return emit_reports(&args.out, &reports);
    }
    let Some(kind) = args.model.model else { bail!("pass --model or --all") };
    let report = match kind {
        ModelKind::Koszul => {
            let n = args.model.n.unwrap_or(3);
            if !(1..=16).contains(&n) {
                bail!("--n must be between 1 and 16, got {n}");
            }
            verify_koszul(n as usize, 2, args.model.coeff.unwrap_or(CoefficientRing::Rationals), &opts)?
        }
        ModelKind::Doubling => {
            let path = args.model.presentation.as_deref().context("--model doubling needs --presentation")?;
            let p = read_presentation(path)?;
            let label = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
            verify_doubling(&p, args.model.n, &label)?
        }
        kind => verify_mutant(&mutant_spec(kind, &args.model)?, &opts)?,
    };
    emit_reports(&args.out, &[report])
}

fn cmd_report(args: &ReportArgs) -> anyhow::Result<bool> {
    let r = args.model.r;
    if let Some(space) = args.poincare {
        let variant = match args.variant {
            VariantArg::Torus => Variant::Torus,
            VariantArg::TwoTorus => Variant::TwoTorus,
        };
        let p = homology_poincare(space, r as u32, variant)?;
        let dim = p.degree().unwrap_or(0);
        let json = json!({
            "space": format!("{space:?}"),
            "r": r,
            "variant": format!("{:?}", args.variant),
            "polynomial": p.to_string(),
            "total": p.total(),
            "symmetric": p.is_symmetric(dim),
        });
        emit(&args.out, &json, &format!("{p}\n"))?;
        return Ok(true);
    }
    if args.intersection_form {
        let f = intersection_form(r as u32)?;
        let rows: Vec<String> =
            f.gram.iter().map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
        let text =
            format!("{}x{} Gram, {} hyperbolic blocks\n{}\n", f.gram.len(), f.gram.len(), f.blocks, rows.join("\n"));
        emit(&args.out, &serde_json::to_value(&f)?, &text)?;
        return Ok(f.passes());
    }
    if let Some(kind) = args.obstruction {
        let expected = expected_cohomology(&mutant_spec(kind, &args.model)?)?;
        let rep = realizability_obstruction(&expected);
        let mut json = serde_json::to_value(&rep)?;
        json["module"] = json!(expected.to_string());
        emit(&args.out, &json, &format!("{}\n", rep.message))?;
        return Ok(true);
    }
    let Some(kind) = args.model.model else { bail!("pass --poincare, --intersection-form, --obstruction or --model") };
    let spec = mutant_spec(kind, &args.model)?;
    let c = mutant_complex(&spec)?;
    let d = args.model.max_degree.unwrap_or_else(|| default_degree_bound(&spec));
    let betti: Vec<_> = if spec.coefficients.is_field() {
        cohomology_presentations(&c)?.iter().map(|h| betti_table(h).map(|b| b.to_json())).collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    let dw = degreewise_report(&c, spec.coefficients, d)?;
    let hilbert: Vec<Vec<i64>> = (0..c.len()).map(|p| dw.hilbert_function(p)).collect();
    let text = hilbert
        .iter()
        .enumerate()
        .map(|(p, h)| format!("H at position {p}: {h:?}"))
        .chain(std::iter::once(format!("total: {:?}", dw.total_hilbert_function())))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n";
    let json = json!({
        "model": spec.label(),
        "degree_bound": d,
        "betti": betti,
        "hilbert": hilbert,
        "total": dw.total_hilbert_function(),
        "degreewise": dw.to_json(),
    });
    emit(&args.out, &json, &text)?;
    Ok(true)
}

fn cmd_doubling(args: &DoublingArgs) -> anyhow::Result<bool> {
    let p = read_presentation(&args.file)?;
    let label = args.file.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
    let report = verify_doubling(&p, args.n, &label)?;
    emit_reports(&args.out, &[report])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Report(a) => cmd_report(a),
        Command::Doubling(a) => cmd_doubling(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coaf::cone::{co_volume, CoconvexBody};
use coaf::family::{
    af_form, co_af_form, co_volume_polynomial, mixed_volume, volume_polynomial, AfForms,
    CoconvexFamily, ConvexFamily,
};
use coaf::form::SymmetricForm;
use coaf::generate::{
    gen_coconvex_body, gen_coconvex_family, gen_cone, gen_convex_body, gen_convex_family,
};
use coaf::lift::{
    lift, verify_identity_q, verify_identity_v, verify_signature_argument, IdentityReport,
};
use coaf::poly::HomogeneousPolynomial;
use coaf::polytope::Polyhedron;
use coaf::rng::SplitMix64;
use coaf::scalar;
use coaf::suite::{run_suite, ExperimentConfig, Property, TrialReport};
use coaf::volume::volume;

#[derive(Parser)]
#[command(
    name = "coaf",
    version,
    about = "Exact mixed volumes and Aleksandrov–Fenchel forms of convex and coconvex polytopes"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Body,
    Cone,
    Coconvex,
    Family,
    Cofamily,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a random body, cone or family.
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Volume of a polyhedron or a coconvex body.
    Volume { input: PathBuf },
    /// Mixed volume of d polyhedra, given as separate files or one JSON array.
    Mixedvol {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Volume polynomial of a convex or coconvex family.
    Volpoly { input: PathBuf },
    /// Bilinear and quadratic forms of a convex family.
    Afform { input: PathBuf },
    /// Bilinear and quadratic forms of a coconvex family.
    CoAfform { input: PathBuf },
    /// Signature of a symmetric form.
    Signature { input: PathBuf },
    /// Check the lifted-family identities for a coconvex family.
    LiftVerify {
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Run a property suite.
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        /// Comma-separated property names.
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<String>>,
    },
}

struct Failure(String);

impl From<coaf::Error> for Failure {
    fn from(e: coaf::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure(format!("invalid {what}: {e}")))
}

fn has_cone(v: &Value) -> bool {
    v.get("cone").is_some()
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn csv_rows(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn scalar_out(name: &str, x: &coaf::Scalar, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({ name: scalar::format(x) })),
        Format::Csv => csv_rows(&[name], vec![vec![scalar::format(x)]]),
    }
}

fn poly_out(p: &HomogeneousPolynomial, format: Format) -> String {
    match format {
        Format::Json => pretty(p),
        Format::Csv => {
            let mut header: Vec<String> = (1..=p.nvars()).map(|i| format!("a{i}")).collect();
            header.push("coeff".into());
            let mut terms: Vec<_> = p.terms().collect();
            terms.reverse();
            let rows = terms
                .into_iter()
                .map(|(e, c)| {
                    let mut r: Vec<String> = e.iter().map(u32::to_string).collect();
                    r.push(scalar::format(c));
                    r
                })
                .collect();
            csv_rows(&header.iter().map(String::as_str).collect::<Vec<_>>(), rows)
        }
    }
}

fn matrix_rows(f: &SymmetricForm) -> Vec<Vec<String>> {
    f.rows()
        .iter()
        .map(|r| r.iter().map(scalar::format).collect())
        .collect()
}

fn forms_out(f: &AfForms, format: Format) -> String {
    let sig = f.quadratic.signature();
    match format {
        Format::Json => pretty(&json!({
            "bilinear": f.bilinear,
            "quadratic": f.quadratic,
            "quadratic_poly": f.quadratic_poly,
            "signature": sig,
        })),
        Format::Csv => {
            let n = f.bilinear.n();
            let header: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
            csv_rows(
                &header.iter().map(String::as_str).collect::<Vec<_>>(),
                matrix_rows(&f.bilinear),
            )
        }
    }
}

fn suite_config(
    config: Option<PathBuf>,
    seed: Option<u64>,
    dim: Option<usize>,
    n: Option<usize>,
    trials: Option<usize>,
    properties: Option<Vec<String>>,
) -> Result<ExperimentConfig, Failure> {
    let mut cfg = match config {
        Some(path) => parse(read_json(&path)?, "config")?,
        None => ExperimentConfig::new(2, 2, 50, 0),
    };
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(d) = dim {
        cfg.dim = d;
    }
    if let Some(n) = n {
        cfg.n_generators = n;
    }
    if let Some(t) = trials {
        cfg.n_trials = t;
    }
    if let Some(ps) = properties {
        cfg.suite = ps
            .iter()
            .map(|p| p.parse::<Property>())
            .collect::<Result<_, _>>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn report_out(r: &TrialReport, format: Format) -> String {
    match format {
        Format::Json => pretty(r),
        Format::Csv => csv_rows(
            &["property", "pass", "fail"],
            r.properties
                .iter()
                .map(|(k, c)| vec![k.clone(), c.pass.to_string(), c.fail.to_string()])
                .collect(),
        ),
    }
}

fn lift_out(reports: &[IdentityReport], format: Format) -> String {
    match format {
        Format::Json => pretty(&reports),
        Format::Csv => csv_rows(
            &["identity", "status", "samples"],
            reports
                .iter()
                .map(|r| {
                    let v = serde_json::to_value(r).expect("serializable");
                    vec![
                        v["identity"].as_str().unwrap_or_default().to_string(),
                        v["status"].as_str().unwrap_or_default().to_string(),
                        r.samples.to_string(),
                    ]
                })
                .collect(),
        ),
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Gen {
            kind,
            dim,
            n,
            bound,
            seed,
        } => {
            if format == Format::Csv {
                return Err(Failure("gen only emits json".into()));
            }
            let mut rng = SplitMix64::new(seed);
            let v = match kind {
                Kind::Body => serde_json::to_value(gen_convex_body(&mut rng, dim, bound)?),
                Kind::Cone => serde_json::to_value(gen_cone(&mut rng, dim, bound)?),
                Kind::Coconvex => {
                    let cone = gen_cone(&mut rng, dim, bound)?;
                    serde_json::to_value(gen_coconvex_body(&mut rng, &cone, bound)?)
                }
                Kind::Family => serde_json::to_value(gen_convex_family(&mut rng, dim, n, bound)?),
                Kind::Cofamily => {
                    serde_json::to_value(gen_coconvex_family(&mut rng, dim, n, bound)?)
                }
            }
            .expect("serializable");
            Ok((pretty(&v), true))
        }
        Command::Volume { input } => {
            let v = read_json(&input)?;
            let vol = if has_cone(&v) {
                co_volume(&parse::<CoconvexBody>(v, "coconvex body")?, None)?
            } else {
                volume(&parse::<Polyhedron>(v, "polyhedron")?)?
            };
            Ok((scalar_out("volume", &vol, format), true))
        }
        Command::Mixedvol { inputs } => {
            let bodies: Vec<Polyhedron> = if let [single] = inputs.as_slice() {
                match read_json(single)? {
                    Value::Array(items) => items
                        .into_iter()
                        .map(|v| parse(v, "polyhedron"))
                        .collect::<Result<_, _>>()?,
                    v => vec![parse(v, "polyhedron")?],
                }
            } else {
                inputs
                    .iter()
                    .map(|p| parse(read_json(p)?, "polyhedron"))
                    .collect::<Result<_, _>>()?
            };
            let mv = mixed_volume(&bodies)?;
            Ok((scalar_out("mixed_volume", &mv, format), true))
        }
        Command::Volpoly { input } => {
            let v = read_json(&input)?;
            let p = if has_cone(&v) {
                co_volume_polynomial(&parse::<CoconvexFamily>(v, "coconvex family")?)?
            } else {
                volume_polynomial(&parse::<ConvexFamily>(v, "convex family")?)?
            };
            Ok((poly_out(&p, format), true))
        }
        Command::Afform { input } => {
            let fam: ConvexFamily = parse(read_json(&input)?, "convex family")?;
            Ok((forms_out(&af_form(&fam)?, format), true))
        }
        Command::CoAfform { input } => {
            let fam: CoconvexFamily = parse(read_json(&input)?, "coconvex family")?;
            Ok((forms_out(&co_af_form(&fam)?, format), true))
        }
        Command::Signature { input } => {
            let f: SymmetricForm = parse(read_json(&input)?, "symmetric form")?;
            let s = f.signature();
            let text = match format {
                Format::Json => pretty(&s),
                Format::Csv => csv_rows(
                    &["pos", "neg", "zero"],
                    vec![vec![
                        s.pos.to_string(),
                        s.neg.to_string(),
                        s.zero.to_string(),
                    ]],
                ),
            };
            Ok((text, true))
        }
        Command::LiftVerify { input, samples } => {
            let fam: CoconvexFamily = parse(read_json(&input)?, "coconvex family")?;
            let lf = lift(&fam)?;
            let reports = vec![
                verify_identity_v(&lf, &lf.default_samples(samples)?)?,
                verify_identity_q(&lf)?,
                verify_signature_argument(&lf)?,
            ];
            let ok = reports.iter().all(IdentityReport::passed);
            Ok((lift_out(&reports, format), ok))
        }
        Command::Suite {
            config,
            seed,
            dim,
            n,
            trials,
            properties,
        } => {
            let cfg = suite_config(config, seed, dim, n, trials, properties)?;
            let report = run_suite(&cfg)?;
            Ok((report_out(&report, format), report.all_passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((text, ok)) => {
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, &text) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("property failure");
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

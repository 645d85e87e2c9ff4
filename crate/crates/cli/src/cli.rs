//! Argument handling and the report produced by each command.
//!
//! Exit codes: 0 on success or a passing verdict, 1 when a verdict or an
//! identity fails, 2 on usage errors and invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use mckay_core::blowup::{blow_up, crepant_candidates, mckay_check, BlowupSpec, McKayReport};
use mckay_core::cohomology::{cr_report, CrReport, IdentityCheck};
use mckay_core::ehrhart::{
    delta_of_face, dilate_count, dilate_count_fast, numerator_from_dilates, trim,
};
use mckay_core::exact::{parse_rat, Rat};
use mckay_core::generate::generate_test_models;
use mckay_core::sectors::{local_group_order, quasi_sl_report, sectors};
use mckay_core::Model;
use serde_json::Value;

use crate::json::{
    age_value, canonical, ints_value, model_to_json, poly_value, rat_value, read_model,
    usizes_value,
};
use crate::object;

#[derive(Debug, Parser)]
#[command(
    name = "mckay",
    version,
    about = "Chen-Ruan Betti numbers and crepant blowups of quasitoric orbifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a model file and summarize it.
    Validate { model: PathBuf },
    /// List faces with their f- and h-vectors.
    Faces { model: PathBuf },
    /// List every sector with its Box element, age and height.
    Sectors { model: PathBuf },
    /// Ordinary and Chen-Ruan Betti numbers.
    Betti { model: PathBuf },
    /// Full Chen-Ruan report with identity checks.
    Cr { model: PathBuf },
    /// Ehrhart data of the simplices Δ_F.
    Ehrhart {
        model: PathBuf,
        /// Restrict to one face, e.g. `0,2`.
        #[arg(long, value_delimiter = ',')]
        face: Option<Vec<usize>>,
        /// Cross-check lattice-point counts by exhaustive enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Blow up a face and write the new model.
    Blowup {
        model: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_weight)]
        weights: Vec<Rat>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Check that a crepant blowup preserves Chen-Ruan Betti numbers.
    Mckay {
        model: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        face: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_weight)]
        weights: Vec<Rat>,
    },
    /// Generate models and run every identity and McKay check on them.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Maximum number of blowups applied to each base simplex.
        #[arg(long, default_value_t = 3)]
        budget: usize,
    },
}

fn parse_weight(s: &str) -> Result<Rat, String> {
    parse_rat(s.trim()).ok_or_else(|| format!("`{s}` is not a rational number"))
}

/// A failed command: message for stderr, optional report for stdout.
struct Failure {
    code: i32,
    message: String,
    report: Option<Value>,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            report: None,
        }
    }
}

/// The report and exit code of a command that ran to completion.
struct Done {
    report: Value,
    code: i32,
}

impl Done {
    fn ok(report: Value) -> Self {
        Done { report, code: 0 }
    }

    fn verdict(report: Value, passed: bool) -> Self {
        Done {
            report,
            code: if passed { 0 } else { 1 },
        }
    }
}

/// Runs one invocation. `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Validate { model } => validate(&model),
        Command::Faces { model } => load(&model).map(|m| Done::ok(faces(&m))),
        Command::Sectors { model } => load(&model).map(|m| Done::ok(sectors_report(&m))),
        Command::Betti { model } => load(&model).and_then(|m| betti(&m)),
        Command::Cr { model } => load(&model).and_then(|m| cr(&m)),
        Command::Ehrhart {
            model,
            face,
            oracle,
        } => load(&model).and_then(|m| ehrhart(&m, face, oracle)),
        Command::Blowup {
            model,
            face,
            weights,
            output,
        } => load(&model).and_then(|m| blowup(&m, face, weights, output.as_deref())),
        Command::Mckay {
            model,
            face,
            weights,
        } => load(&model).and_then(|m| mckay(&m, face, weights)),
        Command::Fuzz {
            seed,
            count,
            n,
            budget,
        } => fuzz(seed, count, n, budget),
    };
    match result {
        Ok(done) => {
            let _ = out.write_all(canonical(&done.report).as_bytes());
            done.code
        }
        Err(f) => {
            if let Some(report) = f.report {
                let _ = out.write_all(canonical(&report).as_bytes());
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &Path) -> Result<Model, Failure> {
    read_model(path).map_err(|e| Failure::invalid(e.to_string()))
}

fn validate(path: &Path) -> Result<Done, Failure> {
    match read_model(path) {
        Ok(m) => Ok(Done::ok(object! {
            "valid" => true,
            "name" => m.name().map(String::from),
            "n" => m.n(),
            "m" => m.m(),
            "vertices" => m.vertices().len(),
            "smooth" => m.is_smooth(),
            "quasi_sl" => quasi_sl_value(&m),
        })),
        Err(crate::json::ParseError::Invalid(e)) => Err(Failure {
            code: 2,
            message: "model failed validation".into(),
            report: Some(object! {
                "valid" => false,
                "violations" => e.violations.iter().map(|v| Value::from(v.to_string())).collect::<Vec<_>>(),
            }),
        }),
        Err(e) => Err(Failure {
            code: 2,
            message: e.to_string(),
            report: Some(
                object! { "valid" => false, "violations" => vec![Value::from(e.to_string())] },
            ),
        }),
    }
}

/// `{"holds": bool, "witness": null | {face, coeffs, age}}`.
fn quasi_sl_value(m: &Model) -> Value {
    let witness = quasi_sl_report(m).witness.map(|(face, g)| {
        object! {
            "face" => usizes_value(&face),
            "coeffs" => g.coeffs.iter().map(rat_value).collect::<Vec<_>>(),
            "age" => age_value(&g.age),
        }
    });
    object! { "holds" => witness.is_none(), "witness" => witness }
}

fn require_quasi_sl(m: &Model) -> Result<(), Failure> {
    match quasi_sl_report(m).witness {
        None => Ok(()),
        Some((face, g)) => Err(Failure {
            code: 2,
            message: format!(
                "model is not quasi-SL: age {} at face {face:?}",
                mckay_core::exact::rat_to_string(&g.age)
            ),
            report: Some(object! { "quasi_sl" => quasi_sl_value(m) }),
        }),
    }
}

fn faces(m: &Model) -> Value {
    let list: Vec<Value> = m
        .faces()
        .iter()
        .map(|f| {
            object! {
                "facet_set" => usizes_value(&f.facet_set),
                "dim" => f.dim,
                "vertices" => usizes_value(&f.vertex_ids),
                "f_vector" => ints_value(&m.f_vector(f)),
                "h_vector" => ints_value(&m.h_vector(f)),
            }
        })
        .collect();
    let p = m.polytope();
    object! {
        "faces" => list,
        "f_vector" => ints_value(&m.f_vector(p)),
        "h_vector" => ints_value(&m.h_vector(p)),
    }
}

fn sectors_report(m: &Model) -> Value {
    let list: Vec<Value> = sectors(m)
        .into_iter()
        .map(|s| {
            object! {
                "face" => usizes_value(&s.face),
                "coeffs" => s.element.coeffs.iter().map(rat_value).collect::<Vec<_>>(),
                "point" => ints_value(&s.element.point),
                "age" => age_value(&s.element.age),
                "height" => s.element.height,
            }
        })
        .collect();
    Value::Array(list)
}

fn report_for(m: &Model) -> Result<CrReport, Failure> {
    require_quasi_sl(m)?;
    cr_report(m).map_err(|e| Failure::invalid(e.to_string()))
}

fn betti(m: &Model) -> Result<Done, Failure> {
    let r = report_for(m)?;
    let report = object! {
        "pp" => poly_value(&r.pp),
        "pp_cr" => poly_value(r.pp_cr()),
        "betti" => ints_value(&r.pp.expand_even()),
        "betti_cr" => ints_value(&r.pp_cr().expand_even()),
        "routes_agree" => r.routes_agree(),
    };
    Ok(Done::verdict(report, r.routes_agree()))
}

fn identity_value(c: &IdentityCheck) -> Value {
    object! {
        "name" => c.name.clone(),
        "face" => c.face.as_deref().map(usizes_value),
        "lhs" => poly_value(&c.lhs),
        "rhs" => poly_value(&c.rhs),
        "passed" => c.passed(),
    }
}

fn cr_value(r: &CrReport) -> Value {
    let sectors: Vec<Value> = r
        .per_sector
        .iter()
        .map(|s| {
            object! {
                "face" => usizes_value(&s.face),
                "coeffs" => s.element.coeffs.iter().map(rat_value).collect::<Vec<_>>(),
                "age" => s.age,
                "contribution" => poly_value(&s.contribution),
            }
        })
        .collect();
    let failures: Vec<Value> = r
        .identities
        .iter()
        .filter(|c| !c.passed())
        .map(identity_value)
        .collect();
    object! {
        "pp" => poly_value(&r.pp),
        "pp_cr" => poly_value(r.pp_cr()),
        "routes" => object! {
            "direct" => poly_value(&r.pp_cr_direct),
            "closures" => poly_value(&r.pp_cr_closures),
            "strata" => poly_value(&r.pp_cr_strata),
        },
        "routes_agree" => r.routes_agree(),
        "sectors" => sectors,
        "identities" => object! {
            "morestrat" => r.identity_passed("morestrat"),
            "h_identity" => r.identity_passed("h_identity"),
            "newpon_-1" => r.identity_passed("newpon_-1"),
            "newpon" => r.identity_passed("newpon"),
            "gdecom" => r.gdecom_failures.is_empty(),
        },
        "failures" => failures,
    }
}

fn cr(m: &Model) -> Result<Done, Failure> {
    let r = report_for(m)?;
    Ok(Done::verdict(cr_value(&r), r.all_passed()))
}

fn ehrhart(m: &Model, face: Option<Vec<usize>>, oracle: bool) -> Result<Done, Failure> {
    require_quasi_sl(m)?;
    let targets: Vec<_> = match &face {
        Some(f) => {
            let mut f = f.clone();
            f.sort_unstable();
            vec![m
                .face(&f)
                .ok_or_else(|| Failure::invalid(format!("{f:?} is not a face")))?]
        }
        None => m.faces().iter().filter(|f| f.codim() > 0).collect(),
    };
    let mut all_agree = true;
    let mut reports = Vec::new();
    for f in targets {
        let sx = delta_of_face(f, m).map_err(|e| Failure::invalid(e.to_string()))?;
        let d = sx.verts.len();
        let dilates = (0..=d as u64)
            .map(|k| dilate_count_fast(&sx, k))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::invalid(e.to_string()))?;
        let psi =
            numerator_from_dilates(&dilates, d).map_err(|e| Failure::invalid(e.to_string()))?;
        let mut report = object! {
            "face" => usizes_value(&f.facet_set),
            "psi" => ints_value(&trim(&psi)),
            "order" => crate::json::int_value(&local_group_order(f, m)),
            "dilates" => ints_value(&dilates),
        };
        if oracle {
            let agrees = (0..=d as u64).all(|k| dilate_count(&sx, k) == dilates[k as usize]);
            all_agree &= agrees;
            report
                .as_object_mut()
                .expect("object")
                .insert("oracle_agrees".into(), Value::Bool(agrees));
        }
        reports.push(report);
    }
    let report = if face.is_some() {
        reports.pop().expect("one face")
    } else {
        Value::Array(reports)
    };
    Ok(Done::verdict(report, all_agree))
}

/// Pairs facets with weights and sorts by facet index.
fn make_spec(face: Vec<usize>, weights: Vec<Rat>) -> Result<BlowupSpec, Failure> {
    if face.len() != weights.len() {
        return Err(Failure::invalid(format!(
            "{} facets but {} weights",
            face.len(),
            weights.len()
        )));
    }
    let mut pairs: Vec<(usize, Rat)> = face.into_iter().zip(weights).collect();
    pairs.sort_by_key(|p| p.0);
    let (face, weights) = pairs.into_iter().unzip();
    Ok(BlowupSpec::new(face, weights))
}

fn blowup(
    m: &Model,
    face: Vec<usize>,
    weights: Vec<Rat>,
    output: Option<&Path>,
) -> Result<Done, Failure> {
    let spec = make_spec(face, weights)?;
    let blown = blow_up(m, &spec).map_err(|e| Failure::invalid(e.to_string()))?;
    let json = model_to_json(&blown);
    match output {
        Some(path) => {
            std::fs::write(path, canonical(&json))
                .map_err(|e| Failure::invalid(format!("cannot write {}: {e}", path.display())))?;
            Ok(Done::ok(object! {
                "output" => path.display().to_string(),
                "m" => blown.m(),
                "vertices" => blown.vertices().len(),
                "quasi_sl" => quasi_sl_value(&blown),
            }))
        }
        None => Ok(Done::ok(json)),
    }
}

fn mckay_value(r: &McKayReport) -> Value {
    object! {
        "face" => usizes_value(&r.spec.face),
        "weights" => r.spec.weights.iter().map(rat_value).collect::<Vec<_>>(),
        "lambda0" => ints_value(&r.lambda0),
        "blown_up" => model_to_json(&r.blown),
        "before" => cr_value(&r.before),
        "after" => r.after.as_ref().map(cr_value),
        "pp_cr_before" => poly_value(r.before.pp_cr()),
        "pp_cr_after" => r.after.as_ref().map(|a| poly_value(a.pp_cr())),
        "quasi_sl_after" => r.quasi_sl_after,
        "pp_cr_equal" => r.pp_cr_equal(),
        "wdelta" => r.wdelta.iter().map(identity_value).collect::<Vec<_>>(),
        "invalid_subdivisions" => r.invalid_subdivisions.iter().map(|f| usizes_value(f)).collect::<Vec<_>>(),
        "positively_omnioriented" => object! {
            "before" => r.positive_before,
            "after" => r.positive_after,
        },
        "verdict" => r.verdict(),
    }
}

fn mckay(m: &Model, face: Vec<usize>, weights: Vec<Rat>) -> Result<Done, Failure> {
    require_quasi_sl(m)?;
    let spec = make_spec(face, weights)?;
    let r = mckay_check(m, &spec).map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(Done::verdict(mckay_value(&r), r.verdict()))
}

fn fuzz(seed: u64, count: usize, n: usize, budget: usize) -> Result<Done, Failure> {
    let generated = generate_test_models(seed, count, n, budget)
        .map_err(|e| Failure::invalid(e.to_string()))?;
    let mut all_passed = !generated.exhausted;
    let mut entries = Vec::new();
    for m in &generated.models {
        let r = cr_report(m).map_err(|e| Failure::invalid(e.to_string()))?;
        let mut checked = 0usize;
        let mut failed = Vec::new();
        for spec in crepant_candidates(m) {
            checked += 1;
            let ok = mckay_check(m, &spec).is_ok_and(|x| x.verdict());
            if !ok {
                failed.push(usizes_value(&spec.face));
            }
        }
        let passed = r.all_passed() && failed.is_empty();
        all_passed &= passed;
        entries.push(object! {
            "name" => m.name().map(String::from),
            "m" => m.m(),
            "vertices" => m.vertices().len(),
            "pp_cr" => poly_value(r.pp_cr()),
            "identities_passed" => r.all_passed(),
            "crepant_blowups" => checked,
            "failed_blowups" => failed,
            "passed" => passed,
        });
    }
    let report = object! {
        "seed" => seed,
        "n" => n,
        "count" => generated.models.len(),
        "exhausted" => generated.exhausted,
        "models" => entries,
        "all_passed" => all_passed,
    };
    Ok(Done::verdict(report, all_passed))
}

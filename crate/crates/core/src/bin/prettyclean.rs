use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use prettyclean::campaign::{run_campaign, CampaignConfig};
use prettyclean::construction::{analyze_codim2, build_codim2_clean, build_pretty_clean, construction_json, error_name, ConfigKind};
use prettyclean::decomposition::{ass_primes, decomposition_json, prime_height_dim};
use prettyclean::filtration::{dimfilt_json, is_scm};
use prettyclean::oracle::{depth_json, is_cm};
use prettyclean::stanley::{stanley_json, stanley_report, to_stanley};
use prettyclean::{parse_ideal, Ambient, ConstructionError, MonomialIdeal};

/// Monomial ideals in K[x,y,z,w]: decompositions, depth, dimension
/// filtrations, clean and pretty clean filtrations, Stanley decompositions.
#[derive(Parser)]
#[command(name = "prettyclean", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x,y,z,w")]
    vars: String,
    /// Degree bound for Hilbert function output and checks.
    #[arg(long, global = true)]
    tmax: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible and primary decomposition.
    Decompose(IdealArg),
    /// Associated primes with height and dimension.
    Ass(IdealArg),
    /// Dimension filtration, D_2 = (u), sequential Cohen-Macaulayness.
    Dimfilt(IdealArg),
    /// Depth, dimension and Betti numbers.
    Depth(IdealArg),
    /// Cohen-Macaulay and sequentially Cohen-Macaulay tests with the configuration condition.
    Check(IdealArg),
    /// A verified clean (height-2 unmixed) or pretty clean filtration.
    Filtrate(IdealArg),
    /// Stanley decomposition from the pretty clean filtration.
    Stanley(IdealArg),
    /// Randomised cross-validation campaign.
    Fuzz(FuzzArgs),
}

#[derive(Args)]
struct IdealArg {
    /// e.g. "(x^2, x*y)" or "intersect((x^2,y),(x,z))".
    ideal: String,
}

#[derive(Args)]
struct FuzzArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max_exp: u32,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_comps: u64,
    /// Comma-separated kinds, e.g. Path3,Cycle4.
    #[arg(long, value_delimiter = ',')]
    kinds: Option<Vec<ConfigKind>>,
}

/// What a subcommand produced: JSON, a text rendering, and whether the answer was negative.
struct Outcome {
    json: Value,
    text: String,
    negative: bool,
}

impl Outcome {
    fn plain(json: Value, text: String) -> Self {
        Self { json, text, negative: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.text.trim_end());
            }
            if out.negative {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, ConstructionError> {
    let ambient = Ambient::from_list(&cli.vars)?;
    let ideal = |a: &IdealArg| parse_ideal(&a.ideal, &ambient);
    match &cli.command {
        Command::Decompose(a) => {
            let i = ideal(a)?;
            let j = decomposition_json(&i)?;
            let text = lines("primary components", j["primary"].as_array(), |c| {
                format!("{}  radical {}", ideal_text(&c["gens"]), prime_text(&c["radical"]))
            });
            Ok(Outcome::plain(j, text))
        }
        Command::Ass(a) => {
            let i = ideal(a)?;
            let rows: Vec<Value> = ass_primes(&i)?
                .iter()
                .map(|p| {
                    let hd = prime_height_dim(p, i.n());
                    json!({"prime": p.names(&ambient), "height": hd.height, "dim": hd.dim})
                })
                .collect();
            let text = lines("associated primes", Some(&rows), |r| {
                format!("{}  height {} dim {}", prime_text(&r["prime"]), r["height"], r["dim"])
            });
            Ok(Outcome::plain(json!({"ass": rows}), text))
        }
        Command::Dimfilt(a) => {
            let i = ideal(a)?;
            let j = dimfilt_json(&i)?;
            let mut text = lines("dimension filtration", j["dimfilt"].as_array(), |l| {
                format!("D_{} = {}", l["level"], ideal_text(&l["gens"]))
            });
            text += &format!("u = {}\n", j["u"].as_str().unwrap_or("?"));
            if let Some(scm) = j.get("scm") {
                text += &format!("sequentially Cohen-Macaulay: {scm}\n");
            }
            Ok(Outcome::plain(j, text))
        }
        Command::Depth(a) => {
            let i = ideal(a)?;
            let j = depth_json(&i, cli.tmax)?;
            let mut text = format!("depth {} dim {} pd {} cm {}\n", j["depth"], j["dim"], j["pd"], j["cm"]);
            if let Some(h) = j.get("hilbert") {
                text += &format!("hilbert {h}\n");
            }
            Ok(Outcome::plain(j, text))
        }
        Command::Check(a) => {
            let i = ideal(a)?;
            require_proper(&i)?;
            let cm = is_cm(&i)?;
            let scm = is_scm(&i)?;
            let pure = ass_primes(&i)?.iter().all(|p| p.height() == 2);
            let (config, condition) = if pure {
                let (c, r) = analyze_codim2(&i)?;
                (json!(c.kind.name()), r.to_json())
            } else {
                (Value::Null, Value::Null)
            };
            let mut text = format!("cm {cm}\nscm {scm}\n");
            if pure {
                text += &format!("config {}\n", config.as_str().unwrap_or("?"));
                for c in condition["clauses"].as_array().into_iter().flatten() {
                    text += &format!("  {}: {}\n", c["test"].as_str().unwrap_or("?"), c["holds"]);
                }
                text += &format!("condition {}\n", condition["satisfied"]);
            }
            Ok(Outcome {
                json: json!({"cm": cm, "scm": scm, "config": config, "condition": condition}),
                text,
                negative: !scm,
            })
        }
        Command::Filtrate(a) => {
            let i = ideal(a)?;
            require_proper(&i)?;
            let pure = ass_primes(&i)?.iter().all(|p| p.height() == 2);
            let (result, analysis) = if pure {
                (build_codim2_clean(&i), Some(analyze_codim2(&i)?))
            } else {
                (build_pretty_clean(&i), None)
            };
            let negative = negative_answer(&result)?;
            let j = construction_json(analysis.as_ref().map(|(c, r)| (c, r)), &ambient, &result);
            let text = match &result {
                Ok(pf) => {
                    let mut t = format!("S/{}\n", pf.base);
                    for s in &pf.steps {
                        t += &format!("  + {}  prime {}\n", s.u.to_string_in(&ambient), s.prime.to_string_in(&ambient));
                    }
                    t + &format!("clean {} pretty_clean {}\n", j["filtration"]["clean"], j["filtration"]["pretty_clean"])
                }
                Err(e) => format!("{}: {e}\n", error_name(e)),
            };
            Ok(Outcome { json: j, text, negative })
        }
        Command::Stanley(a) => {
            let i = ideal(a)?;
            require_proper(&i)?;
            let result = build_pretty_clean(&i);
            if negative_answer(&result)? {
                let e = result.expect_err("negative answers are errors");
                return Ok(Outcome {
                    json: json!({"spaces": null, "error": error_name(&e)}),
                    text: format!("{}: {e}\n", error_name(&e)),
                    negative: true,
                });
            }
            let sd = to_stanley(&result?)?;
            let report = stanley_report(&i, &sd)?;
            let mut text = String::new();
            for s in &sd.spaces {
                let free: Vec<&str> = s.free_vars().into_iter().map(|v| ambient.name(v)).collect();
                text += &format!("{}·K[{}]\n", s.u.to_string_in(&ambient), free.join(","));
            }
            text += &format!("sdepth {} depth {} stanley_ok {}\n", report.sdepth, report.depth, report.stanley_ok);
            Ok(Outcome::plain(stanley_json(&sd, &report), text))
        }
        Command::Fuzz(f) => {
            let cfg = CampaignConfig {
                seed: f.seed,
                count: f.count as usize,
                max_exp: f.max_exp,
                max_comps: f.max_comps as usize,
                kinds: f.kinds.clone(),
                tmax: cli.tmax.unwrap_or(8),
            };
            let report = run_campaign(&cfg);
            if report.total_mismatches > 0 {
                eprintln!("{} mismatches", report.total_mismatches);
            }
            let mut text = format!("samples {} height-2 unmixed {}\n", report.samples, report.height_two_pure);
            for t in report.kinds.iter().filter(|t| t.samples > 0) {
                text += &format!(
                    "  {:<12} samples {:>5} cm {:>5} condition {:>5} construction {:>5} mismatches {}\n",
                    t.kind.map(|k| k.name()).unwrap_or("?"),
                    t.samples,
                    t.cm_true,
                    t.condition_true,
                    t.construction_ok,
                    t.mismatches
                );
            }
            text += &format!(
                "scm {} pretty_clean {} stanley_ok {} mismatches {}\n",
                report.scm.scm_true, report.scm.pretty_clean_ok, report.scm.stanley_ok, report.total_mismatches
            );
            for c in &report.counterexamples {
                text += &format!("  #{} {} [{}] {}\n", c.index, c.ideal, c.check, c.detail);
            }
            Ok(Outcome::plain(report.to_json(), text))
        }
    }
}

fn require_proper(i: &MonomialIdeal) -> Result<(), ConstructionError> {
    if i.is_zero() || i.is_unit() {
        return Err(prettyclean::AlgebraError::DegenerateIdeal(i.to_string()).into());
    }
    Ok(())
}

/// `Ok(true)` for the mathematically negative answers, the error itself for real failures.
fn negative_answer<T>(result: &Result<T, ConstructionError>) -> Result<bool, ConstructionError> {
    match result {
        Ok(_) => Ok(false),
        Err(ConstructionError::NotCohenMacaulay | ConstructionError::NotSequentiallyCm) => Ok(true),
        Err(e) => Err(e.clone()),
    }
}

fn lines(title: &str, rows: Option<&Vec<Value>>, f: impl Fn(&Value) -> String) -> String {
    let mut out = format!("{title}:\n");
    for r in rows.into_iter().flatten() {
        out += &format!("  {}\n", f(r));
    }
    out
}

fn ideal_text(gens: &Value) -> String {
    let g: Vec<&str> = gens.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    if g.is_empty() {
        "(0)".into()
    } else {
        format!("({})", g.join(", "))
    }
}

fn prime_text(vars: &Value) -> String {
    let v: Vec<&str> = vars.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    format!("({})", v.join(","))
}

//! `infodiv` — entropies, divergence measures, bounded cost-benefit values,
//! prefix codes, curve sweeps, and the acceptance checks, from the shell.
//!
//! PMFs are given as comma-separated decimals (`0.99,0.01`) or as a path to
//! a JSON file holding an array of numbers. Exit codes: 0 success, 1
//! verification failure, 2 usage or validation error.

mod output;

use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use infodiv::analysis::{self, Grid, McdaTable, SweepSpec};
use infodiv::coding;
use infodiv::cost_benefit::{self, ProcessStep, Scenario};
use infodiv::divergence::{self, Measure};
use infodiv::entropy;
use infodiv::prob::Pmf;
use infodiv::verify;

use output::{fmt_sig, json_number, Sink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "infodiv", version, about, max_term_width = 100)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Significant digits for printed values (plain and csv output)
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shannon entropy, maximum entropy and alphabet size of a PMF
    Entropy {
        /// PMF literal `p1,p2,...` or path to a JSON array file
        pmf: String,
    },
    /// Evaluate a divergence measure between two PMFs
    Divergence {
        /// Measure name: kl, kl_scaled_<s>, js, dnew_k<k>, dncm_k<k>,
        /// minkowski_k<k>; or a bare family name plus --k / --scale
        measure: String,
        /// Reference-side PMF (the candidate being scored)
        p: String,
        /// Second PMF (the reference it diverges from)
        q: String,
        #[command(flatten)]
        params: MeasureParams,
    },
    /// Benefit of a lossy step: alphabet compression minus distortion
    Benefit {
        /// Input-alphabet PMF
        #[arg(long)]
        input: String,
        /// Output-alphabet PMF
        #[arg(long)]
        output: String,
        /// PMF reconstructed over the input alphabet
        #[arg(long)]
        reconstruction: String,
        /// kl for the original measure; js/dnew/dncm for the bounded form
        #[arg(long, default_value = "kl")]
        measure: String,
        #[command(flatten)]
        params: MeasureParams,
    },
    /// Distortion of each candidate PMF in a scenario file
    Scenario {
        /// Path to a scenario JSON file
        file: String,
        #[arg(long, default_value = "kl")]
        measure: String,
        #[command(flatten)]
        params: MeasureParams,
    },
    /// Sweep measures over the binary family q1 = (1-a)p1 + a(1-p1)
    Sweep {
        /// Comma-separated measure names
        #[arg(long, value_delimiter = ',', required = true)]
        measures: Vec<String>,
        /// Comma-separated alpha values in [0, 1] (default 0.0,0.1,...,1.0)
        #[arg(long, value_delimiter = ',')]
        alphas: Option<Vec<f64>>,
        /// Grid: linear:<lo>:<hi>:<step> or log:<lo>:<hi>:<points-per-decade>
        #[arg(long)]
        grid: Option<String>,
    },
    /// Huffman code of a PMF, with literal lengths and averages
    Huffman {
        /// PMF literal or JSON array file
        pmf: String,
    },
    /// Sums and eliminations of a measure-comparison score table
    Mcda {
        /// Path to a score-table JSON file
        file: String,
    },
    /// Run the acceptance checks; exits 1 if any fail
    Verify,
}

#[derive(Debug, Args)]
struct MeasureParams {
    /// Power parameter for dnew/dncm/minkowski given as bare names
    #[arg(long)]
    k: Option<f64>,
    /// Scale factor for kl_scaled given as a bare name
    #[arg(long)]
    scale: Option<f64>,
}

fn fail(message: impl Into<String>) -> infodiv::Error {
    infodiv::Error::BadTable(message.into())
}

/// Parses a PMF from a comma-separated literal, falling back to reading the
/// argument as a JSON array file.
fn parse_pmf(arg: &str) -> Result<Pmf, infodiv::Error> {
    let literal: Option<Vec<f64>> = arg
        .split(',')
        .map(|part| part.trim().parse::<f64>().ok())
        .collect();
    if let Some(values) = literal {
        return Pmf::new(values);
    }
    let text = fs::read_to_string(arg).map_err(|e| {
        fail(format!(
            "'{arg}' is neither a PMF literal nor a readable file: {e}"
        ))
    })?;
    let values: Vec<f64> = serde_json::from_str(&text)?;
    Pmf::new(values)
}

fn resolve_measure(name: &str, params: &MeasureParams) -> Result<Measure, infodiv::Error> {
    let measure = match (name, params.k, params.scale) {
        ("dnew", Some(k), None) => Measure::NewCommutative { k },
        ("dncm", Some(k), None) => Measure::NewNoncommutative { k },
        ("minkowski", Some(k), None) => Measure::Minkowski { k },
        ("kl" | "kl_scaled", None, Some(scale)) => Measure::ScaledKl { scale },
        (_, None, None) => Measure::from_str(name)?,
        _ => {
            return Err(fail(format!(
                "--k/--scale only combine with the bare names dnew, dncm, minkowski, kl_scaled (got '{name}')"
            )))
        }
    };
    measure.validate()?;
    Ok(measure)
}

fn parse_grid(spec: &str) -> Result<Grid, infodiv::Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || {
        fail(format!(
            "grid '{spec}' is not linear:<lo>:<hi>:<step> or log:<lo>:<hi>:<ppd>"
        ))
    };
    if parts.len() != 4 {
        return Err(bad());
    }
    let lo: f64 = parts[1].parse().map_err(|_| bad())?;
    let hi: f64 = parts[2].parse().map_err(|_| bad())?;
    match parts[0] {
        "linear" => Ok(Grid::Linear {
            lo,
            hi,
            step: parts[3].parse().map_err(|_| bad())?,
        }),
        "log" => Ok(Grid::Log {
            lo,
            hi,
            points_per_decade: parts[3].parse().map_err(|_| bad())?,
        }),
        _ => Err(bad()),
    }
}

fn unit_of(measure: Measure) -> &'static str {
    if measure.is_entropic() {
        "bits"
    } else {
        "none"
    }
}

fn run(cli: &Cli) -> Result<u8, infodiv::Error> {
    let mut sink = Sink::new(cli.out.as_deref());
    let digits = cli.precision.max(1);
    let fmt = |x: f64| fmt_sig(x, digits);

    match &cli.command {
        Command::Entropy { pmf } => {
            let p = parse_pmf(pmf)?;
            let h = entropy::shannon_entropy(&p);
            let h_max = entropy::max_entropy(p.len());
            match cli.format {
                Format::Plain => {
                    sink.line(format!("n: {}", p.len()));
                    sink.line(format!("entropy: {}", fmt(h)));
                    sink.line(format!("max_entropy: {}", fmt(h_max)));
                }
                Format::Csv => {
                    sink.line("n,entropy,max_entropy");
                    sink.line(format!("{},{},{}", p.len(), fmt(h), fmt(h_max)));
                }
                Format::Json => sink.json(serde_json::json!({
                    "n": p.len(),
                    "entropy": json_number(h),
                    "max_entropy": json_number(h_max),
                })),
            }
        }

        Command::Divergence {
            measure,
            p,
            q,
            params,
        } => {
            let measure = resolve_measure(measure, params)?;
            let p = parse_pmf(p)?;
            let q = parse_pmf(q)?;
            let value = divergence::evaluate(measure, &p, &q, None)?;
            let bound = measure.upper_bound(p.len().max(2));
            match cli.format {
                Format::Plain => {
                    sink.line(format!("measure: {measure}"));
                    sink.line(format!("value: {}", fmt(value)));
                    sink.line(format!("unit: {}", unit_of(measure)));
                    sink.line(format!("upper_bound: {}", fmt(bound)));
                }
                Format::Csv => {
                    sink.line("measure,value,unit,upper_bound");
                    sink.line(format!(
                        "{measure},{},{},{}",
                        fmt(value),
                        unit_of(measure),
                        fmt(bound)
                    ));
                }
                Format::Json => sink.json(serde_json::json!({
                    "measure": measure.to_string(),
                    "value": json_number(value),
                    "unit": unit_of(measure),
                    "upper_bound": json_number(bound),
                })),
            }
        }

        Command::Benefit {
            input,
            output,
            reconstruction,
            measure,
            params,
        } => {
            let measure = resolve_measure(measure, params)?;
            let step = ProcessStep::new(
                parse_pmf(input)?,
                parse_pmf(output)?,
                parse_pmf(reconstruction)?,
            )?;
            let ac = cost_benefit::alphabet_compression(&step);
            let raw = divergence::evaluate(measure, step.reconstruction(), step.input(), None)?;
            let (term, benefit) = match measure {
                Measure::Kl => (raw, cost_benefit::benefit_kl(&step)),
                _ => {
                    let b = cost_benefit::benefit_bounded(&step, measure)?;
                    (entropy::max_entropy(step.input().len()) * raw, b)
                }
            };
            match cli.format {
                Format::Plain => {
                    sink.line(format!("measure: {measure}"));
                    sink.line(format!("alphabet_compression: {}", fmt(ac)));
                    sink.line(format!("divergence: {}", fmt(raw)));
                    sink.line(format!("distortion_term: {}", fmt(term)));
                    sink.line(format!("benefit: {}", fmt(benefit)));
                }
                Format::Csv => {
                    sink.line("measure,alphabet_compression,divergence,distortion_term,benefit");
                    sink.line(format!(
                        "{measure},{},{},{},{}",
                        fmt(ac),
                        fmt(raw),
                        fmt(term),
                        fmt(benefit)
                    ));
                }
                Format::Json => sink.json(serde_json::json!({
                    "measure": measure.to_string(),
                    "alphabet_compression": json_number(ac),
                    "divergence": json_number(raw),
                    "distortion_term": json_number(term),
                    "benefit": json_number(benefit),
                })),
            }
        }

        Command::Scenario {
            file,
            measure,
            params,
        } => {
            let measure = resolve_measure(measure, params)?;
            let text = fs::read_to_string(file)
                .map_err(|e| fail(format!("cannot read scenario file '{file}': {e}")))?;
            let scenario = Scenario::from_json(&text)?;
            let rows = cost_benefit::evaluate_scenario(&scenario, measure)?;
            match cli.format {
                Format::Plain => {
                    sink.line(format!("scenario: {}", scenario.name));
                    for (label, value) in &rows {
                        sink.line(format!("{label}: {}", fmt(*value)));
                    }
                }
                Format::Csv => {
                    sink.line("label,measure,value");
                    for (label, value) in &rows {
                        sink.line(format!("{label},{measure},{}", fmt(*value)));
                    }
                }
                Format::Json => sink.json(serde_json::json!({
                    "scenario": scenario.name,
                    "measure": measure.to_string(),
                    "distortions": rows
                        .iter()
                        .map(|(label, value)| {
                            serde_json::json!({"label": label, "value": json_number(*value)})
                        })
                        .collect::<Vec<_>>(),
                })),
            }
        }

        Command::Sweep {
            measures,
            alphas,
            grid,
        } => {
            let measures = measures
                .iter()
                .map(|name| Measure::from_str(name))
                .collect::<Result<Vec<_>, _>>()?;
            let mut spec = SweepSpec::new(measures);
            if let Some(alphas) = alphas {
                spec.alphas = alphas.clone();
            }
            if let Some(grid) = grid {
                spec.grid = parse_grid(grid)?;
            }
            let rows = analysis::sweep(&spec)?;
            match cli.format {
                // a sweep is a table either way; plain output is the CSV
                Format::Plain | Format::Csv => {
                    sink.line("measure,alpha,p1,q1,value");
                    for row in &rows {
                        sink.line(format!(
                            "{},{},{},{},{}",
                            row.measure,
                            row.alpha,
                            row.p1,
                            row.q1,
                            fmt(row.value)
                        ));
                    }
                }
                Format::Json => sink.json(
                    rows.iter()
                        .map(|row| {
                            serde_json::json!({
                                "measure": row.measure.to_string(),
                                "alpha": row.alpha,
                                "p1": row.p1,
                                "q1": row.q1,
                                "value": json_number(row.value),
                            })
                        })
                        .collect::<Vec<_>>()
                        .into(),
                ),
            }
        }

        Command::Huffman { pmf } => {
            let q = parse_pmf(pmf)?;
            let table = coding::huffman_code(&q);
            let lengths = table.lengths();
            let avg = coding::average_length(&lengths, &q)?;
            let h = entropy::shannon_entropy(&q);
            // literal lengths exist only for strictly positive PMFs
            let literal = coding::literal_lengths(&q).ok();
            let avg_literal = literal
                .as_ref()
                .map(|l| coding::average_length(l, &q))
                .transpose()?;
            let join = |l: &[usize]| {
                l.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            match cli.format {
                Format::Plain => {
                    sink.line(table.to_tsv());
                    sink.line(format!("lengths: {}", join(&lengths)));
                    sink.line(format!("avg_length: {}", fmt(avg)));
                    if let (Some(literal), Some(avg_literal)) = (&literal, avg_literal) {
                        sink.line(format!("literal_lengths: {}", join(literal)));
                        sink.line(format!("avg_literal: {}", fmt(avg_literal)));
                    }
                    sink.line(format!("entropy: {}", fmt(h)));
                }
                Format::Csv => {
                    sink.line("letter,codeword,length");
                    for (i, codeword) in table.codewords().iter().enumerate() {
                        sink.line(format!("{i},{codeword},{}", codeword.len()));
                    }
                }
                Format::Json => sink.json(serde_json::json!({
                    "codewords": table.codewords(),
                    "lengths": lengths,
                    "avg_length": json_number(avg),
                    "literal_lengths": literal,
                    "avg_literal": avg_literal.map(json_number),
                    "entropy": json_number(h),
                })),
            }
        }

        Command::Mcda { file } => {
            let text = fs::read_to_string(file)
                .map_err(|e| fail(format!("cannot read score table '{file}': {e}")))?;
            let table = McdaTable::from_json(&text)?;
            let summary = analysis::mcda_sum(&table);
            match cli.format {
                Format::Plain => {
                    for (measure, total) in &summary.totals {
                        let mark = if summary.eliminated.contains(measure) {
                            " (eliminated)"
                        } else {
                            ""
                        };
                        sink.line(format!("{measure}: {total}{mark}"));
                    }
                    let eliminated: Vec<&str> =
                        summary.eliminated.iter().map(String::as_str).collect();
                    sink.line(format!("eliminated: {}", eliminated.join(",")));
                }
                Format::Csv => {
                    sink.line("measure,sum,eliminated");
                    for (measure, total) in &summary.totals {
                        sink.line(format!(
                            "{measure},{total},{}",
                            summary.eliminated.contains(measure)
                        ));
                    }
                }
                Format::Json => sink.json(serde_json::json!({
                    "totals": summary
                        .totals
                        .iter()
                        .map(|(measure, total)| serde_json::json!({"measure": measure, "sum": total}))
                        .collect::<Vec<_>>(),
                    "eliminated": summary.eliminated.iter().collect::<Vec<_>>(),
                })),
            }
        }

        Command::Verify => {
            let reports = verify::run_all();
            let mut failed = 0;
            for report in &reports {
                sink.line(report.line());
                if !report.passed {
                    failed += 1;
                }
            }
            sink.line(format!(
                "{} of {} criteria passed",
                reports.len() - failed,
                reports.len()
            ));
            sink.finish()?;
            return Ok(if failed > 0 { 1 } else { 0 });
        }
    }

    sink.finish()?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

//! Command line entry points. Every subcommand reads the text formats from
//! `textio`, prints its result to stdout, and maps the outcome to an exit
//! status: 0 on success, 1 when a check fails (a pair does not verify, a
//! decode does not land, a sweep finds a witness, a reproduction mismatches),
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::code::{DistanceStrategy, LinearCode, WORK_BUDGET};
use crate::ecp::{ecp_search, ecp_verify, DecodeStatus, EcpDecoder};
use crate::error::{Error, Result};
use crate::gf::Felt;
use crate::harness::{
    emit_tables, field_of_order, negative_search, run_example, theorem_consequences, ExampleId,
    NegFamily, Verdict,
};
use crate::schur::product_report_budgeted;
use crate::textio;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable report text.
    Text,
    /// One key=value line per result.
    Record,
}

#[derive(Debug, Parser)]
#[command(
    name = "ecpairs",
    version,
    about = "Exact arithmetic for linear codes and their error-correcting pairs"
)]
struct Cli {
    /// Output style for results.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Seed recorded in sweep reports.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Work budget for distance and classification enumerations.
    #[arg(long, default_value_t = WORK_BUDGET, global = true)]
    budget: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Describe GF(q) for a prime-power order q.
    FieldInfo {
        /// Field order, e.g. 37 or 9.
        order: u64,
    },
    /// Exact minimum distance of a code file.
    Mindist {
        file: PathBuf,
    },
    /// Classify a code file as MDS, NMDS, AMDS, or Other.
    Classify {
        file: PathBuf,
    },
    /// Write the dual code in the code file format.
    Dual {
        file: PathBuf,
    },
    /// Delete coordinates and write the punctured code.
    Puncture {
        file: PathBuf,
        /// Coordinates to delete, 0-based, comma separated.
        #[arg(long, value_name = "LIST")]
        drop: String,
    },
    /// Componentwise product of two code files, with its bounds.
    Schur {
        file_a: PathBuf,
        file_b: PathBuf,
    },
    /// Check the four pair conditions for (A, B) against C at a given ℓ.
    EcpVerify {
        file_a: PathBuf,
        file_b: PathBuf,
        file_c: PathBuf,
        #[arg(long)]
        ell: usize,
    },
    /// Decode a received word with a verified pair.
    EcpDecode {
        file_a: PathBuf,
        file_b: PathBuf,
        file_c: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Received word, comma separated canonical integers.
        #[arg(long, value_name = "LIST")]
        word: String,
    },
    /// Search for verified pairs of C over its evaluation points.
    EcpSearch {
        file_c: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Evaluation points, comma separated; defaults to the stanza's.
        #[arg(long, value_name = "LIST")]
        alpha: Option<String>,
    },
    /// Reproduce the worked 10-coordinate examples end to end.
    PaperExamples {
        /// Run one id (ex3.1, ex4.1a, ex4.1b) instead of all three.
        id: Option<ExampleId>,
    },
    /// Evaluate every checked statement on a verified pair.
    TheoremCheck {
        file_a: PathBuf,
        file_b: PathBuf,
        file_c: PathBuf,
        #[arg(long)]
        ell: usize,
        /// Evaluation points for the shared-sequence check.
        #[arg(long, value_name = "LIST")]
        alpha: Option<String>,
    },
    /// Sweep twisted codes for pairs at forbidden parameters.
    NegativeSearch {
        /// Parameter row to hunt for: A2, A4, D4, or D7.
        #[arg(long)]
        family: NegFamily,
        /// Field order.
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Print the case tables and the per-statement conclusions.
    Tables,
}

pub fn cli_main<I: IntoIterator<Item = OsString>>(args: I) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return status;
        }
    };
    match run(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn read_input(path: &PathBuf) -> Result<textio::CodeInput> {
    textio::read_code_input(&fs::read_to_string(path)?)
}

fn read_code(path: &PathBuf) -> Result<LinearCode> {
    read_input(path)?.code()
}

/// Explicit --alpha wins over stanza points; a plain code file needs the flag.
fn resolve_alpha(input: &textio::CodeInput, flag: &Option<String>) -> Result<Vec<Felt>> {
    if let Some(list) = flag {
        return textio::parse_felts(input.field(), list);
    }
    match input.alpha() {
        Some(a) => Ok(a.to_vec()),
        None => Err(Error::BadSpec(
            "the code file carries no evaluation points; pass --alpha".into(),
        )),
    }
}

fn parse_indices(list: &str) -> Result<Vec<usize>> {
    list.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("coordinate list: expected an integer, got {t:?}")))
        })
        .collect()
}

/// Runs one parsed invocation. `Ok(false)` means the command ran but its
/// check did not pass; the caller maps that to exit status 1.
fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::FieldInfo { order } => {
            let f = field_of_order(*order)?;
            match cli.format {
                Format::Text => println!("{}", textio::field_text(&f)),
                Format::Record => println!("{}", textio::field_record(&f)),
            }
            Ok(true)
        }
        Cmd::Mindist { file } => {
            let c = read_code(file)?;
            let d = c.min_distance_budgeted(DistanceStrategy::Auto, cli.budget)?;
            match cli.format {
                Format::Text => println!("{d}"),
                Format::Record => println!(
                    "{}",
                    textio::record(&[
                        ("n", c.n().to_string()),
                        ("k", c.k().to_string()),
                        ("d", d.to_string()),
                    ])
                ),
            }
            Ok(true)
        }
        Cmd::Classify { file } => {
            let c = read_code(file)?;
            let cl = c.classify_budgeted(cli.budget)?;
            match cli.format {
                Format::Text => println!("{}", textio::class_text(&cl, c.n(), c.k())),
                Format::Record => println!("{}", textio::class_record(&cl, c.n(), c.k())),
            }
            Ok(true)
        }
        Cmd::Dual { file } => {
            print!("{}", textio::write_code(&read_code(file)?.dual()?));
            Ok(true)
        }
        Cmd::Puncture { file, drop } => {
            let c = read_code(file)?;
            print!("{}", textio::write_code(&c.puncture(&parse_indices(drop)?)?));
            Ok(true)
        }
        Cmd::Schur { file_a, file_b } => {
            let a = read_code(file_a)?;
            let b = read_code(file_b)?;
            let r = product_report_budgeted(&a, &b, cli.budget)?;
            match cli.format {
                Format::Text => println!("{}", textio::product_text(&r)),
                Format::Record => println!("{}", textio::product_record(&r)),
            }
            Ok(true)
        }
        Cmd::EcpVerify {
            file_a,
            file_b,
            file_c,
            ell,
        } => {
            let (a, b, c) = (read_code(file_a)?, read_code(file_b)?, read_code(file_c)?);
            let r = ecp_verify(&a, &b, &c, *ell)?;
            match cli.format {
                Format::Text => println!("{}", textio::ecp_report_text(&r)),
                Format::Record => println!("{}", textio::ecp_report_record(&r)),
            }
            Ok(r.is_ecp())
        }
        Cmd::EcpDecode {
            file_a,
            file_b,
            file_c,
            ell,
            word,
        } => {
            let (a, b, c) = (read_code(file_a)?, read_code(file_b)?, read_code(file_c)?);
            let y = textio::parse_felts(c.field(), word)?;
            let r = EcpDecoder::new(&a, &b, &c, *ell)?.decode(&y)?;
            match cli.format {
                Format::Text => println!("{}", textio::decode_text(&r)),
                Format::Record => println!("{}", textio::decode_record(&r)),
            }
            Ok(r.status == DecodeStatus::Decoded)
        }
        Cmd::EcpSearch { file_c, ell, alpha } => {
            let input = read_input(file_c)?;
            let c = input.code()?;
            let points = resolve_alpha(&input, alpha)?;
            let hits = ecp_search(&c, *ell, &points)?;
            match cli.format {
                Format::Text => {
                    println!("hits: {}", hits.len());
                    for (_, _, r) in &hits {
                        let case = match r.case {
                            Some(c) => c.to_string(),
                            None => "none".into(),
                        };
                        println!(
                            "  A={} B={} B⊥={} A∗B={} case {case}",
                            r.params_a, r.params_b, r.params_b_dual, r.params_prod
                        );
                    }
                }
                Format::Record => {
                    for (i, (_, _, r)) in hits.iter().enumerate() {
                        println!("hit={i} {}", textio::ecp_report_record(r));
                    }
                }
            }
            Ok(true)
        }
        Cmd::PaperExamples { id } => {
            let ids: Vec<ExampleId> = match id {
                Some(one) => vec![*one],
                None => ExampleId::ALL.to_vec(),
            };
            let mut all_pass = true;
            for id in ids {
                match run_example(id) {
                    Ok(r) => {
                        let case = r.case.expect("a reproduced example always carries its case");
                        match cli.format {
                            Format::Text => println!(
                                "PASS {id}: case {case}, A={} B⊥={} A∗B={}",
                                r.params_a, r.params_b_dual, r.params_prod
                            ),
                            Format::Record => println!(
                                "id={id} status=PASS case={case} a={} b_dual={} prod={}",
                                r.params_a, r.params_b_dual, r.params_prod
                            ),
                        }
                    }
                    Err(Error::CheckFailed(msg)) => {
                        all_pass = false;
                        match cli.format {
                            Format::Text => println!("FAIL {msg}"),
                            Format::Record => println!("id={id} status=FAIL"),
                        }
                    }
                    Err(other) => return Err(other),
                }
            }
            Ok(all_pass)
        }
        Cmd::TheoremCheck {
            file_a,
            file_b,
            file_c,
            ell,
            alpha,
        } => {
            let (a, b) = (read_code(file_a)?, read_code(file_b)?);
            let input = read_input(file_c)?;
            let c = input.code()?;
            let points = match (alpha, input.alpha()) {
                (Some(list), _) => Some(textio::parse_felts(input.field(), list)?),
                (None, Some(a)) => Some(a.to_vec()),
                (None, None) => None,
            };
            let checks = theorem_consequences(&a, &b, &c, *ell, points.as_deref())?;
            match cli.format {
                Format::Text => println!("{}", textio::checks_text(&checks)),
                Format::Record => println!("{}", textio::checks_record(&checks)),
            }
            Ok(checks.iter().all(|c| c.verdict != Verdict::Violated))
        }
        Cmd::NegativeSearch {
            family,
            q,
            n_min,
            n_max,
        } => {
            let range: RangeInclusive<usize> = *n_min..=*n_max;
            let r = negative_search(*family, *q, range, cli.seed)?;
            match cli.format {
                Format::Text => println!("{r}"),
                Format::Record => println!("{}", textio::search_record(&r)),
            }
            Ok(r.witnesses_found == 0)
        }
        Cmd::Tables => {
            print!("{}", emit_tables());
            Ok(true)
        }
    }
}

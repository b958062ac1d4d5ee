mod report;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use octic_core::arith::DEFAULT_TRIAL_BOUND;
use octic_core::families::{self, FamilyId, FiniteCatalog};
use octic_core::galois::{classify, Form, GaloisLabel, OcticInput};
use octic_core::monogenic::{check, CheckOptions, Status};
use octic_core::poly::is_irreducible_q;
use octic_core::sieve::{self, FactoredPoly, ScanMode};
use rayon::prelude::*;
use serde_json::{json, Value};

use report::{label_json, status_text, verdict_json, Report, Timer};

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "octic", version, about = "Galois groups and monogenicity of even octics")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct InputArgs {
    /// F for x^8 + a x^4 + b, G for x^8 + a x^6 + b x^4 + a x^2 + 1
    #[arg(long)]
    form: Form,
    #[arg(long, allow_hyphen_values = true)]
    a: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    b: BigInt,
}

#[derive(Subcommand)]
enum Command {
    /// Galois group of an irreducible input.
    Classify(InputArgs),
    /// Monogenicity verdict with per-prime certificates.
    Check {
        #[command(flatten)]
        input: InputArgs,
        /// Include every certificate.
        #[arg(long)]
        verbose: bool,
        /// Run the Dedekind test at every prime for G inputs.
        #[arg(long)]
        no_fast_paths: bool,
    },
    /// First members of an infinite family.
    Enumerate {
        /// F-8T9, F-8T15, F-8T17, F-8T26, G-8T9 or G-8T18
        #[arg(long)]
        family: FamilyId,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Local obstructions, rho values and the truncated constant C_G.
    Density {
        /// Product of parenthesized polynomials in t, e.g. "(4t+1)(4t+5)"
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(2..))]
        cutoff: u64,
        /// Also count squarefree values G(t) for t up to this bound.
        #[arg(long)]
        scan: Option<u64>,
        #[arg(long, default_value = "primes")]
        mode: ScanMode,
        /// Resumable record of finished scan chunks.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Check every (a, b) in a grid and write one JSON line per input.
    Scan {
        #[arg(long)]
        form: Form,
        /// Inclusive range lo..hi
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        a_range: (i64, i64),
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        b_range: (i64, i64),
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-derive every row of the shipped catalog.
    VerifyTables {
        /// Coefficient bound for the rows listing no polynomial.
        #[arg(long, default_value_t = families::NONE_ROW_BOUND)]
        bound: i64,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad lower end: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad upper end: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

struct Outcome {
    args: Value,
    result: Value,
    text: String,
    code: u8,
}

fn options(fast_paths: bool) -> Result<CheckOptions, String> {
    let trial_bound = match std::env::var("OCTIC_TRIAL_BOUND") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("OCTIC_TRIAL_BOUND must be a positive integer, got {v:?}"))?,
        Err(_) => DEFAULT_TRIAL_BOUND,
    };
    Ok(CheckOptions {
        trial_bound,
        fast_paths,
    })
}

fn input(args: &InputArgs) -> Result<OcticInput, String> {
    OcticInput::new(args.form, args.a.clone(), args.b.clone()).map_err(|e| e.to_string())
}

fn input_args_json(args: &InputArgs) -> Value {
    json!({ "form": args.form, "a": args.a.to_string(), "b": args.b.to_string() })
}

fn run_classify(args: &InputArgs) -> Result<Outcome, String> {
    let inp = input(args)?;
    let poly = inp.polynomial();
    if !is_irreducible_q(&poly).expect("degree 8") {
        return Ok(Outcome {
            args: input_args_json(args),
            result: json!({ "input": inp, "irreducible": false, "galois": null }),
            text: format!("{inp}: {} is reducible", poly.display_with("x")),
            code: EXIT_OK,
        });
    }
    match classify(&inp) {
        Ok(l) => Ok(Outcome {
            args: input_args_json(args),
            result: json!({ "input": inp, "irreducible": true, "galois": label_json(Some(l)) }),
            text: format!("{inp}: {} has Galois group {l} ({})", poly.display_with("x"), l.name()),
            code: EXIT_OK,
        }),
        Err(gap) => Ok(Outcome {
            args: input_args_json(args),
            result: json!({ "input": inp, "irreducible": true, "galois": null, "gap": gap.fired }),
            text: format!("{inp}: classification conditions fired for {:?}", gap.fired),
            code: EXIT_MISMATCH,
        }),
    }
}

fn label_if_irreducible(inp: &OcticInput, status: Status) -> Option<GaloisLabel> {
    (status != Status::NotIrreducible)
        .then(|| classify(inp).ok())
        .flatten()
}

fn run_check(args: &InputArgs, verbose: bool, no_fast_paths: bool) -> Result<Outcome, String> {
    let inp = input(args)?;
    let opts = options(!no_fast_paths)?;
    let v = check(&inp, &opts);
    let label = label_if_irreducible(&inp, v.status);
    let mut text = format!(
        "{inp}: {} is {}",
        inp.polynomial().display_with("x"),
        status_text(v.status)
    );
    if let Some(l) = label {
        text += &format!(", Galois group {l}");
    }
    if let Some(fp) = v.fast_path {
        text += &format!(" [{}]", fp.tag());
    }
    if let Some(c) = v.failing() {
        text += &format!("\n  index divisible by {}", c.prime());
    }
    if let Some(r) = &v.unknown_reason {
        text += &format!("\n  undetermined: {r}");
    }
    if verbose {
        for c in &v.certificates {
            text += &format!("\n  q = {}: {}", c.prime(), if c.passes() { "pass" } else { "fail" });
        }
    }
    let mut a = input_args_json(args);
    a["verbose"] = json!(verbose);
    a["fast_paths"] = json!(!no_fast_paths);
    Ok(Outcome {
        args: a,
        result: verdict_json(&v, label, verbose),
        text,
        code: if v.status == Status::Unknown { EXIT_UNKNOWN } else { EXIT_OK },
    })
}

fn run_enumerate(family: FamilyId, count: u64) -> Result<Outcome, String> {
    let opts = options(true)?;
    let e = families::enumerate(family, count as usize, &opts);
    let inputs: Vec<OcticInput> = e.members.iter().map(|m| m.input.clone()).collect();
    let dist = families::distinctness(&inputs);
    let members: Vec<Value> = e
        .members
        .iter()
        .map(|m| {
            json!({
                "parameter": m.parameter,
                "input": m.input,
                "gate_value": m.gate_value.to_string(),
                "label": m.label.to_string(),
                "status": m.verdict.status,
                "discriminant": m.verdict.discriminant.to_string(),
            })
        })
        .collect();
    let mut text = format!(
        "{family}: {} ({}), gate {}\n",
        family.coefficient_map(),
        family.label(),
        family.gate_text()
    );
    for m in &e.members {
        text += &format!("  {:>6}  {}  gate {}\n", m.parameter, m.input, m.gate_value);
    }
    for s in &e.skipped {
        text += &format!("  skipped {}: {}\n", s.parameter, s.reason);
    }
    text += &format!(
        "discriminants {}",
        if dist.distinct() { "pairwise distinct" } else { "collide" }
    );
    Ok(Outcome {
        args: json!({ "family": family, "count": count }),
        result: json!({
            "family": family,
            "label": family.label().to_string(),
            "gate": family.gate_text(),
            "coefficients": family.coefficient_map(),
            "members": members,
            "skipped": e.skipped,
            "distinct": dist.distinct(),
            "collisions": dist.collisions,
        }),
        text: text.trim_end().to_string(),
        code: if dist.distinct() { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn run_density(
    poly: &str,
    cutoff: u64,
    scan: Option<u64>,
    mode: ScanMode,
    checkpoint: Option<&PathBuf>,
) -> Result<Outcome, String> {
    let g: FactoredPoly = poly.parse().map_err(|e: sieve::SieveError| e.to_string())?;
    let mut rep = sieve::report(&g, cutoff, &[]);
    if let Some(x) = scan {
        let count = match checkpoint {
            Some(path) => sieve::scan_with_checkpoint(&g, x, mode, path),
            None => sieve::scan(&g, x, mode),
        }
        .map_err(|e| e.to_string())?;
        rep.counts.push(sieve::ScanCount {
            bound: x,
            mode,
            squarefree: count,
        });
    }
    let mut text = format!(
        "G(t) = {}\nobstruction: {}\nC_G (primes <= {cutoff}) = {}",
        rep.polynomial,
        rep.obstruction.map_or("none".to_string(), |l| l.to_string()),
        rep.c_g_decimal
    );
    let nonzero: Vec<String> = rep
        .rho_values
        .iter()
        .filter(|(_, r)| *r > 0)
        .take(12)
        .map(|(l, r)| format!("{l}:{r}"))
        .collect();
    text += &format!("\nrho (nonzero, first 12): {}", nonzero.join(" "));
    for c in &rep.counts {
        let x = c.bound as f64;
        let expect = match c.mode {
            ScanMode::Primes => x / x.ln(),
            ScanMode::Integers => x,
        } * rep.c_g_decimal.parse::<f64>().unwrap_or(0.0);
        text += &format!(
            "\nN_G({}) over {} = {} (C_G-scaled estimate {:.0})",
            c.bound, c.mode, c.squarefree, expect
        );
    }
    Ok(Outcome {
        args: json!({ "poly": poly, "cutoff": cutoff, "scan": scan, "mode": mode }),
        result: serde_json::to_value(&rep).expect("serializable"),
        text,
        code: EXIT_OK,
    })
}

fn run_scan(form: Form, a_range: (i64, i64), b_range: (i64, i64), out: &PathBuf) -> Result<Outcome, String> {
    let opts = options(true)?;
    let inputs: Vec<OcticInput> = (a_range.0..=a_range.1)
        .flat_map(|a| (b_range.0..=b_range.1).filter_map(move |b| OcticInput::from_i64(form, a, b).ok()))
        .collect();
    let rows: Vec<(Status, Value)> = inputs
        .par_iter()
        .map(|inp| {
            let v = check(inp, &opts);
            let label = label_if_irreducible(inp, v.status);
            let row = json!({
                "form": inp.form,
                "a": inp.a.to_string(),
                "b": inp.b.to_string(),
                "irreducible": v.status != Status::NotIrreducible,
                "status": v.status,
                "label": label.map(|l| l.to_string()),
            });
            (v.status, row)
        })
        .collect();
    let file = File::create(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let mut w = BufWriter::new(file);
    let mut tally = std::collections::BTreeMap::<String, u64>::new();
    for (status, row) in &rows {
        writeln!(w, "{row}").map_err(|e| e.to_string())?;
        *tally.entry(status.to_string()).or_default() += 1;
    }
    w.flush().map_err(|e| e.to_string())?;
    let unknown = tally.get("Unknown").copied().unwrap_or(0);
    let mut text = format!("{} inputs written to {}", rows.len(), out.display());
    for (k, n) in &tally {
        text += &format!("\n  {k}: {n}");
    }
    Ok(Outcome {
        args: json!({
            "form": form,
            "a_range": [a_range.0, a_range.1],
            "b_range": [b_range.0, b_range.1],
            "out": out.display().to_string(),
        }),
        result: json!({ "inputs": rows.len(), "by_status": tally }),
        text,
        code: if unknown > 0 { EXIT_UNKNOWN } else { EXIT_OK },
    })
}

fn run_verify_tables(bound: i64) -> Result<Outcome, String> {
    let opts = options(true)?;
    let rep = families::verify_tables_with_bound(&FiniteCatalog::shipped(), &opts, bound);
    let mut text = String::new();
    for r in &rep.rows {
        let mark = if r.pass { "ok  " } else { "FAIL" };
        text += &format!("{mark} {}", r.entry);
        if let Some(n) = r.scanned {
            text += &format!("  ({n} inputs with |a|, |b| <= {bound})");
        }
        for c in &r.counterexamples {
            text += &format!("  witness {c}");
        }
        text.push('\n');
    }
    text += if rep.all_pass() { "all rows verified" } else { "some rows failed" };
    Ok(Outcome {
        args: json!({ "bound": bound }),
        result: serde_json::to_value(&rep).expect("serializable"),
        text,
        code: if rep.all_pass() { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let timer = Timer::start();
    let (name, outcome) = match &cli.command {
        Command::Classify(a) => ("classify", run_classify(a)),
        Command::Check {
            input,
            verbose,
            no_fast_paths,
        } => ("check", run_check(input, *verbose, *no_fast_paths)),
        Command::Enumerate { family, count } => ("enumerate", run_enumerate(*family, *count)),
        Command::Density {
            poly,
            cutoff,
            scan,
            mode,
            checkpoint,
        } => ("density", run_density(poly, *cutoff, *scan, *mode, checkpoint.as_ref())),
        Command::Scan {
            form,
            a_range,
            b_range,
            out,
        } => ("scan", run_scan(*form, *a_range, *b_range, out)),
        Command::VerifyTables { bound } => ("verify-tables", run_verify_tables(*bound)),
    };
    match outcome {
        Ok(o) => {
            if cli.json {
                let report = Report {
                    command: name,
                    args: o.args,
                    result: o.result,
                    exit_code: o.code as i32,
                    elapsed_ms: timer.ms(),
                };
                println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            } else {
                println!("{}", o.text);
            }
            ExitCode::from(o.code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

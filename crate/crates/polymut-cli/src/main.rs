//! Command-line front end: polyhedron duality, mutations, tropical images,
//! poset polytopes, lattice-point counts, and the order/chain verification
//! pipeline, all over JSON files.
//!
//! Exit codes: 0 on success, 1 when a computation is mathematically
//! undefined or a verification fails (the output then carries a serialized
//! witness), 2 on invalid input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use polymut::ehrhart::count_series;
use polymut::io;
use polymut::mutation::{mutate_polyhedron, mutate_polytope, Factor, MutationCertificate};
use polymut::polyhedron::polar_dual;
use polymut::poset::{
    chain_polytope, enumerate_posets, mutation_sequence, order_polytope, transfer_point,
    verify_theorem, Poset,
};
use polymut::tropical::phi_polytope;
use polymut::vector::{LatticeVector, Space};

#[derive(Parser)]
#[command(
    name = "polymut",
    version,
    about = "Exact polytope mutations, tropical maps, and poset polytopes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polar dual of a polyhedron containing the origin.
    Dualize {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Combinatorial mutation of a polyhedron, with a certificate.
    Mutate {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        /// Width vector as comma-separated integers, e.g. `--w 1,1`.
        #[arg(long, value_name = "a,b,…")]
        w: Option<String>,
        /// Factor file; may itself carry a width vector `w`.
        #[arg(long, value_name = "PATH")]
        factor: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Where to write the full mutation certificate.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Piecewise-linear image of a full-dimensional polytope of M.
    Tropical {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "a,b,…")]
        w: Option<String>,
        #[arg(long, value_name = "PATH")]
        factor: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
    },
    /// Poset polytopes and the transfer map.
    Poset {
        #[command(subcommand)]
        action: PosetAction,
    },
    /// Lattice-point counts of the dilations 1..=m.
    Count {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "M")]
        dilation: u32,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Verify that the order polytope mutates onto the chain polytope.
    VerifyTheorem {
        /// A poset file, or a file holding a list of posets.
        #[arg(long, value_name = "PATH", conflicts_with = "all_up_to")]
        poset: Option<PathBuf>,
        /// Run every poset with at most this many elements (at most 6).
        #[arg(long = "all-up-to", value_name = "N")]
        all_up_to: Option<usize>,
        /// Output file, or an existing directory for per-poset reports.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PosetAction {
    /// The order polytope of a poset.
    Order {
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The chain polytope of a poset.
    Chain {
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Transfer map applied to a point of the order polytope.
    Transfer {
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        /// A JSON array of rationals, e.g. `["1", "1/2"]`.
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// The factor sequence realizing the transfer map.
    Sequence {
        #[arg(long, value_name = "PATH")]
        poset: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Dualize { input, out } => {
            let poly = io::polyhedron_from_value(&read_json(&input)?).map_err(stringify)?;
            let dual = polar_dual(&poly).map_err(stringify)?;
            emit(&out, &io::polyhedron_to_value(&dual).map_err(stringify)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mutate {
            input,
            w,
            factor,
            out,
            certificate,
        } => {
            let poly = io::polyhedron_from_value(&read_json(&input)?).map_err(stringify)?;
            let factor = load_factor(&factor, w.as_deref())?;
            let cert =
                if poly.is_whole_space() || !poly.is_bounded() || poly.contains_origin_interior() {
                    mutate_polyhedron(&poly, &factor).map_err(stringify)?
                } else {
                    mutate_polytope(&poly, &factor).map_err(stringify)?
                };
            finish_mutation(cert, &out, &certificate)
        }
        Command::Tropical {
            input,
            w,
            factor,
            out,
            certificate,
        } => {
            let poly = io::polyhedron_from_value(&read_json(&input)?).map_err(stringify)?;
            let factor = load_factor(&factor, w.as_deref())?;
            let image = phi_polytope(&factor, &poly).map_err(stringify)?;
            let image_value = io::pl_image_to_value(&image).map_err(stringify)?;
            if let Some(path) = &certificate {
                write_value(path, &image_value)?;
            }
            if image.convex {
                emit(
                    &out,
                    &io::polyhedron_to_value(&image.hull).map_err(stringify)?,
                )?;
                Ok(ExitCode::SUCCESS)
            } else {
                // the image is not convex: report the pieces as the witness
                emit(&out, &image_value)?;
                eprintln!("the piecewise-linear image is not convex");
                Ok(ExitCode::from(1))
            }
        }
        Command::Poset { action } => run_poset(action),
        Command::Count {
            input,
            dilation,
            out,
        } => {
            let poly = io::polyhedron_from_value(&read_json(&input)?).map_err(stringify)?;
            let label = input
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let series = count_series(label, &poly, dilation).map_err(stringify)?;
            emit(&out, &io::count_series_to_value(&series))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyTheorem {
            poset,
            all_up_to,
            out,
        } => run_verify(poset, all_up_to, out),
    }
}

fn run_poset(action: PosetAction) -> Result<ExitCode, String> {
    match action {
        PosetAction::Order { poset, out } => {
            let poset = io::poset_from_value(&read_json(&poset)?).map_err(stringify)?;
            let poly = order_polytope(&poset).map_err(stringify)?;
            emit(&out, &io::polyhedron_to_value(&poly).map_err(stringify)?)?;
            Ok(ExitCode::SUCCESS)
        }
        PosetAction::Chain { poset, out } => {
            let poset = io::poset_from_value(&read_json(&poset)?).map_err(stringify)?;
            let poly = chain_polytope(&poset).map_err(stringify)?;
            emit(&out, &io::polyhedron_to_value(&poly).map_err(stringify)?)?;
            Ok(ExitCode::SUCCESS)
        }
        PosetAction::Transfer { poset, input, out } => {
            let poset = io::poset_from_value(&read_json(&poset)?).map_err(stringify)?;
            let point = io::qvector_from_value(Space::M, &read_json(&input)?).map_err(stringify)?;
            let image = transfer_point(&poset, &point).map_err(stringify)?;
            let coords: Vec<String> = image
                .coords()
                .iter()
                .map(polymut::rational::format_rational)
                .collect();
            emit(&out, &json!(coords))?;
            Ok(ExitCode::SUCCESS)
        }
        PosetAction::Sequence { poset, out } => {
            let poset = io::poset_from_value(&read_json(&poset)?).map_err(stringify)?;
            let sequence = mutation_sequence(&poset).map_err(stringify)?;
            let mut entries = Vec::new();
            for (element, factor) in &sequence {
                let mut value = io::factor_to_value(factor).map_err(stringify)?;
                value["element"] = json!(poset.elements()[*element]);
                entries.push(value);
            }
            emit(&out, &Value::Array(entries))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_verify(
    poset_path: Option<PathBuf>,
    all_up_to: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode, String> {
    let posets: Vec<Poset> = match (&poset_path, all_up_to) {
        (Some(path), None) => posets_from_file(path)?,
        (None, Some(n)) => {
            if n == 0 || n > 6 {
                return Err("--all-up-to takes 1..=6".into());
            }
            (1..=n).flat_map(enumerate_posets).collect()
        }
        _ => return Err("give exactly one of --poset or --all-up-to".into()),
    };

    let mut reports = Vec::with_capacity(posets.len());
    let mut all_passed = true;
    for poset in &posets {
        let report = verify_theorem(poset).map_err(stringify)?;
        all_passed &= report.passed;
        reports.push(report);
    }

    let report_values: Vec<Value> = reports
        .iter()
        .map(|r| io::report_to_value(r).map_err(stringify))
        .collect::<Result<_, _>>()?;
    let summary = json!({
        "total": reports.len(),
        "passed": reports.iter().filter(|r| r.passed).count(),
        "failed": reports.iter().filter(|r| !r.passed).count(),
    });

    match &out {
        Some(path) if path.is_dir() => {
            for (idx, value) in report_values.iter().enumerate() {
                let n = reports[idx].poset.len();
                write_value(&path.join(format!("poset_n{n}_{idx:03}.json")), value)?;
            }
            write_value(&path.join("summary.json"), &summary)?;
        }
        _ => {
            emit(
                &out,
                &json!({ "summary": summary, "reports": report_values }),
            )?;
        }
    }
    if all_passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed for {} poset(s)", summary["failed"]);
        Ok(ExitCode::from(1))
    }
}

fn finish_mutation(
    cert: MutationCertificate,
    out: &Option<PathBuf>,
    certificate: &Option<PathBuf>,
) -> Result<ExitCode, String> {
    let cert_value = io::certificate_to_value(&cert).map_err(stringify)?;
    if let Some(path) = certificate {
        write_value(path, &cert_value)?;
    }
    if cert.defined {
        let result = io::polyhedron_to_value(cert.result()).map_err(stringify)?;
        emit(out, &result)?;
        Ok(ExitCode::SUCCESS)
    } else {
        // undefined is an outcome, not an input error: the certificate names
        // the failing height
        emit(out, &cert_value)?;
        eprintln!(
            "mutation undefined at height {}",
            cert.failure_height
                .as_ref()
                .map(polymut::rational::format_rational)
                .unwrap_or_default()
        );
        Ok(ExitCode::from(1))
    }
}

/// Builds the factor from the file and the optional `--w` flag; the flag and
/// the file's own width vector must agree when both are present.
fn load_factor(path: &Path, w_flag: Option<&str>) -> Result<Factor, String> {
    let value = read_json(path)?;
    let flag_width = w_flag.map(parse_width).transpose()?;
    let file_has_w = value.get("w").is_some();
    match (flag_width, file_has_w) {
        (None, true) => io::factor_from_value(&value).map_err(stringify),
        (Some(w), false) => {
            let mut with_w = value;
            with_w["w"] = Value::Array(w.coords().iter().map(|c| json!(c.to_string())).collect());
            io::factor_from_value(&with_w).map_err(stringify)
        }
        (Some(w), true) => {
            let factor = io::factor_from_value(&value).map_err(stringify)?;
            if factor.width_vector() != &w {
                return Err("--w disagrees with the factor file's width vector".into());
            }
            Ok(factor)
        }
        (None, false) => Err("no width vector: give --w or put \"w\" in the factor file".into()),
    }
}

fn parse_width(text: &str) -> Result<LatticeVector, String> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| format!("invalid width entry {part:?}"))
        })
        .collect::<Result<_, _>>()?;
    Ok(LatticeVector::from_ints(Space::M, &coords))
}

fn stringify(e: polymut::Error) -> String {
    e.to_string()
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

/// Print to stdout, or write atomically to the given path.
fn emit(out: &Option<PathBuf>, value: &Value) -> Result<(), String> {
    match out {
        None => {
            print!("{}", to_pretty(value));
            Ok(())
        }
        Some(path) => write_value(path, value),
    }
}

/// Atomic write: a temporary file in the same directory, then a rename.
fn write_value(path: &Path, value: &Value) -> Result<(), String> {
    let file_name = path
        .file_name()
        .ok_or_else(|| format!("{}: not a file path", path.display()))?
        .to_string_lossy();
    let tmp = path.with_file_name(format!(".{file_name}.tmp"));
    fs::write(&tmp, to_pretty(value)).map_err(|e| format!("{}: {e}", tmp.display()))?;
    fs::rename(&tmp, path).map_err(|e| format!("{}: {e}", path.display()))
}

fn posets_from_file(path: &Path) -> Result<Vec<Poset>, String> {
    let value = read_json(path)?;
    let list: Vec<&Value> = if let Some(array) = value.as_array() {
        array.iter().collect()
    } else if let Some(array) = value.get("posets").and_then(Value::as_array) {
        array.iter().collect()
    } else {
        vec![&value]
    };
    list.into_iter()
        .map(|v| io::poset_from_value(v).map_err(stringify))
        .collect()
}

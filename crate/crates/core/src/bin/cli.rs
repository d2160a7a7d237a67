//! Command-line front end: every subcommand prints one JSON object to
//! standard output and exits 0 on success or 2 on validation failure.
//! Set UNARY_FORMS_PRECISION to round the numbers in the output to that
//! many significant digits.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use unary_forms::bounds::{
    alternating_sum, alternating_sum_ratio, envelope_constant, facet_bound, pisot_height_bound,
    FacetBoundInput,
};
use unary_forms::cubic::random_reduced_basis_scan;
use unary_forms::error::Result;
use unary_forms::field::{FieldData, TotallyPositiveElement};
use unary_forms::field_file::{load_field_file, quadratic_field, save_field_file};
use unary_forms::lattice::{
    enumerate_facet_candidates, min_height_pisot, pisot_search, LogUnitLattice,
    UnitExponentVector,
};
use unary_forms::pell::pell_fundamental_unit;
use unary_forms::reduction::{reduce_unary, verify_reduction_bounds};
use unary_forms::Error;

#[derive(Parser)]
#[command(
    name = "unary-forms",
    about = "Pisot-unit reduction of totally positive unary forms, with the associated lattice and bound computations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArg {
    /// Path to a JSON field file.
    #[arg(long)]
    field: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the field file of Q(sqrt(d)) with its exact Pell unit.
    GenQuadratic {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a Pisot unit via the covering-radius target.
    Pisot {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        epsilon: f64,
    },
    /// Reduce a totally positive element; the unit defaults to the Pisot search result.
    Reduce {
        #[command(flatten)]
        field: FieldArg,
        /// Comma-separated r+s positive coordinates.
        #[arg(long)]
        a: String,
        #[arg(long)]
        delta: f64,
        /// Comma-separated generator exponents of the reducing unit.
        #[arg(long)]
        unit_exponents: Option<String>,
    },
    /// Reduce, compute the integer minimum, and check both output inequalities.
    Verify {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        delta: f64,
    },
    /// Evaluate the facet-count bound with its term breakdown.
    FacetBound {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        regulator: f64,
        /// Use the 1 + 1/(2(r+s-1)) exponent variant.
        #[arg(long)]
        abstract_exponent: bool,
    },
    /// Enumerate the facet-candidate units inside the log t_K cube.
    EnumerateFacets {
        #[command(flatten)]
        field: FieldArg,
    },
    /// Scan seeded random reduced rank-2 bases for short-vector violations.
    Lemma6 {
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        bound: i64,
    },
    /// Evaluate the Pisot height bound; with --field, compare against the
    /// actual minimal Pisot height.
    HeightBound {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        regulator: f64,
        #[arg(long)]
        gamma: u8,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Exact alternating sums and their envelope ratios for n = 2..n_max.
    Sums {
        #[arg(long)]
        n_max: u32,
    },
}

fn parse_comma_f64(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parameter(format!("{what}: cannot parse {p:?} as a number")))
        })
        .collect()
}

fn parse_comma_i64(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parameter(format!("{what}: cannot parse {p:?} as an integer")))
        })
        .collect()
}

fn load(field: &FieldArg) -> Result<(FieldData, LogUnitLattice)> {
    let data = load_field_file(&field.field)?;
    let lattice = LogUnitLattice::build(&data)?;
    Ok((data, lattice))
}

fn totally_positive(field: &FieldData, a: &str) -> Result<TotallyPositiveElement> {
    TotallyPositiveElement::new(field.signature, parse_comma_f64(a, "--a")?)
}

fn unit_kre_pairs(field: &FieldData, exps: &[i64]) -> Result<Vec<[f64; 2]>> {
    let kre = field.project(&field.unit_embedding(exps)?)?;
    Ok((0..field.arity()).map(|i| [kre.coord(i).re, kre.coord(i).im]).collect())
}

fn run(command: Command) -> Result<Value> {
    match command {
        Command::GenQuadratic { d, out } => {
            let pell = pell_fundamental_unit(d)?;
            let field = quadratic_field(d)?;
            save_field_file(&field, &out)?;
            Ok(json!({
                "command": "gen-quadratic",
                "d": d,
                "unit": {
                    "p": pell.p.to_string(),
                    "q": pell.q.to_string(),
                    "denom": pell.denom,
                    "norm": pell.norm,
                },
                "regulator": pell.regulator,
                "field_name": field.name,
                "path": out.display().to_string(),
            }))
        }
        Command::Pisot { field, epsilon } => {
            let (data, lattice) = load(&field)?;
            let found = pisot_search(&data, &lattice, epsilon)?;
            let embedding = unit_kre_pairs(&data, &found.unit.exponents)?;
            Ok(json!({
                "command": "pisot",
                "field": data.name,
                "result": found,
                "embedding": embedding,
                "is_pisot": true,
            }))
        }
        Command::Reduce { field, a, delta, unit_exponents } => {
            let (data, lattice) = load(&field)?;
            let a = totally_positive(&data, &a)?;
            let unit = match unit_exponents {
                Some(s) => UnitExponentVector::new(parse_comma_i64(&s, "--unit-exponents")?),
                None => pisot_search(&data, &lattice, 0.01)?.unit,
            };
            let cert = reduce_unary(&data, &lattice, &a, &unit, delta)?;
            Ok(json!({
                "command": "reduce",
                "field": data.name,
                "delta": delta,
                "unit_exponents": unit.exponents,
                "certificate": cert,
                "reduced": cert.reduced.coords(),
            }))
        }
        Command::Verify { field, a, delta } => {
            let (data, lattice) = load(&field)?;
            let a = totally_positive(&data, &a)?;
            let unit = pisot_search(&data, &lattice, 0.01)?.unit;
            let report = verify_reduction_bounds(&data, &lattice, &a, &unit, delta)?;
            Ok(json!({
                "command": "verify",
                "field": data.name,
                "unit_exponents": unit.exponents,
                "report": report,
            }))
        }
        Command::FacetBound { r, s, regulator, abstract_exponent } => {
            let report = facet_bound(FacetBoundInput::new(r, s, regulator)?, abstract_exponent)?;
            Ok(json!({ "command": "facet-bound", "report": report }))
        }
        Command::EnumerateFacets { field } => {
            let (data, lattice) = load(&field)?;
            let fc = enumerate_facet_candidates(&data, &lattice)?;
            Ok(json!({
                "command": "enumerate-facets",
                "field": data.name,
                "regulator": lattice.regulator_report().regulator,
                "candidates": fc,
            }))
        }
        Command::Lemma6 { samples, seed, bound } => {
            if samples == 0 {
                return Err(Error::Parameter("--samples must be positive".into()));
            }
            if bound <= 0 {
                return Err(Error::Parameter("--bound must be positive".into()));
            }
            let stats = random_reduced_basis_scan(samples, seed, bound);
            Ok(json!({ "command": "lemma6", "stats": stats }))
        }
        Command::HeightBound { r, s, regulator, gamma, epsilon, field } => {
            let bound = pisot_height_bound(r, s, regulator, gamma, epsilon)?;
            let mut out = json!({
                "command": "height-bound",
                "r": r,
                "s": s,
                "regulator": regulator,
                "gamma": gamma,
                "epsilon": epsilon,
                "bound": bound,
            });
            if let Some(path) = field {
                let data = load_field_file(&path)?;
                let lattice = LogUnitLattice::build(&data)?;
                let (height, unit) = min_height_pisot(&data, &lattice)?;
                out["field"] = json!(data.name);
                out["actual_min_height"] = json!(height);
                out["minimizer_exponents"] = json!(unit.exponents);
                out["bound_holds"] = json!(height <= bound + 1e-12);
            }
            Ok(out)
        }
        Command::Sums { n_max } => {
            if n_max < 2 {
                return Err(Error::Parameter("--n-max must be at least 2".into()));
            }
            let envelope = envelope_constant() + 0.05;
            let mut entries = Vec::new();
            for n in 2..=n_max {
                let exact = alternating_sum(n);
                let ratio = alternating_sum_ratio(n)?;
                entries.push(json!({
                    "n": n,
                    "alternating_sum": exact.to_string(),
                    "ratio": ratio,
                    "below_envelope": ratio <= envelope,
                }));
            }
            Ok(json!({
                "command": "sums",
                "envelope_constant": envelope_constant(),
                "envelope_slack": 0.05,
                "entries": entries,
            }))
        }
    }
}

/// Rounds every number in the tree to `digits` significant digits.
fn round_tree(value: &mut Value, digits: usize) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(f) = n.as_f64() {
                    let rounded: f64 =
                        format!("{f:.*e}", digits.saturating_sub(1)).parse().unwrap_or(f);
                    if let Some(num) = serde_json::Number::from_f64(rounded) {
                        *value = Value::Number(num);
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| round_tree(v, digits)),
        Value::Object(map) => map.values_mut().for_each(|v| round_tree(v, digits)),
        _ => {}
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(mut value) => {
            if let Some(digits) = std::env::var("UNARY_FORMS_PRECISION")
                .ok()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&d| d >= 1)
            {
                round_tree(&mut value, digits);
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable output"));
            ExitCode::SUCCESS
        }
        Err(err) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "error": err.to_string() })).unwrap()
            );
            ExitCode::from(2)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use dehnsom::balanced::BalancedComplex;
use dehnsom::generators::{catalog, face_poset, generate, Arg, Generated, GeneratorSpec};
use dehnsom::identities::{is_precondition, verify, verify_all, Identity, Outcome};
use dehnsom::io::{parse_any, parse_color_map};
use dehnsom::poset::GradedPoset;
use dehnsom::report::{int_list_json, VerificationReport};
use dehnsom::toric::toric_pair;
use dehnsom::{ColorSet, Error};

/// Exact f/h-vectors, toric polynomials and Dehn-Sommerville checks.
#[derive(Parser)]
#[command(name = "dehnsom", version)]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print vectors and invariants of an object.
    Compute {
        #[arg(value_enum)]
        what: Quantity,
        #[command(flatten)]
        target: Target,
    },
    /// Print the singularity profile of a complex or the classification of a poset.
    Classify {
        #[command(flatten)]
        target: Target,
    },
    /// Check a named identity, or `all` of them. Without a target, `all`
    /// runs over the whole generator catalog.
    Verify {
        /// ds, flag-ds, simplicial-ds, flag-poset, stanley, swartz, 1sing,
        /// generalized, main, euler-rel, lower-eulerian, dual, or all.
        identity: String,
        #[command(flatten)]
        target: Target,
    },
    /// Write a catalog object in its file format.
    Generate {
        /// Generator spec, e.g. `face_poset(suspension(torus_7))`.
        #[arg(required_unless_present = "list", num_args = 1..)]
        spec: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// List the catalog instead.
        #[arg(long, conflicts_with = "out")]
        list: bool,
    },
    /// Render a saved JSON report as a table.
    Report { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quantity {
    F,
    H,
    Flag,
    Toric,
    Mobius,
    Euler,
    All,
}

#[derive(Args)]
struct Target {
    /// Facet list (complex) or JSON (poset).
    file: Option<PathBuf>,
    /// Use a generated object instead of a file.
    #[arg(long = "gen", value_name = "SPEC", num_args = 1.., conflicts_with = "file")]
    generator: Option<Vec<String>>,
    /// Vertex coloring for a complex read from a file, one `vertex color` per line.
    #[arg(long, value_name = "FILE")]
    colors: Option<PathBuf>,
    /// Replace the seed of a random generator.
    #[arg(long)]
    seed: Option<u64>,
}

/// A failure reported on standard error with exit code 2.
struct Failure {
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure {
        kind: "Io",
        message: format!("{}: {e}", path.display()),
    })
}

fn parse_spec(words: &[String], seed: Option<u64>) -> CliResult<GeneratorSpec> {
    let mut spec: GeneratorSpec = words.join(" ").parse()?;
    if let Some(seed) = seed {
        if !spec.name.starts_with("random_") || spec.args.is_empty() {
            return Err(Error::BadParams(format!("--seed applies to random generators, not `{}`", spec.name)).into());
        }
        *spec.args.last_mut().expect("checked nonempty") = Arg::Int(seed as i64);
    }
    Ok(spec)
}

struct Loaded {
    name: String,
    object: Generated,
}

impl Target {
    fn is_empty(&self) -> bool {
        self.file.is_none() && self.generator.is_none()
    }

    fn load(&self) -> CliResult<Loaded> {
        let (name, object) = match (&self.file, &self.generator) {
            (Some(path), _) => (path.display().to_string(), parse_any(&read(path)?)?),
            (None, Some(words)) => {
                let spec = parse_spec(words, self.seed)?;
                (spec.to_string(), generate(&spec)?)
            }
            (None, None) => {
                return Err(Failure {
                    kind: "BadArguments",
                    message: "give an input file or --gen SPEC".into(),
                })
            }
        };
        let object = match (&self.colors, object) {
            (None, object) => object,
            (Some(path), Generated::Complex(c)) => {
                Generated::Balanced(BalancedComplex::new(c, parse_color_map(&read(path)?)?)?)
            }
            (Some(path), Generated::Balanced(b)) => Generated::Balanced(BalancedComplex::new(
                b.complex().clone(),
                parse_color_map(&read(path)?)?,
            )?),
            (Some(_), Generated::Poset(_)) => {
                return Err(Error::BadArguments("--colors applies to complexes only".into()).into())
            }
        };
        Ok(Loaded { name, object })
    }
}

fn flag_json(entries: impl Iterator<Item = (ColorSet, Value)>) -> Value {
    Value::Object(entries.map(|(s, v)| (s.to_string(), v)).collect())
}

fn big(n: &BigInt) -> Value {
    int_list_json(std::slice::from_ref(n))[0].clone()
}

fn toric_json(p: &GradedPoset, out: &mut Map<String, Value>) -> dehnsom::Result<()> {
    let pair = toric_pair(p)?;
    out.insert("toric_h".into(), int_list_json(&pair.h_vector()));
    out.insert("toric_g".into(), int_list_json(&pair.g_vector()));
    let defects: Vec<_> = (0..=pair.d).map(|k| pair.defect(k)).collect();
    out.insert("defects".into(), int_list_json(&defects));
    Ok(())
}

fn poset_quantity(p: &GradedPoset, what: Quantity, out: &mut Map<String, Value>) -> dehnsom::Result<()> {
    match what {
        Quantity::F => {
            let sizes: Vec<BigInt> = (0..=p.rho()).map(|r| p.elements_of_rank(r).count().into()).collect();
            out.insert("rank_sizes".into(), int_list_json(&sizes));
        }
        Quantity::H => {
            out.insert("h".into(), int_list_json(&p.simplicial_poset_h()?.entries));
        }
        Quantity::Flag => {
            let d = usize::try_from(p.d()).map_err(|_| Error::BadArguments("poset has rank 0".into()))?;
            let mut alpha = Vec::new();
            let mut beta = Vec::new();
            for s in ColorSet::all(d) {
                let (a, b) = p.flag_alpha_beta(s)?;
                alpha.push((s, big(&a)));
                beta.push((s, big(&b)));
            }
            out.insert("flag_f".into(), flag_json(alpha.into_iter()));
            out.insert("flag_h".into(), flag_json(beta.into_iter()));
        }
        Quantity::Toric => toric_json(p, out)?,
        Quantity::Mobius => {
            out.insert("mobius".into(), big(&p.mobius(p.bottom(), p.top())?));
            out.insert("error".into(), big(&p.interval_error(p.bottom(), p.top())?));
        }
        Quantity::Euler => {
            let oc = p.order_complex()?;
            out.insert("euler".into(), big(&oc.complex().reduced_euler_characteristic()));
        }
        Quantity::All => unreachable!("expanded by the caller"),
    }
    Ok(())
}

fn complex_quantity(object: &Generated, what: Quantity, out: &mut Map<String, Value>) -> dehnsom::Result<()> {
    let c = object.complex().expect("complex variants");
    match what {
        Quantity::F => {
            out.insert("f".into(), int_list_json(c.f_vector().entries()));
        }
        Quantity::H => {
            out.insert("h".into(), int_list_json(&c.h_vector().entries));
            out.insert("short_h".into(), int_list_json(&c.short_h_vector()));
        }
        Quantity::Flag => {
            let Generated::Balanced(b) = object else {
                return Err(Error::BadArguments("flag vectors need a balanced complex".into()));
            };
            out.insert(
                "flag_f".into(),
                flag_json(b.flag_f_vector().iter().map(|(s, v)| (s, big(v)))),
            );
            out.insert(
                "flag_h".into(),
                flag_json(b.flag_h_vector().iter().map(|(s, v)| (s, big(v)))),
            );
        }
        Quantity::Euler => {
            out.insert("euler".into(), big(&c.reduced_euler_characteristic()));
        }
        Quantity::Toric | Quantity::Mobius => {
            out.insert("via".into(), json!("face poset with a top element"));
            poset_quantity(&face_poset(c, true)?, what, out)?;
        }
        Quantity::All => unreachable!("expanded by the caller"),
    }
    Ok(())
}

fn compute(loaded: &Loaded, what: Quantity) -> CliResult<Value> {
    let mut out = Map::new();
    out.insert("object".into(), json!(loaded.name));
    out.insert("kind".into(), json!(loaded.object.kind()));
    let single = |what, out: &mut Map<String, Value>| match &loaded.object {
        Generated::Poset(p) => poset_quantity(p, what, out),
        _ => complex_quantity(&loaded.object, what, out),
    };
    if what == Quantity::All {
        for q in [
            Quantity::F,
            Quantity::H,
            Quantity::Flag,
            Quantity::Euler,
            Quantity::Mobius,
            Quantity::Toric,
        ] {
            match single(q, &mut out) {
                Err(e) if is_precondition(&e) => {}
                other => other?,
            }
        }
    } else {
        single(what, &mut out)?;
    }
    Ok(Value::Object(out))
}

fn classify(loaded: &Loaded) -> CliResult<Value> {
    let mut out = Map::new();
    out.insert("object".into(), json!(loaded.name));
    out.insert("kind".into(), json!(loaded.object.kind()));
    match &loaded.object {
        Generated::Poset(p) => {
            let c = p.classify();
            let criteria = p.j_sing_criteria()?;
            out.insert("rank".into(), json!(p.rho()));
            out.insert("eulerian".into(), json!(c.eulerian));
            out.insert("semi_eulerian".into(), json!(c.semi_eulerian));
            out.insert("lower_eulerian".into(), json!(c.lower_eulerian));
            out.insert("simplicial".into(), json!(c.simplicial));
            out.insert("min_j_sing".into(), json!(c.min_j_sing));
            out.insert("max_lower_simplicial_k".into(), json!(c.max_lower_simplicial_k));
            out.insert(
                "j_sing_criteria".into(),
                json!({"recursive": criteria.recursive, "flat": criteria.flat, "order_complex": criteria.order_complex}),
            );
        }
        object => {
            let complex = object.complex().expect("complex variants");
            let profile = complex.singularity_profile();
            out.insert("dim".into(), json!(complex.dim()));
            out.insert("pure".into(), json!(complex.is_pure()));
            out.insert("eulerian".into(), json!(profile.eulerian));
            out.insert("semi_eulerian".into(), json!(profile.semi_eulerian));
            out.insert("min_singular_j".into(), json!(profile.min_singular_j));
            let errors: Map<String, Value> = profile
                .error_set
                .iter()
                .map(|fe| {
                    let labels: Vec<&str> = fe.face.iter().map(|l| l.as_str()).collect();
                    (format!("{{{}}}", labels.join(",")), big(&fe.epsilon))
                })
                .collect();
            out.insert("error_set".into(), Value::Object(errors));
        }
    }
    Ok(Value::Object(out))
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(render_value).collect();
            format!("({})", parts.join(", "))
        }
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_table(value: &Value, indent: usize, out: &mut String) {
    if let Value::Object(map) = value {
        let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
        for (key, v) in map {
            match v {
                Value::Object(inner) if !inner.is_empty() => {
                    out.push_str(&format!("{:indent$}{key}:\n", ""));
                    render_table(v, indent + 2, out);
                }
                _ => out.push_str(&format!("{:indent$}{key:<width$}  {}\n", "", render_value(v))),
            }
        }
    }
}

fn print_value(format: Format, value: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("values serialize")),
        Format::Table => {
            let mut out = String::new();
            render_table(value, 0, &mut out);
            print!("{out}");
        }
    }
}

fn outcome_json(o: &Outcome) -> Value {
    match o {
        Outcome::Ran(r) => serde_json::from_str(&r.to_json()).expect("report JSON"),
        Outcome::Skipped { identity, reason } => {
            json!({"identity": identity.name(), "skipped": reason.kind(), "reason": reason.to_string()})
        }
    }
}

fn print_outcomes(format: Format, name: &str, outcomes: &[Outcome]) {
    match format {
        Format::Json => {
            let reports: Vec<Value> = outcomes.iter().map(outcome_json).collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({"object": name, "reports": reports})).expect("json")
            );
        }
        Format::Table => {
            println!("object: {name}");
            for o in outcomes {
                match o {
                    Outcome::Ran(r) => println!("{}", r.to_table()),
                    Outcome::Skipped { identity, reason } => println!("skipped {identity}: {reason}\n"),
                }
            }
        }
    }
}

fn verify_catalog(format: Format) -> CliResult<bool> {
    let entries = catalog();
    let results: Vec<(String, dehnsom::Result<Vec<Outcome>>)> = entries
        .par_iter()
        .map(|entry| {
            (
                entry.spec.to_owned(),
                dehnsom::generators::generate_str(entry.spec).and_then(|g| verify_all(&g)),
            )
        })
        .collect();
    let mut all_pass = true;
    let mut json_out = Vec::new();
    for (spec, result) in results {
        let outcomes = result?;
        all_pass &= outcomes.iter().all(Outcome::passed);
        match format {
            Format::Json => json_out.push(json!({
                "object": spec,
                "reports": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
            })),
            Format::Table => {
                let cells: Vec<String> = outcomes
                    .iter()
                    .map(|o| match o {
                        Outcome::Ran(r) => format!("{}={}", r.identity, if r.pass { "pass" } else { "FAIL" }),
                        Outcome::Skipped { identity, .. } => format!("{identity}=skip"),
                    })
                    .collect();
                println!("{spec}: {}", cells.join(" "));
            }
        }
    }
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&Value::Array(json_out)).expect("json")
        ),
        Format::Table => println!("{}", if all_pass { "all identities pass" } else { "FAILURES" }),
    }
    Ok(all_pass)
}

fn print_report(format: Format, report: &VerificationReport) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
}

/// `report` accepts a single report, a `{"reports": [...]}` object, or an
/// array of either.
fn render_saved(format: Format, value: &Value) -> CliResult<()> {
    match value {
        Value::Array(items) => items.iter().try_for_each(|v| render_saved(format, v)),
        Value::Object(map) if map.contains_key("reports") => {
            if let Some(name) = map.get("object").and_then(Value::as_str) {
                println!("object: {name}");
            }
            map["reports"]
                .as_array()
                .into_iter()
                .flatten()
                .try_for_each(|v| render_saved(format, v))
        }
        Value::Object(map) if map.contains_key("skipped") => {
            println!(
                "skipped {}: {}\n",
                render_value(&map["identity"]),
                render_value(&map["reason"])
            );
            Ok(())
        }
        _ => {
            let report = VerificationReport::from_json(&value.to_string()).map_err(|e| Failure {
                kind: "Parse",
                message: e.to_string(),
            })?;
            print_report(format, &report);
            println!();
            Ok(())
        }
    }
}

fn run(cli: Cli) -> CliResult<bool> {
    let format = cli.format;
    match cli.command {
        Command::Compute { what, target } => {
            print_value(format, &compute(&target.load()?, what)?);
            Ok(true)
        }
        Command::Classify { target } => {
            print_value(format, &classify(&target.load()?)?);
            Ok(true)
        }
        Command::Verify { identity, target } => {
            if identity == "all" {
                if target.is_empty() {
                    return verify_catalog(format);
                }
                let loaded = target.load()?;
                let outcomes = verify_all(&loaded.object)?;
                print_outcomes(format, &loaded.name, &outcomes);
                return Ok(outcomes.iter().all(Outcome::passed));
            }
            let identity: Identity = identity.parse()?;
            let report = verify(identity, &target.load()?.object)?;
            print_report(format, &report);
            Ok(report.pass)
        }
        Command::Generate { spec, seed, out, list } => {
            if list {
                for entry in catalog() {
                    println!("{:<48} {}", entry.spec, entry.about);
                }
                return Ok(true);
            }
            let text = generate(&parse_spec(&spec, seed)?)?.to_text();
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure {
                    kind: "Io",
                    message: format!("{}: {e}", path.display()),
                })?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Report { file } => {
            let value: Value = serde_json::from_str(&read(&file)?).map_err(|e| Failure {
                kind: "Parse",
                message: format!("{}: {e}", file.display()),
            })?;
            render_saved(format, &value)?;
            Ok(true)
        }
    }
}

/// `DEHNSOM_THREADS` caps the worker pool; `0` means sequential.
fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("DEHNSOM_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| Failure {
        kind: "BadArguments",
        message: format!("DEHNSOM_THREADS must be a number, got `{raw}`"),
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build_global()
        .map_err(|e| Failure {
            kind: "InternalError",
            message: e.to_string(),
        })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            eprintln!("{}", json!({"error": failure.kind, "message": failure.message}));
            ExitCode::from(2)
        }
    }
}

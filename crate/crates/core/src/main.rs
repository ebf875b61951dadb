use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use incidence_scrolls::base::{self, IncidenceBase};
use incidence_scrolls::classify::{self, render_table_json, render_table_text};
use incidence_scrolls::degeneration::{self, Partner};
use incidence_scrolls::ruled::{self, RuledSurfaceModel};
use incidence_scrolls::{oracle_intersection_number, schubert, Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "incidence-scrolls",
    version,
    about = "Schubert calculus and incidence scrolls in P^n"
)]
struct Cli {
    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Structured output where available.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the incidence condition and general position; report the reduction.
    Validate(BaseArgs),
    /// Degree of the scroll.
    Degree(BaseArgs),
    /// Genus by degeneration and by the ambient-dimension formula.
    Genus(BaseArgs),
    /// Degree, genus, e, m, minimum directrix and normalized bundle.
    Invariants(BaseArgs),
    /// Specialize two base spaces into a hyperplane and split the scroll.
    Join {
        base: String,
        #[arg(short)]
        i: usize,
        #[arg(short)]
        j: usize,
    },
    /// Pull two complementary base spaces apart into P^{n+1}.
    Separate {
        base: String,
        #[arg(short)]
        i: usize,
        #[arg(
            short,
            conflicts_with = "add_hyperplane",
            required_unless_present = "add_hyperplane"
        )]
        j: Option<usize>,
        /// Use a new hyperplane P^{n-1} as the partner of space i.
        #[arg(long)]
        add_hyperplane: bool,
    },
    /// Intersection number of special Schubert classes in G(1,n).
    Schubert {
        #[arg(short)]
        n: u32,
        #[arg(short, value_delimiter = ',', required = true)]
        c: Vec<u32>,
    },
    /// Invariants and incidence criteria of a ruled surface model.
    Surface {
        #[arg(short, allow_negative_numbers = true)]
        g: u32,
        #[arg(short, allow_negative_numbers = true)]
        e: i64,
        #[arg(short, allow_negative_numbers = true)]
        m: i64,
        /// The divisor 𝔢 of a decomposable elliptic scroll is trivial.
        #[arg(long)]
        e_trivial: bool,
        #[arg(long)]
        indecomposable: bool,
    },
    /// Every incidence base of P^n.
    Enumerate {
        #[arg(short)]
        n: u32,
    },
    /// Tables of incidence scrolls of genus 0 or 1.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=1))]
        genus: u32,
        #[arg(long, default_value_t = 8)]
        max_n: u32,
    },
    /// Cross-check every enumerated base against the classification.
    Audit {
        #[arg(long, default_value_t = 8)]
        max_n: u32,
    },
}

#[derive(clap::Args)]
struct BaseArgs {
    /// `n:d1,d2,...` or a JSON object `{"ambient": n, "dims": [...]}`.
    #[arg(required_unless_present = "bases")]
    base: Option<String>,
    /// File with one base per line; `#` starts a comment.
    #[arg(long, value_name = "FILE")]
    bases: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
    /// Report produced before the failure was detected.
    output: Option<String>,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err.kind() {
            ErrorKind::Parse => 2,
            ErrorKind::Invalid | ErrorKind::Domain | ErrorKind::Overflow => 1,
            ErrorKind::Consistency => 3,
        };
        Failure {
            code,
            message: err.to_string(),
            output: None,
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_base(text: &str) -> CliResult<IncidenceBase> {
    let text = text.trim();
    let parsed = if text.starts_with('{') {
        IncidenceBase::from_json(text)
    } else {
        text.parse()
    };
    Ok(parsed?)
}

fn load_bases(args: &BaseArgs) -> CliResult<Vec<IncidenceBase>> {
    let mut out = Vec::new();
    if let Some(b) = &args.base {
        out.push(parse_base(b)?);
    }
    if let Some(path) = &args.bases {
        let text = fs::read_to_string(path).map_err(|err| Failure {
            code: 2,
            message: format!("cannot read {}: {err}", path.display()),
            output: None,
        })?;
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                out.push(parse_base(line)?);
            }
        }
    }
    Ok(out)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ValidateOutput {
    report: base::ValidationReport,
    normalized: Option<String>,
    unrealizable: Option<String>,
}

fn cmd_validate(bases: &[IncidenceBase], json: bool) -> CliResult<String> {
    let mut out = String::new();
    let mut all = Vec::new();
    let mut failed = None;
    for b in bases {
        let report = base::validate(b);
        let (normalized, unrealizable) = match base::normalize(b) {
            Ok(nb) => (Some(nb.to_string()), None),
            Err(err) => (None, Some(err.to_string())),
        };
        if !report.all_pass && failed.is_none() {
            failed = Some(b.to_string());
        }
        if !json {
            let _ = writeln!(out, "{report}");
            let _ = writeln!(
                out,
                "  valid: {}",
                if report.all_pass { "yes" } else { "no" }
            );
            match (&normalized, &unrealizable) {
                (Some(nb), _) if nb != &b.to_string() => {
                    let _ = writeln!(out, "  reduces to: {nb}");
                }
                (_, Some(reason)) => {
                    let _ = writeln!(out, "  reduction: {reason}");
                }
                _ => {}
            }
        }
        all.push(ValidateOutput {
            report,
            normalized,
            unrealizable,
        });
    }
    if json {
        out = to_json(&all);
    }
    match failed {
        None => Ok(out),
        Some(b) => Err(Failure {
            code: 1,
            message: format!("{b} fails validation"),
            output: Some(out),
        }),
    }
}

fn cmd_degree(bases: &[IncidenceBase]) -> CliResult<String> {
    let mut out = String::new();
    for b in bases {
        let d = base::degree(b)?;
        let _ = writeln!(out, "{b}\tdegree {d}");
    }
    Ok(out)
}

fn cmd_genus(bases: &[IncidenceBase], json: bool) -> CliResult<String> {
    #[derive(Serialize)]
    struct GenusOutput {
        base: String,
        degree: i64,
        degeneration: i64,
        formula: Option<i64>,
        pair_choices: Vec<i64>,
    }
    let mut rows = Vec::new();
    for b in bases {
        let degree = base::degree(b)?;
        let g = degeneration::genus_by_degeneration(b)?;
        let choices: Vec<i64> = degeneration::genus_over_all_pair_choices(b)?
            .into_iter()
            .collect();
        if choices != [g] {
            return Err(Error::Inconsistent(format!(
                "{b}: join pair choices give genera {choices:?}"
            ))
            .into());
        }
        let twice = degree + 1 - i64::from(b.ambient());
        let formula = (twice >= 0 && twice % 2 == 0).then_some(twice / 2);
        rows.push(GenusOutput {
            base: b.to_string(),
            degree,
            degeneration: g,
            formula,
            pair_choices: choices,
        });
    }
    if json {
        return Ok(to_json(&rows));
    }
    let mut out = String::new();
    for r in &rows {
        let formula = r
            .formula
            .map_or_else(|| "non-integral".to_string(), |f| f.to_string());
        let _ = write!(
            out,
            "{}\tgenus {} (degeneration), {} ((d+1-n)/2)",
            r.base, r.degeneration, formula
        );
        if r.formula != Some(r.degeneration) {
            let speciality = i64::from(parse_ambient(&r.base)) - r.degree + 2 * r.degeneration - 1;
            let _ = write!(out, "\tspecial, i = {speciality}");
        }
        out.push('\n');
    }
    Ok(out)
}

fn parse_ambient(label: &str) -> u32 {
    label
        .split(':')
        .next()
        .and_then(|s| s.parse().ok())
        .expect("base labels start with the ambient dimension")
}

fn cmd_invariants(bases: &[IncidenceBase], json: bool) -> CliResult<String> {
    let mut all = Vec::new();
    let mut out = String::new();
    for b in bases {
        let inv = base::invariants(b)?;
        if !json {
            let _ = writeln!(out, "{b}  {}", b.histogram());
            let _ = writeln!(
                out,
                "  scroll: R^{}_{} ⊂ P^{}",
                inv.degree, inv.genus, inv.ambient
            );
            let _ = writeln!(out, "  e = {}, m = deg 𝔟 = {}", inv.e, inv.divisor_degree);
            let _ = writeln!(
                out,
                "  minimum directrix: degree {} in P^{}",
                inv.min_directrix_degree, inv.min_directrix_space
            );
            let _ = writeln!(out, "  decomposable: {}", inv.decomposable);
            match (inv.bundle, inv.model()) {
                (Some(bundle), Some(model)) => {
                    let _ = writeln!(out, "  normalized bundle: {bundle}");
                    let _ = writeln!(
                        out,
                        "  minimum directrix curves: {}",
                        ruled::min_directrix_count(&model)?
                    );
                }
                _ => {
                    let _ = writeln!(
                        out,
                        "  normalized bundle: not classified for genus {}",
                        inv.genus
                    );
                }
            }
        }
        all.push(inv);
    }
    if json {
        out = to_json(&all);
    }
    Ok(out)
}

fn cmd_join(b: &IncidenceBase, i: usize, j: usize) -> CliResult<String> {
    let split = degeneration::join(b, i, j)?;
    let inv = base::invariants_reporting_speciality(b)?;
    split.check_genus(inv.genus)?;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{b}: join spaces {i} and {j}, meeting in P^{}",
        split.m
    );
    let first = match &split.first.base {
        Some(nb) => format!("{} -> {nb}", split.beta_dot),
        None => format!("{} -> plane of lines through a point", split.beta_dot),
    };
    let second = match &split.second.base {
        Some(nb) => format!("{} -> {nb}", split.beta_ddot),
        None => split.beta_ddot.to_string(),
    };
    let _ = writeln!(
        out,
        "  first:  {first}  (d = {}, g = {})",
        split.first.degree, split.first.genus
    );
    let _ = writeln!(
        out,
        "  second: {second}  (d = {}, g = {})",
        split.second.degree, split.second.genus
    );
    let _ = writeln!(out, "  common generators κ = {}", split.kappa);
    let _ = writeln!(
        out,
        "  total: d = {}, g = {}",
        split.degree(),
        split.genus()
    );
    Ok(out)
}

fn cmd_separate(b: &IncidenceBase, i: usize, j: Option<usize>) -> CliResult<String> {
    let partner = j.map_or(Partner::AddedHyperplane, Partner::Index);
    let sep = degeneration::separate(b, i, partner)?;
    let before = base::invariants_reporting_speciality(b)?;
    let after = base::invariants_reporting_speciality(&sep.base)?;
    let mut out = String::new();
    let _ = writeln!(out, "{b} -> {}", sep.base);
    let _ = writeln!(out, "  separated pair: {:?}", sep.pair);
    let _ = writeln!(
        out,
        "  degree {} -> {}, genus {} -> {}",
        before.degree, after.degree, before.genus, after.genus
    );
    Ok(out)
}

fn cmd_schubert(n: u32, codims: &[u32], json: bool) -> CliResult<String> {
    let product = schubert::special_product(n, codims)?;
    let total: u32 = codims.iter().sum();
    let top = total == 2 * n - 2;
    let pieri = if top {
        Some(schubert::intersection_number(n, codims)?)
    } else {
        None
    };
    let oracle = if top {
        Some(oracle_intersection_number(n, codims)?)
    } else {
        None
    };
    if pieri != oracle {
        return Err(Error::Inconsistent(format!(
            "Pieri gives {pieri:?}, bialternant gives {oracle:?}"
        ))
        .into());
    }
    if json {
        #[derive(Serialize)]
        struct SchubertOutput {
            ambient: u32,
            codims: Vec<u32>,
            product: String,
            intersection_number: Option<String>,
        }
        return Ok(to_json(&SchubertOutput {
            ambient: n,
            codims: codims.to_vec(),
            product: product.to_string(),
            intersection_number: pieri.map(|v| v.to_string()),
        }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "product in G(1,{n}): {product}");
    match pieri {
        Some(v) => {
            let _ = writeln!(
                out,
                "intersection number: {v} (Pieri and bialternant agree)"
            );
        }
        None => {
            let _ = writeln!(
                out,
                "codimension {total} is not the top degree {}",
                2 * n - 2
            );
        }
    }
    Ok(out)
}

fn cmd_surface(
    g: u32,
    e: i64,
    m: i64,
    e_trivial: bool,
    indecomposable: bool,
    json: bool,
) -> CliResult<String> {
    let model = RuledSurfaceModel::new(g, e, !indecomposable, e_trivial, m)?;
    let very_ample = model.very_ample()?;
    let embedding = if very_ample {
        Some(ruled::embedding_invariants(&model)?)
    } else {
        None
    };
    let incidence = model.is_incidence()?;
    let clauses = ruled::incidence_clauses(&model)?;
    let predicted = if incidence {
        Some(model.predicted_base()?)
    } else {
        None
    };
    let criterion = if g == 0 && e >= 1 {
        Some(ruled::rational_section_count_criterion(m, e)?)
    } else {
        None
    };
    if json {
        #[derive(Serialize)]
        struct SurfaceOutput {
            model: String,
            very_ample: bool,
            degree: Option<i64>,
            ambient: Option<i64>,
            incidence: bool,
            clauses: Vec<String>,
            predicted_base: Option<String>,
            section_count: Option<(i64, i64)>,
        }
        return Ok(to_json(&SurfaceOutput {
            model: model.to_string(),
            very_ample,
            degree: embedding.map(|(d, _)| d),
            ambient: embedding.map(|(_, n)| n),
            incidence,
            clauses: clauses.iter().map(|c| format!("{c:?}")).collect(),
            predicted_base: predicted.as_ref().map(ToString::to_string),
            section_count: criterion.map(|(l, r, _)| (l, r)),
        }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "{model}");
    let _ = writeln!(out, "  very ample: {very_ample}");
    if let Some((d, n)) = embedding {
        let _ = writeln!(out, "  scroll: R^{d}_{g} ⊂ P^{n}");
    }
    if let Some((lhs, rhs, _)) = criterion {
        let _ = writeln!(out, "  section count: {lhs} vs 2n-3 = {rhs}");
    }
    let _ = writeln!(out, "  incidence scroll: {incidence}");
    if let Some(b) = predicted {
        let _ = writeln!(out, "  base: {b}  {}", b.histogram());
        if model.decomposable() {
            let reqs = ruled::base_structure_constraints(&model)?;
            let parts: Vec<String> = reqs
                .iter()
                .map(|r| format!("{} P^{}", r.min_count, r.dim))
                .collect();
            let _ = writeln!(
                out,
                "  forced by directrices: at least {}",
                parts.join(", ")
            );
        }
    }
    Ok(out)
}

fn cmd_enumerate(n: u32, json: bool) -> CliResult<String> {
    let entries = classify::enumerate_bases(n)?;
    if json {
        return Ok(to_json(&entries));
    }
    let mut out = String::new();
    for entry in &entries {
        let inv = &entry.invariants;
        let _ = write!(
            out,
            "{}\t{}\td = {}, g = {}",
            entry.base,
            entry.base.histogram(),
            inv.degree,
            inv.genus
        );
        if inv.speciality != 0 {
            let _ = write!(out, ", i = {}", inv.speciality);
        }
        out.push('\n');
    }
    Ok(out)
}

fn cmd_table(genus: u32, max_n: u32, json: bool) -> CliResult<String> {
    let (rational, elliptic) = classify::build_tables(max_n)?;
    let rows = if genus == 0 { rational } else { elliptic };
    Ok(if json {
        render_table_json(&rows)
    } else {
        render_table_text(genus, &rows)
    })
}

fn cmd_audit(max_n: u32, json: bool) -> CliResult<String> {
    let report = classify::audit(max_n);
    let out = if json {
        to_json(&report)
    } else {
        report.render_text()
    };
    if report.is_clean() {
        Ok(out)
    } else {
        Err(Failure {
            code: 3,
            message: format!("{} violations", report.violations.len()),
            output: Some(out),
        })
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    let json = cli.json;
    match &cli.command {
        Command::Validate(args) => cmd_validate(&load_bases(args)?, json),
        Command::Degree(args) => cmd_degree(&load_bases(args)?),
        Command::Genus(args) => cmd_genus(&load_bases(args)?, json),
        Command::Invariants(args) => cmd_invariants(&load_bases(args)?, json),
        Command::Join { base, i, j } => cmd_join(&parse_base(base)?, *i, *j),
        Command::Separate { base, i, j, .. } => cmd_separate(&parse_base(base)?, *i, *j),
        Command::Schubert { n, c } => cmd_schubert(*n, c, json),
        Command::Surface {
            g,
            e,
            m,
            e_trivial,
            indecomposable,
        } => cmd_surface(*g, *e, *m, *e_trivial, *indecomposable, json),
        Command::Enumerate { n } => cmd_enumerate(*n, json),
        Command::Table { genus, max_n } => cmd_table(*genus, *max_n, json),
        Command::Audit { max_n } => cmd_audit(*max_n, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (output, code) = match run(&cli) {
        Ok(out) => (Some(out), 0),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            (failure.output, failure.code)
        }
    };
    if let Some(out) = output {
        match &cli.out {
            Some(path) => {
                if let Err(err) = fs::write(path, out) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(1);
                }
            }
            None => print!("{out}"),
        }
    }
    ExitCode::from(code)
}

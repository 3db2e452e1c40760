//! Single binary with one subcommand per pipeline stage. Exit codes:
//! 0 success, 1 validation or check failure, 2 parse or schema error.
//! All machine-readable output is deterministic: sets are serialized in
//! index order and timestamps appear only in the human battery report.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tightspec::carrier::{Subset, DEFAULT_CARRIER_CAP, MAX_CARRIER};
use tightspec::error::Error;
use tightspec::fintop;
use tightspec::gpd;
use tightspec::invsemi;
use tightspec::io::{detect_kind, InputKind};
use tightspec::rel;
use tightspec::report::ValidationReport;
use tightspec::spectrum;
use tightspec::tight;
use tightspec_battery::{run_battery, BatteryOptions};

#[derive(Parser)]
#[command(name = "tightspec", version, about = "tight spectra and étale groupoids of finite pseudobases")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an input file (kind auto-detected from its schema).
    Validate {
        file: PathBuf,
        /// Force the input kind: relation | topology | semigroup | groupoid
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// List the tight subsets of a relation file.
    Tight {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the tight spectrum of a relation file (JSON, or DOT incidence).
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Build the tight groupoid of a semigroup file (JSON, or DOT).
    Groupoid {
        file: PathBuf,
        #[arg(long)]
        dot: bool,
    },
    /// Verify groupoid recovery from a bisection family (default: all
    /// non-empty bisections).
    Recover {
        file: PathBuf,
        /// JSON file holding an array of arrays of element labels.
        #[arg(long)]
        bisections: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded verification battery.
    Battery {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long = "max-size", default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        json: bool,
    },
}

fn carrier_cap() -> usize {
    std::env::var("TIGHT_MAX_CARRIER")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .map(|v| v.min(MAX_CARRIER))
        .unwrap_or(DEFAULT_CARRIER_CAP)
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

/// Parse and schema errors exit 2; everything else downstream exits 1.
fn exit_for(err: &Error) -> ExitCode {
    match err {
        Error::Json(_)
        | Error::Schema(_)
        | Error::UnknownLabel(_)
        | Error::DuplicateLabel(_)
        | Error::EmptyLabel(_)
        | Error::EmptyCarrier
        | Error::CarrierTooLarge { .. } => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn emit_report(report: &ValidationReport, json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(report).unwrap());
    } else {
        print!("{}", report.render_text());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_validate(file: &Path, kind: Option<String>, json: bool) -> Result<ExitCode, Error> {
    let text = read(file)?;
    let kind = match kind {
        Some(name) => InputKind::from_name(&name)
            .ok_or_else(|| Error::Schema(format!("unknown kind {name:?}")))?,
        None => detect_kind(&text)?,
    };
    let cap = carrier_cap();
    let report = match kind {
        InputKind::Relation => {
            let r = rel::parse_relation(&text, cap)?;
            let mut report = r.validate_pseudobasis();
            if report.passed() {
                let sep = r.is_separative()?;
                let check = sep.check("separative").unwrap();
                report.advisory("separative", check.pass, check.witness.clone());
            }
            report
        }
        InputKind::Topology => {
            let (space, mut report) = fintop::parse_topology_report(&text, cap)?;
            if let Some(space) = space {
                // classification lines are informative, not pass/fail
                for check in fintop::classify(&space).checks {
                    report.advisory(&format!("classify.{}", check.name), check.pass, check.witness);
                }
            }
            report
        }
        InputKind::Semigroup => {
            let (parsed, mut report) = invsemi::parse_semigroup_report(&text, cap)?;
            if let Some(s) = parsed {
                report.absorb("pseudobasic", s.validate_pseudobasic());
            }
            report
        }
        InputKind::Groupoid => {
            let (_, report) = gpd::parse_groupoid_report(&text, cap)?;
            report
        }
    };
    Ok(emit_report(&report, json))
}

fn cmd_tight(file: &Path, json: bool) -> Result<ExitCode, Error> {
    let text = read(file)?;
    let r = rel::parse_relation(&text, carrier_cap())?;
    let tights = tight::enumerate_tight(&r)?;
    if json {
        let value = serde_json::json!({
            "tight": tights
                .sets
                .iter()
                .map(|t| r.carrier().subset_labels(t.members()))
                .collect::<Vec<_>>(),
            "empty_is_tight": tights.empty_is_tight,
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let rendered: Vec<String> =
            tights.sets.iter().map(|t| r.carrier().format_subset(t.members())).collect();
        println!("[{}]", rendered.join(", "));
        if tights.empty_is_tight {
            println!("note: the empty subset is tight (excluded from the spectrum)");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn spectrum_dot(spec: &spectrum::SpectrumSpace) -> String {
    let carrier = spec.rel().carrier();
    let mut out = String::from("graph spectrum {\n");
    for t in spec.points() {
        out.push_str(&format!("  \"T{}\" [shape=circle];\n", carrier.format_subset(t.members())));
    }
    for p in 0..carrier.size() {
        out.push_str(&format!("  \"O_{}\" [shape=box];\n", carrier.label(p)));
        for i in spec.o_elem(p).iter() {
            out.push_str(&format!(
                "  \"T{}\" -- \"O_{}\";\n",
                carrier.format_subset(spec.points()[i].members()),
                carrier.label(p)
            ));
        }
        out.push_str(&format!("  \"O^{}\" [shape=diamond];\n", carrier.label(p)));
        for i in spec.o_up_elem(p).iter() {
            out.push_str(&format!(
                "  \"T{}\" -- \"O^{}\";\n",
                carrier.format_subset(spec.points()[i].members()),
                carrier.label(p)
            ));
        }
    }
    out.push_str("}\n");
    out
}

fn cmd_spectrum(file: &Path, dot: bool) -> Result<ExitCode, Error> {
    let text = read(file)?;
    let r = rel::parse_relation(&text, carrier_cap())?;
    let spec = spectrum::build_spectrum(&r)?;
    if dot {
        print!("{}", spectrum_dot(&spec));
    } else {
        let file = spectrum::SpectrumFile::from_spectrum(&spec);
        println!("{}", serde_json::to_string_pretty(&file).unwrap());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_groupoid(file: &Path, dot: bool) -> Result<ExitCode, Error> {
    let text = read(file)?;
    let s = invsemi::parse_semigroup(&text, carrier_cap())?;
    let tg = gpd::tight_groupoid(&s)?;
    if dot {
        print!("{}", gpd::groupoid_dot(&tg.groupoid));
    } else {
        let file = gpd::GroupoidFile::from_groupoid(&tg.groupoid);
        println!("{}", serde_json::to_string_pretty(&file).unwrap());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_recover(file: &Path, bisections: Option<PathBuf>, json: bool) -> Result<ExitCode, Error> {
    let text = read(file)?;
    let g = gpd::parse_groupoid(&text, carrier_cap())?;
    let members: Vec<Subset> = match bisections {
        Some(path) => {
            let btext = read(&path)?;
            let raw: Vec<Vec<String>> = serde_json::from_str(&btext)?;
            raw.iter()
                .map(|labels| {
                    g.elements().subset_from_labels(labels.iter().map(String::as_str))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
        None => g.nonempty_bisections()?,
    };
    let report = gpd::recover_groupoid(&g, &members)?;
    Ok(emit_report(&report, json))
}

fn cmd_battery(seed: u64, count: usize, max_size: usize, json: bool) -> Result<ExitCode, Error> {
    let opts = BatteryOptions { seed, count, max_size, ..Default::default() };
    let report = run_battery(&opts);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Validate { file, kind, json } => cmd_validate(&file, kind, json),
        Cmd::Tight { file, json } => cmd_tight(&file, json),
        Cmd::Spectrum { file, dot } => cmd_spectrum(&file, dot),
        Cmd::Groupoid { file, dot } => cmd_groupoid(&file, dot),
        Cmd::Recover { file, bisections, json } => cmd_recover(&file, bisections, json),
        Cmd::Battery { seed, count, max_size, json } => cmd_battery(seed, count, max_size, json),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

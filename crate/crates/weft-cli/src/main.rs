//! Command-line front door: parse, compose, compare, normalize, render,
//! validate, and cross-check wiring diagrams.
//!
//! Exit codes: 0 for success (including "equal", "valid", "engines agree"),
//! 2 for a determinate negative answer (not equal, invalid, engines
//! disagree), 1 for any error.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use weft_core::diagram::{JsonError, Mode, PortType, VertexId, WiringDiagram};
use weft_core::expr::{parse, typecheck, Expression, Signature};
use weft_core::oracle::{check_substitution, OracleError};
use weft_core::{canonicalize, compile, export_dot, isomorphism};

#[derive(Parser)]
#[command(name = "weft", version, about = "Wiring-diagram calculus for symmetric monoidal categories")]
struct Cli {
    /// Emit machine-readable JSON instead of text summaries.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and typecheck a source file, printing its signature summary.
    Parse { file: PathBuf },
    /// Compile two terms and compose them in sequence (first ; second).
    Compose {
        file: PathBuf,
        /// Term name; pass --term twice, first then second.
        #[arg(long = "term", value_name = "NAME")]
        terms: Vec<String>,
        /// Write the composite diagram JSON here instead of stdout.
        #[arg(short, long, value_name = "OUT.json")]
        output: Option<PathBuf>,
    },
    /// Decide whether two terms denote the same morphism.
    Equal {
        file: PathBuf,
        /// Term name; pass --term twice.
        #[arg(long = "term", value_name = "NAME")]
        terms: Vec<String>,
        /// Also print the box bijection when the terms are equal.
        #[arg(long)]
        witness: bool,
    },
    /// Print a term's diagram in canonical form.
    Normalize {
        file: PathBuf,
        #[arg(long, value_name = "NAME")]
        term: String,
        /// Write the canonical JSON here instead of stdout.
        #[arg(short, long, value_name = "OUT.json")]
        output: Option<PathBuf>,
    },
    /// Render a term as a Graphviz digraph.
    Render {
        file: PathBuf,
        #[arg(long, value_name = "NAME")]
        term: String,
        #[arg(short, long, value_name = "OUT.dot")]
        output: PathBuf,
    },
    /// Check a diagram JSON file against a wiring mode.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Substitute SUB for one box of HOST on both engines and compare.
    Oracle {
        host: PathBuf,
        sub: PathBuf,
        /// Box id in the host file to fill (box ids start at 3).
        #[arg(long, value_name = "ID")]
        at: VertexId,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    General,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::General => Mode::General,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Parse { file } => cmd_parse(&file, cli.json),
        Cmd::Compose { file, terms, output } => cmd_compose(&file, &terms, output.as_deref()),
        Cmd::Equal { file, terms, witness } => cmd_equal(&file, &terms, witness, cli.json),
        Cmd::Normalize { file, term, output } => cmd_normalize(&file, &term, output.as_deref()),
        Cmd::Render { file, term, output } => cmd_render(&file, &term, &output),
        Cmd::Validate { file, mode } => cmd_validate(&file, mode.into()),
        Cmd::Oracle { host, sub, at } => cmd_oracle(&host, &sub, at, cli.json),
    }
}

fn load(file: &Path) -> Result<(Signature, Vec<(String, Expression)>)> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    parse(&text).map_err(|e| anyhow!("{}: {e}", file.display()))
}

fn find<'a>(terms: &'a [(String, Expression)], name: &str) -> Result<&'a Expression> {
    terms
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, e)| e)
        .ok_or_else(|| anyhow!("no term named `{name}`"))
}

fn two<'a>(terms: &'a [String]) -> Result<(&'a str, &'a str)> {
    match terms {
        [a, b] => Ok((a, b)),
        _ => bail!("pass --term exactly twice, got {}", terms.len()),
    }
}

fn load_diagram(file: &Path, mode: Mode) -> Result<WiringDiagram> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    WiringDiagram::from_json(&text, mode).map_err(|e| anyhow!("{}: {e}", file.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn types_str(types: &[PortType]) -> String {
    if types.is_empty() {
        "I".to_string()
    } else {
        types.iter().map(|t| t.0.as_str()).collect::<Vec<_>>().join(" * ")
    }
}

fn cmd_parse(file: &Path, as_json: bool) -> Result<u8> {
    let (sig, terms) = load(file)?;
    let term_types = terms
        .iter()
        .map(|(name, e)| {
            let (dom, cod) = typecheck(e, &sig).map_err(|err| anyhow!("term `{name}`: {err}"))?;
            Ok((name.clone(), dom, cod))
        })
        .collect::<Result<Vec<_>>>()?;
    if as_json {
        let doc = json!({
            "objects": sig.objects().collect::<Vec<_>>(),
            "generators": sig
                .generators()
                .map(|(name, (dom, cod))| json!({"name": name, "dom": dom, "cod": cod}))
                .collect::<Vec<_>>(),
            "terms": term_types
                .iter()
                .map(|(name, dom, cod)| json!({"name": name, "dom": dom, "cod": cod}))
                .collect::<Vec<_>>(),
        });
        println!("{doc}");
    } else {
        let objects: Vec<&str> = sig.objects().map(|o| o.0.as_str()).collect();
        println!("objects: {}", objects.join(" "));
        for (name, (dom, cod)) in sig.generators() {
            println!("gen {name} : {} -> {}", types_str(dom), types_str(cod));
        }
        for (name, dom, cod) in &term_types {
            println!("term {name} : {} -> {}", types_str(dom), types_str(cod));
        }
    }
    Ok(0)
}

fn cmd_compose(file: &Path, terms: &[String], output: Option<&Path>) -> Result<u8> {
    let (sig, defined) = load(file)?;
    let (a, b) = two(terms)?;
    let lhs = compile(find(&defined, a)?, &sig).map_err(|e| anyhow!("term `{a}`: {e}"))?;
    let rhs = compile(find(&defined, b)?, &sig).map_err(|e| anyhow!("term `{b}`: {e}"))?;
    let composite = weft_core::compose(&lhs, &rhs)
        .map_err(|e| anyhow!("composing `{a}` with `{b}`: {e}"))?;
    emit(output, &composite.diagram().to_json())?;
    Ok(0)
}

fn cmd_equal(file: &Path, terms: &[String], witness: bool, as_json: bool) -> Result<u8> {
    let (sig, defined) = load(file)?;
    let (a, b) = two(terms)?;
    let lhs = compile(find(&defined, a)?, &sig).map_err(|e| anyhow!("term `{a}`: {e}"))?;
    let rhs = compile(find(&defined, b)?, &sig).map_err(|e| anyhow!("term `{b}`: {e}"))?;
    let mapping: Option<BTreeMap<VertexId, VertexId>> =
        isomorphism(lhs.diagram(), rhs.diagram()).map_err(|e| anyhow!("{e}"))?;
    let equal = mapping.is_some();
    if as_json {
        let witness_doc = match (&mapping, witness) {
            (Some(m), true) => json!(m
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<BTreeMap<String, VertexId>>()),
            _ => json!(null),
        };
        println!("{}", json!({ "equal": equal, "witness": witness_doc }));
    } else {
        println!("{}", if equal { "equal" } else { "not equal" });
        if witness {
            if let Some(m) = &mapping {
                for (k, v) in m {
                    println!("{k} -> {v}");
                }
            }
        }
    }
    Ok(if equal { 0 } else { 2 })
}

fn cmd_normalize(file: &Path, term: &str, output: Option<&Path>) -> Result<u8> {
    let (sig, defined) = load(file)?;
    let m = compile(find(&defined, term)?, &sig).map_err(|e| anyhow!("term `{term}`: {e}"))?;
    emit(output, &canonicalize(m.diagram()).diagram.to_json())?;
    Ok(0)
}

fn cmd_render(file: &Path, term: &str, output: &Path) -> Result<u8> {
    let (sig, defined) = load(file)?;
    let m = compile(find(&defined, term)?, &sig).map_err(|e| anyhow!("term `{term}`: {e}"))?;
    fs::write(output, export_dot(m.diagram()))
        .with_context(|| format!("writing {}", output.display()))?;
    Ok(0)
}

fn cmd_validate(file: &Path, mode: Mode) -> Result<u8> {
    let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    match WiringDiagram::from_json(&text, mode) {
        Ok(_) => {
            println!("{}", json!({ "valid": true, "violations": [] }));
            Ok(0)
        }
        Err(JsonError::Invalid { report, .. }) => {
            let violations: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            println!("{}", json!({ "valid": false, "violations": violations }));
            Ok(2)
        }
        Err(e) => Err(anyhow!("{}: {e}", file.display())),
    }
}

fn cmd_oracle(host: &Path, sub: &Path, at: VertexId, as_json: bool) -> Result<u8> {
    let host_d = load_diagram(host, Mode::Strict)?;
    let sub_d = load_diagram(sub, Mode::Strict)?;
    match check_substitution(&host_d, at, &sub_d) {
        Ok(report) => {
            if as_json {
                let mut doc = serde_json::to_value(&report)?;
                doc["agree"] = json!(true);
                println!("{doc}");
            } else {
                let c = report.cases;
                println!(
                    "engines agree: {} boxes, {} wires (untouched {}, incoming {}, passing {}, outgoing {}, internal {})",
                    report.boxes, report.wires, c.untouched, c.incoming, c.passing, c.outgoing, c.internal
                );
            }
            Ok(0)
        }
        Err(OracleError::Disagreement(detail)) => {
            if as_json {
                println!("{}", json!({ "agree": false, "detail": detail }));
            } else {
                println!("engines disagree: {detail}");
            }
            Ok(2)
        }
        Err(e) => Err(anyhow!("{e}")),
    }
}

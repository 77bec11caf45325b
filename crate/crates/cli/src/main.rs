//! `fourient`: command-line front end for fourient-core.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fourient_core::atlas::{self, Atlas};
use fourient_core::bijection;
use fourient_core::catalog::{self, CatalogEntry};
use fourient_core::classes;
use fourient_core::error::Error;
use fourient_core::io;
use fourient_core::lawrence::{self, Heights, Side};
use fourient_core::matroid::RepresentedMatroid;
use fourient_core::ribbon;
use fourient_core::selftest::{self, Scope};
use fourient_core::signature::{self, SignaturePolarity};

#[derive(Parser, Debug)]
#[command(name = "fourient", version, about = "Bases, reversal classes, atlases and Lawrence polytopes of regular matroids")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Graph JSON or matrix text; `builtin:<name>` reads a catalog entry.
    #[arg(long, short, global = true)]
    input: Option<String>,
    /// Where to write the emitted file (default: stdout).
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Skip hypothesis and invariant checks.
    #[arg(long, global = true)]
    no_verify: bool,
    /// Worker threads for the parallel enumerations.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sizes of bases, signed circuits and cocircuits, and reversal classes.
    Info,
    /// Build an atlas and report whether it is dissecting and triangulating.
    Atlas {
        #[command(subcommand)]
        source: AtlasSource,
    },
    /// Tables of the basis map, the subset map or its inverse.
    Map {
        mode: MapMode,
        /// External atlas file.
        #[arg(long)]
        ext: PathBuf,
        /// Internal atlas file.
        #[arg(long)]
        int: PathBuf,
    },
    /// Simplices of the Lawrence polytope.
    Lawrence {
        #[arg(long, value_enum, default_value_t = SideArg::Primal)]
        side: SideArg,
        #[command(subcommand)]
        sub: LawrenceCommand,
    },
    /// Run the invariant suites over the built-in catalog.
    Selftest {
        #[arg(value_enum, default_value_t = ScopeArg::Quick)]
        scope: ScopeArg,
        /// Catalog entry file (or a JSON list of entries) to test instead.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum AtlasSource {
    /// From a signature file.
    Sigma { file: PathBuf },
    /// Bernardi external atlas; the ribbon defaults to the one in the input.
    Bernardi { ribbon: Option<PathBuf> },
    /// From the acyclic signature picked by generic weights, e.g. `(1,0)`.
    Weights {
        weights: String,
        #[arg(long, value_enum, default_value_t = PolarityArg::Circuit)]
        polarity: PolarityArg,
    },
    /// Internal atlas orienting tree edges away from vertex `q` (1-based).
    QRoot { q: usize },
}

#[derive(Subcommand, Debug)]
enum LawrenceCommand {
    /// Every maximal simplex, by the rank test.
    Simplices,
    /// Classify a family of simplices.
    Check { family: PathBuf },
    /// Volume of one simplex and of the polytope.
    Volume,
    /// Regular triangulation for heights: a file or `h(+1),h(-1),h(+2),...`.
    Regular { heights: String },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MapMode {
    F,
    Phi,
    Inverse,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Primal,
    Dual,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ScopeArg {
    Quick,
    Full,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolarityArg {
    Circuit,
    Cocircuit,
}

enum Failure {
    /// Exit 1.
    Verify(String),
    /// Exit 2.
    Input(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Hypothesis(_) | Error::NotSignatureInduced { .. } => Failure::Verify(e.to_string()),
            other => Failure::Input(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Info => info(g),
        Command::Atlas { source } => atlas_cmd(g, source),
        Command::Map { mode, ext, int } => map_cmd(g, *mode, ext, int),
        Command::Lawrence { side, sub } => lawrence_cmd(g, *side, sub),
        Command::Selftest { scope, catalog } => selftest_cmd(g, *scope, catalog.as_deref()),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn input_text(g: &Global) -> anyhow::Result<String> {
    let input = g.input.as_deref().ok_or_else(|| anyhow!("--input is required"))?;
    if let Some(name) = input.strip_prefix("builtin:") {
        return catalog::builtin_text(name)
            .map(str::to_owned)
            .ok_or_else(|| anyhow!("no built-in entry {name:?}; have {}", catalog::builtin_names().join(", ")));
    }
    read(Path::new(input))
}

fn parse_input<T>(what: &str, r: fourient_core::error::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(anyhow::Error::new(e).context(format!("in {what}"))))
}

fn load(g: &Global) -> Result<(String, RepresentedMatroid), Failure> {
    let text = input_text(g)?;
    let m = parse_input("input", io::parse_matroid(&text))?;
    Ok((text, m))
}

fn emit(g: &Global, data: &str) -> Outcome {
    let mut data = data.to_owned();
    if !data.ends_with('\n') {
        data.push('\n');
    }
    match &g.output {
        Some(p) => std::fs::write(p, data).with_context(|| format!("cannot write {}", p.display()))?,
        None => print!("{data}"),
    }
    Ok(())
}

fn verdict(key: &str, value: impl Display) {
    eprintln!("{key}={value}");
}

fn info(g: &Global) -> Outcome {
    let (_, m) = load(g)?;
    let mut out = format!(
        "n={}\nr={}\nbases={}\ncircuits={}\ncocircuits={}\n",
        m.n(),
        m.rank(),
        m.bases().len(),
        m.signed_circuits().len(),
        m.signed_cocircuits().len()
    );
    match classes::enumerate_classes(&m) {
        Ok(cs) => out.push_str(&format!("classes={}\n", cs.len())),
        Err(Error::TooLarge { cap, .. }) => out.push_str(&format!("classes=skipped (n > {cap})\n")),
        Err(e) => return Err(e.into()),
    }
    emit(g, &out)
}

fn atlas_cmd(g: &Global, source: &AtlasSource) -> Outcome {
    let (text, m) = load(g)?;
    let a = match source {
        AtlasSource::Sigma { file } => {
            let sig = parse_input("signature", io::parse_signature(&m, &read(file)?))?;
            signature::atlas_from_signature(&m, &sig)?
        }
        AtlasSource::Bernardi { ribbon: file } => {
            let graph = m.graph().ok_or(Error::NotGraphic)?;
            let rtext = match file {
                Some(p) => read(p)?,
                None => text,
            };
            let rg = parse_input("ribbon", io::parse_ribbon(graph, &rtext))?;
            ribbon::bernardi_external_atlas(&m, &rg)?
        }
        AtlasSource::Weights { weights, polarity } => {
            let w = parse_input("weights", io::parse_weights(weights))?;
            let p = match polarity {
                PolarityArg::Circuit => SignaturePolarity::Circuit,
                PolarityArg::Cocircuit => SignaturePolarity::Cocircuit,
            };
            let sig = signature::acyclic_signature_from_weights(&m, &w, p)?;
            signature::atlas_from_signature(&m, &sig)?
        }
        AtlasSource::QRoot { q } => {
            if *q == 0 {
                return Err(Failure::Input(anyhow!("vertices are numbered from 1")));
            }
            ribbon::away_from_root_internal_atlas(&m, q - 1)?
        }
    };
    emit(g, &io::atlas_to_json(&a))?;
    verdict("polarity", a.polarity());
    if !g.no_verify {
        verdict("dissecting", atlas::is_dissecting(&m, &a));
        verdict("triangulating", atlas::is_triangulating(&m, &a));
        match signature::signature_from_atlas(&m, &a) {
            Ok(_) => verdict("signature_induced", true),
            Err(e @ Error::NotSignatureInduced { .. }) => {
                verdict("signature_induced", false);
                eprintln!("witness: {e}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

fn load_atlas(m: &RepresentedMatroid, path: &Path) -> Result<Atlas, Failure> {
    parse_input(&path.display().to_string(), io::parse_atlas(m, &read(path)?))
}

fn map_cmd(g: &Global, mode: MapMode, ext: &Path, int: &Path) -> Outcome {
    let (_, m) = load(g)?;
    let a_ext = load_atlas(&m, ext)?;
    let a_int = load_atlas(&m, int)?;
    let verify = !g.no_verify;
    if verify {
        let fbar = bijection::f_bar(&m, &a_ext, &a_int, true)?;
        let h = fbar.hypotheses.expect("verification requested");
        verdict("external_dissecting", h.external_dissecting);
        verdict("external_triangulating", h.external_triangulating);
        verdict("internal_dissecting", h.internal_dissecting);
        verdict("internal_triangulating", h.internal_triangulating);
        verdict("bijective", fbar.is_bijective());
        if let Some((b1, b2)) = &fbar.collision {
            let o = |b| fbar.table.iter().find(|(x, _, _)| x == b).map(|(_, o, _)| o.to_string()).unwrap_or_default();
            eprintln!("collision: {b1} -> {} and {b2} -> {} lie in one reversal class", o(b1), o(b2));
            return Err(Failure::Verify("the basis map is not injective on classes".into()));
        }
        if !h.hold() {
            return Err(Failure::Verify("atlas hypotheses fail".into()));
        }
    }
    match mode {
        MapMode::F => emit(g, &io::f_table_to_json(&bijection::f_table(&m, &a_ext, &a_int)?)),
        MapMode::Phi | MapMode::Inverse => {
            let t = bijection::phi_table(&m, &a_ext, &a_int, verify)?;
            if verify {
                verdict("subset_bijective", t.is_bijective());
                verdict("tiling", t.is_tiling());
                if let Some((o1, o2)) = t.tiling_violation() {
                    eprintln!("tiling violation: {o1} and {o2}");
                    return Err(Failure::Verify("subset map is not a tiling".into()));
                }
                if !t.is_bijective() {
                    return Err(Failure::Verify("subset map is not bijective".into()));
                }
            }
            match mode {
                MapMode::Phi => emit(g, &io::phi_table_to_json(&t)),
                _ => {
                    let inv: BTreeMap<String, String> = t
                        .entries()
                        .into_iter()
                        .map(|(o, s)| {
                            let key = s.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(",");
                            (key, o.to_string())
                        })
                        .collect();
                    emit(g, &serde_json::to_string_pretty(&inv).context("serializing table")?)
                }
            }
        }
    }
}

fn parse_heights(n: usize, arg: &str) -> Result<Heights, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        return parse_input("heights", io::parse_heights(n, &read(path)?));
    }
    let values = parse_input("heights", io::parse_weights(arg))?;
    if values.len() != 2 * n {
        return Err(Failure::Input(anyhow!("expected {} heights, got {}", 2 * n, values.len())));
    }
    Ok(Heights::from_interleaved(&values))
}

fn lawrence_cmd(g: &Global, side: SideArg, sub: &LawrenceCommand) -> Outcome {
    let (_, m) = load(g)?;
    let side = match side {
        SideArg::Primal => Side::Primal,
        SideArg::Dual => Side::Dual,
    };
    let model = lawrence::build_lawrence(&m, side)?;
    match sub {
        LawrenceCommand::Simplices => {
            let mut all = model.enumerate_maximal_simplices();
            all.sort();
            verdict("simplices", all.len());
            emit(g, &io::family_to_json(&all))
        }
        LawrenceCommand::Check { family } => {
            let fam = parse_input("family", io::parse_family(m.n(), &read(family)?))?;
            for s in &fam {
                if !model.is_maximal_simplex(s) {
                    return Err(Failure::Input(anyhow!("{s} is not a maximal simplex")));
                }
            }
            let c = model.classify_family(&fam);
            emit(g, &format!("simplices={}\ndissection={}\ntriangulation={}", fam.len(), c.dissection, c.triangulation))
        }
        LawrenceCommand::Volume => {
            let count = model.enumerate_maximal_simplices().len();
            emit(
                g,
                &format!(
                    "simplex={}\nsimplices={count}\nbases={}\ntotal={}",
                    model.simplex_volume(),
                    m.bases().len(),
                    model.polytope_volume()
                ),
            )
        }
        LawrenceCommand::Regular { heights } => {
            let h = parse_heights(m.n(), heights)?;
            let a = model.regular_triangulation_from_heights(&h)?;
            emit(g, &io::atlas_to_json(&a))?;
            if !g.no_verify {
                let fam = model.simplices_of_atlas(&a)?;
                let c = model.classify_family(&fam);
                verdict("triangulation", c.triangulation);
                if !c.triangulation {
                    return Err(Failure::Verify("regular family is not a triangulation".into()));
                }
                if model.n() + model.working().rank() <= lawrence::GEOMETRY_CAP {
                    let cells = model.regular_triangulation_geometric(&h)?;
                    let agrees = model.chi_atlas(&cells)? == a;
                    verdict("lower_cells_agree", agrees);
                    if !agrees {
                        return Err(Failure::Verify("lifted lower cells differ from the signature route".into()));
                    }
                }
            }
            Ok(())
        }
    }
}

fn selftest_cmd(g: &Global, scope: ScopeArg, file: Option<&Path>) -> Outcome {
    let scope = match scope {
        ScopeArg::Quick => Scope::Quick,
        ScopeArg::Full => Scope::Full,
    };
    let report = match file {
        None => selftest::run_builtin(scope),
        Some(p) => {
            let text = read(p)?;
            let entries = if text.trim_start().starts_with('[') {
                let list: Vec<serde_json::Value> =
                    serde_json::from_str(&text).with_context(|| format!("in {}", p.display()))?;
                list.iter()
                    .map(|v| CatalogEntry::from_json(&v.to_string()))
                    .collect::<Result<Vec<_>, _>>()
            } else {
                CatalogEntry::from_json(&text).map(|e| vec![e])
            };
            let entries = parse_input("catalog", entries)?;
            selftest::run_entries(&entries, scope)
        }
    };
    emit(g, &report.to_string())?;
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<String> = report.failures().map(|r| format!("{}: {}", r.entry, r.check)).collect();
        Err(Failure::Verify(names.join("; ")))
    }
}

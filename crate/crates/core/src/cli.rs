//! Command-line front end. `main` parses [`Cli`] and hands it to [`run`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::catalog::{
    self, bitop_to_dot, classical_to_dot, enumerate_lattices, parse_hom, parse_lattice,
    CatalogError, GeneratorConfig,
};
use crate::duality::{b_naturality, classify_hom, delta_natural_iso_check, spec_b_on_hom};
use crate::lattice::FiniteLattice;
use crate::par::Execution;
use crate::spectra::{BitopSpectrum, ClassicalSpectrum};
use crate::verify::{verify_lattices, verify_morphisms, Report, Verdict};

/// Environment variable capping the worker pool.
pub const JOBS_ENV: &str = "LATTICE_SPECTRA_JOBS";
/// Largest lattice included in the `--morphisms` corpus.
pub const CORPUS_MAX: usize = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: CatalogError },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("no catalog lattice named `{0}`")]
    UnknownCatalogName(String),
    #[error("--mutate-meet expects `x,y,z` element names: {0}")]
    BadMutation(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "lattice-spectra",
    version,
    about = "Spectra and duality checks for finite lattices"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elements, covers, ideals, filters, prime ideals and distributivity.
    Show {
        /// Lattice file, or `catalog:NAME`.
        lattice: String,
    },
    /// The classical or bitopological spectrum.
    Spec {
        lattice: String,
        #[arg(long, conflicts_with = "bitop")]
        classical: bool,
        #[arg(long)]
        bitop: bool,
        /// Write the spectrum as a DOT graph.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Run the property suites.
    Verify(VerifyArgs),
    /// Classify a homomorphism and check its induced map of spectra.
    Hom {
        homfile: PathBuf,
        source: String,
        target: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Lattice files or `catalog:NAME`.
    pub lattices: Vec<String>,
    /// Every lattice in the named catalog.
    #[arg(long)]
    pub catalog: bool,
    /// Every lattice with at most N elements, up to isomorphism.
    #[arg(long, value_name = "N")]
    pub exhaustive: Option<usize>,
    /// COUNT random lattices drawn from SEED.
    #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
    pub random: Option<Vec<u64>>,
    /// Size bound for --random.
    #[arg(long, default_value_t = 8)]
    pub max_size: usize,
    /// Also check functor laws and naturality on all homomorphisms between
    /// the input lattices with at most 4 elements.
    #[arg(long)]
    pub morphisms: bool,
    /// Overwrite one meet-table entry, `x ^ y := z`, before verifying.
    #[arg(long, value_name = "X,Y,Z")]
    pub mutate_meet: Option<String>,
    /// Run lattices one after another.
    #[arg(long)]
    pub sequential: bool,
}

/// Loads a lattice file, or a catalog lattice given as `catalog:NAME`.
pub fn load_lattice(arg: &str) -> Result<FiniteLattice, CliError> {
    if let Some(name) = arg.strip_prefix("catalog:") {
        return catalog::named::by_name(name)
            .ok_or_else(|| CliError::UnknownCatalogName(name.to_string()));
    }
    let text = read(Path::new(arg))?;
    parse_lattice(&text).map_err(|source| CliError::Input {
        path: arg.to_string(),
        source,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn name_list(l: &FiniteLattice, sets: impl IntoIterator<Item = crate::bits::ElemSet>) -> String {
    let parts: Vec<String> = sets.into_iter().map(|s| l.set_name(s)).collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        format!("{} ({})", parts.len(), parts.join(", "))
    }
}

pub fn cmd_show(l: &FiniteLattice) -> Report {
    let mut r = Report::default();
    r.fact("lattice", l.name());
    r.fact("elements", l.names().join(" "));
    let covers: Vec<String> = l
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", l.elem_name(a), l.elem_name(b)))
        .collect();
    r.fact("covers", covers.join(" "));
    r.fact(
        "ideals",
        name_list(l, l.all_ideals().into_iter().map(|i| i.set())),
    );
    r.fact(
        "filters",
        name_list(l, l.all_filters().into_iter().map(|f| f.set())),
    );
    r.fact(
        "prime ideals",
        name_list(l, l.prime_ideals().into_iter().map(|p| p.set())),
    );
    match l.distributivity().forbidden_sublattice {
        None => r.fact("distributive", "yes"),
        Some(f) => {
            r.fact("distributive", format!("no ({} sublattice)", f.kind));
            let names: Vec<&str> = f.elements.iter().map(|&x| l.elem_name(x)).collect();
            r.fact("sublattice", names.join(" "));
        }
    }
    r
}

pub fn cmd_spec(
    l: &FiniteLattice,
    classical: bool,
    dot: Option<&Path>,
) -> Result<Report, CliError> {
    let mut r = Report::default();
    let write_dot = |text: String, r: &mut Report| -> Result<(), CliError> {
        if let Some(path) = dot {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            r.fact("dot", path.display().to_string());
        }
        Ok(())
    };
    let opens = |t: &crate::topology::FiniteTopology| {
        t.count_opens()
            .map_or_else(|e| e.to_string(), |n| n.to_string())
    };
    if classical {
        let s = ClassicalSpectrum::build(l);
        r.fact("spectrum", format!("spec({})", l.name()));
        r.fact("points", s.len().to_string());
        for (p, label) in s.point_labels().into_iter().enumerate() {
            r.fact(format!("P{}", p + 1), label);
        }
        for x in 0..l.len() {
            r.fact(format!("d({})", l.elem_name(x)), point_names("P", s.d(x)));
        }
        r.fact("opens", opens(s.space()));
        r.fact("basis closed under intersection", yes(s.basis_closed()));
        write_dot(classical_to_dot(&s), &mut r)?;
    } else {
        let s = BitopSpectrum::build(l);
        r.fact("spectrum", format!("spec_B({})", l.name()));
        r.fact("points", s.len().to_string());
        for (p, pair) in s.points().iter().enumerate() {
            r.fact(format!("p{}", p + 1), pair.label(l));
        }
        for x in 0..l.len() {
            r.fact(
                format!("delta({})", l.elem_name(x)),
                point_names("p", s.delta(x)),
            );
        }
        for x in 0..l.len() {
            r.fact(
                format!("eps({})", l.elem_name(x)),
                point_names("p", s.epsilon(x)),
            );
        }
        let space = s.space();
        r.fact("tau opens", opens(space.tau()));
        r.fact("sigma opens", opens(space.sigma()));
        r.fact("tau == sigma", yes(space.tau() == space.sigma()));
        write_dot(bitop_to_dot(&s), &mut r)?;
    }
    Ok(r)
}

fn point_names(prefix: &str, s: crate::bits::PointSet) -> String {
    let parts: Vec<String> = s.iter().map(|p| format!("{prefix}{}", p + 1)).collect();
    format!("{{{}}}", parts.join(","))
}

fn parse_mutation(l: &FiniteLattice, spec: &str) -> Result<(usize, usize, usize), CliError> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let [x, y, z] = parts[..] else {
        return Err(CliError::BadMutation(spec.to_string()));
    };
    let idx = |n: &str| {
        l.index_of(n).ok_or_else(|| {
            CliError::BadMutation(format!("`{n}` is not an element of {}", l.name()))
        })
    };
    Ok((idx(x)?, idx(y)?, idx(z)?))
}

/// Collects the lattices named by `args`, in argument order: files, then
/// catalog, then exhaustive, then random.
pub fn verify_inputs(args: &VerifyArgs) -> Result<Vec<FiniteLattice>, CliError> {
    let mut out = args
        .lattices
        .iter()
        .map(|a| load_lattice(a))
        .collect::<Result<Vec<_>, _>>()?;
    if args.catalog {
        out.extend(catalog::catalog());
    }
    if let Some(n) = args.exhaustive {
        out.extend(enumerate_lattices(&GeneratorConfig::exhaustive(n))?);
    }
    if let Some(r) = &args.random {
        let cfg = GeneratorConfig::random(r[0], args.max_size, r[1] as usize);
        out.extend(enumerate_lattices(&cfg)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "verify needs a lattice file, --catalog, --exhaustive or --random".into(),
        ));
    }
    if let Some(m) = &args.mutate_meet {
        if out.len() != 1 {
            return Err(CliError::Usage(
                "--mutate-meet applies to exactly one lattice".into(),
            ));
        }
        let (x, y, z) = parse_mutation(&out[0], m)?;
        let name = format!("{}*", out[0].name());
        out[0] = out[0].with_corrupted_meet(x, y, z).with_name(name);
    }
    Ok(out)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Report, CliError> {
    let lattices = verify_inputs(args)?;
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let mut report = verify_lattices(&lattices, exec);
    if args.morphisms {
        let small: Vec<FiniteLattice> = lattices
            .iter()
            .filter(|l| l.len() <= CORPUS_MAX && l.axiom_violation().is_none())
            .cloned()
            .collect();
        let mut verdicts = report.verdicts;
        verdicts.extend(verify_morphisms("corpus", &small));
        report = Report::new(lattices.len(), verdicts);
    }
    Ok(report)
}

fn hom_name(text: &str) -> &str {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .find(|l| !l.trim().is_empty())
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap_or("f")
}

pub fn cmd_hom(
    homfile: &Path,
    source: &FiniteLattice,
    target: &FiniteLattice,
) -> Result<Report, CliError> {
    let text = read(homfile)?;
    let f = parse_hom(&text, source, target).map_err(|source| CliError::Input {
        path: homfile.display().to_string(),
        source,
    })?;
    let name = hom_name(&text);
    let mut r = Report::default();
    r.fact(
        "hom",
        format!("{name} from {} to {}", source.name(), target.name()),
    );
    r.fact("map", f.describe());
    let c = classify_hom(&f);
    let witnesses = c.describe_witnesses(&f);
    r.fact(
        "proper",
        match (c.proper, c.vacuous) {
            (true, true) => "yes (vacuous)".to_string(),
            (true, false) => "yes".to_string(),
            (false, _) => format!("no ({})", witnesses[0]),
        },
    );
    r.fact(
        "quasi-proper",
        if c.quasi_proper {
            "yes".to_string()
        } else {
            format!("no ({})", witnesses.last().expect("quasi-proper witness"))
        },
    );
    let mut verdicts = vec![Verdict::new(
        name,
        "Classification",
        if c.quasi_proper && !c.proper {
            Err("quasi-proper but not proper".into())
        } else {
            Ok(String::new())
        },
    )];
    if c.quasi_proper {
        let (ss, st) = (BitopSpectrum::build(source), BitopSpectrum::build(target));
        verdicts.push(Verdict::new(
            name,
            "Morphism",
            match spec_b_on_hom(&f, &ss, &st) {
                Ok(m) if m.verified() => {
                    let map: Vec<String> = m
                        .map
                        .iter()
                        .enumerate()
                        .map(|(q, &p)| {
                            format!(
                                "{}->{}",
                                st.points()[q].label(target),
                                ss.points()[p].label(source)
                            )
                        })
                        .collect();
                    Ok(map.join(" "))
                }
                Ok(m) => Err(format!("{:?}", m.check)),
                Err(e) => Err(e.to_string()),
            },
        ));
        verdicts.push(Verdict::new(
            name,
            "Naturality",
            match delta_natural_iso_check(&f) {
                Ok(v) if v.holds() => Ok("E(spec_B(f)) . delta = delta . f".into()),
                Ok(v) => Err(format!("{v:?}")),
                Err(e) => Err(e.to_string()),
            },
        ));
        if source.is_distributive() && target.is_distributive() {
            verdicts.push(Verdict::new(
                name,
                "BNaturality",
                match b_naturality(&f) {
                    Ok(true) => Ok(String::new()),
                    Ok(false) => Err("b square does not commute".into()),
                    Err(e) => Err(e.to_string()),
                },
            ));
        }
    }
    r.verdicts = verdicts;
    Ok(r)
}

/// Runs a parsed command line and returns the report.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Show { lattice } => Ok(cmd_show(&load_lattice(lattice)?)),
        Command::Spec {
            lattice,
            classical,
            bitop: _,
            dot,
        } => cmd_spec(&load_lattice(lattice)?, *classical, dot.as_deref()),
        Command::Verify(args) => cmd_verify(args),
        Command::Hom {
            homfile,
            source,
            target,
        } => {
            let (s, t) = (load_lattice(source)?, load_lattice(target)?);
            cmd_hom(homfile, &s, &t)
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.render_text(),
        Format::Structured => report.render_structured(),
    }
}

/// Parses `LATTICE_SPECTRA_JOBS`; unset or empty means no cap.
pub fn jobs_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var(JOBS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!("{JOBS_ENV} must be a positive integer, got `{v}`"))
        }),
        _ => Ok(None),
    }
}

/// Entry point: 0 when every check passes, 1 on a FAIL, 2 on bad input.
pub fn run(cli: Cli) -> i32 {
    let result = jobs_from_env().and_then(|jobs| {
        crate::par::init_jobs(jobs);
        execute(&cli)
    });
    match result {
        Ok(report) => {
            print!("{}", render(&report, cli.format));
            if report.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

//! `stratcalc`: command-line front end for stratified Euler calculus
//! bundles.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stratcalc_core::{
    characteristic_cycle, compare_chi, compare_fibers, csm_formal, decompose, discriminants,
    embed_n, parse_bundle, serialize_bundle, stalk_bounds, Bundle, ConstructibleFunction,
    Diagnostic, Error,
};

use report::{join, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "stratcalc", version, about = "Euler calculus of constructible functions on stratified geometries")]
struct Cli {
    /// Push every function forward along `Y ↪ Y × ℂ` this many times first.
    #[arg(long, global = true, default_value_t = 0)]
    embed: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Exit with status 2 when any diagnostic is reported.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct FunctionArgs {
    bundle: PathBuf,
    #[arg(long)]
    function: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every geometry, and every annotated map, of a bundle.
    Validate { bundle: PathBuf },
    /// Euler-obstruction decomposition of a function.
    Decompose(FunctionArgs),
    /// Higher discriminants of a function.
    Discriminants {
        #[command(flatten)]
        target: FunctionArgs,
        /// Report only indices up to this value.
        #[arg(long)]
        max_i: Option<u32>,
    },
    /// Characteristic cycle of a function.
    Cc(FunctionArgs),
    /// Chern–Schwartz–MacPherson class of a function in terms of Chern–Mather classes.
    Csm(FunctionArgs),
    /// Polar bounds on the stalk cohomology at a stratum.
    Bounds {
        #[command(flatten)]
        target: FunctionArgs,
        #[arg(long)]
        stratum: String,
    },
    /// Proper pushforward of a function along a map.
    Pushforward {
        #[command(flatten)]
        target: FunctionArgs,
        #[arg(long)]
        map: String,
    },
    /// Euler integral of a function.
    Integrate(FunctionArgs),
    /// Compare a simplicial model against the declared Euler characteristics.
    Oracle {
        bundle: PathBuf,
        #[arg(long)]
        model: String,
    },
    /// Print the canonical form of a bundle.
    Canonicalize {
        bundle: PathBuf,
        /// Rewrite the file instead of printing.
        #[arg(long)]
        in_place: bool,
    },
}

fn load(path: &Path) -> Result<Bundle, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_bundle(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn function(cli: &Cli, args: &FunctionArgs) -> Result<ConstructibleFunction, String> {
    let bundle = load(&args.bundle)?;
    let f = bundle.function(&args.function).map_err(|e| e.to_string())?;
    Ok(embed_n(f, cli.embed))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn run(cli: &Cli) -> Result<Option<Report>, String> {
    let mut r = Report::default();
    match &cli.command {
        Command::Validate { bundle } => {
            let b = load(bundle)?;
            for g in &b.geometries {
                let mut g = (**g).clone();
                for _ in 0..cli.embed {
                    g = g.embed();
                }
                let d = g.validate();
                r.entry(format!("geometry.{}.diagnostics", g.name()), d.len());
                r.line(if d.is_empty() {
                    format!("geometry {} ok", g.name())
                } else {
                    format!("geometry {} has {} diagnostics", g.name(), d.len())
                });
                r.diagnostics(d);
            }
            for m in b.maps.iter().filter(|m| m.annotation().is_some()) {
                let d = m.check_discriminant_containment().map_err(err)?;
                r.entry(format!("map.{}.diagnostics", m.name()), d.len());
                r.line(if d.is_empty() {
                    format!("map {} ok", m.name())
                } else {
                    format!("map {} has {} diagnostics", m.name(), d.len())
                });
                r.diagnostics(d);
            }
        }
        Command::Decompose(args) => {
            let f = function(cli, args)?;
            let d = decompose(&f).map_err(err)?;
            for t in &d.coefficients {
                r.line(format!("Eu[{}-closure] coefficient {}", t.stratum, t.coefficient));
                r.entry(format!("term.{}.codim", t.stratum), t.codim);
                r.entry(format!("term.{}.coefficient", t.stratum), t.coefficient);
            }
            r.entry("terms", d.coefficients.len());
            r.entry("residual_check", d.residual_check);
            if !d.residual_check {
                r.diagnostics([Diagnostic::new(
                    "residual",
                    vec![],
                    "the decomposition does not reproduce the function",
                )]);
            }
            r.diagnostics(d.diagnostics);
        }
        Command::Discriminants { target, max_i } => {
            let f = function(cli, target)?;
            let d = discriminants(&f).map_err(err)?;
            let keep = |i: &u32| max_i.map_or(true, |m| *i <= m);
            for (i, s) in d.per_i.iter().filter(|(i, _)| keep(i)) {
                r.line(format!("per_{i} = {{{}}}", join(s).replace(',', ", ")));
                r.entry(format!("per_i.{i}"), join(s));
            }
            for (i, s) in d.at_least.iter().filter(|(i, _)| keep(i)) {
                r.line(format!("at_least_{i} = {{{}}}", join(s).replace(',', ", ")));
                r.entry(format!("at_least.{i}"), join(s));
            }
            if d.auto_embedded > 0 {
                r.line(format!("support has codimension 0; embedded {} time(s), indices refer to the original space", d.auto_embedded));
            }
            r.entry("auto_embedded", d.auto_embedded);
            r.diagnostics(d.diagnostics);
        }
        Command::Cc(args) => {
            let f = function(cli, args)?;
            let cc = characteristic_cycle(&f).map_err(err)?;
            for (s, m) in &cc.terms {
                r.line(format!("T*[{s}-closure] multiplicity {m}"));
                r.entry(format!("cc.{s}"), m);
            }
            r.entry("terms", cc.terms.len());
        }
        Command::Csm(args) => {
            let f = function(cli, args)?;
            let c = csm_formal(&f).map_err(err)?;
            for (s, m) in &c.terms {
                r.line(format!("cM[{s}-closure] coefficient {m}"));
                r.entry(format!("csm.{s}"), m);
            }
            r.entry("terms", c.terms.len());
        }
        Command::Bounds { target, stratum } => {
            let f = function(cli, target)?;
            let c = f.eu_coefficients().map_err(err)?;
            let b = stalk_bounds(&c, stratum).map_err(err)?;
            r.entry("point", &b.point);
            for (k, v) in &b.bounds {
                r.line(format!("dim H^-{k} at {} <= {v}", b.point));
                r.entry(format!("bound.{k}"), v);
            }
            r.diagnostics(b.diagnostics);
        }
        Command::Pushforward { target, map } => {
            if cli.embed > 0 {
                return Err("--embed does not apply to pushforward".into());
            }
            let b = load(&target.bundle)?;
            let m = b.map(map).map_err(err)?;
            let f = b.function(&target.function).map_err(err)?;
            let push = m.pushforward(f).map_err(err)?;
            r.entry("geometry", push.geometry().name());
            r.line(format!("on {}", push.geometry().name()));
            for (s, v) in push.iter() {
                r.line(format!("{s} {v}"));
                r.entry(format!("value.{s}"), v);
            }
        }
        Command::Integrate(args) => {
            let f = function(cli, args)?;
            let v = f.euler_integral().map_err(err)?;
            r.line(format!("integral {v}"));
            r.entry("integral", v);
        }
        Command::Oracle { bundle, model } => {
            let b = load(bundle)?;
            let m = b.model(model).map_err(err)?;
            let g = b
                .geometry(m.geometry_ref())
                .map_err(|_| err(Error::DanglingReference(m.geometry_ref().into())))?;
            let mut comparisons = compare_chi(m, g).map_err(err)?;
            for sm in b.simplicial_maps_of(model) {
                let Some(map_ref) = &sm.map_ref else { continue };
                let declared = b.map(map_ref).map_err(err)?;
                let source = b.model(&sm.source_model).map_err(err)?;
                let target = b.model(&sm.target_model).map_err(err)?;
                comparisons.extend(compare_fibers(sm, source, target, declared).map_err(err)?);
            }
            for c in &comparisons {
                let status = if c.matches() { "ok" } else { "MISMATCH" };
                r.line(format!("{} oracle {} declared {} {status}", c.key, c.oracle, c.declared));
                r.entry(format!("{}.oracle", c.key), c.oracle);
                r.entry(format!("{}.declared", c.key), c.declared);
                if !c.matches() {
                    r.diagnostics([Diagnostic::new(
                        "oracle",
                        vec![],
                        format!("{}: oracle {} but declared {}", c.key, c.oracle, c.declared),
                    )]);
                }
            }
            r.entry("comparisons", comparisons.len());
        }
        Command::Canonicalize { bundle, in_place } => {
            let text = serialize_bundle(&load(bundle)?);
            if *in_place {
                std::fs::write(bundle, text).map_err(|e| format!("{}: {e}", bundle.display()))?;
            } else {
                print!("{text}");
            }
            return Ok(None);
        }
    }
    Ok(Some(r))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are errors; 2 is reserved for `--strict`.
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            print!("{}", report.render(cli.format));
            if cli.strict && report.has_diagnostics() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

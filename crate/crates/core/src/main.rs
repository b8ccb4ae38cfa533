use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cox_core::field::{Field, FieldSpec};
use cox_core::io::{write_relation_file, AnyConfiguration, GeneratorRecord, PointFile};
use cox_core::picard::generators;
use cox_core::plane::{PointConfiguration, DEFAULT_PARAMETERS};
use cox_core::relations::full_ideal;
use cox_core::rulings::{enumerate_rulings, families_of};
use cox_core::verify::report::{run_suite, Suite, SuiteOptions};
use cox_core::verify::DEFAULT_T_MAX;
use cox_core::Error;

/// Negative curves, rulings and quadratic relations of Cox rings of Del Pezzo surfaces.
#[derive(Parser)]
#[command(name = "coxring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the Cox ring generators with ids and classes.
    Curves {
        #[arg(long, default_value_t = 7)]
        r: usize,
    },
    /// List the (n)-rulings; a family census goes to stderr.
    Rulings {
        #[arg(long, default_value_t = 7)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        n: u8,
    },
    /// Write the generating quadratic relations as JSON lines.
    Relations {
        #[command(flatten)]
        points: PointArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites; the exit status is 0 iff every check passes.
    Verify {
        #[arg(long, default_value = "all", value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        /// Restrict the rank checks to one surface.
        #[arg(long)]
        r: Option<usize>,
        /// Points for the r = 6 checks, as a, b, c, d over Q.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_T_MAX)]
        tmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, default_value_t = 7)]
    r: usize,
    /// "Q" or "Fp:<p>".
    #[arg(long, default_value = "Fp:101")]
    field: String,
    /// alpha_5, beta_5, alpha_6, beta_6, ... for p_j = (1 : alpha_j : beta_j).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "points")]
    params: Option<Vec<String>>,
    /// Point configuration file; overrides --r and --field.
    #[arg(long)]
    points: Option<PathBuf>,
}

impl PointArgs {
    fn configuration(&self) -> Result<AnyConfiguration, Error> {
        if let Some(path) = &self.points {
            let file: PointFile = serde_json::from_reader(io::BufReader::new(File::open(path)?))?;
            return AnyConfiguration::from_file(&file);
        }
        let spec: FieldSpec = self.field.parse()?;
        let params = match &self.params {
            Some(p) => p.clone(),
            None => DEFAULT_PARAMETERS[..2 * self.r.saturating_sub(4).min(4)]
                .iter()
                .map(i64::to_string)
                .collect(),
        };
        AnyConfiguration::from_parameters(spec, self.r, &params)
    }
}

fn output(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_line<W: Write + ?Sized, T: Serialize>(w: &mut W, value: &T) -> Result<(), Error> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

fn relations<F: Field>(cfg: &PointConfiguration<F>, out: &Option<PathBuf>) -> Result<ExitCode, Error> {
    if let Err(witness) = cfg.validate() {
        serde_json::to_writer(io::stderr(), &witness)?;
        eprintln!();
        eprintln!("error: points are not in general position: {witness}");
        return Ok(ExitCode::from(2));
    }
    let rs = full_ideal(cfg.r(), cfg)?;
    let count = write_relation_file(&rs, output(out)?)?;
    eprintln!("{count} relations");
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Curves { r } => {
            let gens = generators(r)?;
            let mut w = output(&None)?;
            for g in &gens {
                write_line(&mut w, &GeneratorRecord::from(g))?;
            }
            w.flush()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Rulings { r, n } => {
            let rulings = enumerate_rulings(r, n)?;
            let mut w = output(&None)?;
            for ruling in &rulings {
                write_line(&mut w, ruling)?;
            }
            w.flush()?;
            eprintln!("{} ({n})-rulings on r = {r}", rulings.len());
            for fam in families_of(&rulings) {
                let k = rulings[fam.members[0]].representations.len();
                eprintln!("  {:>5} x {}  ({k} representations)", fam.count(), fam.label);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Relations { points, out } => match points.configuration()? {
            AnyConfiguration::Rationals(cfg) => relations(&cfg, &out),
            AnyConfiguration::Prime(cfg) => relations(&cfg, &out),
        },
        Command::Verify {
            suite,
            r,
            params,
            tmax,
            seed,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let mut opts = SuiteOptions {
                r,
                t_max: tmax,
                seed,
                ..SuiteOptions::default()
            };
            if let Some(p) = params {
                let AnyConfiguration::Rationals(cfg) = AnyConfiguration::from_parameters(FieldSpec::Rationals, 6, &p)?
                else {
                    unreachable!("requested rationals")
                };
                if let Err(witness) = cfg.validate() {
                    eprintln!("error: points are not in general position: {witness}");
                    return Ok(ExitCode::from(2));
                }
                opts.cubic = Some(cfg);
            }
            let records = run_suite(suite, &opts)?;
            let mut w = output(&out)?;
            for rec in &records {
                write_line(&mut w, rec)?;
            }
            w.flush()?;
            let failed: Vec<&str> = records.iter().filter(|x| !x.pass).map(|x| x.check.as_str()).collect();
            eprintln!("{} checks, {} failed", records.len(), failed.len());
            for name in &failed {
                eprintln!("  FAIL {name}");
            }
            Ok(if failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

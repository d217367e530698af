//! The `wcl` command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use wcl_core::eval::{evaluate, wpcl_counterexample, Strategy};
use wcl_core::focl::{focl_satisfies_encoded, wfocl_eval_encoded, Model};
use wcl_core::interaction::{Configuration, PortUniverse};
use wcl_core::normal_form::{config_to_monomials, fnf_of_wpcl};
use wcl_core::pcl::{pcl_satisfies_with, Pcl, WPcl};
use wcl_core::semiring::{SemiringId, Value};
use wcl_core::styles::{
    master_slave_gamma, master_slave_named_gamma, master_slave_wfocl, master_slave_wpcl, pubsub_sample_gamma, pubsub_wfocl, tsp_brute_force,
    tsp_formula, tsp_gamma, PriorityTable,
};
use wcl_core::Caps;

use crate::acceptance;
use crate::error::{Error, Result};
use crate::formats::{distance_matrix, format_configuration, parse_configuration, parse_model, priority_table};
use crate::settings::{Format, RunConfig, StrategyName};
use crate::syntax::{print_pil, print_wfocl, print_wpcl, Dialect, Formula, Params};

#[derive(Debug, Parser)]
#[command(name = "wcl", version, about = "Evaluate and compare weighted configuration logic formulas")]
pub struct Cli {
    /// TOML file with defaults for the options below.
    #[arg(long, global = true, value_name = "FILE")]
    settings: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Default)]
struct Common {
    /// nat, bool, minplus, maxplus, viterbi or fuzzy.
    #[arg(long)]
    semiring: Option<SemiringId>,
    /// Comma-separated port universe for propositional formulas.
    #[arg(long, value_delimiter = ',')]
    ports: Vec<String>,
    /// Overrides the dialect implied by the file extension.
    #[arg(long)]
    dialect: Option<Dialect>,
    #[arg(long, value_enum)]
    strategy: Option<StrategyName>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest difference treated as equal on real-valued semirings (default 1e-9).
    #[arg(long)]
    tolerance: Option<f64>,
    /// Binds a weight name used in the formula, e.g. `--let k11=0.5`.
    #[arg(long = "let", value_name = "NAME=VALUE")]
    lets: Vec<String>,
}

#[derive(Debug, Args, Default)]
struct Source {
    /// Formula file; the extension selects the dialect.
    #[arg(long, value_name = "FILE")]
    formula: Option<PathBuf>,
    /// Inline formula text (weighted PCL unless --dialect says otherwise).
    #[arg(short = 'e', long, value_name = "TEXT", conflicts_with = "formula")]
    expr: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value of a formula at a configuration.
    Eval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: Source,
        /// Configuration literal such as "{{p,q}}" or a .cfg file.
        #[arg(long)]
        config: Option<String>,
    },
    /// Whether a configuration satisfies an unweighted formula. Exits 1 if not.
    Satisfies {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        config: Option<String>,
        /// Component model, for first-order formulas.
        #[arg(long, value_name = "FILE")]
        model: Option<PathBuf>,
    },
    /// Full normal form of a propositional formula.
    Fnf {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: Source,
    },
    /// Compares two propositional formulas over every configuration.
    Equiv {
        #[command(flatten)]
        common: Common,
        left: PathBuf,
        right: PathBuf,
    },
    /// Evaluates a first-order formula over a component model.
    FoclEval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        model: Option<PathBuf>,
        #[arg(long)]
        config: Option<String>,
    },
    /// Shortest tour by formula evaluation, checked against brute force.
    Tsp {
        #[arg(long, value_name = "CSV")]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        strategy: Option<StrategyName>,
    },
    /// Worked architecture examples.
    Example {
        #[command(subcommand)]
        which: ExampleCommand,
    },
    /// Runs the acceptance suite.
    Selftest {
        /// Only criteria whose key or number contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Perturbs one weight of the pinned TSP fixture; the TSP criterion must then fail.
        #[arg(long)]
        mutate_tsp: bool,
        /// Reports timing without failing slow criteria.
        #[arg(long)]
        no_budgets: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ExampleCommand {
    /// Weighted Master/Slave: propositional and first-order encodings side by side.
    MasterSlave {
        #[arg(long, default_value_t = 2)]
        masters: usize,
        #[arg(long, default_value_t = 2)]
        slaves: usize,
        /// One row per slave, one column per master. All ones if omitted.
        #[arg(long, value_name = "CSV")]
        weights: Option<PathBuf>,
        #[arg(long)]
        semiring: Option<SemiringId>,
    },
    /// Publish/Subscribe with two publishers at the sample configuration.
    Pubsub {
        /// One row per topic, one column per subscriber.
        #[arg(long, value_name = "CSV")]
        priorities: PathBuf,
        #[arg(long, default_value = "viterbi")]
        semiring: SemiringId,
    },
    /// The distributivity counterexample over N.
    Counterexample,
}

/// Exit status: success.
pub const EXIT_OK: u8 = 0;
/// Exit status: a semantic check failed.
pub const EXIT_FAIL: u8 = 1;
/// Exit status: bad usage, input or evaluation error.
pub const EXIT_ERROR: u8 = 2;

/// Parses `args` (including the program name) and runs the command.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match run(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "wcl: {}", e.report());
            EXIT_ERROR
        }
    }
}

struct Ctx {
    cfg: RunConfig,
}

impl Ctx {
    fn semiring(&self, c: &Common) -> SemiringId {
        c.semiring.or(self.cfg.semiring).unwrap_or(SemiringId::Natural)
    }

    fn strategy(&self, s: Option<StrategyName>) -> Strategy {
        s.or(self.cfg.strategy).unwrap_or_default().into()
    }

    fn format(&self, c: &Common) -> Format {
        c.format.or(self.cfg.format).unwrap_or_default()
    }

    fn tolerance(&self, c: &Common) -> f64 {
        c.tolerance.unwrap_or(self.cfg.tolerance())
    }

    fn caps(&self) -> Caps {
        self.cfg.caps.resolve()
    }

    fn universe(&self, c: &Common) -> Result<PortUniverse> {
        let names = if c.ports.is_empty() {
            self.cfg.ports.clone().unwrap_or_default()
        } else {
            c.ports.clone()
        };
        if names.is_empty() {
            return Err(Error::Usage("propositional formulas need --ports".into()));
        }
        let names: Vec<&str> = names.iter().map(|s| s.trim()).collect();
        Ok(PortUniverse::from_names(&names)?)
    }

    fn params(&self, c: &Common, sr: SemiringId) -> Result<Params> {
        let mut params = Params::new();
        for binding in &c.lets {
            let (name, value) = binding
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("--let expects NAME=VALUE, got `{binding}`")))?;
            let v = sr
                .parse_weight(value.trim())
                .map_err(|e| Error::Usage(format!("--let {name}: {e}")))?;
            params.insert(name.trim().to_string(), v);
        }
        Ok(params)
    }

    fn source(&self, s: &Source, c: &Common) -> Result<(String, String, Dialect)> {
        if let Some(text) = &s.expr {
            return Ok((text.clone(), "<expr>".into(), c.dialect.unwrap_or(Dialect::Wpcl)));
        }
        let path = s
            .formula
            .clone()
            .or_else(|| self.cfg.formula.clone())
            .ok_or_else(|| Error::Usage("give a formula with --formula FILE or -e TEXT".into()))?;
        let dialect = c
            .dialect
            .or_else(|| Dialect::from_path(&path))
            .ok_or_else(|| Error::Usage(format!("{}: cannot tell the dialect; use --dialect", path.display())))?;
        Ok((read(&path)?, path.display().to_string(), dialect))
    }

    fn formula(&self, s: &Source, c: &Common, u: Option<&PortUniverse>, sr: SemiringId) -> Result<(Formula, Dialect)> {
        let (text, origin, dialect) = self.source(s, c)?;
        let params = self.params(c, sr)?;
        let f = Formula::parse(&text, dialect, u, sr, &params).map_err(|e| Error::parse(origin, &text, e))?;
        Ok((f, dialect))
    }

    fn model(&self, path: Option<&PathBuf>) -> Result<Model> {
        let path = path
            .or(self.cfg.model.as_ref())
            .ok_or_else(|| Error::Usage("first-order formulas need --model FILE".into()))?;
        let text = read(path)?;
        parse_model(&text).map_err(|e| Error::parse(path.display().to_string(), &text, e))
    }

    fn configuration(&self, arg: Option<&String>, u: &PortUniverse) -> Result<Configuration> {
        let arg = arg
            .or(self.cfg.config.as_ref())
            .ok_or_else(|| Error::Usage("give a configuration with --config".into()))?;
        let (text, origin) = if arg.trim_start().starts_with('{') {
            (arg.clone(), "<config>".to_string())
        } else {
            (read(Path::new(arg))?, arg.clone())
        };
        let named = parse_configuration(&text).map_err(|e| Error::parse(origin, &text, e))?;
        Ok(u.encode(&named)?)
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn first_order(d: Dialect) -> Result<()> {
    if d.first_order() {
        Err(Error::Usage(format!("{d} formulas are evaluated with focl-eval or satisfies --model")))
    } else {
        Ok(())
    }
}

/// Any propositional formula as a weighted one.
fn weighted(f: Formula) -> WPcl {
    match f {
        Formula::Pil(p) => WPcl::Bool(Pcl::inter(p)),
        Formula::Pcl(f) => WPcl::Bool(f),
        Formula::Wpcl(z) => z,
        Formula::Focl(_) | Formula::Wfocl(_) => unreachable!("checked by the caller"),
    }
}

fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let cfg = match &cli.settings {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let ctx = Ctx { cfg };
    let io = |e: std::io::Error| Error::Usage(format!("writing output: {e}"));
    match cli.command {
        Command::Eval { common, source, config } => {
            let sr = ctx.semiring(&common);
            let u = ctx.universe(&common)?;
            let (f, d) = ctx.formula(&source, &common, Some(&u), sr)?;
            first_order(d)?;
            let gamma = ctx.configuration(config.as_ref(), &u)?;
            let v = evaluate(&weighted(f), &gamma, sr, ctx.strategy(common.strategy), &ctx.caps())?;
            match ctx.format(&common) {
                Format::Text => writeln!(out, "{v}"),
                Format::Tsv => writeln!(out, "{}\t{v}", u.fmt_configuration(&gamma)),
            }
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Satisfies {
            common,
            source,
            config,
            model,
        } => {
            let sat = if model.is_some() || ctx.source(&source, &common)?.2.first_order() {
                let m = ctx.model(model.as_ref())?;
                let (f, _) = ctx.formula(&source, &common, None, SemiringId::Boolean)?;
                let Formula::Focl(f) = f else {
                    return Err(Error::Usage("satisfies takes an unweighted formula".into()));
                };
                let gamma = ctx.configuration(config.as_ref(), m.universe())?;
                focl_satisfies_encoded(&m, &gamma, &f, &ctx.caps())?
            } else {
                let u = ctx.universe(&common)?;
                let (f, _) = ctx.formula(&source, &common, Some(&u), SemiringId::Boolean)?;
                let f = match f {
                    Formula::Pil(p) => Pcl::inter(p),
                    Formula::Pcl(f) => f,
                    _ => return Err(Error::Usage("satisfies takes an unweighted formula".into())),
                };
                let gamma = ctx.configuration(config.as_ref(), &u)?;
                pcl_satisfies_with(&gamma, &f, &ctx.caps())?
            };
            writeln!(out, "{sat}").map_err(io)?;
            Ok(if sat { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Fnf { common, source } => {
            let sr = ctx.semiring(&common);
            let u = ctx.universe(&common)?;
            let (f, d) = ctx.formula(&source, &common, Some(&u), sr)?;
            first_order(d)?;
            let nf = fnf_of_wpcl(&weighted(f), u.len(), sr, &ctx.caps())?;
            let format = ctx.format(&common);
            for (key, k) in nf.terms() {
                match format {
                    Format::Text => {
                        let ms: Vec<String> = config_to_monomials(key, u.len())?
                            .iter()
                            .map(|m| print_pil(&m.to_pil(), &u))
                            .collect();
                        writeln!(out, "{k} (*) {{ {} }}", ms.join(" + "))
                    }
                    Format::Tsv => writeln!(out, "{k}\t{}", u.fmt_configuration(key)),
                }
                .map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Equiv { common, left, right } => {
            let sr = ctx.semiring(&common);
            let u = ctx.universe(&common)?;
            let load = |path: &PathBuf| -> Result<WPcl> {
                let source = Source {
                    formula: Some(path.clone()),
                    expr: None,
                };
                let (f, d) = ctx.formula(&source, &common, Some(&u), sr)?;
                first_order(d)?;
                Ok(weighted(f))
            };
            let (a, b) = (load(&left)?, load(&right)?);
            match wpcl_counterexample(&a, &b, u.len(), sr, ctx.tolerance(&common), &ctx.caps())? {
                None => {
                    writeln!(out, "equivalent").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Some(w) => {
                    let g = u.fmt_configuration(&w.gamma);
                    match ctx.format(&common) {
                        Format::Text => writeln!(out, "not equivalent\nwitness: {g}\nleft: {}\nright: {}", w.left, w.right),
                        Format::Tsv => writeln!(out, "{g}\t{}\t{}", w.left, w.right),
                    }
                    .map_err(io)?;
                    Ok(EXIT_FAIL)
                }
            }
        }
        Command::FoclEval {
            common,
            source,
            model,
            config,
        } => {
            let sr = ctx.semiring(&common);
            let m = ctx.model(model.as_ref())?;
            let (f, _) = ctx.formula(&source, &common, None, sr)?;
            let gamma = ctx.configuration(config.as_ref(), m.universe())?;
            let caps = ctx.caps();
            match f {
                Formula::Focl(f) => writeln!(out, "{}", focl_satisfies_encoded(&m, &gamma, &f, &caps)?),
                Formula::Wfocl(z) => writeln!(out, "{}", wfocl_eval_encoded(&z, &m, &gamma, sr, &caps)?),
                _ => return Err(Error::Usage("focl-eval takes a .focl or .wfocl formula".into())),
            }
            .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Tsp { matrix, strategy } => {
            let m = distance_matrix(&read(&matrix)?, &matrix.display().to_string())?;
            let (u, z) = tsp_formula(&m)?;
            let gamma = tsp_gamma(&u, m.len())?;
            let v = evaluate(&z, &gamma, SemiringId::MinPlus, ctx.strategy(strategy), &ctx.caps())?;
            let best = tsp_brute_force(&m)?;
            let ok = v.as_f64() == best;
            writeln!(
                out,
                "formula: {v}\noracle: {}\n{}",
                SemiringId::MinPlus.value(best)?,
                if ok { "PASS" } else { "FAIL" }
            )
            .map_err(io)?;
            Ok(if ok { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Example { which } => example(&ctx, which, out),
        Command::Selftest {
            filter,
            seed,
            mutate_tsp,
            no_budgets,
        } => {
            let defaults = acceptance::Options::default();
            let opts = acceptance::Options {
                seed: seed.or(ctx.cfg.seed).unwrap_or(defaults.seed),
                filter,
                mutate_tsp,
                caps: ctx.caps(),
                tolerance: ctx.cfg.tolerance(),
                budgets: !no_budgets,
            };
            if acceptance::selected(&opts).next().is_none() {
                return Err(Error::Usage(format!(
                    "no criterion matches `{}`",
                    opts.filter.as_deref().unwrap_or_default()
                )));
            }
            let mut write_err = None;
            let reports = acceptance::run(&opts, |r| {
                if let Err(e) = writeln!(out, "{}", r.render()) {
                    write_err.get_or_insert(e);
                }
            });
            if let Some(e) = write_err {
                return Err(io(e));
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let total: f64 = reports.iter().map(|r| r.elapsed.as_secs_f64()).sum();
            writeln!(out, "{} passed, {failed} failed ({total:.2} s)", reports.len() - failed).map_err(io)?;
            let _ = err.flush();
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAIL })
        }
    }
}

fn example(ctx: &Ctx, which: ExampleCommand, out: &mut dyn Write) -> Result<u8> {
    let io = |e: std::io::Error| Error::Usage(format!("writing output: {e}"));
    match which {
        ExampleCommand::MasterSlave {
            masters,
            slaves,
            weights,
            semiring,
        } => {
            let sr = semiring.or(ctx.cfg.semiring).unwrap_or(SemiringId::Natural);
            let table = match &weights {
                Some(p) => priority_table(&read(p)?, &p.display().to_string(), sr)?,
                None => PriorityTable::filled(slaves, masters, sr.one()),
            };
            let (u, z) = master_slave_wpcl(masters, slaves, &table)?;
            let (model, zf) = master_slave_wfocl(masters, slaves, &table)?;
            writeln!(out, "wpcl: {}\nwfocl: {}", print_wpcl(&z, &u), print_wfocl(&zf)).map_err(io)?;
            writeln!(out, "configuration\twpcl\twfocl").map_err(io)?;
            let caps = ctx.caps();
            let mut agree = true;
            // Every way of attaching each slave to one master.
            let count = masters.checked_pow(slaves as u32).filter(|&c| c <= 4096).ok_or_else(|| {
                Error::Usage(format!("{masters} masters and {slaves} slaves give too many attachments to list"))
            })?;
            for code in 0..count {
                let pairs: Vec<(usize, usize)> = (0..slaves).map(|i| (i, code / masters.pow(i as u32) % masters)).collect();
                let gamma = master_slave_gamma(&u, &pairs)?;
                let a = evaluate(&z, &gamma, sr, ctx.strategy(None), &caps)?;
                let named = master_slave_named_gamma(&pairs);
                let b = wfocl_eval_encoded(&zf, &model, &model.universe().encode(&named)?, sr, &caps)?;
                agree &= a.approx_eq(&b, ctx.cfg.tolerance());
                writeln!(out, "{}\t{a}\t{b}", u.fmt_configuration(&gamma)).map_err(io)?;
            }
            writeln!(out, "{}", if agree { "PASS" } else { "FAIL" }).map_err(io)?;
            Ok(if agree { EXIT_OK } else { EXIT_FAIL })
        }
        ExampleCommand::Pubsub { priorities, semiring } => {
            let table = priority_table(&read(&priorities)?, &priorities.display().to_string(), semiring)?;
            let (model, z) = pubsub_wfocl(2, table.rows(), table.cols(), &table)?;
            let named = pubsub_sample_gamma();
            let gamma = model.universe().encode(&named)?;
            let v = wfocl_eval_encoded(&z, &model, &gamma, semiring, &ctx.caps())?;
            writeln!(out, "formula: {}\nconfiguration: {}\nvalue: {v}", print_wfocl(&z), format_configuration(&named)).map_err(io)?;
            if table.rows() >= 3 && table.cols() >= 2 {
                let want: Value = table.get(0, 0).times(table.get(2, 1))?;
                let ok = v.approx_eq(&want, ctx.cfg.tolerance());
                writeln!(out, "expected k11 (*) k32: {want}\n{}", if ok { "PASS" } else { "FAIL" }).map_err(io)?;
                return Ok(if ok { EXIT_OK } else { EXIT_FAIL });
            }
            Ok(EXIT_OK)
        }
        ExampleCommand::Counterexample => {
            let (u, left, right) = acceptance::counterexample_pair();
            let gamma = u.configuration(&[&["p", "q"]])?;
            let caps = ctx.caps();
            let strategy = ctx.strategy(None);
            let a = evaluate(&left, &gamma, SemiringId::Natural, strategy, &caps)?;
            let b = evaluate(&right, &gamma, SemiringId::Natural, strategy, &caps)?;
            let g = u.fmt_configuration(&gamma);
            writeln!(out, "{} at {g} = {a}\n{} at {g} = {b}", print_wpcl(&left, &u), print_wpcl(&right, &u)).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

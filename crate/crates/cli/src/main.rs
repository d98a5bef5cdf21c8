use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use szv::finite::is_prime;
use szv::mt::{mt_sh_series, mt_trunc, mt_word, MtIndex};
use szv::numeric::check_limit_theorem;
use szv::registry::{EvalRequest, Registry, SuiteBounds};
use szv::trees::{harvest, is_harvestable, tree_value, tree_value_general, word_of_harvestable, TreeJson};
use szv::{Bullet, Error, Index, LinComb, TruncatedValues, TruncationParams};

/// Work cap applied when `SZV_MAX_WORK` is unset.
const DEFAULT_MAX_WORK: u64 = 2_000_000_000;

#[derive(Parser)]
#[command(name = "szv", version, about = "Exact truncated t-adic symmetric multiple zeta values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one value with an evaluator chosen by `--kind`.
    Eval {
        #[arg(long, default_value = "star")]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        index: String,
        #[arg(long = "M", default_value_t = 13)]
        m: u64,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        #[arg(long, default_value = "star")]
        bullet: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print `z_k`, or its harmonic or shuffle product with `--times`.
    Word {
        #[arg(long)]
        index: String,
        #[arg(long)]
        times: Option<String>,
        #[arg(long, default_value = "sh")]
        product: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Evaluate a 2-colored tree read from a JSON file.
    Tree {
        #[arg(long)]
        tree_file: PathBuf,
        #[arg(long = "M", default_value_t = 5)]
        m: u64,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        /// Also run the harvest algorithm and print the result with its word.
        #[arg(long)]
        harvest: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Mordell-Tornheim index `k1,...,kr;k`: word, truncated sum and t-adic value.
    Mt {
        #[arg(long)]
        index: String,
        #[arg(long = "M", default_value_t = 5)]
        m: u64,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        bounds: BoundFlags,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Compare float truncated values against their limits for growing M.
    Limits {
        #[arg(long)]
        index: String,
        #[arg(long, default_value = "star")]
        bullet: String,
        #[arg(long, default_value_t = 4)]
        t_order: usize,
        #[arg(long = "M", value_delimiter = ',', default_value = "100,1000,10000")]
        m: Vec<u64>,
        #[arg(long, default_value_t = 1e-2)]
        tol: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args)]
struct BoundFlags {
    #[arg(long)]
    wt_max: Option<u32>,
    #[arg(long = "M", value_delimiter = ',')]
    m: Option<Vec<u64>>,
    #[arg(long)]
    t_order: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Largest exponent `n` of the modulus `p^n`.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    depth_max: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    max_label: Option<u32>,
    #[arg(long)]
    trees: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

impl BoundFlags {
    fn apply(self, mut b: SuiteBounds) -> szv::Result<SuiteBounds> {
        if let Some(v) = self.wt_max {
            b.wt_max = v;
        }
        if let Some(v) = self.m {
            if v.contains(&0) {
                return Err(Error::InvalidArgument("every M must be at least 1".into()));
            }
            b.m_list = v;
        }
        if let Some(v) = self.t_order {
            b.order = v;
        }
        if let Some(v) = self.primes {
            if let Some(q) = v.iter().find(|q| !is_prime(**q)) {
                return Err(Error::NotPrime(*q));
            }
            b.primes = v;
        }
        if let Some(v) = self.n {
            b.n_max = v;
        }
        if let Some(v) = self.depth_max {
            b.depth_max = v;
        }
        if let Some(v) = self.max_vertices {
            b.max_vertices = v;
        }
        if let Some(v) = self.max_label {
            b.max_label = v;
        }
        if let Some(v) = self.trees {
            b.tree_count = v;
        }
        if let Some(v) = self.seed {
            b.seed = v;
        }
        b.max_work = Some(max_work()?);
        Ok(b)
    }
}

fn max_work() -> szv::Result<u64> {
    match std::env::var("SZV_MAX_WORK") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("SZV_MAX_WORK must be an integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_MAX_WORK),
    }
}

/// `eval`, `tree` and `mt` refuse sums with more than `SZV_MAX_WORK` points.
fn check_points(what: &str, points: u64) -> szv::Result<()> {
    let cap = max_work()?;
    if points > cap {
        return Err(Error::InvalidArgument(format!(
            "{what} needs about {points} summation points, over the cap {cap}; raise SZV_MAX_WORK"
        )));
    }
    Ok(())
}

/// A closed stdout (for example a pipe into `head`) is not an error.
fn emit(format: Format, text: String, value: serde_json::Value) {
    let out = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialize"),
    };
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

/// Returns whether every checked statement held.
fn run(cmd: Command) -> szv::Result<bool> {
    match cmd {
        Command::Eval { kind, index, m, t_order, bullet, format } => {
            let registry = Registry::standard();
            let evaluator = registry.evaluator(&kind)?;
            let req = EvalRequest { index: index.parse()?, m, order: t_order, bullet: bullet.parse()? };
            if kind != "reg" {
                check_points("eval", m.saturating_mul(m))?;
            }
            let out = evaluator.evaluate(&req)?;
            emit(format, out.to_string(), serde_json::to_value(&out).expect("values serialize"));
            Ok(true)
        }
        Command::Word { index, times, product, format } => {
            let k: Index = index.parse()?;
            let w = LinComb::from_index(&k);
            let out = match times {
                None => w,
                Some(l) => {
                    let l: Index = l.parse()?;
                    product.parse::<Bullet>()?.product(&w, &LinComb::from_index(&l))?
                }
            };
            emit(format, out.to_string(), json!({ "word": out.to_string() }));
            Ok(true)
        }
        Command::Tree { tree_file, m, t_order, harvest: do_harvest, format } => {
            let text = std::fs::read_to_string(&tree_file)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", tree_file.display())))?;
            let (x, k) = TreeJson::parse(&text)?;
            if let Some((a, b)) = x.essential_positivity_violation(&k)? {
                return Err(Error::NotEssentiallyPositive(x.id(a).into(), x.id(b).into()));
            }
            check_points("tree", m.saturating_pow(x.black_vertices().len().saturating_sub(1) as u32))?;
            let params = TruncationParams::new(m, t_order)?;
            let value = tree_value(&x, &k, params)?;
            let violations: Vec<String> = is_harvestable(&x, &k)?.iter().map(|c| c.to_string()).collect();
            let mut lines = vec![format!("value: {value}")];
            let mut report = json!({ "value": value, "harvestable": violations.is_empty(), "violations": violations });
            if violations.is_empty() {
                let w = word_of_harvestable(&x, &k)?;
                lines.push(format!("word: {w}"));
                report["word"] = json!(w.to_string());
            } else {
                lines.extend(violations.iter().map(|v| format!("not harvestable, {v}")));
            }
            if do_harvest {
                let (h, kh) = harvest(&x, &k)?;
                let w = word_of_harvestable(&h, &kh)?;
                lines.push(format!("harvested: {h}"));
                lines.push(format!("harvested word: {w}"));
                report["harvested"] = json!({ "tree": h.to_json(&kh), "word": w.to_string() });
            } else {
                let general = tree_value_general(&x, &k, params)?;
                lines.push(format!("via root change and harvest: {general}"));
                report["via_words"] = json!(general);
            }
            emit(format, lines.join("\n"), report);
            Ok(true)
        }
        Command::Mt { index, m, t_order, format } => {
            let idx: MtIndex = index.parse()?;
            check_points("mt", m.saturating_pow(idx.depth() as u32 + 1))?;
            let params = TruncationParams::new(m, t_order)?;
            let word = mt_word(&idx);
            let series = mt_sh_series(&idx, &TruncatedValues::new(params))?;
            let sum = mt_trunc(&idx, m);
            emit(
                format,
                format!("word: {word}\nZ_M: {sum}\nvalue: {series}"),
                json!({ "index": idx, "word": word.to_string(), "truncated": sum.to_string(), "value": series }),
            );
            Ok(true)
        }
        Command::Verify { suite, bounds, format } => {
            let registry = Registry::standard();
            let suite = registry.suite(&suite)?;
            let bounds = bounds.apply(suite.default_bounds())?;
            let report = suite.run(&bounds)?;
            emit(format, report.to_string(), serde_json::to_value(&report).expect("reports serialize"));
            Ok(report.holds())
        }
        Command::Limits { index, bullet, t_order, m, tol, format } => {
            let k: Index = index.parse()?;
            let report = check_limit_theorem(&k, bullet.parse()?, t_order, &m, tol)?;
            let mut text = vec![format!("{:>8} {:>5} {:>22} {:>22} {:>12}", "M", "coeff", "truncated", "limit", "abs_diff")];
            text.extend(report.rows.iter().map(|r| {
                format!("{:>8} {:>5} {:>22.15} {:>22.15} {:>12.3e}", r.m, r.coefficient_index, r.truncated, r.limit, r.abs_diff)
            }));
            text.push(if report.passed { "PASS".into() } else { format!("FAIL: some |diff| >= {tol} at the largest M") });
            emit(format, text.join("\n"), serde_json::to_value(&report).expect("reports serialize"));
            Ok(report.passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_parse() || matches!(e, Error::NonPositiveEntry(_)) { 2 } else { 3 })
        }
    }
}

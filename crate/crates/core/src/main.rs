use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use uplab::asymptotics;
use uplab::cache::{DistanceCache, CACHE_ENV};
use uplab::cyclic::{self, bch_bound, ht_bound, min_distance, CyclicCode, DistanceLookup, DistanceOptions};
use uplab::gf::Fq;
use uplab::mstransform::{naive_up_check, naive_up_scan, MsTransform, ScanMode};
use uplab::polyring::{factor_xn_minus_1, parse_word, FPoly};
use uplab::ramsey;
use uplab::table::{mu_table, Verdict, DEFAULT_PRIMES};
use uplab::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_PARTIAL: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "uplab", version, about = "Cyclic codes and uncertainty principles over finite fields")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct RunConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Maximum codeword evaluations per minimum-distance computation.
    #[arg(long, global = true, default_value_t = 1 << 28)]
    budget: u64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Distance cache file (JSON lines). Defaults to $UPLAB_CACHE_DIR/distances.jsonl
    /// when that variable is set; no cache otherwise.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible factors of x^n - 1 over F_q.
    Factor {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
    },
    /// mu(F_q, n) with a witness generator.
    Mu {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// Minimum distance of the cyclic code with the given generator.
    Mindist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        /// Generator coefficients, lowest degree first.
        #[arg(long)]
        gen: String,
    },
    /// Mattson-Solomon transform of a word and the naive uncertainty check.
    Ms {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Word symbols, position 0 first.
        #[arg(long)]
        word: String,
    },
    /// Sweep of w(f) * w(f_hat) over nonzero words.
    UpScan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Szemeredi-type extremal functions and the bounds on mu they give.
    #[command(subcommand)]
    Ramsey(RamseyCmd),
    /// Rows of the (eps, lambda) weak uncertainty principle over primes.
    WeakUp {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        p_max: u64,
    },
    /// Counting formulas for long cyclic codes.
    #[command(subcommand)]
    Asym(AsymCmd),
    /// Recomputes mu(F_q, p) for a list of primes and compares with known values.
    Table {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
        primes: Vec<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum RamseyCmd {
    /// r_m(n); every m in 1..=n when --m is omitted.
    Ap {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// r_{delta,s}(n).
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        s: usize,
    },
    /// Both lower bounds on mu(F_q, p), next to mu itself.
    Bound {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: u64,
        /// Skip the grid bound.
        #[arg(long)]
        no_grid: bool,
        /// Skip computing mu.
        #[arg(long)]
        no_mu: bool,
    },
}

#[derive(Subcommand)]
enum AsymCmd {
    Entropy {
        #[arg(long)]
        x: f64,
    },
    /// The cap (q-1)/q on lambda.
    Plotkin {
        #[arg(long)]
        q: u64,
    },
    /// (1 + r) C(n, r) (q - 1)^r with r = floor(n^alpha).
    Ball {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        q: u64,
    },
    /// ((n - n^(1 - alpha)) / p) H(R).
    Lambda {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        rate: f64,
    },
    /// f_{alpha,q,R}(p) over a list of primes.
    FAlpha {
        #[arg(long, default_value_t = 2)]
        q: u64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        rate: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [11u64, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61])]
        primes: Vec<u64>,
    },
    /// C(s, s') against its Stirling estimate.
    Stirling {
        #[arg(long)]
        s: u64,
        #[arg(long)]
        rate: f64,
    },
    /// Seeded code C(g_I) of length q^p - 1.
    Demo {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 0.5)]
        rate: f64,
        #[arg(long, default_value_t = 0.4)]
        alpha: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok,
    Partial,
    Violation,
}

struct Output {
    json: Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    status: Status,
    notes: Vec<String>,
}

impl Output {
    fn new<T: Serialize>(value: &T, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Output {
        Output {
            json: serde_json::to_value(value).expect("serializable report"),
            headers,
            rows,
            status: Status::Ok,
            notes: Vec::new(),
        }
    }

    fn status(mut self, s: Status) -> Output {
        self.status = s;
        self
    }

    fn note(mut self, n: String) -> Output {
        self.notes.push(n);
        self
    }
}

fn s<T: ToString>(x: T) -> String {
    x.to_string()
}

fn open_cache(cfg: &RunConfig) -> Option<DistanceCache> {
    if let Some(path) = &cfg.cache {
        return Some(DistanceCache::open(path));
    }
    std::env::var_os(CACHE_ENV).map(|dir| DistanceCache::in_dir(&PathBuf::from(dir)))
}

fn options(cfg: &RunConfig) -> DistanceOptions {
    DistanceOptions {
        budget: cfg.budget,
        workers: cfg.workers.max(1),
    }
}

fn run(cli: &Cli) -> uplab::Result<Output> {
    let cfg = &cli.cfg;
    let opts = options(cfg);
    let mut cache = open_cache(cfg);
    match &cli.cmd {
        Command::Factor { n, q } => {
            let fac = factor_xn_minus_1(*n, *q)?;
            let rows: Vec<Vec<String>> = fac
                .cosets
                .cosets
                .iter()
                .zip(&fac.factors)
                .map(|(c, f)| vec![s(c[0]), s(c.len()), f.to_string()])
                .collect();
            let factors: Vec<Value> = fac
                .cosets
                .cosets
                .iter()
                .zip(&fac.factors)
                .map(|(c, f)| json!({"coset": c, "degree": c.len(), "factor": f.to_string()}))
                .collect();
            let v = json!({"n": n, "q": q, "count": fac.factors.len(), "factors": factors});
            Ok(Output::new(&v, vec!["coset_rep", "degree", "factor"], rows))
        }
        Command::Mu { n, q } => {
            let rec = cyclic::mu(*n, *q, &opts, cache.as_ref().map(|c| c as &dyn DistanceLookup))?;
            if let Some(c) = cache.as_mut() {
                c.record_mu(&rec);
            }
            let rows = rec
                .per_divisor
                .iter()
                .map(|d| {
                    vec![
                        d.gen.clone(),
                        s(d.dim),
                        s(d.distance.lower),
                        s(d.distance.upper),
                        s(d.distance.method.as_str()),
                        s(d.distance.work),
                    ]
                })
                .collect();
            let status = if rec.exact { Status::Ok } else { Status::Partial };
            Ok(Output::new(&rec, vec!["gen", "dim", "d_lower", "d_upper", "method", "work"], rows).status(status))
        }
        Command::Mindist { n, q, gen } => {
            let field = Fq::get(*q)?;
            let g = FPoly::parse(&field, gen)?;
            let code = CyclicCode::from_generator(*n, &g)?;
            let d = match cache.as_ref().and_then(|c| c.lookup(*q, *n, &code.gen_string())) {
                Some(hit) => uplab::DistanceResult { work: 0, ..hit },
                None => {
                    let d = min_distance(&code, &opts);
                    if let Some(c) = cache.as_mut() {
                        c.put(uplab::cache::CacheEntry::new(*q, *n, &code.gen_string(), code.dim, &d));
                    }
                    d
                }
            };
            let bch = bch_bound(&code.zeros, *n);
            let ht = ht_bound(&code.zeros, *n);
            let v = json!({
                "n": n, "q": q, "gen": code.gen_string(), "dim": code.dim,
                "bch": bch, "ht": ht, "distance": d,
            });
            let row = vec![code.gen_string(), s(code.dim), s(bch), s(ht), s(d.lower), s(d.upper), s(d.method.as_str())];
            let status = if d.exact { Status::Ok } else { Status::Partial };
            Ok(Output::new(&v, vec!["gen", "dim", "bch", "ht", "d_lower", "d_upper", "method"], vec![row]).status(status))
        }
        Command::Ms { q, n, word } => {
            let t = MsTransform::new(*n, *q)?;
            let w = parse_word(t.field(), word, *n)?;
            let v = t.forward(&w)?;
            let check = naive_up_check(&t, &w)?;
            let values = t.format_values(&v);
            let out = json!({
                "n": n, "q": q, "word": word, "values": values,
                "modulus": t.ctx().modulus(), "zeta": t.ctx().format(t.zeta()),
                "w": check.w, "w_hat": check.w_hat, "product": check.product, "holds": check.holds,
            });
            let rows = values.iter().enumerate().map(|(i, x)| vec![s(i + 1), x.clone()]).collect();
            let status = if check.holds { Status::Ok } else { Status::Violation };
            Ok(Output::new(&out, vec!["i", "f(zeta^i)"], rows).status(status))
        }
        Command::UpScan { n, q, mode, trials } => {
            let mode = match mode {
                Mode::Exhaustive => ScanMode::Exhaustive,
                Mode::Random => ScanMode::Random,
            };
            let r = naive_up_scan(*n, *q, mode, *trials, cfg.seed)?;
            let row = vec![s(r.n), s(r.q), s(r.words), s(r.min_product), r.argmin.clone(), s(r.equality_count), s(r.violations)];
            let status = if r.violations == 0 { Status::Ok } else { Status::Violation };
            Ok(Output::new(&r, vec!["n", "q", "words", "min_product", "argmin", "equality", "violations"], vec![row])
                .status(status))
        }
        Command::Ramsey(cmd) => run_ramsey(cmd, &opts),
        Command::WeakUp { q, eps, lambda, p_max } => {
            let rows = asymptotics::weak_up_scan(*q, *eps, *lambda, *p_max, &opts, cache.as_ref().map(|c| c as &dyn DistanceLookup))?;
            let status = if rows.iter().all(|r| r.exact) { Status::Ok } else { Status::Partial };
            let opt = |b: Option<bool>| b.map_or("?".to_string(), s);
            let table = rows
                .iter()
                .map(|r| {
                    let mu = if r.exact { s(r.mu_lower) } else { format!("[{},{}]", r.mu_lower, r.mu_upper) };
                    vec![s(r.p), s(r.ord), mu, s(r.cond_order), opt(r.cond_mu), opt(r.both)]
                })
                .collect();
            let v = json!({"q": q, "eps": eps, "lambda": lambda, "rows": rows});
            Ok(Output::new(&v, vec!["p", "ord", "mu", "ord<eps*p", "mu>lambda*p", "both"], table).status(status))
        }
        Command::Asym(cmd) => run_asym(cmd, cfg),
        Command::Table { q, primes } => run_table(*q, primes, &opts, cache.as_mut()),
    }
}

fn run_ramsey(cmd: &RamseyCmd, opts: &DistanceOptions) -> uplab::Result<Output> {
    let headers = vec!["kind", "n", "params", "value", "witness", "nodes"];
    let row = |r: &ramsey::RamseyResult| {
        let params = match r.params {
            ramsey::Pattern::Ap { m } => format!("m={m}"),
            ramsey::Pattern::Grid { delta, s } => format!("delta={delta};s={s}"),
        };
        let w: Vec<String> = r.witness.iter().map(s).collect();
        vec![s(r.kind), s(r.n), params, s(r.value), w.join(" "), s(r.nodes)]
    };
    match cmd {
        RamseyCmd::Ap { n, m: Some(m) } => {
            let r = ramsey::szemeredi_r(*m, *n)?;
            Ok(Output::new(&r, headers, vec![row(&r)]))
        }
        RamseyCmd::Ap { n, m: None } => {
            let all = (1..=*n).map(|m| ramsey::szemeredi_r(m, *n)).collect::<uplab::Result<Vec<_>>>()?;
            let bound = all.iter().zip(1..).map(|(r, m)| m + n - r.value).min();
            let v = json!({"n": n, "results": all, "min_m_bound": bound});
            Ok(Output::new(&v, headers, all.iter().map(row).collect()))
        }
        RamseyCmd::Grid { n, delta, s } => {
            let r = ramsey::szemeredi_grid(*delta, *s, *n)?;
            Ok(Output::new(&r, headers, vec![row(&r)]))
        }
        RamseyCmd::Bound { p, q, no_grid, no_mu } => {
            let ap = ramsey::prop_ram_lower(*p, *q)?;
            let grid = if *no_grid { None } else { Some(ramsey::prop_ram_grid_lower(*p, *q)?) };
            let mu = if *no_mu { None } else { Some(cyclic::mu(*p, *q, opts, None)?) };
            let mut status = Status::Ok;
            if let Some(m) = &mu {
                if !m.exact {
                    status = Status::Partial;
                }
                if m.mu_upper < ap.bound || grid.as_ref().is_some_and(|g| m.mu_upper < g.bound) {
                    status = Status::Violation;
                }
            }
            let mu_str = mu.as_ref().map_or("-".to_string(), |m| {
                if m.exact {
                    s(m.mu)
                } else {
                    format!("[{},{}]", m.mu, m.mu_upper)
                }
            });
            let v = json!({
                "p": p, "q": q, "ap_bound": ap, "grid_bound": grid,
                "mu": mu.as_ref().map(|m| m.mu), "mu_upper": mu.as_ref().map(|m| m.mu_upper),
            });
            let row = vec![s(p), s(q), s(ap.bound), grid.as_ref().map_or("-".to_string(), |g| s(g.bound)), mu_str];
            Ok(Output::new(&v, vec!["p", "q", "ap_bound", "grid_bound", "mu"], vec![row]).status(status))
        }
    }
}

fn run_asym(cmd: &AsymCmd, cfg: &RunConfig) -> uplab::Result<Output> {
    match cmd {
        AsymCmd::Entropy { x } => {
            let h = asymptotics::entropy(*x)?;
            Ok(Output::new(&json!({"x": x, "h": h}), vec!["x", "h"], vec![vec![s(x), s(h)]]))
        }
        AsymCmd::Plotkin { q } => {
            let cap = asymptotics::plotkin_lambda_cap(*q)?;
            let v = json!({"q": q, "cap": cap.to_string(), "cap_value": *cap.numer() as f64 / *cap.denom() as f64});
            Ok(Output::new(&v, vec!["q", "cap"], vec![vec![s(q), cap.to_string()]]))
        }
        AsymCmd::Ball { n, alpha, q } => {
            let b = asymptotics::ball_volume_upper(*n, *alpha, *q)?;
            let exact = b.exact.as_ref().map_or("-".to_string(), s);
            let row = vec![s(b.n), s(b.radius), exact, s(b.log2)];
            Ok(Output::new(&b, vec!["n", "radius", "exact", "log2"], vec![row]))
        }
        AsymCmd::Lambda { n, p, alpha, rate } => {
            let e = asymptotics::lambda_n_bound(*n, *p, *alpha, *rate)?;
            let v = json!({"n": n, "p": p, "alpha": alpha, "rate": rate, "log2_bound": e});
            Ok(Output::new(&v, vec!["n", "p", "alpha", "rate", "log2_bound"], vec![vec![s(n), s(p), s(alpha), s(rate), s(e)]]))
        }
        AsymCmd::FAlpha { q, alpha, rate, primes } => {
            let rows = primes
                .iter()
                .map(|&p| asymptotics::f_alpha(p, *alpha, *q, *rate))
                .collect::<uplab::Result<Vec<_>>>()?;
            let table = rows
                .iter()
                .map(|r| vec![s(r.p), s(r.leading), s(r.lhs_ln), s(r.rhs_ln), s(r.holds)])
                .collect();
            let v = json!({"q": q, "alpha": alpha, "rate": rate, "rows": rows});
            Ok(Output::new(&v, vec!["p", "leading", "lhs_ln", "rhs_ln", "holds"], table))
        }
        AsymCmd::Stirling { s: size, rate } => {
            let r = asymptotics::stirling_check(*size, *rate)?;
            let row = vec![s(r.s), s(r.s_prime), s(r.exact_log2), s(r.stirling_log2), s(r.ratio)];
            Ok(Output::new(&r, vec!["s", "s_prime", "exact_log2", "stirling_log2", "ratio"], vec![row]))
        }
        AsymCmd::Demo { q, p, rate, alpha } => {
            let r = asymptotics::construction_demo(*q, *p, *rate, *alpha, cfg.seed, cfg.budget)?;
            let row = vec![
                s(r.n),
                s(r.s),
                s(r.s_prime),
                r.gen.clone(),
                s(r.dim),
                s(r.designed_distance),
                s(r.distance.lower),
                s(r.distance.upper),
            ];
            let status = if r.distance.exact { Status::Ok } else { Status::Partial };
            Ok(Output::new(&r, vec!["n", "s", "s_prime", "gen", "dim", "designed", "d_lower", "d_upper"], vec![row])
                .status(status))
        }
    }
}

fn run_table(q: u64, primes: &[u64], opts: &DistanceOptions, cache: Option<&mut DistanceCache>) -> uplab::Result<Output> {
    let mut records = Vec::new();
    let lookup = cache.as_deref().map(|c| c as &dyn DistanceLookup);
    let rows = mu_table(q, primes, opts, lookup, |r| records.push(r.clone()))?;
    if let Some(c) = cache {
        for r in &records {
            c.record_mu(r);
        }
    }
    let status = if rows.iter().any(|r| r.verdict == Verdict::Mismatch) {
        Status::Violation
    } else if rows.iter().any(|r| r.verdict == Verdict::Partial) {
        Status::Partial
    } else {
        Status::Ok
    };
    let table = rows
        .iter()
        .map(|r| {
            let mu = if r.exact { s(r.mu) } else { format!("[{},{}]", r.mu, r.mu_upper) };
            vec![
                s(r.p),
                s(r.ord),
                mu,
                r.expected.map_or("-".to_string(), s),
                s(r.verdict.as_str()),
                r.witness.clone(),
                s(r.witness_dim),
                s(r.witness_d),
            ]
        })
        .collect();
    let v = json!({"q": q, "rows": rows});
    let mut out = Output::new(&v, vec!["p", "ord", "mu", "expected", "verdict", "witness", "dim", "d"], table).status(status);
    for r in rows.iter().filter(|r| r.verdict == Verdict::Bracket) {
        out = out.note(format!("p = {}: inexact bracket [{}, {}] contains the known value", r.p, r.mu, r.mu_upper));
    }
    Ok(out)
}

fn render(out: &Output, format: Format) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut w = stdout.lock();
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &out.json)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut c = csv::Writer::from_writer(w);
            c.write_record(&out.headers)?;
            for r in &out.rows {
                c.write_record(r)?;
            }
            c.flush()?;
        }
        Format::Table => {
            let mut widths: Vec<usize> = out.headers.iter().map(|h| h.len()).collect();
            for r in &out.rows {
                for (wd, cell) in widths.iter_mut().zip(r) {
                    *wd = (*wd).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &wd)| format!("{c:<wd$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(w, "{}", line(out.headers.clone()))?;
            for r in &out.rows {
                writeln!(w, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            for n in &out.notes {
                eprintln!("note: {n}");
            }
            match render(&out, cli.cfg.format) {
                Ok(()) => {}
                // The reader went away (e.g. `| head`); nothing left to report.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::FAILURE;
                }
            }
            match out.status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Partial => {
                    eprintln!("note: budget exhausted; some results are brackets");
                    ExitCode::from(EXIT_PARTIAL)
                }
                Status::Violation => {
                    eprintln!("error: invariant violation");
                    ExitCode::from(EXIT_VIOLATION)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) => ExitCode::from(EXIT_VIOLATION),
                _ => ExitCode::from(EXIT_USAGE),
            }
        }
    }
}

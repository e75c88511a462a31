//! Command-line front end: parse hypermap files, dispatch computations,
//! emit human-readable tables or machine-readable JSON.

mod doc;

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use hypermaps::ladder;
use hypermaps::perm::HypermapCollection;
use hypermaps::refine;
use hypermaps::reliability;
use hypermaps::twocolor;
use hypermaps::whitney;

use doc::{parse, render};

#[derive(Parser)]
#[command(
    name = "hypermaps",
    version,
    about = "Exact invariants of hypermaps given as permutation pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit a JSON document instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sums (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct InputArg {
    /// Hypermap file; stdin when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WhitneyMethod {
    Brute,
    Recursive,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HypertreeMethod {
    Whitney,
    Twocolor,
    Enumerate,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Ground-set size, cycle counts, faces, components, genus and the class
    /// of every hyperedge.
    Info(InputArg),
    /// The Whitney polynomial R(sigma, alpha; u, v).
    Whitney {
        #[command(flatten)]
        input: InputArg,
        /// brute: defining sum; recursive: hyperedge elimination (short
        /// hyperedges only); both: run the two and cross-check.
        #[arg(long, value_enum, default_value = "brute")]
        method: WhitneyMethod,
    },
    /// The number of spanning hypertrees.
    Hypertrees {
        #[command(flatten)]
        input: InputArg,
        /// whitney: R(0,0); twocolor: signed spanning-tree sum; enumerate:
        /// direct refinement scan; all: run the three and cross-check.
        #[arg(long, value_enum, default_value = "whitney")]
        method: HypertreeMethod,
    },
    /// The reliability of the random refinement model.
    Reliability {
        #[command(flatten)]
        input: InputArg,
        /// Evaluate at this rational t >= 0 (`p/q` or decimal).
        #[arg(long)]
        t: Option<String>,
        /// Print the exact rational function of t instead.
        #[arg(long)]
        symbolic: bool,
    },
    /// The random-cluster partition function Z(Q, t).
    Cluster {
        #[command(flatten)]
        input: InputArg,
        /// Cluster weight Q > 0 (`p/q` or decimal).
        #[arg(long = "Q", visible_alias = "q")]
        q: String,
        /// Evaluate at this rational t >= 0; symbolic in t when omitted.
        #[arg(long)]
        t: Option<String>,
    },
    /// Monte Carlo connectivity estimate under the random refinement model.
    Mc {
        #[command(flatten)]
        input: InputArg,
        /// Refinement weight t > 0 (`p/q` or decimal).
        #[arg(long)]
        t: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// The associated two-colored map of a short-hyperedge hypermap.
    Twocolor {
        #[command(flatten)]
        input: InputArg,
        /// Write the underlying graph as an edge list to this path.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// The dual (alpha^-1 sigma, alpha^-1), printed in the file grammar.
    Dual(InputArg),
    /// The reciprocal (alpha, sigma), printed in the file grammar.
    Reciprocal(InputArg),
    /// Spanning trees of the generalized pencil graph P(a_1..a_m; t),
    /// computed by recurrence, closed sum and Matrix-Tree, cross-checked.
    Pencil {
        /// Spoke multiplicities, comma separated, e.g. 6,4,4,6.
        #[arg(long, value_delimiter = ',', required = true)]
        a: Vec<u64>,
        /// Rung multiplicity.
        #[arg(long)]
        t: u64,
    },
    /// Spanning hypertrees of the reciprocal of the ladder map with m
    /// bounded faces.
    Ladder {
        #[arg(long)]
        m: u32,
        /// Print the whole coefficient prefix T(0)..T(m).
        #[arg(long)]
        series: bool,
    },
}

/// Parses `p/q`, an integer, or a finite decimal into an exact rational.
fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num.trim().parse().context("bad rational numerator")?;
        let d: BigInt = den.trim().parse().context("bad rational denominator")?;
        if d.is_zero() {
            bail!("rational with zero denominator: {text}");
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        let digits = frac.len() as u32;
        if !frac.chars().all(|c| c.is_ascii_digit()) || digits == 0 {
            bail!("bad decimal: {text}");
        }
        let sign = if whole.trim_start().starts_with('-') {
            -1
        } else {
            1
        };
        let whole_part: BigInt = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            whole.parse().context("bad decimal")?
        };
        let scale = BigInt::from(10u32).pow(digits);
        let frac_part: BigInt = frac.parse().context("bad decimal")?;
        let numer = whole_part * &scale + BigInt::from(sign) * frac_part;
        return Ok(BigRational::new(numer, scale));
    }
    let n: BigInt = text
        .parse()
        .with_context(|| format!("bad rational: {text}"))?;
    Ok(BigRational::from(n))
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn read_input(input: &InputArg) -> Result<HypermapCollection> {
    let text = match &input.input {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
        }
        _ => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let doc = parse(&text).map_err(|e| anyhow!("{e}"))?;
    doc.to_collection().map_err(|e| anyhow!("{}", e.msg))
}

fn input_echo(h: &HypermapCollection) -> Value {
    json!({
        "n": h.n(),
        "sigma": h.sigma().to_string(),
        "alpha": h.alpha().to_string(),
    })
}

/// Renders a point of a two-colored map, primes for white points:
/// the white partner of black point `p` prints as `p'`.
fn primed(tc: &twocolor::TwoColoredMap, point: u32) -> String {
    if point <= tc.n_black() {
        return point.to_string();
    }
    for white in tc.whites() {
        for (k, &prime) in white.primes.iter().enumerate() {
            if prime == point {
                return format!("{}'", white.origin[k]);
            }
        }
    }
    unreachable!("point {point} is neither black nor a known prime")
}

fn primed_cycles(tc: &twocolor::TwoColoredMap, perm: &hypermaps::Permutation) -> String {
    let mut out = String::new();
    for cycle in perm.cycles() {
        out.push('(');
        let parts: Vec<String> = cycle.iter().map(|&p| primed(tc, p)).collect();
        out.push_str(&parts.join(" "));
        out.push(')');
    }
    out
}

struct Report {
    json: bool,
    start: Instant,
}

impl Report {
    /// Emits the result: pretty JSON (sorted keys, timings split out) or the
    /// prepared human-readable text.
    fn emit(&self, command: &str, body: Value, human: String) -> Result<()> {
        if self.json {
            let mut root = serde_json::Map::new();
            root.insert("command".into(), json!(command));
            if let Value::Object(fields) = body {
                for (k, v) in fields {
                    root.insert(k, v);
                }
            }
            root.insert(
                "timings".into(),
                json!({ "total_ms": self.start.elapsed().as_secs_f64() * 1e3 }),
            );
            println!("{}", serde_json::to_string_pretty(&Value::Object(root))?);
        } else {
            print!("{human}");
        }
        Ok(())
    }
}

fn edge_class_of(h: &HypermapCollection, cycle: &[u32]) -> Result<String> {
    Ok(match cycle.len() {
        1 => "bud".to_string(),
        2 => whitney::classify2(h, cycle)?.to_string(),
        3 => whitney::classify3(h, cycle)?.to_string(),
        _ => "long (unclassified)".to_string(),
    })
}

fn cmd_info(h: &HypermapCollection, report: &Report) -> Result<()> {
    let faces = h.faces();
    let mut edges_json = Vec::new();
    let mut human = String::new();
    human.push_str(&format!("n:      {}\n", h.n()));
    human.push_str(&format!(
        "sigma:  {}   z = {}\n",
        h.sigma(),
        h.sigma().cycle_count()
    ));
    human.push_str(&format!(
        "alpha:  {}   z = {}\n",
        h.alpha(),
        h.alpha().cycle_count()
    ));
    human.push_str(&format!(
        "faces:  {}   z = {}\n",
        faces,
        faces.cycle_count()
    ));
    human.push_str(&format!("kappa:  {}\n", h.kappa()));
    human.push_str(&format!("genus:  {}\n", h.genus()));
    human.push_str("hyperedges:\n");
    for cycle in h.alpha().cycles() {
        let class = edge_class_of(h, cycle)?;
        let rendered = format!(
            "({})",
            cycle
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        human.push_str(&format!("  {rendered:<16} {class}\n"));
        edges_json.push(json!({
            "cycle": rendered,
            "length": cycle.len(),
            "class": class,
        }));
    }
    report.emit(
        "info",
        json!({
            "input": input_echo(h),
            "result": {
                "n": h.n(),
                "z_sigma": h.sigma().cycle_count(),
                "z_alpha": h.alpha().cycle_count(),
                "z_faces": faces.cycle_count(),
                "faces": faces.to_string(),
                "kappa": h.kappa(),
                "genus": h.genus(),
                "hyperedges": edges_json,
            },
        }),
        human,
    )
}

fn cmd_whitney(h: &HypermapCollection, method: WhitneyMethod, report: &Report) -> Result<()> {
    let (polynomial, method_name) = match method {
        WhitneyMethod::Brute => (whitney::whitney_bruteforce(h), "brute"),
        WhitneyMethod::Recursive => (whitney::whitney_recursive(h)?, "recursive"),
        WhitneyMethod::Both => {
            let brute = whitney::whitney_bruteforce(h);
            let recursive = whitney::whitney_recursive(h)?;
            if brute != recursive {
                bail!("whitney method mismatch: brute = {brute}, recursive = {recursive}");
            }
            (brute, "both")
        }
    };
    let rendered = polynomial.to_string();
    report.emit(
        "whitney",
        json!({
            "input": input_echo(h),
            "method": method_name,
            "result": { "polynomial": rendered },
        }),
        format!("R(u, v) = {rendered}\n"),
    )
}

fn cmd_hypertrees(h: &HypermapCollection, method: HypertreeMethod, report: &Report) -> Result<()> {
    let run = |m: HypertreeMethod| -> Result<BigInt> {
        Ok(match m {
            HypertreeMethod::Whitney => whitney::hypertree_count(h)?,
            HypertreeMethod::Twocolor => twocolor::hypertree_count(h)?,
            HypertreeMethod::Enumerate => refine::count_spanning_hypertrees(h)?,
            HypertreeMethod::All => unreachable!(),
        })
    };
    let (count, method_name) = match method {
        HypertreeMethod::All => {
            let whitney_count = run(HypertreeMethod::Whitney)?;
            let twocolor_count = run(HypertreeMethod::Twocolor)?;
            let enumerated = run(HypertreeMethod::Enumerate)?;
            if whitney_count != twocolor_count || whitney_count != enumerated {
                bail!(
                    "hypertree method mismatch: whitney = {whitney_count}, \
                     twocolor = {twocolor_count}, enumerate = {enumerated}"
                );
            }
            (whitney_count, "all")
        }
        HypertreeMethod::Whitney => (run(method)?, "whitney"),
        HypertreeMethod::Twocolor => (run(method)?, "twocolor"),
        HypertreeMethod::Enumerate => (run(method)?, "enumerate"),
    };
    report.emit(
        "hypertrees",
        json!({
            "input": input_echo(h),
            "method": method_name,
            "result": { "count": count.to_string() },
        }),
        format!("spanning hypertrees: {count}\n"),
    )
}

fn cmd_reliability(
    h: &HypermapCollection,
    t: Option<String>,
    symbolic: bool,
    report: &Report,
) -> Result<()> {
    match (t, symbolic) {
        (Some(t), false) => {
            let t = parse_rational(&t)?;
            if t.is_negative() {
                bail!("reliability needs t >= 0");
            }
            let value = reliability::reliability_eval(h, &t)?;
            report.emit(
                "reliability",
                json!({
                    "input": input_echo(h),
                    "result": {
                        "t": format_rational(&t),
                        "value": format_rational(&value),
                    },
                }),
                format!(
                    "reliability({}) = {}\n",
                    format_rational(&t),
                    format_rational(&value)
                ),
            )
        }
        (None, true) => {
            let fun = reliability::reliability_function(h)?;
            report.emit(
                "reliability",
                json!({
                    "input": input_echo(h),
                    "result": { "function": fun.to_string() },
                }),
                format!("reliability(t) = {fun}\n"),
            )
        }
        _ => bail!("pass exactly one of --t <rational> or --symbolic"),
    }
}

fn cmd_cluster(
    h: &HypermapCollection,
    q: String,
    t: Option<String>,
    report: &Report,
) -> Result<()> {
    let q = parse_rational(&q)?;
    let fun = reliability::partition_function(h, &q)?;
    match t {
        None => report.emit(
            "cluster",
            json!({
                "input": input_echo(h),
                "result": {
                    "Q": format_rational(&q),
                    "function": fun.to_string(),
                },
            }),
            format!("Z(Q = {}; t) = {fun}\n", format_rational(&q)),
        ),
        Some(t) => {
            let t = parse_rational(&t)?;
            let value = fun
                .evaluate(&t)
                .ok_or_else(|| anyhow!("partition function has a pole at t = {t}"))?;
            report.emit(
                "cluster",
                json!({
                    "input": input_echo(h),
                    "result": {
                        "Q": format_rational(&q),
                        "t": format_rational(&t),
                        "value": format_rational(&value),
                    },
                }),
                format!(
                    "Z(Q = {}, t = {}) = {}\n",
                    format_rational(&q),
                    format_rational(&t),
                    format_rational(&value)
                ),
            )
        }
    }
}

fn cmd_mc(
    h: &HypermapCollection,
    t: String,
    trials: u64,
    seed: u64,
    report: &Report,
) -> Result<()> {
    let t = parse_rational(&t)?;
    let est = reliability::mc_connectivity(h, &t, trials, seed)?;
    report.emit(
        "mc",
        json!({
            "input": input_echo(h),
            "result": {
                "t": format_rational(&t),
                "trials": est.trials,
                "seed": seed,
                "successes": est.successes,
                "estimate": est.estimate,
                "stderr": est.stderr,
            },
        }),
        format!(
            "connectivity ~ {:.6} +- {:.6}  ({} / {} trials, seed {})\n",
            est.estimate, est.stderr, est.successes, est.trials, seed
        ),
    )
}

fn cmd_twocolor(h: &HypermapCollection, export: Option<PathBuf>, report: &Report) -> Result<()> {
    let tc = twocolor::associate(h)?;
    let graph = twocolor::underlying_graph(&tc);
    let s_rendered = primed_cycles(&tc, tc.map().sigma());
    let a_rendered = primed_cycles(&tc, tc.map().alpha());
    let mut human = String::new();
    human.push_str(&format!("S: {s_rendered}\n"));
    human.push_str(&format!("A: {a_rendered}\n"));
    human.push_str(&format!(
        "black points: 1..{}; white points: {}\n",
        tc.n_black(),
        tc.whites().len() * 3
    ));
    let mut exported = None;
    if let Some(path) = export {
        fs::write(&path, graph.to_edge_list())
            .with_context(|| format!("cannot write {}", path.display()))?;
        human.push_str(&format!("graph written to {}\n", path.display()));
        exported = Some(path.display().to_string());
    }
    report.emit(
        "twocolor",
        json!({
            "input": input_echo(h),
            "result": {
                "S": s_rendered,
                "A": a_rendered,
                "S_points": tc.map().sigma().to_string(),
                "A_points": tc.map().alpha().to_string(),
                "n_black": tc.n_black(),
                "white_vertices": tc.whites().len(),
                "export": exported,
            },
        }),
        human,
    )
}

fn cmd_transform(h: &HypermapCollection, dual: bool, report: &Report) -> Result<()> {
    let (name, transformed) = if dual {
        ("dual", h.dual())
    } else {
        ("reciprocal", h.reciprocal())
    };
    let text = render(&transformed);
    report.emit(
        name,
        json!({
            "input": input_echo(h),
            "result": {
                "n": transformed.n(),
                "sigma": transformed.sigma().to_string(),
                "alpha": transformed.alpha().to_string(),
            },
        }),
        text,
    )
}

fn cmd_pencil(a: Vec<u64>, t: u64, report: &Report) -> Result<()> {
    let spec = ladder::PencilSpec::new(a.clone(), t)?;
    let by_recurrence = ladder::theta_rec(&spec);
    let by_closed_form = ladder::theta_closed(&spec);
    let by_matrix_tree = spec.graph().spanning_tree_count();
    if by_recurrence != by_closed_form || by_recurrence != by_matrix_tree {
        bail!(
            "pencil method mismatch: recurrence = {by_recurrence}, \
             closed = {by_closed_form}, matrix-tree = {by_matrix_tree}"
        );
    }
    let spokes = a
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",");
    report.emit(
        "pencil",
        json!({
            "result": {
                "a": a,
                "t": t,
                "count": by_recurrence.to_string(),
            },
        }),
        format!("spanning trees of P({spokes}; {t}) = {by_recurrence}\n"),
    )
}

fn cmd_ladder(m: u32, series: bool, report: &Report) -> Result<()> {
    if series {
        let prefix = ladder::t_series().prefix(m as usize + 1);
        let rendered: Vec<String> = prefix.iter().map(|c| c.to_string()).collect();
        let mut human = String::new();
        for (i, c) in rendered.iter().enumerate() {
            human.push_str(&format!("T({i}) = {c}\n"));
        }
        report.emit(
            "ladder",
            json!({
                "result": { "m": m, "series": rendered },
            }),
            human,
        )
    } else {
        let count = ladder::ladder_hypertree_count(m)?;
        report.emit(
            "ladder",
            json!({
                "result": { "m": m, "count": count.to_string() },
            }),
            format!("spanning hypertrees of the {m}-face ladder reciprocal: {count}\n"),
        )
    }
}

fn run() -> Result<()> {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("cannot configure thread pool")?;
    }
    let report = Report {
        json: cli.json,
        start: Instant::now(),
    };
    match cli.command {
        Command::Info(input) => cmd_info(&read_input(&input)?, &report),
        Command::Whitney { input, method } => cmd_whitney(&read_input(&input)?, method, &report),
        Command::Hypertrees { input, method } => {
            cmd_hypertrees(&read_input(&input)?, method, &report)
        }
        Command::Reliability { input, t, symbolic } => {
            cmd_reliability(&read_input(&input)?, t, symbolic, &report)
        }
        Command::Cluster { input, q, t } => cmd_cluster(&read_input(&input)?, q, t, &report),
        Command::Mc {
            input,
            t,
            trials,
            seed,
        } => cmd_mc(&read_input(&input)?, t, trials, seed, &report),
        Command::Twocolor { input, export } => cmd_twocolor(&read_input(&input)?, export, &report),
        Command::Dual(input) => cmd_transform(&read_input(&input)?, true, &report),
        Command::Reciprocal(input) => cmd_transform(&read_input(&input)?, false, &report),
        Command::Pencil { a, t } => cmd_pencil(a, t, &report),
        Command::Ladder { m, series } => cmd_ladder(m, series, &report),
    }
}

fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

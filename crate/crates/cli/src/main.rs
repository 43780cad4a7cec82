use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use deadend_core::engine::{
    ball_cached, depth, BallFailure, Convention, DepthResult, DistMap, Limits,
};
use deadend_core::group::{
    special_h, special_k, GElem, GGroup, GenSet, Group, HElem, HGroup, KElem, KGroup, LLElem,
    Lamplighter, Word, ZElem, ZGroup,
};
use deadend_core::lamp::{LaurentPolyZ2, LocalizedLamp};
use deadend_core::paths::{witness_h, witness_k};
use deadend_core::report::VerificationReport;
use deadend_core::suites::{run_suite, Suite, SuiteParams};

#[derive(Parser)]
#[command(name = "deadend", version, about = "Dead-end depth experiments in lamplighter-type groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Resources {
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Memory cap for ball tables, in GiB.
    #[arg(long)]
    mem_cap: Option<f64>,
    /// Element cap for ball tables.
    #[arg(long)]
    max_elements: Option<usize>,
}

impl Resources {
    fn limits(&self) -> Limits {
        let mut limits = Limits::with_threads(self.threads);
        if let Some(gib) = self.mem_cap {
            limits.mem_cap = (gib * (1u64 << 30) as f64) as u64;
        }
        if let Some(m) = self.max_elements {
            limits.max_elements = m;
        }
        limits
    }
}

#[derive(Args, Clone)]
struct Target {
    /// Z, LL, H, G or K.
    group: Option<String>,
    /// A, B, C, D, S, LL-std or Z:{n1,n2,...}.
    genset: Option<String>,
    #[arg(long = "group", id = "group_flag")]
    group_flag: Option<String>,
    #[arg(long = "genset", id = "genset_flag")]
    genset_flag: Option<String>,
    /// Multiplication side used to grow the ball.
    #[arg(long, default_value = "right")]
    convention: Convention,
    /// Directory for cached ball tables.
    #[arg(long)]
    cache: Option<PathBuf>,
}

impl Target {
    fn names(&self) -> Result<(String, String)> {
        let group = self
            .group_flag
            .clone()
            .or_else(|| self.group.clone())
            .ok_or_else(|| anyhow!("missing group"))?;
        let genset = self
            .genset_flag
            .clone()
            .or_else(|| self.genset.clone())
            .ok_or_else(|| anyhow!("missing generating set"))?;
        Ok((group, genset))
    }

    /// The trailing positional of a command once flags have taken the
    /// group or generating set.
    fn with_trailing(self, last: Option<String>) -> Result<(Self, String)> {
        let (target, last) = self.reflow(last)?;
        Ok((target, last.ok_or_else(|| anyhow!("missing element"))?))
    }

    /// Reassigns positional values when the group or generating set came
    /// from a flag.
    fn reflow(mut self, last: Option<String>) -> Result<(Self, Option<String>)> {
        let mut given = [self.group.take(), self.genset.take(), last]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .into_iter();
        if self.group_flag.is_none() {
            self.group = given.next();
        }
        if self.genset_flag.is_none() {
            self.genset = given.next();
        }
        let last = given.next();
        if given.next().is_some() {
            bail!("too many positional arguments");
        }
        Ok((self, last))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a ball and print its sphere sizes as CSV.
    Ball {
        #[command(flatten)]
        target: Target,
        radius: Option<String>,
        #[arg(long = "radius", id = "radius_flag")]
        radius_flag: Option<u32>,
        /// Write the sphere table as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        res: Resources,
    },
    /// Dead-end depth of an element: a word, an integer in Z, `gn(k)`, or
    /// `{lamps}@(position)`.
    Depth {
        #[command(flatten)]
        target: Target,
        element: Option<String>,
        /// Ball radius; defaults to the distance of the element.
        #[arg(long)]
        radius: Option<u32>,
        /// Largest depth searched.
        #[arg(long, default_value_t = 8)]
        cap: u32,
        /// Largest radius tried when searching for the element.
        #[arg(long, default_value_t = 16)]
        max_radius: u32,
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        res: Resources,
    },
    /// A word of length at most 4n for an element, over C in H or A in K.
    Witness {
        /// H or K.
        group: String,
        /// `n=<n>`.
        n: String,
        /// `gn`, `gn(k)`, a word, or `{lamps}@(position)`.
        element: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run verification suites; exits nonzero unless every claim passes.
    Verify {
        /// Suite names, `all`, and `n=a..b` / `R=r` settings.
        #[arg(required = true)]
        items: Vec<String>,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        convention: Option<Convention>,
        /// Larger parameters.
        #[arg(long)]
        deep: bool,
        /// Write the reports as a JSON array.
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        res: Resources,
    },
    /// Summarize saved verification reports.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
}

/// Group-specific element syntax for the command line.
trait CliGroup: Group {
    fn special(&self, _n: i64) -> Result<Self::Elem> {
        bail!("{} has no special elements", self.name())
    }

    fn explicit(&self, _lamps: &[i64], _pos: &[i32]) -> Result<Self::Elem> {
        bail!("{} elements cannot be given as lamps and position", self.name())
    }

    fn integer(&self, _x: i64) -> Option<Self::Elem> {
        None
    }
}

fn poly(lamps: &[i64]) -> LaurentPolyZ2 {
    LaurentPolyZ2::from_exponents(lamps.iter().copied())
}

fn arity(pos: &[i32], k: usize) -> Result<()> {
    if pos.len() != k {
        bail!("expected a position with {k} coordinates, got {}", pos.len());
    }
    Ok(())
}

impl CliGroup for ZGroup {
    fn integer(&self, x: i64) -> Option<ZElem> {
        Some(ZElem(x))
    }
}

impl CliGroup for Lamplighter {
    fn explicit(&self, lamps: &[i64], pos: &[i32]) -> Result<LLElem> {
        arity(pos, 1)?;
        Ok(LLElem::new(poly(lamps), pos[0]))
    }
}

impl CliGroup for HGroup {
    fn special(&self, n: i64) -> Result<HElem> {
        Ok(special_h(n)?)
    }

    fn explicit(&self, lamps: &[i64], pos: &[i32]) -> Result<HElem> {
        arity(pos, 2)?;
        Ok(HElem::new(poly(lamps), (pos[0], pos[1])))
    }
}

impl CliGroup for GGroup {
    fn explicit(&self, lamps: &[i64], pos: &[i32]) -> Result<GElem> {
        arity(pos, 2)?;
        Ok(GElem::new(LocalizedLamp::from_poly(poly(lamps)), (pos[0], pos[1])))
    }
}

impl CliGroup for KGroup {
    fn special(&self, n: i64) -> Result<KElem> {
        Ok(special_k(n)?)
    }

    fn explicit(&self, lamps: &[i64], pos: &[i32]) -> Result<KElem> {
        arity(pos, 3)?;
        Ok(KElem::new(LocalizedLamp::from_poly(poly(lamps)), (pos[0], pos[1], pos[2])))
    }
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<T>().map_err(|e| anyhow!("{x:?}: {e}")))
        .collect()
}

fn parse_element<G: CliGroup>(group: &G, spec: &str, n: Option<i64>) -> Result<G::Elem> {
    let spec = spec.trim();
    if spec == "gn" {
        return group.special(n.ok_or_else(|| anyhow!("gn needs n=<n>"))?);
    }
    if let Some(k) = spec.strip_prefix("gn(").and_then(|s| s.strip_suffix(')')) {
        return group.special(k.trim().parse().context("index of gn")?);
    }
    if let Some((lamps, pos)) = spec.split_once('@') {
        let lamps = lamps
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| anyhow!("lamps must look like {{i,j,...}}"))?;
        let pos = pos
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| anyhow!("position must look like (x,y,...)"))?;
        return group.explicit(&parse_list(lamps)?, &parse_list(pos)?);
    }
    if let Ok(x) = spec.parse::<i64>() {
        if let Some(g) = group.integer(x) {
            return Ok(g);
        }
    }
    let word: Word = spec.parse().with_context(|| format!("element {spec:?}"))?;
    Ok(group.eval(&word)?)
}

fn parse_n(s: &str) -> Result<i64> {
    s.strip_prefix("n=")
        .unwrap_or(s)
        .parse()
        .with_context(|| format!("expected n=<n>, got {s:?}"))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn gens_for(name: &str) -> Result<GenSet> {
    let path = Path::new(name);
    if name.ends_with(".json") && path.exists() {
        return Ok(GenSet::load_json(path)?);
    }
    Ok(GenSet::builtin(name)?)
}

macro_rules! with_group {
    ($name:expr, $g:ident => $body:expr) => {
        match $name {
            "Z" => {
                let $g = ZGroup;
                $body
            }
            "LL" => {
                let $g = Lamplighter;
                $body
            }
            "H" => {
                let $g = HGroup;
                $body
            }
            "G" => {
                let $g = GGroup;
                $body
            }
            "K" => {
                let $g = KGroup;
                $body
            }
            other => bail!("unknown group {other:?}; expected Z, LL, H, G or K"),
        }
    };
}

fn print_spheres<E>(dm: &DistMap<E>) {
    println!("radius,sphere,ball");
    let mut total = 0;
    for (k, s) in dm.sphere_sizes.iter().enumerate() {
        total += s;
        println!("{k},{s},{total}");
    }
}

fn sphere_json<E>(dm: &DistMap<E>, complete: bool) -> serde_json::Value {
    json!({
        "group": dm.group,
        "genset": dm.genset,
        "radius": dm.radius,
        "convention": dm.convention.tag(),
        "sphere_sizes": dm.sphere_sizes,
        "total": dm.sphere_sizes.iter().sum::<usize>(),
        "complete": complete,
    })
}

fn cmd_ball(target: &Target, radius: u32, json_out: Option<&Path>, limits: &Limits) -> Result<bool> {
    let (group, genset) = target.names()?;
    let gens = gens_for(&genset)?;
    with_group!(group.as_str(), g => {
        match ball_cached(&g, &gens, radius, target.convention, limits, target.cache.as_deref()) {
            Ok(dm) => {
                print_spheres(&dm);
                if let Some(p) = json_out {
                    write_json(p, &sphere_json(&dm, true))?;
                }
                Ok(true)
            }
            Err(BallFailure::Limit(e)) => {
                eprintln!("{e}; partial table follows");
                print_spheres(&e.partial);
                if let Some(p) = json_out {
                    write_json(p, &sphere_json(&e.partial, false))?;
                }
                Ok(false)
            }
            Err(BallFailure::Engine(e)) => Err(e.into()),
        }
    })
}

fn depth_of<G: CliGroup>(
    g: &G,
    gens: &GenSet,
    target: &Target,
    element: &str,
    radius: Option<u32>,
    cap: u32,
    max_radius: u32,
    limits: &Limits,
) -> Result<(String, u32, DepthResult)> {
    let x = parse_element(g, element, None)?;
    let build = |r: u32| -> Result<DistMap<G::Elem>> {
        ball_cached(g, gens, r, target.convention, limits, target.cache.as_deref())
            .map_err(|e| anyhow!("{e}"))
    };
    let dm = match radius {
        Some(r) => build(r)?,
        None => {
            let mut r = 0;
            loop {
                let dm = build(r)?;
                if dm.get(&x).is_some() {
                    break dm;
                }
                if r >= max_radius {
                    bail!("{x} is beyond radius {max_radius}");
                }
                r += 1;
            }
        }
    };
    let d = dm
        .get(&x)
        .ok_or_else(|| anyhow!("{x} is beyond radius {}", dm.radius))?;
    Ok((g.serialize(&x), d, depth(g, &dm, &x, cap)?))
}

fn cmd_witness(group: &str, n: i64, element: &str, json_out: Option<&Path>) -> Result<bool> {
    let (word, len, ok_eval, shown, path) = match group {
        "H" => {
            let x = parse_element(&HGroup, element, Some(n))?;
            let gens = GenSet::c();
            let w = witness_h(&x, n)?;
            let path = prefix_positions(&HGroup, &gens, &w, |e| vec![e.pos.0, e.pos.1])?;
            let ok = w.eval(&HGroup, &gens)? == x;
            let text = w.display(&gens).to_string();
            (text, w.len(), ok, x.to_string(), path)
        }
        "K" => {
            let x = parse_element(&KGroup, element, Some(n))?;
            let gens = GenSet::a();
            let w = witness_k(&x, n)?;
            let path = prefix_positions(&KGroup, &gens, &w, |e| vec![e.pos.0, e.pos.1, e.pos.2])?;
            let ok = w.eval(&KGroup, &gens)? == x;
            let text = w.display(&gens).to_string();
            (text, w.len(), ok, x.to_string(), path)
        }
        other => bail!("witnesses exist for H and K, not {other:?}"),
    };
    let within = len as i64 <= 4 * n;
    let shown_word = if word.is_empty() { "(empty word)".to_string() } else { word.clone() };
    println!("element: {shown}");
    println!("witness: {shown_word}");
    println!("length: {len} (bound 4n = {}, {})", 4 * n, if within { "within" } else { "EXCEEDED" });
    println!("eval(witness) = element: {ok_eval}");
    if let Some(p) = json_out {
        write_json(
            p,
            &json!({
                "group": group,
                "n": n,
                "element": shown,
                "witness": word,
                "length": len,
                "bound": 4 * n,
                "within_bound": within,
                "eval_ok": ok_eval,
                "positions": path,
            }),
        )?;
    }
    Ok(within && ok_eval)
}

/// Lamplighter positions along the witness in action order: the suffixes
/// of the word, shortest first.
fn prefix_positions<G: Group>(
    group: &G,
    gens: &GenSet,
    w: &deadend_core::group::GenWord,
    pos: impl Fn(&G::Elem) -> Vec<i32>,
) -> Result<Vec<Vec<i32>>> {
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut acc = group.identity();
    out.push(pos(&acc));
    for &l in w.0.iter().rev() {
        let x = group.eval(&gens.word_of(l))?;
        acc = group.mul(&x, &acc);
        out.push(pos(&acc));
    }
    Ok(out)
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((a.trim().parse()?, b.trim().parse()?))
        }
        None => {
            let n = s.trim().parse()?;
            Ok((n, n))
        }
    }
}

fn cmd_verify(
    items: &[String],
    radius: Option<u32>,
    convention: Option<Convention>,
    deep: bool,
    json_out: Option<&Path>,
    limits: &Limits,
) -> Result<bool> {
    let mut params = SuiteParams {
        n: None,
        radius,
        convention,
        limits: *limits,
        deep,
    };
    let mut suites = Vec::new();
    for item in items {
        if let Some(v) = item.strip_prefix("n=") {
            params.n = Some(parse_range(v).with_context(|| format!("bad range {item:?}"))?);
        } else if let Some(v) = item.strip_prefix("R=") {
            params.radius = Some(v.parse().with_context(|| format!("bad radius {item:?}"))?);
        } else if item == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(item.parse::<Suite>()?);
        }
    }
    if suites.is_empty() {
        bail!("no suite named");
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    for s in suites {
        let report = run_suite(s, &params)?;
        println!("{report}");
        reports.push(report);
    }
    if let Some(p) = json_out {
        write_json(p, &serde_json::to_value(&reports)?)?;
    }
    Ok(reports.iter().all(|r| r.pass()))
}

fn cmd_report(files: &[PathBuf]) -> Result<bool> {
    let mut all_pass = true;
    for f in files {
        let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let reports: Vec<VerificationReport> = if value.is_array() {
            serde_json::from_value(value)?
        } else {
            vec![serde_json::from_value(value)?]
        };
        for r in &reports {
            let failed = r.failures().count();
            println!(
                "{}: {} ({} of {} claims pass)",
                r.suite,
                if r.pass() { "PASS" } else { "FAIL" },
                r.claims.len() - failed,
                r.claims.len()
            );
            for c in r.failures() {
                println!("  FAIL {}: expected {}, computed {}", c.claim, c.expected, c.computed);
            }
            all_pass &= r.pass();
        }
    }
    Ok(all_pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Ball {
            target,
            radius,
            radius_flag,
            json,
            res,
        } => {
            let (target, rest) = target.reflow(radius)?;
            let r = match (radius_flag, rest) {
                (Some(r), None) => r,
                (None, Some(r)) => r.parse().with_context(|| format!("bad radius {r:?}"))?,
                (Some(_), Some(_)) => bail!("radius given twice"),
                (None, None) => bail!("missing radius"),
            };
            cmd_ball(&target, r, json.as_deref(), &res.limits())
        }
        Command::Depth {
            target,
            element,
            radius,
            cap,
            max_radius,
            json,
            res,
        } => {
            let (target, element) = target.with_trailing(element)?;
            let (group, genset) = target.names()?;
            let gens = gens_for(&genset)?;
            let limits = res.limits();
            let (shown, d, result) = with_group!(group.as_str(), g => {
                depth_of(&g, &gens, &target, &element, radius, cap, max_radius, &limits)?
            });
            println!("element: {shown}");
            println!("distance: {d}");
            println!("depth: {result}");
            if let Some(p) = json {
                write_json(
                    &p,
                    &json!({
                        "group": group,
                        "genset": gens.name,
                        "element": shown,
                        "distance": d,
                        "depth": result.to_string(),
                    }),
                )?;
            }
            Ok(true)
        }
        Command::Witness {
            group,
            n,
            element,
            json,
        } => cmd_witness(&group, parse_n(&n)?, &element, json.as_deref()),
        Command::Verify {
            items,
            radius,
            convention,
            deep,
            json,
            res,
        } => cmd_verify(&items, radius, convention, deep, json.as_deref(), &res.limits()),
        Command::Report { files } => cmd_report(&files),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

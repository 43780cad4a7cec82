//! Named verification suites. Each suite builds the balls it needs, runs
//! its checks and returns a report with one claim per checked statement.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{
    ball, depth, par_for_each_geodesic, verify_region_claim, BallFailure, Convention,
    DepthResult, DistMap, EngineError, LimitKind, Limits,
};
use crate::group::{
    act_word_h, random_word, relators, special_h, special_k, Base, GenSet, GenTable, GenWord,
    Group, GroupError, HElem, HGroup, KElem, KGroup, ZElem, ZGroup,
};
use crate::lamp::{LaurentPolyZ2, LocalizedLamp};
use crate::oracle::{dpath_search, z_consecutive_depth, z_consecutive_distance, z_distance};
use crate::paths::{
    d_c_analytic, d_d_analytic, dpath_min_length, escape_move, normalize_decorated,
    path_from_word, witness_h, witness_k, word_from_path, PathError, PathModel,
};
use crate::report::{Claim, ReportParams, Stats, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Relators,
    Oracles,
    ZDepth,
    HUnbounded,
    HBounded,
    KUnbounded,
    KBounded,
    LemmasH,
    LemmasK,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Relators,
        Suite::Oracles,
        Suite::ZDepth,
        Suite::HUnbounded,
        Suite::HBounded,
        Suite::KUnbounded,
        Suite::KBounded,
        Suite::LemmasH,
        Suite::LemmasK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relators => "relators",
            Suite::Oracles => "oracles",
            Suite::ZDepth => "Z-depth",
            Suite::HUnbounded => "H-unbounded",
            Suite::HBounded => "H-bounded",
            Suite::KUnbounded => "K-unbounded",
            Suite::KBounded => "K-bounded",
            Suite::LemmasH => "lemmas-H",
            Suite::LemmasK => "lemmas-K",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, SuiteError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    /// Inclusive range of `n`; each suite has its own default.
    pub n: Option<(i64, i64)>,
    pub radius: Option<u32>,
    pub convention: Option<Convention>,
    pub limits: Limits,
    pub deep: bool,
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("{kind:?} while building the {what} ball: complete only to radius {radius} ({elements} elements)")]
    Limit {
        what: String,
        kind: LimitKind,
        radius: u32,
        elements: usize,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("bad parameters: {0}")]
    Params(String),
}

struct Run {
    claims: Vec<Claim>,
    stats: Stats,
    limits: Limits,
}

impl Run {
    fn ball<G: Group>(
        &mut self,
        group: &G,
        gens: &GenSet,
        radius: u32,
        conv: Convention,
    ) -> Result<DistMap<G::Elem>, SuiteError> {
        match ball(group, gens, radius, conv, &self.limits) {
            Ok(dm) => {
                self.stats.record_ball(dm.len());
                Ok(dm)
            }
            Err(BallFailure::Limit(e)) => Err(SuiteError::Limit {
                what: format!("({}, {}) radius {radius}", group.name(), gens.name),
                kind: e.kind,
                radius: e.partial.radius,
                elements: e.partial.len(),
            }),
            Err(BallFailure::Engine(e)) => Err(e.into()),
        }
    }

    fn push(&mut self, c: Claim) {
        self.claims.push(c);
    }

    /// A claim that none of `checked` cases failed.
    fn none_fail(&mut self, claim: impl Into<String>, tally: Tally) {
        let expected = format!("0 of {} fail", tally.checked);
        let computed = match &tally.first {
            Some(f) => format!("{} of {} fail, first {f}", tally.failed, tally.checked),
            None => expected.clone(),
        };
        let pass = tally.failed == 0 && tally.checked > 0;
        self.claims.push(Claim::new(claim, expected, computed, pass));
    }
}

/// Failure count with the least failing case by its description, so the
/// outcome is independent of scan order.
#[derive(Debug, Default)]
struct Tally {
    checked: usize,
    failed: usize,
    first: Option<String>,
}

impl Tally {
    fn from_results(results: impl IntoIterator<Item = Option<String>>) -> Self {
        let mut t = Tally::default();
        for r in results {
            t.add(r);
        }
        t
    }

    fn add(&mut self, r: Option<String>) {
        self.checked += 1;
        if let Some(f) = r {
            self.failed += 1;
            if self.first.as_ref().is_none_or(|g| f < *g) {
                self.first = Some(f);
            }
        }
    }
}

/// Shared tally for parallel visitors.
#[derive(Default)]
struct SyncTally {
    checked: AtomicUsize,
    failed: AtomicUsize,
    first: Mutex<Option<String>>,
}

impl SyncTally {
    fn add(&self, r: Option<String>) {
        self.checked.fetch_add(1, Ordering::Relaxed);
        if let Some(f) = r {
            self.failed.fetch_add(1, Ordering::Relaxed);
            let mut first = self.first.lock().expect("no panics while held");
            if first.as_ref().is_none_or(|g| f < *g) {
                *first = Some(f);
            }
        }
    }

    fn finish(self) -> Tally {
        Tally {
            checked: self.checked.into_inner(),
            failed: self.failed.into_inner(),
            first: self.first.into_inner().expect("no panics while held"),
        }
    }
}

fn scan<T: Sync>(items: &[T], check: impl Fn(&T) -> Option<String> + Sync + Send) -> Tally {
    let results: Vec<Option<String>> = items.par_iter().map(check).collect();
    Tally::from_results(results)
}

fn elements<E: Clone + Eq + std::hash::Hash>(dm: &DistMap<E>) -> Vec<(E, u32)> {
    dm.iter().map(|(g, d)| (g.clone(), d)).collect()
}

fn at_least(r: DepthResult, k: u32) -> bool {
    match r {
        DepthResult::Exact(j) | DepthResult::AtLeast(j) => j >= k,
    }
}

fn n_range(params: &SuiteParams, default: (i64, i64), deep: (i64, i64)) -> Result<(i64, i64), SuiteError> {
    let (lo, hi) = params.n.unwrap_or(if params.deep { deep } else { default });
    if lo < 1 || hi < lo {
        return Err(SuiteError::Params(format!("n range {lo}..{hi} is empty or below 1")));
    }
    Ok((lo, hi))
}

fn poly(exps: impl IntoIterator<Item = i64>) -> LaurentPolyZ2 {
    LaurentPolyZ2::from_exponents(exps)
}

/// Lamp sets inside `[-n, n]`.
fn lamp_subsets(n: i64) -> impl Iterator<Item = LaurentPolyZ2> {
    let width = 2 * n + 1;
    (0u64..1 << width).map(move |mask| poly((0..width).filter(|i| mask >> i & 1 == 1).map(|i| i - n)))
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(params.limits.threads)
        .build()
        .map_err(|e| EngineError::ThreadPool(e.to_string()))?;
    let mut run = Run {
        claims: Vec::new(),
        stats: Stats {
            threads: pool.current_num_threads(),
            ..Stats::default()
        },
        limits: params.limits,
    };
    let (n, radius, convention) = pool.install(|| match suite {
        Suite::Relators => relators_suite(&mut run),
        Suite::Oracles => oracles_suite(&mut run),
        Suite::ZDepth => z_depth_suite(&mut run, params),
        Suite::HUnbounded => h_unbounded_suite(&mut run, params),
        Suite::HBounded => h_bounded_suite(&mut run, params),
        Suite::KUnbounded => k_unbounded_suite(&mut run, params),
        Suite::KBounded => k_bounded_suite(&mut run, params),
        Suite::LemmasH => lemmas_h_suite(&mut run, params),
        Suite::LemmasK => lemmas_k_suite(&mut run, params),
    })?;
    run.stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        params: ReportParams {
            n,
            radius,
            convention: convention.map(|c| c.tag().to_string()),
            max_elements: params.limits.max_elements,
            mem_cap: params.limits.mem_cap,
            deep: params.deep,
        },
        claims: run.claims,
        stats: run.stats,
    })
}

type Effective = (Option<(i64, i64)>, Option<u32>, Option<Convention>);

fn relators_suite(run: &mut Run) -> Result<Effective, SuiteError> {
    let all = relators();
    for group in ["H", "G", "K", "LL"] {
        let mine: Vec<_> = all.iter().filter(|r| r.group == group).collect();
        let mut tally = Tally::default();
        for r in mine {
            tally.add(match r.is_trivial()? {
                true => None,
                false => Some(r.word.to_string()),
            });
        }
        run.none_fail(format!("every defining relator of {group} is the identity"), tally);
    }
    Ok((None, None, None))
}

fn oracles_suite(run: &mut Run) -> Result<Effective, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let words: Vec<_> = (0..10_000)
        .map(|_| random_word(&mut rng, &[Base::A, Base::T, Base::U], 12))
        .collect();
    let tally = scan(&words, |w| {
        let (lamps, (q, r)) = act_word_h(w).ok()?;
        let g = HGroup.eval(w).ok()?;
        let same = g.lamps == lamps && (g.pos.0 as i64, g.pos.1 as i64) == (q, r);
        (!same).then(|| w.to_string())
    });
    run.none_fail("H group law reproduces the letter action on 10000 random words", tally);

    let points: Vec<(i64, i64)> = (-6..=6).flat_map(|q| (-6..=6).map(move |r| (q, r))).collect();
    let tally = scan(&points, |&(q, r)| {
        let (a, b) = (dpath_min_length(q, r), dpath_search(q, r));
        (a != b).then(|| format!("({q},{r}): formula {a}, search {b}"))
    });
    run.none_fail("shortest D-path length matches search for |q|,|r| <= 6", tally);

    for gens in [[2i64, 3], [4, 5]] {
        let set = GenSet::z(&gens)?;
        let dm = run.ball(&ZGroup, &set, 60, Convention::RightMult)?;
        let xs: Vec<i64> = (-100..=100).collect();
        let tally = scan(&xs, |&x| {
            let engine = dm.get(&ZElem(x)).map(i64::from);
            let oracle = z_distance(x, &gens);
            (engine != oracle).then(|| format!("{x}: engine {engine:?}, oracle {oracle:?}"))
        });
        run.none_fail(format!("Z over {{{},{}}}: engine distance equals search for |x| <= 100", gens[0], gens[1]), tally);
        let xs: Vec<i64> = (-30..=30).collect();
        let tally = scan(&xs, |&x| {
            let engine = depth(&ZGroup, &dm, &ZElem(x), 20).ok()?;
            let oracle = z_consecutive_depth(x, gens[0]);
            (engine != DepthResult::Exact(oracle as u32)).then(|| format!("{x}: engine {engine}, oracle {oracle}"))
        });
        run.none_fail(format!("Z over {{{},{}}}: engine depth equals oracle for |x| <= 30", gens[0], gens[1]), tally);
    }
    Ok((None, None, Some(Convention::RightMult)))
}

fn z_depth_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let (lo, hi) = n_range(params, (2, 12), (2, 20))?;
    let dm = run.ball(&ZGroup, &GenSet::z(&[2, 3])?, 8, Convention::RightMult)?;
    run.push(Claim::eq(
        "Z over {2,3}: depth of 1",
        DepthResult::Exact(2),
        depth(&ZGroup, &dm, &ZElem(1), 8)?,
    ));
    for n in lo..=hi {
        let m = (n + 1) / 2;
        let r = params.radius.unwrap_or(4 * n as u32);
        let dm = run.ball(&ZGroup, &GenSet::z(&[n, n + 1])?, r, Convention::RightMult)?;
        let d = dm.get(&ZElem(m)).map(i64::from);
        run.push(Claim::eq_opt(format!("Z over {{{n},{}}}: d(0,{m})", n + 1), n, d));
        run.push(Claim::eq(
            format!("Z over {{{n},{}}}: d(0,{m}) engine vs interval oracle", n + 1),
            z_consecutive_distance(m, n),
            d.unwrap_or(-1),
        ));
        let cap = r - n as u32;
        let got = depth(&ZGroup, &dm, &ZElem(m), cap)?;
        run.push(Claim::new(
            format!("Z over {{{n},{}}}: depth of {m}", n + 1),
            format!(">= {n}"),
            got,
            at_least(got, n as u32),
        ));
        let oracle = z_consecutive_depth(m, n);
        let agree = match got {
            DepthResult::Exact(j) => j as i64 == oracle,
            DepthResult::AtLeast(j) => oracle >= j as i64,
        };
        run.push(Claim::new(
            format!("Z over {{{n},{}}}: depth of {m} engine vs oracle", n + 1),
            format!("oracle {oracle}"),
            got,
            agree,
        ));
    }
    Ok((Some((lo, hi)), params.radius, Some(Convention::RightMult)))
}

fn h_unbounded_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let (lo, hi) = n_range(params, (1, 1), (1, 2))?;
    let r = params.radius.unwrap_or(5 * hi as u32 + 1);
    let conv = params.convention.unwrap_or_default();
    let dm = run.ball(&HGroup, &GenSet::c(), r, conv)?;
    for n in lo..=hi {
        let g = special_h(n)?;
        let d = dm.get(&g);
        run.push(Claim::eq_opt(format!("(H,C): d(1,g_{n})"), 4 * n as u32, d));
        let Some(d) = d else { continue };
        if r <= d {
            return Err(EngineError::RadiusTooSmall { have: r, need: d + 1 }.into());
        }
        let got = depth(&HGroup, &dm, &g, r - d)?;
        run.push(Claim::new(
            format!("(H,C): depth of g_{n}"),
            format!(">= {}", n + 1),
            got,
            at_least(got, n as u32 + 1),
        ));
        let w = witness_h(&g, n)?;
        let ok = w.len() as i64 <= 4 * n && w.eval(&HGroup, &GenSet::c())? == g;
        run.push(Claim::new(
            format!("(H,C): witness word for g_{n}"),
            format!("length <= {} evaluating to g_{n}", 4 * n),
            format!("{} (length {})", w.display(&GenSet::c()), w.len()),
            ok,
        ));
    }
    Ok((Some((lo, hi)), Some(r), Some(conv)))
}

fn h_bounded_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let r = params.radius.unwrap_or(6);
    let d_set = GenSet::d();
    let dm = run.ball(&HGroup, &d_set, r, Convention::RightMult)?;
    let all = elements(&dm);
    let a = HGroup.eval(&"a".parse()?)?;
    let tally = scan(&all, |(g, _)| {
        if g.is_a() {
            return None;
        }
        let got = depth(&HGroup, &dm, g, 2).ok()?;
        (got != DepthResult::Exact(1)).then(|| format!("{g}: {got}"))
    });
    run.none_fail(format!("(H,D): every g != a in the radius-{r} ball has depth exactly 1"), tally);
    run.push(Claim::eq("(H,D): depth of a", DepthResult::Exact(2), depth(&HGroup, &dm, &a, 3)?));

    let conv = params.convention.unwrap_or(Convention::LeftMult);
    let esc = run.ball(&HGroup, &d_set, r, conv)?;
    let all = elements(&esc);
    let tally = scan(&all, |(g, _)| {
        if g.is_a() {
            return None;
        }
        escape_move(&HGroup, g, &esc).err().map(|e| format!("{g}: {e}"))
    });
    run.none_fail(
        format!("(H,D): ut^-1 or tu^-1 ({} multiplication) moves every g != a one step farther", conv.tag()),
        tally,
    );
    let none = matches!(escape_move(&HGroup, &a, &esc), Err(PathError::NoEscape(_)));
    run.push(Claim::new("(H,D): a has no length-1 escape", "no escape", if none { "no escape" } else { "escape found" }, none));
    run.push(Claim::eq(
        format!("(H,D): depth of a ({} multiplication)", conv.tag()),
        DepthResult::Exact(2),
        depth(&HGroup, &esc, &a, 3)?,
    ));
    Ok((None, Some(r), Some(conv)))
}

fn k_unbounded_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let (lo, hi) = n_range(params, (1, 1), (1, 2))?;
    let r = params.radius.unwrap_or(4 * hi as u32 + 1);
    let a_set = GenSet::a();
    let dm = run.ball(&KGroup, &a_set, r, Convention::RightMult)?;
    for n in lo..=hi {
        let report = verify_region_claim(&KGroup, &dm, n)?;
        run.push(Claim::eq_opt(format!("(K,A): d(1,g_{n})"), 4 * n as u32, report.special_distance));
        let listed = |v: &[String]| match v.first() {
            Some(f) => format!("{} violate, first {f}", v.len()),
            None => "0 violate".to_string(),
        };
        run.push(Claim::new(
            format!("(K,A): every g with lamps in [-{n},{n}] and cursor in P_{n}, p >= 0, lies within {}", 4 * n),
            format!("0 of {} violate", report.premise_elements),
            format!("{} of {}", listed(&report.enumerated_violations), report.premise_elements),
            report.enumerated_violations.is_empty() && report.premise_elements > 0,
        ));
        run.push(Claim::new(
            format!("(K,A): every polynomial-lamp ball element with lamps in [-{n},{n}] and cursor in P_{n} lies within {}", 4 * n),
            "0 violate",
            listed(&report.distmax_violations),
            report.distmax_violations.is_empty(),
        ));
        run.push(Claim::new(
            format!("(K,A): elements with lamps at -{n} and {n} and cursor at the origin lie at least {} away", 4 * n),
            "0 violate",
            format!(
                "{} violate ({} non-polynomial elements skipped)",
                report.lower_bound_violations.len(),
                report.skipped_non_polynomial
            ),
            report.lower_bound_violations.is_empty(),
        ));
        let g = special_k(n)?;
        if let Some(d) = dm.get(&g) {
            let cap = r.saturating_sub(d).max(1);
            let got = depth(&KGroup, &dm, &g, cap)?;
            run.push(Claim::new(format!("(K,A): depth of g_{n}"), format!(">= {n}"), got, at_least(got, n as u32)));
        }
    }
    let top = 20.max(hi);
    let mut tally = Tally::default();
    for n in 1..=top {
        let g = special_k(n)?;
        tally.add(match witness_k(&g, n) {
            Ok(w) if w.len() as i64 <= 4 * n && w.eval(&KGroup, &a_set)? == g => None,
            Ok(w) => Some(format!("n={n}: bad witness of length {}", w.len())),
            Err(e) => Some(format!("n={n}: {e}")),
        });
    }
    run.none_fail(format!("(K,A): witness words for g_n, n <= {top}, have length <= 4n and evaluate to g_n"), tally);
    Ok((Some((lo, hi)), Some(r), Some(Convention::RightMult)))
}

fn k_bounded_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let r = params.radius.unwrap_or(if params.deep { 5 } else { 4 });
    let conv = params.convention.unwrap_or_default();
    let dm = run.ball(&KGroup, &GenSet::b(), r, conv)?;
    let all = elements(&dm);
    let tally = scan(&all, |(g, _)| {
        if g.is_a() {
            return None;
        }
        let got = depth(&KGroup, &dm, g, 2).ok()?;
        (!matches!(got, DepthResult::Exact(j) if j <= 2)).then(|| format!("{g}: {got}"))
    });
    run.none_fail(format!("(K,B): every g != a in the radius-{r} ball has depth <= 2"), tally);
    let tally = scan(&all, |(g, _)| {
        if g.is_a() {
            return None;
        }
        escape_move(&KGroup, g, &dm).err().map(|e| format!("{g}: {e}"))
    });
    run.none_fail(format!("(K,B): ut^-1 or tu^-1 moves every g != a one step farther (radius {r})"), tally);
    let a = KGroup.eval(&"a".parse()?)?;
    let got = depth(&KGroup, &dm, &a, 3)?;
    run.push(Claim::new("(K,B): depth of a", "<= 2", got, matches!(got, DepthResult::Exact(j) if j <= 2)));
    Ok((None, Some(r), Some(conv)))
}

/// Round trip of one geodesic word through the path codec.
fn codec_round_trip<G: PathModel>(
    group: &G,
    table: &GenTable<G::Elem>,
    w: &GenWord,
    g: &G::Elem,
) -> Option<String> {
    let gens = &table.gens;
    let fail = |why: String| Some(format!("{}: {why}", w.display(gens)));
    let path = match path_from_word(group, gens, w) {
        Ok(p) => p,
        Err(e) => return fail(e.to_string()),
    };
    if group.from_parts(&path.lamps(), path.end()).as_ref() != Some(g) {
        return fail(format!("path {path} represents another element"));
    }
    let back = match word_from_path(group, table, &path) {
        Ok(b) => b,
        Err(e) => return fail(format!("path {path}: {e}")),
    };
    if back.len() != w.len() || back.eval(group, gens).ok().as_ref() != Some(g) {
        return fail(format!("decoded to {}", back.display(gens)));
    }
    match path_from_word(group, gens, &back) {
        Ok(again) if again == path => None,
        Ok(again) => fail(format!("re-encoded to {again}, not {path}")),
        Err(e) => fail(e.to_string()),
    }
}

fn geodesic_scan<G: Group>(
    group: &G,
    dm: &DistMap<G::Elem>,
    max_len: u32,
    check: impl Fn(&GenWord, &G::Elem) -> Option<String> + Sync,
) -> Result<Tally, SuiteError> {
    let tally = SyncTally::default();
    par_for_each_geodesic(group, dm, max_len, |w, g| tally.add(check(w, g)))?;
    Ok(tally.finish())
}

fn lemmas_h_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let r = params.radius.unwrap_or(6);
    let top = if params.deep { 3 } else { 2 };
    let (c_set, d_set) = (GenSet::c(), GenSet::d());
    let dc = run.ball(&HGroup, &c_set, r.max(4 * top as u32), Convention::RightMult)?;
    let dd = run.ball(&HGroup, &d_set, r, Convention::RightMult)?;

    for (label, dm, formula) in [
        ("C", &dc, d_c_analytic as fn(&HElem) -> Result<i64, PathError>),
        ("D", &dd, d_d_analytic),
    ] {
        let all: Vec<_> = elements(dm).into_iter().filter(|(_, d)| *d <= r).collect();
        let tally = scan(&all, |(g, d)| {
            let analytic = if g.is_a() { Ok(1) } else { formula(g) };
            (analytic.as_ref().ok() != Some(&(*d as i64))).then(|| format!("{g}: BFS {d}, formula {analytic:?}"))
        });
        run.none_fail(format!("(H,{label}): closed-form word length equals BFS on the radius-{r} ball"), tally);
    }
    let bad: Vec<i64> = (1..=50).filter(|&n| special_h(n).ok().and_then(|g| d_c_analytic(&g).ok()) != Some(4 * n)).collect();
    run.push(Claim::new("(H,C): closed form gives d(1,g_n) = 4n for n <= 50", "no exceptions", format!("{bad:?}"), bad.is_empty()));
    for n in 1..=top {
        let g = special_h(n)?;
        if 4 * n as u32 <= dc.radius {
            run.push(Claim::eq_opt(format!("(H,C): BFS d(1,g_{n})"), 4 * n as u32, dc.get(&g)));
        }
    }

    let codec_len = 5.min(r);
    let table = GenTable::new(&HGroup, &d_set)?;
    let tally = geodesic_scan(&HGroup, &dd, codec_len, |w, g| codec_round_trip(&HGroup, &table, w, g))?;
    run.none_fail(format!("(H,D): path codec round-trips every geodesic word of length <= {codec_len}"), tally);

    for n in 1..=top {
        let mut targets = Vec::new();
        for lamps in lamp_subsets(n) {
            for q in -n..=n {
                for rr in -n..=n {
                    if q.abs() + rr.abs() <= n {
                        targets.push(HElem::new(lamps.clone(), (q as i32, rr as i32)));
                    }
                }
            }
        }
        let tally = scan(&targets, |g| match witness_h(g, n) {
            Err(e) => Some(format!("{g}: {e}")),
            Ok(w) => {
                let ok = w.len() as i64 <= 4 * n
                    && w.eval(&HGroup, &c_set).ok().as_ref() == Some(g)
                    && dc.get(g).is_some_and(|d| d as usize <= w.len());
                (!ok).then(|| format!("{g}: witness of length {}", w.len()))
            }
        });
        run.none_fail(
            format!("(H,C): every g with cursor in D_{n} and lamps in [-{n},{n}] has a witness of length <= {} (BFS-consistent)", 4 * n),
            tally,
        );
    }
    Ok((Some((1, top)), Some(r), Some(Convention::RightMult)))
}

fn lemmas_k_suite(run: &mut Run, params: &SuiteParams) -> Result<Effective, SuiteError> {
    let r = params.radius.unwrap_or(4);
    let top = if params.deep { 2 } else { 1 };
    let (a_set, b_set) = (GenSet::a(), GenSet::b());
    let da = run.ball(&KGroup, &a_set, 4 * top as u32, Convention::RightMult)?;

    for n in 1..=top {
        let mut targets = Vec::new();
        for lamps in lamp_subsets(n) {
            let lamps = LocalizedLamp::from_poly(lamps);
            for p in -n..=n {
                for q in -n..=n {
                    for rr in -n..=n {
                        if crate::group::in_pn((p, q, rr), n) {
                            targets.push(KElem::new(lamps.clone(), (p as i32, q as i32, rr as i32)));
                        }
                    }
                }
            }
        }
        let bound = 4 * n;
        let (pos, neg): (Vec<KElem>, Vec<KElem>) = targets.into_iter().partition(|g| g.pos.0 >= 0);
        let tally = scan(&pos, |g| {
            let bfs = da.get(g);
            if bfs.is_none_or(|d| d as i64 > bound) {
                return Some(format!("{g}: BFS distance {bfs:?}"));
            }
            match witness_k(g, n) {
                Err(e) => Some(format!("{g}: {e}")),
                Ok(w) => {
                    let ok = w.len() as i64 <= bound && w.eval(&KGroup, &a_set).ok().as_ref() == Some(g);
                    (!ok).then(|| format!("{g}: witness of length {}", w.len()))
                }
            }
        });
        let beyond = neg.iter().filter(|g| da.get(g).is_none_or(|d| d as i64 > bound)).count();
        log::info!("n={n}: {beyond} of {} premise-shaped elements with p < 0 lie beyond {bound}", neg.len());
        run.none_fail(
            format!("(K,A): every g with cursor in P_{n}, p >= 0 and lamps in [-{n},{n}] has a witness word of length <= {bound} (BFS-consistent)"),
            tally,
        );
    }

    let db = run.ball(&KGroup, &b_set, r, Convention::RightMult)?;
    let len = 4.min(r);
    let table = GenTable::new(&KGroup, &b_set)?;
    let tally = geodesic_scan(&KGroup, &db, len, |w, g| codec_round_trip(&KGroup, &table, w, g))?;
    run.none_fail(format!("(K,B): path codec round-trips every geodesic word of length <= {len}"), tally);

    let tally = geodesic_scan(&KGroup, &db, len, |w, g| {
        if g.is_a() {
            return None;
        }
        let fail = |why: String| Some(format!("{}: {why}", w.display(&b_set)));
        let path = match path_from_word(&KGroup, &b_set, w) {
            Ok(p) => p,
            Err(e) => return fail(e.to_string()),
        };
        let norm = match normalize_decorated(&path) {
            Ok(p) => p,
            Err(e) => return fail(format!("{path}: {e}")),
        };
        if norm.to_k_elem().ok().as_ref() != Some(g) {
            return fail(format!("{path} normalized to {norm}, another element"));
        }
        if norm.word_length() != w.len() {
            return fail(format!("{path} normalized to {norm} of length {}", norm.word_length()));
        }
        let (v0, dv0) = (path.vertical_count(), path.vertical_count() + path.diagonal_count());
        let (v1, dv1) = (norm.vertical_count(), norm.vertical_count() + norm.diagonal_count());
        if v1 > v0 || dv1 > dv0 {
            return fail(format!("{path} normalized to {norm} grows V or D+V"));
        }
        if !norm.is_word_like() {
            return fail(format!("{path} normalized to {norm}, not word-like"));
        }
        match word_from_path(&KGroup, &table, &norm) {
            Ok(back) if back.len() == w.len() && back.eval(&KGroup, &b_set).ok().as_ref() == Some(g) => None,
            Ok(back) => fail(format!("{norm} decoded to {}", back.display(&b_set))),
            Err(e) => fail(format!("{norm}: {e}")),
        }
    })?;
    run.none_fail(
        format!("(K,B): normalizing the path of every geodesic word of length <= {len} for g != a keeps its element and length"),
        tally,
    );
    Ok((Some((1, top)), Some(r), Some(Convention::RightMult)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        for s in [Suite::Relators, Suite::ZDepth] {
            let r = run_suite(s, &SuiteParams::default()).unwrap();
            assert!(r.pass(), "{r}");
        }
    }

    #[test]
    fn tally_keeps_least_failure() {
        let t = Tally::from_results([None, Some("b".into()), Some("a".into())]);
        assert_eq!((t.checked, t.failed, t.first.as_deref()), (3, 2, Some("a")));
    }
}

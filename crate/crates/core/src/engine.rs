//! Breadth-first word metrics over canonical group elements.
//!
//! A [`DistMap`] holds exactly the closed ball of radius `R`, so absence from
//! the table certifies distance greater than `R`. Depth queries rely on this.

use std::fmt;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{
    evaluate_closure, in_hn, proj_i_loc, special_k, GenLetter, GenSet, GenWord, Group, GroupError,
    KElem,
};
use crate::lamp::{LaurentPolyZ2, LocalizedLamp};

const CHUNK: usize = 4096;
pub const CACHE_FORMAT: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Convention {
    /// Neighbours of `g` are `g·x`.
    #[default]
    RightMult,
    /// Neighbours of `g` are `x·g`.
    LeftMult,
}

impl Convention {
    pub fn tag(self) -> &'static str {
        match self {
            Convention::RightMult => "right",
            Convention::LeftMult => "left",
        }
    }

    fn step<G: Group>(self, group: &G, g: &G::Elem, x: &G::Elem) -> G::Elem {
        match self {
            Convention::RightMult => group.mul(g, x),
            Convention::LeftMult => group.mul(x, g),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "right" | "rightmult" => Ok(Convention::RightMult),
            "left" | "leftmult" => Ok(Convention::LeftMult),
            _ => Err(format!("unknown convention {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_elements: usize,
    /// Estimated bytes for the table.
    pub mem_cap: u64,
    /// 0 uses the rayon default.
    pub threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_elements: 200_000_000,
            mem_cap: 12 << 30,
            threads: 0,
        }
    }
}

impl Limits {
    pub fn with_threads(threads: usize) -> Self {
        Self {
            threads,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LimitKind {
    ElementLimitExceeded,
    MemoryLimitExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Distance {
    Exact(u32),
    /// Certifies `d(1,g) > R`.
    Beyond(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DepthResult {
    Exact(u32),
    AtLeast(u32),
}

impl fmt::Display for DepthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthResult::Exact(d) => write!(f, "Exact({d})"),
            DepthResult::AtLeast(d) => write!(f, "AtLeast({d})"),
        }
    }
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("element {0} is not in the ball of radius {1}")]
    OutOfBall(String, u32),
    #[error("ball radius {have} is too small, need {need}")]
    RadiusTooSmall { have: u32, need: u32 },
    #[error("generating set {0} has no nontrivial elements")]
    EmptyGenSet(String),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("cache: {0}")]
    Cache(String),
}

/// The closed ball of radius `radius` with exact distances.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize + Eq + std::hash::Hash"))]
#[serde(bound(deserialize = "E: Deserialize<'de> + Eq + std::hash::Hash"))]
pub struct DistMap<E> {
    pub group: String,
    pub genset: String,
    pub radius: u32,
    pub convention: Convention,
    /// Generators and inverses, duplicates removed, in tie-break order.
    pub closure: Vec<(GenLetter, E)>,
    pub sphere_sizes: Vec<usize>,
    table: FxHashMap<E, u8>,
}

/// Ball construction stopped by a resource limit; `partial` is the complete
/// ball of radius `partial.radius`.
#[derive(Debug)]
pub struct BallError<E> {
    pub kind: LimitKind,
    pub partial: DistMap<E>,
}

impl<E> fmt::Display for BallError<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}: stopped after radius {} ({} elements)",
            self.kind,
            self.partial.radius,
            self.partial.table.len()
        )
    }
}

impl<E: fmt::Debug> std::error::Error for BallError<E> {}

#[derive(Debug, Error)]
pub enum BallFailure<E: fmt::Debug> {
    #[error(transparent)]
    Limit(BallError<E>),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl<E: fmt::Debug> From<GroupError> for BallFailure<E> {
    fn from(e: GroupError) -> Self {
        BallFailure::Engine(e.into())
    }
}

impl<E: Clone + Eq + std::hash::Hash> DistMap<E> {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, g: &E) -> Option<u32> {
        self.table.get(g).map(|&d| d as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&E, u32)> {
        self.table.iter().map(|(e, &d)| (e, d as u32))
    }

    /// Elements of the sphere of radius `k`, in unspecified order.
    pub fn sphere(&self, k: u32) -> impl Iterator<Item = &E> {
        self.table
            .iter()
            .filter(move |(_, &d)| d as u32 == k)
            .map(|(e, _)| e)
    }
}

fn pool(threads: usize) -> Result<rayon::ThreadPool, EngineError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| EngineError::ThreadPool(e.to_string()))
}

fn estimated_bytes<E>(elements: usize) -> u64 {
    // Entry plus control byte, at the table's worst-case load factor.
    let entry = std::mem::size_of::<(E, u8)>() as u64 + 1;
    entry * elements as u64 * 8 / 7 * 2
}

pub fn ball<G: Group>(
    group: &G,
    gens: &GenSet,
    radius: u32,
    convention: Convention,
    limits: &Limits,
) -> Result<DistMap<G::Elem>, BallFailure<G::Elem>> {
    if radius > u8::MAX as u32 {
        return Err(EngineError::RadiusTooSmall {
            have: u8::MAX as u32,
            need: radius,
        }
        .into());
    }
    let closure = evaluate_closure(group, gens)?;
    if closure.is_empty() && radius > 0 {
        return Err(EngineError::EmptyGenSet(gens.name.clone()).into());
    }
    let gen_elems: Vec<G::Elem> = closure.iter().map(|(_, e)| e.clone()).collect();
    let pool = pool(limits.threads)?;

    let mut table: FxHashMap<G::Elem, u8> = FxHashMap::default();
    let id = group.identity();
    table.insert(id.clone(), 0);
    let mut frontier = vec![id];
    let mut sphere_sizes = vec![1usize];
    let mut done = 0;
    let mut limit_hit = None;

    for layer in 1..=radius {
        let candidates: Vec<Vec<G::Elem>> = pool.install(|| {
            frontier
                .par_chunks(CHUNK)
                .map(|chunk| {
                    let mut out = Vec::new();
                    let mut seen = FxHashSet::default();
                    for g in chunk {
                        for x in &gen_elems {
                            let h = convention.step(group, g, x);
                            if !table.contains_key(&h) && seen.insert(h.clone()) {
                                out.push(h);
                            }
                        }
                    }
                    out
                })
                .collect()
        });
        let mut next = Vec::new();
        for h in candidates.into_iter().flatten() {
            if let std::collections::hash_map::Entry::Vacant(v) = table.entry(h.clone()) {
                v.insert(layer as u8);
                next.push(h);
            }
        }
        let total = table.len();
        if total > limits.max_elements {
            limit_hit = Some(LimitKind::ElementLimitExceeded);
        } else if estimated_bytes::<G::Elem>(total) > limits.mem_cap {
            limit_hit = Some(LimitKind::MemoryLimitExceeded);
        }
        if limit_hit.is_some() {
            table.retain(|_, d| (*d as u32) < layer);
            break;
        }
        log::debug!("{} {} radius {layer}: {} new", group.name(), gens.name, next.len());
        sphere_sizes.push(next.len());
        frontier = next;
        done = layer;
    }

    let dm = DistMap {
        group: group.name().to_string(),
        genset: gens.name.clone(),
        radius: done,
        convention,
        closure,
        sphere_sizes,
        table,
    };
    match limit_hit {
        Some(kind) => Err(BallFailure::Limit(BallError { kind, partial: dm })),
        None => Ok(dm),
    }
}

pub fn distance<E: Clone + Eq + std::hash::Hash>(dm: &DistMap<E>, g: &E) -> Distance {
    match dm.get(g) {
        Some(d) => Distance::Exact(d),
        None => Distance::Beyond(dm.radius),
    }
}

/// Distance from `g` to the complement of the ball of radius `d(1,g)`,
/// searched up to `cap` layers.
pub fn depth<G: Group>(
    group: &G,
    dm: &DistMap<G::Elem>,
    g: &G::Elem,
    cap: u32,
) -> Result<DepthResult, EngineError> {
    let n = dm
        .get(g)
        .ok_or_else(|| EngineError::OutOfBall(group.serialize(g), dm.radius))?;
    let outside = |h: &G::Elem| dm.get(h).is_none_or(|d| d > n);
    let mut seen: FxHashSet<G::Elem> = FxHashSet::default();
    seen.insert(g.clone());
    let mut layer = vec![g.clone()];
    for j in 1..=cap {
        let mut next = Vec::new();
        for h in &layer {
            for (_, x) in &dm.closure {
                let y = dm.convention.step(group, h, x);
                if outside(&y) {
                    return Ok(DepthResult::Exact(j));
                }
                if seen.insert(y.clone()) {
                    next.push(y);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(DepthResult::AtLeast(cap + 1))
}

/// A geodesic for `g` read off the table. At each step the first closure
/// entry that lowers the distance is taken.
pub fn geodesic_word<G: Group>(
    group: &G,
    dm: &DistMap<G::Elem>,
    g: &G::Elem,
) -> Result<GenWord, EngineError> {
    let mut d = dm
        .get(g)
        .ok_or_else(|| EngineError::OutOfBall(group.serialize(g), dm.radius))?;
    let mut cur = g.clone();
    let mut letters = Vec::with_capacity(d as usize);
    while d > 0 {
        let (letter, prev) = dm
            .closure
            .iter()
            .find_map(|(l, x)| {
                let xi = group.inv(x);
                let h = match dm.convention {
                    Convention::RightMult => group.mul(&cur, &xi),
                    Convention::LeftMult => group.mul(&xi, &cur),
                };
                (dm.get(&h) == Some(d - 1)).then_some((*l, h))
            })
            .expect("ball tables are closed under predecessors");
        letters.push(letter);
        cur = prev;
        d -= 1;
    }
    if dm.convention == Convention::RightMult {
        letters.reverse();
    }
    Ok(GenWord(letters))
}

fn geodesic_word_of(conv: Convention, applied: &[GenLetter]) -> GenWord {
    match conv {
        Convention::RightMult => GenWord(applied.to_vec()),
        Convention::LeftMult => GenWord(applied.iter().rev().copied().collect()),
    }
}

/// Visits the geodesic extensions of `start` (reached by `applied`) up to
/// total length `max_len`, excluding `start` itself.
fn walk_geodesics<G: Group>(
    group: &G,
    dm: &DistMap<G::Elem>,
    max_len: u32,
    mut applied: Vec<GenLetter>,
    start: G::Elem,
    visit: &mut impl FnMut(&GenWord, &G::Elem),
) {
    let base = applied.len();
    let mut stack: Vec<(G::Elem, usize)> = vec![(start, 0)];
    while let Some((g, next)) = stack.pop() {
        let depth = applied.len() as u32;
        if depth == max_len || next == dm.closure.len() {
            if applied.len() > base {
                applied.pop();
            }
            continue;
        }
        stack.push((g.clone(), next + 1));
        let (letter, x) = &dm.closure[next];
        let h = dm.convention.step(group, &g, x);
        if dm.get(&h) == Some(depth + 1) {
            applied.push(*letter);
            visit(&geodesic_word_of(dm.convention, &applied), &h);
            stack.push((h, 0));
        }
    }
}

fn check_geodesic_len<E>(dm: &DistMap<E>, max_len: u32) -> Result<(), EngineError> {
    if max_len > dm.radius {
        return Err(EngineError::RadiusTooSmall {
            have: dm.radius,
            need: max_len,
        });
    }
    Ok(())
}

/// Calls `visit` on every geodesic word of length at most `max_len` over the
/// closure letters, with the element it represents. Geodesity is read off
/// the table, so `max_len` must not exceed the radius.
pub fn for_each_geodesic<G: Group>(
    group: &G,
    dm: &DistMap<G::Elem>,
    max_len: u32,
    mut visit: impl FnMut(&GenWord, &G::Elem),
) -> Result<(), EngineError> {
    check_geodesic_len(dm, max_len)?;
    let id = group.identity();
    visit(&GenWord::default(), &id);
    walk_geodesics(group, dm, max_len, Vec::new(), id, &mut visit);
    Ok(())
}

/// Parallel form of [`for_each_geodesic`]: subtrees below each first letter
/// run as separate tasks, so `visit` sees words in no fixed order.
pub fn par_for_each_geodesic<G: Group>(
    group: &G,
    dm: &DistMap<G::Elem>,
    max_len: u32,
    visit: impl Fn(&GenWord, &G::Elem) + Sync,
) -> Result<(), EngineError> {
    check_geodesic_len(dm, max_len)?;
    let id = group.identity();
    visit(&GenWord::default(), &id);
    if max_len == 0 {
        return Ok(());
    }
    dm.closure.par_iter().for_each(|(letter, x)| {
        let h = dm.convention.step(group, &id, x);
        if dm.get(&h) == Some(1) {
            let applied = vec![*letter];
            visit(&geodesic_word_of(dm.convention, &applied), &h);
            walk_geodesics(group, dm, max_len, applied, h, &mut |w, g| visit(w, g));
        }
    });
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionReport {
    pub n: i64,
    pub radius: u32,
    /// Elements of the premise set of the upper bound with `p >= 0`.
    pub premise_elements: usize,
    /// Enumerated premise elements with `p >= 0` farther than `4n`.
    pub enumerated_violations: Vec<String>,
    /// Ball elements of any `p` with polynomial lamps that satisfy the
    /// premise yet lie farther than `4n`.
    pub distmax_violations: Vec<String>,
    /// Ball elements with `{-n,n}` lit and cursor at the origin closer than `4n`.
    pub lower_bound_violations: Vec<String>,
    pub skipped_non_polynomial: usize,
    pub special_distance: Option<u32>,
    pub special_ok: bool,
}

impl RegionReport {
    pub fn pass(&self) -> bool {
        self.enumerated_violations.is_empty()
            && self.distmax_violations.is_empty()
            && self.lower_bound_violations.is_empty()
            && self.special_ok
    }
}

fn in_premise(lamps: &LocalizedLamp, pos: (i32, i32, i32), n: i64) -> Option<bool> {
    let set = proj_i_loc(lamps).ok()?;
    let (p, q, r) = (pos.0 as i64, pos.1 as i64, pos.2 as i64);
    Some(
        set.iter().all(|&i| i.abs() <= n)
            && in_hn((p, q + r), n)
            && q.abs() + r.abs() <= n,
    )
}

/// Checks in `(K, A)`: every element with lamps in `[-n, n]` and cursor in
/// `P_n` is within `4n` (enumerated for `p >= 0`, scanned in the ball for
/// every `p`); every element with `{-n, n}` lit and cursor at the
/// origin is at least `4n` away; `d(1, g_n) = 4n`.
pub fn verify_region_claim<G: Group<Elem = KElem>>(
    group: &G,
    dm: &DistMap<KElem>,
    n: i64,
) -> Result<RegionReport, EngineError> {
    let mut report = RegionReport {
        n,
        radius: dm.radius,
        premise_elements: 0,
        enumerated_violations: Vec::new(),
        distmax_violations: Vec::new(),
        lower_bound_violations: Vec::new(),
        skipped_non_polynomial: 0,
        special_distance: None,
        special_ok: true,
    };
    if n <= 0 {
        return Ok(report);
    }
    let bound = 4 * n as u32;
    if dm.radius < bound {
        return Err(EngineError::RadiusTooSmall {
            have: dm.radius,
            need: bound,
        });
    }

    let width = 2 * n as usize + 1;
    for mask in 0u64..(1u64 << width) {
        let lamps = LocalizedLamp::from_poly(LaurentPolyZ2::from_exponents(
            (0..width).filter(|i| mask >> i & 1 == 1).map(|i| i as i64 - n),
        ));
        for p in 0..=n {
            for q in -n..=n {
                for r in -n..=n {
                    let pos = (p as i32, q as i32, r as i32);
                    if in_premise(&lamps, pos, n) != Some(true) {
                        continue;
                    }
                    report.premise_elements += 1;
                    let g = KElem::new(lamps.clone(), pos);
                    if dm.get(&g).is_none_or(|d| d > bound) {
                        report.enumerated_violations.push(group.serialize(&g));
                    }
                }
            }
        }
    }

    for (g, d) in dm.iter() {
        let Ok(set) = proj_i_loc(&g.lamps) else {
            report.skipped_non_polynomial += 1;
            continue;
        };
        if g.pos == (0, 0, 0) && set.contains(&-n) && set.contains(&n) && d < bound {
            report.lower_bound_violations.push(group.serialize(g));
        }
        if d > bound && in_premise(&g.lamps, g.pos, n) == Some(true) {
            report.distmax_violations.push(group.serialize(g));
        }
    }
    report.lower_bound_violations.sort();
    report.distmax_violations.sort();
    report.enumerated_violations.sort();

    let gn = special_k(n)?;
    report.special_distance = dm.get(&gn);
    report.special_ok = report.special_distance == Some(bound);
    Ok(report)
}

pub fn cache_path(
    dir: &Path,
    group: &str,
    genset: &str,
    radius: u32,
    convention: Convention,
) -> PathBuf {
    let safe: String = genset
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    dir.join(format!(
        "{group}-{safe}-R{radius}-{}-v{CACHE_FORMAT}.bin",
        convention.tag()
    ))
}

pub fn save_cache<E: Serialize + Eq + std::hash::Hash>(
    dm: &DistMap<E>,
    dir: &Path,
) -> Result<PathBuf, EngineError> {
    std::fs::create_dir_all(dir).map_err(|e| EngineError::Cache(e.to_string()))?;
    let path = cache_path(dir, &dm.group, &dm.genset, dm.radius, dm.convention);
    let file = std::fs::File::create(&path).map_err(|e| EngineError::Cache(e.to_string()))?;
    bincode::serialize_into(std::io::BufWriter::new(file), dm)
        .map_err(|e| EngineError::Cache(e.to_string()))?;
    Ok(path)
}

/// Loads a cached table if one with matching key and format exists.
pub fn load_cache<E: for<'de> Deserialize<'de> + Eq + std::hash::Hash>(
    dir: &Path,
    group: &str,
    genset: &str,
    radius: u32,
    convention: Convention,
) -> Option<DistMap<E>> {
    let path = cache_path(dir, group, genset, radius, convention);
    let file = std::fs::File::open(&path).ok()?;
    let dm: DistMap<E> = match bincode::deserialize_from(std::io::BufReader::new(file)) {
        Ok(dm) => dm,
        Err(e) => {
            log::warn!("ignoring unreadable cache {}: {e}", path.display());
            return None;
        }
    };
    (dm.group == group && dm.genset == genset && dm.radius == radius && dm.convention == convention)
        .then_some(dm)
}

/// Builds a ball, reusing and refreshing the cache in `dir` when given.
pub fn ball_cached<G: Group>(
    group: &G,
    gens: &GenSet,
    radius: u32,
    convention: Convention,
    limits: &Limits,
    dir: Option<&Path>,
) -> Result<DistMap<G::Elem>, BallFailure<G::Elem>> {
    if let Some(dir) = dir {
        if let Some(dm) = load_cache(dir, group.name(), &gens.name, radius, convention) {
            return Ok(dm);
        }
    }
    let dm = ball(group, gens, radius, convention, limits)?;
    if let Some(dir) = dir {
        save_cache(&dm, dir)?;
    }
    Ok(dm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{special_h, HElem, HGroup, KGroup, ZElem, ZGroup};

    fn z_ball(values: &[i64], r: u32) -> DistMap<ZElem> {
        ball(&ZGroup, &GenSet::z(values).unwrap(), r, Convention::RightMult, &Limits::default())
            .unwrap()
    }

    #[test]
    fn z_examples() {
        let dm = z_ball(&[1], 3);
        assert_eq!(dm.len(), 7);
        for x in -3..=3i64 {
            assert_eq!(dm.get(&ZElem(x)), Some(x.unsigned_abs() as u32));
        }
        let dm = z_ball(&[2, 3], 5);
        assert_eq!(dm.sphere_sizes[1], 4);
        assert_eq!(depth(&ZGroup, &dm, &ZElem(1), 10).unwrap(), DepthResult::Exact(2));
        assert_eq!(depth(&ZGroup, &dm, &ZElem(0), 10).unwrap(), DepthResult::Exact(1));
        assert_eq!(distance(&dm, &ZElem(100)), Distance::Beyond(5));
    }

    #[test]
    fn h_small_balls() {
        let c = GenSet::c();
        let dm = ball(&HGroup, &c, 1, Convention::RightMult, &Limits::default()).unwrap();
        assert_eq!(dm.len(), 18);
        assert_eq!(dm.get(&HGroup.eval(&"a".parse().unwrap()).unwrap()), Some(1));
        let dm0 = ball(&HGroup, &c, 0, Convention::RightMult, &Limits::default()).unwrap();
        assert_eq!(dm0.len(), 1);
        assert_eq!(depth(&HGroup, &dm0, &HElem::identity(), 3).unwrap(), DepthResult::Exact(1));

        let dm = ball(&HGroup, &c, 4, Convention::RightMult, &Limits::default()).unwrap();
        let g1 = special_h(1).unwrap();
        assert_eq!(dm.get(&g1), Some(4));
        let t5 = HGroup.eval(&"t^5".parse().unwrap()).unwrap();
        assert_eq!(distance(&dm, &t5), Distance::Beyond(4));
        let word = geodesic_word(&HGroup, &dm, &g1).unwrap();
        assert_eq!(word.len(), 4);
        assert_eq!(word.eval(&HGroup, &c).unwrap(), g1);
        assert!(geodesic_word(&HGroup, &dm, &HElem::identity()).unwrap().is_empty());
        let a = HGroup.eval(&"a".parse().unwrap()).unwrap();
        assert_eq!(geodesic_word(&HGroup, &dm, &a).unwrap().display(&c).to_string(), "a");
    }

    #[test]
    fn symmetry_triangle_and_duality() {
        let c = GenSet::c();
        let right = ball(&HGroup, &c, 4, Convention::RightMult, &Limits::default()).unwrap();
        let left = ball(&HGroup, &c, 4, Convention::LeftMult, &Limits::default()).unwrap();
        assert_eq!(right.len(), left.len());
        for (g, d) in right.iter() {
            assert_eq!(right.get(&g.inv()), Some(d));
            assert_eq!(left.get(&g.inv()), Some(d));
            if d < right.radius {
                for (_, x) in &right.closure {
                    let dx = right.get(&g.mul(x)).unwrap();
                    assert!(dx.abs_diff(d) <= 1);
                }
            }
        }
    }

    #[test]
    fn geodesics_in_left_convention() {
        let c = GenSet::c();
        let left = ball(&HGroup, &c, 3, Convention::LeftMult, &Limits::default()).unwrap();
        for (g, d) in left.iter() {
            let w = geodesic_word(&HGroup, &left, g).unwrap();
            assert_eq!(w.len() as u32, d);
            assert_eq!(&w.eval(&HGroup, &c).unwrap(), g);
        }
    }

    #[test]
    fn thread_count_does_not_change_tables() {
        let d = GenSet::d();
        let one = ball(&HGroup, &d, 3, Convention::RightMult, &Limits::with_threads(1)).unwrap();
        let many = ball(&HGroup, &d, 3, Convention::RightMult, &Limits::with_threads(8)).unwrap();
        assert_eq!(one.sphere_sizes, many.sphere_sizes);
        assert_eq!(one.table, many.table);
    }

    #[test]
    fn limits_give_partial_balls() {
        let limits = Limits {
            max_elements: 30,
            ..Limits::default()
        };
        match ball(&HGroup, &GenSet::c(), 5, Convention::RightMult, &limits) {
            Err(BallFailure::Limit(e)) => {
                assert_eq!(e.kind, LimitKind::ElementLimitExceeded);
                assert_eq!(e.partial.radius, 1);
                assert_eq!(e.partial.len(), 18);
            }
            other => panic!("expected a limit error, got {other:?}"),
        }
        let limits = Limits {
            mem_cap: 1,
            ..Limits::default()
        };
        assert!(matches!(
            ball(&ZGroup, &GenSet::z(&[1]).unwrap(), 3, Convention::RightMult, &limits),
            Err(BallFailure::Limit(BallError { kind: LimitKind::MemoryLimitExceeded, .. }))
        ));
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("deadend-cache-{}", std::process::id()));
        let gens = GenSet::z(&[2, 3]).unwrap();
        let dm = ball_cached(&ZGroup, &gens, 4, Convention::RightMult, &Limits::default(), Some(&dir))
            .unwrap();
        let loaded: DistMap<ZElem> =
            load_cache(&dir, "Z", &gens.name, 4, Convention::RightMult).unwrap();
        assert_eq!(loaded.table, dm.table);
        assert_eq!(loaded.sphere_sizes, dm.sphere_sizes);
        assert!(load_cache::<ZElem>(&dir, "Z", &gens.name, 5, Convention::RightMult).is_none());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn geodesic_enumeration_counts() {
        // Geodesics over {2, 3} in Z: count words by brute force.
        let gens = GenSet::z(&[2, 3]).unwrap();
        let dm = z_ball(&[2, 3], 4);
        let letters = [2i64, -2, 3, -3];
        let mut brute = 0usize;
        for len in 0..=4u32 {
            for code in 0..4usize.pow(len) {
                let mut c = code;
                let mut x = 0i64;
                for _ in 0..len {
                    x += letters[c % 4];
                    c /= 4;
                }
                if dm.get(&ZElem(x)) == Some(len) {
                    brute += 1;
                }
            }
        }
        let mut seen = 0usize;
        for_each_geodesic(&ZGroup, &dm, 4, |w, g| {
            assert_eq!(&w.eval(&ZGroup, &gens).unwrap(), g);
            assert_eq!(dm.get(g), Some(w.len() as u32));
            seen += 1;
        })
        .unwrap();
        assert_eq!(seen, brute);
        let par = std::sync::atomic::AtomicUsize::new(0);
        par_for_each_geodesic(&ZGroup, &dm, 4, |_, _| {
            par.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(par.into_inner(), brute);
        let left = ball(&HGroup, &GenSet::c(), 3, Convention::LeftMult, &Limits::default()).unwrap();
        for_each_geodesic(&HGroup, &left, 3, |w, g| {
            assert_eq!(&w.eval(&HGroup, &GenSet::c()).unwrap(), g);
        })
        .unwrap();
    }

    #[test]
    fn region_claim_vacuous_at_zero() {
        let dm = ball(&KGroup, &GenSet::a(), 1, Convention::RightMult, &Limits::default()).unwrap();
        let r = verify_region_claim(&KGroup, &dm, 0).unwrap();
        assert!(r.pass());
        assert_eq!(r.premise_elements, 0);
        assert!(verify_region_claim(&KGroup, &dm, 1).is_err());
    }

    #[test]
    fn region_claim_at_one() {
        let dm = ball(&KGroup, &GenSet::a(), 5, Convention::RightMult, &Limits::default()).unwrap();
        let r = verify_region_claim(&KGroup, &dm, 1).unwrap();
        assert_eq!(r.special_distance, Some(4));
        assert_eq!(r.premise_elements, 64);
        assert!(r.enumerated_violations.is_empty());
        assert!(r.lower_bound_violations.is_empty());
        // Cursor at (-1, 0, 0) forces odd word length, and three moves
        // cannot light both -1 and 1 with localized buttons below p = 0.
        assert_eq!(
            r.distmax_violations,
            ["K{num=[-1,0,1];k=0;pos=(-1,0,0)}", "K{num=[-1,1];k=0;pos=(-1,0,0)}"]
        );
    }
}

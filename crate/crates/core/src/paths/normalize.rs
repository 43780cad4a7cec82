use std::collections::BTreeSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::gf2::{gf2_solve, Gf2Solution, Gf2System};
use crate::lamp::{clear_denominators, LocalizedLamp};

use super::path::vertices_of;
use super::{DecoratedPath, PathError, Seg};

/// Segment ranges of the four arcs of a normal path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuSplit {
    /// In the plane `q = r`.
    pub mu1: Range<usize>,
    /// At most one perpendicular diagonal.
    pub mu2: Range<usize>,
    /// Vertical segments.
    pub mu3: Range<usize>,
    /// Perpendicular diagonals, all in one direction.
    pub mu4: Range<usize>,
}

/// Splits `path` into its four arcs, or `None` if it does not have that
/// shape or presses buttons on the final arc.
pub fn mu_split(path: &DecoratedPath) -> Option<MuSplit> {
    let segs = &path.segs;
    let n = segs.len();
    let a = segs.iter().position(|s| s.is_perpendicular()).unwrap_or(n);
    let (b, c) = if a < n && segs.get(a + 1).is_some_and(|s| s.is_vertical()) {
        let c = (a + 1..n).find(|&i| !segs[i].is_vertical()).unwrap_or(n);
        (a + 1, c)
    } else {
        (a, a)
    };
    let tail = &segs[c..];
    if tail.iter().any(|&s| s != tail[0] || !s.is_perpendicular()) {
        return None;
    }
    if path.buttons.iter().any(|&i| i > c) {
        return None;
    }
    Some(MuSplit {
        mu1: 0..a,
        mu2: a..b,
        mu3: b..c,
        mu4: c..n,
    })
}

/// Index of the last vertex allowed to carry a button: the start of the
/// trailing run of perpendicular diagonals.
fn press_limit(segs: &[Seg]) -> usize {
    segs.iter().rposition(|s| !s.is_perpendicular()).map_or(0, |i| i + 1)
}

/// Buttons on `segs` lighting `target`, restricted to vertices before the
/// perpendicular tail.
fn resolve(segs: &[Seg], target: &LocalizedLamp) -> Option<BTreeSet<usize>> {
    let verts = vertices_of(segs);
    let limit = press_limit(segs);
    let cols: Vec<LocalizedLamp> = verts[..=limit].iter().map(|v| v.button()).collect();
    let mut all: Vec<&LocalizedLamp> = vec![target];
    all.extend(cols.iter());
    let mut cleared = clear_denominators(&all);
    let goal = cleared.remove(0);
    match gf2_solve(&Gf2System::new(cleared, goal)) {
        Gf2Solution::Solved(idx) => Some(idx.into_iter().collect()),
        Gf2Solution::Unsolvable => None,
    }
}

/// Moves every perpendicular diagonal to the end and cancels backtracking
/// among them. Buttons transfer exactly, as perpendicular motion does not
/// change which lamps a button toggles.
fn collect_perpendicular(path: &DecoratedPath) -> DecoratedPath {
    let mut segs = Vec::with_capacity(path.segs.len());
    let mut index = Vec::with_capacity(path.segs.len() + 1);
    let mut net_e = 0i64;
    for &s in &path.segs {
        index.push(segs.len());
        if s.is_perpendicular() {
            net_e += s.delta().2;
        } else {
            segs.push(s);
        }
    }
    index.push(segs.len());
    let dir = if net_e >= 0 { Seg::Ep } else { Seg::Em };
    segs.extend(std::iter::repeat_n(dir, net_e.unsigned_abs() as usize));
    DecoratedPath::new(segs, path.buttons.iter().map(|&i| index[i]))
}

/// Walk along `d` from `s` to `e` covering `[lo, hi]`, cheaper sweep first.
fn cover_walk(s: i64, e: i64, lo: i64, hi: i64) -> Vec<Seg> {
    let low_first = (s - lo) + (hi - lo) + (hi - e);
    let high_first = (hi - s) + (hi - lo) + (e - lo);
    let stops = if low_first <= high_first {
        [lo, hi, e]
    } else {
        [hi, lo, e]
    };
    let mut out = Vec::new();
    let mut cur = s;
    for stop in stops {
        while cur < stop {
            out.push(Seg::Dp);
            cur += 1;
        }
        while cur > stop {
            out.push(Seg::Dm);
            cur -= 1;
        }
    }
    out
}

/// Subpaths `segs[i..=j]` that leave a level vertically, run parallel to
/// the plane, and return: `Up ... Down` when `up` is set, else `Down ... Up`.
fn excursions(segs: &[Seg], up: bool) -> Vec<(usize, usize)> {
    let (first, last) = if up { (Seg::Up, Seg::Down) } else { (Seg::Down, Seg::Up) };
    let verticals: Vec<usize> = (0..segs.len()).filter(|&i| segs[i].is_vertical()).collect();
    verticals
        .windows(2)
        .filter(|w| {
            segs[w[0]] == first
                && segs[w[1]] == last
                && segs[w[0] + 1..w[1]].iter().all(|s| s.is_parallel())
        })
        .map(|w| (w[0], w[1]))
        .collect()
}

fn flatten(segs: &[Seg], i: usize, j: usize) -> Vec<Seg> {
    let verts = vertices_of(segs);
    let span = &verts[i..=j + 1];
    let lo = span.iter().map(|v| v.d).min().expect("nonempty");
    let hi = span.iter().map(|v| v.d).max().expect("nonempty");
    let walk = cover_walk(verts[i].d, verts[j + 1].d, lo, hi + 1);
    let mut out = segs[..i].to_vec();
    out.extend(walk);
    out.extend_from_slice(&segs[j + 1..]);
    out
}

/// Replaces excursions above a level by walks along it. Excursions below a
/// level are replaced only when the buttons can still be re-solved.
fn flatten_excursions(
    mut path: DecoratedPath,
    target: &LocalizedLamp,
) -> Result<(DecoratedPath, bool), PathError> {
    let mut changed = false;
    'outer: loop {
        if let Some(&(i, j)) = excursions(&path.segs, true).first() {
            let segs = flatten(&path.segs, i, j);
            let buttons = resolve(&segs, target).ok_or(PathError::ReSolveFailed("hill"))?;
            path = DecoratedPath { segs, buttons };
            changed = true;
            continue;
        }
        for (i, j) in excursions(&path.segs, false) {
            let segs = flatten(&path.segs, i, j);
            if let Some(buttons) = resolve(&segs, target) {
                path = DecoratedPath { segs, buttons };
                changed = true;
                continue 'outer;
            }
        }
        return Ok((path, changed));
    }
}

/// First maximal run of vertical segments over a half-integer point.
fn half_integer_run(segs: &[Seg]) -> Option<(usize, usize)> {
    let verts = vertices_of(segs);
    let a = (0..segs.len()).find(|&i| segs[i].is_vertical() && !verts[i].is_lattice())?;
    let b = (a..segs.len()).find(|&i| !segs[i].is_vertical()).unwrap_or(segs.len());
    Some((a, b))
}

/// Pushes half-integer vertical runs onto the lattice by exchanging them
/// with a neighbouring diagonal.
fn push_runs(
    mut path: DecoratedPath,
    target: &LocalizedLamp,
) -> Result<(DecoratedPath, bool), PathError> {
    let mut changed = false;
    while let Some((a, b)) = half_integer_run(&path.segs) {
        if a == 0 || b >= path.segs.len() {
            return Err(PathError::ReSolveFailed("unbounded half-integer run"));
        }
        let (x0, x2) = (path.segs[a - 1], path.segs[b]);
        let before = |segs: &[Seg]| {
            let mut s = segs.to_vec();
            s[a - 1..b].rotate_left(1);
            s
        };
        let after = |segs: &[Seg]| {
            let mut s = segs.to_vec();
            s[a..=b].rotate_right(1);
            s
        };
        let order: [bool; 2] = if x2.is_perpendicular() {
            [false, true]
        } else if x0 == Seg::Dp {
            [true, false]
        } else if x2 == Seg::Dp {
            [false, true]
        } else {
            [true, false]
        };
        let mut done = false;
        for use_before in order {
            let segs = if use_before {
                before(&path.segs)
            } else {
                after(&path.segs)
            };
            if let Some(buttons) = resolve(&segs, target) {
                path = DecoratedPath { segs, buttons };
                done = true;
                break;
            }
        }
        if !done {
            return Err(PathError::ReSolveFailed("half-integer vertical run"));
        }
        changed = true;
    }
    Ok((path, changed))
}

/// Removes closed pairs of parallel diagonals whose far vertex is not
/// pressed, merging the buttons at their ends.
fn drop_degenerate_pairs(mut path: DecoratedPath) -> (DecoratedPath, bool) {
    let mut changed = false;
    'scan: loop {
        let verts = path.vertices();
        let mut i = 0;
        while i + 1 < path.segs.len() {
            if path.segs[i].is_vertical() {
                i += 1;
                continue;
            }
            let (s0, s1) = (path.segs[i], path.segs[i + 1]);
            if verts[i].is_lattice()
                && s0.is_parallel()
                && s1 == s0.reverse()
                && !path.buttons.contains(&(i + 1))
            {
                let mut segs = path.segs.clone();
                segs.drain(i..i + 2);
                let buttons = path.buttons.iter().map(|&b| if b > i + 1 { b - 2 } else { b });
                path = DecoratedPath::new(segs, buttons);
                changed = true;
                continue 'scan;
            }
            i += if verts[i].is_lattice() { 2 } else { 1 };
        }
        return (path, changed);
    }
}

/// Rewrites a decorated path into the four-arc normal form, representing
/// the same element with no more vertical segments and no more segments.
pub fn normalize_decorated(path: &DecoratedPath) -> Result<DecoratedPath, PathError> {
    let target = path.lamps();
    let mut cur = collect_perpendicular(path);
    debug_assert_eq!(cur.lamps(), target);
    loop {
        let (next, flat) = flatten_excursions(cur, &target)?;
        let (next, pushed) = push_runs(next, &target)?;
        let (next, dropped) = drop_degenerate_pairs(next);
        cur = next;
        if !(flat || pushed || dropped) {
            break;
        }
    }
    debug_assert_eq!(cur.lamps(), target);
    debug_assert_eq!(cur.end(), path.end());
    Ok(cur)
}

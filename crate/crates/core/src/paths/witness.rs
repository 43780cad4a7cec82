use serde::{Deserialize, Serialize};

use crate::gf2::{gf2_solve, Gf2Solution, Gf2System};
use crate::group::{
    in_dn, in_pn, in_tn, proj_i_k, Base, GenSet, GenTable, GenWord, Group, HElem, HGroup,
    KElem, KGroup, Letter, Word,
};
use crate::lamp::{clear_denominators, LocalizedLamp};
#[cfg(test)]
use crate::lamp::LaurentPolyZ2;

use super::PathError;

/// A lattice polyline of unit moves with presses at vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPath {
    /// Points visited, `(p, q, r)`; `p = 0` for `H`.
    pub vertices: Vec<(i64, i64, i64)>,
    pub presses: Vec<usize>,
}

impl WitnessPath {
    fn from_corners(corners: &[(i64, i64, i64)]) -> Self {
        let mut vertices = vec![corners[0]];
        for &c in &corners[1..] {
            let mut cur = *vertices.last().expect("nonempty");
            while cur != c {
                if cur.0 != c.0 {
                    cur.0 += (c.0 - cur.0).signum();
                } else if cur.1 != c.1 {
                    cur.1 += (c.1 - cur.1).signum();
                } else {
                    cur.2 += (c.2 - cur.2).signum();
                }
                vertices.push(cur);
            }
        }
        Self {
            vertices,
            presses: Vec::new(),
        }
    }

    pub fn moves(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Letters in action order, one move per entry, with presses attached
    /// to the move leaving their vertex (the last vertex uses the last move).
    fn move_words(&self, letter: impl Fn((i64, i64, i64), (i64, i64, i64)) -> Letter) -> Vec<Word> {
        let n = self.moves();
        let mut before = vec![false; n];
        let mut after = vec![false; n];
        for &v in &self.presses {
            if v < n {
                before[v] ^= true;
            } else {
                after[n - 1] ^= true;
            }
        }
        let a = Letter::pos(Base::A);
        (0..n)
            .map(|i| {
                // Word order is the reverse of action order.
                let mut w = Vec::new();
                if after[i] {
                    w.push(a);
                }
                w.push(letter(self.vertices[i], self.vertices[i + 1]));
                if before[i] {
                    w.push(a);
                }
                Word(w)
            })
            .collect()
    }
}

fn assemble<G: Group>(
    group: &G,
    gens: &GenSet,
    moves: Vec<Word>,
) -> Result<GenWord, PathError> {
    let table = GenTable::new(group, gens)?;
    let mut letters = Vec::with_capacity(moves.len());
    for w in moves.iter().rev() {
        let x = group.eval(w)?;
        let l = table
            .lookup(&x)
            .ok_or_else(|| PathError::UnsupportedGenerator(w.to_string()))?;
        letters.push(l);
    }
    Ok(GenWord(letters))
}

fn lone_press<G: Group>(group: &G, gens: &GenSet) -> Result<GenWord, PathError> {
    let table = GenTable::new(group, gens)?;
    let a = group.letter(Letter::pos(Base::A))?;
    let l = table
        .lookup(&a)
        .ok_or_else(|| PathError::UnsupportedGenerator("a".into()))?;
    Ok(GenWord(vec![l]))
}

/// Picks presses among the path's vertices lighting `target`; columns are
/// the button effects at each vertex.
fn choose_presses(path: &mut WitnessPath, target: &LocalizedLamp) -> Result<(), PathError> {
    let cols: Vec<LocalizedLamp> = path
        .vertices
        .iter()
        .map(|&(p, q, r)| LocalizedLamp::button(p, q + r))
        .collect();
    let mut all: Vec<&LocalizedLamp> = vec![target];
    all.extend(cols.iter());
    let mut cleared = clear_denominators(&all);
    let goal = cleared.remove(0);
    match gf2_solve(&Gf2System::new(cleared, goal)) {
        Gf2Solution::Solved(idx) => {
            path.presses = idx;
            Ok(())
        }
        Gf2Solution::Unsolvable => Err(PathError::Unsolvable),
    }
}

fn planar_letter(a: (i64, i64, i64), b: (i64, i64, i64)) -> Letter {
    match (b.0 - a.0, b.1 - a.1, b.2 - a.2) {
        (1, 0, 0) => Letter::pos(Base::S),
        (-1, 0, 0) => Letter::neg(Base::S),
        (0, 1, 0) => Letter::pos(Base::T),
        (0, -1, 0) => Letter::neg(Base::T),
        (0, 0, 1) => Letter::pos(Base::U),
        (0, 0, -1) => Letter::neg(Base::U),
        other => unreachable!("not a unit move: {other:?}"),
    }
}

/// Polyline in `(d, e)` for the upper bound in `(H, C)`: out to one end of
/// the lamp range, a zigzag to the other end, then to the target. Each move
/// changes both `d` and `e` by one.
fn h_path(q: i64, r: i64, n: i64) -> Vec<(i64, i64)> {
    let mut e_star = q - r;
    if (n + e_star).rem_euclid(2) == 1 {
        e_star += 1;
    }
    let (first, second) = if q + r >= 0 { (-n, n) } else { (n, -n) };
    let mut pts = vec![(0i64, 0i64)];
    let go = |pts: &mut Vec<(i64, i64)>, d_to: i64, e_to: i64| {
        let (mut d, mut e) = *pts.last().expect("nonempty");
        let mut zig = -1;
        while d != d_to {
            d += (d_to - d).signum();
            let left = (d_to - d).abs();
            let diff = e_to - e;
            if diff.abs() > left {
                e += diff.signum();
            } else {
                e += zig;
                zig = -zig;
            }
            pts.push((d, e));
        }
    };
    go(&mut pts, first, e_star);
    go(&mut pts, second, e_star);
    go(&mut pts, q + r, q - r);
    pts
}

/// A word over `C` of length at most `4n` representing `g`, for `g` with
/// cursor in `D_n` and lamps in `[-n, n]`.
pub fn witness_h(g: &HElem, n: i64) -> Result<GenWord, PathError> {
    let gens = GenSet::c();
    if g.is_a() {
        return lone_press(&HGroup, &gens);
    }
    let (q, r) = (g.pos.0 as i64, g.pos.1 as i64);
    let lamps = g.lamps.to_vec();
    if n < 1 || !in_dn((q, r), n) || lamps.iter().any(|x| x.abs() > n) {
        return Err(PathError::Precondition(format!("{g} is outside the n = {n} region")));
    }
    let pts = h_path(q, r, n);
    let mut presses = Vec::new();
    for &lamp in &lamps {
        let v = pts.iter().position(|&(d, _)| d == lamp).expect("path covers [-n, n]");
        presses.push(v);
    }
    let path = WitnessPath {
        vertices: pts.iter().map(|&(d, e)| (0, (d + e) / 2, (d - e) / 2)).collect(),
        presses,
    };
    let moves = path.move_words(planar_letter);
    let w = assemble(&HGroup, &gens, moves)?;
    debug_assert_eq!(w.eval(&HGroup, &gens).ok().as_ref(), Some(g));
    Ok(w)
}

/// The polyline used in `(K, A)` for cursors in `P_n` with `p >= 0`.
pub fn k_witness_path(p: i64, q: i64, r: i64, n: i64) -> WitnessPath {
    let corners: Vec<(i64, i64, i64)> = if in_tn((p, q + r), n) {
        vec![(0, 0, 0), (0, n, 0), (0, q, 0), (0, q, -n - q), (0, q, r), (p, q, r)]
    } else if r >= 0 {
        vec![
            (0, 0, 0),
            (0, -n, 0),
            (0, -p, 0),
            (p, -p, 0),
            (p, -p, r),
            (p, n - p - r, r),
            (p, q, r),
        ]
    } else {
        vec![
            (0, 0, 0),
            (0, -n, 0),
            (0, -p, 0),
            (p, -p, 0),
            (p, n - p, 0),
            (p, n - p, r),
            (p, q, r),
        ]
    };
    WitnessPath::from_corners(&corners)
}

/// A word over `A` of length at most `4n` representing `g`, for `g` with
/// cursor in `P_n`, `p >= 0`, and lamps in `[-n, n]`.
pub fn witness_k(g: &KElem, n: i64) -> Result<GenWord, PathError> {
    let gens = GenSet::a();
    let (p, q, r) = (g.pos.0 as i64, g.pos.1 as i64, g.pos.2 as i64);
    let lamps = proj_i_k(g)?;
    if p < 0 {
        return Err(PathError::UnsupportedNegativeP(p));
    }
    if n < 1 || !in_pn((p, q, r), n) || lamps.iter().any(|x| x.abs() > n) {
        return Err(PathError::Precondition(format!("{g} is outside the n = {n} region")));
    }
    if (p, q, r) == (0, 0, 0) && lamps.iter().all(|&x| x == 0) {
        return if lamps.is_empty() {
            Ok(GenWord::default())
        } else {
            lone_press(&KGroup, &gens)
        };
    }
    let mut path = k_witness_path(p, q, r, n);
    choose_presses(&mut path, &g.lamps)?;
    let moves = path.move_words(planar_letter);
    let w = assemble(&KGroup, &gens, moves)?;
    debug_assert_eq!(w.eval(&KGroup, &gens).ok().as_ref(), Some(g));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{special_h, special_k};

    fn poly(v: &[i64]) -> LaurentPolyZ2 {
        LaurentPolyZ2::from_exponents(v.iter().copied())
    }

    #[test]
    fn h_paths_have_unit_moves_and_bounded_length() {
        for n in 1..6i64 {
            for q in -n..=n {
                for r in -n..=n {
                    if q.abs() + r.abs() > n {
                        continue;
                    }
                    let pts = h_path(q, r, n);
                    assert!(pts.len() as i64 - 1 <= 4 * n);
                    assert_eq!(*pts.last().unwrap(), (q + r, q - r));
                    for w in pts.windows(2) {
                        assert_eq!((w[1].0 - w[0].0).abs(), 1);
                        assert_eq!((w[1].1 - w[0].1).abs(), 1);
                    }
                    for d in -n..=n {
                        assert!(pts.iter().any(|&(x, _)| x == d));
                    }
                }
            }
        }
    }

    #[test]
    fn h_witness_examples() {
        let c = GenSet::c();
        let g1 = special_h(1).unwrap();
        let w = witness_h(&g1, 1).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.eval(&HGroup, &c).unwrap(), g1);
        let t = HGroup.eval(&"t".parse().unwrap()).unwrap();
        let w = witness_h(&t, 1).unwrap();
        assert!(w.len() <= 4);
        assert_eq!(w.eval(&HGroup, &c).unwrap(), t);
        let a = HElem::new(poly(&[0]), (0, 0));
        assert_eq!(witness_h(&a, 1).unwrap().display(&c).to_string(), "a");
        assert!(witness_h(&special_h(2).unwrap(), 1).is_err());
    }

    #[test]
    fn h_witnesses_for_all_small_targets() {
        let c = GenSet::c();
        for n in 1..=3i64 {
            let width = 2 * n + 1;
            for mask in 0..(1u32 << width) {
                let lamps = poly(
                    &(0..width).filter(|i| mask >> i & 1 == 1).map(|i| i - n).collect::<Vec<_>>(),
                );
                for q in -n..=n {
                    for r in -n..=n {
                        if q.abs() + r.abs() > n {
                            continue;
                        }
                        let g = HElem::new(lamps.clone(), (q as i32, r as i32));
                        let w = witness_h(&g, n).unwrap();
                        assert!(w.len() as i64 <= 4 * n, "{g}");
                        assert_eq!(w.eval(&HGroup, &c).unwrap(), g);
                    }
                }
            }
        }
    }

    #[test]
    fn k_witness_examples() {
        let a = GenSet::a();
        for n in 1..=20 {
            let g = special_k(n).unwrap();
            let w = witness_k(&g, n).unwrap();
            assert!(w.len() as i64 <= 4 * n);
            assert_eq!(w.eval(&KGroup, &a).unwrap(), g);
        }
        let lone = KElem::new(LocalizedLamp::from_poly(poly(&[0])), (0, 0, 0));
        assert_eq!(witness_k(&lone, 1).unwrap().display(&a).to_string(), "a");
        let neg = KGroup.eval(&"s^-1".parse().unwrap()).unwrap();
        assert_eq!(witness_k(&neg, 1), Err(PathError::UnsupportedNegativeP(-1)));
    }

    #[test]
    fn k_paths_stay_within_budget() {
        for n in 1..=6i64 {
            for p in 0..=n {
                for q in -n..=n {
                    for r in -n..=n {
                        if !in_pn((p, q, r), n) {
                            continue;
                        }
                        let path = k_witness_path(p, q, r, n);
                        assert!(path.moves() as i64 <= 4 * n, "{p} {q} {r} n={n}");
                        assert_eq!(*path.vertices.last().unwrap(), (p, q, r));
                        assert!(path.vertices.iter().all(|v| v.0 >= 0));
                    }
                }
            }
        }
    }

    #[test]
    fn k_witnesses_for_all_small_targets() {
        let a = GenSet::a();
        for n in 1..=2i64 {
            let width = 2 * n + 1;
            for mask in 0..(1u32 << width) {
                let lamps = LocalizedLamp::from_poly(poly(
                    &(0..width).filter(|i| mask >> i & 1 == 1).map(|i| i - n).collect::<Vec<_>>(),
                ));
                for p in 0..=n {
                    for q in -n..=n {
                        for r in -n..=n {
                            if !in_pn((p, q, r), n) {
                                continue;
                            }
                            let g = KElem::new(lamps.clone(), (p as i32, q as i32, r as i32));
                            let w = witness_k(&g, n).unwrap();
                            assert!(w.len() as i64 <= 4 * n, "{g}");
                            assert_eq!(w.eval(&KGroup, &a).unwrap(), g);
                        }
                    }
                }
            }
        }
    }
}

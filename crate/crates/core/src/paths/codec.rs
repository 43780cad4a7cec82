use rustc_hash::FxHashSet;

use crate::group::{GenLetter, GenSet, GenTable, GenWord, Group, HElem, HGroup, KElem, KGroup};
use crate::lamp::{LaurentPolyZ2, LocalizedLamp};

use super::path::vertices_of;
use super::{DecoratedPath, PathError, Seg, Vertex};

/// Groups whose elements split into a lamp part and a lattice displacement.
pub trait PathModel: Group {
    fn to_parts(&self, g: &Self::Elem) -> (LocalizedLamp, Vertex);
    fn from_parts(&self, lamps: &LocalizedLamp, disp: Vertex) -> Option<Self::Elem>;
}

impl PathModel for HGroup {
    fn to_parts(&self, g: &HElem) -> (LocalizedLamp, Vertex) {
        (
            LocalizedLamp::from_poly(g.lamps.clone()),
            Vertex::from_pqr(0, g.pos.0 as i64, g.pos.1 as i64),
        )
    }

    fn from_parts(&self, lamps: &LocalizedLamp, disp: Vertex) -> Option<HElem> {
        if disp.p != 0 || !disp.is_lattice() {
            return None;
        }
        let (q, r) = disp.qr();
        Some(HElem::new(lamps.to_poly()?, (q as i32, r as i32)))
    }
}

impl PathModel for KGroup {
    fn to_parts(&self, g: &KElem) -> (LocalizedLamp, Vertex) {
        (
            g.lamps.clone(),
            Vertex::from_pqr(g.pos.0 as i64, g.pos.1 as i64, g.pos.2 as i64),
        )
    }

    fn from_parts(&self, lamps: &LocalizedLamp, disp: Vertex) -> Option<KElem> {
        if !disp.is_lattice() {
            return None;
        }
        let (q, r) = disp.qr();
        Some(KElem::new(lamps.clone(), (disp.p as i32, q as i32, r as i32)))
    }
}

/// Candidate segment shapes for a generator with displacement `disp`.
fn shapes(disp: Vertex) -> Vec<Vec<Seg>> {
    use Seg::*;
    match (disp.p, disp.d, disp.e) {
        (1, 0, 0) => vec![vec![Up]],
        (-1, 0, 0) => vec![vec![Down]],
        (0, 2, 0) => vec![vec![Dp, Dp]],
        (0, -2, 0) => vec![vec![Dm, Dm]],
        (0, 0, 2) => vec![vec![Ep, Ep]],
        (0, 0, -2) => vec![vec![Em, Em]],
        (0, 1, 1) => vec![vec![Dp, Ep], vec![Ep, Dp]],
        (0, 1, -1) => vec![vec![Dp, Em], vec![Em, Dp]],
        (0, -1, -1) => vec![vec![Dm, Em], vec![Em, Dm]],
        (0, -1, 1) => vec![vec![Dm, Ep], vec![Ep, Dm]],
        (0, 0, 0) => vec![vec![Dp, Dm], vec![Dm, Dp]],
        _ => vec![],
    }
}

/// Button subsets of an `n`-vertex shape: smallest first, then those
/// avoiding the final vertex, which belongs to the next subpath.
fn subset_order(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m >> (n - 1) & 1, m));
    masks
}

fn relative(v: Vertex, origin: Vertex) -> LocalizedLamp {
    LocalizedLamp::button(v.p - origin.p, v.d - origin.d)
}

fn one() -> LocalizedLamp {
    LocalizedLamp::from_poly(LaurentPolyZ2::one())
}

/// Reads `word` right to left, appending each generator's segments and
/// pressing the buttons its `a` letters dictate.
pub fn path_from_word<G: PathModel>(
    group: &G,
    gens: &GenSet,
    word: &GenWord,
) -> Result<DecoratedPath, PathError> {
    let mut path = DecoratedPath::default();
    for &letter in word.0.iter().rev() {
        let x = group.eval(&gens.word_of(letter))?;
        let (lamps, disp) = group.to_parts(&x);
        let here = path.segs.len();
        if disp == Vertex::default() && lamps == one() {
            path.toggle(here);
            continue;
        }
        let mut placed = false;
        'shape: for shape in shapes(disp) {
            let verts = vertices_of(&shape);
            for mask in subset_order(verts.len()) {
                let sum = (0..verts.len())
                    .filter(|j| mask >> j & 1 == 1)
                    .fold(LocalizedLamp::zero(), |acc, j| acc.add(&relative(verts[j], verts[0])));
                if sum == lamps {
                    path.segs.extend(&shape);
                    for j in (0..verts.len()).filter(|j| mask >> j & 1 == 1) {
                        path.toggle(here + j);
                    }
                    placed = true;
                    break 'shape;
                }
            }
        }
        if !placed {
            return Err(PathError::UnsupportedGenerator(gens.label(letter)));
        }
    }
    Ok(path)
}

/// Splits a path into subpaths meeting the lattice only at their ends.
fn lattice_subpaths(path: &DecoratedPath, verts: &[Vertex]) -> Result<Vec<(usize, usize)>, PathError> {
    let n = path.segs.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if path.segs[i].is_vertical() {
            if !verts[i].is_lattice() {
                return Err(PathError::PathNotWordlike {
                    at: i,
                    reason: "vertical segment over a half-integer point",
                });
            }
            out.push((i, i + 1));
            i += 1;
            continue;
        }
        if i + 1 >= n {
            return Err(PathError::PathNotWordlike {
                at: i,
                reason: "path ends off the lattice",
            });
        }
        if path.segs[i + 1].is_vertical() {
            return Err(PathError::PathNotWordlike {
                at: i + 1,
                reason: "vertical segment over a half-integer point",
            });
        }
        out.push((i, i + 2));
        i += 2;
    }
    Ok(out)
}

struct Decoder<'a, G: PathModel> {
    group: &'a G,
    table: &'a GenTable<G::Elem>,
    path: &'a DecoratedPath,
    verts: Vec<Vertex>,
    subpaths: Vec<(usize, usize)>,
    a: Option<GenLetter>,
    failed: FxHashSet<(usize, bool)>,
}

impl<G: PathModel> Decoder<'_, G> {
    fn letter_for(&self, j: usize, with_start: bool, with_end: bool) -> Option<GenLetter> {
        let (s, e) = self.subpaths[j];
        let pressed = |i: usize| self.path.buttons.contains(&i);
        let mut lamps = LocalizedLamp::zero();
        for i in s..=e {
            let on = if i == s {
                with_start && pressed(i)
            } else if i == e {
                with_end && pressed(i)
            } else {
                pressed(i)
            };
            if on {
                lamps = lamps.add(&relative(self.verts[i], self.verts[s]));
            }
        }
        let disp = Vertex::new(
            self.verts[e].p - self.verts[s].p,
            self.verts[e].d - self.verts[s].d,
            self.verts[e].e - self.verts[s].e,
        );
        let x = self.group.from_parts(&lamps, disp)?;
        let letter = self.table.lookup(&x)?;
        // A closed pair of diagonals must press its far vertex.
        (Some(letter) != self.a).then_some(letter)
    }

    /// Letters for subpaths `j..`, given whether the previous subpath took
    /// the button at the start of subpath `j`.
    fn solve(&mut self, j: usize, start_taken: bool) -> Option<Vec<GenLetter>> {
        if j == self.subpaths.len() {
            return Some(Vec::new());
        }
        if self.failed.contains(&(j, start_taken)) {
            return None;
        }
        let last = j + 1 == self.subpaths.len();
        let end_pressed = self.path.buttons.contains(&self.subpaths[j].1);
        let options: &[bool] = if last {
            &[true]
        } else if end_pressed {
            &[false, true]
        } else {
            &[false]
        };
        for &take_end in options {
            if let Some(letter) = self.letter_for(j, !start_taken, take_end) {
                if let Some(mut rest) = self.solve(j + 1, take_end && end_pressed) {
                    rest.insert(0, letter);
                    return Some(rest);
                }
            }
        }
        self.failed.insert((j, start_taken));
        None
    }
}

/// Reads a word-like path back into a word, right to left. Buttons at a
/// vertex shared by two subpaths go to the later one when possible.
pub fn word_from_path<G: PathModel>(
    group: &G,
    table: &GenTable<G::Elem>,
    path: &DecoratedPath,
) -> Result<GenWord, PathError> {
    let verts = path.vertices();
    let a_elem = group.from_parts(&one(), Vertex::default());
    let a = a_elem.as_ref().and_then(|x| table.lookup(x));
    if path.segs.is_empty() {
        return match (path.buttons.contains(&0), a) {
            (false, _) => Ok(GenWord::default()),
            (true, Some(a)) => Ok(GenWord(vec![a])),
            (true, None) => Err(PathError::PathNotWordlike {
                at: 0,
                reason: "no generator a",
            }),
        };
    }
    let subpaths = lattice_subpaths(path, &verts)?;
    let mut decoder = Decoder {
        group,
        table,
        path,
        verts,
        subpaths,
        a,
        failed: FxHashSet::default(),
    };
    let mut letters = decoder.solve(0, false).ok_or_else(|| {
        let at = decoder
            .failed
            .iter()
            .map(|&(j, _)| decoder.subpaths[j].0)
            .max()
            .unwrap_or(0);
        PathError::PathNotWordlike {
            at,
            reason: "no generator matches a subpath",
        }
    })?;
    letters.reverse();
    Ok(GenWord(letters))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn d_table() -> (GenSet, GenTable<HElem>) {
        let d = GenSet::d();
        let t = GenTable::new(&HGroup, &d).unwrap();
        (d, t)
    }

    fn b_table() -> (GenSet, GenTable<KElem>) {
        let b = GenSet::b();
        let t = GenTable::new(&KGroup, &b).unwrap();
        (b, t)
    }

    #[test]
    fn row_one_pair() {
        let (d, table) = d_table();
        let w = GenWord::parse("t", &d).unwrap();
        let path = path_from_word(&HGroup, &d, &w).unwrap();
        assert_eq!(path.segs, vec![Seg::Dp, Seg::Ep]);
        assert!(path.buttons.is_empty());
        assert_eq!(word_from_path(&HGroup, &table, &path).unwrap(), w);
    }

    #[test]
    fn three_decorations() {
        let (d, table) = d_table();
        let w = GenWord::parse("ataua", &d).unwrap();
        let path = path_from_word(&HGroup, &d, &w).unwrap();
        assert_eq!(path.segs, vec![Seg::Dp, Seg::Dp]);
        assert_eq!(path.buttons.len(), 3);
        assert_eq!(word_from_path(&HGroup, &table, &path).unwrap(), w);
    }

    #[test]
    fn b_examples() {
        let (b, table) = b_table();
        let s = path_from_word(&KGroup, &b, &GenWord::parse("s", &b).unwrap()).unwrap();
        assert_eq!(s.segs, vec![Seg::Up]);
        let w = GenWord::parse("atua", &b).unwrap();
        let path = path_from_word(&KGroup, &b, &w).unwrap();
        assert_eq!(path.segs, vec![Seg::Dp, Seg::Dp]);
        assert_eq!(path.buttons.iter().copied().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(word_from_path(&KGroup, &table, &path).unwrap(), w);
    }

    #[test]
    fn degenerate_pairs_are_rejected() {
        let (_, table) = d_table();
        for segs in [vec![Seg::Ep, Seg::Em], vec![Seg::Em, Seg::Ep]] {
            for buttons in [vec![], vec![0], vec![1]] {
                let path = DecoratedPath::new(segs.clone(), buttons);
                assert!(matches!(
                    word_from_path(&HGroup, &table, &path),
                    Err(PathError::PathNotWordlike { .. })
                ));
            }
        }
        let path = DecoratedPath::new(vec![Seg::Dp, Seg::Dm], [0]);
        assert!(word_from_path(&HGroup, &table, &path).is_err());
        let path = DecoratedPath::new(vec![Seg::Dp, Seg::Dm], [1]);
        let w = word_from_path(&HGroup, &table, &path).unwrap();
        assert_eq!(w.display(&table.gens).to_string(), "t^-1at");
    }

    #[test]
    fn half_integer_vertical_is_not_word_like() {
        let (_, table) = b_table();
        let path = DecoratedPath::new(vec![Seg::Dp, Seg::Up, Seg::Ep], []);
        assert_eq!(
            word_from_path(&KGroup, &table, &path),
            Err(PathError::PathNotWordlike {
                at: 1,
                reason: "vertical segment over a half-integer point"
            })
        );
    }

    #[test]
    fn lone_press_is_a() {
        let (d, table) = d_table();
        let path = DecoratedPath::new(vec![], [0]);
        assert_eq!(word_from_path(&HGroup, &table, &path).unwrap().display(&d).to_string(), "a");
        assert!(word_from_path(&HGroup, &table, &DecoratedPath::default()).unwrap().is_empty());
    }

    fn random_gen_word(rng: &mut ChaCha8Rng, gens: &GenSet, len: usize) -> GenWord {
        GenWord(
            (0..len)
                .map(|_| GenLetter::new(rng.gen_range(0..gens.gens.len()), rng.gen_bool(0.5)))
                .collect(),
        )
    }

    #[test]
    fn random_round_trips_preserve_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (d, dt) = d_table();
        let (b, bt) = b_table();
        for _ in 0..3000 {
            let len = rng.gen_range(0..=6);
            let w = random_gen_word(&mut rng, &d, len);
            let path = path_from_word(&HGroup, &d, &w).unwrap();
            assert_eq!(path.to_h_elem().unwrap(), w.eval(&HGroup, &d).unwrap());
            let back = word_from_path(&HGroup, &dt, &path).unwrap();
            assert_eq!(back.eval(&HGroup, &d).unwrap(), w.eval(&HGroup, &d).unwrap());
            assert!(back.len() <= w.len());

            let w = random_gen_word(&mut rng, &b, len);
            let path = path_from_word(&KGroup, &b, &w).unwrap();
            assert_eq!(path.to_k_elem().unwrap(), w.eval(&KGroup, &b).unwrap());
            let back = word_from_path(&KGroup, &bt, &path).unwrap();
            assert_eq!(back.eval(&KGroup, &b).unwrap(), w.eval(&KGroup, &b).unwrap());
            assert!(back.len() <= w.len());
            let again = path_from_word(&KGroup, &b, &back).unwrap();
            assert_eq!(again.to_k_elem().unwrap(), path.to_k_elem().unwrap());
        }
    }
}

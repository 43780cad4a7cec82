//! Word-length facts in `(K, A)` checked by evaluating every short word,
//! independently of the ball engine.

use rustc_hash::FxHashMap;

use deadend_core::group::{special_k, GenLetter, GenSet, GenWord, Group, KElem, KGroup};
use deadend_core::lamp::{LaurentPolyZ2, LocalizedLamp};

fn shortest_words(max_len: usize) -> FxHashMap<KElem, usize> {
    let gens = GenSet::a();
    let letters: Vec<GenLetter> = (0..gens.gens.len())
        .flat_map(|i| [GenLetter::new(i, false), GenLetter::new(i, true)])
        .collect();
    let values: Vec<KElem> = letters
        .iter()
        .map(|&l| GenWord(vec![l]).eval(&KGroup, &gens).unwrap())
        .collect();
    let mut best = FxHashMap::default();
    best.insert(KGroup.identity(), 0);
    let mut frontier = vec![KGroup.identity()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for g in &frontier {
            for v in &values {
                let h = KGroup.mul(g, v);
                best.entry(h.clone()).or_insert_with(|| {
                    next.push(h);
                    len
                });
            }
        }
        frontier = next;
    }
    best
}

fn elem(exponents: &[i64], pos: (i32, i32, i32)) -> KElem {
    let lamps = LocalizedLamp::from_poly(LaurentPolyZ2::from_exponents(exponents.iter().copied()));
    KElem::new(lamps, pos)
}

#[test]
fn short_words_in_k() {
    let best = shortest_words(4);
    assert_eq!(best.get(&special_k(1).unwrap()), Some(&4));
    // Elements behind the origin with lamps in [-1, 1] that need a fifth letter.
    assert_eq!(best.get(&elem(&[-1, 0, 1], (-1, 0, 0))), None);
    assert_eq!(best.get(&elem(&[-1, 1], (-1, 0, 0))), None);
    // The cursor at (-1, 0, 0) forces odd word length.
    assert!(best
        .iter()
        .filter(|(g, _)| g.pos == (-1, 0, 0))
        .all(|(_, &len)| len % 2 == 1));
}

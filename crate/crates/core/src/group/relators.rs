use rand::Rng;

use super::{Base, GGroup, Group, GroupError, HGroup, KGroup, Lamplighter, Letter, Word};

/// A defining relator of one of the named groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    /// `K`, `G`, `H` or `LL`.
    pub group: &'static str,
    pub word: Word,
}

impl Relator {
    pub fn is_trivial(&self) -> Result<bool, GroupError> {
        fn check<G: Group>(g: &G, w: &Word) -> Result<bool, GroupError> {
            Ok(g.eval(w)? == g.identity())
        }
        match self.group {
            "K" => check(&KGroup, &self.word),
            "G" => check(&GGroup, &self.word),
            "H" => check(&HGroup, &self.word),
            "LL" => check(&Lamplighter, &self.word),
            other => Err(GroupError::Parse(format!("unknown group {other}"))),
        }
    }
}

fn w(s: &str) -> Word {
    s.parse().expect("static word")
}

fn comm(x: &Word, y: &Word) -> Word {
    x.inverse().concat(&y.inverse()).concat(x).concat(y)
}

fn conj(x: &Word, b: &Word) -> Word {
    b.inverse().concat(x).concat(b)
}

/// Presentations of `K`, `G`, `H` and the lamplighter, with the infinite
/// families `[a, a^(t^i)]` truncated to `|i| <= 10`.
pub fn relators() -> Vec<Relator> {
    let (a, s, t, u) = (w("a"), w("s"), w("t"), w("u"));
    let mut out = Vec::new();
    let mut push = |group, words: Vec<Word>| {
        out.extend(words.into_iter().map(|word| Relator { group, word }));
    };
    push(
        "K",
        vec![
            w("aa"),
            comm(&a, &conj(&a, &t)),
            comm(&s, &t),
            comm(&s, &u),
            comm(&t, &u),
            conj(&a, &s).inverse().concat(&a).concat(&conj(&a, &t)),
            conj(&a, &u).inverse().concat(&conj(&a, &t)),
        ],
    );
    push(
        "G",
        vec![
            w("aa"),
            comm(&a, &conj(&a, &t)),
            comm(&s, &t),
            conj(&a, &s).inverse().concat(&a).concat(&conj(&a, &t)),
        ],
    );
    let mut h_rels = vec![w("aa"), comm(&t, &u), conj(&a, &u).inverse().concat(&conj(&a, &t))];
    let mut ll_rels = vec![w("aa")];
    for i in -10..=10 {
        let ti = Word::power(Base::T, i);
        h_rels.push(comm(&a, &conj(&a, &ti)));
        ll_rels.push(comm(&conj(&a, &ti), &a));
    }
    push("H", h_rels);
    push("LL", ll_rels);
    out
}

/// A uniform random word of length at most `max_len` over `alphabet` and
/// its inverses.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: &[Base], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Letter::new(alphabet[rng.gen_range(0..alphabet.len())], rng.gen_bool(0.5)))
            .collect(),
    )
}

use std::fmt;
use std::path::Path;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::word::Word;
use super::{Group, GroupError};

const C_LABELS: &[&str] = &["a", "t", "u", "at", "ta", "ata", "au", "ua", "aua"];
const A_LABELS: &[&str] = &[
    "a", "s", "t", "u", "as", "at", "au", "sa", "ta", "ua", "asa", "ata", "aua",
];
const S_LABELS: &[&str] = &["a", "s", "t", "at", "ta", "ata", "as", "sa", "asa"];
/// Added to `C` to form `D`, and to `A` to form `B`.
const DIAGONAL_EXTRAS: &[&str] = &[
    "tu", "atu", "tau", "tua", "atau", "atua", "taua", "ataua", "ut^-1", "aut^-1", "tat^-1",
    "t^-1at", "atat^-1", "at^-1at",
];

/// A named finite generating set, stored as words over the base letters.
/// Inverses are added by the metric engine, not stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSet {
    pub name: String,
    pub gens: Vec<(String, Word)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GenSetFile {
    Named { name: String, generators: Vec<String> },
    Bare(Vec<String>),
}

impl GenSet {
    pub fn new(name: impl Into<String>, gens: Vec<(String, Word)>) -> Result<Self, GroupError> {
        let name = name.into();
        for (i, (label, w)) in gens.iter().enumerate() {
            if w.is_empty() {
                return Err(GroupError::InvalidGenSet(format!("{name}: generator {label:?} is empty")));
            }
            if gens[..i].iter().any(|(l, _)| l == label) {
                return Err(GroupError::InvalidGenSet(format!("{name}: label {label:?} repeated")));
            }
        }
        Ok(Self { name, gens })
    }

    pub fn from_labels<S: AsRef<str>>(name: &str, labels: &[S]) -> Result<Self, GroupError> {
        let gens = labels
            .iter()
            .map(|l| Ok((l.as_ref().to_string(), l.as_ref().parse::<Word>()?)))
            .collect::<Result<Vec<_>, GroupError>>()?;
        Self::new(name, gens)
    }

    pub fn a() -> Self {
        Self::from_labels("A", A_LABELS).expect("built-in")
    }

    pub fn b() -> Self {
        let labels: Vec<&str> = A_LABELS.iter().chain(DIAGONAL_EXTRAS).copied().collect();
        Self::from_labels("B", &labels).expect("built-in")
    }

    pub fn c() -> Self {
        Self::from_labels("C", C_LABELS).expect("built-in")
    }

    pub fn d() -> Self {
        let labels: Vec<&str> = C_LABELS.iter().chain(DIAGONAL_EXTRAS).copied().collect();
        Self::from_labels("D", &labels).expect("built-in")
    }

    pub fn s() -> Self {
        Self::from_labels("S", S_LABELS).expect("built-in")
    }

    pub fn lamplighter_std() -> Self {
        Self::from_labels("LL-std", &["a", "t"]).expect("built-in")
    }

    /// `{a^k : k in values}` for `Z = <a>`.
    pub fn z(values: &[i64]) -> Result<Self, GroupError> {
        let name = format!(
            "Z:{{{}}}",
            values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        );
        let gens = values
            .iter()
            .map(|&v| (v.to_string(), Word::power(super::Base::A, v)))
            .collect();
        Self::new(name, gens)
    }

    /// `A`, `B`, `C`, `D`, `S`, `LL-std` or `Z:{n1,n2,...}`.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        match name {
            "A" => Ok(Self::a()),
            "B" => Ok(Self::b()),
            "C" => Ok(Self::c()),
            "D" => Ok(Self::d()),
            "S" => Ok(Self::s()),
            "LL-std" => Ok(Self::lamplighter_std()),
            _ => {
                let inner = name
                    .strip_prefix("Z:{")
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or_else(|| GroupError::UnknownGenSet(name.to_string()))?;
                let values = inner
                    .split(',')
                    .map(|v| v.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| GroupError::Parse(format!("{name}: {e}")))?;
                Self::z(&values)
            }
        }
    }

    /// JSON file holding either `["a", "t", ...]` or
    /// `{"name": ..., "generators": [...]}`.
    pub fn load_json(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Parse(format!("{}: {e}", path.display())))?;
        let parsed: GenSetFile =
            serde_json::from_str(&text).map_err(|e| GroupError::Parse(e.to_string()))?;
        match parsed {
            GenSetFile::Named { name, generators } => Self::from_labels(&name, &generators),
            GenSetFile::Bare(generators) => {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "custom".into());
                Self::from_labels(&name, &generators)
            }
        }
    }

    pub fn label(&self, g: GenLetter) -> String {
        let base = &self.gens[g.index as usize].0;
        if g.inverse {
            format!("({base})^-1")
        } else {
            base.clone()
        }
    }

    pub fn word_of(&self, g: GenLetter) -> Word {
        let w = &self.gens[g.index as usize].1;
        if g.inverse {
            w.inverse()
        } else {
            w.clone()
        }
    }

    /// Finds a generator or inverse by label, e.g. `ut^-1` or `(at)^-1`.
    pub fn find(&self, label: &str) -> Option<GenLetter> {
        if let Some(i) = self.gens.iter().position(|(l, _)| l == label) {
            return Some(GenLetter::new(i, false));
        }
        let inner = label.strip_prefix('(')?.strip_suffix(")^-1")?;
        let i = self.gens.iter().position(|(l, _)| l == inner)?;
        Some(GenLetter::new(i, true))
    }
}

/// A generator of a [`GenSet`] or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GenLetter {
    pub index: u16,
    pub inverse: bool,
}

impl GenLetter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Self {
            index: index as u16,
            inverse,
        }
    }

    pub fn inv(self) -> Self {
        Self {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// A word over a generating set and its inverses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GenWord(pub Vec<GenLetter>);

impl GenWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_word(&self, gens: &GenSet) -> Word {
        Word(
            self.0
                .iter()
                .flat_map(|&g| gens.word_of(g).0)
                .collect(),
        )
    }

    pub fn eval<G: Group>(&self, group: &G, gens: &GenSet) -> Result<G::Elem, GroupError> {
        group.eval(&self.to_word(gens))
    }

    pub fn display<'a>(&'a self, gens: &'a GenSet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GenWord, &'a GenSet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0 .0.iter().map(|&g| self.1.label(g)).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
        D(self, gens)
    }

    /// Parses space-separated labels such as `ata (tu)^-1 s`.
    pub fn parse(text: &str, gens: &GenSet) -> Result<Self, GroupError> {
        text.split_whitespace()
            .map(|tok| {
                gens.find(tok)
                    .ok_or_else(|| GroupError::Parse(format!("{tok:?} is not in {}", gens.name)))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(GenWord)
    }
}

/// Generators and inverses evaluated in `group`, in the order
/// `x_0, x_0^-1, x_1, x_1^-1, ...`. Elements equal to the identity or to an
/// earlier entry are dropped.
pub fn evaluate_closure<G: Group>(
    group: &G,
    gens: &GenSet,
) -> Result<Vec<(GenLetter, G::Elem)>, GroupError> {
    let mut out: Vec<(GenLetter, G::Elem)> = Vec::new();
    let id = group.identity();
    for (i, (label, w)) in gens.gens.iter().enumerate() {
        let e = group.eval(w)?;
        let inv = group.inv(&e);
        for (letter, elem) in [(GenLetter::new(i, false), e), (GenLetter::new(i, true), inv)] {
            if elem == id {
                log::warn!("{}: generator {label:?} is trivial in {}", gens.name, group.name());
                continue;
            }
            if let Some((prev, _)) = out.iter().find(|(_, x)| *x == elem) {
                if !letter.inverse {
                    log::warn!(
                        "{}: {label:?} coincides with {} in {}",
                        gens.name,
                        gens.label(*prev),
                        group.name()
                    );
                }
                continue;
            }
            out.push((letter, elem));
        }
    }
    Ok(out)
}

/// Reverse lookup from generator elements to the first generator letter
/// evaluating to them.
#[derive(Debug, Clone)]
pub struct GenTable<E> {
    pub gens: GenSet,
    pub closure: Vec<(GenLetter, E)>,
    index: FxHashMap<E, GenLetter>,
}

impl<E: Clone + Eq + std::hash::Hash> GenTable<E> {
    pub fn new<G: Group<Elem = E>>(group: &G, gens: &GenSet) -> Result<Self, GroupError> {
        let closure = evaluate_closure(group, gens)?;
        let index = closure.iter().map(|(l, e)| (e.clone(), *l)).collect();
        Ok(Self {
            gens: gens.clone(),
            closure,
            index,
        })
    }

    pub fn lookup(&self, e: &E) -> Option<GenLetter> {
        self.index.get(e).copied()
    }

    pub fn element(&self, g: GenLetter) -> Option<&E> {
        self.closure.iter().find(|(l, _)| *l == g).map(|(_, e)| e)
    }
}

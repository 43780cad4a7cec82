//! Group models, generating sets, projections and lamplighter regions.

mod genset;
mod models;
mod relators;
mod word;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

pub use genset::{evaluate_closure, GenLetter, GenSet, GenTable, GenWord};
pub use models::{
    act_on_state_h, act_on_state_ll, act_word_h, act_word_ll, retract_h_to_ll, retract_k_to_g,
    GElem, GGroup, HElem, HGroup, HState, KElem, KGroup, LLElem, Lamplighter, ZElem, ZGroup,
};
pub use relators::{random_word, relators, Relator};
pub use word::{Base, Letter, Word};

use crate::lamp::{pascal_row, LampError, LaurentPolyZ2, LocalizedLamp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("letter {letter} is not a generator of {group}")]
    IllegalLetter { group: &'static str, letter: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("lamp part {0} is not a Laurent polynomial")]
    NonPolynomialLamps(String),
    #[error("invalid generating set: {0}")]
    InvalidGenSet(String),
    #[error("unknown generating set {0:?}")]
    UnknownGenSet(String),
    #[error(transparent)]
    Lamp(#[from] LampError),
    #[error("special element needs n >= 1, got {0}")]
    BadIndex(i64),
}

/// A group with canonical, hashable normal forms.
pub trait Group: Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Display + Send + Sync + Serialize + DeserializeOwned;

    fn name(&self) -> &'static str;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn inv(&self, g: &Self::Elem) -> Self::Elem;
    fn letter(&self, l: Letter) -> Result<Self::Elem, GroupError>;

    /// Left-to-right product of the letters.
    fn eval(&self, w: &Word) -> Result<Self::Elem, GroupError> {
        w.letters().iter().try_fold(self.identity(), |acc, &l| {
            Ok(self.mul(&acc, &self.letter(l)?))
        })
    }

    fn serialize(&self, g: &Self::Elem) -> String {
        g.to_string()
    }

    /// Whether `g` is the generator `a` (the exceptional element of the
    /// depth theorems). Groups without such an element return false.
    fn is_a(&self, _g: &Self::Elem) -> bool {
        false
    }
}

/// `L(g)` for `H`.
pub fn proj_l_h(g: &HElem) -> (i32, i32) {
    g.pos
}

/// `L(g)` for `K`.
pub fn proj_l_k(g: &KElem) -> (i32, i32, i32) {
    g.pos
}

pub fn proj_i_h(g: &HElem) -> Vec<i64> {
    g.lamps.to_vec()
}

/// `I(g)` for lamp parts of `G` and `K`; defined only when the lamp part is
/// a Laurent polynomial.
pub fn proj_i_loc(lamps: &LocalizedLamp) -> Result<Vec<i64>, GroupError> {
    lamps
        .to_poly()
        .map(|p| p.to_vec())
        .ok_or_else(|| GroupError::NonPolynomialLamps(lamps.to_string()))
}

pub fn proj_i_k(g: &KElem) -> Result<Vec<i64>, GroupError> {
    proj_i_loc(&g.lamps)
}

pub fn proj_i_g(g: &GElem) -> Result<Vec<i64>, GroupError> {
    proj_i_loc(&g.lamps)
}

/// `{-n, n}` lit, lamplighter at the origin.
pub fn special_h(n: i64) -> Result<HElem, GroupError> {
    if n < 1 {
        return Err(GroupError::BadIndex(n));
    }
    Ok(HElem::new(LaurentPolyZ2::from_exponents([-n, n]), (0, 0)))
}

pub fn special_k(n: i64) -> Result<KElem, GroupError> {
    if n < 1 {
        return Err(GroupError::BadIndex(n));
    }
    Ok(KElem::new(
        LocalizedLamp::from_poly(LaurentPolyZ2::from_exponents([-n, n])),
        (0, 0, 0),
    ))
}

/// `D_n = { |q| + |r| <= n }`.
pub fn in_dn(pos: (i64, i64), n: i64) -> bool {
    pos.0.abs() + pos.1.abs() <= n
}

/// Closed hexagon with corners `(+-n, 0)`, `(0, +-n)`, `(n, -n)`, `(-n, n)`.
pub fn in_hn(pos: (i64, i64), n: i64) -> bool {
    let (x, y) = pos;
    x.abs() <= n && y.abs() <= n && (x + y).abs() <= n
}

/// Closed triangle with vertices `(0,0)`, `(0,-n)`, `(n,-n)`.
pub fn in_tn(pos: (i64, i64), n: i64) -> bool {
    let (x, y) = pos;
    x >= 0 && y >= -n && x + y <= 0
}

/// `P_n = { (p,q,r) : (p, q+r) in H_n and |q| + |r| <= n }`.
pub fn in_pn(pos: (i64, i64, i64), n: i64) -> bool {
    let (p, q, r) = pos;
    in_hn((p, q + r), n) && in_dn((q, r), n)
}

/// Lamps toggled by pressing `a` with the lamplighter at s-coordinate
/// `p >= 0` and diagonal coordinate `d`: row `p` of Pascal's triangle mod 2.
pub fn button_effect(p: i64, d: i64) -> Result<LaurentPolyZ2, GroupError> {
    Ok(pascal_row(p)?.shift(d))
}

//! Normal forms for `Z`, `Z_2 wr Z`, `H`, `G` and `K`.
//!
//! Every element is stored as (lamp-module element, translation). The
//! product is fixed by letting an element act on lamplighter states with
//! `state(gh) = g(state(h))`, so `h` is applied first:
//!
//! * `H`: `lamps(gh) = lamps(h) + x^(q_h + r_h) lamps(g)`
//! * `G`: `lamps(gh) = lamps(h) + x^(q_h) (1+x)^(p_h) lamps(g)`
//! * `K`: `lamps(gh) = lamps(h) + x^(q_h + r_h) (1+x)^(p_h) lamps(g)`
//!
//! and translations add.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::{Base, Letter};
use super::{Group, GroupError};
use crate::lamp::{LaurentPolyZ2, LocalizedLamp};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZElem(pub i64);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LLElem {
    pub lamps: LaurentPolyZ2,
    pub pos: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HElem {
    pub lamps: LaurentPolyZ2,
    pub pos: (i32, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GElem {
    pub lamps: LocalizedLamp,
    pub pos: (i32, i32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KElem {
    pub lamps: LocalizedLamp,
    pub pos: (i32, i32, i32),
}

impl HElem {
    pub fn new(lamps: LaurentPolyZ2, pos: (i32, i32)) -> Self {
        Self { lamps, pos }
    }

    pub fn identity() -> Self {
        Self::new(LaurentPolyZ2::zero(), (0, 0))
    }

    pub fn diag(&self) -> i64 {
        self.pos.0 as i64 + self.pos.1 as i64
    }

    pub fn mul(&self, h: &HElem) -> HElem {
        HElem {
            lamps: h.lamps.add(&self.lamps.shift(h.diag())),
            pos: (self.pos.0 + h.pos.0, self.pos.1 + h.pos.1),
        }
    }

    pub fn inv(&self) -> HElem {
        HElem {
            lamps: self.lamps.shift(-self.diag()),
            pos: (-self.pos.0, -self.pos.1),
        }
    }

    pub fn is_a(&self) -> bool {
        self.pos == (0, 0) && self.lamps == LaurentPolyZ2::monomial(0)
    }
}

impl KElem {
    pub fn new(lamps: LocalizedLamp, pos: (i32, i32, i32)) -> Self {
        Self { lamps, pos }
    }

    pub fn identity() -> Self {
        Self::new(LocalizedLamp::zero(), (0, 0, 0))
    }

    pub fn diag(&self) -> i64 {
        self.pos.1 as i64 + self.pos.2 as i64
    }

    pub fn mul(&self, h: &KElem) -> KElem {
        KElem {
            lamps: h.lamps.add(&self.lamps.scale(h.diag(), h.pos.0 as i64)),
            pos: (
                self.pos.0 + h.pos.0,
                self.pos.1 + h.pos.1,
                self.pos.2 + h.pos.2,
            ),
        }
    }

    pub fn inv(&self) -> KElem {
        KElem {
            lamps: self.lamps.scale(-self.diag(), -(self.pos.0 as i64)),
            pos: (-self.pos.0, -self.pos.1, -self.pos.2),
        }
    }

    pub fn is_a(&self) -> bool {
        self.pos == (0, 0, 0) && self.lamps == LocalizedLamp::monomial(0)
    }
}

impl GElem {
    pub fn new(lamps: LocalizedLamp, pos: (i32, i32)) -> Self {
        Self { lamps, pos }
    }

    pub fn identity() -> Self {
        Self::new(LocalizedLamp::zero(), (0, 0))
    }

    pub fn mul(&self, h: &GElem) -> GElem {
        GElem {
            lamps: h.lamps.add(&self.lamps.scale(h.pos.1 as i64, h.pos.0 as i64)),
            pos: (self.pos.0 + h.pos.0, self.pos.1 + h.pos.1),
        }
    }

    pub fn inv(&self) -> GElem {
        GElem {
            lamps: self.lamps.scale(-(self.pos.1 as i64), -(self.pos.0 as i64)),
            pos: (-self.pos.0, -self.pos.1),
        }
    }
}

impl LLElem {
    pub fn new(lamps: LaurentPolyZ2, pos: i32) -> Self {
        Self { lamps, pos }
    }

    pub fn identity() -> Self {
        Self::new(LaurentPolyZ2::zero(), 0)
    }

    pub fn mul(&self, h: &LLElem) -> LLElem {
        LLElem {
            lamps: h.lamps.add(&self.lamps.shift(h.pos as i64)),
            pos: self.pos + h.pos,
        }
    }

    pub fn inv(&self) -> LLElem {
        LLElem {
            lamps: self.lamps.shift(-(self.pos as i64)),
            pos: -self.pos,
        }
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{{lamps={};pos=({},{})}}", self.lamps, self.pos.0, self.pos.1)
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q, r) = self.pos;
        write!(f, "K{{{};pos=({p},{q},{r})}}", self.lamps)
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{{{};pos=({},{})}}", self.lamps, self.pos.0, self.pos.1)
    }
}

impl fmt::Display for LLElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LL{{lamps={};pos={}}}", self.lamps, self.pos)
    }
}

impl fmt::Display for ZElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z{{{}}}", self.0)
    }
}

fn signed(l: Letter) -> i32 {
    if l.inverse {
        -1
    } else {
        1
    }
}

fn illegal(group: &'static str, l: Letter) -> GroupError {
    GroupError::IllegalLetter {
        group,
        letter: l.to_string(),
    }
}

/// `Z = <a>`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZGroup;

/// `Z_2 wr Z = <a, t>`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Lamplighter;

/// `H = (sum_Z Z_2) x| Z^2 = <a, t, u>`.
#[derive(Debug, Clone, Copy, Default)]
pub struct HGroup;

/// `G = <a, s, t | a^2, [a,a^t], [s,t], a^-s a a^t>`.
#[derive(Debug, Clone, Copy, Default)]
pub struct GGroup;

/// `K = <a, s, t, u | a^2, [a,a^t], [s,t], [s,u], [t,u], a^-s a a^t, a^-u a^t>`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KGroup;

impl Group for ZGroup {
    type Elem = ZElem;

    fn name(&self) -> &'static str {
        "Z"
    }

    fn identity(&self) -> ZElem {
        ZElem(0)
    }

    fn mul(&self, g: &ZElem, h: &ZElem) -> ZElem {
        ZElem(g.0 + h.0)
    }

    fn inv(&self, g: &ZElem) -> ZElem {
        ZElem(-g.0)
    }

    fn letter(&self, l: Letter) -> Result<ZElem, GroupError> {
        match l.base {
            Base::A => Ok(ZElem(signed(l) as i64)),
            _ => Err(illegal("Z", l)),
        }
    }
}

impl Group for Lamplighter {
    type Elem = LLElem;

    fn name(&self) -> &'static str {
        "LL"
    }

    fn identity(&self) -> LLElem {
        LLElem::identity()
    }

    fn mul(&self, g: &LLElem, h: &LLElem) -> LLElem {
        g.mul(h)
    }

    fn inv(&self, g: &LLElem) -> LLElem {
        g.inv()
    }

    fn letter(&self, l: Letter) -> Result<LLElem, GroupError> {
        match l.base {
            Base::A => Ok(LLElem::new(LaurentPolyZ2::one(), 0)),
            Base::T => Ok(LLElem::new(LaurentPolyZ2::zero(), signed(l))),
            _ => Err(illegal("LL", l)),
        }
    }
}

impl Group for HGroup {
    type Elem = HElem;

    fn name(&self) -> &'static str {
        "H"
    }

    fn identity(&self) -> HElem {
        HElem::identity()
    }

    fn mul(&self, g: &HElem, h: &HElem) -> HElem {
        g.mul(h)
    }

    fn inv(&self, g: &HElem) -> HElem {
        g.inv()
    }

    fn letter(&self, l: Letter) -> Result<HElem, GroupError> {
        let z = LaurentPolyZ2::zero();
        match l.base {
            Base::A => Ok(HElem::new(LaurentPolyZ2::one(), (0, 0))),
            Base::T => Ok(HElem::new(z, (signed(l), 0))),
            Base::U => Ok(HElem::new(z, (0, signed(l)))),
            Base::S => Err(illegal("H", l)),
        }
    }

    fn is_a(&self, g: &HElem) -> bool {
        g.is_a()
    }
}

impl Group for GGroup {
    type Elem = GElem;

    fn name(&self) -> &'static str {
        "G"
    }

    fn identity(&self) -> GElem {
        GElem::identity()
    }

    fn mul(&self, g: &GElem, h: &GElem) -> GElem {
        g.mul(h)
    }

    fn inv(&self, g: &GElem) -> GElem {
        g.inv()
    }

    fn letter(&self, l: Letter) -> Result<GElem, GroupError> {
        let z = LocalizedLamp::zero();
        match l.base {
            Base::A => Ok(GElem::new(LocalizedLamp::monomial(0), (0, 0))),
            Base::S => Ok(GElem::new(z, (signed(l), 0))),
            Base::T => Ok(GElem::new(z, (0, signed(l)))),
            Base::U => Err(illegal("G", l)),
        }
    }
}

impl Group for KGroup {
    type Elem = KElem;

    fn name(&self) -> &'static str {
        "K"
    }

    fn identity(&self) -> KElem {
        KElem::identity()
    }

    fn mul(&self, g: &KElem, h: &KElem) -> KElem {
        g.mul(h)
    }

    fn inv(&self, g: &KElem) -> KElem {
        g.inv()
    }

    fn letter(&self, l: Letter) -> Result<KElem, GroupError> {
        let z = LocalizedLamp::zero();
        let e = signed(l);
        match l.base {
            Base::A => Ok(KElem::new(LocalizedLamp::monomial(0), (0, 0, 0))),
            Base::S => Ok(KElem::new(z, (e, 0, 0))),
            Base::T => Ok(KElem::new(z, (0, e, 0))),
            Base::U => Ok(KElem::new(z, (0, 0, e))),
        }
    }

    fn is_a(&self, g: &KElem) -> bool {
        g.is_a()
    }
}

/// Lamplighter state `(illuminated lamps, (q, r))` acted on by `H`.
pub type HState = (LaurentPolyZ2, (i64, i64));

/// The left action of a single letter on an `H` state: `a` toggles lamp
/// `q + r`, `t` and `u` move the lamplighter.
pub fn act_on_state_h(l: Letter, state: &HState) -> Result<HState, GroupError> {
    let (lamps, (q, r)) = state;
    let e = signed(l) as i64;
    Ok(match l.base {
        Base::A => (lamps.add(&LaurentPolyZ2::monomial(q + r)), (*q, *r)),
        Base::T => (lamps.clone(), (q + e, *r)),
        Base::U => (lamps.clone(), (*q, r + e)),
        Base::S => return Err(illegal("H", l)),
    })
}

/// Cannon's model for `Z_2 wr Z`.
pub fn act_on_state_ll(l: Letter, state: &(LaurentPolyZ2, i64)) -> Result<(LaurentPolyZ2, i64), GroupError> {
    let (lamps, q) = state;
    Ok(match l.base {
        Base::A => (lamps.add(&LaurentPolyZ2::monomial(*q)), *q),
        Base::T => (lamps.clone(), q + signed(l) as i64),
        _ => return Err(illegal("LL", l)),
    })
}

/// Folds the letters of `w` right to left over the empty state.
pub fn act_word_h(w: &super::Word) -> Result<HState, GroupError> {
    w.letters()
        .iter()
        .rev()
        .try_fold((LaurentPolyZ2::zero(), (0, 0)), |s, &l| act_on_state_h(l, &s))
}

pub fn act_word_ll(w: &super::Word) -> Result<(LaurentPolyZ2, i64), GroupError> {
    w.letters()
        .iter()
        .rev()
        .try_fold((LaurentPolyZ2::zero(), 0), |s, &l| act_on_state_ll(l, &s))
}

/// `Phi : K -> G`, identifying `t` and `u`.
pub fn retract_k_to_g(g: &KElem) -> GElem {
    let (p, q, r) = g.pos;
    GElem::new(g.lamps.clone(), (p, q + r))
}

/// `H -> Z_2 wr Z`, identifying `t` and `u`.
pub fn retract_h_to_ll(g: &HElem) -> LLElem {
    LLElem::new(g.lamps.clone(), g.pos.0 + g.pos.1)
}

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{HElem, KElem};
use crate::lamp::LocalizedLamp;

use super::PathError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Seg {
    /// `d + 1`, parallel to the plane `q = r`.
    Dp,
    Dm,
    /// `e + 1`, perpendicular to the plane `q = r`.
    Ep,
    Em,
    /// `p + 1`.
    Up,
    Down,
}

impl Seg {
    /// `(dp, dd, de)`.
    pub fn delta(self) -> (i64, i64, i64) {
        match self {
            Seg::Dp => (0, 1, 0),
            Seg::Dm => (0, -1, 0),
            Seg::Ep => (0, 0, 1),
            Seg::Em => (0, 0, -1),
            Seg::Up => (1, 0, 0),
            Seg::Down => (-1, 0, 0),
        }
    }

    pub fn is_vertical(self) -> bool {
        matches!(self, Seg::Up | Seg::Down)
    }

    pub fn is_parallel(self) -> bool {
        matches!(self, Seg::Dp | Seg::Dm)
    }

    pub fn is_perpendicular(self) -> bool {
        matches!(self, Seg::Ep | Seg::Em)
    }

    pub fn is_diagonal(self) -> bool {
        !self.is_vertical()
    }

    pub fn reverse(self) -> Seg {
        match self {
            Seg::Dp => Seg::Dm,
            Seg::Dm => Seg::Dp,
            Seg::Ep => Seg::Em,
            Seg::Em => Seg::Ep,
            Seg::Up => Seg::Down,
            Seg::Down => Seg::Up,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Seg::Dp => "D+",
            Seg::Dm => "D-",
            Seg::Ep => "E+",
            Seg::Em => "E-",
            Seg::Up => "P+",
            Seg::Down => "P-",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub p: i64,
    pub d: i64,
    pub e: i64,
}

impl Vertex {
    pub fn new(p: i64, d: i64, e: i64) -> Self {
        Self { p, d, e }
    }

    pub fn step(self, s: Seg) -> Vertex {
        let (dp, dd, de) = s.delta();
        Vertex::new(self.p + dp, self.d + dd, self.e + de)
    }

    /// Over an integer point of the `q,r`-plane.
    pub fn is_lattice(self) -> bool {
        (self.d - self.e).rem_euclid(2) == 0
    }

    /// `(q, r)`; meaningful for lattice vertices.
    pub fn qr(self) -> (i64, i64) {
        ((self.d + self.e).div_euclid(2), (self.d - self.e).div_euclid(2))
    }

    pub fn from_pqr(p: i64, q: i64, r: i64) -> Self {
        Vertex::new(p, q + r, q - r)
    }

    pub fn button(self) -> LocalizedLamp {
        LocalizedLamp::button(self.p, self.d)
    }
}

/// A path from the origin with buttons pressed at a set of vertex indices.
/// Vertex `i` is the point reached after `i` segments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DecoratedPath {
    pub segs: Vec<Seg>,
    pub buttons: BTreeSet<usize>,
}

impl DecoratedPath {
    pub fn new(segs: Vec<Seg>, buttons: impl IntoIterator<Item = usize>) -> Self {
        let mut path = Self {
            segs,
            buttons: BTreeSet::new(),
        };
        for b in buttons {
            path.toggle(b);
        }
        path
    }

    /// Presses twice at one index cancel.
    pub fn toggle(&mut self, index: usize) {
        assert!(index <= self.segs.len(), "vertex {index} is off the path");
        if !self.buttons.remove(&index) {
            self.buttons.insert(index);
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        vertices_of(&self.segs)
    }

    pub fn end(&self) -> Vertex {
        self.segs.iter().fold(Vertex::default(), |v, &s| v.step(s))
    }

    pub fn vertical_count(&self) -> usize {
        self.segs.iter().filter(|s| s.is_vertical()).count()
    }

    pub fn diagonal_count(&self) -> usize {
        self.segs.len() - self.vertical_count()
    }

    /// `V + D/2`, the length of the word read from a word-like path.
    pub fn word_length(&self) -> usize {
        self.vertical_count() + self.diagonal_count() / 2
    }

    pub fn lamps(&self) -> LocalizedLamp {
        let verts = self.vertices();
        self.buttons
            .iter()
            .fold(LocalizedLamp::zero(), |acc, &i| acc.add(&verts[i].button()))
    }

    pub fn is_word_like(&self) -> bool {
        let verts = self.vertices();
        self.segs
            .iter()
            .enumerate()
            .all(|(i, s)| !s.is_vertical() || verts[i].is_lattice())
    }

    pub fn to_k_elem(&self) -> Result<KElem, PathError> {
        let end = self.end();
        if !end.is_lattice() {
            return Err(PathError::PathNotWordlike {
                at: self.segs.len(),
                reason: "path ends off the lattice",
            });
        }
        let (q, r) = end.qr();
        Ok(KElem::new(self.lamps(), (end.p as i32, q as i32, r as i32)))
    }

    pub fn to_h_elem(&self) -> Result<HElem, PathError> {
        if self.vertical_count() > 0 {
            return Err(PathError::Precondition("vertical segment in a D-path".into()));
        }
        let k = self.to_k_elem()?;
        let lamps = k.lamps.to_poly().expect("p = 0 buttons are monomials");
        Ok(HElem::new(lamps, (k.pos.1, k.pos.2)))
    }
}

pub(crate) fn vertices_of(segs: &[Seg]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(segs.len() + 1);
    let mut v = Vertex::default();
    out.push(v);
    for &s in segs {
        v = v.step(s);
        out.push(v);
    }
    out
}

impl fmt::Display for DecoratedPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut tokens = Vec::new();
        for i in 0..=self.segs.len() {
            if self.buttons.contains(&i) {
                tokens.push("*");
            }
            if let Some(s) = self.segs.get(i) {
                tokens.push(s.symbol());
            }
        }
        f.write_str(&tokens.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamp::LaurentPolyZ2;

    #[test]
    fn geometry() {
        let path = DecoratedPath::new(vec![Seg::Dp, Seg::Ep, Seg::Up], [3]);
        let end = path.end();
        assert_eq!(end, Vertex::new(1, 1, 1));
        assert!(end.is_lattice());
        assert_eq!(end.qr(), (1, 0));
        assert!(!Vertex::new(0, 1, 0).is_lattice());
        assert!(Vertex::new(0, -1, 1).is_lattice());
        assert_eq!(Vertex::from_pqr(0, 2, -1), Vertex::new(0, 1, 3));
        assert_eq!(path.word_length(), 2);
        let k = path.to_k_elem().unwrap();
        assert_eq!(k.pos, (1, 1, 0));
        assert_eq!(k.lamps.to_poly().unwrap(), LaurentPolyZ2::from_exponents([1, 2]));
    }

    #[test]
    fn toggles_cancel() {
        let mut path = DecoratedPath::new(vec![Seg::Dp, Seg::Dp], [0, 2]);
        path.toggle(0);
        assert_eq!(path.buttons.iter().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(path.to_string(), "D+ D+ *");
    }

    #[test]
    fn word_like_means_vertical_over_lattice() {
        assert!(DecoratedPath::new(vec![Seg::Up, Seg::Dp, Seg::Ep, Seg::Down], []).is_word_like());
        assert!(!DecoratedPath::new(vec![Seg::Dp, Seg::Up, Seg::Ep], []).is_word_like());
    }
}

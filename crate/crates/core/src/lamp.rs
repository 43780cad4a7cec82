//! GF(2) Laurent polynomials and their localization at `1 + x`.
//!
//! A [`LaurentPolyZ2`] is a finite set of integer exponents, stored as a
//! dense bit string anchored at its lowest exponent. Lamp configurations of
//! `H` and the lamplighter group live here directly; the lamp modules of `G`
//! and `K` need `1 + x` to be invertible, which [`LocalizedLamp`] provides.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

/// Largest exponent magnitude accepted anywhere in the crate.
pub const EXPONENT_GUARD: i64 = 1 << 31;

type Words = SmallVec<[u64; 2]>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LampError {
    #[error("polynomial with support {0} is not divisible by 1+x")]
    NotDivisible(String),
    #[error("Pascal row requested for negative p = {0}")]
    NegativeRow(i64),
}

/// Element of `GF(2)[x, x^-1]`, i.e. a finite set of exponents.
///
/// Bit `j` of `words` is the coefficient of `x^(min + j)`. The zero
/// polynomial has no words and `min == 0`; otherwise bit 0 is set and the
/// last word is nonzero, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct LaurentPolyZ2 {
    min: i64,
    words: Words,
}

fn guard(e: i64) -> i64 {
    assert!(
        e.abs() <= EXPONENT_GUARD,
        "exponent {e} exceeds the guard 2^31"
    );
    e
}

/// `dst ^= src << offset` on little-endian bit strings; `dst` must be long enough.
fn xor_shifted(dst: &mut [u64], src: &[u64], offset: usize) {
    let (wq, wr) = (offset / 64, offset % 64);
    for (i, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        dst[i + wq] ^= w << wr;
        if wr != 0 {
            let hi = w >> (64 - wr);
            if hi != 0 {
                dst[i + wq + 1] ^= hi;
            }
        }
    }
}

impl LaurentPolyZ2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(e: i64) -> Self {
        let mut words = Words::new();
        words.push(1);
        Self {
            min: guard(e),
            words,
        }
    }

    /// Builds the set of the given exponents; repeats are ignored.
    pub fn from_exponents<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        let mut v: Vec<i64> = exps.into_iter().map(guard).collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Self::zero();
        }
        let min = v[0];
        let span = (v[v.len() - 1] - min) as usize;
        let mut words: Words = smallvec::smallvec![0; span / 64 + 1];
        for e in v {
            let j = (e - min) as usize;
            words[j / 64] |= 1 << (j % 64);
        }
        Self { min, words }
    }

    fn from_raw(min: i64, mut words: Words) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        let Some(first) = words.iter().position(|&w| w != 0) else {
            return Self::zero();
        };
        let tz = words[first].trailing_zeros() as usize;
        let drop = first * 64 + tz;
        if drop == 0 {
            return Self { min: guard(min), words };
        }
        let src: Words = words.drain(first..).collect();
        let mut out: Words = smallvec::smallvec![0; src.len()];
        for i in 0..src.len() {
            let lo = src[i] >> tz;
            let hi = if tz != 0 && i + 1 < src.len() {
                src[i + 1] << (64 - tz)
            } else {
                0
            };
            out[i] = lo | hi;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Self {
            min: guard(min + drop as i64),
            words: out,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Value at `x = 1`; zero exactly when `1 + x` divides the polynomial.
    pub fn parity(&self) -> bool {
        self.words.iter().fold(0u32, |acc, w| acc ^ (w.count_ones() & 1)) == 1
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        let last = *self.words.last()?;
        let top = (self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize;
        Some(self.min + top as i64)
    }

    pub fn contains(&self, e: i64) -> bool {
        if self.is_zero() || e < self.min {
            return false;
        }
        let j = (e - self.min) as usize;
        self.words
            .get(j / 64)
            .is_some_and(|w| (w >> (j % 64)) & 1 == 1)
    }

    /// Exponents in increasing order.
    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.words.iter().enumerate().flat_map(move |(i, &w)| {
            let base = self.min + 64 * i as i64;
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros();
                rest &= rest - 1;
                Some(base + tz as i64)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.support().collect()
    }

    fn bit_span(&self) -> usize {
        self.words.len() * 64
    }

    /// Symmetric difference of supports.
    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let base = self.min.min(other.min);
        let oa = (self.min - base) as usize;
        let ob = (other.min - base) as usize;
        let bits = (oa + self.bit_span()).max(ob + other.bit_span());
        let mut words: Words = smallvec::smallvec![0; bits / 64 + 1];
        xor_shifted(&mut words, &self.words, oa);
        xor_shifted(&mut words, &other.words, ob);
        Self::from_raw(base, words)
    }

    /// Multiplication by `x^m`.
    pub fn shift(&self, m: i64) -> Self {
        if self.is_zero() || m == 0 {
            return self.clone();
        }
        Self {
            min: guard(self.min + m),
            words: self.words.clone(),
        }
    }

    /// Multiplication by `1 + x^(2^j)`-style factors: `f + x^m f` for `m >= 0`.
    fn add_self_shifted(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let bits = self.bit_span() + m;
        let mut words: Words = smallvec::smallvec![0; bits / 64 + 1];
        xor_shifted(&mut words, &self.words, 0);
        xor_shifted(&mut words, &self.words, m);
        Self::from_raw(self.min, words)
    }

    /// Multiplication by `1 + x`.
    pub fn mul_onepx(&self) -> Self {
        self.add_self_shifted(1)
    }

    /// Multiplication by `(1 + x)^n`, using `(1+x)^(2^j) = 1 + x^(2^j)`.
    pub fn mul_onepx_pow(&self, n: u32) -> Self {
        let mut out = self.clone();
        let mut bit = 0;
        while (n >> bit) != 0 {
            if (n >> bit) & 1 == 1 {
                out = out.add_self_shifted(1 << bit);
            }
            bit += 1;
        }
        out
    }

    /// Exact division by `1 + x`, defined when the support has even size.
    pub fn div_onepx(&self) -> Result<Self, LampError> {
        if self.parity() {
            return Err(LampError::NotDivisible(self.to_string()));
        }
        // (1+x) g = f  <=>  g_j = f_0 + ... + f_j, a running prefix XOR.
        let mut words = self.words.clone();
        let mut carry = 0u64;
        for w in words.iter_mut() {
            let mut v = *w;
            v ^= v << 1;
            v ^= v << 2;
            v ^= v << 4;
            v ^= v << 8;
            v ^= v << 16;
            v ^= v << 32;
            if carry == 1 {
                v = !v;
            }
            carry = v >> 63;
            *w = v;
        }
        debug_assert_eq!(carry, 0);
        Ok(Self::from_raw(self.min, words))
    }

    /// Largest `v` with `(1+x)^v` dividing `self`, and the cofactor.
    pub fn split_onepx(&self) -> (u32, Self) {
        let mut v = 0;
        let mut f = self.clone();
        if f.is_zero() {
            return (0, f);
        }
        while let Ok(g) = f.div_onepx() {
            f = g;
            v += 1;
        }
        (v, f)
    }
}

impl fmt::Display for LaurentPolyZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.support().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LaurentPolyZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::ops::Add for &LaurentPolyZ2 {
    type Output = LaurentPolyZ2;
    fn add(self, rhs: Self) -> LaurentPolyZ2 {
        LaurentPolyZ2::add(self, rhs)
    }
}

/// Support of `(1+x)^p`, built by the XOR-shift recurrence.
pub fn pascal_row(p: i64) -> Result<LaurentPolyZ2, LampError> {
    if p < 0 {
        return Err(LampError::NegativeRow(p));
    }
    let mut row = LaurentPolyZ2::one();
    for _ in 0..p {
        row = row.mul_onepx();
    }
    Ok(row)
}

/// `num / (1+x)^k` in `GF(2)[x, x^-1, (1+x)^-1]`.
///
/// Canonical: zero is `(0, 0)`; otherwise `num` has odd support, so `k` is
/// the exact `(1+x)`-adic valuation with the sign flipped and may be
/// negative. `(1+x)^6` is stored as `([0], -6)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct LocalizedLamp {
    num: LaurentPolyZ2,
    k: i64,
}

impl LocalizedLamp {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn canonicalize(num: LaurentPolyZ2, k: i64) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (v, rest) = num.split_onepx();
        Self {
            num: rest,
            k: k - v as i64,
        }
    }

    pub fn from_poly(f: LaurentPolyZ2) -> Self {
        Self::canonicalize(f, 0)
    }

    pub fn monomial(e: i64) -> Self {
        Self {
            num: LaurentPolyZ2::monomial(e),
            k: 0,
        }
    }

    /// Button vector `x^d (1+x)^p`.
    pub fn button(p: i64, d: i64) -> Self {
        Self {
            num: LaurentPolyZ2::monomial(d),
            k: -p,
        }
    }

    pub fn num(&self) -> &LaurentPolyZ2 {
        &self.num
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.k <= 0
    }

    /// The underlying Laurent polynomial, when the denominator cancels.
    pub fn to_poly(&self) -> Option<LaurentPolyZ2> {
        self.is_polynomial()
            .then(|| self.num.mul_onepx_pow((-self.k) as u32))
    }

    /// `self * (1+x)^j` as a polynomial, for any `j >= k`.
    pub fn numerator_at(&self, j: i64) -> LaurentPolyZ2 {
        assert!(self.is_zero() || j >= self.k, "denominator not cleared");
        if self.is_zero() {
            return LaurentPolyZ2::zero();
        }
        self.num.mul_onepx_pow((j - self.k) as u32)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let k = self.k.max(other.k);
        let sum = self.numerator_at(k).add(&other.numerator_at(k));
        Self::canonicalize(sum, k)
    }

    /// Multiplication by `x^m (1+x)^p`; `p` may be negative.
    pub fn scale(&self, m: i64, p: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.shift(m),
            k: self.k - p,
        }
    }
}

impl From<LaurentPolyZ2> for LocalizedLamp {
    fn from(f: LaurentPolyZ2) -> Self {
        Self::from_poly(f)
    }
}

/// Polynomial elements print expanded with `k=0`, the rest print `(num, k)`
/// with `k > 0`; both forms are unique, so the text is injective.
impl fmt::Display for LocalizedLamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_poly() {
            Some(p) => write!(f, "num={p};k=0"),
            None => write!(f, "num={};k={}", self.num, self.k),
        }
    }
}

impl fmt::Debug for LocalizedLamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, k={})", self.num, self.k)
    }
}

/// Multiplies every value by a common `(1+x)^j` so all become polynomials.
/// Linear relations among the inputs are unchanged.
pub fn clear_denominators(values: &[&LocalizedLamp]) -> Vec<LaurentPolyZ2> {
    let j = values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.k)
        .max()
        .unwrap_or(0);
    values.iter().map(|v| v.numerator_at(j)).collect()
}

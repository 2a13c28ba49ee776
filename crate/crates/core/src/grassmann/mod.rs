//! Characteristic classes on the Grassmannian of 2-planes and integration over it.
//!
//! Classes are stored as polynomials in `e1 = c1(Q)` and `e2 = c2(Q)`, where `Q`
//! is the rank-2 universal quotient bundle with Chern roots `alpha`, `beta`.

mod schur;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::Rat;

pub use schur::{complete_homogeneous, integrate, schur_class, schur_expand, SchurExpansion};

/// Codimension of `e1^i e2^j`.
pub fn codim(i: u32, j: u32) -> u32 {
    i + 2 * j
}

/// A polynomial in `e1`, `e2` with rational coefficients. Zero terms are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymClass {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl SymClass {
    pub fn zero() -> Self {
        SymClass::default()
    }

    pub fn one() -> Self {
        SymClass::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        SymClass::monomial(0, 0, c)
    }

    /// `c * e1^i * e2^j`.
    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut s = SymClass::zero();
        s.add_term(i, j, c);
        s
    }

    pub fn e1() -> Self {
        SymClass::monomial(1, 0, Rat::one())
    }

    pub fn e2() -> Self {
        SymClass::monomial(0, 1, Rat::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut s = SymClass::zero();
        for ((i, j), c) in terms {
            s.add_term(i, j, c);
        }
        s
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rat)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest codimension with a nonzero term.
    pub fn max_codim(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| codim(i, j)).max()
    }

    /// `Some(r)` when every term has codimension `r`; the zero class has none.
    pub fn homogeneous_codim(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|&(i, j)| codim(i, j));
        let first = it.next()?;
        it.all(|c| c == first).then_some(first)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return SymClass::zero();
        }
        SymClass { terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    /// Drops every term of codimension above `cutoff`.
    pub fn truncate(&self, cutoff: u32) -> Self {
        SymClass {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| codim(i, j) <= cutoff)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Homogeneous codim-`r` part.
    pub fn graded_part(&self, r: u32) -> Self {
        SymClass {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| codim(i, j) == r)
                .map(|(&k, v)| (k, v.clone()))
                .collect(),
        }
    }

    /// Product with every term above `cutoff` discarded.
    pub fn mul_truncated(&self, rhs: &Self, cutoff: u32) -> Self {
        let mut out = SymClass::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                if codim(i1 + i2, j1 + j2) <= cutoff {
                    out.add_term(i1 + i2, j1 + j2, a * b);
                }
            }
        }
        out
    }

    pub fn pow_truncated(&self, exp: u32, cutoff: u32) -> Self {
        let mut acc = SymClass::one();
        for _ in 0..exp {
            acc = acc.mul_truncated(self, cutoff);
        }
        acc
    }

    /// Inverse power series up to codimension `cutoff`.
    pub fn inverse(&self, cutoff: u32) -> Result<Self> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::NonUnitSeries);
        }
        let c0_inv = c0.recip()?;
        // x = -(self - c0) / c0, and 1/self = (1/c0) * sum x^n
        let mut x = self.clone();
        x.terms.remove(&(0, 0));
        let x = x.scale(&-&c0_inv);
        let mut out = SymClass::one();
        let mut power = SymClass::one();
        for _ in 0..cutoff {
            power = power.mul_truncated(&x, cutoff);
            if power.is_zero() {
                break;
            }
            out = &out + &power;
        }
        Ok(out.scale(&c0_inv))
    }

    /// Truncated quotient `numer / denom` up to codimension `cutoff`.
    pub fn series_quotient(numer: &Self, denom: &Self, cutoff: u32) -> Result<Self> {
        Ok(numer.mul_truncated(&denom.inverse(cutoff)?, cutoff))
    }

    /// Expands into a polynomial in the Chern roots.
    pub fn to_roots(&self) -> RootPoly {
        let e1 = RootPoly::from_terms([((1, 0), Rat::one()), ((0, 1), Rat::one())]);
        let e2 = RootPoly::from_terms([((1, 1), Rat::one())]);
        let mut out = RootPoly::default();
        for (&(i, j), c) in &self.terms {
            out = &out + &e1.pow(i).mul(&e2.pow(j)).scale(c);
        }
        out
    }
}

impl Add for &SymClass {
    type Output = SymClass;
    fn add(self, rhs: &SymClass) -> SymClass {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &SymClass {
    type Output = SymClass;
    fn sub(self, rhs: &SymClass) -> SymClass {
        self + &-rhs
    }
}

impl Neg for &SymClass {
    type Output = SymClass;
    fn neg(self) -> SymClass {
        SymClass { terms: self.terms.iter().map(|(&k, v)| (k, -v)).collect() }
    }
}

impl Mul for &SymClass {
    type Output = SymClass;
    fn mul(self, rhs: &SymClass) -> SymClass {
        self.mul_truncated(rhs, u32::MAX)
    }
}

impl fmt::Display for SymClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (&(i, j), c) in &self.terms {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("e1".to_string()),
                _ => mono.push(format!("e1^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("e2".to_string()),
                _ => mono.push(format!("e2^{j}")),
            }
            parts.push(if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono.join("*")
            } else {
                format!("{c}*{}", mono.join("*"))
            });
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SymClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    i: u32,
    j: u32,
    coeff: Rat,
}

#[derive(Serialize, Deserialize)]
struct SymClassRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for SymClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymClassRepr {
            terms: self.terms().map(|(i, j, c)| TermRepr { i, j, coeff: c.clone() }).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymClassRepr::deserialize(deserializer)?;
        Ok(SymClass::from_terms(repr.terms.into_iter().map(|t| ((t.i, t.j), t.coeff))))
    }
}

/// Polynomial in the two Chern roots; key `(a, b)` is `alpha^a beta^b`.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct RootPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl RootPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut p = RootPoly::default();
        for ((a, b), c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    fn add_term(&mut self, a: u32, b: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    /// `1 + p*alpha + q*beta`.
    pub fn linear_unit(p: i64, q: i64) -> Self {
        RootPoly::from_terms([((0, 0), Rat::one()), ((1, 0), Rat::from(p)), ((0, 1), Rat::from(q))])
    }

    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = RootPoly::default();
        for (&(a1, b1), x) in &self.terms {
            for (&(a2, b2), y) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, x * y);
            }
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = RootPoly::from_terms([((0, 0), Rat::one())]);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RootPoly::from_terms(self.terms.iter().map(|(&k, v)| (k, v * c)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(a, b), c)| self.coeff(b, a) == *c)
    }

    /// Rewrites a symmetric polynomial in `e1`, `e2` by repeatedly removing the
    /// leading `alpha^a beta^b` (a >= b) with `e1^(a-b) e2^b`.
    pub fn to_symclass(&self) -> Result<SymClass> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut rest = self.clone();
        let mut out = SymClass::zero();
        // Highest alpha-exponent first; the subtraction only creates smaller ones
        // at the same total degree.
        while let Some((&(a, b), c)) = rest.terms.iter().next_back() {
            debug_assert!(a >= b);
            let c = c.clone();
            let mono = SymClass::monomial(a - b, b, Rat::one()).to_roots();
            rest = &rest - &mono.scale(&c);
            out.add_term(a - b, b, c);
        }
        Ok(out)
    }
}

impl Add for &RootPoly {
    type Output = RootPoly;
    fn add(self, rhs: &RootPoly) -> RootPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &RootPoly {
    type Output = RootPoly;
    fn sub(self, rhs: &RootPoly) -> RootPoly {
        self + &rhs.scale(&Rat::from(-1))
    }
}

/// Total Chern class of `S^m Q`: the product of `1 + i*alpha + (m-i)*beta`.
pub fn chern_sym_power(m: u32) -> SymClass {
    let mut p = RootPoly::from_terms([((0, 0), Rat::one())]);
    for i in 0..=m {
        p = p.mul(&RootPoly::linear_unit(i64::from(i), i64::from(m - i)));
    }
    p.to_symclass().expect("symmetric by construction")
}

/// Top Chern class of `S^m Q`, of codimension `m + 1`.
pub fn ctop_sym_power(m: u32) -> SymClass {
    chern_sym_power(m).graded_part(m + 1)
}

/// Total Chern class of the dual of `Q`: `1 - e1 + e2`.
pub fn chern_dual() -> SymClass {
    SymClass::from_terms([((0, 0), Rat::one()), ((1, 0), Rat::from(-1)), ((0, 1), Rat::one())])
}

/// Special Schubert class `sigma_a = h_a(alpha, beta)`.
pub fn sigma(a: u32) -> SymClass {
    complete_homogeneous(a)
}

/// Segre classes of a bundle with total Chern class `chern` and rank `rank`,
/// up to codimension `cutoff`.
pub fn segre(chern: &SymClass, rank: u32, cutoff: u32) -> Result<SymClass> {
    if chern.max_codim().is_some_and(|c| c > rank) {
        return Err(Error::Precondition(format!(
            "total Chern class has terms above the rank {rank}"
        )));
    }
    chern.inverse(cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn sc(terms: &[((u32, u32), i64)]) -> SymClass {
        SymClass::from_terms(terms.iter().map(|&(k, c)| (k, Rat::from(c))))
    }

    #[test]
    fn sym_powers_small() {
        assert_eq!(chern_sym_power(1), sc(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]));
        assert_eq!(
            chern_sym_power(2),
            sc(&[((0, 0), 1), ((1, 0), 3), ((2, 0), 2), ((0, 1), 4), ((1, 1), 4)])
        );
        assert_eq!(ctop_sym_power(3), sc(&[((2, 1), 18), ((0, 2), 9)]));
    }

    #[test]
    fn sigma_small() {
        assert_eq!(sigma(0), SymClass::one());
        assert_eq!(sigma(1), SymClass::e1());
        assert_eq!(sigma(2), sc(&[((2, 0), 1), ((0, 1), -1)]));
        let inv = chern_dual().inverse(6).unwrap();
        for a in 0..=6 {
            assert_eq!(inv.graded_part(a), sigma(a));
        }
    }

    #[test]
    fn quotients() {
        let denom = &SymClass::one() - &SymClass::e1().scale(&rat(1, 2));
        let q = SymClass::series_quotient(&SymClass::one(), &denom, 2).unwrap();
        assert_eq!(q, SymClass::from_terms([((0, 0), Rat::one()), ((1, 0), rat(1, 2)), ((2, 0), rat(1, 4))]));
        let d = chern_dual();
        assert_eq!(SymClass::series_quotient(&d, &d, 8).unwrap(), SymClass::one());
        let q = SymClass::series_quotient(&chern_sym_power(1), &denom, 3).unwrap();
        assert_eq!(q.graded_part(1), SymClass::monomial(1, 0, rat(3, 2)));
        assert_eq!(SymClass::e1().inverse(3), Err(Error::NonUnitSeries));
    }

    #[test]
    fn segre_of_sym_square() {
        let s = segre(&chern_sym_power(2), 3, 2).unwrap();
        assert_eq!(s.graded_part(0), SymClass::one());
        assert_eq!(s.graded_part(1), sc(&[((1, 0), -3)]));
        assert_eq!(s.graded_part(2), sc(&[((2, 0), 7), ((0, 1), -4)]));
        assert!(segre(&chern_sym_power(2), 2, 2).is_err());
    }

    #[test]
    fn graded_parts() {
        let p = sc(&[((0, 0), 1), ((1, 0), 3), ((0, 1), 4)]);
        assert_eq!(p.graded_part(1), sc(&[((1, 0), 3)]));
        assert_eq!(p.graded_part(2).homogeneous_codim(), Some(2));
        assert_eq!(p.homogeneous_codim(), None);
    }

    #[test]
    fn asymmetric_root_poly_rejected() {
        let p = RootPoly::from_terms([((1, 0), Rat::one())]);
        assert_eq!(p.to_symclass(), Err(Error::NotSymmetric));
    }

    #[test]
    fn json_shape() {
        let s = SymClass::from_terms([((2, 0), rat(7517, 243)), ((0, 1), rat(2206, 243))]);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["terms"][0]["i"], 0);
        assert_eq!(v["terms"][0]["coeff"], "2206/243");
        let back: SymClass = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }
}

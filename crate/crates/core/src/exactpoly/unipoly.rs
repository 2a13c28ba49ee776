use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, trailing zeros trimmed.
///
/// The zero polynomial has no coefficients and `degree() == None`.
#[derive(Clone, PartialEq, Debug)]
pub struct UniPoly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c * x^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut v = vec![c.zero_like(); n];
        v.push(c);
        UniPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    /// Coefficients padded with zeros to exactly `len` entries.
    ///
    /// Needs a sample element for the zero when the polynomial is zero.
    pub fn padded(&self, len: usize, like: &F) -> Vec<F> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), like.zero_like());
        v
    }

    fn sample(&self, other: &Self) -> Option<F> {
        self.coeffs.first().or_else(|| other.coeffs.first()).cloned()
    }

    fn compatible(&self, other: &Self) -> bool {
        match (self.coeffs.first(), other.coeffs.first()) {
            (Some(a), Some(b)) => a.same_field(b),
            _ => true,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if !self.compatible(rhs) {
            return Err(Error::FieldMismatch);
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Ok(UniPoly::new(out))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg_ref())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if !self.compatible(rhs) {
            return Err(Error::FieldMismatch);
        }
        if self.is_zero() || rhs.is_zero() {
            return Ok(UniPoly::zero());
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(UniPoly::new(out))
    }

    fn neg_ref(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(F::negated).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        UniPoly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    /// Panics for the zero polynomial raised to the power 0, whose field is unknown.
    pub fn pow(&self, exp: u32) -> Self {
        if self.is_zero() && exp > 0 {
            return UniPoly::zero();
        }
        let one = self.coeffs.first().map(F::one_like).expect("0^0 over an unknown field");
        let mut acc = UniPoly::constant(one);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// `self(q(x))` by Horner's rule.
    pub fn compose(&self, q: &Self) -> Result<Self> {
        if !self.compatible(q) {
            return Err(Error::FieldMismatch);
        }
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(q)?.checked_add(&UniPoly::constant(c.clone()))?;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&c.from_rat_like(&(i as i64).into())))
                .collect(),
        )
    }

    /// Euclidean division over the coefficient field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if !self.compatible(divisor) {
            return Err(Error::FieldMismatch);
        }
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inverse()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let zero = lead_inv.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = rem[idx].minus(&c.times(d));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    /// Returns `(g, x, y)` with `self * x + other * y = g`.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        let Some(one) = self.sample(other).map(|c| c.one_like()) else {
            return Ok((UniPoly::zero(), UniPoly::zero(), UniPoly::zero()));
        };
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::constant(one.clone()), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::constant(one));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.checked_sub(&q.checked_mul(&s1)?)?;
            let t = t0.checked_sub(&q.checked_mul(&t1)?)?;
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        Ok((r0, s0, t0))
    }

    /// Monic greatest common divisor; zero when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (g, _, _) = self.ext_gcd(other)?;
        match g.leading() {
            None => Ok(g),
            Some(l) => Ok(g.scale(&l.inverse()?)),
        }
    }

    pub fn display_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_rat().map(|r| r.to_string()).unwrap_or_else(|| format!("({c})"));
            parts.push(match i {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{i}"),
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field> fmt::Display for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var("x"))
    }
}

// Operator forms panic on a field mismatch; the `checked_*` methods report it.
macro_rules! poly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<F: Field> $tr<&UniPoly<F>> for &UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: &UniPoly<F>) -> UniPoly<F> {
                self.$checked(rhs).expect("coefficient field mismatch")
            }
        }
        impl<F: Field> $tr<UniPoly<F>> for UniPoly<F> {
            type Output = UniPoly<F>;
            fn $m(self, rhs: UniPoly<F>) -> UniPoly<F> {
                self.$checked(&rhs).expect("coefficient field mismatch")
            }
        }
    };
}
poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

impl<F: Field> Neg for UniPoly<F> {
    type Output = UniPoly<F>;
    fn neg(self) -> UniPoly<F> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat;
    use crate::exactpoly::{NumberField, Rat};

    fn p(c: &[i64]) -> UniPoly<Rat> {
        UniPoly::new(c.iter().map(|&x| Rat::from(x)).collect())
    }

    #[test]
    fn binomial_square() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
    }

    #[test]
    fn zero_absorbs() {
        let z = UniPoly::<Rat>::zero();
        assert!((&p(&[3, 0, 5]) * &z).is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[0, 0]).degree(), None);
    }

    #[test]
    fn substitution_examples() {
        let half_affine = UniPoly::new(vec![rat(1, 2), rat(1, 2)]);
        let got = p(&[0, 0, 1]).compose(&half_affine).unwrap();
        assert_eq!(got, UniPoly::new(vec![rat(1, 4), rat(1, 2), rat(1, 4)]));
        assert_eq!(p(&[0, 1]).compose(&p(&[0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(p(&[1, 1]).compose(&p(&[0, 2])).unwrap(), p(&[1, 2]));
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 0, 1]) * &p(&[5, 0, 1]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, p(&[-1, 0, 1]));
        let (q, r) = a.div_rem(&p(&[2, 1])).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p(&[-1, 0, 1]));
        assert_eq!(a.div_rem(&UniPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let k1 = NumberField::cyclotomic_power_of_two(8);
        let k2 = NumberField::cyclotomic_power_of_two(4);
        let a = UniPoly::constant(k1.generator());
        let b = UniPoly::constant(k2.generator());
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        assert_eq!(a.checked_mul(&b), Err(Error::FieldMismatch));
        assert!(a.checked_mul(&a).is_ok());
    }

    #[test]
    fn derivative_and_eval() {
        let f = p(&[1, 2, 3]);
        assert_eq!(f.derivative(), p(&[2, 6]));
        assert_eq!(f.eval(&Rat::from(2)), Rat::from(17));
    }
}

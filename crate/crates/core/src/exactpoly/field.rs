use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Rat, UniPoly};
use crate::error::{Error, Result};

/// Exact coefficient field.
///
/// Elements of a number field carry their modulus, so "zero" and "one" are
/// produced from an existing element of the same field.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self>;

    /// Whether two elements live in the same field.
    fn same_field(&self, _other: &Self) -> bool {
        true
    }

    fn is_one(&self) -> bool {
        self.minus(&self.one_like()).is_zero()
    }

    fn divide(&self, rhs: &Self) -> Result<Self> {
        Ok(self.times(&rhs.inverse()?))
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }

    /// The element as a rational, if it lies in the prime field.
    fn to_rat(&self) -> Option<Rat>;
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        self.recip()
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn to_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// `Q[t]/(m(t))` for a monic modulus `m`. Irreducibility is the caller's
/// responsibility; a zero divisor met during inversion is reported as an error.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberField {
    modulus: Vec<Rat>,
}

impl NumberField {
    /// `modulus` lists coefficients lowest degree first and must be monic of degree >= 1.
    pub fn new(modulus: Vec<Rat>) -> Result<Arc<Self>> {
        let m = UniPoly::new(modulus);
        match m.degree() {
            Some(d) if d >= 1 && m.leading().is_some_and(|c| c.is_one()) => {
                Ok(Arc::new(NumberField { modulus: m.into_coeffs() }))
            }
            _ => Err(Error::Precondition(
                "number-field modulus must be monic of degree >= 1".into(),
            )),
        }
    }

    /// `Q[t]/(t^n + 1)`; cyclotomic for `n` a power of two.
    pub fn cyclotomic_power_of_two(n: usize) -> Arc<Self> {
        let mut m = vec![Rat::zero(); n + 1];
        m[0] = Rat::one();
        m[n] = Rat::one();
        NumberField::new(m).expect("monic")
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }

    fn modulus_poly(&self) -> UniPoly<Rat> {
        UniPoly::new(self.modulus.clone())
    }

    fn reduce(&self, p: UniPoly<Rat>) -> Vec<Rat> {
        let (_, r) = p.div_rem(&self.modulus_poly()).expect("modulus is nonzero");
        let mut c = r.into_coeffs();
        c.resize(self.degree(), Rat::zero());
        c
    }

    pub fn element(self: &Arc<Self>, coeffs: Vec<Rat>) -> NfElem {
        let coeffs = self.reduce(UniPoly::new(coeffs));
        NfElem { field: Arc::clone(self), coeffs }
    }

    pub fn from_rat(self: &Arc<Self>, r: Rat) -> NfElem {
        self.element(vec![r])
    }

    /// The class of `t`.
    pub fn generator(self: &Arc<Self>) -> NfElem {
        self.element(vec![Rat::zero(), Rat::one()])
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", UniPoly::new(self.modulus.clone()).display_var("t"))
    }
}

/// Element of a [`NumberField`], stored as a reduced polynomial in `t`.
///
/// Arithmetic between elements of different fields panics; the checked
/// polynomial operations report [`Error::FieldMismatch`] instead.
#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    coeffs: Vec<Rat>,
}

impl NfElem {
    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn check(&self, rhs: &Self) {
        assert!(self.same_field(rhs), "number-field elements from different fields");
    }

    fn with(&self, coeffs: Vec<Rat>) -> NfElem {
        NfElem { field: Arc::clone(&self.field), coeffs }
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", UniPoly::new(self.coeffs.clone()).display_var("t"))
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) mod {:?}", self, self.field)
    }
}

impl Field for NfElem {
    fn zero_like(&self) -> Self {
        self.with(vec![Rat::zero(); self.field.degree()])
    }
    fn one_like(&self) -> Self {
        self.field.from_rat(Rat::one())
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        self.field.from_rat(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.with(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.with(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let p = UniPoly::new(self.coeffs.clone()) * UniPoly::new(rhs.coeffs.clone());
        self.with(self.field.reduce(p))
    }
    fn negated(&self) -> Self {
        self.with(self.coeffs.iter().map(|c| -c).collect())
    }
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let a = UniPoly::new(self.coeffs.clone());
        let (g, x, _) = a.ext_gcd(&self.field.modulus_poly())?;
        if g.degree() != Some(0) {
            return Err(Error::ZeroDivisor);
        }
        let g0 = g.coeff(0).expect("unit gcd").recip()?;
        Ok(self.with(self.field.reduce(x.scale(&g0))))
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }
    fn to_rat(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(Rat::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat::rat;

    #[test]
    fn eighth_root_of_minus_one() {
        let k = NumberField::cyclotomic_power_of_two(8);
        let e = k.generator();
        assert_eq!(e.pow(8), k.from_rat(Rat::from(-1)));
        assert!(e.pow(16).is_one());
    }

    #[test]
    fn product_reduces_modulo() {
        // (t^4 + 1)(t^4 - 1) = t^8 - 1 = -2 in Q[t]/(t^8 + 1)
        let k = NumberField::cyclotomic_power_of_two(8);
        let mut a = vec![Rat::zero(); 5];
        a[0] = Rat::one();
        a[4] = Rat::one();
        let mut b = a.clone();
        b[0] = Rat::from(-1);
        let p = k.element(a).times(&k.element(b));
        assert_eq!(p, k.from_rat(Rat::from(-2)));
    }

    #[test]
    fn inverse_roundtrip() {
        let k = NumberField::cyclotomic_power_of_two(8);
        let x = k.element(vec![rat(1, 2), Rat::from(3), Rat::zero(), Rat::from(-1)]);
        let y = x.inverse().unwrap();
        assert!(x.times(&y).is_one());
    }

    #[test]
    fn zero_divisor_is_reported() {
        // t^2 - 1 is reducible: (t - 1) has no inverse.
        let k = NumberField::new(vec![Rat::from(-1), Rat::zero(), Rat::one()]).unwrap();
        let x = k.element(vec![Rat::from(-1), Rat::one()]);
        assert_eq!(x.inverse(), Err(Error::ZeroDivisor));
        assert_eq!(k.from_rat(Rat::zero()).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn non_monic_modulus_rejected() {
        assert!(NumberField::new(vec![Rat::one(), Rat::from(2)]).is_err());
        assert!(NumberField::new(vec![Rat::one()]).is_err());
    }
}

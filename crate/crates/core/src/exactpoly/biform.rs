use std::fmt;

use super::{Field, UniPoly};
use crate::error::{Error, Result};

/// Homogeneous binary form of degree `d` in `(s, t)`.
///
/// `coeffs[i]` is the coefficient of `s^i t^(d-i)`, so setting `t = 1` reads
/// the coefficient list directly as a polynomial in `s`.
#[derive(Clone, PartialEq, Debug)]
pub struct BiForm<F> {
    degree: usize,
    coeffs: Vec<F>,
}

impl<F: Field> BiForm<F> {
    pub fn new(degree: usize, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::DegreeMismatch(format!(
                "degree {degree} form needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BiForm { degree, coeffs })
    }

    pub fn zero(degree: usize, like: &F) -> Self {
        BiForm { degree, coeffs: vec![like.zero_like(); degree + 1] }
    }

    /// `c * s^i * t^(degree - i)`.
    pub fn monomial(degree: usize, i: usize, c: F) -> Self {
        let mut f = BiForm::zero(degree, &c);
        f.coeffs[i] = c;
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `s^i t^(d-i)`.
    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    fn sample(&self) -> &F {
        &self.coeffs[0]
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.degree != rhs.degree {
            return Err(Error::DegreeMismatch(format!(
                "cannot add forms of degree {} and {}",
                self.degree, rhs.degree
            )));
        }
        if !self.sample().same_field(rhs.sample()) {
            return Err(Error::FieldMismatch);
        }
        Ok(BiForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.scale(&self.sample().one_like().negated()))
    }

    pub fn scale(&self, c: &F) -> Self {
        BiForm { degree: self.degree, coeffs: self.coeffs.iter().map(|a| a.times(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if !self.sample().same_field(rhs.sample()) {
            return Err(Error::FieldMismatch);
        }
        let mut out = BiForm::zero(self.degree + rhs.degree, self.sample());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[i + j] = out.coeffs[i + j].plus(&a.times(b));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut acc = BiForm::monomial(0, 0, self.sample().one_like());
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `f(phi1, phi2)`: substitute `s -> phi1`, `t -> phi2`.
    pub fn compose(&self, phi1: &Self, phi2: &Self) -> Result<Self> {
        if phi1.degree != phi2.degree {
            return Err(Error::DegreeMismatch(format!(
                "substituted forms have degrees {} and {}",
                phi1.degree, phi2.degree
            )));
        }
        let d = self.degree;
        let p1: Vec<BiForm<F>> = powers(phi1, d)?;
        let p2: Vec<BiForm<F>> = powers(phi2, d)?;
        let mut out = BiForm::zero(d * phi1.degree, self.sample());
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = out.add(&p1[i].mul(&p2[d - i])?.scale(c))?;
        }
        Ok(out)
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        let mut acc = s.zero_like();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc.plus(&c.times(&s.pow(i as u32)).times(&t.pow((self.degree - i) as u32)));
        }
        acc
    }

    /// `f(s, 1)` as a polynomial in `s`.
    pub fn dehomogenize(&self) -> UniPoly<F> {
        UniPoly::new(self.coeffs.clone())
    }

    /// Homogenizes `p(s)` to degree `degree`.
    pub fn homogenize(p: &UniPoly<F>, degree: usize, like: &F) -> Result<Self> {
        if p.degree().is_some_and(|d| d > degree) {
            return Err(Error::DegreeMismatch(format!(
                "polynomial of degree {:?} does not fit in degree {degree}",
                p.degree()
            )));
        }
        BiForm::new(degree, p.padded(degree + 1, like))
    }

    /// Exponent of the largest power of `t` dividing a nonzero form.
    fn t_order(&self) -> Option<usize> {
        self.dehomogenize().degree().map(|ds| self.degree - ds)
    }

    /// Monic (in the dehomogenized sense) greatest common divisor of two forms.
    /// `gcd(f, 0) = f` up to scaling; both zero gives the zero form of degree 0.
    pub fn gcd(&self, rhs: &Self) -> Result<Self> {
        let like = self.sample().clone();
        match (self.t_order(), rhs.t_order()) {
            (None, None) => Ok(BiForm::zero(0, &like)),
            (None, Some(_)) => rhs.normalized(),
            (Some(_), None) => self.normalized(),
            (Some(a), Some(b)) => {
                let g = self.dehomogenize().gcd(&rhs.dehomogenize())?;
                let gd = g.degree().expect("nonzero gcd");
                let core = BiForm::homogenize(&g, gd, &like)?;
                let tpow = BiForm::monomial(a.min(b), 0, like.one_like());
                core.mul(&tpow)
            }
        }
    }

    fn normalized(&self) -> Result<Self> {
        let p = self.dehomogenize();
        let lead = p.leading().expect("nonzero form").inverse()?;
        Ok(self.scale(&lead))
    }

    /// Substitutes an invertible linear change `s -> a s + b t`, `t -> c s + d t`.
    pub fn linear_substitute(&self, a: &F, b: &F, c: &F, d: &F) -> Result<Self> {
        let s_img = BiForm::new(1, vec![b.clone(), a.clone()])?;
        let t_img = BiForm::new(1, vec![d.clone(), c.clone()])?;
        self.compose(&s_img, &t_img)
    }
}

fn powers<F: Field>(f: &BiForm<F>, n: usize) -> Result<Vec<BiForm<F>>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BiForm::monomial(0, 0, f.sample().one_like()));
    for i in 0..n {
        let next = out[i].mul(f)?;
        out.push(next);
    }
    Ok(out)
}

impl<F: Field> fmt::Display for BiForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let j = self.degree - i;
            let cs = c.to_rat().map(|r| r.to_string()).unwrap_or_else(|| format!("({c})"));
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => format!("*s^{i}"),
                (0, j) => format!("*t^{j}"),
                (i, j) => format!("*s^{i}*t^{j}"),
            };
            parts.push(format!("{cs}{mono}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::Rat;

    fn form(c: &[i64]) -> BiForm<Rat> {
        BiForm::new(c.len() - 1, c.iter().map(|&x| Rat::from(x)).collect()).unwrap()
    }

    // s^i t^(d-i) with coefficient c
    fn mono(d: usize, i: usize, c: i64) -> BiForm<Rat> {
        BiForm::monomial(d, i, Rat::from(c))
    }

    #[test]
    fn compose_monomial_power() {
        // s^4 at (2st, t^2) = 16 s^4 t^4
        let got = mono(4, 4, 1).compose(&mono(2, 1, 2), &mono(2, 0, 1)).unwrap();
        assert_eq!(got, mono(8, 4, 16));
    }

    #[test]
    fn compose_st_on_squares() {
        let got = mono(2, 1, 1).compose(&mono(2, 2, 1), &mono(2, 0, 1)).unwrap();
        assert_eq!(got, mono(4, 2, 1));
    }

    #[test]
    fn compose_against_hand_expansion() {
        // s^3 t at (2st, l s^2 + 2 n st + t^2) = 8 s^3 t^3 (l s^2 + 2 n st + t^2), l = 3, n = -2
        let phi1 = mono(2, 1, 2);
        let phi2 = form(&[1, -4, 3]);
        let got = mono(4, 3, 1).compose(&phi1, &phi2).unwrap();
        let expected = mono(6, 3, 8).mul(&phi2).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.degree(), 8);
    }

    #[test]
    fn compose_rejects_unequal_degrees() {
        let r = mono(2, 1, 1).compose(&mono(2, 2, 1), &mono(1, 0, 1));
        assert!(matches!(r, Err(Error::DegreeMismatch(_))));
        assert!(BiForm::new(2, vec![Rat::one()]).is_err());
    }

    #[test]
    fn gcd_detects_common_roots() {
        // s^2 and 2st share s; 2st and s^2 + t^2 are coprime; t^2 and t s share t
        assert_eq!(mono(2, 2, 1).gcd(&mono(2, 1, 2)).unwrap(), mono(1, 1, 1));
        assert_eq!(mono(2, 1, 2).gcd(&form(&[1, 0, 1])).unwrap().degree(), 0);
        assert_eq!(mono(2, 0, 1).gcd(&mono(2, 1, 1)).unwrap(), mono(1, 0, 1));
        assert_eq!(mono(2, 0, 1).gcd(&BiForm::zero(2, &Rat::zero())).unwrap(), mono(2, 0, 1));
    }
}

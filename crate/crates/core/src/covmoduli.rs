//! Pencils of binary quadratics as double covers of a line: discriminant
//! coordinates, stability, the boundary conic and the half-twist identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{BiForm, Field, Rat};
use crate::linalg::Matrix;

/// `(phi1, phi2)`, the images of a basis of `W` in the quadratics in `(s, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticPencil<F> {
    pub phi1: BiForm<F>,
    pub phi2: BiForm<F>,
}

/// `x1 s^2 + x2 st + x3 t^2` from a coefficient triple.
pub fn quadratic_from_triple<F: Field>(c: [F; 3]) -> BiForm<F> {
    let [s2, st, t2] = c;
    BiForm::new(2, vec![t2, st, s2]).expect("three coefficients")
}

impl<F: Field> QuadraticPencil<F> {
    pub fn new(phi1: BiForm<F>, phi2: BiForm<F>) -> Result<Self> {
        if phi1.degree() != 2 || phi2.degree() != 2 {
            return Err(Error::DegreeMismatch("pencil members must be quadratics".into()));
        }
        if !phi1.coeff(0).same_field(phi2.coeff(0)) {
            return Err(Error::FieldMismatch);
        }
        Ok(QuadraticPencil { phi1, phi2 })
    }

    /// Both members given as `(s^2, st, t^2)` coefficient triples.
    pub fn from_triples(a: [F; 3], b: [F; 3]) -> Result<Self> {
        QuadraticPencil::new(quadratic_from_triple(a), quadratic_from_triple(b))
    }

    /// `(s^2, st, t^2)` coefficients of a member.
    pub fn triple(phi: &BiForm<F>) -> [F; 3] {
        [phi.coeff(2).clone(), phi.coeff(1).clone(), phi.coeff(0).clone()]
    }

    pub fn is_zero(&self) -> bool {
        self.phi1.is_zero() && self.phi2.is_zero()
    }

    /// Rank of `W -> S^2 U`.
    pub fn rank(&self) -> usize {
        Matrix::from_rows(vec![self.phi1.coeffs().to_vec(), self.phi2.coeffs().to_vec()])
            .expect("rectangular")
            .rank()
    }

    /// Substitutes `s -> a s + b t`, `t -> c s + d t` in both members.
    pub fn substitute(&self, a: &F, b: &F, c: &F, d: &F) -> Result<Self> {
        QuadraticPencil::new(
            self.phi1.linear_substitute(a, b, c, d)?,
            self.phi2.linear_substitute(a, b, c, d)?,
        )
    }

    /// New basis `(x phi1 + y phi2, z phi1 + w phi2)` of the pencil.
    pub fn rebase(&self, x: &F, y: &F, z: &F, w: &F) -> Result<Self> {
        QuadraticPencil::new(
            self.phi1.scale(x).add(&self.phi2.scale(y))?,
            self.phi1.scale(z).add(&self.phi2.scale(w))?,
        )
    }

    /// `phi1_s phi2_t - phi1_t phi2_s`; vanishes at the ramification points of the cover.
    pub fn wronskian(&self) -> BiForm<F> {
        let ds = |f: &BiForm<F>| {
            let two = f.coeff(0).from_rat_like(&Rat::from(2));
            BiForm::new(1, vec![f.coeff(1).clone(), f.coeff(2).times(&two)]).expect("linear")
        };
        let dt = |f: &BiForm<F>| {
            let two = f.coeff(0).from_rat_like(&Rat::from(2));
            BiForm::new(1, vec![f.coeff(0).times(&two), f.coeff(1).clone()]).expect("linear")
        };
        let a = ds(&self.phi1).mul(&dt(&self.phi2)).expect("same field");
        let b = dt(&self.phi1).mul(&ds(&self.phi2)).expect("same field");
        a.sub(&b).expect("same degree")
    }
}

/// Projective triple `(D0 : D1 : D2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantPoint<F> {
    pub d0: F,
    pub d1: F,
    pub d2: F,
}

impl<F: Field> DiscriminantPoint<F> {
    pub fn is_zero(&self) -> bool {
        self.d0.is_zero() && self.d1.is_zero() && self.d2.is_zero()
    }

    /// `D0 - D1 - D2`, the middle coefficient of the discriminant of `x phi1 + y phi2`.
    pub fn cross(&self) -> F {
        self.d0.minus(&self.d1).minus(&self.d2)
    }

    /// `D0^2 + D1^2 + D2^2 - 2 D0 D1 - 2 D1 D2 - 2 D2 D0`.
    pub fn boundary_value(&self) -> F {
        let two = self.d0.from_rat_like(&Rat::from(2));
        let sq = |x: &F| x.times(x);
        sq(&self.d0)
            .plus(&sq(&self.d1))
            .plus(&sq(&self.d2))
            .minus(&two.times(&self.d0.times(&self.d1)))
            .minus(&two.times(&self.d1.times(&self.d2)))
            .minus(&two.times(&self.d2.times(&self.d0)))
    }

    /// Equality as points of the projective plane.
    pub fn same_point(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let a = [&self.d0, &self.d1, &self.d2];
        let b = [&other.d0, &other.d1, &other.d2];
        (0..3).all(|i| (0..3).all(|j| a[i].times(b[j]).minus(&a[j].times(b[i])).is_zero()))
    }
}

/// `phi = x1 s^2 + 2 x2 st + x3 t^2` gives `x2^2 - x1 x3`.
fn half_discriminant<F: Field>(phi: &BiForm<F>) -> F {
    let half = phi.coeff(0).from_rat_like(&Rat::new(1, 2));
    let x2 = phi.coeff(1).times(&half);
    x2.times(&x2).minus(&phi.coeff(2).times(phi.coeff(0)))
}

/// Discriminants of `phi1`, `phi2` and `phi0 = -(phi1 + phi2)`.
pub fn discriminants<F: Field>(pencil: &QuadraticPencil<F>) -> DiscriminantPoint<F> {
    let phi0 = pencil.phi1.add(&pencil.phi2).expect("same degree");
    let phi0 = phi0.scale(&phi0.coeff(0).from_rat_like(&Rat::from(-1)));
    DiscriminantPoint {
        d0: half_discriminant(&phi0),
        d1: half_discriminant(&pencil.phi1),
        d2: half_discriminant(&pencil.phi2),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityClass {
    Unstable,
    StrictlySemistable,
    Stable,
}

/// Unstable when every member has a double root; stable when semistable and
/// base-point free.
pub fn classify<F: Field>(pencil: &QuadraticPencil<F>) -> Result<StabilityClass> {
    if pencil.is_zero() {
        return Err(Error::ZeroPencil);
    }
    let d = discriminants(pencil);
    if d.d1.is_zero() && d.d2.is_zero() && d.cross().is_zero() {
        return Ok(StabilityClass::Unstable);
    }
    let g = pencil.phi1.gcd(&pencil.phi2)?;
    Ok(if g.degree() == 0 { StabilityClass::Stable } else { StabilityClass::StrictlySemistable })
}

/// Whether the triple lies on the boundary conic.
pub fn boundary_check<F: Field>(d: &DiscriminantPoint<F>) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::ZeroTriple);
    }
    Ok(d.boundary_value().is_zero())
}

/// The double cover branched over `P = (a1 : a2)` and `Q = (b1 : b2)`:
/// `phi1 = b1 s^2 - a1 t^2`, `phi2 = b2 s^2 - a2 t^2`.
pub fn ramification_to_pencil<F: Field>(p: [F; 2], q: [F; 2]) -> Result<QuadraticPencil<F>> {
    let [a1, a2] = p;
    let [b1, b2] = q;
    if (a1.is_zero() && a2.is_zero()) || (b1.is_zero() && b2.is_zero()) {
        return Err(Error::Precondition("a projective point cannot be (0 : 0)".into()));
    }
    if a1.times(&b2).minus(&a2.times(&b1)).is_zero() {
        return Err(Error::CoincidentPoints);
    }
    let zero = a1.zero_like();
    QuadraticPencil::from_triples([b1, zero.clone(), a1.negated()], [b2, zero, a2.negated()])
}

/// Outcome of [`half_twist_identity`].
#[derive(Clone, Debug, PartialEq)]
pub struct HalfTwist<F> {
    pub p: F,
    pub q: F,
    /// Root of `nu^2 - lambda` used; the negative branch when rational.
    pub delta: F,
    pub holds: bool,
}

/// Rewrites `phi = (2st, lambda s^2 + 2 nu st + t^2)` in coordinates with
/// `phi2 = 2uv` and `phi1 = p u^2 + 2 q uv + v^2`, then checks
/// `p u^2 - v^2 = (1/delta)(lambda s^2 - t^2)` where `delta^2 = nu^2 - lambda`.
///
/// Only squares of `u`, `v` and their product enter, so the substitution lives in
/// the field generated by `delta`.
pub fn half_twist_with_root<F: Field>(lambda: &F, nu: &F, delta: &F) -> Result<HalfTwist<F>> {
    if lambda.is_zero() {
        return Err(Error::Precondition("lambda must be nonzero".into()));
    }
    let disc = nu.times(nu).minus(lambda);
    if delta.is_zero() || !delta.times(delta).minus(&disc).is_zero() {
        return Err(Error::Precondition("delta must be a nonzero root of nu^2 - lambda".into()));
    }
    let r = |x: Rat| lambda.from_rat_like(&x);
    let lin = |s: F, t: F| BiForm::new(1, vec![t, s]).expect("linear");
    // phi2 = l1 * l2 with l1 = t + (nu - delta) s, l2 = t + (nu + delta) s
    let nm = nu.minus(delta);
    let l1 = lin(nm.clone(), r(Rat::one()));
    let l2 = lin(nu.plus(delta), r(Rat::one()));
    // u = c l1, v = l2 / (2c), so u^2 = c2 l1^2, v^2 = l2^2 / (4 c2), uv = l1 l2 / 2
    let c2 = delta.times(delta).negated().divide(&r(Rat::from(2)).times(&nm))?;
    let u2 = l1.mul(&l1)?.scale(&c2);
    let v2 = l2.mul(&l2)?.scale(&r(Rat::from(4)).times(&c2).inverse()?);
    let uv = l1.mul(&l2)?.scale(&r(Rat::new(1, 2)));

    let d2 = delta.times(delta);
    let p = lambda.divide(&d2.times(&d2))?;
    let q = nu.divide(&d2)?;
    let two = r(Rat::from(2));

    let phi1 = BiForm::monomial(2, 1, two.clone());
    let phi2 = quadratic_from_triple([lambda.clone(), two.times(nu), r(Rat::one())]);
    let phi1_new = u2.scale(&p).add(&uv.scale(&two.times(&q)))?.add(&v2)?;
    let phi2_new = uv.scale(&two);

    let lhs = u2.scale(&p).sub(&v2)?;
    let target = quadratic_from_triple([lambda.clone(), r(Rat::zero()), r(Rat::from(-1))]);
    let rhs = target.scale(&delta.inverse()?);
    let holds = phi1_new == phi1 && phi2_new == phi2 && lhs == rhs;
    Ok(HalfTwist { p, q, delta: delta.clone(), holds })
}

/// [`half_twist_with_root`] over the rationals, taking the negative square root.
pub fn half_twist_identity(lambda: &Rat, nu: &Rat) -> Result<HalfTwist<Rat>> {
    let disc = nu * nu - lambda;
    let root = disc.sqrt_exact().filter(|r| !r.is_zero()).ok_or_else(|| {
        Error::Precondition(format!("nu^2 - lambda = {disc} is not a nonzero rational square"))
    })?;
    half_twist_with_root(lambda, nu, &-root)
}

/// Serializable form of a classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub class: StabilityClass,
    #[serde(rename = "D")]
    pub d: [Rat; 3],
    pub boundary: bool,
}

pub fn classification_report(pencil: &QuadraticPencil<Rat>) -> Result<ClassificationReport> {
    let class = classify(pencil)?;
    let d = discriminants(pencil);
    let boundary = !d.is_zero() && d.boundary_value().is_zero();
    Ok(ClassificationReport { class, d: [d.d0, d.d1, d.d2], boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, NumberField};

    fn pencil(a: [i64; 3], b: [i64; 3]) -> QuadraticPencil<Rat> {
        QuadraticPencil::from_triples(a.map(Rat::from), b.map(Rat::from)).unwrap()
    }

    fn triple(d: &DiscriminantPoint<Rat>) -> [Rat; 3] {
        [d.d0.clone(), d.d1.clone(), d.d2.clone()]
    }

    #[test]
    fn discriminant_examples() {
        // lambda = 3, nu = -2
        let d = discriminants(&pencil([0, 2, 0], [3, -4, 1]));
        assert_eq!(triple(&d), [Rat::from(-2), Rat::one(), Rat::from(1)]);
        let d = discriminants(&pencil([1, 0, 0], [0, 1, 0]));
        assert_eq!(triple(&d), [rat(1, 4), Rat::zero(), rat(1, 4)]);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&pencil([1, 0, 0], [0, 2, 0])).unwrap(), StabilityClass::StrictlySemistable);
        assert_eq!(classify(&pencil([1, 0, 0], [1, 0, 0])).unwrap(), StabilityClass::Unstable);
        assert_eq!(classify(&pencil([0, 2, 0], [1, 0, 1])).unwrap(), StabilityClass::Stable);
        assert_eq!(classify(&pencil([0, 0, 0], [0, 0, 0])), Err(Error::ZeroPencil));
    }

    #[test]
    fn boundary_examples() {
        let p = |a: i64, b: i64, c: i64| DiscriminantPoint { d0: Rat::from(a), d1: Rat::from(b), d2: Rat::from(c) };
        assert!(boundary_check(&p(4, 1, 1)).unwrap());
        assert!(!boundary_check(&p(1, 1, -1)).unwrap());
        assert_eq!(boundary_check(&p(0, 0, 0)), Err(Error::ZeroTriple));
        let d = discriminants(&pencil([1, 0, 0], [0, 1, 0]));
        assert!(boundary_check(&d).unwrap());
        let d = discriminants(&pencil([0, 2, 0], [1, 0, 1]));
        assert!(!boundary_check(&d).unwrap());
    }

    #[test]
    fn ramification() {
        let p = ramification_to_pencil([Rat::one(), Rat::zero()], [Rat::zero(), Rat::one()]).unwrap();
        assert_eq!(triple(&discriminants(&p)), [Rat::one(), Rat::zero(), Rat::zero()]);
        let same = ramification_to_pencil([Rat::one(), Rat::from(2)], [Rat::from(2), Rat::from(4)]);
        assert_eq!(same, Err(Error::CoincidentPoints));
    }

    #[test]
    fn half_twist_rational() {
        let h = half_twist_identity(&Rat::from(3), &Rat::from(2)).unwrap();
        assert!(h.holds);
        assert_eq!(h.p, Rat::from(3));
        assert!(half_twist_identity(&rat(9, 4), &rat(5, 2)).unwrap().holds);
        assert!(half_twist_identity(&Rat::from(2), &Rat::from(2)).is_err());
    }

    #[test]
    fn half_twist_positive_branch_flips_sign() {
        let h = half_twist_with_root(&Rat::from(3), &Rat::from(2), &Rat::one()).unwrap();
        assert!(h.holds);
        let k = NumberField::new(vec![Rat::from(-2), Rat::zero(), Rat::one()]).unwrap();
        // lambda = 2, nu = 2: nu^2 - lambda = 2 has root x in Q[x]/(x^2 - 2)
        let h = half_twist_with_root(&k.from_rat(Rat::from(2)), &k.from_rat(Rat::from(2)), &k.generator()).unwrap();
        assert!(h.holds);
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{codim, SymClass};
use crate::exactpoly::Rat;

/// Complete homogeneous symmetric polynomial `h_n` in two variables,
/// via `h_n = e1 h_(n-1) - e2 h_(n-2)`.
pub fn complete_homogeneous(n: u32) -> SymClass {
    let mut prev = SymClass::zero();
    let mut cur = SymClass::one();
    for _ in 0..n {
        let next = &(&SymClass::e1() * &cur) - &(&SymClass::e2() * &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Two-row Schur polynomial `s_(a,b) = e2^b h_(a-b)`.
pub fn schur_class(a: u32, b: u32) -> SymClass {
    assert!(a >= b, "partition must be weakly decreasing");
    &SymClass::monomial(0, b, Rat::one()) * &complete_homogeneous(a - b)
}

/// Coefficients of a class in the Schur basis, keyed by partitions `(a, b)`, `a >= b`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SchurExpansion {
    #[serde(with = "partition_map")]
    pub terms: BTreeMap<(u32, u32), Rat>,
}

impl SchurExpansion {
    pub fn coeff(&self, a: u32, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn to_symclass(&self) -> SymClass {
        let mut out = SymClass::zero();
        for (&(a, b), c) in &self.terms {
            out = &out + &schur_class(a, b).scale(c);
        }
        out
    }
}

/// Expands a class in two-row Schur polynomials.
///
/// `s_(i+j, j) = e1^i e2^j + (terms with a larger power of e2)`, so peeling off
/// the monomial with the smallest `e2`-exponent terminates.
pub fn schur_expand(p: &SymClass) -> SchurExpansion {
    let mut rest = p.clone();
    let mut out = SchurExpansion::default();
    loop {
        let Some((i, j, c)) = rest.terms().min_by_key(|&(i, j, _)| (j, i)).map(|(i, j, c)| (i, j, c.clone()))
        else {
            break;
        };
        rest = &rest - &schur_class(i + j, j).scale(&c);
        out.terms.insert((i + j, j), c);
    }
    out
}

/// Degree of a class on `G(2, N)`: the coefficient of `s_(N-2, N-2)`.
pub fn integrate(p: &SymClass, n: u32) -> Rat {
    assert!(n >= 2, "G(2, N) needs N >= 2");
    let top = p.graded_part(codim(0, n - 2));
    schur_expand(&top).coeff(n - 2, n - 2)
}

mod partition_map {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        partition: (u32, u32),
        coeff: Rat,
    }

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<(u32, u32), Rat>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> =
            m.iter().map(|(&partition, c)| Entry { partition, coeff: c.clone() }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(u32, u32), Rat>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter().map(|e| (e.partition, e.coeff)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{ctop_sym_power, sigma};

    #[test]
    fn small_expansions() {
        let e = schur_expand(&SymClass::e2());
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.coeff(1, 1), Rat::one());

        let s1sq = &sigma(1) * &sigma(1);
        let e = schur_expand(&s1sq);
        assert_eq!((e.coeff(2, 0), e.coeff(1, 1)), (Rat::one(), Rat::one()));

        let s1_4 = &s1sq * &s1sq;
        let e = schur_expand(&s1_4);
        assert_eq!(e.coeff(4, 0), Rat::from(1));
        assert_eq!(e.coeff(3, 1), Rat::from(3));
        assert_eq!(e.coeff(2, 2), Rat::from(2));
        assert_eq!(e.to_symclass(), s1_4);
    }

    #[test]
    fn line_counts() {
        assert_eq!(integrate(&(&sigma(1).pow_truncated(4, 4) * &SymClass::one()), 4), Rat::from(2));
        assert_eq!(integrate(&ctop_sym_power(3), 4), Rat::from(27));
        assert_eq!(integrate(&ctop_sym_power(5), 5), Rat::from(2875));
    }

    #[test]
    fn jacobi_trudi_agrees() {
        for a in 0..7 {
            for b in 0..=a {
                let jt = if b == 0 {
                    complete_homogeneous(a)
                } else {
                    &(&complete_homogeneous(a) * &complete_homogeneous(b))
                        - &(&complete_homogeneous(a + 1) * &complete_homogeneous(b - 1))
                };
                assert_eq!(jt, schur_class(a, b), "s_({a},{b})");
            }
        }
    }
}

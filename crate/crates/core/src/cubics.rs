//! Degree-3 terms for hypersurfaces with `k = N + 1`: the triple-cover class, the
//! nodal-conic correction and the resulting split of a degree-3 invariant.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dcover::degree1_invariant;
use crate::error::{Error, Result};
use crate::exactpoly::Rat;
use crate::grassmann::SymClass;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicContributionClass {
    pub k: u32,
    pub value: SymClass,
}

/// Conjectural codim-2 class for triple covers of lines, `N = k - 1`.
pub fn cubic_contribution_class(k: u32) -> Result<CubicContributionClass> {
    if k < 5 {
        return Err(Error::Precondition(format!("triple-cover class needs k >= 5, got {k}")));
    }
    let kk = Rat::from(k);
    let km1 = Rat::from(k - 1);
    let poly = Rat::from(27) * &kk * &kk - Rat::from(55) * &kk + Rat::from(26);
    let e1sq = (Rat::new(1, 24) * poly * &kk * &km1 + Rat::new(2, 9)) * Rat::new(1, 27);
    let e2 = (Rat::new(7, 6) * Rat::from(k + 1) * &kk * &km1 + Rat::new(1, 9)) * Rat::new(1, 27);
    Ok(CubicContributionClass {
        k,
        value: SymClass::from_terms([((2, 0), e1sq), ((0, 1), e2)]),
    })
}

fn check_cubic_input(n: u32, k: u32, abc: [u32; 3]) -> Result<()> {
    if k != n + 1 {
        return Err(Error::Precondition(format!("degree-3 terms need k = N + 1, got (N, k) = ({n}, {k})")));
    }
    if n < 6 {
        return Err(Error::Precondition(format!("one-point factor needs N >= 6, got {n}")));
    }
    if abc.contains(&0) {
        return Err(Error::DimensionMismatch("codimension-0 insertions are not supported".into()));
    }
    let sum: u32 = abc.iter().sum();
    if sum != n - 5 {
        return Err(Error::DimensionMismatch(format!("a + b + c = {sum}, expected {}", n - 5)));
    }
    Ok(())
}

fn one(n: u32, k: u32, ins: &[u32]) -> Result<Rat> {
    degree1_invariant(n, k, ins, &SymClass::one())
}

/// `(1/k) (9/4 I(a,b,c,3) I(N-5) + 3/2 sum_cyc I(a,b,c+2) I(N-c-4,c))`, with `I`
/// the degree-1 Schubert integrals.
pub fn nodal_term(n: u32, k: u32, abc: [u32; 3]) -> Result<Rat> {
    check_cubic_input(n, k, abc)?;
    let [a, b, c] = abc;
    let mut cyclic = Rat::zero();
    for [x, y, z] in [[a, b, c], [b, c, a], [c, a, b]] {
        cyclic += one(n, k, &[x, y, z + 2])? * one(n, k, &[n - z - 4, z])?;
    }
    let four = one(n, k, &[a, b, c, 3])? * one(n, k, &[n - 5])?;
    Ok((Rat::new(9, 4) * four + Rat::new(3, 2) * cyclic) / Rat::from(k))
}

/// One way of distributing the three insertions between the doubly covered line
/// (which also carries the node) and the other line.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmPattern {
    /// Insertions on the doubly covered component, by position in `(a, b, c)`.
    pub on_cover: Vec<usize>,
    /// Number of marked points on that component, the node included.
    pub arity: u32,
    /// `1 / 2^(3 - arity)`.
    pub weight: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AmWeightTable {
    pub patterns: Vec<AmPattern>,
    /// Summed weights keyed by the insertions on the smaller side of each split.
    pub groups: BTreeMap<String, Rat>,
}

/// Enumerates all placements of the insertions, weights each by `1/2^(3-n)` and
/// merges complementary placements, which give the same product of integrals.
/// Fails unless the merged coefficients are 9/4 (four-point) and 3/2 (each cyclic).
pub fn am_weight_check() -> Result<AmWeightTable> {
    let names = ["a", "b", "c"];
    let mut patterns = Vec::new();
    let mut groups: BTreeMap<String, Rat> = BTreeMap::new();
    for mask in 0u32..8 {
        let on_cover: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
        let arity = on_cover.len() as u32 + 1;
        let weight = Rat::from(2).pow(arity as i32 - 3);
        let key_mask = if on_cover.len() >= 2 { !mask & 7 } else { mask };
        let key: String = (0..3).filter(|i| key_mask & (1 << i) != 0).map(|i| names[i]).collect();
        let key = if key.is_empty() { "four-point".to_string() } else { key };
        *groups.entry(key).or_insert_with(Rat::zero) += &weight;
        patterns.push(AmPattern { on_cover, arity, weight });
    }
    let expected = [("four-point", Rat::new(9, 4)), ("a", Rat::new(3, 2)), ("b", Rat::new(3, 2)), ("c", Rat::new(3, 2))];
    if patterns.len() != 8 || groups.len() != expected.len() {
        return Err(Error::Precondition("unexpected pattern count".into()));
    }
    for (key, want) in expected {
        if groups.get(key) != Some(&want) {
            return Err(Error::Precondition(format!("group {key}: expected {want}")));
        }
    }
    Ok(AmWeightTable { patterns, groups })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub gw3: Rat,
    #[serde(rename = "nodal")]
    pub nodal_term: Rat,
    #[serde(rename = "triple_cover")]
    pub triple_cover_term: Rat,
    #[serde(rename = "twisted_cubics")]
    pub twisted_cubic_count: Rat,
    pub provenance: crate::dcover::GwSource,
}

/// Splits a supplied degree-3 invariant into twisted cubics, nodal conics and triple covers.
pub fn decompose3(n: u32, k: u32, abc: [u32; 3], gw3: Rat) -> Result<CubicReport> {
    check_cubic_input(n, k, abc)?;
    let nodal_term = nodal_term(n, k, abc)?;
    let class = cubic_contribution_class(k)?;
    let triple_cover_term = Rat::from(27) * degree1_invariant(n, k, &abc, &class.value)?;
    let twisted_cubic_count = &gw3 - &nodal_term - &triple_cover_term;
    Ok(CubicReport {
        n,
        k,
        a: abc[0],
        b: abc[1],
        c: abc[2],
        gw3,
        nodal_term,
        triple_cover_term,
        twisted_cubic_count,
        provenance: crate::dcover::GwSource::UserSupplied,
    })
}

/// Ordered triples accepted by [`decompose3`] for a given `N`.
pub fn cubic_triples(n: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    if n < 8 {
        return out;
    }
    let total = n - 5;
    for a in 1..total {
        for b in 1..total - a {
            out.push([a, b, total - a - b]);
        }
    }
    out
}

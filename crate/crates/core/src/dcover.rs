//! Double-cover contribution class, degree-1 Schubert integrals, and the split of a
//! degree-2 invariant into a conic count plus a multiple-cover term.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::Rat;
use crate::grassmann::{
    chern_dual, chern_sym_power, ctop_sym_power, integrate, segre, sigma, SymClass,
};
use crate::vsc::{gw2_3pt, Hypersurface, VscTable};

/// `1 - e1/2`.
fn half_twist_denominator() -> SymClass {
    &SymClass::one() - &SymClass::e1().scale(&Rat::new(1, 2))
}

/// Pushforward of the top Chern class of the obstruction bundle over double covers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContributionClass {
    #[serde(rename = "N")]
    pub n: u32,
    pub k: u32,
    pub value: SymClass,
}

/// `(1/8) [c(S^{k-1} Q) / (1 - e1/2)]_{k-N}`; zero when `k < N`.
pub fn contribution_class(n: u32, k: u32) -> ContributionClass {
    let value = if k < n || k == 0 {
        SymClass::zero()
    } else {
        let r = k - n;
        let q = SymClass::series_quotient(&chern_sym_power(k - 1), &half_twist_denominator(), r)
            .expect("unit denominator");
        q.graded_part(r).scale(&Rat::new(1, 8))
    };
    ContributionClass { n, k, value }
}

/// The same class assembled from Segre classes of `S^2 Q`:
/// `(1/8) sum_j c_{r-j}(S^{k-1}Q + Q^dual) s_j(S^2 Q) (-1/2)^j`, `r = k - N`.
pub fn proof_form_class(n: u32, k: u32) -> SymClass {
    if k < n || k == 0 {
        return SymClass::zero();
    }
    let r = k - n;
    let whitney = chern_sym_power(k - 1).mul_truncated(&chern_dual(), r);
    let s = segre(&chern_sym_power(2), 3, r).expect("unit Chern class");
    let mut out = SymClass::zero();
    let mut weight = Rat::one();
    for j in 0..=r {
        let term = whitney.graded_part(r - j).mul_truncated(&s.graded_part(j), r);
        out = &out + &term.scale(&weight);
        weight *= Rat::new(-1, 2);
    }
    out.scale(&Rat::new(1, 8))
}

/// `int_{G(2,N)} c_top(S^k Q) * extra * prod sigma_{a_i - 1}`.
///
/// Each insertion must lie in `[1, N-2]`, `extra` must be homogeneous, and the
/// codimensions must add up to `2(N-2)`; otherwise a dimension error is returned.
pub fn degree1_invariant(n: u32, k: u32, insertions: &[u32], extra: &SymClass) -> Result<Rat> {
    if n < 4 {
        return Err(Error::DimensionMismatch(format!("G(2, {n}) is too small")));
    }
    if let Some(&bad) = insertions.iter().find(|&&a| a < 1 || a > n - 2) {
        return Err(Error::DimensionMismatch(format!(
            "insertion codimension {bad} outside [1, {}]",
            n - 2
        )));
    }
    if extra.is_zero() {
        return Ok(Rat::zero());
    }
    let extra_codim = extra.homogeneous_codim().ok_or_else(|| {
        Error::DimensionMismatch("extra class is not homogeneous".into())
    })?;
    let total = (k + 1) + extra_codim + insertions.iter().map(|a| a - 1).sum::<u32>();
    if total != 2 * (n - 2) {
        return Err(Error::DimensionMismatch(format!(
            "codimensions add up to {total}, expected {}",
            2 * (n - 2)
        )));
    }
    let cutoff = 2 * (n - 2);
    let mut integrand = ctop_sym_power(k).mul_truncated(extra, cutoff);
    for &a in insertions {
        integrand = integrand.mul_truncated(&sigma(a - 1), cutoff);
    }
    Ok(integrate(&integrand, n))
}

/// Where the degree-2 invariant came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GwSource {
    Mirror,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    #[serde(rename = "N")]
    pub n: u32,
    pub k: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub gw: Rat,
    #[serde(rename = "dcover")]
    pub dcover_term: Rat,
    #[serde(rename = "conics")]
    pub conic_count: Rat,
    /// `conics / 8` when all three insertions are hyperplanes; the divisor
    /// axiom weights each conic by 8 there.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unweighted: Option<Rat>,
    pub provenance: GwSource,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
}

impl DecompositionReport {
    /// Contract violations; empty when every expected property holds.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.gw != &self.conic_count + &self.dcover_term {
            out.push("gw != conics + dcover".into());
        }
        let surface = Hypersurface { n: self.n, k: self.k };
        if surface.in_standard_range() && self.k >= self.n {
            let scaled = &self.gw * &Rat::from(2u64.pow(self.k - self.n));
            if !scaled.is_integer() {
                out.push(format!("2^(k-N) * gw = {scaled} is not an integer"));
            }
            if !self.conic_count.is_integer() || self.conic_count.is_negative() {
                out.push(format!("conic count {} is not a nonnegative integer", self.conic_count));
            }
        }
        out
    }
}

fn check_insertions(surface: Hypersurface, abc: [u32; 3]) -> Result<()> {
    let n = i64::from(surface.n);
    let expected = (n - 2) - 2 * surface.excess();
    let sum: i64 = abc.iter().map(|&x| i64::from(x)).sum();
    if sum != expected {
        return Err(Error::DimensionMismatch(format!(
            "a + b + c = {sum}, expected {expected}"
        )));
    }
    if let Some(bad) = abc.iter().find(|&&x| x < 1 || i64::from(x) > n - 2) {
        return Err(Error::DimensionMismatch(format!("insertion {bad} outside [1, {}]", n - 2)));
    }
    Ok(())
}

/// Value of `m` whose degree-2 formula gives the invariant with insertions `abc`,
/// if some insertion is a hyperplane class.
pub fn mirror_index(surface: Hypersurface, abc: [u32; 3]) -> Option<i64> {
    let pos = abc.iter().position(|&x| x == 1)?;
    let others: Vec<u32> = (0..3).filter(|&i| i != pos).map(|i| abc[i]).collect();
    Some(i64::from(surface.n) - 2 - i64::from(others[0]))
}

/// Degree-2 decomposition. `gw` overrides the mirror value; without it one of
/// the insertions must be 1 and the table must reach degree 2.
pub fn decompose2_with_table(
    table: Option<&VscTable>,
    surface: Hypersurface,
    abc: [u32; 3],
    gw: Option<Rat>,
) -> Result<DecompositionReport> {
    check_insertions(surface, abc)?;
    let (n, k) = (surface.n, surface.k);
    let (gw, provenance, m) = match gw {
        Some(x) => (x, GwSource::UserSupplied, None),
        None => {
            let m = mirror_index(surface, abc).ok_or_else(|| {
                Error::Precondition("no hyperplane insertion and no supplied invariant".into())
            })?;
            let owned;
            let table = match table {
                Some(t) if t.surface == surface && t.d_max() >= 2 => t,
                Some(t) if t.surface != surface => {
                    return Err(Error::Precondition(format!(
                        "table is for (N, k) = ({}, {})",
                        t.surface.n, t.surface.k
                    )))
                }
                _ => {
                    owned = VscTable::build(surface, 2)?;
                    &owned
                }
            };
            (gw2_3pt(table, m)?, GwSource::Mirror, Some(m))
        }
    };
    let class = contribution_class(n, k);
    let dcover_term = Rat::from(8) * degree1_invariant(n, k, &abc, &class.value)?;
    let conic_count = &gw - &dcover_term;
    let unweighted = (abc == [1, 1, 1]).then(|| &conic_count / &Rat::from(8));
    Ok(DecompositionReport {
        n,
        k,
        a: abc[0],
        b: abc[1],
        c: abc[2],
        gw,
        dcover_term,
        conic_count,
        unweighted,
        provenance,
        m,
    })
}

pub fn decompose2(surface: Hypersurface, abc: [u32; 3], gw: Option<Rat>) -> Result<DecompositionReport> {
    decompose2_with_table(None, surface, abc, gw)
}

/// Ordered insertion triples in lexicographic order with every entry in
/// `[1, N-2]` and `a + b + c = (N-2) + 2(N-k)`.
pub fn valid_triples(surface: Hypersurface) -> Vec<[u32; 3]> {
    let n = i64::from(surface.n);
    let total = (n - 2) - 2 * surface.excess();
    let mut out = Vec::new();
    for a in 1..=n - 2 {
        for b in 1..=n - 2 {
            let c = total - a - b;
            if (1..=n - 2).contains(&c) {
                out.push([a as u32, b as u32, c as u32]);
            }
        }
    }
    out
}

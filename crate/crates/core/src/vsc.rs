//! Virtual structure constants of a degree-`k` hypersurface in `P^(N-1)` and the
//! degree-2 three-point invariant built from them.

use std::fmt;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactpoly::{Rat, UniPoly};

/// A hypersurface of degree `k` in `P^(N-1)`, with the working range checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypersurface {
    #[serde(rename = "N")]
    pub n: u32,
    pub k: u32,
}

impl Hypersurface {
    /// Requires `2N - 5 >= k >= N - 2 >= 2`.
    pub fn new(n: u32, k: u32) -> Result<Self> {
        let h = Hypersurface { n, k };
        if h.in_standard_range() {
            Ok(h)
        } else {
            Err(Error::OutOfRange(format!(
                "(N, k) = ({n}, {k}) violates 2N-5 >= k >= N-2 >= 2"
            )))
        }
    }

    /// Skips the range check; only `N >= 2` and `k >= 2` are enforced.
    pub fn unchecked(n: u32, k: u32) -> Result<Self> {
        if n < 2 || k < 2 {
            return Err(Error::OutOfRange(format!("(N, k) = ({n}, {k}) needs N, k >= 2")));
        }
        Ok(Hypersurface { n, k })
    }

    pub fn in_standard_range(&self) -> bool {
        let (n, k) = (i64::from(self.n), i64::from(self.k));
        2 * n - 5 >= k && k >= n - 2 && n - 2 >= 2
    }

    /// `k - N`, which may be negative.
    pub fn excess(&self) -> i64 {
        i64::from(self.k) - i64::from(self.n)
    }

    /// Largest index `m` with a possibly nonzero constant in degree `d`.
    pub fn support_top(&self, d: u32) -> i64 {
        i64::from(self.n) - 1 + self.excess() * i64::from(d)
    }
}

/// Coefficients of `k * prod_{j=1}^{k-1} (j w + (k - j))`, lowest power first.
pub fn vsc_d1(k: u32) -> Result<Vec<Rat>> {
    if k < 2 {
        return Err(Error::OutOfRange(format!("degree-1 constants need k >= 2, got {k}")));
    }
    let kk = i64::from(k);
    let mut p = UniPoly::constant(Rat::from(kk));
    for j in 1..kk {
        p = &p * &UniPoly::new(vec![Rat::from(kk - j), Rat::from(j)]);
    }
    Ok(p.padded(k as usize, &Rat::zero()))
}

/// Constants `L_m^{N,k,d}` for `1 <= d <= d_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VscTable {
    pub surface: Hypersurface,
    levels: Vec<Vec<Rat>>,
}

impl VscTable {
    /// Builds the table degree by degree up to `d_max`.
    pub fn build(surface: Hypersurface, d_max: u32) -> Result<Self> {
        let mut table = VscTable { surface, levels: vec![vsc_d1(surface.k)?] };
        for d in 2..=d_max {
            let next = vsc_d(&table, d)?;
            table.levels.push(next);
        }
        Ok(table)
    }

    pub fn d_max(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Coefficient list of degree `d`, or `None` if it was not computed.
    pub fn level(&self, d: u32) -> Option<&[Rat]> {
        d.checked_sub(1).and_then(|i| self.levels.get(i as usize)).map(Vec::as_slice)
    }

    /// `L_m^{N,k,d}`, zero outside its support. Panics if degree `d` is missing.
    pub fn get(&self, d: u32, m: i64) -> Rat {
        let level = self.level(d).unwrap_or_else(|| panic!("degree {d} not in table"));
        usize::try_from(m).ok().and_then(|m| level.get(m)).cloned().unwrap_or_else(Rat::zero)
    }

    fn get_opt(&self, d: u32, m: i64) -> Option<&Rat> {
        let level = self.level(d)?;
        usize::try_from(m).ok().and_then(|m| level.get(m)).filter(|c| !c.is_zero())
    }

    /// Truncates to the first `d_max` degrees.
    pub fn truncated(&self, d_max: u32) -> Result<Self> {
        if d_max == 0 || d_max > self.d_max() {
            return Err(Error::MissingDegree(d_max));
        }
        Ok(VscTable { surface: self.surface, levels: self.levels[..d_max as usize].to_vec() })
    }
}

/// Degree-`d` constants from the lower-degree ones already in `table`.
///
/// Sums over chains `0 = i_0 < ... < i_l = d` (`l >= 2`) and weakly increasing
/// `j_1 <= ... <= j_l <= top` with `j_0 = 0`, each step contributing
/// `((i + (d - i) z) / d)^(j_n - j_(n-1)) * L^{i_n - i_(n-1)}_{j_n + (N - k) i_(n-1)}`.
pub fn vsc_d(table: &VscTable, d: u32) -> Result<Vec<Rat>> {
    if d < 2 {
        return vsc_d1(table.surface.k);
    }
    for lower in 1..d {
        if table.level(lower).is_none() {
            return Err(Error::MissingDegree(lower));
        }
    }
    let top = table.surface.support_top(d);
    if top < 0 {
        return Ok(Vec::new());
    }
    let top = top as u32;
    let ctx = ChainCtx::new(table, d, top);
    let mut total = UniPoly::zero();
    for l in 2..=d {
        let sign = if l % 2 == 0 { Rat::one() } else { Rat::from(-1) };
        for interior in combinations(1, d - 1, l - 1) {
            let mut chain = Vec::with_capacity(l as usize + 1);
            chain.push(0);
            chain.extend(interior);
            chain.push(d);
            let sum = ctx.sum_over_j(&chain, 1, 0, UniPoly::constant(sign.clone()));
            total = &total + &sum;
        }
    }
    let len = top as usize + 1;
    if total.degree().is_some_and(|deg| deg >= len) {
        return Err(Error::Precondition(format!(
            "degree-{d} constants exceed their support bound {top}"
        )));
    }
    Ok(total.padded(len, &Rat::zero()))
}

struct ChainCtx<'a> {
    table: &'a VscTable,
    top: u32,
    // affine[i][e] = ((i + (d - i) z) / d)^e
    affine: Vec<Vec<UniPoly<Rat>>>,
}

impl<'a> ChainCtx<'a> {
    fn new(table: &'a VscTable, d: u32, top: u32) -> Self {
        let dd = Rat::from(d);
        let affine = (0..d)
            .map(|i| {
                let base = UniPoly::new(vec![Rat::from(i) / dd.clone(), Rat::from(d - i) / dd.clone()]);
                let mut pows = vec![UniPoly::constant(Rat::one())];
                for e in 0..top as usize {
                    let next = &pows[e] * &base;
                    pows.push(next);
                }
                pows
            })
            .collect();
        ChainCtx { table, top, affine }
    }

    fn sum_over_j(&self, chain: &[u32], n: usize, j_prev: u32, acc: UniPoly<Rat>) -> UniPoly<Rat> {
        if n == chain.len() {
            return acc;
        }
        let (i_prev, i_cur) = (chain[n - 1], chain[n]);
        let shift = (i64::from(self.table.surface.n) - i64::from(self.table.surface.k)) * i64::from(i_prev);
        let mut out = UniPoly::zero();
        for j in j_prev..=self.top {
            let Some(c) = self.table.get_opt(i_cur - i_prev, i64::from(j) + shift) else {
                continue;
            };
            let factor = self.affine[i_prev as usize][(j - j_prev) as usize].scale(c);
            let next = &acc * &factor;
            out = &out + &self.sum_over_j(chain, n + 1, j, next);
        }
        out
    }
}

/// Increasing `size`-subsets of `lo..=hi`.
fn combinations(lo: u32, hi: u32, size: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, hi: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in start..=hi {
            cur.push(x);
            go(x + 1, hi, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 || lo <= hi {
        go(lo, hi, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Valid range of `m` for [`gw2_3pt`]: `1 + 2(k - N) <= m <= N - 2`.
pub fn gw2_m_range(surface: Hypersurface) -> (i64, i64) {
    (1 + 2 * surface.excess(), i64::from(surface.n) - 2)
}

/// Codimensions `(1, N - 2 - m, m - 1 - 2(k - N))` of the three insertions for `m`.
pub fn gw2_insertions(surface: Hypersurface, m: i64) -> (i64, i64, i64) {
    (1, i64::from(surface.n) - 2 - m, m - 1 - 2 * surface.excess())
}

/// Degree-2 three-point invariant with a hyperplane insertion.
///
/// `k (L2_m - L2_{1+2e} - 2 L1_{1+e} sum_{j=0}^{e} (L1_{m-j} - L1_{1+2e-j}))`, `e = k - N`.
pub fn gw2_3pt(table: &VscTable, m: i64) -> Result<Rat> {
    let s = table.surface;
    let (lo, hi) = gw2_m_range(s);
    if m < lo || m > hi {
        return Err(Error::OutOfRange(format!("m = {m} outside [{lo}, {hi}]")));
    }
    if table.d_max() < 2 {
        return Err(Error::MissingDegree(2));
    }
    let e = s.excess();
    let mut sum = Rat::zero();
    for j in 0..=e {
        sum += table.get(1, m - j) - table.get(1, 1 + 2 * e - j);
    }
    let bracket = table.get(2, m) - table.get(2, 1 + 2 * e) - Rat::from(2) * table.get(1, 1 + e) * sum;
    Ok(Rat::from(s.k) * bracket)
}

impl Serialize for VscTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(3))?;
        map.serialize_entry("N", &self.surface.n)?;
        map.serialize_entry("k", &self.surface.k)?;
        map.serialize_entry("L", &Entries(&self.levels))?;
        map.end()
    }
}

struct Entries<'a>(&'a [Vec<Rat>]);

impl Serialize for Entries<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let total = self.0.iter().map(Vec::len).sum();
        let mut map = serializer.serialize_map(Some(total))?;
        for (i, level) in self.0.iter().enumerate() {
            for (m, c) in level.iter().enumerate() {
                map.serialize_entry(&format!("{}:{m}", i + 1), c)?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for VscTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            #[serde(rename = "N")]
            n: u32,
            k: u32,
            #[serde(rename = "L")]
            l: RawEntries,
        }
        let r = Repr::deserialize(deserializer)?;
        let surface = Hypersurface::unchecked(r.n, r.k).map_err(de::Error::custom)?;
        let d_max = r.l.0.iter().map(|&(d, _, _)| d).max().unwrap_or(0);
        let mut levels = Vec::new();
        for d in 1..=d_max {
            let len = if d == 1 { surface.k as i64 } else { surface.support_top(d) + 1 }.max(0) as usize;
            let mut level = vec![Rat::zero(); len];
            let mut seen = vec![false; len];
            for (dd, m, c) in r.l.0.iter().filter(|e| e.0 == d) {
                let slot = level
                    .get_mut(*m)
                    .ok_or_else(|| de::Error::custom(format!("entry {dd}:{m} outside support")))?;
                *slot = c.clone();
                seen[*m] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(de::Error::custom(format!("degree {d} has missing entries")));
            }
            levels.push(level);
        }
        Ok(VscTable { surface, levels })
    }
}

struct RawEntries(Vec<(u32, usize, Rat)>);

impl<'de> Deserialize<'de> for RawEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawEntries;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from \"d:m\" to rationals")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<RawEntries, A::Error> {
                let mut out = Vec::new();
                while let Some((key, c)) = map.next_entry::<String, Rat>()? {
                    let (d, m) = key
                        .split_once(':')
                        .and_then(|(d, m)| Some((d.parse().ok()?, m.parse().ok()?)))
                        .ok_or_else(|| de::Error::custom(format!("bad key {key:?}")))?;
                    out.push((d, m, c));
                }
                Ok(RawEntries(out))
            }
        }
        deserializer.deserialize_map(V)
    }
}

//! Lines on explicit hypersurfaces: normal-bundle splitting from kernel
//! dimensions, and the cohomology pulled back along a double cover.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::covmoduli::QuadraticPencil;
use crate::error::{Error, Result};
use crate::exactpoly::{BiForm, Field, Rat};
use crate::linalg::Matrix;
use crate::vsc::Hypersurface;

/// A line `{x_j = 0, j >= 3}` on a hypersurface `x_3 F_3 + ... + x_N F_N`,
/// recorded by `f_j = F_j(s, t, 0, ..., 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineData<F> {
    pub n: u32,
    pub k: u32,
    pub f: Vec<BiForm<F>>,
}

impl<F: Field> LineData<F> {
    pub fn new(n: u32, k: u32, f: Vec<BiForm<F>>) -> Result<Self> {
        if n < 3 || k < 1 {
            return Err(Error::OutOfRange(format!("(N, k) = ({n}, {k})")));
        }
        if f.len() != (n - 2) as usize {
            return Err(Error::DimensionMismatch(format!(
                "expected {} forms, got {}",
                n - 2,
                f.len()
            )));
        }
        if let Some(bad) = f.iter().find(|g| g.degree() != (k - 1) as usize) {
            return Err(Error::DegreeMismatch(format!(
                "form of degree {} on a degree-{k} hypersurface",
                bad.degree()
            )));
        }
        let first = f[0].coeff(0);
        if f.iter().any(|g| !g.coeff(0).same_field(first)) {
            return Err(Error::FieldMismatch);
        }
        Ok(LineData { n, k, f })
    }

    fn sample(&self) -> &F {
        self.f[0].coeff(0)
    }
}

/// Matrix of `g (x) e_j -> g * h_j` from `S^e(2 vars) (x) C^r` to forms of degree `e + deg h`.
/// Columns are ordered by `j` first, then by the monomial of `g`.
fn multiplication_matrix<F: Field>(h: &[BiForm<F>], e: usize, like: &F) -> Matrix<F> {
    let deg = h[0].degree();
    let rows = e + deg + 1;
    let mut m = Matrix::zeros(rows, (e + 1) * h.len(), like);
    for (j, hj) in h.iter().enumerate() {
        for i in 0..=e {
            for (r, c) in hj.coeffs().iter().enumerate() {
                m.set(i + r, j * (e + 1) + i, c.clone());
            }
        }
    }
    m
}

/// `dim ker(S^{m+1} W (x) V/W -> S^{k+m} W)`, i.e. `h^0` of the normal bundle twisted by `m`.
pub fn twisted_kernel_dim<F: Field>(line: &LineData<F>, m: i64) -> Result<usize> {
    if m < -1 {
        return Err(Error::OutOfRange(format!("twist {m} below -1")));
    }
    let mat = multiplication_matrix(&line.f, (m + 1) as usize, line.sample());
    Ok(mat.cols() - mat.rank())
}

/// Splitting `a_1 >= ... >= a_r` of the normal bundle into line bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingType(pub Vec<i64>);

impl SplittingType {
    pub fn new(mut a: Vec<i64>) -> Self {
        a.sort_unstable_by(|x, y| y.cmp(x));
        SplittingType(a)
    }

    /// `a` copies of 0 followed by `b` copies of -1.
    pub fn generic(zeros: usize, minus_ones: usize) -> Self {
        SplittingType::new([vec![0; zeros], vec![-1; minus_ones]].concat())
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `h^0` of the twist by `m`.
    pub fn h0(&self, m: i64) -> usize {
        self.0.iter().map(|a| (a + m + 1).max(0) as usize).sum()
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Reads the splitting off `h^0(N(m))` for `m = -1, 0, ...`, stopping one twist
/// after every summand has been seen (and at `m = k` at the latest).
///
/// Every summand has degree at most 1, so `h^0(N(-2)) = 0` and
/// `h^0(N(m)) - h^0(N(m-1))` counts the summands with `a_i >= -m`.
pub fn splitting_type<F: Field>(line: &LineData<F>) -> Result<SplittingType> {
    let rank = (line.n - 3) as usize;
    let top = i64::from(line.k);
    let mut profile = Vec::new();
    let mut a = Vec::new();
    let mut prev_h = 0usize;
    let mut prev_count = 0usize;
    let mut m = -1;
    while m <= top {
        let h = twisted_kernel_dim(line, m)?;
        profile.push(h);
        let count = h.checked_sub(prev_h).ok_or_else(|| {
            Error::InconsistentProfile(format!("h0 decreased at twist {m}"))
        })?;
        if count < prev_count {
            return Err(Error::InconsistentProfile(format!("non-convex profile at twist {m}")));
        }
        if prev_count == rank {
            // one extra twist past completion, as a consistency check
            if count != rank {
                return Err(Error::InconsistentProfile(format!("h0 grows too fast at twist {m}")));
            }
            break;
        }
        a.extend(std::iter::repeat_n(-m, count - prev_count));
        prev_h = h;
        prev_count = count;
        m += 1;
    }
    let split = SplittingType::new(a);
    let expected_degree = i64::from(line.n) - 2 - i64::from(line.k);
    if split.rank() != rank || split.degree() != expected_degree {
        return Err(Error::InconsistentProfile(format!(
            "profile {profile:?} gives {split}, expected rank {rank} and degree {expected_degree}"
        )));
    }
    if let Some(i) = (0..profile.len()).find(|&i| split.h0(i as i64 - 1) != profile[i]) {
        return Err(Error::InconsistentProfile(format!("twist {} disagrees with {split}", i as i64 - 1)));
    }
    Ok(split)
}

/// Polynomial in `x_1, ..., x_n` stored as `(exponents, coefficient)` terms.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiPoly<F> {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, F)>,
}

impl<F: Field> MultiPoly<F> {
    pub fn new(nvars: usize, terms: Vec<(Vec<u32>, F)>) -> Result<Self> {
        if terms.iter().any(|(e, _)| e.len() != nvars) {
            return Err(Error::DimensionMismatch("exponent vector length".into()));
        }
        Ok(MultiPoly { nvars, terms })
    }

    /// Total degree, requiring every nonzero term to share it.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let mut degs = self.terms.iter().filter(|(_, c)| !c.is_zero()).map(|(e, _)| e.iter().sum::<u32>());
        let first = degs.next().ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::Precondition("polynomial is not homogeneous".into()))
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, c)| e[var] > 0 && !c.is_zero())
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c.times(&c.from_rat_like(&Rat::from(e[var]))))
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> MultiPoly<G> {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), f(c))).collect() }
    }

    /// Restriction to the line `s p + t q`, as a form of degree `degree`.
    pub fn restrict(&self, p: &[F], q: &[F], degree: usize) -> Result<BiForm<F>> {
        let like = &p[0];
        let coords: Vec<BiForm<F>> = (0..self.nvars)
            .map(|i| BiForm::new(1, vec![q[i].clone(), p[i].clone()]))
            .collect::<Result<_>>()?;
        let mut out = BiForm::zero(degree, like);
        for (e, c) in &self.terms {
            if c.is_zero() {
                continue;
            }
            if e.iter().sum::<u32>() as usize != degree {
                return Err(Error::Precondition("polynomial is not homogeneous".into()));
            }
            let mut term = BiForm::monomial(0, 0, like.from_rat_like(&Rat::one()).times(c));
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&coords[i].pow(ei)?)?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }
}

/// Puts a line given by two spanning points into normal form.
///
/// The complement is spanned by the coordinate vectors outside the pivot columns
/// of `[p; q]`, so `f_j` is `dF/dx_c` restricted to the line, for each such column `c`.
pub fn adapt_line<F: Field>(poly: &MultiPoly<F>, p: &[F], q: &[F]) -> Result<LineData<F>> {
    let n = poly.nvars;
    if p.len() != n || q.len() != n {
        return Err(Error::DimensionMismatch("parametrization length".into()));
    }
    let ech = Matrix::from_rows(vec![p.to_vec(), q.to_vec()])?.echelon();
    if ech.pivots.len() != 2 {
        return Err(Error::RankDeficient);
    }
    let k = poly.homogeneous_degree()?;
    if !poly.restrict(p, q, k as usize)?.is_zero() {
        return Err(Error::LineNotOnHypersurface);
    }
    let f = (0..n)
        .filter(|c| !ech.pivots.contains(c))
        .map(|c| poly.derivative(c).restrict(p, q, (k - 1) as usize))
        .collect::<Result<Vec<_>>>()?;
    LineData::new(n as u32, k, f)
}

/// Random coefficients in `-9..=9`, reproducible from `seed`.
pub fn random_line(n: u32, k: u32, seed: u64) -> Result<LineData<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = (0..n - 2)
        .map(|_| BiForm::new((k - 1) as usize, (0..k).map(|_| Rat::from(rng.gen_range(-9i64..=9))).collect()))
        .collect::<Result<Vec<_>>>()?;
    LineData::new(n, k, f)
}

/// Splitting type of a random line in the standard range.
pub fn random_generic_splitting(n: u32, k: u32, seed: u64) -> Result<SplittingType> {
    Hypersurface::new(n, k)?;
    splitting_type(&random_line(n, k, seed)?)
}

/// The splitting a generic line on a generic hypersurface has.
pub fn expected_generic_splitting(n: u32, k: u32) -> SplittingType {
    let (n, k) = (n as i64, k as i64);
    SplittingType::generic((2 * n - k - 5).max(0) as usize, (k - n + 2).max(0) as usize)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoverCohomology<F> {
    pub h0: usize,
    pub h1: usize,
    /// Each vector lists, for `j = 3..N`, the `(s^2, st, t^2)` coefficients of the
    /// quadratic multiplying `e_j`.
    pub kernel_basis: Vec<Vec<F>>,
}

/// Kernel and cokernel of `S^2 U (x) V/W -> S^{2k} U`, `g e_j -> g f_j(phi1, phi2)`.
pub fn cover_cohomology<F: Field>(line: &LineData<F>, pencil: &QuadraticPencil<F>) -> Result<CoverCohomology<F>> {
    if pencil.rank() < 2 {
        return Err(Error::RankOnePencil);
    }
    let pulled = line
        .f
        .iter()
        .map(|fj| fj.compose(&pencil.phi1, &pencil.phi2))
        .collect::<Result<Vec<_>>>()?;
    let mat = multiplication_matrix(&pulled, 2, line.sample());
    let rank = mat.rank();
    let kernel = mat.kernel();
    // reorder each block from (t^2, st, s^2) to (s^2, st, t^2)
    let kernel_basis = kernel
        .into_iter()
        .map(|v| v.chunks(3).flat_map(|b| b.iter().rev().cloned()).collect())
        .collect();
    Ok(CoverCohomology { h0: mat.cols() - rank, h1: mat.rows() - rank, kernel_basis })
}

/// Whether two vectors are nonzero scalar multiples of each other.
pub fn proportional<F: Field>(u: &[F], v: &[F]) -> bool {
    if u.len() != v.len() || u.iter().all(F::is_zero) || v.iter().all(F::is_zero) {
        return false;
    }
    (0..u.len()).all(|i| (0..u.len()).all(|j| u[i].times(&v[j]).minus(&u[j].times(&v[i])).is_zero()))
}

/// The octic in `P^6`: `sum_j x_j F_j + x_3^8 + ... + x_7^8` with
/// `F = (8 x1^7, 8 x1^6 x2, 8 x1^4 x2^3, 8 x1^2 x2^5, 8 x2^7)`.
pub fn octic_example() -> MultiPoly<Rat> {
    let f_exps = [(7, 0), (6, 1), (4, 3), (2, 5), (0, 7)];
    let mut terms = Vec::new();
    for (j, &(e1, e2)) in f_exps.iter().enumerate() {
        let mut e = vec![0; 7];
        e[0] = e1;
        e[1] = e2;
        e[2 + j] = 1;
        terms.push((e, Rat::from(8)));
        let mut pure = vec![0; 7];
        pure[2 + j] = 8;
        terms.push((pure, Rat::one()));
    }
    MultiPoly { nvars: 7, terms }
}

/// Spanning points of `eps x1 - x2 = x3 + eps x4 = x5 = x6 = x7 = 0`.
pub fn octic_twisted_line<F: Field>(eps: &F) -> (Vec<F>, Vec<F>) {
    let zero = eps.zero_like();
    let one = eps.one_like();
    let mut p = vec![zero.clone(); 7];
    let mut q = vec![zero; 7];
    p[0] = one.clone();
    p[1] = eps.clone();
    q[2] = eps.negated();
    q[3] = one;
    (p, q)
}

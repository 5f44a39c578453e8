//! Cycle sums, MUB / kUB / nUB checks, and characteristic-polynomial
//! coefficients of the per-input Gram matrices.
//!
//! For an index tuple `x` the vectors `|y_{x_y}⟩` (one per basis `y`) have
//! Gram matrix `G_{yy'} = ⟨y_{x_y}|y'_{x_{y'}}⟩`. A k-cycle sum over a subset
//! `J` of bases is `Σ_σ Π_{y∈J} G_{y σ(y)}` with `σ` running over the
//! `(k−1)!` cyclic permutations of `J`.

use serde::Serialize;

use crate::bases::{Basis, BasisSet};
use crate::budget;
use crate::combinatorics::{self, binomial, cycles, factorial, falling_factorial};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64};
use crate::par;

/// Cross-overlap matrices `B_y† B_{y'}` for every ordered pair of bases.
#[derive(Debug, Clone)]
pub(crate) struct Overlaps {
    n: usize,
    d: usize,
    blocks: Vec<CMatrix>,
}

impl Overlaps {
    pub(crate) fn new(s: &BasisSet) -> Self {
        let n = s.n();
        let mut blocks = Vec::with_capacity(n * n);
        for a in s.bases() {
            for b in s.bases() {
                blocks.push(a.overlaps(b));
            }
        }
        Self {
            n,
            d: s.dim(),
            blocks,
        }
    }

    /// `⟨y_i | z_j⟩`.
    #[inline]
    pub(crate) fn get(&self, y: usize, i: usize, z: usize, j: usize) -> C64 {
        self.blocks[y * self.n + z][(i, j)]
    }

    /// Gram matrix of the vectors `(bases[p])_{x[p]}`.
    pub(crate) fn gram(&self, bases: &[usize], x: &[usize]) -> CMatrix {
        let k = bases.len();
        CMatrix::from_fn(k, k, |a, b| self.get(bases[a], x[a], bases[b], x[b]))
    }

    /// Cycle sum over positions `0..bases.len()` with `cycles` precomputed.
    #[inline]
    pub(crate) fn cycle_sum(&self, bases: &[usize], x: &[usize], cycles: &[Vec<usize>]) -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for c in cycles {
            let k = c.len();
            let mut prod = C64::new(1.0, 0.0);
            for i in 0..k {
                let (p, q) = (c[i], c[(i + 1) % k]);
                prod *= self.get(bases[p], x[p], bases[q], x[q]);
            }
            total += prod;
        }
        total
    }
}

/// Uniform value `(k−1)!/d^{k−1}` required of every k-cycle sum.
pub fn uniform_target(k: usize, d: usize) -> f64 {
    factorial(k - 1) as f64 / (d as f64).powi(k as i32 - 1)
}

fn check_subset(s: &BasisSet, subset: &[usize]) -> Result<()> {
    if subset.len() < 2 {
        return Err(Error::InvalidSubset(format!(
            "cycle sums need at least 2 bases, got {}",
            subset.len()
        )));
    }
    for (i, &y) in subset.iter().enumerate() {
        if y >= s.n() {
            return Err(Error::IndexOutOfRange {
                what: "basis",
                index: y,
                limit: s.n(),
            });
        }
        if subset[..i].contains(&y) {
            return Err(Error::InvalidSubset(format!("basis {y} repeated")));
        }
    }
    Ok(())
}

fn check_indices(x: &[usize], d: usize) -> Result<()> {
    for &v in x {
        if v >= d {
            return Err(Error::IndexOutOfRange {
                what: "vector",
                index: v,
                limit: d,
            });
        }
    }
    Ok(())
}

/// Sum over the `(k−1)!` k-cycles of `subset`; `x[p]` selects the vector of
/// basis `subset[p]`.
pub fn cycle_sum(s: &BasisSet, subset: &[usize], x: &[usize]) -> Result<C64> {
    check_subset(s, subset)?;
    if x.len() != subset.len() {
        return Err(Error::InvalidArgument(format!(
            "{} indices given for {} bases",
            x.len(),
            subset.len()
        )));
    }
    check_indices(x, s.dim())?;
    let ov = Overlaps::new(s);
    Ok(ov.cycle_sum(subset, x, &cycles(subset.len())))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MubReport {
    pub passed: bool,
    /// `max_{i,j} ||⟨a_i|b_j⟩| − 1/√d|`.
    pub max_deviation: f64,
}

pub fn mub_check(a: &Basis, b: &Basis, tol: f64) -> Result<MubReport> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let target = 1.0 / (a.dim() as f64).sqrt();
    let max_deviation = a
        .overlaps(b)
        .iter()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max);
    Ok(MubReport {
        passed: max_deviation <= tol,
        max_deviation,
    })
}

/// Pairwise MUB check over every pair in `s`; reports the worst pair.
pub fn pairwise_mub_check(s: &BasisSet, tol: f64) -> Result<MubReport> {
    let mut worst = 0.0f64;
    for i in 0..s.n() {
        for j in i + 1..s.n() {
            worst = worst.max(mub_check(s.basis(i), s.basis(j), tol)?.max_deviation);
        }
    }
    Ok(MubReport {
        passed: worst <= tol,
        max_deviation: worst,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violator {
    pub subset: Vec<usize>,
    pub x: Vec<usize>,
    pub re: f64,
    pub im: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubsetStats {
    pub subset: Vec<usize>,
    pub max_deviation: f64,
    /// Mean of `|cycle sum − target|` over all index assignments.
    pub mean_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KubReport {
    pub k: usize,
    pub target: f64,
    pub tol: f64,
    pub passed: bool,
    /// The assignment with the largest deviation across all subsets.
    pub worst: Violator,
    pub subsets: Vec<SubsetStats>,
}

/// Checks that every k-subset of `s` is a kUB: all k-cycle sums equal
/// `(k−1)!/d^{k−1}` within `tol`, measured as complex modulus.
pub fn kub_check(s: &BasisSet, k: usize, tol: f64) -> Result<KubReport> {
    let n = s.n();
    let d = s.dim();
    if k < 2 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 2..={n}")));
    }
    let per_subset = budget::tuple_count(d, k);
    budget::check(per_subset.saturating_mul(binomial(n, k)))?;
    let count = per_subset as usize;
    let target = uniform_target(k, d);
    let ov = Overlaps::new(s);
    let cyc = cycles(k);

    let mut worst: Option<Violator> = None;
    let mut subsets = Vec::new();
    for subset in combinatorics::subsets(n, k) {
        let values = par::map_range(count, |idx| {
            let x = combinatorics::tuple(idx, d, k);
            ov.cycle_sum(&subset, &x, &cyc)
        });
        let devs: Vec<f64> = values.iter().map(|v| (v - target).norm()).collect();
        let (arg, max_dev) =
            devs.iter()
                .copied()
                .enumerate()
                .fold(
                    (0, f64::NEG_INFINITY),
                    |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
                );
        if worst.as_ref().is_none_or(|w| max_dev > w.deviation) {
            worst = Some(Violator {
                subset: subset.clone(),
                x: combinatorics::tuple(arg, d, k),
                re: values[arg].re,
                im: values[arg].im,
                deviation: max_dev,
            });
        }
        subsets.push(SubsetStats {
            subset,
            max_deviation: max_dev,
            mean_deviation: par::pairwise_sum(&devs) / count as f64,
        });
    }
    let worst = worst.expect("at least one subset");
    Ok(KubReport {
        k,
        target,
        tol,
        passed: worst.deviation <= tol,
        worst,
        subsets,
    })
}

/// Characteristic-polynomial coefficients `(c_1)_x … (c_n)_x` of every
/// per-input Gram matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffTable {
    pub n: usize,
    pub d: usize,
    /// `coeffs[index][k - 1]` is `(c_k)_x` for `x = tuple(index)`.
    pub coeffs: Vec<Vec<f64>>,
}

impl CoeffTable {
    pub fn get(&self, x: &[usize]) -> &[f64] {
        &self.coeffs[combinatorics::encode_tuple(x, self.d)]
    }

    /// `Σ_x (c_k)_x` for each `k = 1..=n`.
    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.n)
            .map(|k| {
                let col: Vec<f64> = self.coeffs.iter().map(|row| row[k]).collect();
                par::pairwise_sum(&col)
            })
            .collect()
    }
}

/// Closed value of `Σ_x (c_k)_x`: `(−1)^k C(n,k) d^{n−k} d!/(d−k)!`.
pub fn expected_coefficient_sum(n: usize, d: usize, k: usize) -> f64 {
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * binomial(n, k) as f64 * (d as f64).powi((n - k) as i32) * falling_factorial(d, k) as f64
}

/// Tolerance on imaginary parts of principal minors and on Gram hermiticity.
pub const MINOR_IMAG_TOL: f64 = 1e-10;

fn principal_minor(g: &CMatrix, subset: &[usize]) -> C64 {
    match subset.len() {
        1 => g[(subset[0], subset[0])],
        2 => {
            let (a, b) = (subset[0], subset[1]);
            g[(a, a)] * g[(b, b)] - g[(a, b)] * g[(b, a)]
        }
        _ => g.select_rows(subset).select_columns(subset).determinant(),
    }
}

/// Coefficients of `λ^n + c_1 λ^{n−1} + … + c_n` for the Gram matrix `g`,
/// from `c_k = (−1)^k Σ_{|J|=k} det G[J]`.
pub fn gram_char_poly(g: &CMatrix, subsets_by_k: &[Vec<Vec<usize>>]) -> Result<Vec<f64>> {
    let residual = linalg::hermitian_residual(g);
    if residual > MINOR_IMAG_TOL {
        return Err(Error::NotHermitian { residual });
    }
    let mut out = Vec::with_capacity(subsets_by_k.len());
    for (k0, subsets) in subsets_by_k.iter().enumerate() {
        let sum: C64 = subsets.iter().map(|j| principal_minor(g, j)).sum();
        if sum.im.abs() > MINOR_IMAG_TOL {
            return Err(Error::ComplexMinor { imag: sum.im });
        }
        let sign = if (k0 + 1) % 2 == 0 { 1.0 } else { -1.0 };
        out.push(sign * sum.re);
    }
    Ok(out)
}

pub fn char_poly_coeffs(s: &BasisSet) -> Result<CoeffTable> {
    let (n, d) = (s.n(), s.dim());
    let count = budget::check_tuples(d, n)?;
    let ov = Overlaps::new(s);
    let all: Vec<usize> = (0..n).collect();
    let subsets_by_k: Vec<Vec<Vec<usize>>> =
        (1..=n).map(|k| combinatorics::subsets(n, k)).collect();
    let coeffs = par::try_map_range(count, |idx| {
        let x = combinatorics::tuple(idx, d, n);
        gram_char_poly(&ov.gram(&all, &x), &subsets_by_k)
    })?;
    Ok(CoeffTable { n, d, coeffs })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReductionReport {
    pub omitted: usize,
    pub passed: bool,
    pub max_residual: f64,
}

/// Checks `Σ_{x_k} [n-cycle sum] = (n−1) · [(n−1)-cycle sum without k]` for
/// every assignment of the remaining bases. Holds for arbitrary bases.
pub fn reduction_identity_check(s: &BasisSet, omitted: usize, tol: f64) -> Result<ReductionReport> {
    let (n, d) = (s.n(), s.dim());
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "reduction identity needs n >= 3, got {n}"
        )));
    }
    if omitted >= n {
        return Err(Error::IndexOutOfRange {
            what: "basis",
            index: omitted,
            limit: n,
        });
    }
    let count = budget::check_tuples(d, n - 1)?;
    budget::check(budget::tuple_count(d, n))?;
    let ov = Overlaps::new(s);
    let all: Vec<usize> = (0..n).collect();
    let rest: Vec<usize> = (0..n).filter(|&y| y != omitted).collect();
    let full_cycles = cycles(n);
    let reduced_cycles = cycles(n - 1);
    let residuals = par::map_range(count, |idx| {
        let xr = combinatorics::tuple(idx, d, n - 1);
        let mut x = vec![0; n];
        for (p, &y) in rest.iter().enumerate() {
            x[y] = xr[p];
        }
        let mut lhs = C64::new(0.0, 0.0);
        for v in 0..d {
            x[omitted] = v;
            lhs += ov.cycle_sum(&all, &x, &full_cycles);
        }
        let rhs = ov.cycle_sum(&rest, &xr, &reduced_cycles) * (n - 1) as f64;
        (lhs - rhs).norm()
    });
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    Ok(ReductionReport {
        omitted,
        passed: max_residual <= tol,
        max_residual,
    })
}

/// `Σ_x |n-cycle sum(x) − (n−1)!/d^{n−1}|²`; zero exactly on nUBs.
pub fn nub_residual(s: &BasisSet) -> Result<f64> {
    let (n, d) = (s.n(), s.dim());
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n = {n}: need at least 2 bases"
        )));
    }
    let count = budget::check_tuples(d, n)?;
    Ok(residual_from_overlaps(&Overlaps::new(s), &cycles(n), count))
}

pub(crate) fn residual_from_overlaps(ov: &Overlaps, cyc: &[Vec<usize>], count: usize) -> f64 {
    let (n, d) = (ov.n, ov.d);
    let target = uniform_target(n, d);
    let all: Vec<usize> = (0..n).collect();
    let terms = par::map_range(count, |idx| {
        let x = combinatorics::tuple(idx, d, n);
        (ov.cycle_sum(&all, &x, cyc) - target).norm_sqr()
    });
    par::pairwise_sum(&terms)
}

/// Determinant of the Gram matrix of `vectors` (real for any input, up to
/// rounding).
pub fn gram_det_check(vectors: &[CVector]) -> Result<f64> {
    let Some(first) = vectors.first() else {
        return Err(Error::EmptyInput);
    };
    for v in vectors {
        if v.len() != first.len() {
            return Err(Error::DimensionMismatch {
                expected: first.len(),
                found: v.len(),
            });
        }
    }
    let m = vectors.len();
    let g = CMatrix::from_fn(m, m, |a, b| vectors[a].dotc(&vectors[b]));
    Ok(g.determinant().re)
}

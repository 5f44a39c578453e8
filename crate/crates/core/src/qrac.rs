//! Success probabilities of `n^d → 1` random access codes and the bounds
//! that n-fold unbiased measurements would attain.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::bases::{Basis, BasisSet};
use crate::budget;
use crate::combinatorics::{self, binomial, falling_factorial};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::par;
use crate::unbiasedness::Overlaps;

/// Gram matrix of the vectors selected by `x` together with its top
/// eigenvalue. The Gram matrix and `M_x = Σ_y |y_{x_y}⟩⟨y_{x_y}|` share
/// their nonzero spectrum.
#[derive(Debug, Clone)]
pub struct EffectiveOperator {
    pub x: Vec<usize>,
    pub gram: CMatrix,
    pub lambda_max: f64,
    top_vector: CVector,
}

fn check_tuple(s: &BasisSet, x: &[usize]) -> Result<()> {
    if x.len() != s.n() {
        return Err(Error::InvalidArgument(format!(
            "input tuple has {} entries, expected {}",
            x.len(),
            s.n()
        )));
    }
    for &v in x {
        if v >= s.dim() {
            return Err(Error::IndexOutOfRange {
                what: "vector",
                index: v,
                limit: s.dim(),
            });
        }
    }
    Ok(())
}

pub fn effective_operator(s: &BasisSet, x: &[usize]) -> Result<EffectiveOperator> {
    check_tuple(s, x)?;
    let ov = Overlaps::new(s);
    let all: Vec<usize> = (0..s.n()).collect();
    Ok(EffectiveOperator::from_gram(x.to_vec(), ov.gram(&all, x)))
}

impl EffectiveOperator {
    pub(crate) fn from_gram(x: Vec<usize>, gram: CMatrix) -> Self {
        let (lambda_max, top_vector) = linalg::top_eigenpair(&gram);
        Self {
            x,
            gram,
            lambda_max,
            top_vector,
        }
    }

    /// Optimal encoding state for this input: the top eigenvector of `M_x`
    /// rebuilt as `Σ_y v_y |y_{x_y}⟩` from the Gram eigenvector `v`.
    pub fn optimal_encoding(&self, s: &BasisSet) -> CVector {
        let mut psi = CVector::zeros(s.dim());
        for (y, &xy) in self.x.iter().enumerate() {
            psi += s.vector(y, xy) * self.top_vector[y];
        }
        let norm = psi.norm();
        psi.unscale(norm)
    }
}

/// `M_x = Σ_y |y_{x_y}⟩⟨y_{x_y}|` as a `d × d` matrix.
pub fn full_operator(s: &BasisSet, x: &[usize]) -> Result<CMatrix> {
    check_tuple(s, x)?;
    let mut m = CMatrix::zeros(s.dim(), s.dim());
    for (y, &xy) in x.iter().enumerate() {
        let v = s.vector(y, xy);
        m += v * v.adjoint();
    }
    Ok(m)
}

/// `(1/(n d^n)) Σ_x λ_max(M_x)`.
pub fn asp_quantum(s: &BasisSet) -> Result<f64> {
    let (n, d) = (s.n(), s.dim());
    let count = budget::check_tuples(d, n)?;
    let ov = Overlaps::new(s);
    let all: Vec<usize> = (0..n).collect();
    let lambdas = par::map_range(count, |idx| {
        let x = combinatorics::tuple(idx, d, n);
        linalg::top_eigenvalue(&ov.gram(&all, &x))
    });
    Ok(par::pairwise_sum(&lambdas) / (n as f64 * count as f64))
}

/// An exact rational together with its decimal value.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactValue {
    pub exact: BigRational,
    pub value: f64,
}

impl ExactValue {
    fn new(exact: BigRational) -> Self {
        let value =
            exact.numer().to_f64().unwrap_or(f64::NAN) / exact.denom().to_f64().unwrap_or(f64::NAN);
        Self { exact, value }
    }

    pub fn from_fraction(numer: u64, denom: u64) -> Self {
        Self::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.exact.numer(), self.exact.denom())
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("ExactValue", 2)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

/// Partitions of `n` into at most `parts` non-increasing positive parts.
fn partitions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == parts {
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, parts, &mut Vec::new(), &mut out);
    out
}

fn big_factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Classical success probability of the plurality strategy: Alice sends the
/// most frequent dit of her input, Bob outputs what he received. Computed as
/// `E_x[max_b #{y : x_y = b}]/n` over count compositions, exactly.
pub fn asp_classical(n: usize, d: usize) -> Result<ExactValue> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let n_fact = big_factorial(n);
    let mut total = BigUint::zero();
    for lambda in partitions(n, d) {
        let len = lambda.len();
        let mut arrangements = n_fact.clone();
        for &p in &lambda {
            arrangements /= big_factorial(p);
        }
        let mut labelings = BigUint::one();
        for i in 0..len {
            labelings *= BigUint::from(d - i);
        }
        for (_, group) in &itertools::Itertools::chunk_by(lambda.iter(), |&&p| p) {
            labelings /= big_factorial(group.count());
        }
        total += arrangements * labelings * BigUint::from(lambda[0]);
    }
    let denom = BigUint::from(n) * BigUint::from(d).pow(n as u32);
    Ok(ExactValue::new(BigRational::new(
        total.into(),
        denom.into(),
    )))
}

/// Largest search the brute-force classical oracle accepts.
pub const BRUTE_FORCE_LIMIT: u128 = 1_000_000_000;

/// Exact optimum over all deterministic classical strategies, by
/// enumerating every decoder tuple `(D_1..D_n)`, `D_y : [d] → [d]`, and
/// letting the encoder pick the best message for each input.
pub fn asp_classical_brute_force(n: usize, d: usize) -> Result<ExactValue> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("n and d must be positive".into()));
    }
    let decoder = budget::tuple_count(d, d);
    let decoders = decoder.checked_pow(n as u32).unwrap_or(u128::MAX);
    let inputs = budget::tuple_count(d, n);
    let work = decoders
        .saturating_mul(inputs)
        .saturating_mul((d * n) as u128);
    if work > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExceeded {
            required: work,
            limit: BRUTE_FORCE_LIMIT as u64,
        });
    }
    let (decoders, inputs, decoder) = (decoders as usize, inputs as usize, decoder as usize);
    let best = par::map_range(decoders, |idx| {
        let ds: Vec<Vec<usize>> = combinatorics::tuple(idx, decoder, n)
            .into_iter()
            .map(|code| combinatorics::tuple(code, d, d))
            .collect();
        let mut correct = 0u64;
        let mut x = vec![0; n];
        for xi in 0..inputs {
            combinatorics::decode_tuple(xi, d, &mut x);
            let best_m = (0..d)
                .map(|m| (0..n).filter(|&y| ds[y][m] == x[y]).count())
                .max()
                .unwrap_or(0);
            correct += best_m as u64;
        }
        correct
    })
    .into_iter()
    .max()
    .unwrap_or(0);
    let denom = BigInt::from(n) * BigInt::from(inputs);
    Ok(ExactValue::new(BigRational::new(BigInt::from(best), denom)))
}

/// `λ^n + Σ_k a_k λ^{n−k}` with every characteristic coefficient replaced by
/// its input-averaged value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundPolynomial {
    pub n: usize,
    pub d: usize,
    /// `coeffs[k] = a_k`, with `a_0 = 1`.
    pub coeffs: Vec<f64>,
    pub greatest_root: f64,
    /// `|P(greatest_root)|`.
    pub root_residual: f64,
    /// `P'(greatest_root)`.
    pub derivative: f64,
    /// Whether the final bracketing polish found a sign change.
    pub bracketed: bool,
}

/// `a_k = (−1)^k C(n,k) d!/((d−k)! d^k)`.
pub fn uniform_coefficients(n: usize, d: usize) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let falling = falling_factorial(d, k) as f64;
            sign * binomial(n, k) as f64 * falling / (d as f64).powi(k as i32)
        })
        .collect()
}

/// Horner evaluation of `coeffs[0] λ^n + … + coeffs[n]` and its derivative.
pub fn eval_poly(coeffs: &[f64], lambda: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs {
        dp = dp * lambda + p;
        p = p * lambda + c;
    }
    (p, dp)
}

#[derive(Debug, Clone, Copy)]
struct Root {
    value: f64,
    bracketed: bool,
}

/// Greatest real root of a monic polynomial: Newton from `start` (which must
/// lie above every real root) followed by a bisection polish.
fn greatest_root(coeffs: &[f64], start: f64) -> Root {
    let mut lambda = start;
    for _ in 0..200 {
        let (p, dp) = eval_poly(coeffs, lambda);
        if p == 0.0 || dp <= 0.0 {
            break;
        }
        let step = p / dp;
        lambda -= step;
        if step.abs() <= 1e-15 * lambda.abs().max(1.0) {
            break;
        }
    }
    polish(coeffs, lambda)
}

fn polish(coeffs: &[f64], guess: f64) -> Root {
    let positive = |l: f64| eval_poly(coeffs, l).0 > 0.0;
    let mut delta = 1e-12 * guess.abs().max(1.0);
    for _ in 0..60 {
        let (lo, hi) = (guess - delta, guess + delta);
        if positive(hi) && !positive(lo) {
            let (mut lo, mut hi) = (lo, hi);
            while hi - lo > 1e-15 * hi.abs().max(1.0) {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if positive(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let best = if eval_poly(coeffs, lo).0.abs() < eval_poly(coeffs, hi).0.abs() {
                lo
            } else {
                hi
            };
            return Root {
                value: best,
                bracketed: true,
            };
        }
        delta *= 2.0;
    }
    Root {
        value: guess,
        bracketed: false,
    }
}

pub fn uniform_char_poly(n: usize, d: usize) -> Result<BoundPolynomial> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n}: need n >= 2")));
    }
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let coeffs = uniform_coefficients(n, d);
    let root = greatest_root(&coeffs, n as f64);
    let (p, dp) = eval_poly(&coeffs, root.value);
    Ok(BoundPolynomial {
        n,
        d,
        coeffs,
        greatest_root: root.value,
        root_residual: p.abs(),
        derivative: dp,
        bracketed: root.bracketed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NubBound {
    pub n: usize,
    pub d: usize,
    /// `greatest_root / n`.
    pub value: f64,
    pub polynomial: BoundPolynomial,
    /// Optimality of the bound is only established for `d >= n`.
    pub d_below_n: bool,
}

pub fn nub_bound(n: usize, d: usize) -> Result<NubBound> {
    let polynomial = uniform_char_poly(n, d)?;
    Ok(NubBound {
        n,
        d,
        value: polynomial.greatest_root / n as f64,
        polynomial,
        d_below_n: d < n,
    })
}

/// `(1 + 1/√d)/2`.
pub fn two_question_closed_form(d: usize) -> f64 {
    0.5 * (1.0 + 1.0 / (d as f64).sqrt())
}

/// Three-question closed form
/// `(1 + d/A + A/d²)/3` with `A = (d⁴ + √(d⁸ − d⁹))^{1/3}`, evaluated on
/// principal complex branches since `d⁸ − d⁹ < 0` for `d > 1`. Returns the
/// complex value; its imaginary part cancels analytically.
pub fn three_question_closed_form(d: usize) -> Complex64 {
    let d = d as f64;
    let radicand = Complex64::new(d.powi(8) - d.powi(9), 0.0);
    let a = (Complex64::new(d.powi(4), 0.0) + radicand.sqrt()).cbrt();
    (Complex64::new(1.0, 0.0) + d / a + a / (d * d)) / 3.0
}

/// Quartic whose greatest zero over four bounds four-question codes, with
/// coefficients written out term by term.
pub fn four_question_polynomial(d: usize) -> [f64; 5] {
    let d = d as f64;
    [
        1.0,
        -4.0,
        6.0 * (1.0 - 1.0 / d),
        -4.0 * (1.0 - 3.0 / d + 2.0 / (d * d)),
        1.0 - 6.0 / d + 11.0 / (d * d) - 6.0 / (d * d * d),
    ]
}

/// All real roots of a monic polynomial via companion-matrix eigenvalues,
/// each refined by a few Newton steps.
pub fn real_roots_companion(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let mut c = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        c[(0, j)] = -coeffs[j + 1] / coeffs[0];
    }
    for i in 1..n {
        c[(i, i - 1)] = 1.0;
    }
    let eig = c.complex_eigenvalues();
    let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let mut roots: Vec<f64> = eig
        .iter()
        .filter(|z| z.im.abs() <= 1e-7 * scale)
        .map(|z| {
            let mut r = z.re;
            for _ in 0..3 {
                let (p, dp) = eval_poly(coeffs, r);
                if dp != 0.0 {
                    r -= p / dp;
                }
            }
            r
        })
        .collect();
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogBase {
    Bits,
    Nats,
}

/// `−log c` with `c = max_{i,j} |⟨a_i|b_j⟩|²`.
pub fn maassen_uffink_bound(a: &Basis, b: &Basis, base: LogBase) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let c = a
        .overlaps(b)
        .iter()
        .map(|z| z.norm_sqr())
        .fold(0.0, f64::max);
    let bound = match base {
        LogBase::Bits => -c.log2(),
        LogBase::Nats => -c.ln(),
    };
    Ok(bound.max(0.0))
}

/// Slack allowed on totals and prefix comparisons in [`majorizes`].
pub const MAJORIZATION_SUM_TOL: f64 = 1e-9;
const PREFIX_TOL: f64 = 1e-12;

/// `u ≻ v`: the descending partial sums of `u` dominate those of `v`.
pub fn majorizes(u: &[f64], v: &[f64]) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let (su, sv): (f64, f64) = (u.iter().sum(), v.iter().sum());
    if (su - sv).abs() > MAJORIZATION_SUM_TOL {
        return Err(Error::SumMismatch {
            left: su,
            right: sv,
        });
    }
    let sorted = |w: &[f64]| {
        let mut w = w.to_vec();
        w.sort_by(|a, b| b.total_cmp(a));
        w
    };
    let (u, v) = (sorted(u), sorted(v));
    let (mut pu, mut pv) = (0.0, 0.0);
    for (a, b) in u.iter().zip(&v) {
        pu += a;
        pv += b;
        if pu < pv - PREFIX_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub tolerance: f64,
    pub seed: Option<u64>,
    pub provenance: Option<String>,
}

/// Classical, quantum, and nUB success probabilities for one `(n, d)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AspReport {
    pub n: usize,
    pub d: usize,
    pub classical: ExactValue,
    pub quantum: Option<f64>,
    pub nub_bound: f64,
    pub d_below_n: bool,
    pub metadata: ReportMetadata,
}

pub fn asp_report(
    n: usize,
    d: usize,
    s: Option<&BasisSet>,
    metadata: ReportMetadata,
) -> Result<AspReport> {
    if let Some(s) = s {
        if s.n() != n || s.dim() != d {
            return Err(Error::InvalidArgument(format!(
                "basis set has (n, d) = ({}, {}), report requested for ({n}, {d})",
                s.n(),
                s.dim()
            )));
        }
    }
    let bound = nub_bound(n, d)?;
    Ok(AspReport {
        n,
        d,
        classical: asp_classical(n, d)?,
        quantum: s.map(asp_quantum).transpose()?,
        nub_bound: bound.value,
        d_below_n: bound.d_below_n,
        metadata,
    })
}

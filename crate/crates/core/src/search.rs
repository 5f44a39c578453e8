//! Numerical searches over measurement bases.
//!
//! All searches pin basis 0 to the computational basis; every quantity here
//! is invariant under an overall unitary, so nothing is lost. Random streams
//! are split from a single master seed (see [`crate::rng`]).

use serde::Serialize;

use crate::bases::{self, Basis, BasisSet};
use crate::budget;
use crate::combinatorics::{self, cycles};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};
use crate::par;
use crate::qrac::EffectiveOperator;
use crate::rng;
use crate::unbiasedness::{self, uniform_target, Overlaps};

/// Result of a see-saw run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeesawState {
    #[serde(skip)]
    pub bases: BasisSet,
    /// ASP of the measurements after each encoder update, starting with the
    /// initial measurements.
    pub asp_trajectory: Vec<f64>,
    pub iterations: usize,
    pub seed: u64,
    pub converged: bool,
    /// Measurement half-steps rejected because they lowered the objective.
    pub rejected_steps: usize,
}

impl SeesawState {
    pub fn asp(&self) -> f64 {
        *self
            .asp_trajectory
            .last()
            .expect("trajectory starts non-empty")
    }
}

/// Inner fixed-point sweeps per basis and measurement half-step.
const POLAR_SWEEPS: usize = 8;

/// Optimal encoders `ψ_x` (top eigenvectors of `M_x`) and their eigenvalues.
fn encoders(s: &BasisSet) -> (Vec<CVector>, Vec<f64>) {
    let (n, d) = (s.n(), s.dim());
    let count = d.pow(n as u32);
    let ov = Overlaps::new(s);
    let all: Vec<usize> = (0..n).collect();
    let pairs = par::map_range(count, |idx| {
        let x = combinatorics::tuple(idx, d, n);
        let op = EffectiveOperator::from_gram(x, ov.gram(&all, &combinatorics::tuple(idx, d, n)));
        (op.optimal_encoding(s), op.lambda_max)
    });
    pairs.into_iter().unzip()
}

fn objective(v: &CMatrix, r: &[CMatrix]) -> f64 {
    r.iter()
        .enumerate()
        .map(|(b, rb)| {
            let col = v.column(b);
            (col.adjoint() * rb * col)[(0, 0)].re
        })
        .sum()
}

/// Maximizes `Σ_b ⟨v_b|R_b|v_b⟩` over unitaries `V` starting from `v` by the
/// polar fixed-point rule `V ← polar([R_0 v_0, …, R_{d−1} v_{d−1}])`.
/// Returns the new matrix and the number of rejected sweeps.
fn update_measurement(v: &CMatrix, r: &[CMatrix]) -> (CMatrix, usize) {
    let d = v.nrows();
    let mut current = v.clone();
    let mut value = objective(&current, r);
    let mut rejected = 0;
    for _ in 0..POLAR_SWEEPS {
        let w = CMatrix::from_fn(d, d, |i, b| (&r[b] * current.column(b))[i]);
        let candidate = linalg::reorthonormalize(&linalg::polar_unitary(&w));
        let cand_value = objective(&candidate, r);
        if cand_value < value {
            rejected += 1;
            break;
        }
        let gain = cand_value - value;
        current = candidate;
        value = cand_value;
        if gain <= 1e-15 * value.abs().max(1.0) {
            break;
        }
    }
    (current, rejected)
}

/// Alternating maximization of the ASP over encoders and projective
/// measurements, starting from Haar-random measurements drawn from `seed`.
pub fn seesaw_optimize(
    n: usize,
    d: usize,
    seed: u64,
    max_iters: usize,
    tol: f64,
) -> Result<SeesawState> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let start = bases::random_gauged_basis_set(n, d, seed)?;
    seesaw_from(start, seed, max_iters, tol)
}

/// See-saw from explicit starting measurements.
pub fn seesaw_from(start: BasisSet, seed: u64, max_iters: usize, tol: f64) -> Result<SeesawState> {
    let (n, d) = (start.n(), start.dim());
    let count = budget::check_tuples(d, n)?;
    let norm = (n * count) as f64;
    let mut s = bases::gauge_to_computational(&start);
    let (mut psi, lambdas) = encoders(&s);
    let mut trajectory = vec![par::pairwise_sum(&lambdas) / norm];
    let mut converged = false;
    let mut iterations = 0;
    let mut rejected_steps = 0;

    while iterations < max_iters {
        iterations += 1;
        // R^y_b = Σ_{x : x_y = b} |ψ_x⟩⟨ψ_x|
        let mut r = vec![vec![CMatrix::zeros(d, d); d]; n];
        let mut x = vec![0; n];
        for (idx, p) in psi.iter().enumerate() {
            combinatorics::decode_tuple(idx, d, &mut x);
            let proj = p * p.adjoint();
            for y in 0..n {
                r[y][x[y]] += &proj;
            }
        }
        let updated: Vec<(CMatrix, usize)> =
            par::map_range_min(n, 2, |y| update_measurement(s.basis(y).matrix(), &r[y]));
        let mut new_bases = Vec::with_capacity(n);
        for (m, rej) in updated {
            rejected_steps += rej;
            new_bases.push(Basis::from_unitary(m));
        }
        s = bases::gauge_to_computational(&BasisSet::new(new_bases)?);

        let (new_psi, lambdas) = encoders(&s);
        psi = new_psi;
        let asp = par::pairwise_sum(&lambdas) / norm;
        let gain = asp - trajectory.last().copied().unwrap_or(0.0);
        trajectory.push(asp);
        if gain < tol {
            converged = true;
            break;
        }
    }
    Ok(SeesawState {
        bases: s,
        asp_trajectory: trajectory,
        iterations,
        seed,
        converged,
        rejected_steps,
    })
}

/// Runs the see-saw once per seed (concurrently) and returns the states in
/// seed order.
pub fn seesaw_many(
    n: usize,
    d: usize,
    seeds: &[u64],
    max_iters: usize,
    tol: f64,
) -> Result<Vec<SeesawState>> {
    par::map_range_min(seeds.len(), 1, |i| {
        seesaw_optimize(n, d, seeds[i], max_iters, tol)
    })
    .into_iter()
    .collect()
}

/// Highest-ASP state; ties keep the earliest seed.
pub fn best_state(states: &[SeesawState]) -> Option<&SeesawState> {
    states
        .iter()
        .fold(None, |best: Option<&SeesawState>, s| match best {
            Some(b) if b.asp() >= s.asp() => Some(b),
            _ => Some(s),
        })
}

/// Parameters of the residual descent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DescentOptions {
    /// Central finite-difference step along each generator.
    pub fd_step: f64,
    /// Initial step size `η` in `U ← exp(−η A) U`.
    pub initial_step: f64,
    /// Residual at or below which a run stops as an exact hit.
    pub exact_residual: f64,
    /// Maximum step halvings per iteration before giving up.
    pub max_halvings: usize,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self {
            fd_step: 1e-5,
            initial_step: 0.1,
            exact_residual: 1e-24,
            max_halvings: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RestartOutcome {
    pub seed: u64,
    pub residual: f64,
    /// Accepted steps.
    pub iterations: usize,
    /// Residual after each accepted step, starting with the initial value.
    pub residual_trajectory: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescentResult {
    #[serde(skip)]
    pub bases: BasisSet,
    pub residual: f64,
    pub best_restart: usize,
    pub restarts: Vec<RestartOutcome>,
}

/// Orthonormal basis of the anti-Hermitian `d × d` matrices under the real
/// Frobenius inner product.
fn generators(d: usize) -> Vec<CMatrix> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * d);
    for j in 0..d {
        let mut g = CMatrix::zeros(d, d);
        g[(j, j)] = C64::new(0.0, 1.0);
        out.push(g);
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut a = CMatrix::zeros(d, d);
            a[(j, k)] = C64::new(s, 0.0);
            a[(k, j)] = C64::new(-s, 0.0);
            out.push(a);
            let mut b = CMatrix::zeros(d, d);
            b[(j, k)] = C64::new(0.0, s);
            b[(k, j)] = C64::new(0.0, s);
            out.push(b);
        }
    }
    out
}

struct ResidualFn {
    n: usize,
    d: usize,
    count: usize,
    cycles: Vec<Vec<usize>>,
}

impl ResidualFn {
    fn eval(&self, mats: &[CMatrix]) -> f64 {
        let s = BasisSet::new(mats.iter().cloned().map(Basis::from_unitary).collect())
            .expect("consistent dimensions");
        unbiasedness::residual_from_overlaps(&Overlaps::new(&s), &self.cycles, self.count)
    }
}

fn descend(
    start: &BasisSet,
    seed: u64,
    max_iters: usize,
    opts: &DescentOptions,
) -> Result<(BasisSet, RestartOutcome)> {
    let (n, d) = (start.n(), start.dim());
    if n < 2 {
        return Err(Error::InvalidArgument(
            "residual descent needs n >= 2".into(),
        ));
    }
    let count = budget::check_tuples(d, n)?;
    let f = ResidualFn {
        n,
        d,
        count,
        cycles: cycles(n),
    };
    let gens = generators(d);
    let rotations: Vec<(CMatrix, CMatrix)> = gens
        .iter()
        .map(|g| {
            let h = C64::from(opts.fd_step);
            (linalg::expm(&(g * h)), linalg::expm(&(g * (-h))))
        })
        .collect();

    let mut mats: Vec<CMatrix> = bases::gauge_to_computational(start)
        .into_bases()
        .into_iter()
        .map(Basis::into_matrix)
        .collect();
    let mut residual = f.eval(&mats);
    let mut trajectory = vec![residual];
    let mut eta = opts.initial_step;
    let mut iterations = 0;

    for _ in 0..max_iters {
        if residual <= opts.exact_residual {
            break;
        }
        // Riemannian gradient per free basis: A_y = Σ_i g_i G_i.
        let grads: Vec<CMatrix> = (1..f.n)
            .map(|y| {
                let mut a = CMatrix::zeros(f.d, f.d);
                let mut probe = mats.clone();
                for (g, (plus, minus)) in gens.iter().zip(&rotations) {
                    probe[y] = plus * &mats[y];
                    let fp = f.eval(&probe);
                    probe[y] = minus * &mats[y];
                    let fm = f.eval(&probe);
                    a += g * C64::from((fp - fm) / (2.0 * opts.fd_step));
                }
                a
            })
            .collect();
        let grad_norm: f64 = grads.iter().map(|a| a.norm_squared()).sum::<f64>().sqrt();
        if grad_norm < 1e-15 {
            break;
        }
        let mut accepted = false;
        for _ in 0..opts.max_halvings {
            let mut candidate = mats.clone();
            for (y, a) in (1..f.n).zip(&grads) {
                let step = linalg::expm(&(a * C64::from(-eta)));
                candidate[y] = linalg::reorthonormalize(&(step * &mats[y]));
            }
            let value = f.eval(&candidate);
            if value < residual {
                mats = candidate;
                residual = value;
                eta *= 1.5;
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            break;
        }
        iterations += 1;
        trajectory.push(residual);
    }
    let s = BasisSet::new(mats.into_iter().map(Basis::from_unitary).collect())?;
    Ok((
        s,
        RestartOutcome {
            seed,
            residual,
            iterations,
            residual_trajectory: trajectory,
        },
    ))
}

/// Minimizes the nUB residual over `n − 1` free unitaries from `restarts`
/// Haar-random starting points. Restart `r` uses seed `child_seed(seed, r)`.
pub fn nub_descent_search(
    n: usize,
    d: usize,
    seed: u64,
    restarts: usize,
    max_iters: usize,
) -> Result<DescentResult> {
    nub_descent_search_with(n, d, seed, restarts, max_iters, &DescentOptions::default())
}

pub fn nub_descent_search_with(
    n: usize,
    d: usize,
    seed: u64,
    restarts: usize,
    max_iters: usize,
    opts: &DescentOptions,
) -> Result<DescentResult> {
    if restarts == 0 {
        return Err(Error::InvalidArgument(
            "at least one restart required".into(),
        ));
    }
    budget::check_tuples(d, n)?;
    let runs = par::try_map_range(restarts, |r| {
        let child = rng::child_seed(seed, r as u64);
        let start = bases::random_gauged_basis_set(n, d, child)?;
        descend(&start, child, max_iters, opts)
    })?;
    collect_descent(runs)
}

/// Descent from a given starting set (for example a known candidate).
pub fn nub_descent_from(
    start: &BasisSet,
    max_iters: usize,
    opts: &DescentOptions,
) -> Result<DescentResult> {
    collect_descent(vec![descend(start, 0, max_iters, opts)?])
}

fn collect_descent(runs: Vec<(BasisSet, RestartOutcome)>) -> Result<DescentResult> {
    let best_restart = runs.iter().enumerate().fold(0, |best, (i, r)| {
        if r.1.residual < runs[best].1.residual {
            i
        } else {
            best
        }
    });
    let bases = runs[best_restart].0.clone();
    let residual = runs[best_restart].1.residual;
    Ok(DescentResult {
        bases,
        residual,
        best_restart,
        restarts: runs.into_iter().map(|r| r.1).collect(),
    })
}

/// Monte Carlo estimate of a complex expectation value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloEstimate {
    /// Mean of the real part.
    pub mean: f64,
    /// Sample standard deviation of the real part over `√samples`.
    pub stderr: f64,
    pub imag_mean: f64,
    pub imag_stderr: f64,
    pub samples: usize,
    pub target: f64,
    pub seed: u64,
}

impl MonteCarloEstimate {
    fn from_values(values: &[C64], target: f64, seed: u64) -> Self {
        let samples = values.len();
        let re: Vec<f64> = values.iter().map(|v| v.re).collect();
        let im: Vec<f64> = values.iter().map(|v| v.im).collect();
        let (mean, stderr) = mean_stderr(&re);
        let (imag_mean, imag_stderr) = mean_stderr(&im);
        Self {
            mean,
            stderr,
            imag_mean,
            imag_stderr,
            samples,
            target,
            seed,
        }
    }

    /// Distance of the real mean from the target in standard errors.
    pub fn z_score(&self) -> f64 {
        (self.mean - self.target).abs() / self.stderr
    }

    pub fn within(&self, sigmas: f64) -> bool {
        (self.mean - self.target).abs() <= sigmas * self.stderr
    }

    /// Whether the imaginary mean is within `sigmas` of zero.
    pub fn imag_within(&self, sigmas: f64) -> bool {
        self.imag_mean.abs() <= sigmas * self.imag_stderr
    }
}

fn mean_stderr(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = par::pairwise_sum(v) / n;
    let sq: Vec<f64> = v.iter().map(|x| (x - mean).powi(2)).collect();
    let var = par::pairwise_sum(&sq) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Estimates the expected n-cycle sum for `|y_{x_y}⟩ = U_y|x_y⟩` with
/// `U_1 = I` and `U_2..U_n` Haar, at the tuple `x` (all zeros by default).
/// Sample `i` uses random stream `i` of `seed`.
pub fn haar_expectation_test(
    n: usize,
    d: usize,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    haar_expectation_at(n, d, &vec![0; n], samples, seed)
}

pub fn haar_expectation_at(
    n: usize,
    d: usize,
    x: &[usize],
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    if x.len() != n || x.iter().any(|&v| v >= d) {
        return Err(Error::InvalidArgument(format!(
            "tuple {x:?} not in [{d}]^{n}"
        )));
    }
    let cyc = cycles(n);
    let values = par::try_map_range(samples, |i| -> Result<C64> {
        let mut rng = rng::stream(seed, i as u64);
        let mut vecs: Vec<CVector> = Vec::with_capacity(n);
        let mut e = CVector::from_element(d, ZERO);
        e[x[0]] = ONE;
        vecs.push(e);
        for &xy in &x[1..] {
            let u = bases::random_haar_basis_with(d, &mut rng)?;
            vecs.push(u.vector(xy).into_owned());
        }
        let mut total = ZERO;
        for c in &cyc {
            let mut prod = ONE;
            for p in 0..n {
                prod *= vecs[c[p]].dotc(&vecs[c[(p + 1) % n]]);
            }
            total += prod;
        }
        Ok(total)
    })?;
    Ok(MonteCarloEstimate::from_values(
        &values,
        uniform_target(n, d),
        seed,
    ))
}

/// Estimates `E⟨i|U|k⟩⟨k|U†|j⟩` over Haar `U`; the exact value is `δ_ij/d`.
pub fn haar_single_factor(
    d: usize,
    i: usize,
    j: usize,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if samples < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    if i >= d || j >= d || k >= d {
        return Err(Error::InvalidArgument(format!("indices must be below {d}")));
    }
    let values = par::try_map_range(samples, |s| -> Result<C64> {
        let u = bases::random_haar_basis_with(d, &mut rng::stream(seed, s as u64))?;
        let m = u.matrix();
        Ok(m[(i, k)] * m[(j, k)].conj())
    })?;
    let target = if i == j { 1.0 / d as f64 } else { 0.0 };
    Ok(MonteCarloEstimate::from_values(&values, target, seed))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanEntry {
    pub index: usize,
    pub residual: f64,
    pub kub_passed: bool,
    pub kub_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub d: usize,
    pub k: usize,
    pub tol: f64,
    pub entries: Vec<ScanEntry>,
    pub min_residual: f64,
    pub argmin: usize,
}

/// nUB residual and kUB verdict for each set of a homogeneous collection.
pub fn scan_candidates<'a, I>(sets: I, k: usize, tol: f64) -> Result<ScanReport>
where
    I: IntoIterator<Item = &'a BasisSet>,
{
    let mut entries = Vec::new();
    let mut shape: Option<(usize, usize)> = None;
    for (index, s) in sets.into_iter().enumerate() {
        let (n, d) = *shape.get_or_insert((s.n(), s.dim()));
        if (s.n(), s.dim()) != (n, d) {
            return Err(Error::Heterogeneous {
                index,
                n: s.n(),
                d: s.dim(),
                expected_n: n,
                expected_d: d,
            });
        }
        let kub = unbiasedness::kub_check(s, k, tol)?;
        entries.push(ScanEntry {
            index,
            residual: unbiasedness::nub_residual(s)?,
            kub_passed: kub.passed,
            kub_deviation: kub.worst.deviation,
        });
    }
    let (n, d) = shape.ok_or(Error::EmptyInput)?;
    let argmin = entries.iter().fold(0, |best, e| {
        if e.residual < entries[best].residual {
            e.index
        } else {
            best
        }
    });
    Ok(ScanReport {
        n,
        d,
        k,
        tol,
        min_residual: entries[argmin].residual,
        argmin,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{qubit_mub_triplet, random_basis_set};

    #[test]
    fn generators_are_orthonormal_antihermitian() {
        let gs = generators(3);
        assert_eq!(gs.len(), 9);
        for (a, ga) in gs.iter().enumerate() {
            assert!((ga + ga.adjoint()).norm() < 1e-15);
            for (b, gb) in gs.iter().enumerate() {
                let ip = (ga.adjoint() * gb).trace().re;
                assert!((ip - if a == b { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn seesaw_two_questions_reaches_tight_bound() {
        let st = seesaw_optimize(2, 3, 1, 500, 1e-13).unwrap();
        let target = 0.5 * (1.0 + 1.0 / 3f64.sqrt());
        assert!((st.asp() - target).abs() < 1e-4, "asp {}", st.asp());
        assert!(st.asp_trajectory.windows(2).all(|w| w[1] - w[0] >= -1e-12));
    }

    #[test]
    fn seesaw_output_is_valid() {
        let st = seesaw_optimize(3, 2, 4, 50, 1e-12).unwrap();
        assert!(st.bases.orthonormality_residual() <= 1e-8);
        assert_eq!(st.bases.basis(0).matrix(), &CMatrix::identity(2, 2));
    }

    #[test]
    fn descent_finds_qubit_three_fold_unbiased_bases() {
        let r = nub_descent_search(3, 2, 7, 10, 2000).unwrap();
        assert!(r.residual <= 1e-8, "residual {}", r.residual);
        assert!(r.bases.orthonormality_residual() <= 1e-8);
        for run in &r.restarts {
            assert!(run.residual_trajectory.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn warm_start_at_exact_nub_takes_no_steps() {
        let r = nub_descent_from(&qubit_mub_triplet(), 100, &DescentOptions::default()).unwrap();
        assert!(r.residual < 1e-24);
        assert_eq!(r.restarts[0].iterations, 0);
    }

    #[test]
    fn haar_two_questions() {
        let est = haar_expectation_test(2, 2, 10_000, 3).unwrap();
        assert!((est.target - 0.5).abs() < 1e-15);
        assert!(est.within(3.0), "{est:?}");
        let again = haar_expectation_test(2, 2, 10_000, 3).unwrap();
        assert_eq!(est, again);
        assert!(haar_expectation_test(2, 2, 1, 3).is_err());
    }

    #[test]
    fn scan_behaviour() {
        let q = qubit_mub_triplet();
        let rep = scan_candidates([&q], 3, 1e-10).unwrap();
        assert!(rep.min_residual < 1e-20);
        assert!(rep.entries[0].kub_passed);
        let empty: Vec<BasisSet> = Vec::new();
        assert!(matches!(
            scan_candidates(&empty, 3, 1e-10),
            Err(Error::EmptyInput)
        ));
        let mixed = vec![q.clone(), random_basis_set(3, 3, 0).unwrap()];
        assert!(matches!(
            scan_candidates(&mixed, 3, 1e-10),
            Err(Error::Heterogeneous { index: 1, .. })
        ));
    }
}

//! Orthonormal bases, basis sets, and their equivalence transformations.
//!
//! A [`Basis`] stores its vectors as matrix columns: column `j` is the `j`-th
//! basis vector. A [`BasisSet`] is the measurement side of a QRAC strategy,
//! one basis per question.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};
use crate::rng::{self, Rng};

/// Default tolerance on `max |B†B − I|`.
pub const ORTHO_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    cols: CMatrix,
}

impl Basis {
    /// Wraps `cols` after checking squareness, finiteness and orthonormality.
    pub fn new(cols: CMatrix, tol: f64) -> Result<Self> {
        check_matrix(0, &cols, tol).map_err(Error::Validation)?;
        Ok(Self { cols })
    }

    pub(crate) fn from_unitary(cols: CMatrix) -> Self {
        debug_assert!(cols.is_square());
        Self { cols }
    }

    pub fn dim(&self) -> usize {
        self.cols.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.cols
    }

    pub fn into_matrix(self) -> CMatrix {
        self.cols
    }

    /// Basis vector `j`.
    pub fn vector(&self, j: usize) -> nalgebra::DVectorView<'_, C64> {
        self.cols.column(j)
    }

    pub fn orthonormality_residual(&self) -> f64 {
        linalg::unitarity_residual(&self.cols)
    }

    /// `⟨self_i | other_j⟩` for all `i, j`.
    pub fn overlaps(&self, other: &Basis) -> CMatrix {
        self.cols.adjoint() * &other.cols
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    bases: Vec<Basis>,
}

impl BasisSet {
    pub fn new(bases: Vec<Basis>) -> Result<Self> {
        let Some(first) = bases.first() else {
            return Err(Error::EmptyInput);
        };
        let d = first.dim();
        for b in &bases {
            if b.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: b.dim(),
                });
            }
        }
        Ok(Self { bases })
    }

    pub fn n(&self) -> usize {
        self.bases.len()
    }

    pub fn dim(&self) -> usize {
        self.bases[0].dim()
    }

    pub fn bases(&self) -> &[Basis] {
        &self.bases
    }

    pub fn basis(&self, y: usize) -> &Basis {
        &self.bases[y]
    }

    pub fn into_bases(self) -> Vec<Basis> {
        self.bases
    }

    /// The sub-collection indexed by `which`, in that order.
    pub fn select(&self, which: &[usize]) -> Result<BasisSet> {
        let mut out = Vec::with_capacity(which.len());
        for &y in which {
            let b = self.bases.get(y).ok_or(Error::IndexOutOfRange {
                what: "basis",
                index: y,
                limit: self.n(),
            })?;
            out.push(b.clone());
        }
        BasisSet::new(out)
    }

    /// Vector `x_y` of basis `y`.
    pub fn vector(&self, y: usize, x_y: usize) -> nalgebra::DVectorView<'_, C64> {
        self.bases[y].vector(x_y)
    }

    /// Largest orthonormality residual over all members.
    pub fn orthonormality_residual(&self) -> f64 {
        self.bases
            .iter()
            .map(Basis::orthonormality_residual)
            .fold(0.0, f64::max)
    }
}

pub fn make_computational(d: usize) -> Result<Basis> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(Basis::from_unitary(CMatrix::identity(d, d)))
}

/// Discrete Fourier basis, entry `(j, k) = exp(2πi jk/d)/√d`.
pub fn make_fourier(d: usize) -> Result<Basis> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let norm = (d as f64).sqrt();
    let m = CMatrix::from_fn(d, d, |j, k| {
        root_of_unity(((j * k) % d) as f64 / d as f64) / norm
    });
    Ok(Basis::from_unitary(m))
}

fn root_of_unity(fraction: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * fraction)
}

pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    (2..)
        .take_while(|i| i * i <= p)
        .all(|i| !p.is_multiple_of(i))
}

/// Complete set of `p + 1` mutually unbiased bases for prime `p`.
///
/// The computational basis comes first, followed by one basis per `a` in
/// `0..p` whose vector `b` has components `ω^{a k² + b k}/√p`. Two needs the
/// quadratic phase taken over the fourth roots of unity, `i^{a k²} (−1)^{b k}`,
/// so that the result matches the standard qubit triplet.
pub fn make_wh_mub_set(p: usize) -> Result<BasisSet> {
    if !is_prime(p) {
        return Err(Error::UnsupportedDimension(p));
    }
    let norm = (p as f64).sqrt();
    let mut bases = vec![make_computational(p)?];
    for a in 0..p {
        let m = CMatrix::from_fn(p, p, |k, b| {
            let phase = if p == 2 {
                (a * k * k) as f64 / 4.0 + (b * k) as f64 / 2.0
            } else {
                ((a * k * k + b * k) % p) as f64 / p as f64
            };
            root_of_unity(phase) / norm
        });
        bases.push(Basis::from_unitary(m));
    }
    BasisSet::new(bases)
}

/// `{I, (1/√2)[[1,1],[1,−1]], (1/√2)[[1,1],[i,−i]]}`.
pub fn qubit_mub_triplet() -> BasisSet {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let i = C64::new(0.0, 1.0);
    let hadamard = CMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, -ONE]) * C64::from(s);
    let circular = CMatrix::from_row_slice(2, 2, &[ONE, ONE, i, -i]) * C64::from(s);
    BasisSet {
        bases: vec![
            Basis::from_unitary(CMatrix::identity(2, 2)),
            Basis::from_unitary(hadamard),
            Basis::from_unitary(circular),
        ],
    }
}

/// Kronecker product `a ⊗ b`; vector `i·d_b + j` is `a_i ⊗ b_j`.
pub fn tensor_product(a: &Basis, b: &Basis) -> Basis {
    Basis::from_unitary(a.matrix().kronecker(b.matrix()))
}

/// Haar-random unitary drawn from `rng`: QR of a complex Ginibre matrix with
/// the phases of `diag(R)` moved into `Q`.
pub fn random_haar_basis_with(d: usize, rng: &mut Rng) -> Result<Basis> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let z = CMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re * scale, im * scale)
    });
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 {
            rjj / rjj.norm()
        } else {
            ONE
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    Ok(Basis::from_unitary(q))
}

pub fn random_haar_basis(d: usize, seed: u64) -> Result<Basis> {
    random_haar_basis_with(d, &mut rng::stream(seed, 0))
}

/// `n` independent Haar bases, basis `y` drawn from stream `y` of `seed`.
pub fn random_basis_set(n: usize, d: usize, seed: u64) -> Result<BasisSet> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let bases = (0..n)
        .map(|y| random_haar_basis_with(d, &mut rng::stream(seed, y as u64)))
        .collect::<Result<Vec<_>>>()?;
    BasisSet::new(bases)
}

/// Like [`random_basis_set`] but with the first basis pinned to the
/// computational basis.
pub fn random_gauged_basis_set(n: usize, d: usize, seed: u64) -> Result<BasisSet> {
    let mut bases = vec![make_computational(d)?];
    for y in 1..n {
        bases.push(random_haar_basis_with(d, &mut rng::stream(seed, y as u64))?);
    }
    BasisSet::new(bases)
}

/// Applies `U†` from the left so that basis 0 becomes the computational basis.
pub fn gauge_to_computational(s: &BasisSet) -> BasisSet {
    let u_adj = s.basis(0).matrix().adjoint();
    let mut bases: Vec<Basis> = s
        .bases()
        .iter()
        .map(|b| Basis::from_unitary(&u_adj * b.matrix()))
        .collect();
    bases[0] = Basis::from_unitary(CMatrix::identity(s.dim(), s.dim()));
    BasisSet { bases }
}

/// The five symmetries of basis sets that leave every unbiasedness quantity
/// unchanged (up to relabeling of basis indices and vectors).
#[derive(Debug, Clone)]
pub enum EquivalenceTransform {
    /// `B_i -> U B_i` for all `i`.
    OverallUnitary(CMatrix),
    /// `B_i -> B_i D_i`; entry `i` holds the diagonal of `D_i`.
    DiagonalPhases(Vec<Vec<C64>>),
    /// `B_i -> B_i P_i`; new column `j` of basis `i` is old column `perms[i][j]`.
    Permutations(Vec<Vec<usize>>),
    /// Swap bases `i` and `j`.
    Exchange(usize, usize),
    /// Entrywise complex conjugation of every basis.
    Conjugation,
}

pub fn apply_equivalence(s: &BasisSet, t: &EquivalenceTransform) -> Result<BasisSet> {
    let d = s.dim();
    let n = s.n();
    let bases = match t {
        EquivalenceTransform::OverallUnitary(u) => {
            if u.nrows() != d || u.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: u.nrows(),
                });
            }
            let residual = linalg::unitarity_residual(u);
            if residual > ORTHO_TOL {
                return Err(Error::NotUnitary { residual });
            }
            s.bases()
                .iter()
                .map(|b| Basis::from_unitary(u * b.matrix()))
                .collect()
        }
        EquivalenceTransform::DiagonalPhases(phases) => {
            if phases.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: phases.len(),
                });
            }
            let mut out = Vec::with_capacity(n);
            for (b, diag) in s.bases().iter().zip(phases) {
                if diag.len() != d {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        found: diag.len(),
                    });
                }
                let residual = diag
                    .iter()
                    .map(|z| (z.norm() - 1.0).abs())
                    .fold(0.0, f64::max);
                if residual > ORTHO_TOL {
                    return Err(Error::NotUnitary { residual });
                }
                let mut m = b.matrix().clone();
                for (j, &z) in diag.iter().enumerate() {
                    let mut col = m.column_mut(j);
                    col *= z;
                }
                out.push(Basis::from_unitary(m));
            }
            out
        }
        EquivalenceTransform::Permutations(perms) => {
            if perms.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: perms.len(),
                });
            }
            let mut out = Vec::with_capacity(n);
            for (b, perm) in s.bases().iter().zip(perms) {
                if !is_permutation(perm, d) {
                    return Err(Error::InvalidArgument(format!(
                        "{perm:?} is not a permutation of 0..{d}"
                    )));
                }
                let m = CMatrix::from_fn(d, d, |r, c| b.matrix()[(r, perm[c])]);
                out.push(Basis::from_unitary(m));
            }
            out
        }
        EquivalenceTransform::Exchange(i, j) => {
            for &idx in [i, j] {
                if idx >= n {
                    return Err(Error::IndexOutOfRange {
                        what: "basis",
                        index: idx,
                        limit: n,
                    });
                }
            }
            let mut out = s.bases().to_vec();
            out.swap(*i, *j);
            out
        }
        EquivalenceTransform::Conjugation => s
            .bases()
            .iter()
            .map(|b| Basis::from_unitary(b.matrix().map(|z| z.conj())))
            .collect(),
    };
    Ok(BasisSet { bases })
}

fn is_permutation(perm: &[usize], d: usize) -> bool {
    let mut seen = vec![false; d];
    perm.len() == d
        && perm
            .iter()
            .all(|&p| p < d && !std::mem::replace(&mut seen[p], true))
}

/// Random diagonal phases for every basis of an `n`-element set.
pub fn random_phases(n: usize, d: usize, rng: &mut Rng) -> Vec<Vec<C64>> {
    (0..n)
        .map(|_| {
            (0..d)
                .map(|_| C64::from_polar(1.0, rng.random::<f64>() * 2.0 * PI))
                .collect()
        })
        .collect()
}

/// What went wrong while validating raw matrix data.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    Empty,
    NonSquare {
        basis: usize,
        vectors: usize,
        components: usize,
    },
    UnequalDimension {
        basis: usize,
        expected: usize,
        found: usize,
    },
    NonFinite {
        basis: usize,
        vector: usize,
        component: usize,
    },
    NotOrthonormal {
        basis: usize,
        column_i: usize,
        column_j: usize,
        residual: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "no bases given"),
            Violation::NonSquare {
                basis,
                vectors,
                components,
            } => write!(
                f,
                "basis {basis} is not square ({vectors} vectors, {components} components)"
            ),
            Violation::UnequalDimension {
                basis,
                expected,
                found,
            } => write!(f, "basis {basis} has dimension {found}, expected {expected}"),
            Violation::NonFinite {
                basis,
                vector,
                component,
            } => write!(
                f,
                "basis {basis}, vector {vector}, component {component} is not finite"
            ),
            Violation::NotOrthonormal {
                basis,
                column_i,
                column_j,
                residual,
            } => write!(
                f,
                "basis {basis}: columns {column_i} and {column_j} violate orthonormality (residual {residual:e})"
            ),
        }
    }
}

fn check_matrix(index: usize, m: &CMatrix, tol: f64) -> std::result::Result<(), Violation> {
    if !m.is_square() {
        return Err(Violation::NonSquare {
            basis: index,
            vectors: m.ncols(),
            components: m.nrows(),
        });
    }
    for j in 0..m.ncols() {
        for k in 0..m.nrows() {
            let z = m[(k, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Violation::NonFinite {
                    basis: index,
                    vector: j,
                    component: k,
                });
            }
        }
    }
    let gram = m.adjoint() * m;
    let mut worst = (0, 0, 0.0f64);
    for i in 0..gram.nrows() {
        for j in i..gram.ncols() {
            let target = if i == j { ONE } else { ZERO };
            let r = (gram[(i, j)] - target).norm();
            if r > worst.2 {
                worst = (i, j, r);
            }
        }
    }
    if worst.2 > tol {
        return Err(Violation::NotOrthonormal {
            basis: index,
            column_i: worst.0,
            column_j: worst.1,
            residual: worst.2,
        });
    }
    Ok(())
}

/// Raw basis-set data: `raw[y][j][k]` is component `k` of vector `j` of
/// basis `y`.
pub type RawBases = Vec<Vec<Vec<C64>>>;

/// Checks raw matrix data and builds a [`BasisSet`] from it.
pub fn validate_basis_set(raw: &RawBases, tol: f64) -> std::result::Result<BasisSet, Violation> {
    if raw.is_empty() {
        return Err(Violation::Empty);
    }
    let d = raw[0].len();
    let mut bases = Vec::with_capacity(raw.len());
    for (y, vectors) in raw.iter().enumerate() {
        if vectors.len() != d {
            return Err(Violation::UnequalDimension {
                basis: y,
                expected: d,
                found: vectors.len(),
            });
        }
        for v in vectors {
            if v.len() != vectors.len() {
                return Err(Violation::NonSquare {
                    basis: y,
                    vectors: vectors.len(),
                    components: v.len(),
                });
            }
        }
        if d == 0 {
            return Err(Violation::NonSquare {
                basis: y,
                vectors: 0,
                components: 0,
            });
        }
        let cols: Vec<CVector> = vectors
            .iter()
            .map(|v| CVector::from_vec(v.clone()))
            .collect();
        let m = CMatrix::from_columns(&cols);
        check_matrix(y, &m, tol)?;
        bases.push(Basis::from_unitary(m));
    }
    Ok(BasisSet { bases })
}

/// Inverse of [`validate_basis_set`].
pub fn to_raw(s: &BasisSet) -> RawBases {
    s.bases()
        .iter()
        .map(|b| {
            (0..b.dim())
                .map(|j| b.vector(j).iter().copied().collect())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_overlap_deviation(a: &Basis, b: &Basis) -> f64 {
        let target = 1.0 / (a.dim() as f64).sqrt();
        a.overlaps(b)
            .iter()
            .map(|z| (z.norm() - target).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn computational_is_identity() {
        for d in 1..=3 {
            let b = make_computational(d).unwrap();
            assert_eq!(b.matrix(), &CMatrix::identity(d, d));
            assert!(b.orthonormality_residual() <= ORTHO_TOL);
        }
        assert!(matches!(
            make_computational(0),
            Err(Error::InvalidDimension(0))
        ));
    }

    #[test]
    fn fourier_small_cases() {
        assert_eq!(make_fourier(1).unwrap().matrix()[(0, 0)], ONE);
        let f2 = make_fourier(2).unwrap();
        let h = qubit_mub_triplet().basis(1).matrix().clone();
        assert!((f2.matrix() - h).norm() < 1e-15);
        let f3 = make_fourier(3).unwrap();
        let id = make_computational(3).unwrap();
        assert!(max_overlap_deviation(&id, &f3) < 1e-15);
        assert!(make_fourier(0).is_err());
    }

    #[test]
    fn wh_sets_are_mutually_unbiased() {
        for p in [2, 3, 5, 7] {
            let s = make_wh_mub_set(p).unwrap();
            assert_eq!(s.n(), p + 1);
            assert!(s.orthonormality_residual() <= ORTHO_TOL);
            for i in 0..s.n() {
                for j in i + 1..s.n() {
                    let dev = max_overlap_deviation(s.basis(i), s.basis(j));
                    assert!(dev <= 1e-10, "p={p} pair ({i},{j}) dev {dev}");
                }
            }
        }
        assert!(matches!(
            make_wh_mub_set(4),
            Err(Error::UnsupportedDimension(4))
        ));
        assert!(make_wh_mub_set(1).is_err());
    }

    #[test]
    fn wh_two_is_the_qubit_triplet() {
        let wh = make_wh_mub_set(2).unwrap();
        let q = qubit_mub_triplet();
        for y in 0..3 {
            assert!((wh.basis(y).matrix() - q.basis(y).matrix()).norm() < 1e-15);
        }
        let first = q.basis(1).vector(0);
        let comp = q.basis(0).vector(0);
        let overlap = linalg::inner(first.iter(), comp.iter()).norm();
        assert!((overlap - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn haar_is_deterministic_and_unitary() {
        let a = random_haar_basis(4, 17).unwrap();
        let b = random_haar_basis(4, 17).unwrap();
        assert_eq!(a, b);
        assert!(a.orthonormality_residual() <= 1e-10);
        assert_ne!(a, random_haar_basis(4, 18).unwrap());
    }

    #[test]
    fn haar_first_entry_has_mean_one_over_d() {
        let mut rng = rng::stream(5, 0);
        let samples = 10_000;
        let vals: Vec<f64> = (0..samples)
            .map(|_| random_haar_basis_with(2, &mut rng).unwrap().matrix()[(0, 0)].norm_sqr())
            .collect();
        let mean = vals.iter().sum::<f64>() / samples as f64;
        let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
        let stderr = (var / samples as f64).sqrt();
        assert!(
            (mean - 0.5).abs() < 3.0 * stderr,
            "mean {mean} stderr {stderr}"
        );
    }

    #[test]
    fn identity_transform_is_noop() {
        let s = make_wh_mub_set(3).unwrap();
        let t = EquivalenceTransform::OverallUnitary(CMatrix::identity(3, 3));
        assert_eq!(apply_equivalence(&s, &t).unwrap(), s);
    }

    #[test]
    fn transform_payload_errors() {
        let s = make_wh_mub_set(3).unwrap();
        let bad = CMatrix::identity(3, 3) * C64::from(2.0);
        assert!(matches!(
            apply_equivalence(&s, &EquivalenceTransform::OverallUnitary(bad)),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            apply_equivalence(
                &s,
                &EquivalenceTransform::OverallUnitary(CMatrix::identity(2, 2))
            ),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(apply_equivalence(&s, &EquivalenceTransform::Exchange(0, 9)).is_err());
        let perms = vec![vec![0, 0, 1]; 4];
        assert!(apply_equivalence(&s, &EquivalenceTransform::Permutations(perms)).is_err());
    }

    #[test]
    fn validation_accepts_constructions() {
        let s = BasisSet::new(vec![
            make_computational(3).unwrap(),
            make_fourier(3).unwrap(),
        ])
        .unwrap();
        let back = validate_basis_set(&to_raw(&s), ORTHO_TOL).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn validation_names_duplicated_column() {
        let mut raw = to_raw(&BasisSet::new(vec![make_fourier(3).unwrap()]).unwrap());
        raw[0][2] = raw[0][1].clone();
        match validate_basis_set(&raw, ORTHO_TOL) {
            Err(Violation::NotOrthonormal {
                basis: 0,
                column_i: 1,
                column_j: 2,
                residual,
            }) => assert!((residual - 1.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_reports_perturbation_size() {
        let mut raw = to_raw(&BasisSet::new(vec![make_fourier(3).unwrap()]).unwrap());
        raw[0][1][1] += C64::new(1e-6, 0.0);
        // Gram residual of the perturbed matrix: the diagonal entry
        // |v|² moves by ~2 Re(v_11) ε while off-diagonals move by |v_0k| ε,
        // all of order 1e-6.
        let perturbed = CMatrix::from_columns(
            &raw[0]
                .iter()
                .map(|v| CVector::from_vec(v.clone()))
                .collect::<Vec<_>>(),
        );
        let expected = linalg::unitarity_residual(&perturbed);
        match validate_basis_set(&raw, ORTHO_TOL) {
            Err(Violation::NotOrthonormal { residual, .. }) => {
                assert!((residual - expected).abs() < 1e-15);
                assert!(residual > 1e-7 && residual < 2e-6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn validation_shape_errors() {
        let raw: RawBases = vec![vec![vec![ONE, ZERO]]];
        assert!(matches!(
            validate_basis_set(&raw, ORTHO_TOL),
            Err(Violation::NonSquare { .. })
        ));
        let raw: RawBases = vec![vec![vec![ONE]], vec![vec![ONE, ZERO], vec![ZERO, ONE]]];
        assert!(matches!(
            validate_basis_set(&raw, ORTHO_TOL),
            Err(Violation::UnequalDimension { basis: 1, .. })
        ));
        let raw: RawBases = vec![vec![vec![C64::new(f64::NAN, 0.0)]]];
        assert!(matches!(
            validate_basis_set(&raw, ORTHO_TOL),
            Err(Violation::NonFinite { .. })
        ));
        assert_eq!(
            validate_basis_set(&Vec::new(), ORTHO_TOL),
            Err(Violation::Empty)
        );
    }

    #[test]
    fn tensor_of_mubs_is_mub() {
        let q = qubit_mub_triplet();
        let a = tensor_product(q.basis(0), q.basis(0));
        let b = tensor_product(q.basis(1), q.basis(1));
        assert!(max_overlap_deviation(&a, &b) < 1e-15);
    }
}

//! Small dense complex linear algebra on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// `⟨a|b⟩`, conjugate-linear in the first argument.
pub fn inner<'a, I, J>(a: I, b: J) -> C64
where
    I: IntoIterator<Item = &'a C64>,
    J: IntoIterator<Item = &'a C64>,
{
    a.into_iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `max |(M†M − I)_{ij}|`.
pub fn unitarity_residual(m: &CMatrix) -> f64 {
    let gram = m.adjoint() * m;
    max_abs_diff_identity(&gram)
}

pub fn max_abs_diff_identity(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((m[(i, j)] - target).norm());
        }
    }
    worst
}

/// `max |M − M†|`.
pub fn hermitian_residual(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in i..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest eigenvalue of a Hermitian matrix with its unit eigenvector.
pub fn top_eigenpair(m: &CMatrix) -> (f64, CVector) {
    let eig = SymmetricEigen::new(m.clone());
    let (idx, &val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty matrix");
    (val, eig.eigenvectors.column(idx).into_owned())
}

pub fn top_eigenvalue(m: &CMatrix) -> f64 {
    SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Eigenvalues of a Hermitian matrix, sorted descending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut vals: Vec<f64> = SymmetricEigen::new(m.clone())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Unitary factor `W` of the polar decomposition `A = W P`.
pub fn polar_unitary(a: &CMatrix) -> CMatrix {
    let svd = a.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V^T");
    u * v_t
}

/// Modified Gram–Schmidt on the columns, in place order. Used to remove
/// drift after many multiplicative updates.
pub fn reorthonormalize(m: &CMatrix) -> CMatrix {
    let mut out = m.clone();
    for j in 0..out.ncols() {
        for i in 0..j {
            let proj = inner(out.column(i).iter(), out.column(j).iter());
            let ci = out.column(i).into_owned();
            let mut cj = out.column_mut(j);
            cj -= ci * proj;
        }
        let norm = out.column(j).norm();
        out.column_mut(j).unscale_mut(norm);
    }
    out
}

/// Matrix exponential of a small square matrix.
pub fn expm(a: &CMatrix) -> CMatrix {
    a.exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polar_of_unitary_is_itself() {
        let h = CMatrix::from_row_slice(2, 2, &[ONE, ONE, ONE, -ONE]) / C64::from(2f64.sqrt());
        let p = polar_unitary(&h);
        assert!((p - &h).norm() < 1e-12);
    }

    #[test]
    fn top_eigen_of_diagonal() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![ONE, C64::new(3.0, 0.0), ZERO]));
        let (val, vec) = top_eigenpair(&m);
        assert_abs_diff_eq!(val, 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(vec[1].norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn expm_of_antihermitian_is_unitary() {
        let a = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.3),
                C64::new(0.2, 0.1),
                C64::new(-0.2, 0.1),
                C64::new(0.0, -0.7),
            ],
        );
        assert!(unitarity_residual(&expm(&a)) < 1e-13);
    }
}

//! Small dense complex linear-algebra helpers.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{c, C64};

/// Null space of `a` from its singular value decomposition. Returns an
/// orthonormal null basis and all `ncols` singular values in ascending order.
pub fn nullspace(a: &DMatrix<C64>, tol: f64) -> (Vec<DVector<C64>>, Vec<f64>) {
    let n = a.ncols();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    // pad to at least n rows so that the full right singular basis is returned
    let m = a.nrows().max(n);
    let mut padded = DMatrix::<C64>::zeros(m, n);
    padded.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let basis = order.iter().filter(|&&i| svd.singular_values[i] < tol).map(|&i| v_t.row(i).adjoint()).collect();
    (basis, sv)
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eigen(h: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let sym = (h + h.adjoint()) * c(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(h.nrows(), order.len(), |r, k| eig.eigenvectors[(r, order[k])]);
    (vals, vecs)
}

/// Groups sorted values into clusters separated by gaps larger than `tol`.
/// Returns `Err(gap)` when some gap lies in `(tol, 10·tol]`.
pub fn cluster_sorted(values: &[f64], tol: f64) -> std::result::Result<Vec<std::ops::Range<usize>>, f64> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() {
            out.push(start..i);
            break;
        }
        let gap = values[i] - values[i - 1];
        if gap > tol && gap <= 10.0 * tol {
            return Err(gap);
        }
        if gap > tol {
            out.push(start..i);
            start = i;
        }
    }
    if values.is_empty() {
        out.clear();
    }
    Ok(out)
}

/// Nearest unitary in Frobenius norm (polar factor).
pub fn nearest_unitary(m: &DMatrix<C64>) -> DMatrix<C64> {
    if m.is_empty() {
        return m.clone();
    }
    let svd = m.clone().svd(true, true);
    svd.u.unwrap() * svd.v_t.unwrap()
}

pub fn unitarity_defect(m: &DMatrix<C64>) -> f64 {
    if m.nrows() != m.ncols() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let id = DMatrix::<C64>::identity(n, n);
    let a = crate::hom::max_abs(&(m.adjoint() * m - &id));
    let b = crate::hom::max_abs(&(m * m.adjoint() - &id));
    a.max(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let a = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0)]);
        let (basis, sv) = nullspace(&a, 1e-8);
        assert_eq!(basis.len(), 1);
        assert!(sv[0] < 1e-8 && sv[1] > 1.0);
        assert!((a * &basis[0]).norm() < 1e-12);
    }

    #[test]
    fn clustering() {
        assert_eq!(cluster_sorted(&[0.0, 1e-9, 1.0, 1.0, 3.0], 1e-5).unwrap(), vec![0..2, 2..4, 4..5]);
        assert!(cluster_sorted(&[0.0, 5e-5], 1e-5).is_err());
        assert!(cluster_sorted(&[], 1e-5).unwrap().is_empty());
    }

    #[test]
    fn polar_projection() {
        let m = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -0.5)]);
        let u = nearest_unitary(&m);
        assert!(unitarity_defect(&u) < 1e-12);
        assert!((u[(1, 1)] - c(0.0, -1.0)).norm() < 1e-12);
    }
}

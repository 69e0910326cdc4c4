//! Small Hermitian-matrix helpers shared by tomography and noise.

use nalgebra::{DMatrix, DVector};

use crate::C64;

/// Eigenvalues (ascending) and eigenvectors (columns) of the Hermitian part of `m`.
pub(crate) fn hermitian_eigen(m: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    let h = hermitize(m);
    let dim = h.nrows();
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(order.len(), order.iter().map(|&i| eig.eigenvalues[i]));
    let vectors = DMatrix::from_fn(dim, order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub(crate) fn hermitize(m: &DMatrix<C64>) -> DMatrix<C64> {
    (m + m.adjoint()) * C64::new(0.5, 0.0)
}

/// Rebuilds `V f(λ) V†`.
pub(crate) fn spectral_map(values: &DVector<f64>, vectors: &DMatrix<C64>, f: impl Fn(f64) -> f64) -> DMatrix<C64> {
    let d = DMatrix::from_diagonal(&values.map(|v| C64::new(f(v), 0.0)));
    vectors * d * vectors.adjoint()
}

/// Result of projecting onto the positive semidefinite, unit-trace cone.
pub(crate) struct Projection {
    pub matrix: DMatrix<C64>,
    /// Smallest eigenvalue of the Hermitian input before clipping.
    pub min_eigenvalue: f64,
    /// Whether any eigenvalue below `-CLIP_FLAG_TOL` had to be clipped.
    pub clipped: bool,
}

/// Negative eigenvalues smaller than this are rounding noise and not reported.
const CLIP_FLAG_TOL: f64 = 1e-12;

/// Hermitizes, clips negative eigenvalues to zero and renormalizes the trace.
pub(crate) fn project_psd_unit_trace(m: &DMatrix<C64>) -> Projection {
    let (values, vectors) = hermitian_eigen(m);
    let min_eigenvalue = values.min();
    let clipped = min_eigenvalue < -CLIP_FLAG_TOL;
    let clipped_values = values.map(|v| v.max(0.0));
    let total = clipped_values.sum();
    let scaled = if total > 0.0 {
        clipped_values / total
    } else {
        DVector::from_element(values.len(), 1.0 / values.len() as f64)
    };
    let matrix = hermitize(&spectral_map(&scaled, &vectors, |v| v));
    Projection {
        matrix,
        min_eigenvalue,
        clipped,
    }
}

/// Principal square root of a PSD matrix; tiny negative eigenvalues are clipped.
pub(crate) fn sqrt_psd(m: &DMatrix<C64>) -> DMatrix<C64> {
    let (values, vectors) = hermitian_eigen(m);
    spectral_map(&values, &vectors, |v| v.max(0.0).sqrt())
}

pub(crate) fn trace(m: &DMatrix<C64>) -> C64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn sqrt_squares_back() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[C64::new(0.7, 0.0), C64::new(0.1, -0.2), C64::new(0.1, 0.2), C64::new(0.3, 0.0)],
        );
        let r = sqrt_psd(&m);
        assert!(max_abs_diff(&(&r * &r), &m) < 1e-12);
    }

    #[test]
    fn projection_clips_negative_eigenvalues() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.2, 0.0),
            C64::new(-0.2, 0.0),
        ]));
        let p = project_psd_unit_trace(&m);
        assert!(p.clipped);
        assert!((p.min_eigenvalue + 0.2).abs() < 1e-12);
        assert!((p.matrix[(0, 0)].re - 1.0).abs() < 1e-12);
        assert!(p.matrix[(1, 1)].norm() < 1e-12);
    }
}

//! Cyclic Jacobi eigensolver for 4×4 Hermitian matrices.
//!
//! Each step zeroes one off-diagonal pair `(p, q)` with the unitary
//! `G = P·R`, where `P = diag(1, e^{-iφ})` on `(p, q)` makes the pivot real
//! (`φ = arg a_pq`) and `R` is the ordinary real Jacobi rotation. Eigenvectors
//! are accumulated as `V ← V·G`.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub(crate) const MAX_SWEEPS: usize = 100;
pub(crate) const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

fn off_diagonal_norm(a: &Matrix4<C64>) -> f64 {
    let mut sum = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Returns unsorted eigenvalues and the matching eigenvectors as columns.
pub(crate) fn hermitian_eigen(m: &Matrix4<C64>) -> Result<([f64; 4], Matrix4<C64>)> {
    let mut a = *m;
    let mut v = Matrix4::<C64>::identity();
    let scale = a.norm();
    let tolerance = OFF_DIAGONAL_TOLERANCE * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= tolerance {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut values = [0.0; 4];
    for (i, value) in values.iter_mut().enumerate() {
        *value = a[(i, i)].re;
    }
    Ok((values, v))
}

fn rotate(a: &mut Matrix4<C64>, v: &mut Matrix4<C64>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * magnitude);
    let t = if tau >= 0.0 {
        1.0 / (tau + 1.0f64.hypot(tau))
    } else {
        -1.0 / (-tau + 1.0f64.hypot(tau))
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let unphase = (apq / magnitude).conj();

    let mut g = Matrix4::<C64>::identity();
    g[(p, p)] = C64::new(c, 0.0);
    g[(p, q)] = C64::new(s, 0.0);
    g[(q, p)] = unphase * -s;
    g[(q, q)] = unphase * c;

    *a = g.adjoint() * *a * g;
    *v *= g;

    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    for i in 0..4 {
        a[(i, i)].im = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(m: &Matrix4<C64>, values: &[f64; 4], vectors: &Matrix4<C64>) -> f64 {
        (0..4)
            .map(|k| {
                let col = vectors.column(k);
                (m * col - col * C64::new(values[k], 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn diagonalizes_complex_hermitian() {
        #[rustfmt::skip]
        let m = Matrix4::new(
            C64::new(2.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, -0.5), C64::new(0.3, 0.0),
            C64::new(1.0, -1.0), C64::new(-1.0, 0.0), C64::new(0.2, 0.2), C64::new(0.0, 0.0),
            C64::new(0.0, 0.5), C64::new(0.2, -0.2), C64::new(0.5, 0.0), C64::new(1.5, -0.7),
            C64::new(0.3, 0.0), C64::new(0.0, 0.0), C64::new(1.5, 0.7), C64::new(-2.0, 0.0),
        );
        let (values, vectors) = hermitian_eigen(&m).unwrap();
        assert!(residual(&m, &values, &vectors) < 1e-13 * m.norm());
        let gram = vectors.adjoint() * vectors;
        assert!((gram - Matrix4::identity()).norm() < 1e-13);
        let trace: f64 = values.iter().sum();
        assert!((trace - m.trace().re).abs() < 1e-13);
    }

    #[test]
    fn zero_matrix_is_already_diagonal() {
        let (values, vectors) = hermitian_eigen(&Matrix4::zeros()).unwrap();
        assert_eq!(values, [0.0; 4]);
        assert_eq!(vectors, Matrix4::identity());
    }
}

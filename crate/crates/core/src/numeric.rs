//! Small dense complex matrices, row-major.

use num_complex::Complex64;

pub(crate) fn identity(dim: usize) -> Vec<Complex64> {
    let mut m = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        m[i * dim + i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub(crate) fn matmul(a: &[Complex64], b: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for k in 0..dim {
            let x = a[r * dim + k];
            for c in 0..dim {
                out[r * dim + c] += x * b[k * dim + c];
            }
        }
    }
    out
}

pub(crate) fn adjoint(a: &[Complex64], dim: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for c in 0..dim {
            out[c * dim + r] = a[r * dim + c].conj();
        }
    }
    out
}

pub(crate) fn trace(a: &[Complex64], dim: usize) -> Complex64 {
    (0..dim).map(|i| a[i * dim + i]).sum()
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn det(a: &[Complex64], dim: usize) -> Complex64 {
    let mut m = a.to_vec();
    let mut acc = Complex64::new(1.0, 0.0);
    for col in 0..dim {
        let pivot = (col..dim)
            .max_by(|&x, &y| m[x * dim + col].norm().total_cmp(&m[y * dim + col].norm()))
            .unwrap();
        if m[pivot * dim + col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for c in 0..dim {
                m.swap(pivot * dim + c, col * dim + c);
            }
            acc = -acc;
        }
        let p = m[col * dim + col];
        acc *= p;
        for r in col + 1..dim {
            let f = m[r * dim + col] / p;
            for c in col..dim {
                let v = m[col * dim + c];
                m[r * dim + c] -= f * v;
            }
        }
    }
    acc
}

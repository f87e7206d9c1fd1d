//! Dense linear algebra for small systems, generic over the scalar.
//!
//! The same routines serve the exact rational path (`BigRational`) and the
//! floating-point cross-checks used in tests; pivot selection only needs
//! `Signed` for magnitude comparison.

use num_traits::{Num, Signed};

/// Scalar usable in the solvers: exact rationals, big integers or floats.
pub trait Scalar: Num + Signed + PartialOrd + Clone {}
impl<T: Num + Signed + PartialOrd + Clone> Scalar for T {}

/// Solve `a * x = b` by Gaussian elimination with partial pivoting.
///
/// Returns `None` when the matrix is singular. Exact for field scalars.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<S>> = a.to_vec();
    let mut rhs: Vec<S> = b.to_vec();

    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            m[i][col]
                .abs()
                .partial_cmp(&m[j][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[pivot][col].is_zero() {
            return None;
        }
        m.swap(col, pivot);
        rhs.swap(col, pivot);

        for row in col + 1..n {
            if m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone() / m[col][col].clone();
            for k in col..n {
                let t = factor.clone() * m[col][k].clone();
                m[row][k] = m[row][k].clone() - t;
            }
            let t = factor * rhs[col].clone();
            rhs[row] = rhs[row].clone() - t;
        }
    }

    let mut x = vec![S::zero(); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row].clone();
        for k in row + 1..n {
            acc = acc - m[row][k].clone() * x[k].clone();
        }
        x[row] = acc / m[row][row].clone();
    }
    Some(x)
}

/// Leading principal minors `det(a[..k][..k])` for `k = 1..=n` in one
/// fraction-free (Bareiss) sweep.
///
/// Requires an integral domain scalar; every division performed is exact.
/// If some leading minor vanishes the sweep cannot continue past it: the
/// zero minor is reported and the remaining entries are `None`.
pub fn leading_principal_minors<S: Scalar>(a: &[Vec<S>]) -> Vec<Option<S>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<S>> = a.to_vec();
    let mut minors: Vec<Option<S>> = Vec::with_capacity(n);
    let mut prev = S::one();

    for k in 0..n {
        // After step k-1, m[k][k] equals the k-th leading principal minor.
        let pivot = m[k][k].clone();
        minors.push(Some(pivot.clone()));
        if pivot.is_zero() {
            minors.extend(std::iter::repeat(None).take(n - k - 1));
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num =
                    m[i][j].clone() * pivot.clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num / prev.clone();
            }
        }
        prev = pivot;
    }
    minors
}

/// Sylvester criterion: `a` is positive definite iff all leading principal
/// minors are strictly positive.
pub fn is_positive_definite<S: Scalar>(a: &[Vec<S>]) -> bool {
    leading_principal_minors(a)
        .iter()
        .all(|m| matches!(m, Some(v) if v.is_positive()))
}

//! Exact linear algebra over GF(2) and over the integers.
//!
//! Everything downstream (simplicial homology, tower models, involutive cones)
//! reduces to the three GF(2) primitives here plus Smith normal form.

mod bits;
mod int;

pub use bits::{Echelon, F2Matrix, F2Span, F2Vec};
pub use int::{smith_normal_form, IntMatrix, Smith};

use crate::error::{Error, Result};

pub fn rank_f2(m: &F2Matrix) -> usize {
    m.echelon().rank()
}

/// A basis of `{x : m x = 0}` read off the reduced row echelon form, one vector
/// per free column.
pub fn kernel_basis_f2(m: &F2Matrix) -> Vec<F2Vec> {
    let ech = m.echelon();
    let mut is_pivot = vec![false; m.cols()];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = F2Vec::unit(m.cols(), free);
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if row.get(free) {
                    x.set(p, true);
                }
            }
            x
        })
        .collect()
}

/// Solves `m x = b`. `Ok(None)` means the system is inconsistent.
pub fn solve_f2(m: &F2Matrix, b: &F2Vec) -> Result<Option<F2Vec>> {
    if b.len() != m.rows() {
        return Err(Error::input(format!(
            "right-hand side has length {} but matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let augmented: Vec<F2Vec> = (0..m.rows())
        .map(|i| m.row(i).concat(&F2Vec::from_bits(&[b.get(i)])))
        .collect();
    let ech = F2Matrix::from_row_vecs(n + 1, augmented).echelon();
    if ech.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = F2Vec::zeros(n);
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        if row.get(n) {
            x.set(p, true);
        }
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[u8]]) -> F2Matrix {
        F2Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Every vector of GF(2)^n, as an independent oracle for small systems.
    fn all_vectors(n: usize) -> impl Iterator<Item = F2Vec> {
        (0u32..1 << n)
            .map(move |mask| F2Vec::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_f2(&F2Matrix::zeros(0, 0)), 0);
        assert_eq!(rank_f2(&F2Matrix::identity(3)), 3);
        assert_eq!(rank_f2(&mat(&[&[1, 1], &[1, 1]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis_f2(&F2Matrix::identity(2)).is_empty());
        assert_eq!(kernel_basis_f2(&F2Matrix::zeros(2, 3)).len(), 3);

        let m = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let brute: Vec<F2Vec> = all_vectors(3)
            .filter(|x| !x.is_zero() && m.mul_vec(x).is_zero())
            .collect();
        assert_eq!(brute, vec![F2Vec::from_bits(&[true, true, true])]);
        assert_eq!(kernel_basis_f2(&m), brute);
    }

    #[test]
    fn solve_examples() {
        let x = solve_f2(&F2Matrix::identity(2), &F2Vec::from_bits(&[true, false]))
            .unwrap()
            .unwrap();
        assert_eq!(x, F2Vec::from_bits(&[true, false]));

        let none = solve_f2(&F2Matrix::zeros(2, 2), &F2Vec::from_bits(&[false, true])).unwrap();
        assert!(none.is_none());

        let m = mat(&[&[1, 1], &[0, 1]]);
        let b = F2Vec::from_bits(&[false, true]);
        let brute: Vec<F2Vec> = all_vectors(2).filter(|x| m.mul_vec(x) == b).collect();
        assert_eq!(brute, vec![F2Vec::from_bits(&[true, true])]);
        assert_eq!(solve_f2(&m, &b).unwrap().unwrap(), brute[0]);
    }

    #[test]
    fn solve_rejects_bad_length() {
        let err = solve_f2(&F2Matrix::identity(2), &F2Vec::zeros(3)).unwrap_err();
        assert_eq!(err.kind(), "input");
    }

    #[test]
    fn span_tracks_rank() {
        let mut s = F2Span::new(3);
        assert!(s.insert(&F2Vec::from_bits(&[true, true, false])));
        assert!(s.insert(&F2Vec::from_bits(&[false, true, true])));
        assert!(!s.insert(&F2Vec::from_bits(&[true, false, true])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&F2Vec::from_bits(&[true, false, true])));
        assert!(!s.contains(&F2Vec::from_bits(&[true, false, false])));
    }
}

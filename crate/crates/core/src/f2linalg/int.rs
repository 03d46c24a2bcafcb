use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::F2Matrix;

/// Integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Returns `None` on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|x| x.clone().into()).collect(),
        })
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone().into());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mod2(&self) -> F2Matrix {
        F2Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).is_odd())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += k * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = self.get(source, j) * k;
            if !delta.is_zero() {
                self.data[target * self.cols + j] += delta;
            }
        }
    }

    /// col[target] += k * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = self.get(i, source) * k;
            if !delta.is_zero() {
                self.data[i * self.cols + target] += delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -std::mem::take(&mut self.data[idx]);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `left * m * right = diagonal`, with `left` and `right` unimodular and the
/// diagonal entries nonnegative, each dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl Smith {
    /// Diagonal entries `d_1 | d_2 | ...`, zeros included.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.diagonal.rows.min(self.diagonal.cols))
            .map(|i| self.diagonal.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants()
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .collect()
    }

    fn check(&self, m: &IntMatrix) -> Result<(), String> {
        if self.left.mul(m).mul(&self.right) != self.diagonal {
            return Err("U*M*V != D".into());
        }
        let d = &self.diagonal;
        for i in 0..d.rows {
            for j in 0..d.cols {
                if i != j && !d.get(i, j).is_zero() {
                    return Err(format!("off-diagonal entry at ({i},{j})"));
                }
            }
        }
        let inv = self.invariants();
        if inv.iter().any(Signed::is_negative) {
            return Err("negative diagonal entry".into());
        }
        for w in inv.windows(2) {
            let divides = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                w[1].is_multiple_of(&w[0])
            };
            if !divides {
                return Err(format!(
                    "divisibility chain broken: {} does not divide {}",
                    w[0], w[1]
                ));
            }
        }
        let unit = |u: &IntMatrix| u.determinant().abs().is_one();
        if !unit(&self.left) || !unit(&self.right) {
            return Err("transform is not unimodular".into());
        }
        Ok(())
    }
}

/// Position of a nonzero entry of minimal absolute value in the block
/// `rows >= t, cols >= t`.
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = d.get(i, j);
            if v.is_zero() {
                continue;
            }
            let a = v.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Smith normal form with minimal-absolute-value pivoting. The result is
/// re-verified (`U m V = D`, unimodularity, divisibility) before returning;
/// a failed check is a bug and panics.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = -(d.get(i, t) / &pivot);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = -(d.get(t, j) / &pivot);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                // a remainder smaller than the pivot survived: bring the smallest one in
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..r {
                    let a = d.get(i, t).abs();
                    if !a.is_zero() && best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                        best = Some((true, i, a));
                    }
                }
                for j in t + 1..c {
                    let a = d.get(t, j).abs();
                    if !a.is_zero() && best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                        best = Some((false, j, a));
                    }
                }
                match best {
                    Some((true, i, _)) => {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                    Some((false, j, _)) => {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                    None => unreachable!("unclean step leaves a nonzero remainder"),
                }
                continue;
            }
            let offender = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    let smith = Smith {
        left: u,
        diagonal: d,
        right: v,
    };
    if let Err(e) = smith.check(m) {
        panic!("Smith normal form self-check failed: {e}");
    }
    smith
}

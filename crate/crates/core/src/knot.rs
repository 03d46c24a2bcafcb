//! Seifert-matrix invariants: signature, Alexander polynomial, Arf invariant
//! and the determinant form of the Fox–Milnor condition.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::f2linalg::IntMatrix;

/// Largest accepted Seifert matrix (genus 32).
pub const MAX_SEIFERT_SIZE: usize = 64;

/// Square integer matrix `V` of even size with `det(V - Vᵀ) = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self> {
        if !v.is_square() {
            return Err(Error::input(format!(
                "Seifert matrix must be square, got {}x{}",
                v.rows(),
                v.cols()
            )));
        }
        if !v.rows().is_multiple_of(2) {
            return Err(Error::input(format!(
                "Seifert matrix must have even size, got {}",
                v.rows()
            )));
        }
        if v.rows() > MAX_SEIFERT_SIZE {
            return Err(Error::input(format!(
                "Seifert matrix of size {} exceeds the limit {MAX_SEIFERT_SIZE}",
                v.rows()
            )));
        }
        let det = v.add(&v.transpose().scale(&-BigInt::one())).determinant();
        if det.abs() != BigInt::one() {
            return Err(Error::input(format!(
                "det(V - V^T) = {det}, expected +1 or -1"
            )));
        }
        Ok(SeifertMatrix { v })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let v = IntMatrix::from_rows(rows)
            .ok_or_else(|| Error::input("Seifert matrix rows have different lengths"))?;
        Self::new(v)
    }

    pub fn unknot() -> Self {
        SeifertMatrix {
            v: IntMatrix::zeros(0, 0),
        }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    pub fn genus_bound(&self) -> usize {
        self.size() / 2
    }

    /// `S V Sᵀ`; `S` must be unimodular.
    pub fn congruent(&self, s: &IntMatrix) -> Result<Self> {
        if s.rows() != self.size() || !s.is_square() || s.determinant().abs() != BigInt::one() {
            return Err(Error::input(
                "change of basis must be a unimodular matrix of matching size",
            ));
        }
        Self::new(s.mul(&self.v).mul(&s.transpose()))
    }
}

/// Integer Laurent polynomial, stored sparsely by exponent.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn from_coefficients(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            *coeffs.entry(e).or_insert_with(BigInt::zero) += c;
        }
        coeffs.retain(|_, c: &mut BigInt| !c.is_zero());
        LaurentPoly { coeffs }
    }

    /// Symmetric coefficients listed from `t^0` upwards: `[c0, c1, ...]` means
    /// `c0 + c1 (t + t^-1) + ...`.
    pub fn symmetric(half: &[i64]) -> Self {
        Self::from_coefficients(half.iter().enumerate().flat_map(|(k, &c)| {
            let k = k as i64;
            let mut v = vec![(k, BigInt::from(c))];
            if k > 0 {
                v.push((-k, BigInt::from(c)));
            }
            v
        }))
    }

    pub fn one() -> Self {
        Self::from_coefficients([(0, BigInt::one())])
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn coefficient(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(&e, c)| self.coeffs.get(&-e) == Some(c))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        Self::from_coefficients(
            self.terms()
                .flat_map(|(a, x)| other.terms().map(move |(b, y)| (a + b, x * y))),
        )
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn eval_at_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.is_odd() { -c } else { c.clone() })
            .sum()
    }

    fn negated(&self) -> LaurentPoly {
        Self::from_coefficients(self.terms().map(|(e, c)| (e, -c)))
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `t - 1 + t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one() && e != 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Signature of `V + Vᵀ`.
pub fn signature(v: &SeifertMatrix) -> Result<i64> {
    let sym = v.matrix().add(&v.matrix().transpose());
    let s = symmetric_signature(&sym);
    if s.is_odd() {
        return Err(Error::internal(format!(
            "odd signature {s} for a Seifert matrix"
        )));
    }
    Ok(s)
}

/// Signature of a symmetric integer matrix by congruence diagonalization over
/// the rationals; zero directions contribute nothing.
#[allow(clippy::needless_range_loop)]
pub fn symmetric_signature(m: &IntMatrix) -> i64 {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // row/col k += row/col j makes a[k][k] = 2 a[k][j]
                for c in 0..n {
                    let x = a[j][c].clone();
                    a[k][c] += x;
                }
                for r in 0..n {
                    let x = a[r][j].clone();
                    a[r][k] += x;
                }
            } else {
                continue;
            }
        }
        let p = a[k][k].clone();
        sig += if p.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            // row i -= f row k, then col i -= f col k
            let f = &a[i][k] / &p;
            for j in 0..n {
                let x = &f * &a[k][j];
                a[i][j] -= x;
            }
            for r in 0..n {
                let x = &f * &a[r][k];
                a[r][i] -= x;
            }
        }
    }
    sig
}

/// `det(V - t Vᵀ)` shifted by `t^-g` and signed so that `Δ(1) = 1`.
pub fn alexander(v: &SeifertMatrix) -> Result<LaurentPoly> {
    let n = v.size();
    let g = (n / 2) as i64;
    let vt = v.matrix().transpose();
    // degree <= n, so n + 1 samples determine it
    let points: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|t| v.matrix().add(&vt.scale(&-t)).determinant())
        .collect();
    let coeffs = interpolate(&points, &values)?;
    let mut p = LaurentPoly::from_coefficients(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (k as i64 - g, c)),
    );
    let at_one = p.eval_at_one();
    if at_one == -BigInt::one() {
        p = p.negated();
    } else if !at_one.is_one() {
        return Err(Error::internal(format!(
            "Alexander polynomial has value {at_one} at t = 1"
        )));
    }
    if !p.is_symmetric() {
        return Err(Error::internal(format!(
            "Alexander polynomial {p} is not symmetric"
        )));
    }
    Ok(p)
}

/// Integer coefficients (lowest first) of the polynomial through the points.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = xs.len();
    let mut total = vec![BigRational::zero(); n];
    for i in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in (0..n).filter(|&j| j != i) {
            // basis *= (t - x_j)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(xs[j].clone());
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = BigRational::new(ys[i].clone(), denom);
        for (k, c) in basis.into_iter().enumerate() {
            total[k] += c * &scale;
        }
    }
    total
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::internal("non-integral Alexander coefficient"))
            }
        })
        .collect()
}

/// Arf invariant from `|Δ(-1)| mod 8`.
pub fn arf_from_alexander(p: &LaurentPoly) -> Result<u8> {
    let det = p.eval_at_minus_one().abs();
    let r = (&det % 8u32)
        .to_u32_digits()
        .1
        .first()
        .copied()
        .unwrap_or(0);
    match r {
        1 | 7 => Ok(0),
        3 | 5 => Ok(1),
        _ => Err(Error::input(format!(
            "|Delta(-1)| = {det} is even: not the Alexander polynomial of a knot"
        ))),
    }
}

pub fn arf(v: &SeifertMatrix) -> Result<u8> {
    arf_from_alexander(&alexander(v)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoxMilnor {
    /// `|Δ(-1)|` is a square; the condition gives no information.
    Unknown,
    /// `|Δ(-1)|` is not a square, so the knot is not slice.
    Obstructed,
}

impl fmt::Display for FoxMilnor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FoxMilnor::Unknown => "unknown",
            FoxMilnor::Obstructed => "obstructed",
        })
    }
}

pub fn fox_milnor_obstruction(p: &LaurentPoly) -> FoxMilnor {
    let det = p.eval_at_minus_one().abs();
    let root = det.sqrt();
    if &root * &root == det {
        FoxMilnor::Unknown
    } else {
        FoxMilnor::Obstructed
    }
}

/// `σ ≡ 4·Arf + 4 (mod 8)`.
pub fn corollary_predicate(sigma: i64, arf: u8) -> bool {
    (sigma - 4 * i64::from(arf) - 4).rem_euclid(8) == 0
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotReport {
    pub signature: i64,
    pub alexander: LaurentPoly,
    /// `|Δ(-1)|`
    pub determinant: BigInt,
    pub arf: u8,
    pub fox_milnor: FoxMilnor,
    pub corollary_predicate: bool,
}

pub fn knot_invariants(v: &SeifertMatrix) -> Result<KnotReport> {
    let signature = signature(v)?;
    let alexander = alexander(v)?;
    let arf = arf_from_alexander(&alexander)?;
    Ok(KnotReport {
        signature,
        determinant: alexander.eval_at_minus_one().abs(),
        fox_milnor: fox_milnor_obstruction(&alexander),
        corollary_predicate: corollary_predicate(signature, arf),
        arf,
        alexander,
    })
}

//! Finite windows of graded GF(2) chain complexes.
//!
//! Every infinite object in the crate (tower models, plus-flavored complexes,
//! mapping cones) is studied by materializing the degrees `lo..=hi` as a
//! [`GradedComplex`] with a handful of [`GradedMap`]s acting on it. Degree
//! conventions: the differential lowers degree by one and a map with shift `s`
//! sends degree `d` to degree `d + s`.

use crate::f2linalg::{kernel_basis_f2, F2Matrix, F2Span, F2Vec};

/// A labelled basis element of a finitely generated graded module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
}

/// Degrees `lo..=hi` of an infinite complex, with `margin` steps of the
/// periodic operator reserved at the top for tower detection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
    pub margin: u32,
}

pub const DEFAULT_MARGIN: u32 = 2;

#[derive(Clone, Debug)]
pub struct GradedComplex {
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
    /// `diff[d - lo]` is `C_d -> C_{d-1}`; it has zero rows at `d = lo`.
    diff: Vec<F2Matrix>,
}

impl GradedComplex {
    /// `dims[i]` is the dimension in degree `lo + i`; `diff(d)` must return a
    /// `dims(d-1) x dims(d)` matrix.
    pub fn from_fn(lo: i64, dims: Vec<usize>, mut diff: impl FnMut(i64) -> F2Matrix) -> Self {
        let hi = lo + dims.len() as i64 - 1;
        let mut mats = Vec::with_capacity(dims.len());
        for (i, &n) in dims.iter().enumerate() {
            let d = lo + i as i64;
            let m = diff(d);
            let below = if i == 0 { 0 } else { dims[i - 1] };
            assert_eq!(
                (m.rows(), m.cols()),
                (below, n),
                "differential in degree {d} has the wrong shape"
            );
            mats.push(m);
        }
        GradedComplex {
            lo,
            hi,
            dims,
            diff: mats,
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn contains_degree(&self, d: i64) -> bool {
        d >= self.lo && d <= self.hi
    }

    pub fn dim(&self, d: i64) -> usize {
        if self.contains_degree(d) {
            self.dims[(d - self.lo) as usize]
        } else {
            0
        }
    }

    /// `C_d -> C_{d-1}`; a zero-size matrix outside the window.
    pub fn differential(&self, d: i64) -> F2Matrix {
        if self.contains_degree(d) {
            self.diff[(d - self.lo) as usize].clone()
        } else {
            F2Matrix::zeros(self.dim(d - 1), self.dim(d))
        }
    }

    pub fn squares_to_zero(&self) -> bool {
        (self.lo + 1..=self.hi).all(|d| {
            self.differential(d - 1)
                .mul(&self.differential(d))
                .is_zero()
        })
    }

    pub fn cycles(&self, d: i64) -> Vec<F2Vec> {
        kernel_basis_f2(&self.differential(d))
    }

    pub fn boundaries(&self, d: i64) -> Vec<F2Vec> {
        let m = self.differential(d + 1);
        (0..m.cols())
            .map(|j| m.column(j))
            .filter(|c| !c.is_zero())
            .collect()
    }

    pub fn homology(&self, d: i64) -> Subquotient {
        Subquotient::new(self.dim(d), &self.boundaries(d), &self.cycles(d))
    }

    pub fn betti(&self, d: i64) -> usize {
        self.homology(d).dim()
    }

    /// The degree-negated transpose: `(C^*)_{-d} = Hom(C_d, F)` with
    /// differential `D^T`, again lowering degree by one.
    pub fn dual(&self) -> GradedComplex {
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        GradedComplex::from_fn(-self.hi, dims, |e| self.differential(1 - e).transpose())
    }
}

/// A degree-homogeneous linear map between two windows.
#[derive(Clone, Debug)]
pub struct GradedMap {
    shift: i64,
    lo: i64,
    /// `mats[d - lo]` is `source_d -> target_{d + shift}`.
    mats: Vec<F2Matrix>,
}

impl GradedMap {
    pub fn from_fn(
        source: &GradedComplex,
        target: &GradedComplex,
        shift: i64,
        mut f: impl FnMut(i64) -> F2Matrix,
    ) -> Self {
        let mats = (source.lo..=source.hi)
            .map(|d| {
                let m = f(d);
                assert_eq!(
                    (m.rows(), m.cols()),
                    (target.dim(d + shift), source.dim(d)),
                    "graded map in degree {d} has the wrong shape"
                );
                m
            })
            .collect();
        GradedMap {
            shift,
            lo: source.lo,
            mats,
        }
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The component leaving degree `d` (zero-size outside the source window).
    pub fn at(&self, d: i64) -> Option<&F2Matrix> {
        if d < self.lo {
            return None;
        }
        self.mats.get((d - self.lo) as usize)
    }

    pub fn apply(&self, d: i64, v: &F2Vec) -> Option<F2Vec> {
        self.at(d).map(|m| m.mul_vec(v))
    }

    /// `self ∘ other`; both must act on the same window.
    pub fn compose(&self, other: &GradedMap, window: &GradedComplex) -> GradedMap {
        GradedMap::from_fn(window, window, self.shift + other.shift, |d| {
            let first = other
                .at(d)
                .cloned()
                .unwrap_or_else(|| F2Matrix::zeros(0, window.dim(d)));
            match self.at(d + other.shift) {
                Some(second) => second.mul(&first),
                None => F2Matrix::zeros(window.dim(d + self.shift + other.shift), window.dim(d)),
            }
        })
    }

    pub fn power(&self, k: usize, window: &GradedComplex) -> GradedMap {
        let mut out = GradedMap::from_fn(window, window, 0, |d| F2Matrix::identity(window.dim(d)));
        for _ in 0..k {
            out = self.compose(&out, window);
        }
        out
    }

    /// Transpose map on the dual windows.
    pub fn dual(&self, source: &GradedComplex, target: &GradedComplex) -> GradedMap {
        let (ds, dt) = (target.dual(), source.dual());
        let shift = self.shift;
        GradedMap::from_fn(&ds, &dt, shift, |e| match self.at(-e - shift) {
            Some(m) => m.transpose(),
            None => F2Matrix::zeros(dt.dim(e + shift), ds.dim(e)),
        })
    }

    /// Whether `D f = f D` on every degree where both sides stay inside the
    /// window.
    pub fn is_chain_map(&self, source: &GradedComplex, target: &GradedComplex) -> bool {
        (source.lo..=source.hi).all(|d| {
            let t = d + self.shift;
            if !target.contains_degree(t)
                || !target.contains_degree(t - 1)
                || !source.contains_degree(d - 1)
            {
                return true;
            }
            let (Some(f_here), Some(f_below)) = (self.at(d), self.at(d - 1)) else {
                return true;
            };
            target.differential(t).mul(f_here) == f_below.mul(&source.differential(d))
        })
    }

    /// Whether `self ∘ other == other ∘ self` on a common window, checked in
    /// every degree where all four factors are materialized.
    pub fn commutes_with(&self, other: &GradedMap, window: &GradedComplex) -> bool {
        (window.lo..=window.hi).all(|d| {
            let end = d + self.shift + other.shift;
            if !window.contains_degree(end) {
                return true;
            }
            let a = match (other.at(d), self.at(d + other.shift)) {
                (Some(f), Some(g)) if window.contains_degree(d + other.shift) => g.mul(f),
                _ => return true,
            };
            let b = match (self.at(d), other.at(d + self.shift)) {
                (Some(f), Some(g)) if window.contains_degree(d + self.shift) => g.mul(f),
                _ => return true,
            };
            a == b
        })
    }

    /// Rank of the induced map `H_d(source) -> H_{d+shift}(target)`.
    pub fn induced_rank(&self, source: &GradedComplex, target: &GradedComplex, d: i64) -> usize {
        let t = d + self.shift;
        let Some(m) = self.at(d) else { return 0 };
        if !target.contains_degree(t) {
            return 0;
        }
        let mut span = F2Span::new(target.dim(t));
        for b in target.boundaries(t) {
            span.insert(&b);
        }
        let base = span.rank();
        for z in source.cycles(d) {
            span.insert(&m.mul_vec(&z));
        }
        span.rank() - base
    }
}

/// `cycles / boundaries` in one degree, with a chosen basis of representatives
/// and a coordinate map for cycles.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    /// Echelon rows `(pivot, row, homology coordinates of the row)`.
    rows: Vec<(usize, F2Vec, Vec<bool>)>,
    reps: Vec<F2Vec>,
}

impl Subquotient {
    pub fn new(ambient: usize, boundaries: &[F2Vec], cycles: &[F2Vec]) -> Self {
        let mut rows: Vec<(usize, F2Vec, Vec<usize>)> = Vec::new();
        let reduce = |rows: &[(usize, F2Vec, Vec<usize>)], v: &F2Vec| {
            let mut v = v.clone();
            let mut tag: Vec<usize> = Vec::new();
            for (p, r, t) in rows {
                if v.get(*p) {
                    v.xor_assign(r);
                    tag.extend(t);
                }
            }
            (v, tag)
        };
        for b in boundaries {
            let (r, _) = reduce(&rows, b);
            if let Some(p) = r.first_one() {
                Self::push_row(&mut rows, p, r, Vec::new());
            }
        }
        let mut reps = Vec::new();
        for z in cycles {
            let (r, mut tag) = reduce(&rows, z);
            if let Some(p) = r.first_one() {
                tag.push(reps.len());
                reps.push(z.clone());
                Self::push_row(&mut rows, p, r, tag);
            }
        }
        let n = reps.len();
        let rows = rows
            .into_iter()
            .map(|(p, r, tag)| {
                let mut coords = vec![false; n];
                for t in tag {
                    coords[t] ^= true;
                }
                (p, r, coords)
            })
            .collect();
        Subquotient {
            ambient,
            rows,
            reps,
        }
    }

    fn push_row(rows: &mut Vec<(usize, F2Vec, Vec<usize>)>, p: usize, r: F2Vec, tag: Vec<usize>) {
        for (_, row, t) in rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&r);
                t.extend(tag.iter().copied());
            }
        }
        rows.push((p, r, tag));
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Cycle representatives of the chosen basis.
    pub fn representatives(&self) -> &[F2Vec] {
        &self.reps
    }

    /// Coordinates of the class of `z`; `None` if `z` is not in
    /// `span(boundaries, cycles)`.
    pub fn coordinates(&self, z: &F2Vec) -> Option<F2Vec> {
        let mut v = z.clone();
        let mut coords = vec![false; self.dim()];
        for (p, r, c) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
                for (a, b) in coords.iter_mut().zip(c) {
                    *a ^= b;
                }
            }
        }
        v.is_zero().then(|| F2Vec::from_bits(&coords))
    }

    pub fn is_boundary(&self, z: &F2Vec) -> bool {
        self.coordinates(z).is_some_and(|c| c.is_zero())
    }
}

pub(crate) fn quotient_rank(c: &GradedComplex, d: i64, vectors: &[F2Vec]) -> usize {
    let mut span = F2Span::new(c.dim(d));
    for b in c.boundaries(d) {
        span.insert(&b);
    }
    let base = span.rank();
    for v in vectors {
        span.insert(v);
    }
    span.rank() - base
}

/// For every degree `d`, chain-level vectors spanning `op^k(Z_{d - k*shift})`
/// for the largest `k` whose source is still in the window (`shift < 0`).
/// The result is indexed by `d - lo`.
pub(crate) fn stable_images(c: &GradedComplex, op: &GradedMap) -> Vec<Vec<F2Vec>> {
    let step = -op.shift();
    assert!(step > 0);
    let mut out: Vec<Vec<F2Vec>> = vec![Vec::new(); (c.hi() - c.lo() + 1) as usize];
    for d in (c.lo()..=c.hi()).rev() {
        let idx = (d - c.lo()) as usize;
        out[idx] = if d + step > c.hi() {
            c.cycles(d)
        } else {
            let m = op.at(d + step).expect("source degree in window");
            out[idx + step as usize]
                .iter()
                .map(|v| m.mul_vec(v))
                .filter(|v| !v.is_zero())
                .collect()
        };
    }
    out
}

/// Ranks in homology of [`stable_images`], indexed by `d - lo`.
pub(crate) fn stable_ranks(c: &GradedComplex, op: &GradedMap) -> Vec<usize> {
    stable_images(c, op)
        .iter()
        .enumerate()
        .map(|(i, vs)| quotient_rank(c, c.lo() + i as i64, vs))
        .collect()
}

/// Whether some cycle in degree `d` survives `op^k` down to the bottom of the
/// window (`k` maximal): the "downward-infinite" test used on dual windows.
pub(crate) fn survives_to_bottom(c: &GradedComplex, op: &GradedMap, d: i64) -> bool {
    let step = -op.shift();
    let mut vs = c.cycles(d);
    let mut t = d;
    while t - step >= c.lo() {
        let m = op.at(t).expect("degree in window");
        vs = vs
            .iter()
            .map(|v| m.mul_vec(v))
            .filter(|v| !v.is_zero())
            .collect();
        t -= step;
    }
    quotient_rank(c, t, &vs) > 0
}

/// Rank of `H_d -> H_{d + shift}` restricted to the stable images at `d`.
pub(crate) fn rank_on(c: &GradedComplex, op: &GradedMap, d: i64, vectors: &[F2Vec]) -> usize {
    let Some(m) = op.at(d) else { return 0 };
    let t = d + op.shift();
    if !c.contains_degree(t) {
        return 0;
    }
    let images: Vec<F2Vec> = vectors.iter().map(|v| m.mul_vec(v)).collect();
    quotient_rank(c, t, &images)
}

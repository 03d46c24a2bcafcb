use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{AbstractComplex, Simplex};
use crate::error::{Error, Result};
use crate::f2linalg::{kernel_basis_f2, rank_f2, smith_normal_form, F2Matrix, F2Vec, IntMatrix};
use crate::graded::Subquotient;

/// Oriented simplicial chain complex. Generators in each dimension are the
/// simplices in ascending order; the boundary of `[v0 < ... < vd]` is
/// `sum (-1)^i [.. v_i omitted ..]`.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    generators: Vec<Vec<Simplex>>,
    /// `boundary[d]` is `C_d -> C_{d-1}`; `boundary[0]` is `0 x n_0`.
    boundary: Vec<IntMatrix>,
}

impl ChainComplexZ {
    pub fn generators(&self, d: usize) -> &[Simplex] {
        self.generators.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.generators.len().checked_sub(1)
    }

    pub fn rank(&self, d: usize) -> usize {
        self.generators(d).len()
    }

    /// `C_d -> C_{d-1}`; zero-size beyond the top dimension.
    pub fn boundary(&self, d: usize) -> IntMatrix {
        match self.boundary.get(d) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(self.rank(d.saturating_sub(1)) * usize::from(d > 0), 0),
        }
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.generators(s.dim()).binary_search(s).ok()
    }
}

pub fn chain_complex(k: &AbstractComplex) -> ChainComplexZ {
    let top = k.dim().map_or(0, |d| d + 1);
    let generators: Vec<Vec<Simplex>> = (0..top).map(|d| k.simplices_of_dim(d)).collect();
    let index: Vec<HashMap<&Simplex, usize>> = generators
        .iter()
        .map(|g| g.iter().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut boundary = Vec::with_capacity(top);
    for d in 0..top {
        if d == 0 {
            boundary.push(IntMatrix::zeros(0, generators[0].len()));
            continue;
        }
        let mut m = IntMatrix::zeros(generators[d - 1].len(), generators[d].len());
        for (j, s) in generators[d].iter().enumerate() {
            for (i, f) in s.facets().enumerate() {
                let row = index[d - 1][&f];
                m.set(
                    row,
                    j,
                    if i % 2 == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    },
                );
            }
        }
        boundary.push(m);
    }
    let cc = ChainComplexZ {
        generators,
        boundary,
    };
    for d in 2..top {
        assert!(
            cc.boundary(d - 1).mul(&cc.boundary(d)).is_zero(),
            "boundary of boundary is nonzero in dimension {d}"
        );
    }
    cc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    F2,
}

/// `Z^rank ⊕ ⊕ Z/t` over the integers, or `F^rank` over GF(2) (torsion empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            rank,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in dimensions `0..=dim K`. With `reduced`, dimension 0 is
/// augmented by the empty simplex (the augmentation in degree -1 is not
/// reported).
pub fn homology(k: &AbstractComplex, ring: Ring, reduced: bool) -> Vec<HomologyGroup> {
    let cc = chain_complex(k);
    let Some(top) = cc.top_dim() else {
        return Vec::new();
    };
    let rank_of = |m: &IntMatrix| match ring {
        Ring::Integers => smith_normal_form(m).rank(),
        Ring::F2 => rank_f2(&m.mod2()),
    };
    let mut out_ranks: Vec<usize> = (0..=top + 1)
        .map(|d| {
            if d == 0 || d > top {
                0
            } else {
                rank_of(&cc.boundary(d))
            }
        })
        .collect();
    if reduced && cc.rank(0) > 0 {
        out_ranks[0] = 1;
    }
    (0..=top)
        .map(|d| {
            let rank = cc.rank(d) - out_ranks[d] - out_ranks[d + 1];
            let torsion = match ring {
                Ring::Integers if d < top => smith_normal_form(&cc.boundary(d + 1)).torsion(),
                _ => Vec::new(),
            };
            HomologyGroup { rank, torsion }
        })
        .collect()
}

/// Alternating sum of face counts.
pub fn euler_characteristic(k: &AbstractComplex) -> i64 {
    k.face_counts()
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// `δ: C^d -> C^{d+1}` over GF(2).
pub fn coboundary_f2(k: &AbstractComplex, d: usize) -> F2Matrix {
    let cc = chain_complex(k);
    coboundary_from(&cc, d)
}

fn coboundary_from(cc: &ChainComplexZ, d: usize) -> F2Matrix {
    let b = cc.boundary(d + 1);
    if b.cols() == 0 {
        F2Matrix::zeros(0, cc.rank(d))
    } else {
        b.mod2().transpose()
    }
}

/// A mod-2 cochain of dimension `dim`, indexed by the `dim`-simplices of the
/// complex in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub dim: usize,
    pub cochain: F2Vec,
}

impl CohomologyClass {
    pub fn zero(k: &AbstractComplex, dim: usize) -> Self {
        CohomologyClass {
            dim,
            cochain: F2Vec::zeros(k.simplices_of_dim(dim).len()),
        }
    }

    /// Cochain taking the value 1 exactly on the listed simplices.
    pub fn from_simplices(k: &AbstractComplex, dim: usize, support: &[Simplex]) -> Result<Self> {
        let gens = k.simplices_of_dim(dim);
        let mut cochain = F2Vec::zeros(gens.len());
        for s in support {
            let i = gens
                .binary_search(s)
                .map_err(|_| Error::input(format!("{s} is not a {dim}-simplex of the complex")))?;
            cochain.flip(i);
        }
        Ok(CohomologyClass { dim, cochain })
    }

    pub fn support(&self, k: &AbstractComplex) -> Vec<Simplex> {
        let gens = k.simplices_of_dim(self.dim);
        self.cochain.ones().map(|i| gens[i].clone()).collect()
    }
}

/// `H^d(K; F)` with a chosen cocycle basis.
#[derive(Clone, Debug)]
pub struct CohomologyF2 {
    pub dim: usize,
    quotient: Subquotient,
}

impl CohomologyF2 {
    pub fn rank(&self) -> usize {
        self.quotient.dim()
    }

    pub fn basis(&self) -> Vec<CohomologyClass> {
        self.quotient
            .representatives()
            .iter()
            .map(|c| CohomologyClass {
                dim: self.dim,
                cochain: c.clone(),
            })
            .collect()
    }

    /// Coordinates of a cocycle's class in [`CohomologyF2::basis`].
    pub fn coordinates(&self, x: &CohomologyClass) -> Result<F2Vec> {
        if x.dim != self.dim || x.cochain.len() != self.quotient.ambient_dim() {
            return Err(Error::input(
                "cochain does not belong to this cohomology group",
            ));
        }
        self.quotient
            .coordinates(&x.cochain)
            .ok_or_else(|| Error::input("cochain is not a cocycle"))
    }

    pub fn is_zero_class(&self, x: &CohomologyClass) -> Result<bool> {
        Ok(self.coordinates(x)?.is_zero())
    }
}

pub fn cohomology_f2(k: &AbstractComplex, d: usize) -> CohomologyF2 {
    let cc = chain_complex(k);
    let delta = coboundary_from(&cc, d);
    let cocycles = kernel_basis_f2(&delta);
    let coboundaries: Vec<F2Vec> = if d == 0 {
        Vec::new()
    } else {
        let prev = coboundary_from(&cc, d - 1);
        (0..prev.cols()).map(|j| prev.column(j)).collect()
    };
    CohomologyF2 {
        dim: d,
        quotient: Subquotient::new(cc.rank(d), &coboundaries, &cocycles),
    }
}

/// Bockstein of `0 -> Z/2 -> Z/4 -> Z/2 -> 0`: lift `x` to an integral cochain
/// with entries 0/1, take its integral coboundary (all entries even because
/// `x` is a mod-2 cocycle), halve and reduce mod 2.
pub fn bockstein_sq1(k: &AbstractComplex, x: &CohomologyClass) -> Result<CohomologyClass> {
    let cc = chain_complex(k);
    let d = x.dim;
    if x.cochain.len() != cc.rank(d) {
        return Err(Error::input(format!(
            "cochain has length {} but there are {} simplices of dimension {d}",
            x.cochain.len(),
            cc.rank(d)
        )));
    }
    if !coboundary_from(&cc, d).mul_vec(&x.cochain).is_zero() {
        return Err(Error::input("class is not a mod-2 cocycle"));
    }
    let up = cc.boundary(d + 1);
    let mut out = F2Vec::zeros(cc.rank(d + 1));
    for tau in 0..up.cols() {
        let mut value = BigInt::from(0);
        for sigma in x.cochain.ones() {
            value += up.get(sigma, tau);
        }
        let v = value
            .to_i64()
            .expect("coboundary entries are bounded by the simplex size");
        debug_assert_eq!(v.rem_euclid(2), 0);
        if (v / 2).rem_euclid(2) == 1 {
            out.set(tau, true);
        }
    }
    Ok(CohomologyClass {
        dim: d + 1,
        cochain: out,
    })
}

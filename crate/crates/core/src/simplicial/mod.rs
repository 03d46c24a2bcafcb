//! Finite abstract simplicial complexes: closure, star, link, joins, integral
//! and mod-2 (co)homology, the Bockstein `Sq^1`, edge-path groups with coset
//! enumeration, and link-based manifold scans.

mod group;
mod homology;
mod scan;

pub use group::{
    abelianization, coset_enumeration, fundamental_group, CosetOutcome, GroupPresentation, Letter,
};
pub use homology::{
    bockstein_sq1, chain_complex, coboundary_f2, cohomology_f2, euler_characteristic, homology,
    ChainComplexZ, CohomologyClass, CohomologyF2, HomologyGroup, Ring,
};
pub use scan::{link_manifold_scan, LinkReport, LinkVerdict, ScanOptions};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = i64;

/// Upper bound on the number of simplices a complex may have after closure.
pub const MAX_SIMPLICES: usize = 1 << 20;

/// A nonempty simplex, stored as its strictly increasing vertex list.
/// Ordered by dimension first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("simplex must have at least one vertex"));
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input(format!(
                "simplex {vertices:?} repeats a vertex"
            )));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(!vertices.is_empty() && vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    pub fn is_disjoint_from(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_err())
    }

    /// Codimension-one faces in boundary order: the `i`-th omits vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.len())
            .filter(|_| self.0.len() > 1)
            .map(move |i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (1u64..1 << n).map(move |mask| {
            Simplex(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = self.0.iter().chain(&other.0).copied().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn format_simplices<'a>(simplices: impl IntoIterator<Item = &'a Simplex>) -> String {
    let parts: Vec<String> = simplices.into_iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Downward-closed set of simplices on a finite vertex set. Immutable once
/// validated.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AbstractComplex {
    vertices: BTreeSet<Vertex>,
    simplices: BTreeSet<Simplex>,
}

impl AbstractComplex {
    /// Builds the closure of the given faces. Vertices must be distinct and every
    /// face may only use listed vertices.
    pub fn validate(vertices: &[Vertex], faces: &[Vec<Vertex>]) -> Result<Self> {
        let mut vset = BTreeSet::new();
        for &v in vertices {
            if !vset.insert(v) {
                return Err(Error::input(format!("duplicate vertex {v}")));
            }
        }
        let mut facets = Vec::with_capacity(faces.len());
        for f in faces {
            let s = Simplex::new(f.clone())?;
            if let Some(v) = s.vertices().iter().find(|v| !vset.contains(v)) {
                return Err(Error::input(format!(
                    "simplex {s} references unknown vertex {v}"
                )));
            }
            facets.push(s);
        }
        let mut simplices: BTreeSet<Simplex> = vset.iter().map(|&v| Simplex::vertex(v)).collect();
        for s in &facets {
            let n = s.vertices().len();
            if n > 20 || simplices.len() + (1 << n) > MAX_SIMPLICES {
                return Err(Error::input(format!(
                    "closing {s} would exceed the limit of {MAX_SIMPLICES} simplices"
                )));
            }
            simplices.extend(s.faces());
        }
        Ok(AbstractComplex {
            vertices: vset,
            simplices,
        })
    }

    /// Closure of the given simplices, with the vertex set they span.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut all = BTreeSet::new();
        for s in simplices {
            if !all.contains(&s) {
                all.extend(s.faces());
            }
        }
        let vertices = all
            .iter()
            .filter(|s| s.dim() == 0)
            .map(|s| s.vertices()[0])
            .collect();
        AbstractComplex {
            vertices,
            simplices: all,
        }
    }

    pub fn empty() -> Self {
        AbstractComplex::default()
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// Dimension of the largest simplex; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    pub fn simplices_of_dim(&self, d: usize) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| s.dim() == d)
            .cloned()
            .collect()
    }

    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| {
                !self
                    .simplices
                    .iter()
                    .any(|t| t.dim() > s.dim() && s.is_face_of(t))
            })
            .cloned()
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let facets = self.facets();
        facets.windows(2).all(|w| w[0].dim() == w[1].dim())
    }

    fn require(&self, s: &Simplex) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::input(format!("simplex {s} is not in the complex")))
        }
    }

    /// Smallest downward-closed subset containing `subset`.
    pub fn closure(&self, subset: &[Simplex]) -> Result<BTreeSet<Simplex>> {
        let mut out = BTreeSet::new();
        for s in subset {
            self.require(s)?;
            out.extend(s.faces());
        }
        Ok(out)
    }

    /// All cofaces of `tau`, including `tau`.
    pub fn star(&self, tau: &Simplex) -> Result<BTreeSet<Simplex>> {
        self.require(tau)?;
        Ok(self
            .simplices
            .iter()
            .filter(|s| tau.is_face_of(s))
            .cloned()
            .collect())
    }

    /// Simplices of the closed star that miss `tau`.
    pub fn link(&self, tau: &Simplex) -> Result<AbstractComplex> {
        let star: Vec<Simplex> = self.star(tau)?.into_iter().collect();
        let closed = self.closure(&star)?;
        Ok(AbstractComplex::from_simplices(
            closed.into_iter().filter(|s| s.is_disjoint_from(tau)),
        ))
    }

    /// Join `self * other`; the second factor is relabelled when the vertex sets
    /// overlap.
    pub fn join(&self, other: &AbstractComplex) -> AbstractComplex {
        let other = match (self.vertices.last(), other.vertices.first()) {
            (Some(&max), Some(_)) if !self.vertices.is_disjoint(&other.vertices) => {
                let min = *other.vertices.first().unwrap();
                other.relabel(max - min + 1)
            }
            _ => other.clone(),
        };
        let mut simplices: BTreeSet<Simplex> = self.simplices.clone();
        simplices.extend(other.simplices.iter().cloned());
        for a in &self.simplices {
            for b in &other.simplices {
                simplices.insert(a.union(b));
            }
        }
        AbstractComplex {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            simplices,
        }
    }

    /// Join with two fresh points.
    pub fn suspension(&self) -> AbstractComplex {
        let top = self.vertices.last().copied().unwrap_or(-1);
        let poles =
            AbstractComplex::validate(&[top + 1, top + 2], &[]).expect("two fresh vertices");
        self.join(&poles)
    }

    /// Shifts every label by `offset`.
    pub fn relabel(&self, offset: Vertex) -> AbstractComplex {
        let map: BTreeMap<Vertex, Vertex> =
            self.vertices.iter().map(|&v| (v, v + offset)).collect();
        AbstractComplex {
            vertices: map.values().copied().collect(),
            simplices: self
                .simplices
                .iter()
                .map(|s| Simplex::from_sorted(s.vertices().iter().map(|v| map[v]).collect()))
                .collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return true;
        };
        let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in self.simplices_of_dim(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adjacency.entry(a).or_default().push(b);
            adjacency.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in adjacency.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }
}

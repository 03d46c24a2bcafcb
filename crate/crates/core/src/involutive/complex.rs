use std::collections::HashSet;

use crate::equivariant::MAX_DEGREE;
use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;
use crate::graded::Generator;

/// Power of `U` carried by a nonzero entry `x -> U^k y` of a map of degree
/// `shift`: `deg y - 2k = deg x + shift`. `None` when no such `k >= 0` exists.
pub fn forced_upower(from: i64, to: i64, shift: i64) -> Option<u32> {
    let gap = to - from - shift;
    (gap >= 0 && gap % 2 == 0).then_some((gap / 2) as u32)
}

/// A nonzero entry `from -> U^upower to` of an `F[U]`-linear map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UEntry {
    pub from: usize,
    pub to: usize,
    pub upower: u32,
}

/// Builds the matrix of a homogeneous map of degree `shift` from entries,
/// checking each stated `U`-power against the degrees. Repeated entries add.
pub fn matrix_from_entries(
    generators: &[Generator],
    entries: &[UEntry],
    shift: i64,
    name: &str,
) -> Result<F2Matrix> {
    let n = generators.len();
    let mut m = F2Matrix::zeros(n, n);
    for e in entries {
        if e.from >= n || e.to >= n {
            return Err(Error::input(format!(
                "{name} entry refers to a missing generator"
            )));
        }
        let (a, b) = (&generators[e.from], &generators[e.to]);
        if forced_upower(a.degree, b.degree, shift) != Some(e.upower) {
            return Err(Error::model(format!(
                "{name} entry {} -> U^{} {} is not homogeneous of degree {shift}",
                a.label, e.upower, b.label
            )));
        }
        m.flip(e.to, e.from);
    }
    Ok(m)
}

fn entries_of(generators: &[Generator], m: &F2Matrix, shift: i64) -> Vec<UEntry> {
    let mut out: Vec<UEntry> = m
        .entries()
        .map(|(to, from)| UEntry {
            from,
            to,
            upower: forced_upower(generators[from].degree, generators[to].degree, shift)
                .expect("validated homogeneous"),
        })
        .collect();
    out.sort();
    out
}

fn check_homogeneous(generators: &[Generator], m: &F2Matrix, shift: i64, name: &str) -> Result<()> {
    let n = generators.len();
    if m.rows() != n || m.cols() != n {
        return Err(Error::input(format!("{name} must be {n}x{n}")));
    }
    for (to, from) in m.entries() {
        if forced_upower(generators[from].degree, generators[to].degree, shift).is_none() {
            return Err(Error::model(format!(
                "{name} entry {} -> {} has no U-power of degree {shift}",
                generators[from].label, generators[to].label
            )));
        }
    }
    Ok(())
}

/// Free, finitely generated complex over `F[U]` (`deg U = -2`). The matrix
/// stores which entries are nonzero; the `U`-power of each is forced by the
/// degrees, so composition of homogeneous maps is plain GF(2) matrix product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UComplex {
    generators: Vec<Generator>,
    differential: F2Matrix,
}

impl UComplex {
    pub fn new(generators: Vec<Generator>, differential: F2Matrix) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.degree.abs() > MAX_DEGREE {
                return Err(Error::input(format!("degree {} is out of range", g.degree)));
            }
            if !seen.insert(g.label.as_str()) {
                return Err(Error::input(format!(
                    "duplicate generator label {:?}",
                    g.label
                )));
            }
        }
        check_homogeneous(&generators, &differential, -1, "differential")?;
        if !differential.mul(&differential).is_zero() {
            return Err(Error::model("differential does not square to zero"));
        }
        Ok(UComplex {
            generators,
            differential,
        })
    }

    pub fn from_entries(generators: Vec<Generator>, entries: &[UEntry]) -> Result<Self> {
        let d = matrix_from_entries(&generators, entries, -1, "differential")?;
        UComplex::new(generators, d)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn differential(&self) -> &F2Matrix {
        &self.differential
    }

    pub fn entries(&self) -> Vec<UEntry> {
        entries_of(&self.generators, &self.differential, -1)
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.generators.iter().map(|g| g.degree).min()?;
        Some((lo, self.generators.iter().map(|g| g.degree).max()?))
    }

    /// `Hom_{F[U]}(C, F[U])` with degrees negated and the transpose differential.
    pub fn dual(&self) -> UComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator {
                label: g.label.clone(),
                degree: -g.degree,
            })
            .collect();
        UComplex::new(generators, self.differential.transpose())
            .expect("the dual of a valid complex is valid")
    }

    /// Degree-zero `F[U]`-map on this complex's generators.
    pub fn iota(&self, matrix: F2Matrix) -> Result<IotaMap> {
        check_homogeneous(&self.generators, &matrix, 0, "iota")?;
        Ok(IotaMap { matrix })
    }

    pub fn iota_from_entries(&self, entries: &[UEntry]) -> Result<IotaMap> {
        self.iota(matrix_from_entries(&self.generators, entries, 0, "iota")?)
    }

    pub fn identity(&self) -> IotaMap {
        IotaMap {
            matrix: F2Matrix::identity(self.len()),
        }
    }
}

/// Degree-preserving `F[U]`-linear map on a [`UComplex`] (homogeneity is
/// checked on construction through [`UComplex::iota`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IotaMap {
    matrix: F2Matrix,
}

impl IotaMap {
    pub fn matrix(&self) -> &F2Matrix {
        &self.matrix
    }

    pub fn entries(&self, c: &UComplex) -> Vec<UEntry> {
        entries_of(c.generators(), &self.matrix, 0)
    }

    /// The transpose, acting on [`UComplex::dual`].
    pub fn dual(&self) -> IotaMap {
        IotaMap {
            matrix: self.matrix.transpose(),
        }
    }
}

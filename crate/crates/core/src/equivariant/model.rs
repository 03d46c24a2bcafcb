use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vec};
use crate::graded::Generator;

/// Degrees (and tower exponents) are confined to `[-MAX_DEGREE, MAX_DEGREE]`.
pub const MAX_DEGREE: i64 = 1 << 20;

/// Materialized windows may span at most this many degrees.
pub const MAX_WINDOW: i64 = 1 << 16;

/// `q^a v^b g` in a Pin(2) tower triple (`a ∈ {0,1,2}`), or `U^b g` in an
/// S¹ tower (`a = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TowerElement {
    pub a: u8,
    pub b: i64,
}

/// Tower slots sit at `n + a + step * b` for `a < slots`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub slots: u8,
    pub step: i64,
}

impl Shape {
    pub fn degree(self, n: i64, e: TowerElement) -> i64 {
        n + i64::from(e.a) + self.step * e.b
    }

    pub fn element_at(self, n: i64, d: i64) -> Option<TowerElement> {
        let offset = d - n;
        if offset < 0 {
            return None;
        }
        let a = offset % self.step;
        (a < i64::from(self.slots)).then(|| TowerElement {
            a: a as u8,
            b: offset / self.step,
        })
    }
}

/// An operator of the ring acting on a model: a matrix on the finite part and
/// a rule on tower elements (`None` is zero).
#[derive(Clone, Debug)]
pub(crate) struct Operator {
    pub name: &'static str,
    pub shift: i64,
    pub finite: F2Matrix,
    pub tower: fn(TowerElement) -> Option<TowerElement>,
}

/// Finite part plus (optionally) one free tower generator, shared by the Pin(2)
/// and S¹ models. Matrix convention: `m[i][j]` is the coefficient of
/// generator `i` in the image of generator `j`.
#[derive(Clone, Debug)]
pub(crate) struct TowerComplex {
    pub shape: Shape,
    pub reducible: Option<i64>,
    pub generators: Vec<Generator>,
    pub d_fin: F2Matrix,
    /// `to_tower[j]` is set when `D(x_j)` has the tower element one degree
    /// below `x_j` as a summand.
    pub to_tower: F2Vec,
    pub ops: Vec<Operator>,
}

fn check_degree(what: &str, d: i64) -> Result<()> {
    if d.abs() > MAX_DEGREE {
        Err(Error::input(format!(
            "{what} {d} is outside [-{MAX_DEGREE}, {MAX_DEGREE}]"
        )))
    } else {
        Ok(())
    }
}

impl TowerComplex {
    pub fn new(
        shape: Shape,
        reducible: Option<i64>,
        generators: Vec<Generator>,
        d_fin: F2Matrix,
        d_to_tower: &[(usize, TowerElement)],
        ops: Vec<Operator>,
    ) -> Result<Self> {
        let n = generators.len();
        if let Some(r) = reducible {
            check_degree("reducible degree", r)?;
        }
        let mut seen = HashSet::new();
        for g in &generators {
            check_degree("generator degree", g.degree)?;
            if !seen.insert(g.label.as_str()) {
                return Err(Error::input(format!(
                    "duplicate generator label {:?}",
                    g.label
                )));
            }
        }
        let deg = |i: usize| generators[i].degree;
        let check_matrix = |name: &str, m: &F2Matrix, shift: i64| -> Result<()> {
            if m.rows() != n || m.cols() != n {
                return Err(Error::input(format!(
                    "{name} must be {n}x{n}, got {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            for (i, j) in m.entries() {
                if deg(i) != deg(j) + shift {
                    return Err(Error::model(format!(
                        "{name} is not homogeneous of degree {shift}: {} -> {}",
                        generators[j].label, generators[i].label
                    )));
                }
            }
            Ok(())
        };
        check_matrix("d_fin", &d_fin, -1)?;
        for op in &ops {
            check_matrix(op.name, &op.finite, op.shift)?;
        }
        let mut to_tower = F2Vec::zeros(n);
        for &(j, e) in d_to_tower {
            if j >= n {
                return Err(Error::input(format!(
                    "tower entry refers to generator {j} of {n}"
                )));
            }
            let Some(r) = reducible else {
                return Err(Error::input(
                    "differential into the tower, but the model has no tower",
                ));
            };
            if e.a >= shape.slots || e.b < 0 || e.b > MAX_DEGREE {
                return Err(Error::input(format!(
                    "tower element (a={}, b={}) does not exist",
                    e.a, e.b
                )));
            }
            if shape.degree(r, e) != deg(j) - 1 {
                return Err(Error::model(format!(
                    "differential from {} (degree {}) to a tower element of degree {} is not of degree -1",
                    generators[j].label,
                    deg(j),
                    shape.degree(r, e)
                )));
            }
            to_tower.flip(j);
        }
        let model = TowerComplex {
            shape,
            reducible,
            generators,
            d_fin,
            to_tower,
            ops,
        };
        if !model.d_fin.mul(&model.d_fin).is_zero() || !model.tower_part_of(&model.d_fin).is_zero()
        {
            return Err(Error::model("D^2 != 0"));
        }
        Ok(model)
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    /// For each column `j` of `m`, the tower coefficient of `D(m x_j)`.
    fn tower_part_of(&self, m: &F2Matrix) -> F2Vec {
        let bits: Vec<bool> = (0..m.cols())
            .map(|j| m.column(j).dot(&self.to_tower))
            .collect();
        F2Vec::from_bits(&bits)
    }

    pub fn tower_target(&self, j: usize) -> Option<TowerElement> {
        if !self.to_tower.get(j) {
            return None;
        }
        let r = self.reducible?;
        self.shape.element_at(r, self.generators[j].degree - 1)
    }

    pub fn d_to_tower(&self) -> Vec<(usize, TowerElement)> {
        (0..self.len())
            .filter_map(|j| self.tower_target(j).map(|e| (j, e)))
            .collect()
    }

    /// `D op = op D` for every operator, as identities of matrices and tower
    /// coefficients (no window needed).
    pub fn check_module(&self) -> Result<()> {
        for op in &self.ops {
            if self.d_fin.mul(&op.finite) != op.finite.mul(&self.d_fin) {
                return Err(Error::model(format!(
                    "D does not commute with {} on the finite part",
                    op.name
                )));
            }
            let lhs = self.tower_part_of(&op.finite);
            for j in 0..self.len() {
                let rhs = self.tower_target(j).and_then(op.tower).is_some();
                if lhs.get(j) != rhs {
                    return Err(Error::model(format!(
                        "D does not commute with {} at generator {}",
                        op.name, self.generators[j].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Smallest and largest degree among the tower generator and finite part.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let degrees = self
            .generators
            .iter()
            .map(|g| g.degree)
            .chain(self.reducible);
        let lo = degrees.clone().min()?;
        Some((lo, degrees.max()?))
    }

    pub fn generators_by_degree(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            out.entry(g.degree).or_default().push(i);
        }
        out
    }
}

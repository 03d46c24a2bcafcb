use super::model::{TowerComplex, TowerElement, MAX_WINDOW};
use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;
use crate::graded::{GradedComplex, GradedMap, Window};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BasisElement {
    Finite(usize),
    Tower(TowerElement),
}

/// A model truncated to a window: the chain complex and one graded map per
/// ring operator, in the model's operator order.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub window: Window,
    pub complex: GradedComplex,
    pub ops: Vec<GradedMap>,
    basis: Vec<Vec<BasisElement>>,
}

impl Materialized {
    pub fn basis(&self, d: i64) -> &[BasisElement] {
        if self.complex.contains_degree(d) {
            &self.basis[(d - self.window.lo) as usize]
        } else {
            &[]
        }
    }

    /// Highest degree at which tower detection starts.
    pub fn detection_top(&self, step: i64) -> i64 {
        self.window.hi - step * i64::from(self.window.margin)
    }
}

impl TowerComplex {
    pub fn default_window(&self, margin: u32) -> Window {
        let step = self.shape.step;
        let (lo, hi) = self.degree_range().unwrap_or((0, 0));
        Window {
            lo: lo - step,
            hi: hi + step * (i64::from(margin) + 2),
            margin,
        }
    }

    pub fn check_window(&self, w: &Window) -> Result<()> {
        let need = self.default_window(w.margin);
        if w.margin < 2 {
            return Err(Error::input(format!(
                "margin must be at least 2, got {}",
                w.margin
            )));
        }
        if w.lo > need.lo || w.hi < need.hi {
            return Err(Error::input(format!(
                "window [{}, {}] too small: need lo <= {} and hi >= {} for margin {}",
                w.lo, w.hi, need.lo, need.hi, w.margin
            )));
        }
        if w.hi - w.lo >= MAX_WINDOW {
            return Err(Error::input(format!(
                "window spans more than {MAX_WINDOW} degrees"
            )));
        }
        Ok(())
    }

    pub fn materialize(&self, w: &Window) -> Result<Materialized> {
        self.check_window(w)?;
        let by_degree = self.generators_by_degree();
        let basis: Vec<Vec<BasisElement>> = (w.lo..=w.hi)
            .map(|d| {
                let mut b: Vec<BasisElement> = by_degree
                    .get(&d)
                    .into_iter()
                    .flatten()
                    .map(|&i| BasisElement::Finite(i))
                    .collect();
                if let Some(e) = self.reducible.and_then(|r| self.shape.element_at(r, d)) {
                    b.push(BasisElement::Tower(e));
                }
                b
            })
            .collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let at = |d: i64| -> &[BasisElement] {
            if d < w.lo || d > w.hi {
                &[]
            } else {
                &basis[(d - w.lo) as usize]
            }
        };
        let position = |d: i64, x: BasisElement| at(d).iter().position(|&y| y == x);
        let complex = GradedComplex::from_fn(w.lo, dims, |d| {
            let mut m = F2Matrix::zeros(at(d - 1).len(), at(d).len());
            for (col, &x) in at(d).iter().enumerate() {
                let BasisElement::Finite(j) = x else { continue };
                for i in self.d_fin.column(j).ones() {
                    m.flip(
                        position(d - 1, BasisElement::Finite(i)).expect("homogeneous"),
                        col,
                    );
                }
                if let Some(e) = self.tower_target(j) {
                    m.flip(
                        position(d - 1, BasisElement::Tower(e)).expect("tower in window"),
                        col,
                    );
                }
            }
            m
        });
        let ops = self
            .ops
            .iter()
            .map(|op| {
                GradedMap::from_fn(&complex, &complex, op.shift, |d| {
                    let t = d + op.shift;
                    let mut m = F2Matrix::zeros(at(t).len(), at(d).len());
                    for (col, &x) in at(d).iter().enumerate() {
                        match x {
                            BasisElement::Finite(j) => {
                                for i in op.finite.column(j).ones() {
                                    m.flip(
                                        position(t, BasisElement::Finite(i)).expect("homogeneous"),
                                        col,
                                    );
                                }
                            }
                            BasisElement::Tower(e) => {
                                if let Some(img) = (op.tower)(e) {
                                    if let Some(row) = position(t, BasisElement::Tower(img)) {
                                        m.flip(row, col);
                                    }
                                }
                            }
                        }
                    }
                    m
                })
            })
            .collect();
        if !complex.squares_to_zero() {
            return Err(Error::internal(
                "materialized differential does not square to zero",
            ));
        }
        Ok(Materialized {
            window: *w,
            complex,
            ops,
            basis,
        })
    }
}

use super::complex::{forced_upower, UComplex};
use crate::equivariant::MAX_WINDOW;
use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;
use crate::graded::{stable_ranks, Generator, GradedComplex, GradedMap, Window};

/// `CF^+ = C ⊗ F[U, U^-1]/U F[U]` on a window: basis `U^-k x` (`k >= 0`) in
/// degree `deg x + 2k`, with the differential, `U`, and any extra maps.
#[derive(Clone, Debug)]
pub struct PlusWindow {
    pub window: Window,
    pub complex: GradedComplex,
    pub u: GradedMap,
    /// `basis[d - lo]` lists `(generator, k)`.
    basis: Vec<Vec<(usize, i64)>>,
}

impl PlusWindow {
    pub fn basis(&self, d: i64) -> &[(usize, i64)] {
        basis_at(&self.basis, self.window.lo, d)
    }

    /// `U^-k x -> sum U^(m-k) y` over entries `x -> U^m y` of `m`, keeping
    /// terms with `k >= m`.
    pub fn lift(&self, generators: &[Generator], m: &F2Matrix, shift: i64) -> GradedMap {
        GradedMap::from_fn(&self.complex, &self.complex, shift, |d| {
            lift_matrix(&self.basis, self.window.lo, generators, m, shift, d)
        })
    }

    /// Highest degree at which tower detection starts.
    pub fn detection_top(&self) -> i64 {
        self.window.hi - 2 * i64::from(self.window.margin)
    }
}

/// `[min, max + 2 (margin + 2)]`.
pub fn default_plus_window(c: &UComplex, margin: u32) -> Window {
    let (lo, hi) = c.degree_range().unwrap_or((0, 0));
    Window {
        lo,
        hi: hi + 2 * (i64::from(margin) + 2),
        margin,
    }
}

pub fn plus_window(c: &UComplex, w: &Window) -> Result<PlusWindow> {
    if w.margin < 2 {
        return Err(Error::input(format!(
            "margin must be at least 2, got {}",
            w.margin
        )));
    }
    if let Some((lo, hi)) = c.degree_range() {
        let need = hi + 2 * (i64::from(w.margin) + 1);
        if w.lo > lo || w.hi < need {
            return Err(Error::input(format!(
                "window [{}, {}] too small: need lo <= {lo} and hi >= {need}",
                w.lo, w.hi
            )));
        }
    }
    if w.hi - w.lo >= MAX_WINDOW {
        return Err(Error::input(format!(
            "window spans more than {MAX_WINDOW} degrees"
        )));
    }
    let basis: Vec<Vec<(usize, i64)>> = (w.lo..=w.hi)
        .map(|d| {
            c.generators()
                .iter()
                .enumerate()
                .filter(|(_, g)| d >= g.degree && (d - g.degree) % 2 == 0)
                .map(|(i, g)| (i, (d - g.degree) / 2))
                .collect()
        })
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let complex = GradedComplex::from_fn(w.lo, dims, |d| {
        lift_matrix(&basis, w.lo, c.generators(), c.differential(), -1, d)
    });
    if !complex.squares_to_zero() {
        return Err(Error::internal("plus differential does not square to zero"));
    }
    let u = GradedMap::from_fn(&complex, &complex, -2, |d| {
        let (from, to) = (basis_at(&basis, w.lo, d), basis_at(&basis, w.lo, d - 2));
        let mut out = F2Matrix::zeros(to.len(), from.len());
        for (col, &(x, k)) in from.iter().enumerate() {
            if k >= 1 {
                let row = to
                    .iter()
                    .position(|&e| e == (x, k - 1))
                    .expect("U^-(k-1) x is in the window");
                out.flip(row, col);
            }
        }
        out
    });
    Ok(PlusWindow {
        window: *w,
        complex,
        u,
        basis,
    })
}

fn basis_at(basis: &[Vec<(usize, i64)>], lo: i64, d: i64) -> &[(usize, i64)] {
    usize::try_from(d - lo)
        .ok()
        .and_then(|i| basis.get(i))
        .map_or(&[], Vec::as_slice)
}

fn lift_matrix(
    basis: &[Vec<(usize, i64)>],
    lo: i64,
    generators: &[Generator],
    m: &F2Matrix,
    shift: i64,
    d: i64,
) -> F2Matrix {
    let (from, to) = (basis_at(basis, lo, d), basis_at(basis, lo, d + shift));
    let mut out = F2Matrix::zeros(to.len(), from.len());
    for (col, &(x, k)) in from.iter().enumerate() {
        for y in m.column(x).ones() {
            let power = i64::from(
                forced_upower(generators[x].degree, generators[y].degree, shift)
                    .expect("homogeneous map"),
            );
            if k >= power {
                if let Some(row) = to.iter().position(|&e| e == (y, k - power)) {
                    out.flip(row, col);
                }
            }
        }
    }
    out
}

/// Stable `U`-ranks over the range above all generators, and the bottom of
/// the towers per parity of degree.
pub(crate) struct TowerScan {
    pub bottoms: [Option<i64>; 2],
    /// Number of towers: stable rank summed over two consecutive degrees.
    pub count: usize,
    pub consistent: bool,
}

pub(crate) fn scan_towers(pw: &PlusWindow, start: i64) -> TowerScan {
    let c = &pw.complex;
    let ranks = stable_ranks(c, &pw.u);
    let rank = |d: i64| ranks[(d - c.lo()) as usize];
    let top = pw.detection_top();
    let stable: Vec<usize> = (start..top).map(|d| rank(d) + rank(d + 1)).collect();
    let count = stable.first().copied().unwrap_or(0);
    let consistent = stable.iter().all(|&s| s == count);
    let mut bottoms = [None, None];
    for d in c.lo()..=top {
        let p = d.rem_euclid(2) as usize;
        if bottoms[p].is_none() && rank(d) > 0 {
            bottoms[p] = Some(d);
        }
    }
    TowerScan {
        bottoms,
        count,
        consistent,
    }
}

fn single_tower_bottom(c: &UComplex, w: &Window) -> Result<i64> {
    let pw = plus_window(c, w)?;
    let start = c.degree_range().map_or(0, |(_, hi)| hi) + 1;
    let scan = scan_towers(&pw, start);
    if scan.count != 1 || !scan.consistent {
        return Err(Error::model(format!(
            "plus homology must have exactly one U-tower, found {}",
            scan.count
        )));
    }
    scan.bottoms
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::model("no U-tower below the detection range"))
}

/// Bottom of the unique `U`-tower in `HF^+`, checked against a wider window.
pub fn d_invariant_in(c: &UComplex, w: &Window) -> Result<i64> {
    let d = single_tower_bottom(c, w)?;
    let wider = Window {
        lo: w.lo,
        hi: w.hi + 4,
        margin: w.margin + 2,
    };
    let again = single_tower_bottom(c, &wider)?;
    if d != again {
        return Err(Error::internal(format!(
            "d depends on the window: {d} vs {again}"
        )));
    }
    Ok(d)
}

pub fn d_invariant(c: &UComplex) -> Result<i64> {
    d_invariant_in(c, &default_plus_window(c, crate::graded::DEFAULT_MARGIN))
}

use super::complex::{forced_upower, IotaMap, UComplex};
use super::plus::{d_invariant_in, default_plus_window, plus_window, scan_towers, PlusWindow};
use crate::error::{Error, Result};
use crate::f2linalg::{solve_f2, F2Matrix, F2Vec};
use crate::graded::{rank_on, stable_images, Generator, Window, DEFAULT_MARGIN};

/// Largest complex on which the homotopy `ι² + id = ∂H + H∂` is solved.
pub const MAX_IOTA_GENERATORS: usize = 64;

/// A degree `+1` map `H` with `∂H + H∂ = ι² + id`, if one exists.
pub fn iota_homotopy(c: &UComplex, iota: &IotaMap) -> Result<Option<F2Matrix>> {
    let n = c.len();
    if n > MAX_IOTA_GENERATORS {
        return Err(Error::input(format!(
            "homotopy search supports at most {MAX_IOTA_GENERATORS} generators, got {n}"
        )));
    }
    let deg = |i: usize| c.generators()[i].degree;
    let unknowns: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (y, x)))
        .filter(|&(y, x)| forced_upower(deg(x), deg(y), 1).is_some())
        .collect();
    let equations: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |z| (z, x)))
        .filter(|&(z, x)| forced_upower(deg(x), deg(z), 0).is_some())
        .collect();
    let row_of = |z: usize, x: usize| {
        equations
            .binary_search_by(|&(ez, ex)| (ex, ez).cmp(&(x, z)))
            .ok()
    };
    let d = c.differential();
    let mut system = F2Matrix::zeros(equations.len(), unknowns.len());
    for (col, &(y, x)) in unknowns.iter().enumerate() {
        // H[y][x] enters (∂H)[z][x] through ∂[z][y] and (H∂)[y][w] through ∂[x][w].
        for z in d.column(y).ones() {
            system.flip(row_of(z, x).expect("homogeneous"), col);
        }
        for w in d.row(x).ones() {
            system.flip(row_of(y, w).expect("homogeneous"), col);
        }
    }
    let target = iota.matrix().mul(iota.matrix()).add(&F2Matrix::identity(n));
    let rhs = F2Vec::from_bits(
        &equations
            .iter()
            .map(|&(z, x)| target.get(z, x))
            .collect::<Vec<_>>(),
    );
    if target.entries().any(|(z, x)| row_of(z, x).is_none()) {
        return Err(Error::internal("iota squared is not homogeneous"));
    }
    Ok(solve_f2(&system, &rhs)?.map(|sol| {
        let mut h = F2Matrix::zeros(n, n);
        for i in sol.ones() {
            let (y, x) = unknowns[i];
            h.set(y, x, true);
        }
        h
    }))
}

/// `ι∂ = ∂ι`, and `ι² + id` is null-homotopic.
pub fn validate_iota(c: &UComplex, iota: &IotaMap) -> Result<()> {
    let (d, i) = (c.differential(), iota.matrix());
    if i.rows() != c.len() || i.cols() != c.len() {
        return Err(Error::input("iota has the wrong size"));
    }
    if d.mul(i) != i.mul(d) {
        return Err(Error::input("iota is not a chain map"));
    }
    match iota_homotopy(c, iota)? {
        Some(_) => Ok(()),
        None => Err(Error::input(
            "iota squared is not chain homotopic to the identity",
        )),
    }
}

/// Mapping cone of `Q(1 + ι)`: a source copy of every generator in degree
/// `deg + 1` and a `Q`-copy in degree `deg`, with differential
/// `[[∂, 0], [1 + ι, ∂]]`. `q` sends each source copy to its `Q`-copy.
#[derive(Clone, Debug)]
pub struct ConeComplex {
    pub base: UComplex,
    pub iota: IotaMap,
    pub cone: UComplex,
    pub q: F2Matrix,
}

pub fn cone_iota(c: &UComplex, iota: &IotaMap) -> Result<ConeComplex> {
    validate_iota(c, iota)?;
    let n = c.len();
    let mut generators: Vec<Generator> = c
        .generators()
        .iter()
        .map(|g| Generator {
            label: g.label.clone(),
            degree: g.degree + 1,
        })
        .collect();
    generators.extend(c.generators().iter().map(|g| Generator {
        label: format!("Q{}", g.label),
        degree: g.degree,
    }));
    let d = c.differential();
    let one_plus = iota.matrix().add(&F2Matrix::identity(n));
    let diff = F2Matrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => d.get(i, j),
        (false, false) => d.get(i - n, j - n),
        (false, true) => one_plus.get(i - n, j),
        (true, false) => false,
    });
    let cone = UComplex::new(generators, diff)
        .map_err(|e| Error::internal(format!("cone is invalid: {e}")))?;
    let q = F2Matrix::from_fn(2 * n, 2 * n, |i, j| j < n && i == j + n);
    if !q.mul(&q).is_zero()
        || !cone
            .differential()
            .mul(&q)
            .add(&q.mul(cone.differential()))
            .is_zero()
    {
        return Err(Error::internal(
            "Q is not a square-zero chain map on the cone",
        ));
    }
    Ok(ConeComplex {
        base: c.clone(),
        iota: iota.clone(),
        cone,
        q,
    })
}

impl ConeComplex {
    pub fn default_window(&self, margin: u32) -> Window {
        default_plus_window(&self.cone, margin)
    }

    pub fn plus_window(&self, w: &Window) -> Result<PlusWindow> {
        plus_window(&self.cone, w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvolutiveReport {
    pub d: i64,
    pub d_bar: i64,
    pub d_under: i64,
    /// `Q` maps the stable `d̲`-tower onto the `d̄`-tower.
    pub q_consistent: bool,
}

impl InvolutiveReport {
    pub fn ordering_holds(&self) -> bool {
        self.d_under <= self.d && self.d <= self.d_bar
    }

    pub fn congruent(&self) -> bool {
        (self.d - self.d_bar).rem_euclid(2) == 0 && (self.d - self.d_under).rem_euclid(2) == 0
    }
}

fn cone_bottoms(k: &ConeComplex, w: &Window, d: i64) -> Result<(i64, i64, bool)> {
    let pw = k.plus_window(w)?;
    let start = k.cone.degree_range().map_or(0, |(_, hi)| hi) + 1;
    let scan = scan_towers(&pw, start);
    let [Some(even), Some(odd)] = scan.bottoms else {
        return Err(Error::model("HFI+ does not have U-towers in both parities"));
    };
    if scan.count != 2 || !scan.consistent {
        return Err(Error::model(format!(
            "HFI+ must have exactly two U-towers, found {}",
            scan.count
        )));
    }
    let (bar, under) = if d.rem_euclid(2) == 0 {
        (even, odd)
    } else {
        (odd, even)
    };
    let q = pw.lift(k.cone.generators(), &k.q, -1);
    let images = stable_images(&pw.complex, &pw.u);
    let c = &pw.complex;
    let consistent = (start..=pw.detection_top())
        .filter(|t| (t - under).rem_euclid(2) == 0)
        .all(|t| rank_on(c, &q, t, &images[(t - c.lo()) as usize]) == 1);
    Ok((bar, under - 1, consistent))
}

/// `d̄` is the bottom of the cone tower in the parity of `d` (the stable image
/// of `Q`), and `d̲ + 1` is the bottom of the other.
pub fn involutive_correction_terms(k: &ConeComplex) -> Result<InvolutiveReport> {
    involutive_correction_terms_in(k, &k.default_window(DEFAULT_MARGIN))
}

pub fn involutive_correction_terms_in(k: &ConeComplex, w: &Window) -> Result<InvolutiveReport> {
    let d = d_invariant_in(&k.base, &default_plus_window(&k.base, w.margin))?;
    let (d_bar, d_under, q_consistent) = cone_bottoms(k, w, d)?;
    let wider = Window {
        lo: w.lo,
        hi: w.hi + 4,
        margin: w.margin + 2,
    };
    let (bar2, under2, _) = cone_bottoms(k, &wider, d)?;
    if (bar2, under2) != (d_bar, d_under) {
        return Err(Error::internal(format!(
            "involutive correction terms depend on the window: ({d_bar}, {d_under}) vs ({bar2}, {under2})"
        )));
    }
    Ok(InvolutiveReport {
        d,
        d_bar,
        d_under,
        q_consistent,
    })
}

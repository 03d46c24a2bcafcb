use num_rational::Ratio;

use super::model::{Operator, Shape, TowerComplex, TowerElement};
use super::window::Materialized;
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vec};
use crate::graded::{
    rank_on, stable_images, stable_ranks, survives_to_bottom, Generator, Subquotient, Window,
    DEFAULT_MARGIN,
};

const PIN: Shape = Shape { slots: 3, step: 4 };
const CIRCLE: Shape = Shape { slots: 1, step: 2 };

fn q_tower(e: TowerElement) -> Option<TowerElement> {
    (e.a > 0).then(|| TowerElement { a: e.a - 1, b: e.b })
}

fn lower_b(e: TowerElement) -> Option<TowerElement> {
    (e.b > 0).then(|| TowerElement { a: e.a, b: e.b - 1 })
}

/// Chain model of a Pin(2)-equivariant Floer complex: one free
/// `F[q,v]/(q^3)` tower generator `g` in degree `n` (towers with bottoms
/// `n, n+1, n+2`, zero internal differential) plus a finite part. `q` has
/// degree -1, `v` degree -4, and on the tower `q·q^a v^b g = q^{a-1} v^b g`,
/// `v·q^a v^b g = q^a v^{b-1} g` (zero when the exponent would go negative).
#[derive(Clone, Debug)]
pub struct PinModel {
    inner: TowerComplex,
}

impl PinModel {
    /// Validates shapes, degree homogeneity, `q^3 = 0`, `qv = vq` and `D^2 = 0`.
    /// Compatibility of `D` with `q` and `v` is checked separately by
    /// [`PinModel::check_module`].
    pub fn new(
        reducible_degree: Option<i64>,
        generators: Vec<Generator>,
        q: F2Matrix,
        v: F2Matrix,
        d_fin: F2Matrix,
        d_to_tower: &[(usize, TowerElement)],
    ) -> Result<Self> {
        let ops = vec![
            Operator {
                name: "q",
                shift: -1,
                finite: q,
                tower: q_tower,
            },
            Operator {
                name: "v",
                shift: -4,
                finite: v,
                tower: lower_b,
            },
        ];
        let inner = TowerComplex::new(PIN, reducible_degree, generators, d_fin, d_to_tower, ops)?;
        let (q, v) = (&inner.ops[0].finite, &inner.ops[1].finite);
        if !q.mul(q).mul(q).is_zero() {
            return Err(Error::model("q^3 != 0 on the finite part"));
        }
        if q.mul(v) != v.mul(q) {
            return Err(Error::model("q and v do not commute on the finite part"));
        }
        Ok(PinModel { inner })
    }

    /// The `S^0` model shifted to degree `n`: towers only.
    pub fn sphere(n: i64) -> Self {
        PinModel::new(
            Some(n),
            Vec::new(),
            F2Matrix::zeros(0, 0),
            F2Matrix::zeros(0, 0),
            F2Matrix::zeros(0, 0),
            &[],
        )
        .expect("the sphere model is valid")
    }

    pub fn reducible_degree(&self) -> Option<i64> {
        self.inner.reducible
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.generators
    }

    pub fn q(&self) -> &F2Matrix {
        &self.inner.ops[0].finite
    }

    pub fn v(&self) -> &F2Matrix {
        &self.inner.ops[1].finite
    }

    pub fn d_fin(&self) -> &F2Matrix {
        &self.inner.d_fin
    }

    /// Differential entries into the towers, one per generator at most.
    pub fn d_to_tower(&self) -> Vec<(usize, TowerElement)> {
        self.inner.d_to_tower()
    }

    /// `Dq = qD` and `Dv = vD`.
    pub fn check_module(&self) -> Result<()> {
        self.inner.check_module()
    }

    /// `[min - 4, max + 4 (margin + 2)]` over the tower generator and finite
    /// generator degrees.
    pub fn default_window(&self, margin: u32) -> Window {
        self.inner.default_window(margin)
    }

    /// Direct sum with another model's finite part (the other model must have
    /// no tower). Used to add acyclic or free summands.
    pub fn with_finite_summand(&self, other: &PinModel) -> Result<PinModel> {
        if other.reducible_degree().is_some() {
            return Err(Error::input("summand must be finite"));
        }
        let n = self.generators().len();
        let gens: Vec<Generator> = self
            .generators()
            .iter()
            .chain(other.generators())
            .cloned()
            .collect();
        let block = |a: &F2Matrix, b: &F2Matrix| {
            F2Matrix::from_fn(gens.len(), gens.len(), |i, j| match (i < n, j < n) {
                (true, true) => a.get(i, j),
                (false, false) => b.get(i - n, j - n),
                _ => false,
            })
        };
        PinModel::new(
            self.reducible_degree(),
            gens.clone(),
            block(self.q(), other.q()),
            block(self.v(), other.v()),
            block(self.d_fin(), other.d_fin()),
            &self.d_to_tower(),
        )
    }
}

impl PartialEq for PinModel {
    fn eq(&self, other: &Self) -> bool {
        self.reducible_degree() == other.reducible_degree()
            && self.generators() == other.generators()
            && self.q() == other.q()
            && self.v() == other.v()
            && self.d_fin() == other.d_fin()
            && self.d_to_tower() == other.d_to_tower()
    }
}

/// Chain model of an S¹-equivariant complex: one `F[U]` tower `U^b g` in
/// degree `n + 2b` (U of degree -2) plus a finite part.
#[derive(Clone, Debug)]
pub struct SOneModel {
    inner: TowerComplex,
}

impl SOneModel {
    pub fn new(
        reducible_degree: Option<i64>,
        generators: Vec<Generator>,
        u: F2Matrix,
        d_fin: F2Matrix,
        d_to_tower: &[(usize, i64)],
    ) -> Result<Self> {
        let ops = vec![Operator {
            name: "u",
            shift: -2,
            finite: u,
            tower: lower_b,
        }];
        let entries: Vec<(usize, TowerElement)> = d_to_tower
            .iter()
            .map(|&(j, b)| (j, TowerElement { a: 0, b }))
            .collect();
        let inner = TowerComplex::new(CIRCLE, reducible_degree, generators, d_fin, &entries, ops)?;
        Ok(SOneModel { inner })
    }

    pub fn sphere(n: i64) -> Self {
        SOneModel::new(
            Some(n),
            Vec::new(),
            F2Matrix::zeros(0, 0),
            F2Matrix::zeros(0, 0),
            &[],
        )
        .expect("the sphere model is valid")
    }

    pub fn reducible_degree(&self) -> Option<i64> {
        self.inner.reducible
    }

    pub fn generators(&self) -> &[Generator] {
        &self.inner.generators
    }

    pub fn u(&self) -> &F2Matrix {
        &self.inner.ops[0].finite
    }

    pub fn d_fin(&self) -> &F2Matrix {
        &self.inner.d_fin
    }

    pub fn d_to_tower(&self) -> Vec<(usize, i64)> {
        self.inner
            .d_to_tower()
            .into_iter()
            .map(|(j, e)| (j, e.b))
            .collect()
    }

    pub fn check_module(&self) -> Result<()> {
        self.inner.check_module()
    }

    /// `[min - 2, max + 2 (margin + 2)]`.
    pub fn default_window(&self, margin: u32) -> Window {
        self.inner.default_window(margin)
    }

    pub fn materialize(&self, w: &Window) -> Result<Materialized> {
        self.inner.materialize(w)
    }
}

impl PartialEq for SOneModel {
    fn eq(&self, other: &Self) -> bool {
        self.reducible_degree() == other.reducible_degree()
            && self.generators() == other.generators()
            && self.u() == other.u()
            && self.d_fin() == other.d_fin()
            && self.d_to_tower() == other.d_to_tower()
    }
}

/// Explicit chain complex with `q` (`ops[0]`) and `v` (`ops[1]`) on a window.
pub fn materialize(m: &PinModel, w: &Window) -> Result<Materialized> {
    m.inner.materialize(w)
}

/// Homology of a materialized window with a basis per degree and the induced
/// `q`, `v` actions in those coordinates (present only when the operator is a
/// chain map).
#[derive(Clone, Debug)]
pub struct BorelHomology {
    pub window: Window,
    pub reducible_degree: Option<i64>,
    pub materialized: Materialized,
    groups: Vec<Subquotient>,
    q: Option<Vec<F2Matrix>>,
    v: Option<Vec<F2Matrix>>,
}

impl BorelHomology {
    pub fn dim(&self, d: i64) -> usize {
        self.group(d).map_or(0, Subquotient::dim)
    }

    pub fn group(&self, d: i64) -> Option<&Subquotient> {
        let w = self.window;
        (w.lo..=w.hi)
            .contains(&d)
            .then(|| &self.groups[(d - w.lo) as usize])
    }

    /// `H_d -> H_{d-1}` in the chosen bases.
    pub fn q(&self, d: i64) -> Option<&F2Matrix> {
        self.q
            .as_ref()
            .and_then(|q| q.get((d - self.window.lo) as usize))
    }

    /// `H_d -> H_{d-4}` in the chosen bases.
    pub fn v(&self, d: i64) -> Option<&F2Matrix> {
        self.v
            .as_ref()
            .and_then(|v| v.get((d - self.window.lo) as usize))
    }
}

fn induced(mat: &Materialized, groups: &[Subquotient], op: usize) -> Option<Vec<F2Matrix>> {
    let map = &mat.ops[op];
    if !map.is_chain_map(&mat.complex, &mat.complex) {
        return None;
    }
    let lo = mat.window.lo;
    let out = (lo..=mat.window.hi)
        .map(|d| {
            let source = &groups[(d - lo) as usize];
            let t = d + map.shift();
            let Some(target) = mat
                .complex
                .contains_degree(t)
                .then(|| &groups[(t - lo) as usize])
            else {
                return F2Matrix::zeros(0, source.dim());
            };
            let m = map.at(d).expect("degree in window");
            let cols: Vec<F2Vec> = source
                .representatives()
                .iter()
                .map(|z| {
                    target
                        .coordinates(&m.mul_vec(z))
                        .expect("chain maps send cycles to cycles")
                })
                .collect();
            F2Matrix::from_columns(target.dim(), &cols)
        })
        .collect();
    Some(out)
}

pub fn borel_homology(m: &PinModel, w: &Window) -> Result<BorelHomology> {
    let mat = materialize(m, w)?;
    let groups: Vec<Subquotient> = (w.lo..=w.hi).map(|d| mat.complex.homology(d)).collect();
    let q = induced(&mat, &groups, 0);
    let v = induced(&mat, &groups, 1);
    Ok(BorelHomology {
        window: *w,
        reducible_degree: m.reducible_degree(),
        materialized: mat,
        groups,
        q,
        v,
    })
}

/// Lowest degree, per tower slot, of a nonzero class in the image of the
/// periodic operator's largest power that fits in the window.
fn bottoms(mat: &Materialized, n: i64, slots: u8, step: i64, op: usize) -> Result<Vec<i64>> {
    let c = &mat.complex;
    let ranks = stable_ranks(c, &mat.ops[op]);
    let top = mat.detection_top(step);
    (0..i64::from(slots))
        .map(|r| {
            (c.lo()..=top)
                .filter(|d| (d - n - r).rem_euclid(step) == 0)
                .find(|&d| ranks[(d - c.lo()) as usize] > 0)
                .ok_or_else(|| {
                    Error::model(format!(
                        "no surviving tower in residue {r} below degree {top}; localization fails"
                    ))
                })
        })
        .collect()
}

/// `(A, B, C)`: bottoms of the three `v`-towers in homology.
pub fn tower_bottoms(h: &BorelHomology) -> Result<(i64, i64, i64)> {
    let n = h
        .reducible_degree
        .ok_or_else(|| Error::model("model has no reducible tower, so there are no v-towers"))?;
    let b = bottoms(&h.materialized, n, PIN.slots, PIN.step, 1)?;
    Ok((b[0], b[1], b[2]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AbcReport {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub mu: u8,
}

impl AbcReport {
    /// `α = A/2`, `β = (B-1)/2`, `γ = (C-2)/2`, `μ = α mod 2`.
    pub fn from_bottoms(a: i64, b: i64, c: i64) -> Result<Self> {
        if a.rem_euclid(2) != 0 || b.rem_euclid(2) != 1 || c.rem_euclid(2) != 0 {
            return Err(Error::model(format!(
                "tower bottoms ({a}, {b}, {c}) do not have parities (even, odd, even)"
            )));
        }
        let alpha = a / 2;
        Ok(AbcReport {
            a,
            b,
            c,
            alpha,
            beta: (b - 1) / 2,
            gamma: (c - 2) / 2,
            mu: alpha.rem_euclid(2) as u8,
        })
    }
}

fn bottoms_checked(m: &PinModel, w: &Window) -> Result<(i64, i64, i64)> {
    let first = tower_bottoms(&borel_homology(m, w)?)?;
    let wider = Window {
        lo: w.lo,
        hi: w.hi + 8,
        margin: w.margin + 2,
    };
    let second = tower_bottoms(&borel_homology(m, &wider)?)?;
    if first != second {
        return Err(Error::internal(format!(
            "tower bottoms depend on the window: {first:?} vs {second:?}"
        )));
    }
    Ok(first)
}

/// α, β, γ, μ in the model's default window (margin 2).
pub fn abc(m: &PinModel) -> Result<AbcReport> {
    abc_in(m, &m.default_window(DEFAULT_MARGIN))
}

/// As [`abc`] in an explicit window; the result is recomputed with a wider
/// window and must agree.
pub fn abc_in(m: &PinModel, w: &Window) -> Result<AbcReport> {
    m.check_module()?;
    let (a, b, c) = bottoms_checked(m, w)?;
    let r = AbcReport::from_bottoms(a, b, c)?;
    if !(r.alpha >= r.beta && r.beta >= r.gamma) {
        return Err(Error::internal(format!(
            "alpha >= beta >= gamma fails: ({}, {}, {})",
            r.alpha, r.beta, r.gamma
        )));
    }
    Ok(r)
}

/// `β mod 2`, after checking `α ≡ β ≡ γ (mod 2)`.
pub fn rokhlin_check(r: &AbcReport) -> Result<u8> {
    let parities = [r.alpha, r.beta, r.gamma].map(|x| x.rem_euclid(2));
    if parities[0] != parities[1] || parities[1] != parities[2] {
        return Err(Error::model(format!(
            "alpha, beta, gamma = ({}, {}, {}) are not congruent mod 2",
            r.alpha, r.beta, r.gamma
        )));
    }
    Ok(parities[1] as u8)
}

/// `(α, β, γ)` of the orientation reversal: `(-γ, -β, -α)`.
pub fn abc_of_reverse(m: &PinModel) -> Result<(i64, i64, i64)> {
    let r = abc(m)?;
    Ok((-r.gamma, -r.beta, -r.alpha))
}

/// Tops of the three downward-infinite `v`-towers in the homology of the dual
/// (degree-negated transpose) window complex.
pub fn coborel_tower_tops(m: &PinModel, w: &Window) -> Result<(i64, i64, i64)> {
    let n = m
        .reducible_degree()
        .ok_or_else(|| Error::model("model has no reducible tower, so there are no v-towers"))?;
    let mat = materialize(m, w)?;
    let dual = mat.complex.dual();
    let v = mat.ops[1].dual(&mat.complex, &mat.complex);
    let floor = dual.lo() + PIN.step * i64::from(w.margin);
    let tops: Vec<i64> = (0..3)
        .map(|r| {
            (floor..=dual.hi())
                .rev()
                .filter(|t| (t + n + r).rem_euclid(PIN.step) == 0)
                .find(|&t| survives_to_bottom(&dual, &v, t))
                .ok_or_else(|| Error::model(format!("no co-Borel tower in residue {r}")))
        })
        .collect::<Result<_>>()?;
    Ok((tops[0], tops[1], tops[2]))
}

/// Bottoms `(A', B', C')` of the reversed model read off co-Borel tops:
/// negate the grading and swap the first and third towers.
pub fn reverse_bottoms_from_tops(tops: (i64, i64, i64)) -> (i64, i64, i64) {
    (tops.2 + 2, tops.1 + 2, tops.0 + 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationReport {
    /// The stable range shows exactly `F[q, v, v^-1]/(q^3)` anchored at the
    /// reducible degree, with nonzero `q` between adjacent slots.
    pub pass: bool,
    /// Every stable rank vanishes.
    pub localizes_to_zero: bool,
    pub anchor: Option<i64>,
    /// `(degree, rank of the stable image)` over the stable range.
    pub stable_ranks: Vec<(i64, usize)>,
}

/// Degrees above the finite part where the image of `v^k` has stabilized,
/// compared against the periodic pattern `1, 1, 1, 0` starting at `n`.
pub fn localization_check(m: &PinModel, w: &Window) -> Result<LocalizationReport> {
    let mat = materialize(m, w)?;
    let c = &mat.complex;
    let images = stable_images(c, &mat.ops[1]);
    let ranks = stable_ranks(c, &mat.ops[1]);
    let start = m.inner.degree_range().map_or(0, |(_, hi)| hi) + 2;
    let end = mat.detection_top(PIN.step);
    let stable: Vec<(i64, usize)> = (start..=end)
        .map(|d| (d, ranks[(d - c.lo()) as usize]))
        .collect();
    let localizes_to_zero = stable.iter().all(|&(_, r)| r == 0);
    let pass = match m.reducible_degree() {
        None => false,
        Some(n) => stable.iter().all(|&(d, r)| {
            let slot = (d - n).rem_euclid(PIN.step);
            let expected = usize::from(slot < 3);
            let q_ok = slot == 0
                || slot == 3
                || rank_on(c, &mat.ops[0], d, &images[(d - c.lo()) as usize]) == 1;
            r == expected && q_ok
        }),
    };
    Ok(LocalizationReport {
        pass,
        localizes_to_zero,
        anchor: m.reducible_degree(),
        stable_ranks: stable,
    })
}

/// `δ = (bottom of the U-tower) / 2`.
pub fn delta_invariant(m: &SOneModel) -> Result<Ratio<i64>> {
    delta_invariant_in(m, &m.default_window(DEFAULT_MARGIN))
}

pub fn delta_invariant_in(m: &SOneModel, w: &Window) -> Result<Ratio<i64>> {
    m.check_module()?;
    let n = m
        .reducible_degree()
        .ok_or_else(|| Error::model("model has no reducible tower, so there is no U-tower"))?;
    let bottom = bottoms(&m.materialize(w)?, n, CIRCLE.slots, CIRCLE.step, 0)?[0];
    let wider = Window {
        lo: w.lo,
        hi: w.hi + 4,
        margin: w.margin + 2,
    };
    let again = bottoms(&m.materialize(&wider)?, n, CIRCLE.slots, CIRCLE.step, 0)?[0];
    if bottom != again {
        return Err(Error::internal(format!(
            "U-tower bottom depends on the window: {bottom} vs {again}"
        )));
    }
    Ok(Ratio::new(bottom, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivariant::MAX_WINDOW;
    use crate::f2linalg::rank_f2;
    use crate::samples::{random_pin_model, random_s1_model};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gens(degrees: &[(&str, i64)]) -> Vec<Generator> {
        degrees
            .iter()
            .map(|&(label, degree)| Generator {
                label: label.into(),
                degree,
            })
            .collect()
    }

    fn zero(n: usize) -> F2Matrix {
        F2Matrix::zeros(n, n)
    }

    /// `x` in degree 3 with `D x = q^2 g` over the `S^0` towers.
    fn corner_killed() -> PinModel {
        let t = TowerElement { a: 2, b: 0 };
        PinModel::new(
            Some(0),
            gens(&[("x", 3)]),
            zero(1),
            zero(1),
            zero(1),
            &[(0, t)],
        )
        .unwrap()
    }

    fn acyclic_pair(top: i64) -> PinModel {
        let d = F2Matrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        PinModel::new(
            None,
            gens(&[("y", top - 1), ("x", top)]),
            zero(2),
            zero(2),
            d,
            &[],
        )
        .unwrap()
    }

    fn window(lo: i64, hi: i64) -> Window {
        Window { lo, hi, margin: 2 }
    }

    #[test]
    fn sphere_materializes_to_the_periodic_pattern() {
        for n in [0, 2] {
            let h = borel_homology(&PinModel::sphere(n), &window(n - 4, n + 20)).unwrap();
            for d in n - 4..=n + 20 {
                let expected = usize::from(d >= n && (d - n).rem_euclid(4) < 3);
                assert_eq!(h.dim(d), expected, "degree {d}");
                assert_eq!(h.materialized.complex.dim(d), expected);
            }
            assert!(h.q(n + 2).is_some_and(|q| q.get(0, 0)));
            assert!(h.v(n + 4).is_some_and(|v| v.get(0, 0)));
        }
    }

    #[test]
    fn killing_the_q2_corner() {
        let m = corner_killed();
        let mat = materialize(&m, &window(-4, 20)).unwrap();
        assert!(mat.complex.squares_to_zero());
        let h = borel_homology(&m, &window(-4, 20)).unwrap();
        assert_eq!(h.dim(2), 0);
        assert_eq!(h.dim(3), 0);
        assert_eq!(h.dim(6), 1);
        assert_eq!(tower_bottoms(&h).unwrap(), (0, 1, 6));
        // Dq != qD here: q(q^2 g) = q g but x has no q-image.
        assert_eq!(m.check_module().unwrap_err().kind(), "model-invalid");
        assert_eq!(abc(&m).unwrap_err().kind(), "model-invalid");
    }

    #[test]
    fn homology_matches_rank_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let with_tower = rng.gen_bool(0.8);
            let m = random_pin_model(&mut rng, 6, with_tower).model;
            let w = m.default_window(2);
            let h = borel_homology(&m, &w).unwrap();
            let c = &h.materialized.complex;
            for d in w.lo..=w.hi {
                let expected =
                    c.dim(d) - rank_f2(&c.differential(d)) - rank_f2(&c.differential(d + 1));
                assert_eq!(h.dim(d), expected);
            }
        }
    }

    #[test]
    fn acyclic_summand_changes_nothing() {
        let base = PinModel::sphere(2);
        let m = base.with_finite_summand(&acyclic_pair(5)).unwrap();
        let w = window(-4, 30);
        let (h0, h1) = (
            borel_homology(&base, &w).unwrap(),
            borel_homology(&m, &w).unwrap(),
        );
        for d in w.lo..=w.hi {
            assert_eq!(h0.dim(d), h1.dim(d));
        }
        assert_eq!(abc(&m).unwrap(), abc(&base).unwrap());
        assert_eq!(coborel_tower_tops(&m, &w).unwrap(), (-2, -3, -4));
    }

    #[test]
    fn sphere_bottoms_and_invariants() {
        let h = borel_homology(&PinModel::sphere(0), &window(-8, 24)).unwrap();
        assert_eq!(tower_bottoms(&h).unwrap(), (0, 1, 2));
        let s3 = abc(&PinModel::sphere(0)).unwrap();
        assert_eq!((s3.alpha, s3.beta, s3.gamma, s3.mu), (0, 0, 0, 0));
        let p = abc_in(&PinModel::sphere(2), &window(-8, 24)).unwrap();
        assert_eq!((p.a, p.b, p.c), (2, 3, 4));
        assert_eq!((p.alpha, p.beta, p.gamma, p.mu), (1, 1, 1, 1));
        let r = abc(&PinModel::sphere(-2)).unwrap();
        assert_eq!((r.alpha, r.beta, r.gamma, r.mu), (-1, -1, -1, 1));
        assert_eq!(rokhlin_check(&s3).unwrap(), 0);
        assert_eq!(rokhlin_check(&p).unwrap(), 1);
        assert_eq!(rokhlin_check(&r).unwrap(), 1);
    }

    #[test]
    fn rokhlin_rejects_mixed_parities() {
        let mut r = abc(&PinModel::sphere(0)).unwrap();
        r.gamma = -1;
        assert_eq!(rokhlin_check(&r).unwrap_err().kind(), "model-invalid");
        assert_eq!(
            AbcReport::from_bottoms(1, 2, 3).unwrap_err().kind(),
            "model-invalid"
        );
    }

    #[test]
    fn odd_reducible_degree_is_rejected_by_abc() {
        assert_eq!(
            abc(&PinModel::sphere(1)).unwrap_err().kind(),
            "model-invalid"
        );
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(abc_of_reverse(&PinModel::sphere(2)).unwrap(), (-1, -1, -1));
        assert_eq!(abc_of_reverse(&PinModel::sphere(0)).unwrap(), (0, 0, 0));
        assert_eq!(
            coborel_tower_tops(&PinModel::sphere(0), &window(-4, 20)).unwrap(),
            (0, -1, -2)
        );
        assert_eq!(
            coborel_tower_tops(&PinModel::sphere(2), &window(-4, 24)).unwrap(),
            (-2, -3, -4)
        );
        assert_eq!(
            coborel_tower_tops(&PinModel::sphere(-2), &window(-8, 20)).unwrap(),
            (2, 1, 0)
        );
    }

    #[test]
    fn finite_only_models() {
        let m = acyclic_pair(3);
        let report = localization_check(&m, &m.default_window(2)).unwrap();
        assert!(!report.pass && report.localizes_to_zero);
        assert!(report.anchor.is_none());
        assert_eq!(abc(&m).unwrap_err().kind(), "model-invalid");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let m = random_pin_model(&mut rng, 6, false).model;
            let report = localization_check(&m, &m.default_window(2)).unwrap();
            assert!(!report.pass && report.localizes_to_zero);
        }
    }

    #[test]
    fn sphere_localizes() {
        let m = PinModel::sphere(0);
        let report = localization_check(&m, &m.default_window(2)).unwrap();
        assert!(report.pass && !report.localizes_to_zero);
        assert_eq!(report.anchor, Some(0));
        assert!(report
            .stable_ranks
            .iter()
            .all(|&(d, r)| r == usize::from(d.rem_euclid(4) < 3)));
    }

    #[test]
    fn window_errors() {
        let m = PinModel::sphere(0);
        assert_eq!(
            materialize(&m, &window(-3, 20)).unwrap_err().kind(),
            "input"
        );
        assert_eq!(
            materialize(&m, &window(-4, 15)).unwrap_err().kind(),
            "input"
        );
        let narrow = Window {
            lo: -4,
            hi: 40,
            margin: 1,
        };
        assert_eq!(materialize(&m, &narrow).unwrap_err().kind(), "input");
        let huge = Window {
            lo: -4,
            hi: MAX_WINDOW + 10,
            margin: 2,
        };
        assert_eq!(materialize(&m, &huge).unwrap_err().kind(), "input");
    }

    #[test]
    fn structural_validation() {
        let q = F2Matrix::from_rows(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let ok = PinModel::new(
            None,
            gens(&[("a", 2), ("b", 1), ("c", 0)]),
            q.clone(),
            zero(3),
            zero(3),
            &[],
        );
        assert!(ok.is_ok());
        let mut q4 = F2Matrix::zeros(4, 4);
        for i in 0..3 {
            q4.set(i + 1, i, true);
        }
        let cube = PinModel::new(
            None,
            gens(&[("a", 3), ("b", 2), ("c", 1), ("d", 0)]),
            q4,
            zero(4),
            zero(4),
            &[],
        );
        assert_eq!(cube.unwrap_err().kind(), "model-invalid");
        let skew = PinModel::new(
            None,
            gens(&[("a", 2), ("b", 2), ("c", 0)]),
            q,
            zero(3),
            zero(3),
            &[],
        );
        assert_eq!(skew.unwrap_err().kind(), "model-invalid");
        let dup = PinModel::new(
            None,
            gens(&[("a", 0), ("a", 1)]),
            zero(2),
            zero(2),
            zero(2),
            &[],
        );
        assert_eq!(dup.unwrap_err().kind(), "input");
        let shape = PinModel::new(None, gens(&[("a", 0)]), zero(2), zero(1), zero(1), &[]);
        assert_eq!(shape.unwrap_err().kind(), "input");
        let bad_target = PinModel::new(
            Some(0),
            gens(&[("x", 3)]),
            zero(1),
            zero(1),
            zero(1),
            &[(0, TowerElement { a: 1, b: 0 })],
        );
        assert_eq!(bad_target.unwrap_err().kind(), "model-invalid");
        let no_tower = PinModel::new(
            None,
            gens(&[("x", 3)]),
            zero(1),
            zero(1),
            zero(1),
            &[(0, TowerElement { a: 2, b: 0 })],
        );
        assert_eq!(no_tower.unwrap_err().kind(), "input");
        // D(x) = y, D(y) = g: D^2 x = g.
        let d = F2Matrix::from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        let squared = PinModel::new(
            Some(0),
            gens(&[("y", 1), ("x", 2)]),
            zero(2),
            zero(2),
            d,
            &[(0, TowerElement { a: 0, b: 0 })],
        );
        assert_eq!(squared.unwrap_err().kind(), "model-invalid");
    }

    #[test]
    fn random_models_match_their_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..50 {
            let sample = random_pin_model(&mut rng, 6, true);
            let m = &sample.model;
            let (a, b, c) = sample.bottoms.unwrap();
            let r = abc(m).unwrap();
            assert_eq!((r.a, r.b, r.c), (a, b, c));
            assert!(r.alpha >= r.beta && r.beta >= r.gamma);
            assert_eq!(rokhlin_check(&r).unwrap(), r.mu);
            assert_eq!(r.beta.rem_euclid(2) as u8, r.mu);
            let wide = {
                let w = m.default_window(4);
                Window { hi: w.hi + 8, ..w }
            };
            let rw = abc_in(m, &wide).unwrap();
            assert_eq!((rw.a, rw.b, rw.c), (a, b, c));
            let mat = materialize(m, &m.default_window(2)).unwrap();
            assert!(mat.complex.squares_to_zero());
            for op in &mat.ops {
                assert!(op.is_chain_map(&mat.complex, &mat.complex));
            }
            let w = m.default_window(2);
            let tops = coborel_tower_tops(m, &w).unwrap();
            assert_eq!(tops, (-a, -b, -c));
            let (ra2, rb2, rc2) = reverse_bottoms_from_tops(tops);
            let rev = AbcReport::from_bottoms(ra2, rb2, rc2).unwrap();
            assert_eq!((rev.alpha, rev.beta, rev.gamma), abc_of_reverse(m).unwrap());
            let (ra, rb, rc) = abc_of_reverse(m).unwrap();
            assert_eq!((-rc, -rb, -ra), (r.alpha, r.beta, r.gamma));
            let report = localization_check(m, &w).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    fn s1(
        n: i64,
        gens_: &[(&str, i64)],
        u: F2Matrix,
        d: F2Matrix,
        tower: &[(usize, i64)],
    ) -> SOneModel {
        SOneModel::new(Some(n), gens(gens_), u, d, tower).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            delta_invariant(&SOneModel::sphere(0)).unwrap(),
            Ratio::from_integer(0)
        );
        assert_eq!(
            delta_invariant(&SOneModel::sphere(2)).unwrap(),
            Ratio::from_integer(1)
        );
        let killed = s1(0, &[("x", 1)], zero(1), zero(1), &[(0, 0)]);
        assert_eq!(delta_invariant(&killed).unwrap(), Ratio::from_integer(1));
        let half = s1(0, &[("z", -1)], zero(1), zero(1), &[]);
        assert_eq!(delta_invariant(&half).unwrap(), Ratio::from_integer(0));
        let odd = SOneModel::sphere(1);
        assert_eq!(delta_invariant(&odd).unwrap(), Ratio::new(1, 2));
        let none = SOneModel::new(None, Vec::new(), zero(0), zero(0), &[]).unwrap();
        assert_eq!(delta_invariant(&none).unwrap_err().kind(), "model-invalid");
    }

    #[test]
    fn random_s1_models() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..50 {
            let s = random_s1_model(&mut rng, 6);
            assert_eq!(delta_invariant(&s.model).unwrap(), Ratio::new(s.bottom, 2));
        }
    }
}

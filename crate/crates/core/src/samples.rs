//! Random valid instances with known invariants, for property tests and the
//! acceptance suite.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::equivariant::{PinModel, SOneModel, TowerElement};
use crate::f2linalg::{F2Matrix, F2Vec};
use crate::graded::Generator;
use crate::involutive::{forced_upower, IotaMap, UComplex};

/// Finite part under construction: generators, operator matrices (given as
/// edge lists) and tower functional.
struct Builder {
    degrees: Vec<i64>,
    d: Vec<(usize, usize)>,
    ops: Vec<Vec<(usize, usize)>>,
    tower: Vec<usize>,
}

impl Builder {
    fn new(ops: usize) -> Self {
        Builder {
            degrees: Vec::new(),
            d: Vec::new(),
            ops: vec![Vec::new(); ops],
            tower: Vec::new(),
        }
    }

    fn add(&mut self, degree: i64) -> usize {
        self.degrees.push(degree);
        self.degrees.len() - 1
    }

    fn matrix(&self, entries: &[(usize, usize)]) -> F2Matrix {
        let n = self.degrees.len();
        let mut m = F2Matrix::zeros(n, n);
        for &(from, to) in entries {
            m.flip(to, from);
        }
        m
    }

    /// Conjugates everything by random same-degree transvections.
    fn scramble(&self, rng: &mut impl Rng) -> (Vec<F2Matrix>, F2Matrix, F2Vec) {
        let n = self.degrees.len();
        let mut ops: Vec<F2Matrix> = self.ops.iter().map(|e| self.matrix(e)).collect();
        let mut d = self.matrix(&self.d);
        let mut t = F2Vec::from_indices(n, self.tower.iter().copied());
        for _ in 0..3 * n {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j || self.degrees[i] != self.degrees[j] {
                continue;
            }
            let mut e = F2Matrix::identity(n);
            e.set(i, j, true);
            for m in ops.iter_mut().chain(std::iter::once(&mut d)) {
                *m = e.mul(m).mul(&e);
            }
            let bits: Vec<bool> = (0..n).map(|c| e.column(c).dot(&t)).collect();
            t = F2Vec::from_bits(&bits);
        }
        (ops, d, t)
    }

    fn generators(&self) -> Vec<Generator> {
        self.degrees
            .iter()
            .enumerate()
            .map(|(i, &degree)| Generator {
                label: format!("x{i}"),
                degree,
            })
            .collect()
    }
}

/// A random valid Pin(2) model and the tower bottoms it was built to have.
#[derive(Clone, Debug)]
pub struct PinSample {
    pub model: PinModel,
    pub bottoms: Option<(i64, i64, i64)>,
}

fn pin_tower_element(n: i64, degree: i64) -> TowerElement {
    let offset = degree - n;
    TowerElement {
        a: offset.rem_euclid(4) as u8,
        b: offset.div_euclid(4),
    }
}

/// Chains killing the bottoms of the towers (kill counts `k0 >= k1 >= k2`),
/// acyclic pairs and `q`-strings, and zero-differential `q`-strings, in a
/// scrambled basis. `n` is even; at most `max_generators` finite generators.
pub fn random_pin_model(rng: &mut impl Rng, max_generators: usize, with_tower: bool) -> PinSample {
    let n = 2 * rng.gen_range(-3i64..=3);
    let mut b = Builder::new(2);
    let mut kills = [0usize; 3];
    if with_tower {
        let budget = max_generators.min(9);
        let k0 = rng.gen_range(0..=budget / 3 + 1).min(budget);
        let k1 = rng.gen_range(0..=k0).min(budget - k0);
        let k2 = rng.gen_range(0..=k1).min(budget - k0 - k1);
        kills = [k0, k1, k2];
        let mut chain = vec![vec![0usize; 0]; 3];
        for a in 0..3 {
            for j in 0..kills[a] {
                let x = b.add(n + a as i64 + 4 * j as i64 + 1);
                b.tower.push(x);
                if a > 0 {
                    b.ops[0].push((x, chain[a - 1][j]));
                }
                if j > 0 {
                    b.ops[1].push((x, chain[a][j - 1]));
                }
                chain[a].push(x);
            }
        }
    }
    while b.degrees.len() < max_generators {
        let room = max_generators - b.degrees.len();
        let base = rng.gen_range(-6i64..=10);
        match rng.gen_range(0..3) {
            0 if room >= 2 => {
                let len = rng.gen_range(1..=3).min(room / 2);
                let mut prev: Option<(usize, usize)> = None;
                for i in 0..len as i64 {
                    let x = b.add(base + 1 - i);
                    let y = b.add(base - i);
                    b.d.push((x, y));
                    if let Some((px, py)) = prev {
                        b.ops[0].push((px, x));
                        b.ops[0].push((py, y));
                    }
                    prev = Some((x, y));
                }
            }
            1 => {
                let len = rng.gen_range(1..=3).min(room);
                let mut prev = None;
                for i in 0..len as i64 {
                    let z = b.add(base - i);
                    if let Some(p) = prev {
                        b.ops[0].push((p, z));
                    }
                    prev = Some(z);
                }
            }
            _ => {
                if rng.gen_bool(0.5) {
                    break;
                }
            }
        }
    }
    let (ops, d, t) = b.scramble(rng);
    let entries: Vec<(usize, TowerElement)> = t
        .ones()
        .map(|j| (j, pin_tower_element(n, b.degrees[j] - 1)))
        .collect();
    let model = PinModel::new(
        with_tower.then_some(n),
        b.generators(),
        ops[0].clone(),
        ops[1].clone(),
        d,
        &entries,
    )
    .expect("generated model is valid");
    let bottoms = with_tower.then(|| {
        (
            n + 4 * kills[0] as i64,
            n + 1 + 4 * kills[1] as i64,
            n + 2 + 4 * kills[2] as i64,
        )
    });
    PinSample { model, bottoms }
}

/// A random valid S¹ model and the bottom of its `U`-tower.
#[derive(Clone, Debug)]
pub struct SOneSample {
    pub model: SOneModel,
    pub bottom: i64,
}

pub fn random_s1_model(rng: &mut impl Rng, max_generators: usize) -> SOneSample {
    let n = rng.gen_range(-4i64..=4);
    let mut b = Builder::new(1);
    let kills = rng.gen_range(0..=max_generators.min(3));
    let mut prev = None;
    for j in 0..kills as i64 {
        let x = b.add(n + 2 * j + 1);
        b.tower.push(x);
        if let Some(p) = prev {
            b.ops[0].push((x, p));
        }
        prev = Some(x);
    }
    while b.degrees.len() + 1 < max_generators && rng.gen_bool(0.7) {
        let base = rng.gen_range(-5i64..=8);
        let x = b.add(base + 1);
        let y = b.add(base);
        b.d.push((x, y));
    }
    let (ops, d, t) = b.scramble(rng);
    let entries: Vec<(usize, i64)> = t.ones().map(|j| (j, (b.degrees[j] - 1 - n) / 2)).collect();
    let model = SOneModel::new(Some(n), b.generators(), ops[0].clone(), d, &entries)
        .expect("generated model is valid");
    SOneSample {
        model,
        bottom: n + 2 * kills as i64,
    }
}

/// How the tower generator is tied to the torsion blocks through `ι`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coupling {
    None,
    /// `ι(t) = t + z₄` with the figure-eight-surgery block: `d̲` drops by 2.
    Lower,
    /// The dual block with `ι(w₄) = w₄ + t`: `d̄` rises by 2.
    Upper,
}

/// A random complex over `F[U]` with a homotopy involution and the
/// correction terms `(d, d̄, d̲)` it was built to have.
#[derive(Clone, Debug)]
pub struct IotaSample {
    pub complex: UComplex,
    pub iota: IotaMap,
    pub coupling: Coupling,
    pub expected: (i64, i64, i64),
}

struct UBuilder {
    degrees: Vec<i64>,
    d: Vec<(usize, usize)>,
    iota: Vec<(usize, usize)>,
}

impl UBuilder {
    fn add(&mut self, degree: i64, fixed: bool) -> usize {
        self.degrees.push(degree);
        let i = self.degrees.len() - 1;
        if fixed {
            self.iota.push((i, i));
        }
        i
    }

    fn matrix(&self, entries: &[(usize, usize)]) -> F2Matrix {
        let n = self.degrees.len();
        let mut m = F2Matrix::zeros(n, n);
        for &(from, to) in entries {
            m.flip(to, from);
        }
        m
    }
}

/// `identity` forces `ι = id`; otherwise blocks may swap generators, one
/// block may be coupled to the tower generator, the basis is scrambled and
/// `ι` is moved within its homotopy class.
pub fn random_iota_complex(
    rng: &mut impl Rng,
    max_generators: usize,
    identity: bool,
) -> IotaSample {
    let s = 2 * rng.gen_range(-2i64..=2);
    let mut b = UBuilder {
        degrees: Vec::new(),
        d: Vec::new(),
        iota: Vec::new(),
    };
    let t = b.add(s, false);
    let coupling = if identity || max_generators < 5 {
        Coupling::None
    } else {
        *[Coupling::None, Coupling::Lower, Coupling::Upper]
            .choose(rng)
            .expect("nonempty")
    };
    let mut t_image = vec![t];
    let mut coupled = coupling == Coupling::None;
    loop {
        let room = max_generators - b.degrees.len();
        let g = if !coupled {
            s
        } else {
            rng.gen_range(-4i64..=4)
        };
        let kind = if !coupled { 1 } else { rng.gen_range(0..4) };
        match kind {
            1 | 2 if room >= 4 => {
                let swap = !identity && rng.gen_bool(0.7);
                let lower = if coupled {
                    kind == 1
                } else {
                    coupling == Coupling::Lower
                };
                let (top, mid) = if lower { (g, g - 1) } else { (g, g + 1) };
                let z1 = b.add(top, true);
                let z2 = b.add(mid, !swap);
                let z3 = b.add(mid, !swap);
                let z4 = b.add(top, true);
                if swap {
                    b.iota.push((z2, z3));
                    b.iota.push((z3, z2));
                }
                if lower {
                    // z1 -> z2 + z3, z2 -> U z4, z3 -> U z4
                    b.d.extend([(z1, z2), (z1, z3), (z2, z4), (z3, z4)]);
                } else {
                    // z4 -> U(z2 + z3), z2 -> z1, z3 -> z1
                    b.d.extend([(z4, z2), (z4, z3), (z2, z1), (z3, z1)]);
                }
                if !coupled {
                    if lower {
                        t_image.push(z4);
                    } else {
                        b.iota.push((z4, t));
                    }
                    coupled = true;
                }
            }
            0 if room >= 2 => {
                let k = rng.gen_range(0..=2);
                let y = b.add(g, true);
                let x = b.add(g - 2 * k + 1, true);
                b.d.push((x, y));
            }
            _ => {
                if coupled && (room < 2 || rng.gen_bool(0.4)) {
                    break;
                }
            }
        }
    }
    for &y in &t_image {
        b.iota.push((t, y));
    }
    let n = b.degrees.len();
    let mut d = b.matrix(&b.d);
    let mut iota = b.matrix(&b.iota);
    let deg = b.degrees.clone();
    if !identity {
        for _ in 0..2 * n {
            let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if r == c || forced_upower(deg[c], deg[r], 0).is_none() {
                continue;
            }
            let mut e = F2Matrix::identity(n);
            e.set(r, c, true);
            d = e.mul(&d).mul(&e);
            iota = e.mul(&iota).mul(&e);
        }
        let h = F2Matrix::from_fn(n, n, |y, x| {
            forced_upower(deg[x], deg[y], 1).is_some() && rng.gen_bool(0.3)
        });
        iota = iota.add(&d.mul(&h)).add(&h.mul(&d));
    }
    let generators = deg
        .iter()
        .enumerate()
        .map(|(i, &degree)| Generator {
            label: if i == t { "t".into() } else { format!("x{i}") },
            degree,
        })
        .collect();
    let complex = UComplex::new(generators, d).expect("generated complex is valid");
    let iota = complex
        .iota(iota)
        .expect("generated involution is homogeneous");
    let expected = match coupling {
        Coupling::None => (s, s, s),
        Coupling::Lower => (s, s, s - 2),
        Coupling::Upper => (s, s + 2, s),
    };
    IotaSample {
        complex,
        iota,
        coupling,
        expected,
    }
}

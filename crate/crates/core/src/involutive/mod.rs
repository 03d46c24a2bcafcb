//! Involutive Heegaard Floer algebra: free complexes over `F[U]` with a
//! homotopy involution `ι`, their plus-flavored windows, the mapping cone of
//! `Q(1 + ι)`, the correction terms `d, d̄, d̲` and the surgery quantities
//! `V₀, V̄₀, V̲₀`.

mod complex;
mod cone;
mod plus;
mod v0;

pub use complex::{forced_upower, matrix_from_entries, IotaMap, UComplex, UEntry};
pub use cone::{
    cone_iota, involutive_correction_terms, involutive_correction_terms_in, iota_homotopy,
    validate_iota, ConeComplex, InvolutiveReport, MAX_IOTA_GENERATORS,
};
pub use plus::{d_invariant, d_invariant_in, default_plus_window, plus_window, PlusWindow};
pub use v0::{d_from_v0, v0_from_d, v0_triple, MAX_P};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2linalg::{rank_f2, F2Matrix};
    use crate::graded::{Generator, Window};
    use crate::samples::{random_iota_complex, Coupling};
    use num_rational::Ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gens(items: &[(&str, i64)]) -> Vec<Generator> {
        items
            .iter()
            .map(|&(label, degree)| Generator {
                label: label.into(),
                degree,
            })
            .collect()
    }

    fn e(from: usize, to: usize, upower: u32) -> UEntry {
        UEntry { from, to, upower }
    }

    fn sphere(degree: i64) -> UComplex {
        UComplex::from_entries(gens(&[("x", degree)]), &[]).unwrap()
    }

    /// `+1`-surgery on the figure-eight knot.
    fn sigma237() -> (UComplex, IotaMap) {
        let c = UComplex::from_entries(
            gens(&[("x", 0), ("z1", 0), ("z2", -1), ("z3", -1), ("z4", 0)]),
            &[e(1, 2, 0), e(1, 3, 0), e(2, 4, 1), e(3, 4, 1)],
        )
        .unwrap();
        let iota = c
            .iota_from_entries(&[
                e(0, 0, 0),
                e(0, 4, 0),
                e(1, 1, 0),
                e(2, 3, 0),
                e(3, 2, 0),
                e(4, 4, 0),
            ])
            .unwrap();
        (c, iota)
    }

    #[test]
    fn plus_window_of_spheres() {
        for n in [0, 2] {
            let pw = plus_window(
                &sphere(n),
                &Window {
                    lo: n,
                    hi: n + 12,
                    margin: 2,
                },
            )
            .unwrap();
            for d in n..=n + 12 {
                assert_eq!(pw.complex.dim(d), usize::from((d - n) % 2 == 0));
            }
            assert_eq!(d_invariant(&sphere(n)).unwrap(), n);
        }
    }

    #[test]
    fn plus_homology_of_a_two_step_complex() {
        // x (degree 1) -> U y (y in degree 2): U^-k x hits U^-(k-1) y for
        // k >= 1, so the whole y-tower dies and only x survives.
        let c = UComplex::from_entries(gens(&[("y", 2), ("x", 1)]), &[e(1, 0, 1)]).unwrap();
        let w = Window {
            lo: 1,
            hi: 15,
            margin: 2,
        };
        let pw = plus_window(&c, &w).unwrap();
        let cx = &pw.complex;
        for d in w.lo..w.hi {
            let oracle =
                cx.dim(d) - rank_f2(&cx.differential(d)) - rank_f2(&cx.differential(d + 1));
            assert_eq!(cx.betti(d), oracle);
        }
        assert_eq!(cx.betti(1), 1);
        for d in 2..w.hi {
            assert_eq!(cx.betti(d), 0, "degree {d}");
        }
        assert_eq!(d_invariant(&c).unwrap_err().kind(), "model-invalid");
    }

    #[test]
    fn pair_with_a_u_step_raises_d() {
        let base = sphere(-2);
        assert_eq!(d_invariant(&base).unwrap(), -2);
        let c = UComplex::from_entries(
            gens(&[("g", -2), ("z", 0), ("x", -1)]),
            &[e(2, 0, 0), e(2, 1, 1)],
        )
        .unwrap();
        assert_eq!(d_invariant(&c).unwrap(), 0);
    }

    #[test]
    fn d_needs_exactly_one_tower() {
        let two = UComplex::from_entries(gens(&[("a", 0), ("b", 2)]), &[]).unwrap();
        assert_eq!(d_invariant(&two).unwrap_err().kind(), "model-invalid");
        let none = UComplex::from_entries(gens(&[("a", 0), ("b", 1)]), &[e(1, 0, 0)]).unwrap();
        assert_eq!(d_invariant(&none).unwrap_err().kind(), "model-invalid");
    }

    #[test]
    fn window_checks() {
        let c = sphere(0);
        assert_eq!(
            plus_window(
                &c,
                &Window {
                    lo: 1,
                    hi: 20,
                    margin: 2
                }
            )
            .unwrap_err()
            .kind(),
            "input"
        );
        assert_eq!(
            plus_window(
                &c,
                &Window {
                    lo: 0,
                    hi: 5,
                    margin: 2
                }
            )
            .unwrap_err()
            .kind(),
            "input"
        );
        assert_eq!(
            plus_window(
                &c,
                &Window {
                    lo: 0,
                    hi: 20,
                    margin: 1
                }
            )
            .unwrap_err()
            .kind(),
            "input"
        );
    }

    #[test]
    fn construction_errors() {
        let bad_power = UComplex::from_entries(gens(&[("y", 0), ("x", 1)]), &[e(1, 0, 1)]);
        assert_eq!(bad_power.unwrap_err().kind(), "model-invalid");
        let parity = UComplex::from_entries(gens(&[("y", 0), ("x", 2)]), &[e(1, 0, 0)]);
        assert_eq!(parity.unwrap_err().kind(), "model-invalid");
        let squared = UComplex::from_entries(
            gens(&[("a", 0), ("b", 1), ("c", 2)]),
            &[e(2, 1, 0), e(1, 0, 0)],
        );
        assert_eq!(squared.unwrap_err().kind(), "model-invalid");
        let missing = UComplex::from_entries(gens(&[("a", 0)]), &[e(0, 3, 0)]);
        assert_eq!(missing.unwrap_err().kind(), "input");
    }

    #[test]
    fn iota_validation() {
        let (c, iota) = sigma237();
        assert!(validate_iota(&c, &iota).is_ok());
        assert!(validate_iota(&c, &c.identity()).is_ok());
        let two = UComplex::from_entries(gens(&[("a", 0), ("b", 0)]), &[]).unwrap();
        let swap = two.iota_from_entries(&[e(0, 1, 0), e(1, 0, 0)]).unwrap();
        assert!(validate_iota(&two, &swap).is_ok());
        // ι² = id + U·(y ↦ w) with zero differential: no homotopy exists.
        let c3 = UComplex::from_entries(gens(&[("y", 0), ("z", 0), ("w", 2)]), &[]).unwrap();
        let bad = c3
            .iota_from_entries(&[e(0, 1, 0), e(1, 0, 0), e(1, 2, 1), e(2, 2, 0)])
            .unwrap();
        assert_eq!(validate_iota(&c3, &bad).unwrap_err().kind(), "input");
        assert!(iota_homotopy(&c3, &bad).unwrap().is_none());
        let pair = UComplex::from_entries(gens(&[("y", 0), ("x", 1)]), &[e(1, 0, 0)]).unwrap();
        let not_chain = pair.iota_from_entries(&[e(0, 0, 0)]).unwrap();
        assert_eq!(
            validate_iota(&pair, &not_chain).unwrap_err().kind(),
            "input"
        );
    }

    #[test]
    fn homotopy_solutions_are_homotopies() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let s = random_iota_complex(&mut rng, 9, false);
            let h = iota_homotopy(&s.complex, &s.iota)
                .unwrap()
                .expect("homotopy exists");
            let d = s.complex.differential();
            let i = s.iota.matrix();
            let lhs = d.mul(&h).add(&h.mul(d));
            assert_eq!(lhs, i.mul(i).add(&F2Matrix::identity(s.complex.len())));
        }
    }

    #[test]
    fn split_cone_of_sphere() {
        let c = sphere(0);
        let k = cone_iota(&c, &c.identity()).unwrap();
        let r = involutive_correction_terms(&k).unwrap();
        assert_eq!((r.d, r.d_bar, r.d_under), (0, 0, 0));
        assert!(r.q_consistent);
        let pw = k
            .plus_window(&Window {
                lo: 0,
                hi: 16,
                margin: 2,
            })
            .unwrap();
        assert_eq!(pw.complex.betti(0), 1);
        assert_eq!(pw.complex.betti(1), 1);
        assert_eq!(pw.complex.betti(2), 1);
    }

    #[test]
    fn sigma237_correction_terms() {
        let (c, iota) = sigma237();
        assert_eq!(d_invariant(&c).unwrap(), 0);
        let r = involutive_correction_terms(&cone_iota(&c, &iota).unwrap()).unwrap();
        assert_eq!((r.d, r.d_bar, r.d_under), (0, 0, -2));
        assert!(r.q_consistent && r.ordering_holds() && r.congruent());
        let dual =
            involutive_correction_terms(&cone_iota(&c.dual(), &iota.dual()).unwrap()).unwrap();
        assert_eq!((dual.d, dual.d_bar, dual.d_under), (0, 2, 0));
    }

    #[test]
    fn v0_examples() {
        let r = InvolutiveReport {
            d: 0,
            d_bar: 0,
            d_under: -2,
            q_consistent: true,
        };
        let z = Ratio::from_integer;
        assert_eq!(v0_triple(1, &r).unwrap(), (z(0), z(0), z(1)));
        let flat = InvolutiveReport { d_under: 0, ..r };
        assert_eq!(v0_triple(1, &flat).unwrap(), (z(0), z(0), z(0)));
        assert_eq!(v0_from_d(9, z(2)).unwrap(), z(0));
        assert_eq!(v0_from_d(0, z(0)).unwrap_err().kind(), "input");
        assert_eq!(v0_from_d(-3, z(0)).unwrap_err().kind(), "input");
        assert_eq!(v0_from_d(2, z(0)).unwrap(), Ratio::new(1, 8));
    }

    proptest::proptest! {
        #[test]
        fn v0_inverse_round_trips(p in 1i64..10_000, num in -1000i64..1000, den in 1i64..50) {
            let d = Ratio::new(num, den);
            let v = v0_from_d(p, d).unwrap();
            proptest::prop_assert_eq!(d_from_v0(p, v).unwrap(), d);
        }
    }

    #[test]
    fn split_law_on_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let s = random_iota_complex(&mut rng, 8, true);
            let c = &s.complex;
            let k = cone_iota(c, &c.identity()).unwrap();
            let r = involutive_correction_terms(&k).unwrap();
            assert_eq!((r.d, r.d_bar, r.d_under), s.expected);
            let w = k.default_window(2);
            let cone = k.plus_window(&w).unwrap();
            let base = plus_window(c, &w).unwrap();
            for t in w.lo..w.hi {
                assert_eq!(
                    cone.complex.betti(t),
                    base.complex.betti(t - 1) + base.complex.betti(t),
                    "degree {t}"
                );
            }
        }
    }

    #[test]
    fn cone_rank_bookkeeping() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..25 {
            let s = random_iota_complex(&mut rng, 9, false);
            let k = cone_iota(&s.complex, &s.iota).unwrap();
            let w = k.default_window(2);
            let cone = k.plus_window(&w).unwrap();
            let base = plus_window(&s.complex, &w).unwrap();
            let one_plus = s.iota.matrix().add(&F2Matrix::identity(s.complex.len()));
            let f = base.lift(s.complex.generators(), &one_plus, 0);
            let h = |t: i64| base.complex.betti(t);
            let r = |t: i64| f.induced_rank(&base.complex, &base.complex, t);
            for t in w.lo + 1..w.hi - 1 {
                assert_eq!(
                    cone.complex.betti(t),
                    h(t) - r(t) + h(t - 1) - r(t - 1),
                    "degree {t}"
                );
                assert!(cone.complex.betti(t) <= h(t) + h(t - 1));
            }
        }
    }

    #[test]
    fn random_instances_satisfy_the_ordering() {
        let mut rng = ChaCha8Rng::seed_from_u64(4321);
        for _ in 0..100 {
            let s = random_iota_complex(&mut rng, 10, false);
            let k = cone_iota(&s.complex, &s.iota).unwrap();
            let r = involutive_correction_terms(&k).unwrap();
            assert_eq!((r.d, r.d_bar, r.d_under), s.expected, "{:?}", s.coupling);
            assert!(r.ordering_holds() && r.congruent() && r.q_consistent);
            let dual =
                involutive_correction_terms(&cone_iota(&s.complex.dual(), &s.iota.dual()).unwrap())
                    .unwrap();
            assert_eq!(
                (dual.d, dual.d_bar, dual.d_under),
                (-r.d, -r.d_under, -r.d_bar)
            );
        }
        let _ = Coupling::None;
    }
}

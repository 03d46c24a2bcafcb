//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use hcobord_core::equivariant::{
    abc, abc_in, abc_of_reverse, coborel_tower_tops, localization_check, rokhlin_check, PinModel,
    Window,
};
use hcobord_core::fixtures;
use hcobord_core::formats::{Input, InvolutiveInput};
use hcobord_core::involutive::{
    cone_iota, involutive_correction_terms, plus_window, v0_triple, validate_iota,
};
use hcobord_core::knot::{knot_invariants, FoxMilnor};
use hcobord_core::samples::{random_iota_complex, random_pin_model};
use hcobord_core::simplicial::{
    bockstein_sq1, cohomology_f2, coset_enumeration, homology, AbstractComplex, CosetOutcome,
    GroupPresentation, HomologyGroup, Ring, Simplex,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
type Sample = (String, PinModel, Option<(i64, i64, i64)>);

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn ms(d: Duration) -> String {
    format!("{:.3} ms", d.as_secs_f64() * 1e3)
}

fn within(d: Duration, budget: Duration, what: &str) -> Result<(), String> {
    check(
        d <= budget,
        format!("{what} took {} (budget {})", ms(d), ms(budget)),
    )
}

fn fixture(name: &str) -> Input {
    fixtures::load(name).unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

fn complex(name: &str) -> AbstractComplex {
    match fixture(name) {
        Input::Simplicial(k) => k,
        other => panic!("{name} is {:?}", other.kind()),
    }
}

fn pin(name: &str) -> PinModel {
    match fixture(name) {
        Input::PinModel(m) => m,
        other => panic!("{name} is {:?}", other.kind()),
    }
}

fn u_complex(name: &str) -> InvolutiveInput {
    match fixture(name) {
        Input::UComplex(u) => u,
        other => panic!("{name} is {:?}", other.kind()),
    }
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hcobord"))
        .args(args)
        .arg("--json")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn simplex(v: &[i64]) -> Simplex {
    Simplex::new(v.to_vec()).unwrap()
}

fn link_example() -> Outcome {
    let k = complex("two-facets");
    let ((l4, l1), t) = timed(|| {
        (
            k.link(&simplex(&[4])).unwrap(),
            k.link(&simplex(&[1])).unwrap(),
        )
    });
    check(
        l4.facets() == vec![simplex(&[1, 3])],
        format!("lk({{4}}) facets {:?}", l4.facets()),
    )?;
    check(
        l1.facets() == vec![simplex(&[2]), simplex(&[3, 4])],
        format!("lk({{1}}) facets {:?}", l1.facets()),
    )?;
    let v = cli_json(&["link", "fixtures:two-facets", "--simplex", "4"])?;
    check(
        v["results"]["facets"] == serde_json::json!([[1, 3]]),
        "CLI link of {4}",
    )?;
    within(t, Duration::from_millis(1), "both links")?;
    Ok(format!(
        "lk({{4}}) = {{1,3}}, lk({{1}}) = {{2}} + {{3,4}} in {}",
        ms(t)
    ))
}

fn abc_fixtures() -> Outcome {
    let w = Window {
        lo: -8,
        hi: 24,
        margin: 2,
    };
    let mut parts = Vec::new();
    for (name, expected, mu) in [("s3", 0, 0), ("poincare", 1, 1)] {
        let (r, t) = timed(|| abc_in(&pin(name), &w));
        let r = r.map_err(|e| format!("{name}: {e}"))?;
        check(
            (r.alpha, r.beta, r.gamma, r.mu) == (expected, expected, expected, mu),
            format!("{name}: {r:?}"),
        )?;
        check(rokhlin_check(&r) == Ok(mu), format!("{name}: rokhlin"))?;
        within(t, Duration::from_millis(100), name)?;
        parts.push(format!(
            "{name} ({}, {}, {}) mu={} in {}",
            r.alpha,
            r.beta,
            r.gamma,
            r.mu,
            ms(t)
        ));
    }
    Ok(parts.join("; "))
}

fn duality() -> Outcome {
    let start = Instant::now();
    for name in ["s3", "poincare", "poincare-reversed"] {
        let m = pin(name);
        let r = abc(&m).map_err(|e| format!("{name}: {e}"))?;
        let rev = abc_of_reverse(&m).map_err(|e| format!("{name}: {e}"))?;
        check(
            rev == (-r.gamma, -r.beta, -r.alpha),
            format!("{name}: reverse {rev:?}"),
        )?;
        let tops =
            coborel_tower_tops(&m, &m.default_window(2)).map_err(|e| format!("{name}: {e}"))?;
        check(
            tops == (-r.a, -r.b, -r.c),
            format!("{name}: tops {tops:?} vs bottoms {:?}", (r.a, r.b, r.c)),
        )?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(1), "duality")?;
    Ok(format!(
        "S^0, S^2, S^-2: reverse and co-Borel tops agree in {}",
        ms(t)
    ))
}

fn involutive_fixture() -> Outcome {
    let u = u_complex("sigma237");
    let iota = u.iota.as_ref().ok_or("no iota")?;
    let (r, t) = timed(|| {
        validate_iota(&u.complex, iota)?;
        involutive_correction_terms(&cone_iota(&u.complex, iota)?)
    });
    let r = r.map_err(|e| e.to_string())?;
    check((r.d, r.d_bar, r.d_under) == (0, 0, -2), format!("{r:?}"))?;
    let v = v0_triple(1, &r).map_err(|e| e.to_string())?;
    let z = num_rational::Ratio::from_integer;
    check(v == (z(0), z(0), z(1)), format!("V0 triple {v:?}"))?;
    let cli = cli_json(&["v0", "--p", "1", "fixtures:sigma237"])?;
    let res = &cli["results"];
    check(
        (
            res["d"].clone(),
            res["d_bar"].clone(),
            res["d_under"].clone(),
        ) == (0.into(), 0.into(), (-2).into()),
        "CLI d values",
    )?;
    check(
        (
            res["V0"].clone(),
            res["V0_bar"].clone(),
            res["V0_under"].clone(),
        ) == ("0".into(), "0".into(), "1".into()),
        "CLI V0 values",
    )?;
    within(t, Duration::from_secs(1), "hfi")?;
    Ok(format!(
        "(d, d_bar, d_under) = (0, 0, -2), (V0, V0_bar, V0_under) = (0, 0, 1) in {}",
        ms(t)
    ))
}

fn split_cone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let start = Instant::now();
    for i in 0..25 {
        let s = random_iota_complex(&mut rng, 8, true);
        let c = &s.complex;
        let k = cone_iota(c, &c.identity()).map_err(|e| e.to_string())?;
        let r = involutive_correction_terms(&k).map_err(|e| format!("instance {i}: {e}"))?;
        check(
            r.d_bar == r.d && r.d_under == r.d,
            format!("instance {i}: {r:?}"),
        )?;
        let w = k.default_window(2);
        let cone = k.plus_window(&w).map_err(|e| e.to_string())?;
        let base = plus_window(c, &w).map_err(|e| e.to_string())?;
        for t in w.lo..w.hi {
            let (lhs, rhs) = (
                cone.complex.betti(t),
                base.complex.betti(t) + base.complex.betti(t - 1),
            );
            check(
                lhs == rhs,
                format!("instance {i}, degree {t}: HFI {lhs} vs {rhs}"),
            )?;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(10), "split cones")?;
    Ok(format!("25 random complexes, iota = id, in {}", ms(t)))
}

fn ordering() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let start = Instant::now();
    let mut findings = Vec::new();
    for i in 0..100 {
        let s = random_iota_complex(&mut rng, 10, false);
        let r = validate_iota(&s.complex, &s.iota)
            .and_then(|_| involutive_correction_terms(&cone_iota(&s.complex, &s.iota)?));
        match r {
            Err(e) => findings.push(format!("instance {i}: {e}")),
            Ok(r) => {
                if !(r.ordering_holds() && r.congruent()) {
                    findings.push(format!(
                        "instance {i}: {r:?} violates the ordering or congruence"
                    ));
                } else if (r.d, r.d_bar, r.d_under) != s.expected {
                    findings.push(format!(
                        "instance {i}: {r:?}, constructed as {:?}",
                        s.expected
                    ));
                }
            }
        }
    }
    let t = start.elapsed();
    check(findings.is_empty(), findings.join("; "))?;
    within(t, Duration::from_secs(60), "ordering suite")?;
    Ok(format!(
        "100 random (C, iota): d_under <= d <= d_bar, congruent mod 2, in {}",
        ms(t)
    ))
}

fn localization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let start = Instant::now();
    let s3 = pin("s3");
    let l = localization_check(&s3, &s3.default_window(2)).map_err(|e| e.to_string())?;
    check(l.pass && l.anchor == Some(0), "S^0 model")?;
    for i in 0..50 {
        let m = random_pin_model(&mut rng, 6, true).model;
        let l = localization_check(&m, &m.default_window(2)).map_err(|e| e.to_string())?;
        check(
            l.pass,
            format!("model {i}: stable ranks {:?}", l.stable_ranks),
        )?;
        let f = random_pin_model(&mut rng, 6, false).model;
        let l = localization_check(&f, &f.default_window(2)).map_err(|e| e.to_string())?;
        check(
            !l.pass && l.localizes_to_zero,
            format!("finite model {i}: {:?}", l.stable_ranks),
        )?;
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(30), "localization")?;
    Ok(format!(
        "50 models localize to 1,1,1,0 at n; 50 finite-only models to 0; in {}",
        ms(t)
    ))
}

fn congruences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut models: Vec<Sample> = ["s3", "poincare", "poincare-reversed"]
        .iter()
        .map(|n| (n.to_string(), pin(n), None))
        .collect();
    for i in 0..50 {
        let s = random_pin_model(&mut rng, 6, true);
        models.push((format!("random {i}"), s.model, s.bottoms));
    }
    for (name, m, bottoms) in &models {
        let r = abc(m).map_err(|e| format!("{name}: {e}"))?;
        let parity = [r.alpha, r.beta, r.gamma, i64::from(r.mu)].map(|x| x.rem_euclid(2));
        check(
            parity.iter().all(|&p| p == parity[0]),
            format!("{name}: {r:?} not congruent"),
        )?;
        check(
            r.alpha >= r.beta && r.beta >= r.gamma,
            format!("{name}: {r:?} not ordered"),
        )?;
        if let Some(b) = bottoms {
            check(
                *b == (r.a, r.b, r.c),
                format!(
                    "{name}: bottoms {:?}, constructed as {b:?}",
                    (r.a, r.b, r.c)
                ),
            )?;
        }
    }
    Ok(format!(
        "{} models: alpha = beta = gamma = mu (mod 2), alpha >= beta >= gamma",
        models.len()
    ))
}

fn random_complex(rng: &mut impl Rng, vertices: i64) -> AbstractComplex {
    let count = rng.gen_range(1..=5);
    let facets: Vec<Vec<i64>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=4.min(vertices as usize));
            rand::seq::index::sample(rng, vertices as usize, size)
                .into_iter()
                .map(|v| v as i64)
                .collect()
        })
        .collect();
    let all: Vec<i64> = (0..vertices).collect();
    AbstractComplex::validate(&all, &facets).unwrap()
}

fn simplicial_suite() -> Outcome {
    let start = Instant::now();
    let torus = homology(&complex("torus7"), Ring::Integers, false);
    check(
        torus[1] == HomologyGroup::free(2),
        format!("torus H_1 = {}", torus[1]),
    )?;
    let rp2 = complex("rp2");
    let h = homology(&rp2, Ring::Integers, false);
    check(h[1].to_string() == "Z/2", format!("RP^2 H_1 = {}", h[1]))?;
    let h1 = cohomology_f2(&rp2, 1);
    check(h1.rank() == 1, "RP^2 H^1 rank")?;
    let sq = bockstein_sq1(&rp2, &h1.basis()[0]).map_err(|e| e.to_string())?;
    check(
        !cohomology_f2(&rp2, 2).is_zero_class(&sq).unwrap(),
        "Sq^1 of the H^1 generator vanishes",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for i in 0..25 {
        let n = rng.gen_range(1..=7);
        let k = random_complex(&mut rng, n);
        let (hk, hs) = (
            homology(&k, Ring::Integers, true),
            homology(&k.suspension(), Ring::Integers, true),
        );
        check(
            hs[0].is_zero(),
            format!("complex {i}: reduced H_0 of the suspension"),
        )?;
        for d in 0..hk.len().max(hs.len() - 1) {
            let zero = HomologyGroup::free(0);
            let (a, b) = (hk.get(d).unwrap_or(&zero), hs.get(d + 1).unwrap_or(&zero));
            check(
                a == b,
                format!(
                    "complex {i}: H~_{d} = {a} but H~_{} of the suspension = {b}",
                    d + 1
                ),
            )?;
        }
    }
    let t = start.elapsed();
    within(t, Duration::from_secs(30), "simplicial suite")?;
    Ok(format!(
        "torus H_1 = Z^2, RP^2 H_1 = Z/2 with Sq^1 != 0, 25 suspensions shift, in {}",
        ms(t)
    ))
}

fn binary_icosahedral() -> Outcome {
    let p =
        GroupPresentation::from_words("st", &["sssTTTTT", "sssTSTS"]).map_err(|e| e.to_string())?;
    let (o, t) = timed(|| coset_enumeration(&p, 500));
    check(o == CosetOutcome::Order(120), format!("{o:?}"))?;
    within(t, Duration::from_secs(1), "coset enumeration")?;
    Ok(format!(
        "<s,t | s^3 = t^5 = (st)^2> has order 120 under cap 500, in {}",
        ms(t)
    ))
}

fn knot_suite() -> Outcome {
    let Input::Seifert(v) = fixture("figure-eight") else {
        return Err("figure-eight fixture is not a Seifert matrix".into());
    };
    let (r, t) = timed(|| knot_invariants(&v));
    let r = r.map_err(|e| e.to_string())?;
    check(r.signature == 0, format!("signature {}", r.signature))?;
    check(r.arf == 1, format!("arf {}", r.arf))?;
    check(
        r.determinant == 5.into(),
        format!("|Delta(-1)| = {}", r.determinant),
    )?;
    check(r.fox_milnor == FoxMilnor::Obstructed, "Fox-Milnor")?;
    check(r.corollary_predicate, "corollary predicate")?;
    within(t, Duration::from_millis(10), "knot invariants")?;
    Ok(format!(
        "sigma 0, Arf 1, |Delta(-1)| 5, obstructed, predicate true, in {}",
        ms(t)
    ))
}

fn out_of_reach() -> Outcome {
    for name in ["sigma2311", "sigma2311-sum"] {
        let out = Command::new(env!("CARGO_BIN_EXE_hcobord"))
            .args(["abc", &format!("fixtures:{name}")])
            .output()
            .map_err(|e| e.to_string())?;
        check(
            out.status.code() == Some(2),
            format!("{name}: exit {:?}", out.status.code()),
        )?;
        let err = String::from_utf8_lossy(&out.stderr);
        check(
            err.lines().count() == 1 && err.starts_with("error kind=model-invalid"),
            format!("{name}: stderr {err:?}"),
        )?;
    }
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md"))
        .map_err(|e| format!("README: {e}"))?;
    check(
        readme.contains("sigma2311") && readme.contains("Σ(2,3,11)"),
        "README does not document the placeholders",
    )?;
    Ok("sigma2311 and sigma2311-sum exit 2 with a one-line error; README explains why".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("link example", link_example),
        ("alpha/beta/gamma fixtures", abc_fixtures),
        ("duality", duality),
        ("involutive fixture", involutive_fixture),
        ("split-cone law", split_cone),
        ("ordering property", ordering),
        ("localization", localization),
        ("congruence suite", congruences),
        ("simplicial suite", simplicial_suite),
        ("pi1 certification", binary_icosahedral),
        ("knot suite", knot_suite),
        ("out-of-reach values", out_of_reach),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

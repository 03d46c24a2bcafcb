use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use hcobord_core::equivariant::{
    abc_in, abc_of_reverse, coborel_tower_tops, delta_invariant_in, localization_check,
    reverse_bottoms_from_tops, rokhlin_check, PinModel, Window, DEFAULT_MARGIN,
};
use hcobord_core::fixtures;
use hcobord_core::formats::{self, MAX_INPUT_BYTES};
use hcobord_core::involutive::{
    cone_iota, involutive_correction_terms_in, v0_triple, validate_iota, InvolutiveReport,
};
use hcobord_core::knot::knot_invariants;
use hcobord_core::simplicial::{
    abelianization, bockstein_sq1, cohomology_f2, coset_enumeration, euler_characteristic,
    fundamental_group, homology, link_manifold_scan, AbstractComplex, CosetOutcome, LinkVerdict,
    Ring, ScanOptions, Simplex,
};
use hcobord_core::{Error, Result};

use crate::report::{InputInfo, Report};

#[derive(Parser, Debug)]
#[command(
    name = "hcobord",
    version,
    about = "Homology cobordism invariants from finite models"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Global {
    /// Degree window LO:HI for tower models and U-complexes.
    #[arg(long, global = true, value_name = "LO:HI", allow_hyphen_values = true, value_parser = parse_window)]
    pub window: Option<(i64, i64)>,
    /// Tower detection margin in steps of the periodic operator (at least 2).
    #[arg(long, global = true)]
    pub margin: Option<u32>,
    /// Coset cap for Todd–Coxeter enumeration.
    #[arg(long, global = true, default_value_t = 500)]
    pub limit: usize,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Z,
    F2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Link of a simplex.
    Link {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        simplex: String,
    },
    /// Star of a simplex.
    Star {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        simplex: String,
    },
    /// Closure of one or more simplices.
    Closure {
        input: String,
        #[arg(long, required = true, allow_hyphen_values = true)]
        simplex: Vec<String>,
    },
    /// Simplicial homology.
    Homology {
        input: String,
        #[arg(long, value_enum, default_value = "z")]
        ring: RingArg,
        #[arg(long)]
        reduced: bool,
    },
    /// Bockstein Sq^1 on a basis of H^dim(K; F2).
    Sq1 {
        input: String,
        #[arg(long)]
        dim: usize,
    },
    /// Edge-path group presentation, abelianization and coset enumeration.
    Pi1 {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        basepoint: Option<i64>,
    },
    /// Check every simplex link for being a (homology) sphere.
    ScanLinks {
        input: String,
        /// Run coset enumeration on 3-dimensional links.
        #[arg(long)]
        pi1: bool,
    },
    /// Tower bottoms and alpha, beta, gamma of a Pin(2) model.
    Abc { input: String },
    /// Orientation-reversal invariants and co-Borel tower tops.
    Dual { input: String },
    /// Localization (Tate) check of a Pin(2) model.
    Tate { input: String },
    /// The delta invariant of an S^1 model.
    Delta { input: String },
    /// Involutive correction terms d, d-bar, d-under.
    Hfi { input: String },
    /// V0 invariants from p-surgery correction terms.
    V0 {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
    },
    /// Seifert-matrix knot invariants.
    Knot {
        #[arg(long)]
        seifert: String,
    },
    /// List bundled fixtures.
    Fixtures,
}

fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| "expected LO:HI".to_string())?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("bad LO: {e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("bad HI: {e}"))?;
    if lo > hi {
        return Err(format!("LO {lo} exceeds HI {hi}"));
    }
    Ok((lo, hi))
}

fn parse_simplex(s: &str) -> Result<Simplex> {
    let vertices = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<i64>()
                .map_err(|_| Error::input(format!("bad vertex {v:?} in simplex {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Simplex::new(vertices)
}

/// Reads a file or `fixtures:<name>`.
fn load_text(spec: &str) -> Result<(String, InputInfo)> {
    if let Some(name) = spec.strip_prefix(fixtures::PREFIX) {
        let f = fixtures::find(name)?;
        return Ok((
            f.source.to_string(),
            InputInfo::new(spec, f.source.as_bytes()),
        ));
    }
    let meta = fs::metadata(spec).map_err(|e| Error::input(format!("cannot read {spec}: {e}")))?;
    if meta.len() > MAX_INPUT_BYTES as u64 {
        return Err(Error::input(format!(
            "{spec} exceeds {MAX_INPUT_BYTES} bytes"
        )));
    }
    let bytes = fs::read(spec).map_err(|e| Error::input(format!("cannot read {spec}: {e}")))?;
    let info = InputInfo::new(spec, &bytes);
    let text =
        String::from_utf8(bytes).map_err(|_| Error::input(format!("{spec} is not valid UTF-8")))?;
    Ok((text, info))
}

fn simplices_json<'a>(it: impl IntoIterator<Item = &'a Simplex>) -> Value {
    it.into_iter().map(|s| json!(s.vertices())).collect()
}

fn ratio(r: Ratio<i64>) -> Value {
    Value::String(r.to_string())
}

struct Ctx {
    global: Global,
    report: Report,
}

impl Ctx {
    fn margin(&self) -> u32 {
        self.global.margin.unwrap_or(DEFAULT_MARGIN)
    }

    /// The `--window` if given, otherwise `default(margin)`.
    fn window(&mut self, default: impl FnOnce(u32) -> Window) -> Window {
        let margin = self.margin();
        let w = match self.global.window {
            Some((lo, hi)) => Window { lo, hi, margin },
            None => default(margin),
        };
        let origin = if self.global.window.is_some() {
            "given"
        } else {
            "default"
        };
        self.report.note(format!(
            "window [{}, {}] margin {} ({origin})",
            w.lo, w.hi, w.margin
        ));
        w
    }
}

pub fn run(cli: Cli, echo: String) -> Result<Report> {
    let mut ctx = Ctx {
        global: cli.global,
        report: Report::new(echo, None),
    };
    match cli.command {
        Command::Link { input, simplex } => {
            let k = complex(&mut ctx, &input)?;
            let tau = parse_simplex(&simplex)?;
            let link = k.link(&tau)?;
            let r = &mut ctx.report;
            r.push("simplex", json!(tau.vertices()));
            r.push("facets", simplices_json(&link.facets()));
            r.push("simplices", simplices_json(link.simplices()));
            r.push("count", link.len());
        }
        Command::Star { input, simplex } => {
            let k = complex(&mut ctx, &input)?;
            let tau = parse_simplex(&simplex)?;
            let star = k.star(&tau)?;
            let r = &mut ctx.report;
            r.push("simplex", json!(tau.vertices()));
            r.push("simplices", simplices_json(&star));
            r.push("count", star.len());
        }
        Command::Closure { input, simplex } => {
            let k = complex(&mut ctx, &input)?;
            let subset = simplex
                .iter()
                .map(|s| parse_simplex(s))
                .collect::<Result<Vec<_>>>()?;
            let closure = k.closure(&subset)?;
            let r = &mut ctx.report;
            r.push("subset", simplices_json(&subset));
            r.push("simplices", simplices_json(&closure));
            r.push("count", closure.len());
        }
        Command::Homology {
            input,
            ring,
            reduced,
        } => {
            let k = complex(&mut ctx, &input)?;
            let ring = match ring {
                RingArg::Z => Ring::Integers,
                RingArg::F2 => Ring::F2,
            };
            let groups = homology(&k, ring, reduced);
            let r = &mut ctx.report;
            r.push("ring", if ring == Ring::F2 { "F2" } else { "Z" });
            r.push("reduced", reduced);
            for (d, g) in groups.iter().enumerate() {
                let shown = match (ring, g.rank) {
                    (Ring::Integers, _) => g.to_string(),
                    (Ring::F2, 0) => "0".to_string(),
                    (Ring::F2, 1) => "F".to_string(),
                    (Ring::F2, n) => format!("F^{n}"),
                };
                r.push(&format!("H_{d}"), shown);
            }
            r.push("euler_characteristic", euler_characteristic(&k));
        }
        Command::Sq1 { input, dim } => {
            let k = complex(&mut ctx, &input)?;
            let h = cohomology_f2(&k, dim);
            let above = cohomology_f2(&k, dim + 1);
            let r = &mut ctx.report;
            r.push(&format!("rank H^{dim}"), h.rank());
            r.push(&format!("rank H^{}", dim + 1), above.rank());
            let mut any = false;
            for (i, x) in h.basis().iter().enumerate() {
                let y = bockstein_sq1(&k, x)?;
                let coords = above.coordinates(&y)?;
                any |= !coords.is_zero();
                r.push(
                    &format!("class {i} support"),
                    simplices_json(&x.support(&k)),
                );
                r.push(
                    &format!("class {i} sq1"),
                    coords
                        .to_bits()
                        .into_iter()
                        .map(u8::from)
                        .collect::<Vec<_>>(),
                );
            }
            r.push("sq1_nonzero", any);
            r.note(format!(
                "sq1 coordinates are in the listed basis of H^{}",
                dim + 1
            ));
        }
        Command::Pi1 { input, basepoint } => {
            let k = complex(&mut ctx, &input)?;
            let limit = ctx.global.limit;
            let p = fundamental_group(&k, basepoint)?;
            let r = &mut ctx.report;
            r.push("generators", p.generator_count());
            r.push("relators", p.relators.len());
            r.push("presentation", p.to_string());
            r.push("abelianization", abelianization(&p).to_string());
            r.push("order", coset_json(coset_enumeration(&p, limit)));
            r.note(format!("coset limit {limit}"));
        }
        Command::ScanLinks { input, pi1 } => {
            let k = complex(&mut ctx, &input)?;
            let limit = ctx.global.limit;
            let reports = link_manifold_scan(&k, &ScanOptions { pi1, limit })?;
            let r = &mut ctx.report;
            let failing = reports.iter().filter(|l| !l.passes()).count();
            r.push("simplices", reports.len());
            r.push("failing", failing);
            for l in &reports {
                let verdict = match &l.verdict {
                    LinkVerdict::Sphere => "sphere".to_string(),
                    LinkVerdict::HomologySphere => "homology sphere".to_string(),
                    LinkVerdict::NotSphere(why) => format!("not a sphere: {why}"),
                };
                let shown = match l.pi1 {
                    Some(o) => json!({"dim": l.link_dim, "verdict": verdict, "pi1": coset_json(o)}),
                    None => json!({"dim": l.link_dim, "verdict": verdict}),
                };
                r.push(&format!("link {}", l.simplex), shown);
            }
            if pi1 {
                r.note(format!("coset limit {limit}"));
            }
        }
        Command::Abc { input } => {
            let m = pin(&mut ctx, &input)?;
            let w = ctx.window(|margin| m.default_window(margin));
            let a = abc_in(&m, &w)?;
            let mu = rokhlin_check(&a)?;
            let r = &mut ctx.report;
            r.push("A", a.a);
            r.push("B", a.b);
            r.push("C", a.c);
            r.push("alpha", a.alpha);
            r.push("beta", a.beta);
            r.push("gamma", a.gamma);
            r.push("mu", mu);
        }
        Command::Dual { input } => {
            let m = pin(&mut ctx, &input)?;
            let w = ctx.window(|margin| m.default_window(margin));
            let a = abc_in(&m, &w)?;
            let reverse = abc_of_reverse(&m)?;
            let tops = coborel_tower_tops(&m, &w)?;
            let from_tops = reverse_bottoms_from_tops(tops);
            let expected = (2 * reverse.0, 2 * reverse.1 + 1, 2 * reverse.2 + 2);
            let r = &mut ctx.report;
            r.push("alpha beta gamma", json!([a.alpha, a.beta, a.gamma]));
            r.push(
                "reverse alpha beta gamma",
                json!([reverse.0, reverse.1, reverse.2]),
            );
            r.push("coborel tops", json!([tops.0, tops.1, tops.2]));
            r.push(
                "reverse bottoms from tops",
                json!([from_tops.0, from_tops.1, from_tops.2]),
            );
            r.push("consistent", from_tops == expected);
        }
        Command::Tate { input } => {
            let m = pin(&mut ctx, &input)?;
            let w = ctx.window(|margin| m.default_window(margin));
            let l = localization_check(&m, &w)?;
            let r = &mut ctx.report;
            r.push("pass", l.pass);
            r.push("localizes_to_zero", l.localizes_to_zero);
            r.push("anchor", json!(l.anchor));
            let pattern: String = l.stable_ranks.iter().map(|&(_, k)| k.to_string()).collect();
            r.push(
                "stable range",
                json!([
                    l.stable_ranks.first().map(|x| x.0),
                    l.stable_ranks.last().map(|x| x.0)
                ]),
            );
            r.push("stable ranks", pattern);
        }
        Command::Delta { input } => {
            let (text, info) = load_text(&input)?;
            ctx.report.input = Some(info);
            let m = formats::parse_s1_model(&text)?;
            let w = ctx.window(|margin| m.default_window(margin));
            let delta = delta_invariant_in(&m, &w)?;
            ctx.report.push("delta", ratio(delta));
        }
        Command::Hfi { input } => {
            let rep = involutive(&mut ctx, &input)?;
            push_involutive(&mut ctx.report, &rep);
        }
        Command::V0 { input, p } => {
            let rep = involutive(&mut ctx, &input)?;
            let (v, v_bar, v_under) = v0_triple(p, &rep)?;
            let r = &mut ctx.report;
            r.push("p", p);
            push_involutive(r, &rep);
            r.push("V0", ratio(v));
            r.push("V0_bar", ratio(v_bar));
            r.push("V0_under", ratio(v_under));
        }
        Command::Knot { seifert } => {
            let (text, info) = load_text(&seifert)?;
            ctx.report.input = Some(info);
            let v = formats::parse_seifert(&text)?;
            let k = knot_invariants(&v)?;
            let r = &mut ctx.report;
            r.push("signature", k.signature);
            r.push("alexander", k.alexander.to_string());
            r.push("abs_alexander_at_minus_one", k.determinant.to_string());
            r.push("arf", k.arf);
            r.push("fox_milnor", k.fox_milnor.to_string());
            r.push("corollary_predicate", k.corollary_predicate);
            r.note("corollary predicate is the raw congruence sigma = 4 Arf + 4 (mod 8)");
        }
        Command::Fixtures => {
            let r = &mut ctx.report;
            for f in fixtures::FIXTURES {
                r.push(f.name, format!("{}: {}", f.kind.tag(), f.description));
            }
            for (name, why) in fixtures::PLACEHOLDERS {
                r.push(name, format!("placeholder: {why}"));
            }
        }
    }
    Ok(ctx.report)
}

fn coset_json(o: CosetOutcome) -> Value {
    match o {
        CosetOutcome::Order(n) => json!(n),
        CosetOutcome::Exceeded { limit } => Value::String(format!("exceeded limit {limit}")),
    }
}

fn complex(ctx: &mut Ctx, input: &str) -> Result<AbstractComplex> {
    let (text, info) = load_text(input)?;
    ctx.report.input = Some(info);
    formats::parse_complex(&text)
}

fn pin(ctx: &mut Ctx, input: &str) -> Result<PinModel> {
    let (text, info) = load_text(input)?;
    ctx.report.input = Some(info);
    formats::parse_pin_model(&text)
}

fn involutive(ctx: &mut Ctx, input: &str) -> Result<InvolutiveReport> {
    let (text, info) = load_text(input)?;
    ctx.report.input = Some(info);
    let u = formats::parse_u_complex(&text)?;
    let iota = u
        .iota
        .ok_or_else(|| Error::input("the u_complex has no \"iota\" entries"))?;
    validate_iota(&u.complex, &iota)?;
    let cone = cone_iota(&u.complex, &iota)?;
    let w = ctx.window(|margin| cone.default_window(margin));
    involutive_correction_terms_in(&cone, &w)
}

fn push_involutive(r: &mut Report, rep: &InvolutiveReport) {
    r.push("d", rep.d);
    r.push("d_bar", rep.d_bar);
    r.push("d_under", rep.d_under);
    r.push("ordering", rep.ordering_holds());
    r.push("congruent", rep.congruent());
    r.push("q_consistent", rep.q_consistent);
}

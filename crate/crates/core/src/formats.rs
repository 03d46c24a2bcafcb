//! JSON input files. Every file may carry a top-level `"kind"` tag; the
//! kind-specific parsers accept files without it.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::equivariant::{PinModel, SOneModel, TowerElement};
use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;
use crate::graded::Generator;
use crate::involutive::{IotaMap, UComplex, UEntry};
use crate::knot::SeifertMatrix;
use crate::simplicial::{AbstractComplex, Vertex};

/// Input files larger than this are rejected before parsing.
pub const MAX_INPUT_BYTES: usize = 16 << 20;
/// Finite generator cap for tower models and `U`-complexes.
pub const MAX_GENERATORS: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Simplicial,
    PinModel,
    SOneModel,
    UComplex,
    Seifert,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Simplicial,
        Kind::PinModel,
        Kind::SOneModel,
        Kind::UComplex,
        Kind::Seifert,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Kind::Simplicial => "simplicial",
            Kind::PinModel => "pin_model",
            Kind::SOneModel => "s1_model",
            Kind::UComplex => "u_complex",
            Kind::Seifert => "seifert",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.tag() == tag)
    }
}

/// A `U`-complex with an optional involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveInput {
    pub complex: UComplex,
    pub iota: Option<IotaMap>,
}

#[derive(Clone, Debug)]
pub enum Input {
    Simplicial(AbstractComplex),
    PinModel(PinModel),
    SOneModel(SOneModel),
    UComplex(InvolutiveInput),
    Seifert(SeifertMatrix),
}

impl Input {
    pub fn kind(&self) -> Kind {
        match self {
            Input::Simplicial(_) => Kind::Simplicial,
            Input::PinModel(_) => Kind::PinModel,
            Input::SOneModel(_) => Kind::SOneModel,
            Input::UComplex(_) => Kind::UComplex,
            Input::Seifert(_) => Kind::Seifert,
        }
    }

    /// Fails only for Seifert matrices with entries beyond 64 bits.
    pub fn to_json(&self) -> Result<Value> {
        Ok(match self {
            Input::Simplicial(k) => complex_to_json(k),
            Input::PinModel(m) => pin_to_json(m),
            Input::SOneModel(m) => s1_to_json(m),
            Input::UComplex(u) => u_complex_to_json(u),
            Input::Seifert(v) => seifert_to_json(v)?,
        })
    }
}

impl PartialEq for Input {
    fn eq(&self, other: &Input) -> bool {
        match (self, other) {
            (Input::Simplicial(a), Input::Simplicial(b)) => a == b,
            (Input::PinModel(a), Input::PinModel(b)) => a == b,
            (Input::SOneModel(a), Input::SOneModel(b)) => a == b,
            (Input::UComplex(a), Input::UComplex(b)) => a == b,
            (Input::Seifert(a), Input::Seifert(b)) => a == b,
            _ => false,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexFile {
    vertices: Vec<Vertex>,
    facets: Vec<Vec<Vertex>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneratorFile {
    label: String,
    degree: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PinTowerEntry {
    from: String,
    a: u8,
    b: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PinFile {
    reducible_degree: Option<i64>,
    finite: Vec<GeneratorFile>,
    q: Vec<Vec<u8>>,
    v: Vec<Vec<u8>>,
    d_fin: Vec<Vec<u8>>,
    d_to_tower: Vec<PinTowerEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct S1TowerEntry {
    from: String,
    b: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct S1File {
    reducible_degree: Option<i64>,
    finite: Vec<GeneratorFile>,
    u: Vec<Vec<u8>>,
    d_fin: Vec<Vec<u8>>,
    d_to_tower: Vec<S1TowerEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UEntryFile {
    from: String,
    to: String,
    upower: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UComplexFile {
    generators: Vec<GeneratorFile>,
    differential: Vec<UEntryFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    iota: Option<Vec<UEntryFile>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeifertFile {
    matrix: Vec<Vec<i64>>,
}

fn parse_value(text: &str) -> Result<Value> {
    if text.len() > MAX_INPUT_BYTES {
        return Err(Error::input(format!(
            "input exceeds {MAX_INPUT_BYTES} bytes"
        )));
    }
    serde_json::from_str(text).map_err(|e| Error::input(format!("invalid JSON: {e}")))
}

/// Removes and returns the `"kind"` tag.
fn take_kind(value: &mut Value) -> Result<Option<Kind>> {
    let Value::Object(map) = value else {
        return Err(Error::input("top level must be a JSON object"));
    };
    match map.remove("kind") {
        None => Ok(None),
        Some(Value::String(tag)) => Kind::from_tag(&tag)
            .map(Some)
            .ok_or_else(|| Error::input(format!("unknown kind {tag:?}"))),
        Some(other) => Err(Error::input(format!("kind must be a string, got {other}"))),
    }
}

fn expect_kind(text: &str, kind: Kind) -> Result<Value> {
    let mut value = parse_value(text)?;
    match take_kind(&mut value)? {
        Some(k) if k != kind => Err(Error::input(format!(
            "expected kind {:?}, got {:?}",
            kind.tag(),
            k.tag()
        ))),
        _ => Ok(value),
    }
}

fn schema<T: for<'de> Deserialize<'de>>(value: Value, kind: Kind) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::input(format!("{} schema: {e}", kind.tag())))
}

/// Dispatches on the `"kind"` field.
pub fn parse_input(text: &str) -> Result<Input> {
    let mut value = parse_value(text)?;
    let kind = take_kind(&mut value)?.ok_or_else(|| {
        let tags: Vec<&str> = Kind::ALL.iter().map(|k| k.tag()).collect();
        Error::input(format!("missing \"kind\" (one of {})", tags.join(", ")))
    })?;
    Ok(match kind {
        Kind::Simplicial => Input::Simplicial(complex_from_value(value)?),
        Kind::PinModel => Input::PinModel(pin_from_value(value)?),
        Kind::SOneModel => Input::SOneModel(s1_from_value(value)?),
        Kind::UComplex => Input::UComplex(u_complex_from_value(value)?),
        Kind::Seifert => Input::Seifert(seifert_from_value(value)?),
    })
}

pub fn parse_complex(text: &str) -> Result<AbstractComplex> {
    complex_from_value(expect_kind(text, Kind::Simplicial)?)
}

pub fn parse_pin_model(text: &str) -> Result<PinModel> {
    pin_from_value(expect_kind(text, Kind::PinModel)?)
}

pub fn parse_s1_model(text: &str) -> Result<SOneModel> {
    s1_from_value(expect_kind(text, Kind::SOneModel)?)
}

pub fn parse_u_complex(text: &str) -> Result<InvolutiveInput> {
    u_complex_from_value(expect_kind(text, Kind::UComplex)?)
}

pub fn parse_seifert(text: &str) -> Result<SeifertMatrix> {
    seifert_from_value(expect_kind(text, Kind::Seifert)?)
}

fn complex_from_value(value: Value) -> Result<AbstractComplex> {
    let f: ComplexFile = schema(value, Kind::Simplicial)?;
    AbstractComplex::validate(&f.vertices, &f.facets)
}

fn generators(files: Vec<GeneratorFile>) -> Result<(Vec<Generator>, HashMap<String, usize>)> {
    if files.len() > MAX_GENERATORS {
        return Err(Error::input(format!(
            "{} generators exceed the limit {MAX_GENERATORS}",
            files.len()
        )));
    }
    let mut index = HashMap::new();
    let gens: Vec<Generator> = files
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            if index.insert(g.label.clone(), i).is_some() {
                return Err(Error::input(format!(
                    "duplicate generator label {:?}",
                    g.label
                )));
            }
            Ok(Generator {
                label: g.label,
                degree: g.degree,
            })
        })
        .collect::<Result<_>>()?;
    Ok((gens, index))
}

fn lookup(index: &HashMap<String, usize>, label: &str) -> Result<usize> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| Error::input(format!("unknown generator label {label:?}")))
}

/// `rows[i][j] = 1` when the image of generator `j` contains generator `i`.
fn matrix(name: &str, rows: &[Vec<u8>], n: usize) -> Result<F2Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::input(format!("{name} must be a {n}x{n} matrix")));
    }
    if rows.iter().flatten().any(|&x| x > 1) {
        return Err(Error::input(format!("{name} entries must be 0 or 1")));
    }
    Ok(F2Matrix::from_fn(n, n, |i, j| rows[i][j] == 1))
}

fn matrix_rows(m: &F2Matrix) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| u8::from(m.get(i, j))).collect())
        .collect()
}

fn generator_files(gens: &[Generator]) -> Vec<GeneratorFile> {
    gens.iter()
        .map(|g| GeneratorFile {
            label: g.label.clone(),
            degree: g.degree,
        })
        .collect()
}

fn pin_from_value(value: Value) -> Result<PinModel> {
    let f: PinFile = schema(value, Kind::PinModel)?;
    let (gens, index) = generators(f.finite)?;
    let n = gens.len();
    let tower = f
        .d_to_tower
        .iter()
        .map(|e| Ok((lookup(&index, &e.from)?, TowerElement { a: e.a, b: e.b })))
        .collect::<Result<Vec<_>>>()?;
    PinModel::new(
        f.reducible_degree,
        gens,
        matrix("q", &f.q, n)?,
        matrix("v", &f.v, n)?,
        matrix("d_fin", &f.d_fin, n)?,
        &tower,
    )
}

fn s1_from_value(value: Value) -> Result<SOneModel> {
    let f: S1File = schema(value, Kind::SOneModel)?;
    let (gens, index) = generators(f.finite)?;
    let n = gens.len();
    let tower = f
        .d_to_tower
        .iter()
        .map(|e| Ok((lookup(&index, &e.from)?, e.b)))
        .collect::<Result<Vec<_>>>()?;
    SOneModel::new(
        f.reducible_degree,
        gens,
        matrix("u", &f.u, n)?,
        matrix("d_fin", &f.d_fin, n)?,
        &tower,
    )
}

fn u_entries(index: &HashMap<String, usize>, files: &[UEntryFile]) -> Result<Vec<UEntry>> {
    files
        .iter()
        .map(|e| {
            Ok(UEntry {
                from: lookup(index, &e.from)?,
                to: lookup(index, &e.to)?,
                upower: e.upower,
            })
        })
        .collect()
}

fn u_entry_files(gens: &[Generator], entries: &[UEntry]) -> Vec<UEntryFile> {
    entries
        .iter()
        .map(|e| UEntryFile {
            from: gens[e.from].label.clone(),
            to: gens[e.to].label.clone(),
            upower: e.upower,
        })
        .collect()
}

fn u_complex_from_value(value: Value) -> Result<InvolutiveInput> {
    let f: UComplexFile = schema(value, Kind::UComplex)?;
    let (gens, index) = generators(f.generators)?;
    let differential = u_entries(&index, &f.differential)?;
    let complex = UComplex::from_entries(gens, &differential)?;
    let iota = match f.iota {
        Some(entries) => Some(complex.iota_from_entries(&u_entries(&index, &entries)?)?),
        None => None,
    };
    Ok(InvolutiveInput { complex, iota })
}

fn seifert_from_value(value: Value) -> Result<SeifertMatrix> {
    let f: SeifertFile = schema(value, Kind::Seifert)?;
    SeifertMatrix::from_rows(&f.matrix)
}

fn tagged<T: Serialize>(kind: Kind, body: &T) -> Value {
    let mut value = serde_json::to_value(body).expect("file structs serialize");
    if let Value::Object(map) = &mut value {
        map.insert("kind".into(), Value::String(kind.tag().into()));
    }
    value
}

pub fn complex_to_json(k: &AbstractComplex) -> Value {
    tagged(
        Kind::Simplicial,
        &ComplexFile {
            vertices: k.vertices().iter().copied().collect(),
            facets: k.facets().iter().map(|s| s.vertices().to_vec()).collect(),
        },
    )
}

pub fn pin_to_json(m: &PinModel) -> Value {
    let gens = m.generators();
    tagged(
        Kind::PinModel,
        &PinFile {
            reducible_degree: m.reducible_degree(),
            finite: generator_files(gens),
            q: matrix_rows(m.q()),
            v: matrix_rows(m.v()),
            d_fin: matrix_rows(m.d_fin()),
            d_to_tower: m
                .d_to_tower()
                .into_iter()
                .map(|(j, e)| PinTowerEntry {
                    from: gens[j].label.clone(),
                    a: e.a,
                    b: e.b,
                })
                .collect(),
        },
    )
}

pub fn s1_to_json(m: &SOneModel) -> Value {
    let gens = m.generators();
    tagged(
        Kind::SOneModel,
        &S1File {
            reducible_degree: m.reducible_degree(),
            finite: generator_files(gens),
            u: matrix_rows(m.u()),
            d_fin: matrix_rows(m.d_fin()),
            d_to_tower: m
                .d_to_tower()
                .into_iter()
                .map(|(j, b)| S1TowerEntry {
                    from: gens[j].label.clone(),
                    b,
                })
                .collect(),
        },
    )
}

pub fn u_complex_to_json(u: &InvolutiveInput) -> Value {
    let gens = u.complex.generators();
    tagged(
        Kind::UComplex,
        &UComplexFile {
            generators: generator_files(gens),
            differential: u_entry_files(gens, &u.complex.entries()),
            iota: u
                .iota
                .as_ref()
                .map(|i| u_entry_files(gens, &i.entries(&u.complex))),
        },
    )
}

pub fn seifert_to_json(v: &SeifertMatrix) -> Result<Value> {
    let rows = v
        .matrix()
        .to_rows()
        .into_iter()
        .take(v.size())
        .map(|r| {
            r.iter()
                .map(|x| {
                    x.to_i64()
                        .ok_or_else(|| Error::input(format!("entry {x} does not fit in 64 bits")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(tagged(Kind::Seifert, &SeifertFile { matrix: rows }))
}

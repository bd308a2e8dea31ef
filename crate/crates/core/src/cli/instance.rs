//! The JSON instance format.
//!
//! ```json
//! {
//!   "field": "q" | {"fp": 101},
//!   "quiver": {"vertices": 2, "arrows": [[1, 0]]},
//!   "mode": "vector" | "p1",
//!   "twists": [1]            // vector: dim M_a;  p1: [[-2]], twists of M_a
//!   "modules": {
//!     "V": {"dims": [1, 1], "phi": [[[1]]]},                  // vector
//!     "V": {"twists": [[0], [0]], "phi": [[[["1"]]]]}          // p1
//!   }
//! }
//! ```
//!
//! Vector maps are row-major matrices of `M_a (x) V_ta -> V_ha`. Sheaf maps
//! are matrices of binary forms, one coefficient list per entry (`x^d`
//! first, empty for negative degree), with columns in the sorted order of
//! `M_a (x) V_ta`. Scalars are integers for prime fields and strings such
//! as `"3/2"` for the rationals; both spellings are accepted on input.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::linalg::Matrix;
use crate::p1::{BinForm, FormMatrix, QSheafP1, SplitBundle};
use crate::quiver::Quiver;
use crate::twisted::{TwistData, TwistedRep};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub field: FieldDoc,
    pub quiver: QuiverDoc,
    pub mode: Mode,
    pub twists: Vec<Value>,
    pub modules: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDoc {
    Named(String),
    Prime(PrimeDoc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeDoc {
    pub fp: u64,
}

impl FieldDoc {
    pub fn from_spec(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rationals => FieldDoc::Named("q".into()),
            FieldSpec::Prime(p) => FieldDoc::Prime(PrimeDoc { fp: p }),
        }
    }

    pub fn spec(&self) -> Result<FieldSpec> {
        let spec = match self {
            FieldDoc::Named(s) if s == "q" => FieldSpec::Rationals,
            FieldDoc::Named(s) => return Err(Error::Validation(format!("field: unknown field `{s}`"))),
            FieldDoc::Prime(p) => FieldSpec::Prime(p.fp),
        };
        spec.validate().map_err(|e| Error::Validation(format!("field: {e}")))?;
        Ok(spec)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Vector,
    P1,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Vector => "vector",
            Mode::P1 => "p1",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    pub fn of<F: Field>(f: F, x: &F::Elem) -> Self {
        let s = f.format(x);
        match f.spec() {
            FieldSpec::Prime(_) => Scalar::Int(s.parse().expect("residues fit in i64")),
            FieldSpec::Rationals => Scalar::Str(s),
        }
    }

    fn value<F: Field>(&self, f: F, path: &str) -> Result<F::Elem> {
        let parsed = match self {
            Scalar::Int(n) => f.parse(&n.to_string()),
            Scalar::Str(s) => f.parse(s),
        };
        parsed.map_err(|e| Error::Validation(format!("{path}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorModuleDoc {
    pub dims: Vec<usize>,
    pub phi: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SheafModuleDoc {
    pub twists: Vec<Vec<i64>>,
    pub phi: Vec<Vec<Vec<Vec<Scalar>>>>,
}

/// A validated module.
#[derive(Clone, Debug, PartialEq)]
pub enum Module<F: Field> {
    Vector(TwistedRep<F>),
    Sheaf(QSheafP1<F>),
}

#[derive(Clone, Debug)]
pub struct Instance<F: Field> {
    pub mode: Mode,
    pub quiver: Quiver,
    pub modules: Vec<(String, Module<F>)>,
}

impl<F: Field> Instance<F> {
    pub fn module(&self, name: &str) -> Result<&Module<F>> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Validation(format!("modules.{name}: no such module")))
    }

    pub fn vector(&self, name: &str) -> Result<&TwistedRep<F>> {
        match self.module(name)? {
            Module::Vector(v) => Ok(v),
            Module::Sheaf(_) => Err(Error::Incompatible(format!(
                "modules.{name} is a p1 module, expected vector mode"
            ))),
        }
    }

    pub fn sheaf(&self, name: &str) -> Result<&QSheafP1<F>> {
        match self.module(name)? {
            Module::Sheaf(v) => Ok(v),
            Module::Vector(_) => Err(Error::Incompatible(format!(
                "modules.{name} is a vector module, expected p1 mode"
            ))),
        }
    }
}

/// Byte offset of a `serde_json` error inside `text`.
fn byte_offset(text: &str, e: &serde_json::Error) -> usize {
    if e.is_eof() || e.line() == 0 {
        return text.len();
    }
    let prefix: usize = text.split_inclusive('\n').take(e.line() - 1).map(str::len).sum();
    (prefix + e.column().saturating_sub(1)).min(text.len())
}

/// Syntax errors are parse errors; everything else is a validation error
/// naming the JSON path.
pub fn parse_document(text: &str) -> Result<InstanceDoc> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("byte offset {}: {e}", byte_offset(text, &e))))?;
    typed(value, "")
}

fn typed<T: for<'de> Deserialize<'de>>(value: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = match (prefix.is_empty(), inner == ".") {
            (true, _) => inner,
            (false, true) => prefix.to_string(),
            (false, false) if inner.starts_with('[') => format!("{prefix}{inner}"),
            (false, false) => format!("{prefix}.{inner}"),
        };
        Error::Validation(format!("{path}: {}", e.into_inner()))
    })
}

fn build_quiver(doc: &QuiverDoc) -> Result<Quiver> {
    if doc.vertices == 0 {
        return Err(Error::Validation("quiver.vertices: need at least one vertex".into()));
    }
    for (k, [t, h]) in doc.arrows.iter().enumerate() {
        if *t >= doc.vertices || *h >= doc.vertices {
            return Err(Error::Validation(format!(
                "quiver.arrows[{k}]: endpoint outside 0..{}",
                doc.vertices
            )));
        }
    }
    Quiver::new(doc.vertices, doc.arrows.iter().map(|[t, h]| (*t, *h)).collect())
        .map_err(|e| Error::Validation(format!("quiver: {e}")))
}

fn matrix<F: Field>(f: F, rows: &[Vec<Scalar>], shape: (usize, usize), path: &str) -> Result<Matrix<F>> {
    if rows.len() != shape.0 {
        return Err(Error::Validation(format!(
            "{path}: expected {} rows, found {}",
            shape.0,
            rows.len()
        )));
    }
    let mut data = Vec::with_capacity(shape.0 * shape.1);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != shape.1 {
            return Err(Error::Validation(format!(
                "{path}[{r}]: expected {} columns, found {}",
                shape.1,
                row.len()
            )));
        }
        for (c, x) in row.iter().enumerate() {
            data.push(x.value(f, &format!("{path}[{r}][{c}]"))?);
        }
    }
    Matrix::from_vec(f, shape.0, shape.1, data)
}

fn vector_module<F: Field>(f: F, q: &Quiver, t: &TwistData, name: &str, value: Value) -> Result<TwistedRep<F>> {
    let base = format!("modules.{name}");
    let doc: VectorModuleDoc = typed(value, &base)?;
    if doc.dims.len() != q.n_vertices() {
        return Err(Error::Validation(format!(
            "{base}.dims: expected {} entries, found {}",
            q.n_vertices(),
            doc.dims.len()
        )));
    }
    if doc.phi.len() != q.n_arrows() {
        return Err(Error::Validation(format!(
            "{base}.phi: expected {} matrices, found {}",
            q.n_arrows(),
            doc.phi.len()
        )));
    }
    let maps = doc
        .phi
        .iter()
        .enumerate()
        .map(|(a, m)| {
            let shape = (doc.dims[q.head(a)], t.dim(a) * doc.dims[q.tail(a)]);
            matrix(f, m, shape, &format!("{base}.phi[{a}]"))
        })
        .collect::<Result<Vec<_>>>()?;
    TwistedRep::new(f, q.clone(), t.clone(), doc.dims, maps).map_err(|e| Error::Validation(format!("{base}: {e}")))
}

fn bundle(twists: Vec<i64>, path: &str) -> Result<SplitBundle> {
    SplitBundle::new(twists).map_err(|e| Error::Validation(format!("{path}: {e}")))
}

fn sheaf_module<F: Field>(f: F, q: &Quiver, m: &[SplitBundle], name: &str, value: Value) -> Result<QSheafP1<F>> {
    let base = format!("modules.{name}");
    let doc: SheafModuleDoc = typed(value, &base)?;
    if doc.twists.len() != q.n_vertices() {
        return Err(Error::Validation(format!(
            "{base}.twists: expected {} bundles, found {}",
            q.n_vertices(),
            doc.twists.len()
        )));
    }
    let bundles = doc
        .twists
        .into_iter()
        .enumerate()
        .map(|(i, t)| bundle(t, &format!("{base}.twists[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if doc.phi.len() != q.n_arrows() {
        return Err(Error::Validation(format!(
            "{base}.phi: expected {} matrices, found {}",
            q.n_arrows(),
            doc.phi.len()
        )));
    }
    let mut maps = Vec::with_capacity(q.n_arrows());
    for (a, rows) in doc.phi.iter().enumerate() {
        let path = format!("{base}.phi[{a}]");
        let (src, _) = m[a].tensor(&bundles[q.tail(a)]);
        let tgt = &bundles[q.head(a)];
        if rows.len() != tgt.rank() {
            return Err(Error::Validation(format!(
                "{path}: expected {} rows, found {}",
                tgt.rank(),
                rows.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != src.rank() {
                return Err(Error::Validation(format!(
                    "{path}[{r}]: expected {} columns, found {}",
                    src.rank(),
                    row.len()
                )));
            }
            let mut forms = Vec::with_capacity(row.len());
            for (c, coeffs) in row.iter().enumerate() {
                let p = format!("{path}[{r}][{c}]");
                let d = tgt.twist(r) - src.twist(c);
                let values = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, x)| x.value(f, &format!("{p}[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                forms.push(BinForm::new(d, values).map_err(|e| Error::Validation(format!("{p}: {e}")))?);
            }
            entries.push(forms);
        }
        maps.push(FormMatrix::new(src, tgt.clone(), entries).map_err(|e| Error::Validation(format!("{path}: {e}")))?);
    }
    QSheafP1::new(f, q.clone(), m.to_vec(), bundles, maps).map_err(|e| Error::Validation(format!("{base}: {e}")))
}

/// Re-validates every shape in the document over the field `f`.
pub fn build_instance<F: Field>(f: F, doc: &InstanceDoc) -> Result<Instance<F>> {
    let q = build_quiver(&doc.quiver)?;
    if doc.twists.len() != q.n_arrows() {
        return Err(Error::Validation(format!(
            "twists: expected {} entries, found {}",
            q.n_arrows(),
            doc.twists.len()
        )));
    }
    let modules = match doc.mode {
        Mode::Vector => {
            let dims = doc
                .twists
                .iter()
                .enumerate()
                .map(|(a, v)| {
                    let d: usize = typed(v.clone(), &format!("twists[{a}]"))?;
                    if d == 0 {
                        return Err(Error::Validation(format!(
                            "twists[{a}]: twist dimension must be positive"
                        )));
                    }
                    Ok(d)
                })
                .collect::<Result<Vec<_>>>()?;
            let t = TwistData::new(dims)?;
            doc.modules
                .iter()
                .map(|(name, v)| Ok((name.clone(), Module::Vector(vector_module(f, &q, &t, name, v.clone())?))))
                .collect::<Result<Vec<_>>>()?
        }
        Mode::P1 => {
            let m = doc
                .twists
                .iter()
                .enumerate()
                .map(|(a, v)| {
                    let path = format!("twists[{a}]");
                    let b = bundle(typed(v.clone(), &path)?, &path)?;
                    if b.is_zero() {
                        return Err(Error::Validation(format!("{path}: twisting bundle must be nonzero")));
                    }
                    Ok(b)
                })
                .collect::<Result<Vec<_>>>()?;
            doc.modules
                .iter()
                .map(|(name, v)| Ok((name.clone(), Module::Sheaf(sheaf_module(f, &q, &m, name, v.clone())?))))
                .collect::<Result<Vec<_>>>()?
        }
    };
    Ok(Instance {
        mode: doc.mode,
        quiver: q,
        modules,
    })
}

fn quiver_doc(q: &Quiver) -> QuiverDoc {
    QuiverDoc {
        vertices: q.n_vertices(),
        arrows: q.arrows().iter().map(|a| [a.tail, a.head]).collect(),
    }
}

fn scalar_rows<F: Field>(m: &Matrix<F>) -> Vec<Vec<Scalar>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(|x| Scalar::of(m.field(), x)).collect())
        .collect()
}

/// Document for a family of vector-mode modules over one quiver.
pub fn vector_document<F: Field>(modules: &[(&str, &TwistedRep<F>)]) -> InstanceDoc {
    let first = modules.first().expect("at least one module").1;
    InstanceDoc {
        field: FieldDoc::from_spec(first.field().spec()),
        quiver: quiver_doc(first.quiver()),
        mode: Mode::Vector,
        twists: first.twist().dims().iter().map(|&d| Value::from(d)).collect(),
        modules: modules
            .iter()
            .map(|(name, v)| {
                let doc = VectorModuleDoc {
                    dims: v.dims().to_vec(),
                    phi: v.maps().iter().map(scalar_rows).collect(),
                };
                (name.to_string(), serde_json::to_value(doc).expect("serialisable"))
            })
            .collect(),
    }
}

/// Document for a family of sheaf modules over one quiver.
pub fn sheaf_document<F: Field>(modules: &[(&str, &QSheafP1<F>)]) -> InstanceDoc {
    let first = modules.first().expect("at least one module").1;
    let f = first.field();
    InstanceDoc {
        field: FieldDoc::from_spec(f.spec()),
        quiver: quiver_doc(first.quiver()),
        mode: Mode::P1,
        twists: first
            .twists()
            .iter()
            .map(|b| serde_json::to_value(b).expect("serialisable"))
            .collect(),
        modules: modules
            .iter()
            .map(|(name, v)| {
                let doc = SheafModuleDoc {
                    twists: v.bundles().iter().map(|b| b.twists().to_vec()).collect(),
                    phi: v
                        .maps()
                        .iter()
                        .map(|p| {
                            p.entries()
                                .iter()
                                .map(|row| {
                                    row.iter()
                                        .map(|e| e.coeffs().iter().map(|x| Scalar::of(f, x)).collect())
                                        .collect()
                                })
                                .collect()
                        })
                        .collect(),
                };
                (name.to_string(), serde_json::to_value(doc).expect("serialisable"))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    const TRIPLE: &str = r#"{
  "field": "q",
  "quiver": {"vertices": 2, "arrows": [[1, 0]]},
  "mode": "vector",
  "twists": [1],
  "modules": {
    "V": {"dims": [0, 1], "phi": [[]]},
    "W": {"dims": [1, 0], "phi": [[[]]]}
  }
}"#;

    #[test]
    fn loads_triple() {
        let doc = parse_document(TRIPLE).unwrap();
        let inst = build_instance(Rationals, &doc).unwrap();
        assert_eq!(inst.vector("V").unwrap().dims(), &[0, 1]);
        assert!(matches!(inst.sheaf("V"), Err(Error::Incompatible(_))));
        assert!(matches!(inst.module("X"), Err(Error::Validation(_))));
    }

    #[test]
    fn syntax_error_names_offset() {
        let e = parse_document("{\"field\": }").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("byte offset 10")), "{e}");
        let e = parse_document("{\"field\"").unwrap_err();
        assert!(matches!(&e, Error::Parse(m) if m.contains("byte offset 8")), "{e}");
    }

    #[test]
    fn unknown_keys_are_rejected_with_path() {
        let text = TRIPLE.replace("\"dims\": [0, 1]", "\"dims\": [0, 1], \"extra\": 1");
        let doc = parse_document(&text).unwrap();
        let e = build_instance(Rationals, &doc).unwrap_err();
        assert!(matches!(&e, Error::Validation(m) if m.starts_with("modules.V")), "{e}");
        let text = TRIPLE.replace("\"mode\"", "\"colour\": 1, \"mode\"");
        let e = parse_document(&text).unwrap_err();
        assert!(matches!(&e, Error::Validation(_)), "{e}");
    }

    #[test]
    fn bad_entry_path() {
        let text = TRIPLE
            .replace("[[[]]]", "[[[\"1/0\"]]]")
            .replace("\"dims\": [1, 0]", "\"dims\": [1, 1]");
        let doc = parse_document(&text).unwrap();
        let e = build_instance(Rationals, &doc).unwrap_err();
        assert!(
            matches!(&e, Error::Validation(m) if m.starts_with("modules.W.phi[0][0][0]")),
            "{e}"
        );
    }

    #[test]
    fn residues_must_be_canonical() {
        let text = TRIPLE
            .replace("\"q\"", "{\"fp\": 5}")
            .replace("[[[]]]", "[[[7]]]")
            .replace("\"dims\": [1, 0]", "\"dims\": [1, 1]");
        let doc = parse_document(&text).unwrap();
        let f = PrimeField::new(5).unwrap();
        assert!(build_instance(f, &doc).is_err());
    }

    #[test]
    fn document_round_trip() {
        let doc = parse_document(TRIPLE).unwrap();
        let inst = build_instance(Rationals, &doc).unwrap();
        let mods: Vec<(&str, &TwistedRep<Rationals>)> = inst
            .modules
            .iter()
            .map(|(n, m)| match m {
                Module::Vector(v) => (n.as_str(), v),
                Module::Sheaf(_) => unreachable!(),
            })
            .collect();
        let again = vector_document(&mods);
        assert_eq!(again, doc);
    }
}

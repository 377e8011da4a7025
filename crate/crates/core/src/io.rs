//! JSON documents holding a complex and its named data.
//!
//! Layout:
//!
//! ```text
//! {
//!   "group":   { "generators": 2, "relators": [[1, 2, -1, -2]] },
//!   "complex": { "cell_counts": [1, 2, 1],
//!                "boundaries": [ [[row, col, [["coef", word], ...]], ...], ... ] },
//!   "labels":  [[null], [null, null], [null]],
//!   "cocycles":  { "phi0": ["1", "0"] },
//!   "quotients": { "q2": { "degree": 2, "images": [[2, 1], [1, 2]] } },
//!   "flags":     { "irreducible": true, ... },
//!   "pairing":   [[[d, i], [d, j]], ...],
//!   "certificate": [ { "a": [["1"]], "b": [["1"]] } ]
//! }
//! ```
//!
//! Words are arrays of signed 1-based generator indices, integers are decimal
//! strings, quotient images are 1-based. `boundaries[d-1]` lists the nonzero
//! entries of `∂_d`. Only `group`, `complex` and `labels` are required.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::chain::{Cell, EquivariantComplex};
use crate::error::{Error, Result};
use crate::group_ring::{Cocycle, FiniteQuotient, FpGroup, GroupRingElement, GroupRingMatrix, Word};
use crate::sutured::{DeclaredFlags, ProductCertificateInput, SuturedComplex};

/// A complex with named cocycles and quotients and optional sutured data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub complex: EquivariantComplex,
    pub cocycles: BTreeMap<String, Cocycle>,
    pub quotients: BTreeMap<String, FiniteQuotient>,
    pub flags: Option<DeclaredFlags>,
    pub pairing: Vec<(Cell, Cell)>,
    pub certificate: Option<ProductCertificateInput>,
}

impl Document {
    pub fn new(complex: EquivariantComplex) -> Self {
        Document {
            complex,
            cocycles: BTreeMap::new(),
            quotients: BTreeMap::new(),
            flags: None,
            pairing: Vec::new(),
            certificate: None,
        }
    }

    pub fn from_sutured(sc: SuturedComplex) -> Self {
        let mut doc = Document::new(sc.space);
        doc.flags = Some(sc.flags);
        doc.pairing = sc.pairing;
        doc
    }

    pub fn with_cocycle(mut self, name: &str, values: Vec<i64>) -> Self {
        self.cocycles.insert(name.to_string(), Cocycle::new(values));
        self
    }

    pub fn with_quotient(mut self, name: &str, q: FiniteQuotient) -> Self {
        self.quotients.insert(name.to_string(), q);
        self
    }

    pub fn is_sutured(&self) -> bool {
        self.flags.is_some()
    }

    /// The sutured view; needs declared flags.
    pub fn sutured(&self) -> Result<SuturedComplex> {
        let flags = self
            .flags
            .ok_or_else(|| Error::Format("document has no `flags` field, so it is not sutured data".into()))?;
        Ok(SuturedComplex {
            space: self.complex.clone(),
            flags,
            pairing: self.pairing.clone(),
        })
    }

    pub fn cocycle(&self, name: &str) -> Result<&Cocycle> {
        self.cocycles
            .get(name)
            .ok_or_else(|| Error::Format(format!("no cocycle named {name:?}")))
    }

    pub fn quotient(&self, name: &str) -> Result<&FiniteQuotient> {
        self.quotients
            .get(name)
            .ok_or_else(|| Error::Format(format!("no quotient named {name:?}")))
    }
}

type EntryDoc = (usize, usize, Vec<(String, Word)>);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    generators: usize,
    relators: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    cell_counts: Vec<usize>,
    boundaries: Vec<Vec<EntryDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuotientDoc {
    degree: usize,
    images: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDoc {
    a: Vec<Vec<String>>,
    b: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    group: GroupDoc,
    complex: ComplexDoc,
    labels: Vec<Vec<Option<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    cocycles: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    quotients: BTreeMap<String, QuotientDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    flags: Option<DeclaredFlags>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pairing: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<CertificateDoc>>,
}

fn int_matrix_doc(m: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect()
}

fn parse_int(s: &str, field: &str) -> Result<BigInt> {
    BigInt::from_str(s).map_err(|_| Error::Format(format!("{field}: {s:?} is not a decimal integer")))
}

fn parse_int_matrix(m: &[Vec<String>], field: &str) -> Result<Vec<Vec<BigInt>>> {
    m.iter()
        .map(|r| r.iter().map(|s| parse_int(s, field)).collect())
        .collect()
}

fn to_file(doc: &Document) -> FileDoc {
    let x = &doc.complex;
    let boundaries = x
        .boundaries()
        .iter()
        .map(|b| {
            b.nonzero()
                .map(|(i, j, e)| (i, j, e.terms().map(|(w, c)| (c.to_string(), w.clone())).collect()))
                .collect()
        })
        .collect();
    FileDoc {
        group: GroupDoc {
            generators: x.group().generator_count(),
            relators: x.group().relators().to_vec(),
        },
        complex: ComplexDoc {
            cell_counts: x.cell_counts().to_vec(),
            boundaries,
        },
        labels: x.labels().to_vec(),
        cocycles: doc
            .cocycles
            .iter()
            .map(|(k, v)| (k.clone(), v.values().iter().map(i64::to_string).collect()))
            .collect(),
        quotients: doc
            .quotients
            .iter()
            .map(|(k, q)| {
                (
                    k.clone(),
                    QuotientDoc {
                        degree: q.degree(),
                        images: q.perms().iter().map(|p| p.iter().map(|&i| i + 1).collect()).collect(),
                    },
                )
            })
            .collect(),
        flags: doc.flags,
        pairing: doc
            .pairing
            .iter()
            .map(|(a, b)| [[a.degree, a.index], [b.degree, b.index]])
            .collect(),
        certificate: doc.certificate.as_ref().map(|c| {
            c.degrees
                .iter()
                .map(|(a, b)| CertificateDoc {
                    a: int_matrix_doc(a),
                    b: int_matrix_doc(b),
                })
                .collect()
        }),
    }
}

fn from_file(f: FileDoc) -> Result<Document> {
    let group = FpGroup::new(f.group.generators, f.group.relators).map_err(|e| Error::Format(format!("group: {e}")))?;
    let counts = f.complex.cell_counts;
    if counts.is_empty() {
        return Err(Error::Format("complex.cell_counts: must list at least degree 0".into()));
    }
    if f.complex.boundaries.len() + 1 != counts.len() {
        return Err(Error::Format(format!(
            "complex.boundaries: expected {} maps, found {}",
            counts.len() - 1,
            f.complex.boundaries.len()
        )));
    }
    let mut boundaries = Vec::with_capacity(counts.len() - 1);
    for (k, entries) in f.complex.boundaries.into_iter().enumerate() {
        let (rows, cols) = (counts[k], counts[k + 1]);
        let mut m = GroupRingMatrix::zeros(rows, cols);
        for (i, j, terms) in entries {
            if i >= rows || j >= cols {
                return Err(Error::Format(format!(
                    "complex.boundaries[{k}]: entry ({i}, {j}) outside {rows}x{cols}"
                )));
            }
            let mut e = GroupRingElement::zero();
            for (c, w) in terms {
                let field = format!("complex.boundaries[{k}] entry ({i}, {j})");
                e.add_term(parse_int(&c, &field)?, w.reduced());
            }
            m.add_to(i, j, &e);
        }
        boundaries.push(m);
    }
    let complex = EquivariantComplex::with_labels(group, counts, boundaries, f.labels)
        .map_err(|e| Error::Format(format!("complex: {e}")))?;

    let mut cocycles = BTreeMap::new();
    for (name, vals) in f.cocycles {
        let values = vals
            .iter()
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| Error::Format(format!("cocycles.{name}: {s:?} is not a 64-bit integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = Cocycle::new(values);
        phi.ensure_valid(complex.group())
            .map_err(|e| Error::Format(format!("cocycles.{name}: {e}")))?;
        cocycles.insert(name, phi);
    }
    let mut quotients = BTreeMap::new();
    for (name, q) in f.quotients {
        let perms = q
            .images
            .iter()
            .map(|p| p.iter().map(|&i| i.checked_sub(1)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Format(format!("quotients.{name}: images are 1-based")))?;
        let fq = FiniteQuotient::new(q.degree, perms).map_err(|e| Error::Format(format!("quotients.{name}: {e}")))?;
        fq.ensure_valid(complex.group())
            .map_err(|e| Error::Format(format!("quotients.{name}: {e}")))?;
        quotients.insert(name, fq);
    }
    let mut pairing = Vec::with_capacity(f.pairing.len());
    for [[da, ia], [db, ib]] in f.pairing {
        for (d, i) in [(da, ia), (db, ib)] {
            if i >= complex.cell_count(d) || d > complex.top_degree() {
                return Err(Error::Format(format!("pairing: no cell {d}:{i}")));
            }
        }
        pairing.push((Cell::new(da, ia), Cell::new(db, ib)));
    }
    let certificate = match f.certificate {
        None => None,
        Some(list) => Some(ProductCertificateInput {
            degrees: list
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    Ok((
                        parse_int_matrix(&c.a, &format!("certificate[{k}].a"))?,
                        parse_int_matrix(&c.b, &format!("certificate[{k}].b"))?,
                    ))
                })
                .collect::<Result<Vec<_>>>()?,
        }),
    };
    Ok(Document {
        complex,
        cocycles,
        quotients,
        flags: f.flags,
        pairing,
        certificate,
    })
}

/// Serializes a document; the output ends with a newline.
pub fn to_text(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_file(doc)).expect("document serializes");
    s.push('\n');
    s
}

/// Parses and validates a document.
pub fn from_text(text: &str) -> Result<Document> {
    let f: FileDoc = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    from_file(f)
}

pub fn load(path: impl AsRef<Path>) -> Result<Document> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_text(&text).map_err(|e| match e {
        Error::Format(m) => Error::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn save(path: impl AsRef<Path>, doc: &Document) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_text(doc)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{product_with_interval, surface};

    #[test]
    fn product_round_trip() {
        let sc = product_with_interval(&surface(1, 0).unwrap()).unwrap();
        let mut doc = Document::from_sutured(sc).with_cocycle("phi0", vec![1, 0]);
        doc.certificate = Some(ProductCertificateInput::identities(&[1, 2, 1]));
        let text = to_text(&doc);
        let back = from_text(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(to_text(&back), text);
    }

    #[test]
    fn relator_violating_cocycle_rejected() {
        let doc = Document::new(crate::builders::fox_complex(
            &FpGroup::new(2, vec![Word::new(vec![1, 2, 1, -2, -1, -2])]).unwrap(),
        )
        .unwrap())
        .with_cocycle("bad", vec![1, 2]);
        let err = from_text(&to_text(&doc)).unwrap_err();
        assert!(err.to_string().contains("cocycles.bad"), "{err}");
    }

    #[test]
    fn missing_labels_named() {
        let doc = Document::new(surface(1, 0).unwrap());
        let mut v: serde_json::Value = serde_json::from_str(&to_text(&doc)).unwrap();
        v.as_object_mut().unwrap().remove("labels");
        let err = from_text(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("labels"), "{err}");
    }

    #[test]
    fn malformed_entries_rejected() {
        let doc = Document::new(surface(1, 0).unwrap());
        let text = to_text(&doc).replacen("\"1\"", "\"one\"", 1);
        assert!(matches!(from_text(&text), Err(Error::Format(_))));
        assert!(matches!(from_text("{"), Err(Error::Format(_))));
    }
}

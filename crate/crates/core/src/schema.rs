//! Self-describing JSON documents for every object, discriminated by `"type"`.
//!
//! Written documents have sorted keys and zero-based indices throughout.

use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteSet, SemigroupTable, Table};
use crate::cascade::{CascadeTriplePure, CascadeTripleSemigroup, Embedding};
use crate::error::{check_size, Error, Result};
use crate::first_type::{PureAutomatonFirst, SemigroupAutomatonFirst};
use crate::group::{MealyElement, MealyMachine};
use crate::second_type::{GeneratorHom, PureAutomatonSecond, SemigroupAutomatonSecond};
use crate::serial::SerialConnection;

/// `{"size": n, "labels": [...]}`; a bare integer is accepted on input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetDoc {
    Full {
        size: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Size(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupDoc {
    pub order: usize,
    pub product: Vec<Vec<usize>>,
    #[serde(default)]
    pub generators: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Document {
    #[serde(rename = "first-pure")]
    FirstPure {
        states: SetDoc,
        inputs: SetDoc,
        outputs: SetDoc,
        next: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
    },
    #[serde(rename = "first-semigroup")]
    FirstSemigroup {
        states: SetDoc,
        semigroup: SemigroupDoc,
        outputs: SetDoc,
        next: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
    },
    #[serde(rename = "second-pure")]
    SecondPure {
        states: SetDoc,
        inputs: SetDoc,
        outputs: SetDoc,
        next: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
    },
    #[serde(rename = "second-semigroup")]
    SecondSemigroup {
        states: SetDoc,
        semigroup: SemigroupDoc,
        sigma: SemigroupDoc,
        next: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
    },
    #[serde(rename = "generator-hom")]
    GeneratorHom {
        alphabet_size: usize,
        target: SemigroupDoc,
        assignment: Vec<usize>,
    },
    #[serde(rename = "cascade-triple")]
    CascadeTriple {
        alpha: Vec<Vec<usize>>,
        beta: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma: Option<SemigroupDoc>,
    },
    #[serde(rename = "serial")]
    Serial {
        first: Box<Document>,
        second: Box<Document>,
        alpha: Vec<Vec<usize>>,
    },
    #[serde(rename = "mealy")]
    Mealy {
        states: SetDoc,
        alphabet: SetDoc,
        next: Vec<Vec<usize>>,
        out: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<usize>,
    },
    #[serde(rename = "embedding")]
    Embedding {
        map: Vec<usize>,
        wreath_order: usize,
        image_order: usize,
        injective: bool,
    },
}

/// A cascade triple as read from a file, before it is checked against its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleSpec {
    pub alpha: Vec<Vec<usize>>,
    pub beta: Vec<usize>,
    pub gamma: Option<SemigroupTable>,
}

impl TripleSpec {
    pub fn to_pure(&self, m1: &PureAutomatonFirst) -> Result<CascadeTriplePure> {
        if self.gamma.is_some() {
            return Err(Error::Invalid("triple has a semigroup; expected a pure triple".into()));
        }
        CascadeTriplePure::from_rows(self.alpha.clone(), m1.inputs().size(), self.beta.clone())
    }

    pub fn to_semigroup(&self, m1: &SemigroupAutomatonFirst) -> Result<CascadeTripleSemigroup> {
        let gamma = self
            .gamma
            .clone()
            .ok_or_else(|| Error::Invalid("semigroup triple needs \"gamma\"".into()))?;
        let alpha = Table::from_rows("alpha", self.alpha.clone(), gamma.order(), m1.gamma().order())?;
        CascadeTripleSemigroup::new(gamma, alpha, self.beta.clone())
    }

    pub fn from_pure(t: &CascadeTriplePure) -> Self {
        Self {
            alpha: t.alpha().to_rows(),
            beta: t.beta().to_vec(),
            gamma: None,
        }
    }

    pub fn from_semigroup(t: &CascadeTripleSemigroup) -> Self {
        Self {
            alpha: t.alpha().to_rows(),
            beta: t.beta().to_vec(),
            gamma: Some(t.gamma().clone()),
        }
    }
}

/// Any object the file format can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Object {
    FirstPure(PureAutomatonFirst),
    FirstSemigroup(SemigroupAutomatonFirst),
    SecondPure(PureAutomatonSecond),
    SecondSemigroup(SemigroupAutomatonSecond),
    GeneratorHom(GeneratorHom),
    CascadeTriple(TripleSpec),
    Serial(SerialConnection),
    Mealy { machine: MealyMachine, initial: Option<usize> },
    Embedding(Embedding),
}

impl Object {
    pub fn type_name(&self) -> &'static str {
        match self {
            Object::FirstPure(_) => "first-pure",
            Object::FirstSemigroup(_) => "first-semigroup",
            Object::SecondPure(_) => "second-pure",
            Object::SecondSemigroup(_) => "second-semigroup",
            Object::GeneratorHom(_) => "generator-hom",
            Object::CascadeTriple(_) => "cascade-triple",
            Object::Serial(_) => "serial",
            Object::Mealy { .. } => "mealy",
            Object::Embedding(_) => "embedding",
        }
    }

    pub fn mealy_element(&self) -> Result<MealyElement> {
        match self {
            Object::Mealy { machine, initial } => MealyElement::new(machine.clone(), initial.unwrap_or(0)),
            other => Err(Error::Invalid(format!("expected a mealy machine, found {}", other.type_name()))),
        }
    }
}

impl From<MealyElement> for Object {
    fn from(e: MealyElement) -> Self {
        Object::Mealy {
            initial: Some(e.initial()),
            machine: e.machine().clone(),
        }
    }
}

fn set_from_doc(doc: &SetDoc, what: &str) -> Result<FiniteSet> {
    match doc {
        SetDoc::Size(n) => FiniteSet::new(*n),
        SetDoc::Full { size, labels: None } => FiniteSet::new(*size),
        SetDoc::Full {
            size,
            labels: Some(labels),
        } => {
            check_size(&format!("{what} labels"), labels.len(), *size)?;
            FiniteSet::with_labels(labels.clone())
        }
    }
    .map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

fn set_to_doc(s: &FiniteSet) -> SetDoc {
    SetDoc::Full {
        size: s.size(),
        labels: s.labels().map(<[String]>::to_vec),
    }
}

fn semigroup_from_doc(doc: &SemigroupDoc, what: &str) -> Result<SemigroupTable> {
    check_size(&format!("{what} order vs product rows"), doc.product.len(), doc.order)?;
    SemigroupTable::new(doc.product.clone(), doc.generators.clone(), doc.names.clone())
        .map_err(|e| Error::Invalid(format!("{what}: {e}")))
}

fn semigroup_to_doc(t: &SemigroupTable) -> SemigroupDoc {
    SemigroupDoc {
        order: t.order(),
        product: t.rows(),
        generators: t.generators().to_vec(),
        names: t.names().map(<[Vec<usize>]>::to_vec),
    }
}

fn table(name: &str, rows: &[Vec<usize>], expect_rows: usize, cols: usize, codomain: usize) -> Result<Table> {
    check_size(&format!("{name} rows"), rows.len(), expect_rows)?;
    Table::from_rows(name, rows.to_vec(), cols, codomain)
}

impl TryFrom<&Document> for Object {
    type Error = Error;

    fn try_from(doc: &Document) -> Result<Object> {
        Ok(match doc {
            Document::FirstPure {
                states,
                inputs,
                outputs,
                next,
                out,
            } => {
                let (a, x, b) = (set_from_doc(states, "states")?, set_from_doc(inputs, "inputs")?, set_from_doc(outputs, "outputs")?);
                let next = table("next", next, a.size(), x.size(), a.size())?;
                let out = table("out", out, a.size(), x.size(), b.size())?;
                Object::FirstPure(PureAutomatonFirst::new(a, x, b, next, out)?)
            }
            Document::FirstSemigroup {
                states,
                semigroup,
                outputs,
                next,
                out,
            } => {
                let a = set_from_doc(states, "states")?;
                let g = semigroup_from_doc(semigroup, "semigroup")?;
                let b = set_from_doc(outputs, "outputs")?;
                let next = table("next", next, a.size(), g.order(), a.size())?;
                let out = table("out", out, a.size(), g.order(), b.size())?;
                Object::FirstSemigroup(SemigroupAutomatonFirst::new(a, g, b, next, out)?)
            }
            Document::SecondPure {
                states,
                inputs,
                outputs,
                next,
                out,
            } => {
                let (a, x, y) = (set_from_doc(states, "states")?, set_from_doc(inputs, "inputs")?, set_from_doc(outputs, "outputs")?);
                let next = table("next", next, a.size(), x.size(), a.size())?;
                let out = table("out", out, a.size(), x.size(), y.size())?;
                Object::SecondPure(PureAutomatonSecond::new(a, x, y, next, out)?)
            }
            Document::SecondSemigroup {
                states,
                semigroup,
                sigma,
                next,
                out,
            } => {
                let a = set_from_doc(states, "states")?;
                let g = semigroup_from_doc(semigroup, "semigroup")?;
                let s = semigroup_from_doc(sigma, "sigma")?;
                let next = table("next", next, a.size(), g.order(), a.size())?;
                let out = table("out", out, a.size(), g.order(), s.order())?;
                Object::SecondSemigroup(SemigroupAutomatonSecond::new(a, g, s, next, out)?)
            }
            Document::GeneratorHom {
                alphabet_size,
                target,
                assignment,
            } => {
                let t = semigroup_from_doc(target, "target")?;
                Object::GeneratorHom(GeneratorHom::new(*alphabet_size, t, assignment.clone())?)
            }
            Document::CascadeTriple { alpha, beta, gamma } => Object::CascadeTriple(TripleSpec {
                alpha: alpha.clone(),
                beta: beta.clone(),
                gamma: gamma.as_ref().map(|g| semigroup_from_doc(g, "gamma")).transpose()?,
            }),
            Document::Serial { first, second, alpha } => {
                let first = match Object::try_from(first.as_ref())? {
                    Object::FirstSemigroup(m) => m,
                    o => return Err(Error::Invalid(format!("serial \"first\" must be first-semigroup, found {}", o.type_name()))),
                };
                let second = match Object::try_from(second.as_ref())? {
                    Object::FirstSemigroup(m) => m,
                    o => return Err(Error::Invalid(format!("serial \"second\" must be first-semigroup, found {}", o.type_name()))),
                };
                let alpha = table("alpha", alpha, first.states().size(), first.gamma().order(), second.gamma().order())?;
                Object::Serial(SerialConnection::new(first, second, alpha)?)
            }
            Document::Mealy {
                states,
                alphabet,
                next,
                out,
                initial,
            } => {
                let (q, x) = (set_from_doc(states, "states")?, set_from_doc(alphabet, "alphabet")?);
                let next = table("next", next, q.size(), x.size(), q.size())?;
                let out = table("out", out, q.size(), x.size(), x.size())?;
                let machine = MealyMachine::new(q, x, next, out)?;
                if let Some(i) = initial {
                    MealyElement::new(machine.clone(), *i)?;
                }
                Object::Mealy {
                    machine,
                    initial: *initial,
                }
            }
            Document::Embedding {
                map,
                wreath_order,
                image_order,
                injective,
            } => Object::Embedding(Embedding {
                map: map.clone(),
                wreath_order: *wreath_order,
                image_order: *image_order,
                injective: *injective,
            }),
        })
    }
}

impl From<&Object> for Document {
    fn from(obj: &Object) -> Document {
        match obj {
            Object::FirstPure(m) => Document::FirstPure {
                states: set_to_doc(m.states()),
                inputs: set_to_doc(m.inputs()),
                outputs: set_to_doc(m.outputs()),
                next: m.next().to_rows(),
                out: m.out().to_rows(),
            },
            Object::FirstSemigroup(m) => Document::FirstSemigroup {
                states: set_to_doc(m.states()),
                semigroup: semigroup_to_doc(m.gamma()),
                outputs: set_to_doc(m.outputs()),
                next: m.next().to_rows(),
                out: m.out().to_rows(),
            },
            Object::SecondPure(m) => Document::SecondPure {
                states: set_to_doc(m.states()),
                inputs: set_to_doc(m.inputs()),
                outputs: set_to_doc(m.outputs()),
                next: m.next().to_rows(),
                out: m.out().to_rows(),
            },
            Object::SecondSemigroup(m) => Document::SecondSemigroup {
                states: set_to_doc(m.states()),
                semigroup: semigroup_to_doc(m.gamma()),
                sigma: semigroup_to_doc(m.sigma()),
                next: m.next().to_rows(),
                out: m.out().to_rows(),
            },
            Object::GeneratorHom(h) => Document::GeneratorHom {
                alphabet_size: h.alphabet_size(),
                target: semigroup_to_doc(h.target()),
                assignment: h.assignment().to_vec(),
            },
            Object::CascadeTriple(t) => Document::CascadeTriple {
                alpha: t.alpha.clone(),
                beta: t.beta.clone(),
                gamma: t.gamma.as_ref().map(semigroup_to_doc),
            },
            Object::Serial(s) => Document::Serial {
                first: Box::new(Document::from(&Object::FirstSemigroup(s.first().clone()))),
                second: Box::new(Document::from(&Object::FirstSemigroup(s.second().clone()))),
                alpha: s.alpha().to_rows(),
            },
            Object::Mealy { machine, initial } => Document::Mealy {
                states: set_to_doc(machine.states()),
                alphabet: set_to_doc(machine.alphabet()),
                next: machine.next().to_rows(),
                out: machine.out().to_rows(),
                initial: *initial,
            },
            Object::Embedding(e) => Document::Embedding {
                map: e.map.clone(),
                wreath_order: e.wreath_order,
                image_order: e.image_order,
                injective: e.injective,
            },
        }
    }
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<Object> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    Object::try_from(&doc)
}

/// Like [`parse`], but a document without `"type"` is read as `default_type`.
pub fn parse_with_default_type(text: &str, default_type: &str) -> Result<Object> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
    if let Some(map) = value.as_object_mut() {
        map.entry("type").or_insert_with(|| default_type.into());
    }
    let doc: Document = serde_json::from_value(value).map_err(|e| Error::Invalid(e.to_string()))?;
    Object::try_from(&doc)
}

/// Canonical JSON text: sorted keys, pretty-printed, trailing newline.
pub fn to_json(obj: &Object) -> String {
    let value = serde_json::to_value(Document::from(obj)).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_CAP;
    use crate::first_type::semigroupify;
    use crate::group::fixtures;

    #[test]
    fn round_trip_of_constructed_objects() {
        let pure = PureAutomatonFirst::from_rows(2, vec![vec![1], vec![0]], vec![vec![0], vec![1]]).unwrap();
        let semi = semigroupify(&pure, DEFAULT_CAP).unwrap();
        for obj in [
            Object::FirstPure(pure),
            Object::FirstSemigroup(semi),
            Object::from(fixtures::grigorchuk('b')),
        ] {
            let text = to_json(&obj);
            assert_eq!(parse(&text).unwrap(), obj, "{text}");
        }
    }

    #[test]
    fn keys_are_sorted() {
        let obj = Object::from(fixtures::odometer());
        let text = to_json(&obj);
        let a = text.find("\"alphabet\"").unwrap();
        let n = text.find("\"next\"").unwrap();
        let t = text.find("\"type\"").unwrap();
        assert!(a < n && n < t);
    }

    #[test]
    fn schema_errors_name_the_entry() {
        let text = r#"{"type":"first-pure","states":2,"inputs":1,"outputs":2,"next":[[1],[2]],"out":[[0],[1]]}"#;
        let err = parse(text).unwrap_err().to_string();
        assert!(err.contains("next[1][0]"), "{err}");

        let text = r#"{"type":"first-pure","states":2,"inputs":1,"outputs":2,"next":[[1]],"out":[[0],[1]]}"#;
        assert!(parse(text).unwrap_err().to_string().contains("next rows"));

        assert!(parse(r#"{"type":"nonsense"}"#).is_err());
        assert!(parse(r#"{"type":"mealy","states":1,"alphabet":2,"next":[[0,0]],"out":[[1,0]],"initial":3}"#).is_err());
    }

    #[test]
    fn untyped_generator_hom() {
        let text = r#"{"alphabet_size":2,"target":{"order":1,"product":[[0]],"generators":[0]},"assignment":[0,0]}"#;
        assert!(parse(text).is_err());
        let obj = parse_with_default_type(text, "generator-hom").unwrap();
        assert_eq!(obj.type_name(), "generator-hom");
        // an explicit type wins
        let typed = to_json(&Object::from(fixtures::odometer()));
        assert_eq!(parse_with_default_type(&typed, "generator-hom").unwrap().type_name(), "mealy");
    }

    #[test]
    fn bare_sizes_and_labels() {
        let text = r#"{"type":"mealy","states":{"size":2,"labels":["p","q"]},"alphabet":2,
                       "next":[[1,0],[1,1]],"out":[[1,0],[0,1]]}"#;
        let obj = parse(text).unwrap();
        let Object::Mealy { machine, initial } = &obj else { panic!() };
        assert_eq!(*initial, None);
        assert_eq!(machine.states().label(1), "q");
        assert_eq!(parse(&to_json(&obj)).unwrap(), obj);
    }
}

//! Structured reports shared by the library and the command-line tool.
//!
//! A [`Report`] serializes to JSON with a versioned `schema` field. The
//! text form is produced by walking that JSON value, so both formats carry
//! the same content.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::linalg::{FieldMatrix, Vector};
use crate::algebra::poly::default_var_names;
use crate::algebra::{CycNum, MPoly};
use crate::crossprod::RelationReport;
use crate::groups::spec::GroupSpec;
use crate::groups::{DecompositionCheck, FamilyInfo, GroupDecomposition, MatrixGroup, Reflection};
use crate::invariants::{linear_form, InvariantSystem};
use crate::laws::LawResult;
use crate::weyl::{VerificationReport, WeylGenerators};

pub const SCHEMA: &str = "weyl-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflections: Option<Vec<ReflectionEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_generators: Option<WeylSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub crossprod: Option<Vec<RelationReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub properties: Option<Vec<LawResult>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            schema: SCHEMA,
            command: command.into(),
            status: Status::Pass,
            error: None,
            families: Vec::new(),
            group: None,
            reflections: None,
            invariants: None,
            weyl_generators: None,
            perturbation: None,
            verification: None,
            decomposition: None,
            crossprod: None,
            example: None,
            properties: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Marks the report failed when `ok` is false; never resets a failure.
    pub fn require(&mut self, ok: bool) {
        if !ok {
            self.status = Status::Fail;
        }
    }

    /// Records an error that stopped the pipeline and marks the report failed.
    pub fn fail_with(&mut self, message: impl Into<String>) {
        self.error = Some(message.into());
        self.status = Status::Fail;
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        render_text(&value)
    }
}

/// The invariant list handed to verification after replacing `e_index` by its square.
#[derive(Clone, Debug, Serialize)]
pub struct Perturbation {
    pub index: usize,
    pub invariants: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    pub conductor: u32,
    pub order: usize,
    pub spec: GroupSpec,
}

impl GroupSection {
    pub fn new(g: &MatrixGroup) -> GroupSection {
        GroupSection {
            label: g.family().map(|f| f.label()),
            n: g.n(),
            conductor: g.conductor(),
            order: g.order(),
            spec: GroupSpec::from_group(g),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflectionEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<usize>,
    pub order: u32,
    pub eigenvalue: String,
    pub root: Vec<String>,
    pub hyperplane: Vec<String>,
    pub linear_form: String,
}

pub fn reflection_entries(refs: &[Reflection], n: usize) -> Vec<ReflectionEntry> {
    let names = default_var_names("x", n);
    refs.iter()
        .map(|r| ReflectionEntry {
            element: r.index,
            order: r.order,
            eigenvalue: r.mu.to_string(),
            root: vector_text(&r.root),
            hyperplane: vector_text(&r.hyperplane),
            linear_form: linear_form(&r.hyperplane).to_string_with(&names),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Discriminant {
    pub base: String,
    pub exponent: u32,
    pub degree: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantSection {
    pub invariants: Vec<String>,
    pub degrees: Vec<u32>,
    pub group_order: usize,
    pub reflection_count: usize,
    pub jacobian: Vec<Vec<String>>,
    pub jprime: String,
    pub j: String,
    pub c: String,
    pub discriminant: Discriminant,
}

impl InvariantSection {
    pub fn new(sys: &InvariantSystem) -> InvariantSection {
        let names = default_var_names("x", sys.group.n());
        let text = |p: &MPoly| p.to_string_with(&names);
        InvariantSection {
            invariants: sys.e.iter().map(text).collect(),
            degrees: sys.degrees.clone(),
            group_order: sys.group.order(),
            reflection_count: sys.reflections.len(),
            jacobian: sys.m.rows().iter().map(|r| r.iter().map(text).collect()).collect(),
            jprime: text(&sys.jprime),
            j: text(&sys.j),
            c: sys.c.to_string(),
            discriminant: Discriminant {
                base: text(&sys.delta.base),
                exponent: sys.delta.exponent,
                degree: sys.delta.degree(),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OperatorTerm {
    pub derivative: String,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorEntry {
    pub name: String,
    /// `(sum_k numerator_k * D_k) / denominator`.
    pub display: String,
    pub terms: Vec<OperatorTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylSection {
    pub denominator: String,
    pub generators: Vec<GeneratorEntry>,
}

impl WeylSection {
    pub fn new(gens: &WeylGenerators) -> WeylSection {
        let n = gens.e.len();
        let names = default_var_names("x", n);
        let denominator = gens.jprime.to_string_with(&names);
        let generators = gens
            .numerators
            .iter()
            .enumerate()
            .map(|(i, nums)| {
                let terms: Vec<OperatorTerm> = nums
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(k, p)| OperatorTerm {
                        derivative: format!("D{}", k + 1),
                        numerator: p.to_string_with(&names),
                        denominator: denominator.clone(),
                    })
                    .collect();
                let sum = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.iter().map(|t| format!("({})*{}", t.numerator, t.derivative)).collect::<Vec<_>>().join(" + ")
                };
                GeneratorEntry { name: format!("d{}", i + 1), display: format!("[{sum}] / ({denominator})"), terms }
            })
            .collect();
        WeylSection { denominator, generators }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorEntry {
    pub order: usize,
    pub dimension: usize,
    pub reflection_count: usize,
    pub basis: Vec<Vec<String>>,
    pub generators: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionSection {
    pub order: usize,
    pub factors: Vec<FactorEntry>,
    pub fixed_subspace: Vec<Vec<String>>,
    pub check: DecompositionCheck,
}

impl DecompositionSection {
    pub fn new(d: &GroupDecomposition) -> DecompositionSection {
        DecompositionSection {
            order: d.order,
            factors: d
                .factors
                .iter()
                .map(|f| FactorEntry {
                    order: f.group.order(),
                    dimension: f.basis.len(),
                    reflection_count: f.reflections.len(),
                    basis: f.basis.iter().map(vector_text).collect(),
                    generators: f.group.generators().iter().map(matrix_text).collect(),
                })
                .collect(),
            fixed_subspace: d.fixed_subspace.iter().map(vector_text).collect(),
            check: d.check(),
        }
    }
}

pub fn vector_text(v: &Vector) -> Vec<String> {
    v.iter().map(CycNum::to_string).collect()
}

pub fn matrix_text(m: &FieldMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(CycNum::to_string).collect()).collect()
}

/// Renders a JSON value as indented `key: value` lines.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, value, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            let joined = format!("[{}]", parts.join(", "));
            (joined.len() <= 100).then_some(joined)
        }
        Value::Array(items) if items.iter().all(|x| inline(x).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(inline).collect();
            let joined = format!("[{}]", parts.join(", "));
            (joined.len() <= 100).then_some(joined)
        }
        _ => None,
    }
}

fn render_into(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = k.replace('_', " ");
                match inline(v) {
                    Some(s) => writeln!(out, "{pad}{key}: {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{key}:").unwrap();
                        render_into(out, v, indent + 1);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                match inline(v) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}- [{}]", i + 1).unwrap();
                        render_into(out, v, indent + 1);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

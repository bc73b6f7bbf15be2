//! JSON group specifications.
//!
//! ```json
//! { "n": 2, "conductor": 3,
//!   "generators": [["z", "0", "0", "1"], ["0", "1", "1", "0"]],
//!   "family": { "name": "G", "rank": 2, "m": 3 } }
//! ```
//!
//! Each generator is a row-major list of `n*n` entries in the cyclotomic
//! text syntax (`z` is the chosen primitive root of unity). A generator may
//! also be given as a list of rows. When `generators` is omitted, `family`
//! supplies them. An optional `invariants` list gives candidate fundamental
//! invariants as polynomials in `x1..xn`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::linalg::FieldMatrix;
use crate::algebra::{CycNum, MPoly, Matrix};

use super::{group_closure, Family, GroupError, MatrixGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRef {
    pub name: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorText {
    Flat(Vec<String>),
    Rows(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub n: usize,
    #[serde(default = "default_conductor")]
    pub conductor: u32,
    #[serde(default)]
    pub generators: Vec<GeneratorText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRef>,
    /// Candidate fundamental invariants in `x1..xn`, for groups without a family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<String>>,
}

fn default_conductor() -> u32 {
    1
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
    #[error("{location}: {source}")]
    Group { location: String, source: GroupError },
}

fn invalid(location: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Invalid { location: location.into(), message: message.into() }
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec, SpecError> {
        serde_json::from_str(text).map_err(|e| SpecError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    fn family(&self) -> Result<Option<Family>, SpecError> {
        let Some(f) = &self.family else { return Ok(None) };
        let fam = Family::parse(&f.name, f.rank, f.m)
            .map_err(|source| SpecError::Group { location: "family".into(), source })?;
        if fam.rank() != self.n {
            return Err(invalid("family.rank", format!("rank {} differs from n = {}", f.rank, self.n)));
        }
        if !self.conductor.is_multiple_of(fam.conductor()) {
            return Err(invalid(
                "conductor",
                format!("family needs conductor {} but spec declares {}", fam.conductor(), self.conductor),
            ));
        }
        Ok(Some(fam))
    }

    /// Parses the generator entries into matrices over the declared field.
    pub fn matrices(&self) -> Result<Vec<FieldMatrix>, SpecError> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.generators.len());
        for (gi, g) in self.generators.iter().enumerate() {
            let flat: Vec<(String, &String)> = match g {
                GeneratorText::Flat(v) => {
                    if v.len() != n * n {
                        return Err(invalid(
                            format!("generators[{gi}]"),
                            format!("expected {} entries, found {}", n * n, v.len()),
                        ));
                    }
                    v.iter().enumerate().map(|(k, s)| (format!("generators[{gi}][{k}]"), s)).collect()
                }
                GeneratorText::Rows(rows) => {
                    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                        return Err(invalid(format!("generators[{gi}]"), format!("expected {n} rows of {n} entries")));
                    }
                    rows.iter()
                        .enumerate()
                        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, s)| (format!("generators[{gi}][{i}][{j}]"), s)))
                        .collect()
                }
            };
            let mut entries = Vec::with_capacity(n * n);
            for (loc, s) in flat {
                let v = CycNum::parse(s, self.conductor).map_err(|e| invalid(loc, format!("`{s}`: {e}")))?;
                entries.push(v);
            }
            out.push(Matrix::from_fn(n, n, |i, j| entries[i * n + j].clone()));
        }
        Ok(out)
    }

    /// Parses the candidate invariants, if any.
    pub fn candidate_invariants(&self) -> Result<Option<Vec<MPoly>>, SpecError> {
        let Some(texts) = &self.invariants else { return Ok(None) };
        let mut out = Vec::with_capacity(texts.len());
        for (k, s) in texts.iter().enumerate() {
            let p = MPoly::parse(s, self.n, self.conductor).map_err(|e| invalid(format!("invariants[{k}]"), format!("`{s}`: {e}")))?;
            out.push(p);
        }
        Ok(Some(out))
    }

    /// Validates the document and computes the closure.
    pub fn build(&self, bound: usize) -> Result<MatrixGroup, SpecError> {
        if self.n == 0 {
            return Err(invalid("n", "dimension must be positive"));
        }
        crate::algebra::cyclotomic::check_conductor(self.conductor)
            .map_err(|e| invalid("conductor", e.to_string()))?;
        let family = self.family()?;
        let mut gens = self.matrices()?;
        if gens.is_empty() {
            match &family {
                Some(f) => gens = f.generators(),
                None => return Err(invalid("generators", "no generators and no family given")),
            }
        }
        let group = group_closure(&gens, self.n, self.conductor, bound).map_err(|source| {
            let location = match &source {
                GroupError::NotInvertible { index } | GroupError::WrongDimension { index, .. } => {
                    format!("generators[{index}]")
                }
                _ => "generators".into(),
            };
            SpecError::Group { location, source }
        })?;
        Ok(match family {
            Some(f) => group.with_family(f),
            None => group,
        })
    }

    /// The document with generators rewritten in canonical flat form.
    pub fn canonical(&self) -> Result<GroupSpec, SpecError> {
        let generators = self
            .matrices()?
            .iter()
            .map(|m| GeneratorText::Flat(m.entries().iter().map(|e| e.to_string()).collect()))
            .collect();
        Ok(GroupSpec { generators, ..self.clone() })
    }

    /// A spec listing explicit generators of `g`.
    pub fn from_group(g: &MatrixGroup) -> GroupSpec {
        GroupSpec {
            n: g.n(),
            conductor: g.conductor(),
            generators: g
                .generators()
                .iter()
                .map(|m| GeneratorText::Flat(m.entries().iter().map(|e| e.to_string()).collect()))
                .collect(),
            family: g.family().map(|f| FamilyRef {
                name: family_key(f).into(),
                rank: f.rank(),
                m: match f {
                    Family::Imprimitive { m, .. } | Family::CyclicDiagonal { m, .. } => Some(*m),
                    _ => None,
                },
            }),
            invariants: None,
        }
    }
}

fn family_key(f: &Family) -> &'static str {
    match f {
        Family::Symmetric { .. } => "Sn",
        Family::TypeB { .. } => "Bn",
        Family::TypeD { .. } => "Dn",
        Family::Imprimitive { .. } => "G",
        Family::CyclicDiagonal { .. } => "cyclic",
        Family::Trivial { .. } => "trivial",
    }
}

/// Parses and builds a group from a JSON document.
pub fn parse_group_spec(text: &str, bound: usize) -> Result<MatrixGroup, SpecError> {
    GroupSpec::from_json(text)?.build(bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    const S3: &str = r#"{"n": 3, "conductor": 1, "generators": [
        ["0","1","0", "1","0","0", "0","0","1"],
        [["1","0","0"], ["0","0","1"], ["0","1","0"]]]}"#;

    #[test]
    fn s3_document() {
        assert_eq!(parse_group_spec(S3, 100).unwrap().order(), 6);
    }

    #[test]
    fn zeta_entries() {
        let g = parse_group_spec(r#"{"n": 1, "conductor": 3, "generators": [["z"]]}"#, 100).unwrap();
        assert_eq!(g.order(), 3);
        let g = parse_group_spec(r#"{"n": 2, "conductor": 3, "family": {"name": "G", "rank": 2, "m": 3}}"#, 1000).unwrap();
        assert_eq!(g.order(), 18);
    }

    #[test]
    fn diagnostics() {
        let e = parse_group_spec(r#"{"n": 2, "generators": [["1","1","1","1"]]}"#, 100).unwrap_err();
        assert!(e.to_string().starts_with("generators[0]: generator not invertible"), "{e}");
        let e = parse_group_spec(r#"{"n": 2, "generators": [["1","0","0"]]}"#, 100).unwrap_err();
        assert!(e.to_string().contains("expected 4 entries"), "{e}");
        let e = parse_group_spec(r#"{"n": 1, "generators": [["x"]]}"#, 100).unwrap_err();
        assert!(e.to_string().starts_with("generators[0][0]"), "{e}");
        let e = parse_group_spec("{\"n\": 1,\n \"generators\": [", 100).unwrap_err();
        assert!(matches!(e, SpecError::Json { line: 2, .. }), "{e}");
        let e = parse_group_spec(r#"{"n": 1, "generators": [["2"]]}"#, 50).unwrap_err();
        assert!(matches!(e, SpecError::Group { source: GroupError::ClosureOverflow { .. }, .. }));
        let e = parse_group_spec(r#"{"n": 1, "colour": 3}"#, 50).unwrap_err();
        assert!(matches!(e, SpecError::Json { .. }));
    }

    #[test]
    fn canonical_echo_round_trips() {
        let spec = GroupSpec::from_json(S3).unwrap();
        let canon = spec.canonical().unwrap();
        let text = serde_json::to_string(&canon).unwrap();
        let again = GroupSpec::from_json(&text).unwrap();
        assert_eq!(again.canonical().unwrap(), canon);
        let g = Family::Imprimitive { m: 3, n: 2 }.build(100).unwrap();
        let rebuilt = GroupSpec::from_group(&g).build(100).unwrap();
        assert_eq!(rebuilt.order(), 18);
        assert_eq!(rebuilt.family(), g.family());
    }
}

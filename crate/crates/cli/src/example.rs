//! The S3 example: invariants X_i, generators Y_i and the relations
//! `Y_i X_j - X_j Y_i = delta_ij`.
//!
//! The printed J repeats the factor `x2 - x3`; the fixture keeps the printed
//! text and also the corrected `(x1 - x2)(x2 - x3)(x1 - x3)`, which is the
//! only sign choice for which the printed Y_i satisfy the relations.

use serde_json::{json, Value};

use weyl_invariants::algebra::poly::default_var_names;
use weyl_invariants::algebra::{MPoly, RatFrac};
use weyl_invariants::groups::Family;
use weyl_invariants::invariants::build_invariant_system;
use weyl_invariants::weyl::{build_weyl_generators, DiffOp};

pub const FIXTURE: &str = include_str!("../fixtures/s3_example.json");

/// The printed example over a chosen denominator J.
pub struct Printed {
    pub j: MPoly,
    pub x: Vec<MPoly>,
    pub y: Vec<DiffOp>,
}

fn strings(v: &Value) -> Result<Vec<&str>, String> {
    v.as_array()
        .ok_or("expected a list")?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| "expected a string".to_string()))
        .collect()
}

fn poly(s: &str) -> Result<MPoly, String> {
    MPoly::parse(s, 3, 1).map_err(|e| format!("fixture polynomial `{s}`: {e}"))
}

fn fixture() -> Result<Value, String> {
    serde_json::from_str(FIXTURE).map_err(|e| format!("S3 fixture: {e}"))
}

/// Reads the fixture with the denominator `j`.
pub fn printed_with(j: &MPoly) -> Result<Printed, String> {
    let v = fixture()?;
    let x = strings(&v["x"])?.into_iter().map(poly).collect::<Result<Vec<_>, _>>()?;
    let mut y = Vec::new();
    for row in v["y"].as_array().ok_or("S3 fixture: y")? {
        let coeffs = strings(row)?
            .into_iter()
            .map(|s| RatFrac::new(poly(s)?, j.clone()).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        y.push(DiffOp::derivation(coeffs));
    }
    Ok(Printed { j: j.clone(), x, y })
}

fn fixture_text(key: &str) -> Result<String, String> {
    Ok(fixture()?[key].as_str().ok_or_else(|| format!("S3 fixture: {key}"))?.to_string())
}

fn fixture_j(key: &str) -> Result<MPoly, String> {
    poly(&fixture_text(key)?)
}

/// `Y_i` as printed, with the corrected J: `[a*D1 + b*D2 + c*D3] / J`.
fn printed_display(i: usize) -> Result<String, String> {
    let v = fixture()?;
    let nums = strings(&v["y"][i])?;
    let sum: Vec<String> = nums.iter().enumerate().map(|(k, a)| format!("({a})*D{}", k + 1)).collect();
    Ok(format!("[{}] / ({})", sum.join(" + "), fixture_text("j")?))
}

pub fn corrected() -> Result<Printed, String> {
    printed_with(&fixture_j("j")?)
}

/// `[Y_i, X_j]` for all nine pairs, as `(i, j, value, holds)`.
pub fn relations(p: &Printed) -> Result<Vec<(usize, usize, DiffOp, bool)>, String> {
    let mut out = Vec::new();
    for (i, y) in p.y.iter().enumerate() {
        for (j, x) in p.x.iter().enumerate() {
            let c = y.commutator(&DiffOp::multiplication(RatFrac::from_poly(x.clone()))).map_err(|e| e.to_string())?;
            let expected = if i == j { DiffOp::identity(3) } else { DiffOp::zero(3) };
            let ok = c == expected;
            out.push((i + 1, j + 1, c, ok));
        }
    }
    Ok(out)
}

/// Computes the example and compares it with the fixture.
pub fn reproduce_s3(bound: usize) -> Result<(Value, bool), String> {
    let names = default_var_names("x", 3);
    let text = |p: &MPoly| p.to_string_with(&names);
    let g = Family::Symmetric { n: 3 }.build(bound).map_err(|e| e.to_string())?;
    let sys = build_invariant_system(&g, None).map_err(|e| e.to_string())?;
    let gens = build_weyl_generators(&sys).map_err(|e| e.to_string())?;
    let printed = corrected()?;

    let invariants: Vec<Value> = (0..3)
        .map(|i| {
            json!({
                "name": format!("X{}", i + 1),
                "computed": text(&sys.e[i]),
                "printed": text(&printed.x[i]),
                "equal": sys.e[i] == printed.x[i],
            })
        })
        .collect();
    let mut generators = Vec::new();
    for i in 0..3 {
        let computed: Vec<String> = gens.numerators[i].iter().enumerate().map(|(k, a)| format!("({})*D{}", text(a), k + 1)).collect();
        generators.push(json!({
            "name": format!("Y{}", i + 1),
            "computed": format!("[{}] / ({})", computed.join(" + "), text(&gens.jprime)),
            "printed": printed_display(i)?,
            "equal": gens.d[i] == printed.y[i],
        }));
    }
    let rels = relations(&printed)?;
    let relation_values: Vec<Value> = rels
        .iter()
        .map(|(i, j, c, ok)| json!({ "i": i, "j": j, "commutator": c.to_string(), "holds": ok }))
        .collect();

    let mut conventions = Vec::new();
    for key in ["j", "printed_j"] {
        let holds = relations(&printed_with(&fixture_j(key)?)?)?.iter().all(|r| r.3);
        conventions.push(json!({ "j": fixture_text(key)?, "relations_hold": holds }));
    }
    let holds = relations(&printed_with(&-&printed.j)?)?.iter().all(|r| r.3);
    conventions.push(json!({ "j": format!("-{}", fixture_text("j")?), "relations_hold": holds }));

    let ok = invariants.iter().chain(&generators).all(|v| v["equal"] == true)
        && rels.iter().all(|r| r.3)
        && sys.jprime == printed.j;
    let value = json!({
        "printed_j": fixture_text("printed_j")?,
        "j": fixture_text("j")?,
        "computed_j": text(&sys.j),
        "jprime": text(&sys.jprime),
        "c": sys.c.to_string(),
        "invariants": invariants,
        "generators": generators,
        "relations": relation_values,
        "sign_conventions": conventions,
    });
    Ok((value, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_the_corrected_j_satisfies_the_relations() {
        let (v, ok) = reproduce_s3(100).unwrap();
        assert!(ok);
        let holds: Vec<bool> =
            v["sign_conventions"].as_array().unwrap().iter().map(|c| c["relations_hold"].as_bool().unwrap()).collect();
        assert_eq!(holds, vec![true, false, false]);
    }
}

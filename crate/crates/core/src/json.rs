//! JSON encodings of the library types. Keys are emitted through
//! `serde_json`'s sorted maps and polynomial terms in descending graded-lex
//! order, so equal values always serialize to identical bytes.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::equivariance::{HSplitEntry, OrbitDecomposition, SpectralDatum};
use crate::error::{Error, Result};
use crate::group::{close_group, GroupRep};
use crate::harness::SuiteReport;
use crate::higgs::{validate_higgs, HiggsField};
use crate::hitchin::{HitchinPoint, ProjHitchinPoint, RootMultiset};
use crate::matrix::Matrix;
use crate::poly::{GradedPoly, LinearForm, Monomial};
use crate::scalar::{Field, Scalar};
use crate::split::SplitProfile;
use crate::torus::{
    AffineTorusMap, CodimConvention, ConnectingSeries, CoverClassification, FixedLocusReport,
    TorusGroupAction,
};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing key `{key}`")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

pub fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rationals => json!({"field": "Q"}),
        Field::Prime(p) => json!({"field": "Fp", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<Field> {
    match get(v, "field")?.as_str() {
        Some("Q") => Ok(Field::Rationals),
        Some("Fp") => Field::prime(get(v, "p")?.as_u64().ok_or_else(|| parse_err("p must be an integer"))?),
        _ => Err(parse_err("field must be \"Q\" or \"Fp\"")),
    }
}

/// `Q` or `Fp:<p>`, as on the command line.
pub fn parse_field_spec(s: &str) -> Result<Field> {
    match s {
        "Q" => Ok(Field::Rationals),
        _ => {
            let p = s
                .strip_prefix("Fp:")
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| parse_err(format!("bad field `{s}` (expected Q or Fp:<p>)")))?;
            Field::prime(p)
        }
    }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) if n.is_i64() => field.parse(&n.to_string()),
        _ => Err(parse_err(format!("scalar must be a string, got {v}"))),
    }
}

pub fn poly_to_json(p: &GradedPoly) -> Value {
    json!({
        "vars": p.nvars(),
        "terms": p.terms().map(|(m, c)| json!({"c": scalar_to_json(c), "e": m.exponents()})).collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(field: Field, v: &Value) -> Result<GradedPoly> {
    let nvars = as_usize(get(v, "vars")?, "vars")?;
    let mut terms = Vec::new();
    for t in as_array(get(v, "terms")?, "terms")? {
        let c = scalar_from_json(field, get(t, "c")?)?;
        let e: Vec<u32> = as_array(get(t, "e")?, "e")?
            .iter()
            .map(|x| as_usize(x, "exponent").map(|x| x as u32))
            .collect::<Result<_>>()?;
        if e.len() != nvars {
            return Err(Error::DimensionMismatch(format!(
                "exponent vector of length {} in {nvars} variables",
                e.len()
            )));
        }
        terms.push((Monomial::new(e), c));
    }
    Ok(GradedPoly::from_terms(field, nvars, terms))
}

pub fn form_to_json(t: &LinearForm) -> Value {
    Value::Array(t.coeffs().iter().map(scalar_to_json).collect())
}

pub fn form_from_json(field: Field, v: &Value) -> Result<LinearForm> {
    let coeffs = as_array(v, "linear form")?
        .iter()
        .map(|c| scalar_from_json(field, c))
        .collect::<Result<_>>()?;
    Ok(LinearForm::new(field, coeffs))
}

pub fn roots_to_json(roots: &RootMultiset) -> Value {
    Value::Array(roots.roots().iter().map(form_to_json).collect())
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(field: Field, v: &Value) -> Result<Matrix> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|r| {
            as_array(r, "matrix row")?
                .iter()
                .map(|c| scalar_from_json(field, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, rows)
}

pub fn higgs_to_json(h: &HiggsField) -> Value {
    json!({
        "r": h.rank(),
        "d": h.dim(),
        "components": h.components().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn higgs_from_json(field: Field, v: &Value) -> Result<HiggsField> {
    let r = as_usize(get(v, "r")?, "r")?;
    let d = as_usize(get(v, "d")?, "d")?;
    let components: Vec<Matrix> = as_array(get(v, "components")?, "components")?
        .iter()
        .map(|m| matrix_from_json(field, m))
        .collect::<Result<_>>()?;
    if components.len() != d {
        return Err(Error::DimensionMismatch(format!("{} components, d = {d}", components.len())));
    }
    let h = validate_higgs(field, components)?;
    if h.rank() != r {
        return Err(Error::DimensionMismatch(format!("matrices are {0}x{0}, r = {r}", h.rank())));
    }
    Ok(h)
}

pub fn point_to_json(s: &HitchinPoint) -> Value {
    json!({
        "r": s.rank(),
        "coeffs": s.coeffs().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

fn coeffs_from_json(field: Field, v: &Value) -> Result<(usize, Vec<GradedPoly>)> {
    let r = as_usize(get(v, "r")?, "r")?;
    let coeffs: Vec<GradedPoly> = as_array(get(v, "coeffs")?, "coeffs")?
        .iter()
        .map(|p| poly_from_json(field, p))
        .collect::<Result<_>>()?;
    if coeffs.len() != r {
        return Err(Error::DimensionMismatch(format!("{} coefficients, r = {r}", coeffs.len())));
    }
    let nvars = match (coeffs.first(), v.get("d")) {
        (Some(c), _) => c.nvars(),
        (None, Some(d)) => as_usize(d, "d")?,
        (None, None) => return Err(parse_err("a rank-0 point needs \"d\"")),
    };
    Ok((nvars, coeffs))
}

pub fn point_from_json(field: Field, v: &Value) -> Result<HitchinPoint> {
    let (nvars, coeffs) = coeffs_from_json(field, v)?;
    HitchinPoint::new(field, nvars, coeffs)
}

pub fn proj_to_json(p: &ProjHitchinPoint) -> Value {
    json!({
        "r": p.rank(),
        "s0": scalar_to_json(p.s0()),
        "coeffs": p.coeffs().iter().map(poly_to_json).collect::<Vec<_>>(),
    })
}

/// A missing `"s0"` means the affine chart `s_0 = 1`.
pub fn proj_from_json(field: Field, v: &Value) -> Result<ProjHitchinPoint> {
    let (nvars, coeffs) = coeffs_from_json(field, v)?;
    let s0 = match v.get("s0") {
        Some(s) => scalar_from_json(field, s)?,
        None => field.one(),
    };
    ProjHitchinPoint::new(field, nvars, s0, coeffs)
}

/// `{"generators": [...]}`; `"d"` is required when there are no generators.
pub fn group_from_json(field: Field, v: &Value) -> Result<GroupRep> {
    let gens: Vec<Matrix> = as_array(get(v, "generators")?, "generators")?
        .iter()
        .map(|m| matrix_from_json(field, m))
        .collect::<Result<_>>()?;
    let d = match (v.get("d"), gens.first()) {
        (Some(d), _) => as_usize(d, "d")?,
        (None, Some(g)) => g.nrows(),
        (None, None) => return Err(parse_err("a group without generators needs \"d\"")),
    };
    close_group(field, d, &gens)
}

pub fn group_to_json(g: &GroupRep) -> Value {
    json!({
        "d": g.dim(),
        "generators": g.generators().iter().map(|&i| matrix_to_json(g.element(i))).collect::<Vec<_>>(),
    })
}

pub fn profile_to_json(p: &SplitProfile) -> Value {
    json!({
        "linear_part": roots_to_json(&p.linear_part),
        "residual_degree": p.residual_degree,
        "residual_certified": p.residual_certified,
        "residual": point_to_json(&p.residual),
    })
}

pub fn orbits_to_json(o: &OrbitDecomposition) -> Value {
    json!({
        "orbits": o.orbits.iter().map(|orbit| json!({
            "roots": orbit.roots.iter().map(form_to_json).collect::<Vec<_>>(),
            "multiplicity": orbit.multiplicity,
            "stabilizer": orbit.stabilizer,
            "invariant_factor": point_to_json(&orbit.invariant_factor),
        })).collect::<Vec<_>>(),
    })
}

pub fn spectral_to_json(s: &SpectralDatum) -> Value {
    json!({
        "subgroup": s.subgroup,
        "coset_reps": s.coset_reps,
        "root": form_to_json(&s.root),
        "orbit": s.orbit.iter().map(form_to_json).collect::<Vec<_>>(),
        "coset_action": s.coset_action,
        "index": s.index(),
        "decomposition_type": s.decomposition_type,
    })
}

pub fn h_split_to_json(entries: &[HSplitEntry]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|e| json!({"orbit_size": e.orbit_size, "stabilizer_order": e.stabilizer_order}))
            .collect(),
    )
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match scalar_from_json(Field::Rationals, v)? {
        Scalar::Q(q) => Ok(q),
        Scalar::Fp { .. } => unreachable!("rational field"),
    }
}

/// `{"n", "maps": [{"A", "b"}], "J"?, "codim": "real" | "complex"}`.
pub fn torus_from_json(v: &Value) -> Result<TorusGroupAction> {
    let n = as_usize(get(v, "n")?, "n")?;
    let maps = as_array(get(v, "maps")?, "maps")?
        .iter()
        .map(|m| {
            let a = as_array(get(m, "A")?, "A")?
                .iter()
                .map(|r| {
                    as_array(r, "row of A")?
                        .iter()
                        .map(|x| {
                            x.as_i64()
                                .map(BigInt::from)
                                .ok_or_else(|| parse_err("entries of A must be integers"))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let b = as_array(get(m, "b")?, "b")?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            AffineTorusMap::new(a, b)
        })
        .collect::<Result<Vec<_>>>()?;
    let convention = match v.get("codim").and_then(Value::as_str) {
        None | Some("real") => CodimConvention::Real,
        Some("complex") => CodimConvention::Complex,
        Some(other) => return Err(parse_err(format!("unknown codim convention `{other}`"))),
    };
    let j = v
        .get("J")
        .map(|j| matrix_from_json(Field::Rationals, j))
        .transpose()?;
    TorusGroupAction::from_generators(n, &maps, j, convention)
}

fn int_to_json(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn map_to_json(m: &AffineTorusMap) -> Value {
    json!({
        "A": m.linear().iter().map(|r| r.iter().map(int_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "b": m.translation().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
}

pub fn fixed_table_to_json(action: &TorusGroupAction, reports: &[FixedLocusReport]) -> Value {
    Value::Array(
        action
            .elements()
            .iter()
            .zip(reports)
            .enumerate()
            .map(|(i, (m, r))| {
                json!({
                    "index": i,
                    "map": map_to_json(m),
                    "nonempty": r.nonempty,
                    "codim": r.codim,
                })
            })
            .collect(),
    )
}

pub fn series_to_json(s: &ConnectingSeries) -> Value {
    json!({"series": s.series})
}

pub fn classification_to_json(c: &CoverClassification) -> Value {
    json!({
        "order": c.order,
        "etale": c.etale,
        "quasi_etale": c.quasi_etale,
        "genuinely_ramified_in_codim": c.genuinely_ramified_in_codim,
        "prime_to_p": c.prime_to_p,
        "series": c.series.series,
    })
}

pub fn report_to_json(r: &SuiteReport) -> Value {
    r.to_json()
}

/// Canonical output bytes: compact, sorted keys, trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip_and_canonical_order() {
        let q = Field::Rationals;
        let v: Value = serde_json::from_str(
            r#"{"vars": 2, "terms": [{"c": "3", "e": [0, 1]}, {"c": "-1/2", "e": [2, 0]}]}"#,
        )
        .unwrap();
        let p = poly_from_json(q, &v).unwrap();
        let out = poly_to_json(&p);
        assert_eq!(out["terms"][0]["e"], json!([2, 0]));
        assert_eq!(out["terms"][0]["c"], json!("-1/2"));
        assert_eq!(poly_from_json(q, &out).unwrap(), p);
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field_spec("Q").unwrap(), Field::Rationals);
        assert_eq!(parse_field_spec("Fp:7").unwrap(), Field::Prime(7));
        assert!(parse_field_spec("Fp:8").is_err());
        assert_eq!(field_from_json(&field_to_json(Field::Prime(7))).unwrap(), Field::Prime(7));
    }

    #[test]
    fn prime_field_scalars_must_be_canonical() {
        assert!(scalar_from_json(Field::Prime(3), &json!("3")).is_err());
        assert!(scalar_from_json(Field::Prime(3), &json!("2")).is_ok());
    }

    #[test]
    fn inhomogeneous_coefficient_rejected() {
        let v = json!({"r": 1, "coeffs": [{"vars": 1, "terms": [{"c": "1", "e": [2]}]}]});
        assert_eq!(
            point_from_json(Field::Rationals, &v).unwrap_err(),
            Error::NotHomogeneous { index: 1 }
        );
    }

    #[test]
    fn torus_action_parses() {
        let v = json!({"n": 2, "maps": [{"A": [[-1, 0], [0, -1]], "b": ["0", "0"]}], "codim": "real"});
        assert_eq!(torus_from_json(&v).unwrap().order(), 2);
    }
}

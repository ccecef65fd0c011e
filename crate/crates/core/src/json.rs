//! JSON encodings shared by the command-line front-end and the fixtures.
//!
//! Scalars are strings in canonical form (`"3"`, `"-1/2"`, residues in
//! `0..p`). A series is `{"ring", "field", "prec", "coeffs"}` where `coeffs`
//! lists t-levels: dense x-coefficient arrays for `Tx`/`TTx`, sparse
//! `[[exponent, coefficient], ...]` pairs plus an optional `floor` for
//! `LaurentT` (no floor means the level is exact), and for `XY` the dense
//! x-arrays of each power of y. Anywhere a series is read, an expression
//! string such as `"x*(1+t*x)"` is accepted as well.

use serde_json::{json, Map, Value};

use crate::cartan::RingMatrix;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, Sparse};
use crate::field::{GroundField, Scalar};
use crate::poly::Poly;
use crate::precision::Precision;
use crate::series::{AnySeries, Laurent, RingKind, SeriesLaurentT, SeriesTTx, SeriesTx, SeriesXY, TSeries, TruncPoly};

/// Ring, field and precision used when an input leaves them out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub ring: RingKind,
    pub field: GroundField,
    pub prec: Precision,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn field_to_json(f: GroundField) -> Value {
    match f {
        GroundField::Rationals => json!({"kind": "Q"}),
        GroundField::Prime(p) => json!({"kind": "Fp", "p": p}),
    }
}

pub fn field_from_json(v: &Value) -> Result<GroundField> {
    match v.get("kind").and_then(Value::as_str) {
        Some("Q") => Ok(GroundField::Rationals),
        Some("Fp") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| perr("Fp field needs an integer p"))?;
            GroundField::prime(p)
        }
        _ => Err(perr(format!("bad field {v}"))),
    }
}

/// Parses the command-line spelling `q` or `fp:<p>`.
pub fn field_from_flag(s: &str) -> Result<GroundField> {
    match s.to_ascii_lowercase().as_str() {
        "q" => Ok(GroundField::Rationals),
        other => match other.strip_prefix("fp:") {
            Some(p) => GroundField::prime(p.parse().map_err(|_| perr(format!("bad prime in {s:?}")))?),
            None => Err(perr(format!("unknown field {s:?}; use q or fp:<p>"))),
        },
    }
}

pub fn scalar_to_json(c: &Scalar) -> Value {
    Value::String(c.to_string())
}

pub fn scalar_from_json(field: GroundField, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse(s),
        Value::Number(n) => field.parse(&n.to_string()),
        _ => Err(perr(format!("bad scalar {v}"))),
    }
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_to_json).collect())
}

pub fn poly_from_json(field: GroundField, v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| perr(format!("expected a coefficient array, got {v}")))?;
    let cs = arr.iter().map(|c| scalar_from_json(field, c)).collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(field, cs))
}

pub fn laurent_to_json(l: &Laurent) -> Value {
    let terms: Vec<Value> = l.terms().map(|(e, c)| json!([e, c.to_string()])).collect();
    let mut m = Map::new();
    m.insert("terms".into(), Value::Array(terms));
    if !l.is_exact() {
        m.insert("floor".into(), json!(l.floor()));
    }
    Value::Object(m)
}

pub fn laurent_from_json(field: GroundField, v: &Value) -> Result<Laurent> {
    let terms = v
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| perr(format!("Laurent level needs a terms array, got {v}")))?;
    let mut pairs = Vec::with_capacity(terms.len());
    for t in terms {
        let (e, c) = match t.as_array().map(Vec::as_slice) {
            Some([e, c]) => (e.as_i64().ok_or_else(|| perr("bad exponent"))?, scalar_from_json(field, c)?),
            _ => return Err(perr(format!("bad Laurent term {t}"))),
        };
        pairs.push((e, c));
    }
    Ok(match v.get("floor") {
        None | Some(Value::Null) => Laurent::exact_from_terms(field, &pairs),
        Some(f) => Laurent::from_terms(field, &pairs, f.as_i64().ok_or_else(|| perr("bad floor"))?),
    })
}

fn levels_to_json(s: &AnySeries) -> Value {
    match s {
        AnySeries::Tx(a) => Value::Array(a.levels().iter().map(poly_to_json).collect()),
        AnySeries::TTx(a) => Value::Array(a.levels().iter().map(|l| poly_to_json(l.poly())).collect()),
        AnySeries::LaurentT(a) => Value::Array(a.levels().iter().map(laurent_to_json).collect()),
        AnySeries::XY(a) => Value::Array((0..a.n()).map(|b| poly_to_json(a.y_coeff(b))).collect()),
    }
}

pub fn series_to_json(s: &AnySeries) -> Value {
    json!({
        "ring": s.kind().name(),
        "field": field_to_json(s.field()),
        "prec": s.precision(),
        "coeffs": levels_to_json(s),
        "text": s.to_string(),
    })
}

/// Reads a series from its object encoding or an expression string;
/// missing ring, field and precision come from `ctx`.
pub fn series_from_json(v: &Value, ctx: &Context) -> Result<AnySeries> {
    if let Value::String(src) = v {
        return series_from_sparse(&parse_expr(ctx.field, src)?, ctx);
    }
    let ctx = context_from_json(v, ctx)?;
    if let Some(Value::String(src)) = v.get("expr") {
        return series_from_sparse(&parse_expr(ctx.field, src)?, &ctx);
    }
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("series needs \"coeffs\" or \"expr\""))?;
    let (f, p) = (ctx.field, ctx.prec);
    Ok(match ctx.ring {
        RingKind::Tx => AnySeries::Tx(TSeries::new(f, p, polys(f, coeffs)?)),
        RingKind::TTx => AnySeries::TTx(TSeries::new(
            f,
            p,
            polys(f, coeffs)?.into_iter().map(|q| TruncPoly::new(q, p.n_x)).collect(),
        )),
        RingKind::LaurentT => AnySeries::LaurentT(TSeries::new(
            f,
            p,
            coeffs.iter().map(|l| laurent_from_json(f, l)).collect::<Result<_>>()?,
        )),
        RingKind::XY => AnySeries::XY(SeriesXY::new(f, p, polys(f, coeffs)?)),
    })
}

fn polys(f: GroundField, vs: &[Value]) -> Result<Vec<Poly>> {
    vs.iter().map(|v| poly_from_json(f, v)).collect()
}

/// Overrides `ctx` with any `ring`, `field` and `prec` present in `v`.
pub fn context_from_json(v: &Value, ctx: &Context) -> Result<Context> {
    let mut out = *ctx;
    if let Some(r) = v.get("ring") {
        out.ring = RingKind::parse(r.as_str().ok_or_else(|| perr("ring must be a string"))?)?;
    }
    if let Some(f) = v.get("field") {
        out.field = field_from_json(f)?;
    }
    if let Some(p) = v.get("prec") {
        out.prec = serde_json::from_value(p.clone()).map_err(|e| perr(format!("bad prec: {e}")))?;
    }
    Ok(out)
}

fn nonneg(e: i64, var: &str) -> Result<usize> {
    usize::try_from(e).map_err(|_| perr(format!("negative power of {var} is not allowed in this ring")))
}

/// Converts a parsed expression into a series of the context ring,
/// truncating at the context precision.
pub fn series_from_sparse(s: &Sparse, ctx: &Context) -> Result<AnySeries> {
    let (f, p) = (ctx.field, ctx.prec);
    if ctx.ring == RingKind::XY {
        let mut terms = Vec::new();
        for ([et, ex, ey], c) in s.terms() {
            if *et != 0 {
                return Err(perr("t does not occur in k[[x,y]]"));
            }
            terms.push((nonneg(*ex, "x")?, nonneg(*ey, "y")?, c.clone()));
        }
        return Ok(AnySeries::XY(SeriesXY::from_terms(f, p, &terms)));
    }
    let mut levels: Vec<Vec<(i64, Scalar)>> = vec![Vec::new(); p.n_t];
    for ([et, ex, ey], c) in s.terms() {
        if *ey != 0 {
            return Err(perr("y occurs only in k[[x,y]]"));
        }
        let k = nonneg(*et, "t")?;
        if k < p.n_t {
            levels[k].push((*ex, c.clone()));
        }
    }
    let as_poly = |terms: &[(i64, Scalar)]| -> Result<Poly> {
        let mut acc = Poly::zero(f);
        for (e, c) in terms {
            acc = &acc + &Poly::monomial(c.clone(), nonneg(*e, "x")?);
        }
        Ok(acc)
    };
    Ok(match ctx.ring {
        RingKind::Tx => AnySeries::Tx(SeriesTx::new(f, p, levels.iter().map(|l| as_poly(l)).collect::<Result<_>>()?)),
        RingKind::TTx => AnySeries::TTx(SeriesTTx::new(
            f,
            p,
            levels
                .iter()
                .map(|l| as_poly(l).map(|q| TruncPoly::new(q, p.n_x)))
                .collect::<Result<_>>()?,
        )),
        RingKind::LaurentT => AnySeries::LaurentT(SeriesLaurentT::new(
            f,
            p,
            levels.iter().map(|l| Laurent::exact_from_terms(f, l)).collect(),
        )),
        RingKind::XY => unreachable!(),
    })
}

/// `{"n", "field", "prec", "entries"}`; entries are Laurent-level lists.
pub fn matrix_to_json(m: &RingMatrix) -> Value {
    let entries: Vec<Value> = (0..m.n())
        .map(|i| {
            Value::Array(
                (0..m.n())
                    .map(|j| {
                        let e = m.get(i, j);
                        json!({
                            "coeffs": Value::Array(e.levels().iter().map(laurent_to_json).collect()),
                            "text": e.to_string(),
                        })
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "n": m.n(),
        "field": field_to_json(m.field()),
        "prec": m.precision(),
        "entries": entries,
    })
}

pub fn matrix_from_json(v: &Value, ctx: &Context) -> Result<RingMatrix> {
    let mut ctx = context_from_json(v, ctx)?;
    ctx.ring = RingKind::LaurentT;
    let rows = v
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| perr("matrix needs an entries array"))?;
    let n = rows.len();
    if let Some(k) = v.get("n").and_then(Value::as_u64) {
        if k as usize != n {
            return Err(perr(format!("matrix declares n = {k} but has {n} rows")));
        }
    }
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let row = row.as_array().filter(|r| r.len() == n).ok_or_else(|| perr("matrix rows must have n entries"))?;
        for e in row {
            match series_from_json(e, &ctx)? {
                AnySeries::LaurentT(s) => entries.push(s),
                _ => unreachable!(),
            }
        }
    }
    RingMatrix::new(ctx.field, ctx.prec, n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(ring: RingKind) -> Context {
        Context {
            ring,
            field: GroundField::Rationals,
            prec: Precision::new(4, 6, 4),
        }
    }

    #[test]
    fn series_round_trip_every_ring() {
        let cases = [
            (RingKind::Tx, "x*(1+t*x) - 1/2*t^3"),
            (RingKind::TTx, "1 + x^9 + t*x"),
            (RingKind::LaurentT, "x^-2 + t*(3 - x)"),
            (RingKind::XY, "y^2 - x^2*(1+x)"),
        ];
        for (ring, src) in cases {
            let s = series_from_json(&Value::String(src.into()), &ctx(ring)).unwrap();
            let v = series_to_json(&s);
            let back = series_from_json(&v, &ctx(RingKind::Tx)).unwrap();
            assert_eq!(back, s, "{src}");
            let text = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::to_string(&series_to_json(&back)).unwrap(), text);
        }
    }

    #[test]
    fn inexact_laurent_level_keeps_floor() {
        let l = Laurent::from_terms(GroundField::Rationals, &[(-1, GroundField::Rationals.from_i64(2))], -5);
        let v = laurent_to_json(&l);
        assert_eq!(v["floor"], json!(-5));
        assert_eq!(laurent_from_json(GroundField::Rationals, &v).unwrap(), l);
    }

    #[test]
    fn matrix_round_trip() {
        let v = json!({"entries": [["1", "x^-1"], ["0", "1 + t*x"]]});
        let m = matrix_from_json(&v, &ctx(RingKind::LaurentT)).unwrap();
        let again = matrix_from_json(&matrix_to_json(&m), &ctx(RingKind::Tx)).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn field_flags() {
        assert_eq!(field_from_flag("fp:7").unwrap(), GroundField::Prime(7));
        assert_eq!(field_from_flag("q").unwrap(), GroundField::Rationals);
        assert!(field_from_flag("fp:8").is_err());
    }
}

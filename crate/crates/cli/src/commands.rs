//! Subcommand handlers: JSON in, JSON out.

use serde_json::{json, Map, Value};
use weierpatch::branches::{branch_decompose, branch_valuation, obstruction_check, NodalLocalRing};
use weierpatch::cartan::{additive_split, cartan_factor, solve_patching_problem, Direction};
use weierpatch::expr::parse_expr;
use weierpatch::graphs::{
    build_abelian_cover, choose_n, cycle_rank, two_cycle_images, validate_cover, GraphCover, ReductionGraph,
};
use weierpatch::invariants::{explain, BoundResult, Engine, FieldDescriptor};
use weierpatch::json::{
    field_from_flag, laurent_from_json, laurent_to_json, matrix_from_json, matrix_to_json, poly_to_json,
    scalar_to_json, series_from_json, series_to_json, Context,
};
use weierpatch::series::{AnySeries, Laurent, RingKind, SeriesXY};
use weierpatch::weierstrass::{prepare_local, prepare_restricted, weierstrass_divide_local};
use weierpatch::{Error, GroundField, Precision, Result};

use crate::{Command, DirectionArg, Options};

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn context(opts: &Options, default_ring: RingKind) -> Result<Context> {
    let field = match &opts.field {
        Some(f) => field_from_flag(f)?,
        None => GroundField::Rationals,
    };
    let ring = match &opts.ring {
        Some(r) => RingKind::parse(r)?,
        None => default_ring,
    };
    let mut prec = Precision::default();
    if let Some(v) = opts.nt {
        prec.n_t = v;
    }
    if let Some(v) = opts.nx {
        prec.n_x = v;
    }
    if let Some(v) = opts.mx {
        prec.m_x = v;
    }
    Ok(Context { ring, field, prec })
}

/// Precision flags win over any `prec` given inside the input.
fn apply_prec_flags(v: &mut Value, opts: &Options) {
    match v {
        Value::Object(m) => {
            if let Some(Value::Object(p)) = m.get_mut("prec") {
                for (key, flag) in [("n_t", opts.nt), ("n_x", opts.nx), ("m_x", opts.mx)] {
                    if let Some(f) = flag {
                        p.insert(key.into(), json!(f));
                    }
                }
            }
            for child in m.values_mut() {
                apply_prec_flags(child, opts);
            }
        }
        Value::Array(a) => a.iter_mut().for_each(|c| apply_prec_flags(c, opts)),
        _ => {}
    }
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| perr(format!("input needs a {key:?} field")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| perr(format!("bad {what}: {e}")))
}

pub fn dispatch(cmd: Command, opts: &Options, input: &Value) -> Result<Value> {
    let mut input = input.clone();
    apply_prec_flags(&mut input, opts);
    let input = &input;
    match cmd {
        Command::Prepare => prepare(opts, input),
        Command::Divide => divide(opts, input),
        Command::FactorMatrix => factor_matrix(opts, input),
        Command::SolvePatch => solve_patch(opts, input),
        Command::AdditiveSplit => split(opts, input),
        Command::BranchDecompose => decompose(opts, input),
        Command::BranchVal => branch_val(opts, input),
        Command::Obstruction => obstruction(opts, input),
        Command::SplitCover => split_cover(opts, input),
        Command::ChooseN => choose(input),
        Command::ValidateCover => validate(input),
        Command::UBound => u_bound(input),
        Command::PerInd => per_ind(opts, input),
    }
}

fn prepare(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::Tx)?;
    let a = series_from_json(input.get("a").unwrap_or(input), &ctx)?;
    let (m, d, g, u, ok) = match &a {
        AnySeries::Tx(s) => {
            let w = prepare_restricted(s)?;
            let ok = w.recompose().eq_at(s);
            (w.t_power, w.degree, w.g, AnySeries::Tx(w.unit), ok)
        }
        AnySeries::TTx(s) => {
            let w = prepare_local(s)?;
            let ok = w.recompose().eq_at(s);
            (w.t_power, w.degree, w.g, AnySeries::TTx(w.unit), ok)
        }
        other => {
            return Err(Error::RingMismatch(format!(
                "prepare works in Tx or TTx, not {}",
                other.kind().name()
            )))
        }
    };
    Ok(json!({
        "m": m,
        "d": d,
        "g": series_to_json(&AnySeries::Tx(g)),
        "u": series_to_json(&u),
        "recomposes": ok,
    }))
}

fn divide(opts: &Options, input: &Value) -> Result<Value> {
    let mut ctx = context(opts, RingKind::TTx)?;
    ctx.ring = RingKind::TTx;
    let f = match series_from_json(get(input, "f")?, &ctx)? {
        AnySeries::TTx(s) => s,
        _ => return Err(Error::RingMismatch("the dividend lives in TTx".into())),
    };
    ctx.ring = RingKind::Tx;
    let g = match series_from_json(get(input, "g")?, &ctx)? {
        AnySeries::Tx(s) => s,
        _ => return Err(Error::RingMismatch("the divisor is a polynomial over T (ring Tx)".into())),
    };
    let (q, r) = weierstrass_divide_local(&f, &g)?;
    Ok(json!({
        "q": series_to_json(&AnySeries::TTx(q)),
        "r": series_to_json(&AnySeries::Tx(r)),
    }))
}

fn direction(opts: &Options, input: &Value) -> Result<Direction> {
    match (opts.direction, input.get("direction")) {
        (Some(DirectionArg::Pu), _) => Ok(Direction::PU),
        (Some(DirectionArg::Up), _) => Ok(Direction::PprimeUprime),
        (None, Some(d)) => from_value(d, "direction"),
        (None, None) => Ok(Direction::PU),
    }
}

fn factor_matrix(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::LaurentT)?;
    let a = matrix_from_json(input.get("matrix").unwrap_or(input), &ctx)?;
    let pair = cartan_factor(&a, direction(opts, input)?)?;
    Ok(json!({
        "direction": pair.direction,
        "left": matrix_to_json(&pair.left),
        "right": matrix_to_json(&pair.right),
        "certificate": pair.certificate,
        "residual_norm": pair.certificate.residual_order,
    }))
}

fn solve_patch(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::LaurentT)?;
    let a = matrix_from_json(input.get("matrix").unwrap_or(input), &ctx)?;
    let s = solve_patching_problem(&a)?;
    Ok(json!({
        "b": matrix_to_json(&s.b),
        "c": matrix_to_json(&s.c),
        "certificate": s.certificate,
        "identity_order": s.identity_order,
    }))
}

fn with_text(l: &Laurent) -> Value {
    let mut v = laurent_to_json(l);
    v["text"] = json!(l.display_in("x"));
    v
}

fn split(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::LaurentT)?;
    let f = match input {
        Value::String(src) => {
            let s = parse_expr(ctx.field, src)?;
            let mut terms = Vec::new();
            for ([et, ex, ey], c) in s.terms() {
                if *et != 0 || *ey != 0 {
                    return Err(perr("additive-split takes a Laurent polynomial in x alone"));
                }
                terms.push((*ex, c.clone()));
            }
            Laurent::exact_from_terms(ctx.field, &terms)
        }
        other => laurent_from_json(ctx.field, other)?,
    };
    let (p, u) = additive_split(&f);
    Ok(json!({"p": with_text(&p), "u": with_text(&u)}))
}

fn nodal_ring(ctx: &Context, v: &Value) -> Result<NodalLocalRing> {
    NodalLocalRing::new(xy(ctx, v)?)
}

fn xy(ctx: &Context, v: &Value) -> Result<SeriesXY> {
    let mut ctx = *ctx;
    ctx.ring = RingKind::XY;
    match series_from_json(v, &ctx)? {
        AnySeries::XY(s) => Ok(s),
        other => Err(Error::RingMismatch(format!("expected an XY series, got {}", other.kind().name()))),
    }
}

fn decompose(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::XY)?;
    let ring = nodal_ring(&ctx, input.get("t").unwrap_or(input))?;
    let branches: Vec<Value> = branch_decompose(&ring)?
        .iter()
        .map(|b| {
            json!({
                "label": b.label,
                "slope": scalar_to_json(&b.slope),
                "parametrization": poly_to_json(&b.parametrization),
                "parametrization_text": b.parametrization.to_string(),
                "known_mod_x": ring.precision().n_x - 1,
                "generator": b.generator.to_string(),
                "component_id": b.component_id,
            })
        })
        .collect();
    Ok(json!({"branches": branches}))
}

fn branch_val(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::XY)?;
    let ring = nodal_ring(&ctx, get(input, "t")?)?;
    let a = xy(&ctx, get(input, "a")?)?;
    let wanted = input.get("branch").and_then(Value::as_str);
    let mut vals = Map::new();
    for b in branch_decompose(&ring)? {
        if wanted.is_none_or(|w| w == b.label) {
            vals.insert(b.label.clone(), json!(branch_valuation(&a, &b)?));
        }
    }
    if vals.is_empty() {
        return Err(perr(format!("no branch named {:?}", wanted.unwrap_or(""))));
    }
    Ok(json!({"valuations": vals}))
}

fn obstruction(opts: &Options, input: &Value) -> Result<Value> {
    let ctx = context(opts, RingKind::XY)?;
    let ring = nodal_ring(&ctx, get(input, "t")?)?;
    let a = xy(&ctx, get(input, "a")?)?;
    let components: Option<Vec<usize>> = input.get("components").map(|c| from_value(c, "components")).transpose()?;
    let report = obstruction_check(&a, &ring, components.as_deref())?;
    let vals: Map<String, Value> = report.valuations.iter().map(|(l, v)| (l.clone(), json!(v))).collect();
    let mut out = json!({"valuations": vals, "verdict": report.verdict});
    if let Some(w) = &report.witness {
        out["witness"] = json!(w);
    }
    Ok(out)
}

fn graph(v: &Value) -> Result<ReductionGraph> {
    let g: ReductionGraph = from_value(v, "graph")?;
    g.check()?;
    Ok(g)
}

fn split_cover(opts: &Options, input: &Value) -> Result<Value> {
    let g = graph(input.get("graph").unwrap_or(input))?;
    let basis = cycle_rank(&g)?;
    let cycles = two_cycle_images(&g, &basis);
    let images: Vec<Vec<i64>> = cycles.iter().map(|c| c.image.clone()).collect();
    let n = match (opts.n, input.get("n").and_then(Value::as_u64)) {
        (Some(n), _) | (None, Some(n)) => n,
        _ if basis.rank == 0 => 1,
        _ if images.is_empty() => 2,
        _ => choose_n(&images)?,
    };
    let cover = build_abelian_cover(&g, &basis, n)?;
    let report = validate_cover(&cover);
    let mut out = from_value::<Value>(&json!(cover), "cover")?;
    out["degree"] = json!(cover.degree());
    out["cycle_basis"] = json!(basis);
    out["two_cycles"] = json!(cycles);
    out["validation"] = json!(report);
    if opts.dot {
        out["dot"] = json!(cover.to_dot());
    }
    Ok(out)
}

fn choose(input: &Value) -> Result<Value> {
    let images: Vec<Vec<i64>> = match input.get("images") {
        Some(v) => from_value(v, "images")?,
        None => {
            let g = graph(input.get("graph").unwrap_or(input))?;
            let basis = cycle_rank(&g)?;
            two_cycle_images(&g, &basis).into_iter().map(|c| c.image).collect()
        }
    };
    Ok(json!({"n": choose_n(&images)?}))
}

fn validate(input: &Value) -> Result<Value> {
    let cover: GraphCover = from_value(input, "cover")?;
    cover.base.check()?;
    let report = validate_cover(&cover);
    let mut out = json!(report);
    out["pass"] = json!(report.all_pass());
    Ok(out)
}

fn descriptor(input: &Value) -> Result<FieldDescriptor> {
    let d: FieldDescriptor = from_value(input.get("descriptor").unwrap_or(input), "descriptor")?;
    d.check()?;
    Ok(d)
}

fn bound_json(r: &BoundResult, key: &str) -> Value {
    let mut out = json!(r);
    if let Some(v) = r.value() {
        out[key] = json!(v);
    }
    out["explanation"] = json!(explain(r).lines().collect::<Vec<_>>());
    out
}

fn u_bound(input: &Value) -> Result<Value> {
    let r = Engine::new().compute_u_bounds(&descriptor(input)?)?;
    Ok(bound_json(&r, "u"))
}

fn per_ind(opts: &Options, input: &Value) -> Result<Value> {
    let roots = opts.roots_of_unity || input.get("roots_of_unity").and_then(Value::as_bool).unwrap_or(false);
    let r = Engine::new().compute_per_ind(&descriptor(input)?, roots)?;
    Ok(bound_json(&r, "exponent"))
}

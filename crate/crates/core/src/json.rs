//! JSON encodings of domains, traces and reports.
//!
//! Rationals travel as strings (`"3/2"`, `"-4"`); lattice vectors as pairs of
//! integers (JSON numbers when they fit in 64 bits, strings otherwise).  No
//! binary floating point is ever produced, and parsing rejects fractional
//! JSON numbers.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::caustic::{
    CurveEdge, EdgeKind, EdgeShape, EndpointPattern, NoetherAudit, ReflexiveStarReport, TropicalCurve, TwelveAudit,
};
use crate::error::{Error, Result};
use crate::lattice::{format_rat, parse_rat, Direction, Extended, Int, LatticeVec, Rat, RatPoint};
use crate::verify::{CaseReport, SuiteReport};
use crate::wavefront::{ConvexDomain, DomainKind, EventOutcome, EvolutionTrace, FinalLocus, Front, Support};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rat_to_json(r: &Rat) -> Value {
    Value::String(format_rat(r))
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        other => Err(parse_err(format!("expected a rational string, got {other}"))),
    }
}

pub fn extended_to_json(e: &Extended) -> Value {
    match e {
        Extended::Finite(r) => rat_to_json(r),
        Extended::Infinity => Value::String("inf".into()),
    }
}

pub fn extended_from_json(v: &Value) -> Result<Extended> {
    match v {
        Value::String(s) if s == "inf" => Ok(Extended::Infinity),
        other => rat_from_json(other).map(Extended::Finite),
    }
}

pub fn int_to_json(n: &Int) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => Value::String(n.to_string()),
    }
}

pub fn int_from_json(v: &Value) -> Result<Int> {
    let r = rat_from_json(v)?;
    if !r.is_integer() {
        return Err(parse_err(format!("expected an integer, got {r}")));
    }
    Ok(r.to_integer())
}

fn pair_from_json(v: &Value) -> Result<(&Value, &Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((a, b)),
        _ => Err(parse_err(format!("expected a pair, got {v}"))),
    }
}

pub fn vec_to_json(v: &LatticeVec) -> Value {
    json!([int_to_json(&v.x), int_to_json(&v.y)])
}

pub fn vec_from_json(v: &Value) -> Result<LatticeVec> {
    let (a, b) = pair_from_json(v)?;
    Ok(LatticeVec::new(int_from_json(a)?, int_from_json(b)?))
}

pub fn direction_to_json(d: &Direction) -> Value {
    vec_to_json(d)
}

pub fn direction_from_json(v: &Value) -> Result<Direction> {
    Direction::from_vec(vec_from_json(v)?)
}

pub fn point_to_json(p: &RatPoint) -> Value {
    json!([rat_to_json(&p.x), rat_to_json(&p.y)])
}

pub fn point_from_json(v: &Value) -> Result<RatPoint> {
    let (a, b) = pair_from_json(v)?;
    Ok(RatPoint::new(rat_from_json(a)?, rat_from_json(b)?))
}

/// Parses `"x,y"` with rational coordinates.
pub fn parse_point_str(s: &str) -> Result<RatPoint> {
    let (a, b) = s.split_once(',').ok_or_else(|| parse_err(format!("expected x,y, got {s:?}")))?;
    Ok(RatPoint::new(parse_rat(a.trim())?, parse_rat(b.trim())?))
}

/// Parses `"dx,dy"` into an integer vector.
pub fn parse_vec_str(s: &str) -> Result<LatticeVec> {
    let p = parse_point_str(s)?;
    p.to_lattice().ok_or_else(|| parse_err(format!("expected integer coordinates, got {s:?}")))
}

/// Parses `"dx,dy"` into a primitive direction.
pub fn parse_direction_str(s: &str) -> Result<Direction> {
    Direction::from_vec(parse_vec_str(s)?)
}

/// Parses a `;`-separated list of `"x,y"` items.
pub fn parse_list<T>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(';').map(str::trim).filter(|p| !p.is_empty()).map(item).collect()
}

pub fn support_to_json(s: &Support) -> Value {
    json!({"lambda": direction_to_json(&s.lambda), "c": rat_to_json(&s.c)})
}

pub fn domain_to_json(d: &ConvexDomain) -> Value {
    let vertices = || Value::Array(d.vertices().iter().map(point_to_json).collect());
    match d.kind() {
        DomainKind::Bounded => json!({"kind": "bounded", "vertices": vertices()}),
        DomainKind::TwoRays => {
            let (first, last) = d.rays().expect("two rays");
            json!({
                "kind": "tworays",
                "vertices": vertices(),
                "rayFirst": direction_to_json(first),
                "rayLast": direction_to_json(last),
            })
        }
        DomainKind::HalfPlane => {
            let s = &d.support()[0];
            json!({"kind": "halfplane", "lambda": direction_to_json(&s.lambda), "c": rat_to_json(&s.c)})
        }
        DomainKind::Strip => {
            let s = d.support();
            json!({
                "kind": "strip",
                "lambda": direction_to_json(&s[0].lambda),
                "cLow": rat_to_json(&s[0].c),
                "cHigh": rat_to_json(&-s[1].c.clone()),
            })
        }
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

pub fn domain_from_json(v: &Value) -> Result<ConvexDomain> {
    let obj = v.as_object().ok_or_else(|| parse_err("domain must be a JSON object"))?;
    let kind = field(obj, "kind")?.as_str().ok_or_else(|| parse_err("\"kind\" must be a string"))?;
    let vertices = || -> Result<Vec<RatPoint>> {
        field(obj, "vertices")?
            .as_array()
            .ok_or_else(|| parse_err("\"vertices\" must be an array"))?
            .iter()
            .map(point_from_json)
            .collect()
    };
    match kind {
        "bounded" => ConvexDomain::bounded(vertices()?),
        "tworays" => ConvexDomain::two_rays(
            vertices()?,
            direction_from_json(field(obj, "rayFirst")?)?,
            direction_from_json(field(obj, "rayLast")?)?,
        ),
        "halfplane" => Ok(ConvexDomain::half_plane(
            direction_from_json(field(obj, "lambda")?)?,
            rat_from_json(field(obj, "c")?)?,
        )),
        "strip" => ConvexDomain::strip(
            direction_from_json(field(obj, "lambda")?)?,
            rat_from_json(field(obj, "cLow")?)?,
            rat_from_json(field(obj, "cHigh")?)?,
        ),
        other => Err(parse_err(format!("unknown domain kind {other:?}"))),
    }
}

/// Parses a domain from JSON text.
pub fn parse_domain(text: &str) -> Result<ConvexDomain> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_err(format!("malformed JSON: {e}")))?;
    domain_from_json(&v)
}

pub fn locus_to_json(l: &FinalLocus) -> Value {
    match l {
        FinalLocus::Point(p) => json!({"kind": "point", "point": point_to_json(p)}),
        FinalLocus::Segment(a, b) => json!({"kind": "segment", "from": point_to_json(a), "to": point_to_json(b)}),
        FinalLocus::Ray(s, d) => json!({"kind": "ray", "start": point_to_json(s), "direction": direction_to_json(d)}),
        FinalLocus::Line(s) => json!({"kind": "line", "lambda": direction_to_json(&s.lambda), "c": rat_to_json(&s.c)}),
    }
}

pub fn front_to_json(f: &Front) -> Value {
    match f {
        Front::Domain(d) => domain_to_json(d),
        Front::Locus(l) => locus_to_json(l),
        Front::Empty => json!({"kind": "empty"}),
    }
}

pub fn trace_to_json(t: &EvolutionTrace) -> Value {
    let particles: Vec<Value> = t
        .particles
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "birthTime": rat_to_json(&p.birth_time),
                "birthPoint": point_to_json(&p.birth_point),
                "velocity": direction_to_json(&p.velocity),
                "weight": int_to_json(&p.weight),
                "deathTime": p.death_time.as_ref().map(rat_to_json),
                "deathPoint": p.death_point.as_ref().map(point_to_json),
            })
        })
        .collect();
    let events: Vec<Value> = t
        .events
        .iter()
        .map(|e| {
            let outcome = match &e.outcome {
                EventOutcome::NewParticle(id) => json!({"newParticle": id}),
                EventOutcome::FinalLocus => json!("finalLocus"),
            };
            json!({
                "time": rat_to_json(&e.time),
                "location": point_to_json(&e.location),
                "incoming": e.incoming,
                "outcome": outcome,
            })
        })
        .collect();
    json!({
        "domain": domain_to_json(&t.initial),
        "particles": particles,
        "events": events,
        "finalTime": extended_to_json(&t.final_time),
        "finalLocus": t.final_locus.as_ref().map(locus_to_json),
    })
}

pub fn curve_edge_to_json(e: &CurveEdge) -> Value {
    let kind = match e.kind {
        EdgeKind::Trajectory => "trajectory",
        EdgeKind::FinalLocus => "finalLocus",
    };
    let mut v = match &e.shape {
        EdgeShape::Segment(a, b) => json!({"shape": "segment", "from": point_to_json(a), "to": point_to_json(b)}),
        EdgeShape::Ray(s, d) => json!({"shape": "ray", "start": point_to_json(s), "direction": direction_to_json(d)}),
        EdgeShape::Line(s) => json!({"shape": "line", "lambda": direction_to_json(&s.lambda), "c": rat_to_json(&s.c)}),
    };
    v["weight"] = int_to_json(&e.weight);
    v["kind"] = json!(kind);
    v
}

pub fn curve_to_json(c: &TropicalCurve) -> Value {
    json!({
        "vertices": c.vertices.iter().map(|v| json!({"point": point_to_json(&v.point), "interior": v.interior})).collect::<Vec<_>>(),
        "edges": c.edges.iter().map(curve_edge_to_json).collect::<Vec<_>>(),
    })
}

pub fn noether_to_json(a: &NoetherAudit) -> Value {
    json!({
        "lCaustic": rat_to_json(&a.l_caustic),
        "lBoundary": rat_to_json(&a.l_boundary),
        "tFinal": rat_to_json(&a.t_final),
        "lFinal": rat_to_json(&a.l_final),
        "residual": rat_to_json(&a.residual),
    })
}

pub fn twelve_to_json(a: &TwelveAudit) -> Value {
    json!({
        "perVertex": a.per_vertex.iter().map(|(p, d)| json!({"vertex": point_to_json(p), "d": int_to_json(d)})).collect::<Vec<_>>(),
        "perEdge": a.per_edge.iter().map(|((p, q), d)| json!({"from": point_to_json(p), "to": point_to_json(q), "d": int_to_json(d)})).collect::<Vec<_>>(),
        "total": int_to_json(&a.total),
    })
}

pub fn star_to_json(r: &ReflexiveStarReport) -> Value {
    json!({
        "location": point_to_json(&r.location),
        "rays": r.rays.iter().map(|(d, w)| json!({"direction": direction_to_json(d), "weight": int_to_json(w)})).collect::<Vec<_>>(),
        "hull": r.hull.iter().map(vec_to_json).collect::<Vec<_>>(),
        "dualSideLengths": r.dual_side_lengths.iter().map(int_to_json).collect::<Vec<_>>(),
        "normalForm": r.normal_form.iter().map(vec_to_json).collect::<Vec<_>>(),
        "type": r.type_index,
    })
}

pub fn endpoint_pattern_to_json(p: &EndpointPattern) -> Value {
    match p {
        EndpointPattern::TwoUnit => json!({"pattern": "twoUnit"}),
        EndpointPattern::TwoDouble => json!({"pattern": "twoDouble"}),
        EndpointPattern::UnitHeavyUnit(n) => json!({"pattern": "unitHeavyUnit", "heavy": int_to_json(n)}),
    }
}

pub fn case_report_to_json(r: &CaseReport) -> Value {
    json!({
        "index": r.index,
        "domain": domain_to_json(&r.domain),
        "finalTime": r.final_time.as_ref().map(extended_to_json),
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
    })
}

pub fn suite_report_to_json(r: &SuiteReport) -> Value {
    json!({
        "seed": r.seed,
        "count": r.cases.len(),
        "passed": r.passed_count(),
        "cases": r.cases.iter().map(case_report_to_json).collect::<Vec<_>>(),
    })
}

/// `{"error": kind, "message": text}`.
pub fn error_to_json(e: &Error) -> Value {
    json!({"error": e.kind(), "message": e.to_string()})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;
    use crate::wavefront::simulate;

    #[test]
    fn domain_round_trips() {
        let texts = [
            r#"{"kind":"bounded","vertices":[["0","0"],["4","0"],["4","1"],["2","3"],["0","1"]]}"#,
            r#"{"kind":"tworays","vertices":[["0","0"]],"rayFirst":[0,1],"rayLast":[1,0]}"#,
            r#"{"kind":"halfplane","lambda":[1,2],"c":"1/2"}"#,
            r#"{"kind":"strip","lambda":[0,1],"cLow":"0","cHigh":"3"}"#,
        ];
        for t in texts {
            let d = parse_domain(t).unwrap();
            let v = domain_to_json(&d);
            assert_eq!(domain_from_json(&v).unwrap(), d);
            let again = serde_json::to_string(&v).unwrap();
            assert_eq!(domain_to_json(&parse_domain(&again).unwrap()), v);
        }
    }

    #[test]
    fn numbers_and_errors() {
        assert_eq!(rat_from_json(&json!(3)).unwrap(), rat(3, 1));
        assert!(rat_from_json(&json!(0.5)).is_err());
        assert!(matches!(parse_domain("{not json"), Err(Error::Parse(_))));
        assert!(matches!(parse_domain(r#"{"kind":"disk"}"#), Err(Error::Parse(_))));
        assert_eq!(parse_direction_str("-1, 2").unwrap(), Direction::new(-1, 2).unwrap());
        assert!(matches!(parse_direction_str("2,4"), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn trace_encodes_infinity() {
        let q = parse_domain(r#"{"kind":"tworays","vertices":[[0,0]],"rayFirst":[0,1],"rayLast":[1,0]}"#).unwrap();
        let v = trace_to_json(&simulate(&q).unwrap());
        assert_eq!(v["finalTime"], json!("inf"));
        assert_eq!(v["finalLocus"], Value::Null);
    }
}

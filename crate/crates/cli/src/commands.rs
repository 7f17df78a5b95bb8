//! One function per subcommand.  Each produces a [`Report`]: machine JSON,
//! a human-readable table and optionally a scene for `--svg`.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use tropicaust_core::caustic::{
    caustic_of, dual_side_lengths, EdgeKind, EdgeShape, eval_series, final_edge_endpoint_type, final_star_type, noether_audit,
    reflexive_polygons, twelve_sum,
};
use tropicaust_core::contfrac::{cf_from_angle, hj_cf, minimal_resolution, regular_cf};
use tropicaust_core::json::{
    curve_to_json, direction_to_json, domain_to_json, endpoint_pattern_to_json, extended_to_json, front_to_json,
    int_to_json, noether_to_json, point_to_json, rat_to_json, star_to_json, suite_report_to_json,
    case_report_to_json, trace_to_json, twelve_to_json,
};
use tropicaust_core::random::case_rng;
use tropicaust_core::svg::{evolution_scene, render_svg, star_scene, RenderSpec, Scene};
use tropicaust_core::toric::{
    canonical_evolution_check, canonical_pairing, complete_fan_twelve, dual_fan, self_intersection, symplectic_area,
    H2Class,
};
use tropicaust_core::trig::{angle_invariants, bissectrice, cone_caustic, cotangent, reversed_cotangent};
use tropicaust_core::verify::{verify_domain, verify_suite, CaseReport};
use tropicaust_core::wavefront::{age, negative_propagate, FinalLocus, Front};
use tropicaust_core::{simulate, Angle, ConvexDomain, Error, Extended, Rat, RatPoint, Result};

/// Output of a command.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub scene: Option<Scene>,
    /// `false` when a verification found a violation.
    pub ok: bool,
}

impl Report {
    fn new(json: Value, text: String) -> Report {
        Report { json, text, scene: None, ok: true }
    }

    fn with_scene(mut self, scene: Scene) -> Report {
        self.scene = Some(scene);
        self
    }
}

fn list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(T::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn front_text(f: &Front) -> String {
    match f {
        Front::Domain(d) => domain_text(d),
        Front::Locus(FinalLocus::Point(p)) => format!("point ({p})"),
        Front::Locus(FinalLocus::Segment(a, b)) => format!("segment ({a}) – ({b})"),
        Front::Locus(FinalLocus::Ray(s, d)) => format!("ray from ({s}) along ({d})"),
        Front::Locus(FinalLocus::Line(s)) => format!("line λ=({}) c={}", s.lambda, s.c),
        Front::Empty => "empty".into(),
    }
}

fn domain_text(d: &ConvexDomain) -> String {
    let vs: Vec<String> = d.vertices().iter().map(|v| format!("({v})")).collect();
    let mut out = format!("{} {}", d.kind().name(), vs.join(" "));
    if let Some((a, b)) = d.rays() {
        let _ = write!(out, " rays ({a}) ({b})");
    }
    if d.vertices().is_empty() {
        let sides: Vec<String> = d.support().iter().map(|s| format!("λ=({}) c={}", s.lambda, s.c)).collect();
        out.push_str(&sides.join(", "));
    }
    out
}

pub fn angle(legs: (tropicaust_core::Direction, tropicaust_core::Direction), apex: Option<RatPoint>) -> Result<Report> {
    let a = Angle::new(legs.0, legs.1)?.with_apex(apex.unwrap_or_else(RatPoint::origin));
    let class = angle_invariants(&a);
    let ta = cotangent(&a);
    let caustic = cone_caustic(&a);
    let (l1, l2) = a.original_legs();
    let mut json = json!({
        "legs": [direction_to_json(l1), direction_to_json(l2)],
        "apex": point_to_json(&a.apex),
        "determinant": int_to_json(&class.determinant),
        "width": int_to_json(&class.width),
        "height": int_to_json(&class.height),
        "kind": class.kind.to_string(),
        "cotangent": ta.to_string(),
        "reversedCotangent": reversed_cotangent(&ta).to_string(),
        "caustic": caustic.iter().map(|r| json!({"direction": direction_to_json(&r.direction), "weight": int_to_json(&r.weight)})).collect::<Vec<_>>(),
        "bissectrice": bissectrice(&a).as_ref().map(direction_to_json),
    });
    let rays: Vec<String> = caustic.iter().map(|r| format!("({})w{}", r.direction, r.weight)).collect();
    let mut text = format!(
        "legs        ({l1}) ({l2})\ndet         {}\nwidth       {}\nheight      {}\ntype        {}\nta          {ta}\nreversed    {}\ncaustic     [{}]\n",
        class.determinant,
        class.width,
        class.height,
        class.kind,
        reversed_cotangent(&ta),
        rays.join(",")
    );
    if let Ok(cf) = cf_from_angle(&a) {
        let res = minimal_resolution(&a)?;
        json["regularCF"] = json!(cf.cf.entries().iter().map(int_to_json).collect::<Vec<_>>());
        json["resolution"] = json!(res.iter().map(int_to_json).collect::<Vec<_>>());
        let _ = writeln!(text, "regular CF  {}\nresolution  {}", cf.cf, list(&res));
    }
    let domain = ConvexDomain::hull_plus_cone(std::slice::from_ref(&a.apex), &a.leg1, &a.leg2)?;
    let scene = evolution_scene(&domain, &[])?;
    Ok(Report::new(json, text).with_scene(scene))
}

pub fn contfrac(q: &Rat, hj: bool) -> Result<Report> {
    let regular = regular_cf(q)?;
    let mut json = json!({
        "value": rat_to_json(q),
        "regular": regular.entries().iter().map(int_to_json).collect::<Vec<_>>(),
    });
    let mut text = format!("value    {q}\nregular  {regular}\n");
    if hj {
        // The Hirzebruch–Jung chain of the resolution of the angle with
        // cotangent q, i.e. the HJ expansion of 1 − q.
        let chain = hj_cf(&(Rat::from_integer(1.into()) - q))?;
        json["hj"] = json!(chain.entries().iter().map(int_to_json).collect::<Vec<_>>());
        let _ = writeln!(text, "HJ       {chain}");
    }
    Ok(Report::new(json, text))
}

pub fn evolve(d: &ConvexDomain, t: &Rat) -> Result<Report> {
    let trace = simulate(d)?;
    let front = trace.front_at(t)?;
    let json = json!({"time": rat_to_json(t), "front": front_to_json(&front), "finalTime": extended_to_json(&trace.final_time)});
    let text = format!("t = {t}\nfront  {}\nt_final  {}\n", front_text(&front), trace.final_time);
    let scene = evolution_scene(d, std::slice::from_ref(t))?;
    Ok(Report::new(json, text).with_scene(scene))
}

pub fn trace(d: &ConvexDomain) -> Result<Report> {
    let trace = simulate(d)?;
    let mut text = String::from("particles\n  id  weight  velocity   birth (t, point)        death (t, point)\n");
    for p in &trace.particles {
        let death = match (&p.death_time, &p.death_point) {
            (Some(t), Some(q)) => format!("{t}, ({q})"),
            _ => "—".into(),
        };
        let _ = writeln!(
            text,
            "  {:<3} {:<7} {:<10} {:<23} {death}",
            p.id,
            p.weight,
            format!("({})", p.velocity),
            format!("{}, ({})", p.birth_time, p.birth_point)
        );
    }
    text.push_str("events\n");
    for e in &trace.events {
        let _ = writeln!(text, "  t={} at ({}) incoming {:?} -> {:?}", e.time, e.location, e.incoming, e.outcome);
    }
    let locus = trace.final_locus.as_ref().map(|l| front_text(&Front::Locus(l.clone()))).unwrap_or_else(|| "none".into());
    let _ = writeln!(text, "t_final  {}\nlocus    {locus}", trace.final_time);
    Ok(Report::new(trace_to_json(&trace), text).with_scene(evolution_scene(d, &[])?))
}

pub fn caustic(d: &ConvexDomain) -> Result<Report> {
    let trace = simulate(d)?;
    let curve = caustic_of(&trace)?;
    let mut json = json!({"curve": curve_to_json(&curve), "finalTime": extended_to_json(&trace.final_time)});
    let mut text = String::from("edges\n");
    for e in &curve.edges {
        let shape = match &e.shape {
            EdgeShape::Segment(a, b) => format!("({a}) – ({b})"),
            EdgeShape::Ray(s, d) => format!("({s}) along ({d})"),
            EdgeShape::Line(s) => format!("line λ=({}) c={}", s.lambda, s.c),
        };
        let kind = if e.kind == EdgeKind::FinalLocus { "  final locus" } else { "" };
        let _ = writeln!(text, "  w{}  {shape}{kind}", e.weight);
    }
    if d.is_bounded() {
        let a = noether_audit(&trace)?;
        let _ = writeln!(
            text,
            "noether  l(K) + l(∂Φ) = {} + {} = 12·{} + 4·{} (residual {})",
            a.l_caustic, a.l_boundary, a.t_final, a.l_final, a.residual
        );
        json["noether"] = noether_to_json(&a);
    }
    match &trace.final_locus {
        Some(FinalLocus::Point(_)) => {
            let star = final_star_type(&trace)?;
            let rays: Vec<String> = star.rays.iter().map(|(r, w)| format!("({r})w{w}")).collect();
            let index = star.type_index.map(|i| i.to_string()).unwrap_or_else(|| "?".into());
            let _ = writeln!(text, "final star  [{}] reflexive type {index} of 16", rays.join(","));
            json["finalStar"] = star_to_json(&star);
        }
        Some(FinalLocus::Segment(..)) | Some(FinalLocus::Ray(..)) => {
            let ends = final_edge_endpoint_type(&trace)?;
            for (p, pat) in &ends {
                let _ = writeln!(text, "endpoint ({p})  {pat:?}");
            }
            json["endpoints"] = json!(ends
                .iter()
                .map(|(p, pat)| json!({"point": point_to_json(p), "star": endpoint_pattern_to_json(pat)}))
                .collect::<Vec<_>>());
        }
        _ => {}
    }
    Ok(Report::new(json, text).with_scene(evolution_scene(d, &[])?))
}

pub fn series(d: &ConvexDomain, points: &[RatPoint]) -> Result<Report> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for p in points {
        let f = eval_series(d, p)?;
        let _ = writeln!(text, "F({p}) = {f}");
        rows.push(json!({"point": point_to_json(p), "value": rat_to_json(&f)}));
    }
    Ok(Report::new(json!({"values": rows}), text))
}

pub fn age_cmd(d: &ConvexDomain, back: Option<&Rat>) -> Result<Report> {
    let a = age(d)?;
    let mut json = json!({"age": extended_to_json(&a)});
    let mut text = format!("age  {a}\n");
    if let Some(b) = back {
        let earlier = negative_propagate(d, b)?;
        let _ = writeln!(text, "Φ(−{b})  {}", domain_text(&earlier));
        json["back"] = json!({"time": rat_to_json(b), "domain": domain_to_json(&earlier)});
    }
    Ok(Report::new(json, text))
}

pub fn toric(d: &ConvexDomain, t: &Rat, class: Option<&H2Class>, window: Option<(Rat, Rat)>) -> Result<Report> {
    let trace = simulate(d)?;
    let Front::Domain(front) = trace.front_at(t)? else {
        return Err(Error::Invalid(format!("the front at t={t} has empty interior")));
    };
    let fan = dual_fan(&front);
    let mut rays = Vec::new();
    let mut text = format!("fan at t={t} ({})\n", if fan.is_complete() { "complete" } else { "not complete" });
    for (i, r) in fan.rays().iter().enumerate() {
        let s = self_intersection(&fan, i).ok();
        let shown = s.as_ref().map(Rat::to_string).unwrap_or_else(|| "—".into());
        let _ = writeln!(text, "  ({r})  D² = {shown}");
        rays.push(json!({"ray": direction_to_json(r), "selfIntersection": s.as_ref().map(rat_to_json)}));
    }
    let mut json = json!({"time": rat_to_json(t), "complete": fan.is_complete(), "rays": rays});
    if let Ok(total) = complete_fan_twelve(&fan) {
        let _ = writeln!(text, "3n + ΣD² = {total}");
        json["twelve"] = int_to_json(&total);
    }
    if front.is_bounded() {
        let a = twelve_sum(&front)?;
        let _ = writeln!(text, "twelve-sum of the front = {}", a.total);
        json["twelveSum"] = twelve_to_json(&a);
    }
    if let Some(c) = class {
        let k = canonical_pairing(c);
        let area = symplectic_area(c, &front)?;
        let _ = writeln!(text, "class {c}: K = {k}, area = {area}");
        json["class"] = json!({"class": c.to_string(), "pairing": int_to_json(&k), "area": rat_to_json(&area)});
        if let Some((t0, t1)) = window {
            let check = canonical_evolution_check(&trace, c, &t0, &t1)?;
            let _ = writeln!(text, "slope on [{t0}, {t1}] = {} (holds: {})", check.slope, check.holds);
            json["evolution"] = json!({
                "t0": rat_to_json(&t0), "t1": rat_to_json(&t1),
                "slope": rat_to_json(&check.slope), "holds": check.holds,
            });
        }
    }
    Ok(Report::new(json, text))
}

fn case_text(out: &mut String, c: &CaseReport) {
    let tf = c.final_time.as_ref().map(Extended::to_string).unwrap_or_else(|| "—".into());
    let label = c.index.map(|i| format!("case {i:>4}")).unwrap_or_else(|| "domain".into());
    let status = if c.passed() { "pass" } else { "FAIL" };
    let _ = writeln!(out, "{label}  {status}  {:<9} t_final {tf}  ({} checks)", c.domain.kind().name(), c.checks.len());
    for f in c.failures() {
        let _ = writeln!(out, "    {}: {}", f.name, f.detail);
    }
}

pub fn verify_one(d: &ConvexDomain, seed: u64) -> Result<Report> {
    let report = verify_domain(d, &mut case_rng(seed, 0));
    let mut text = String::new();
    case_text(&mut text, &report);
    for c in &report.checks {
        let _ = writeln!(text, "  {:<16} {}", c.name, if c.passed { "pass" } else { "FAIL" });
    }
    let ok = report.passed();
    Ok(Report { json: case_report_to_json(&report), text, scene: None, ok })
}

pub fn verify_random(count: usize, seed: u64) -> Result<Report> {
    let report = verify_suite(count, seed);
    let mut text = String::new();
    for c in &report.cases {
        case_text(&mut text, c);
    }
    let _ = writeln!(text, "{}/{} pass (seed {seed})", report.passed_count(), report.cases.len());
    Ok(Report { json: suite_report_to_json(&report), text, scene: None, ok: report.passed() })
}

pub fn render(d: &ConvexDomain, times: &[Rat]) -> Result<Report> {
    let scene = evolution_scene(d, times)?;
    let svg = render_svg(&scene, &RenderSpec::from_env())?;
    Ok(Report::new(json!({"svg": svg}), svg).with_scene(scene))
}

/// Writes one SVG per reflexive polygon, with the polar-dual side lengths as
/// weights, into `dir`.
pub fn render_reflexive(dir: &Path) -> Result<Report> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Invalid(format!("cannot create {}: {e}", dir.display())))?;
    let spec = RenderSpec::from_env();
    let mut files = Vec::new();
    for (i, poly) in reflexive_polygons().iter().enumerate() {
        let weights = dual_side_lengths(poly)?;
        let svg = render_svg(&star_scene(poly, &weights), &spec)?;
        let path = dir.join(format!("reflexive-{:02}.svg", i + 1));
        std::fs::write(&path, svg).map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))?;
        files.push(path.display().to_string());
    }
    let text = files.iter().map(|f| format!("{f}\n")).collect();
    Ok(Report::new(json!({"files": files}), text))
}

//! Deterministic SVG rendering of domains, fronts and caustics.
//!
//! Coordinates are written as exact decimal roundings of the underlying
//! rationals, so the output is a pure function of the scene and the spec.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::caustic::{EdgeKind, EdgeShape, TropicalCurve};
use crate::error::{Error, Result};
use crate::lattice::{int, rat, rat_int, unimodular_completion, Int, LatticeVec, Rat, RatPoint};
use crate::wavefront::{ConvexDomain, DomainKind, FinalLocus, Front, Support};

/// Rendering options.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    /// Space around the bounding box, in lattice units.
    pub margin: Rat,
    /// Decimal digits of SVG coordinates.
    pub precision: usize,
    /// Sup-norm distance at which rays and lines are cut off.
    pub ray_length: Rat,
    pub show_domain: bool,
    pub show_fronts: bool,
    pub show_caustic: bool,
    pub show_labels: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            margin: Rat::one(),
            precision: 6,
            ray_length: rat(4, 1),
            show_domain: true,
            show_fronts: true,
            show_caustic: true,
            show_labels: true,
        }
    }
}

impl RenderSpec {
    /// Defaults, with the precision taken from `TROPICAUST_PRECISION` when set.
    pub fn from_env() -> Self {
        let mut spec = RenderSpec::default();
        if let Some(p) = std::env::var("TROPICAUST_PRECISION").ok().and_then(|s| s.trim().parse().ok()) {
            spec.precision = p;
        }
        spec
    }
}

/// Everything that can be drawn.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scene {
    pub domain: Option<ConvexDomain>,
    /// Drawn dashed.
    pub fronts: Vec<Front>,
    pub caustic: Option<TropicalCurve>,
    /// Closed outlines.
    pub polygons: Vec<Vec<RatPoint>>,
    /// Weighted segments.
    pub segments: Vec<(RatPoint, RatPoint, Int)>,
}

/// A star of weighted rays from the origin to the vertices of a lattice
/// polygon, with the polygon outlined: the picture of a final collision type.
pub fn star_scene(poly: &[LatticeVec], weights: &[Int]) -> Scene {
    let pts: Vec<RatPoint> = poly.iter().map(LatticeVec::to_rat).collect();
    let segments = pts.iter().zip(weights).map(|(p, w)| (RatPoint::origin(), p.clone(), w.clone())).collect();
    Scene { polygons: vec![pts], segments, ..Scene::default() }
}

/// Rounds `r` to `digits` decimals (half away from zero) and trims zeros.
pub fn format_decimal(r: &Rat, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r * rat_int(&scale);
    let half = rat(1, 2);
    let mut n = (scaled.abs() + half).floor().to_integer();
    if scaled.is_negative() {
        n = -n;
    }
    if n.is_zero() {
        return "0".into();
    }
    let negative = n.is_negative();
    let mut digits_str = n.abs().to_string();
    if digits > 0 {
        if digits_str.len() <= digits {
            digits_str = format!("{}{}", "0".repeat(digits + 1 - digits_str.len()), digits_str);
        }
        digits_str.insert(digits_str.len() - digits, '.');
        let trimmed = digits_str.trim_end_matches('0').trim_end_matches('.');
        digits_str = trimmed.to_string();
    }
    if negative {
        format!("-{digits_str}")
    } else {
        digits_str
    }
}

/// A drawable primitive in model coordinates.
enum Shape {
    Polyline { points: Vec<RatPoint>, closed: bool, class: &'static str, width: Rat },
    Dot { at: RatPoint, class: &'static str },
    Label { at: RatPoint, text: String },
}

fn stroke_width(w: &Int) -> Rat {
    Rat::one() + rat(3, 5) * (rat_int(w) - Rat::one())
}

fn line_anchor(s: &Support) -> RatPoint {
    // λ(w) = 1 for w = (−u.y, u.x), where wedge(u, λ) = 1.
    let u = unimodular_completion(&s.lambda);
    let w = LatticeVec::new(-&u.y, u.x.clone());
    w.to_rat().scale(&s.c)
}

/// `start + t·d` with `t` chosen so that the endpoint lies at sup-norm
/// distance `len`: steep directions are not drawn longer than shallow ones.
fn ray_end(start: &RatPoint, d: &LatticeVec, len: &Rat) -> RatPoint {
    let span = std::cmp::max(d.x.abs(), d.y.abs());
    start.offset(d, &(len / rat_int(&span)))
}

fn line_points(s: &Support, len: &Rat) -> Vec<RatPoint> {
    let anchor = line_anchor(s);
    let e = s.edge_direction();
    vec![ray_end(&anchor, &e.opposite(), len), ray_end(&anchor, &e, len)]
}

fn domain_shapes(d: &ConvexDomain, class: &'static str, spec: &RenderSpec, out: &mut Vec<Shape>) {
    let width = Rat::one();
    match d.kind() {
        DomainKind::Bounded => {
            out.push(Shape::Polyline { points: d.vertices().to_vec(), closed: true, class, width });
        }
        DomainKind::TwoRays => {
            let (first, last) = d.rays().expect("two rays");
            let v = d.vertices();
            let mut points = vec![ray_end(&v[0], first, &spec.ray_length)];
            points.extend(v.iter().cloned());
            points.push(ray_end(&v[v.len() - 1], last, &spec.ray_length));
            out.push(Shape::Polyline { points, closed: false, class, width });
        }
        DomainKind::HalfPlane | DomainKind::Strip => {
            for s in d.support() {
                out.push(Shape::Polyline { points: line_points(s, &spec.ray_length), closed: false, class, width: width.clone() });
            }
        }
    }
}

fn locus_shapes(l: &FinalLocus, spec: &RenderSpec, out: &mut Vec<Shape>) {
    match l {
        FinalLocus::Point(p) => out.push(Shape::Dot { at: p.clone(), class: "locus" }),
        FinalLocus::Segment(a, b) => out.push(Shape::Polyline {
            points: vec![a.clone(), b.clone()],
            closed: false,
            class: "front",
            width: Rat::one(),
        }),
        FinalLocus::Ray(s, d) => out.push(Shape::Polyline {
            points: vec![s.clone(), ray_end(s, d, &spec.ray_length)],
            closed: false,
            class: "front",
            width: Rat::one(),
        }),
        FinalLocus::Line(s) => {
            out.push(Shape::Polyline { points: line_points(s, &spec.ray_length), closed: false, class: "front", width: Rat::one() })
        }
    }
}

fn midpoint(a: &RatPoint, b: &RatPoint) -> RatPoint {
    (a + b).scale(&rat(1, 2))
}

fn edge_points(shape: &EdgeShape, spec: &RenderSpec) -> Vec<RatPoint> {
    match shape {
        EdgeShape::Segment(a, b) => vec![a.clone(), b.clone()],
        EdgeShape::Ray(s, d) => vec![s.clone(), ray_end(s, d, &spec.ray_length)],
        EdgeShape::Line(s) => line_points(s, &spec.ray_length),
    }
}

fn weighted(points: Vec<RatPoint>, w: &Int, double: bool, spec: &RenderSpec, out: &mut Vec<Shape>) {
    let label_at = midpoint(&points[0], &points[1]);
    if double {
        out.push(Shape::Polyline { points: points.clone(), closed: false, class: "locus-outer", width: stroke_width(w) + rat(2, 1) });
        out.push(Shape::Polyline { points, closed: false, class: "locus-inner", width: Rat::one() });
    } else {
        out.push(Shape::Polyline { points, closed: false, class: "caustic", width: stroke_width(w) });
    }
    if spec.show_labels && w > &Int::one() {
        out.push(Shape::Label { at: label_at, text: w.to_string() });
    }
}

fn shapes(scene: &Scene, spec: &RenderSpec) -> Vec<Shape> {
    let mut out = Vec::new();
    if spec.show_domain {
        if let Some(d) = &scene.domain {
            domain_shapes(d, "domain", spec, &mut out);
        }
        for p in &scene.polygons {
            out.push(Shape::Polyline { points: p.clone(), closed: true, class: "domain", width: Rat::one() });
        }
    }
    if spec.show_fronts {
        for f in &scene.fronts {
            match f {
                Front::Domain(d) => domain_shapes(d, "front", spec, &mut out),
                Front::Locus(l) => locus_shapes(l, spec, &mut out),
                Front::Empty => {}
            }
        }
    }
    if spec.show_caustic {
        if let Some(c) = &scene.caustic {
            for e in &c.edges {
                weighted(edge_points(&e.shape, spec), &e.weight, e.kind == EdgeKind::FinalLocus, spec, &mut out);
            }
        }
        for (a, b, w) in &scene.segments {
            weighted(vec![a.clone(), b.clone()], w, false, spec, &mut out);
        }
    }
    out
}

/// Renders a scene as a standalone SVG 1.1 document (y axis pointing up).
pub fn render_svg(scene: &Scene, spec: &RenderSpec) -> Result<String> {
    let shapes = shapes(scene, spec);
    let mut xs: Vec<Rat> = Vec::new();
    let mut ys: Vec<Rat> = Vec::new();
    for s in &shapes {
        let pts: Vec<&RatPoint> = match s {
            Shape::Polyline { points, .. } => points.iter().collect(),
            Shape::Dot { at, .. } | Shape::Label { at, .. } => vec![at],
        };
        for p in pts {
            xs.push(p.x.clone());
            ys.push(p.y.clone());
        }
    }
    if xs.is_empty() {
        return Err(Error::EmptyScene);
    }
    let (x0, x1) = (xs.iter().min().unwrap().clone(), xs.iter().max().unwrap().clone());
    let (y0, y1) = (ys.iter().min().unwrap().clone(), ys.iter().max().unwrap().clone());
    let m = &spec.margin;
    let f = |r: &Rat| format_decimal(r, spec.precision);
    let pt = |p: &RatPoint| format!("{},{}", f(&p.x), f(&-p.y.clone()));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        f(&(&x0 - m)),
        f(&(-&y1 - m)),
        f(&(&x1 - &x0 + m * rat_int(&int(2)))),
        f(&(&y1 - &y0 + m * rat_int(&int(2)))),
        f(&((&x1 - &x0 + m * rat_int(&int(2))) * rat(40, 1))),
        f(&((&y1 - &y0 + m * rat_int(&int(2))) * rat(40, 1))),
    );
    svg.push_str(concat!(
        "<style>",
        ".domain{fill:none;stroke:#222}",
        ".front{fill:none;stroke:#2a6fb0;stroke-dasharray:4 3}",
        ".caustic{fill:none;stroke:#c0392b}",
        ".locus-outer{fill:none;stroke:#c0392b}",
        ".locus-inner{fill:none;stroke:#fff}",
        ".locus{fill:#c0392b}",
        "text{font:10px sans-serif;fill:#333}",
        "</style>\n"
    ));
    for s in &shapes {
        match s {
            Shape::Polyline { points, closed, class, width } => {
                let tag = if *closed { "polygon" } else { "polyline" };
                let pts: Vec<String> = points.iter().map(pt).collect();
                let _ = writeln!(
                    svg,
                    r#"<{tag} class="{class}" points="{}" stroke-width="{}" vector-effect="non-scaling-stroke"/>"#,
                    pts.join(" "),
                    f(width)
                );
            }
            Shape::Dot { at, class } => {
                let _ = writeln!(
                    svg,
                    r#"<circle class="{class}" cx="{}" cy="{}" r="{}"/>"#,
                    f(&at.x),
                    f(&-at.y.clone()),
                    f(&rat(1, 20))
                );
            }
            Shape::Label { at, text } => {
                let _ = writeln!(
                    svg,
                    r#"<text x="{}" y="{}" font-size="{}">{text}</text>"#,
                    f(&at.x),
                    f(&-at.y.clone()),
                    f(&rat(3, 10))
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Domain, caustic and the fronts at the given times.
pub fn evolution_scene(d: &ConvexDomain, times: &[Rat]) -> Result<Scene> {
    let trace = crate::wavefront::simulate(d)?;
    let fronts = times.iter().map(|t| trace.front_at(t)).collect::<Result<Vec<_>>>()?;
    let caustic = crate::caustic::caustic_of(&trace)?;
    Ok(Scene { domain: Some(d.clone()), fronts, caustic: Some(caustic), ..Scene::default() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_formatting() {
        assert_eq!(format_decimal(&rat(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&rat(2, 3), 6), "0.666667");
        assert_eq!(format_decimal(&rat(-5, 2), 6), "-2.5");
        assert_eq!(format_decimal(&rat(7, 1), 6), "7");
        assert_eq!(format_decimal(&rat(-1, 10_000_000), 6), "0");
        assert_eq!(format_decimal(&rat(1, 2), 0), "1");
    }

    #[test]
    fn empty_scene_is_an_error() {
        assert_eq!(render_svg(&Scene::default(), &RenderSpec::default()), Err(Error::EmptyScene));
    }

    #[test]
    fn square_caustic_has_four_diagonals() {
        let sq = ConvexDomain::bounded(
            [(0, 0), (2, 0), (2, 2), (0, 2)].iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect(),
        )
        .unwrap();
        let svg = render_svg(&evolution_scene(&sq, &[]).unwrap(), &RenderSpec::default()).unwrap();
        assert_eq!(svg.matches(r#"class="caustic""#).count(), 4);
        assert!(svg.contains(r#"points="0,0 1,-1""#));
        assert_eq!(svg, render_svg(&evolution_scene(&sq, &[]).unwrap(), &RenderSpec::default()).unwrap());
    }
}

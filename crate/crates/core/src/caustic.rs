//! The caustic of a domain as a weighted balanced curve, the arrival-time
//! series, and the length and twelve-type identities it satisfies.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Error, Result};
use crate::lattice::{
    axis_crossing, convex_hull, int, pair, rat_int, tropical_length, wedge, Direction, Int, LatticeVec, Rat,
    RatPoint,
};
use crate::trig::{self, line_intersection, Angle};
use crate::wavefront::{simulate, ConvexDomain, DomainKind, EventOutcome, EvolutionTrace, FinalLocus, Support};

/// Where a caustic edge comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Path of a particle.
    Trajectory,
    /// The degenerate front at the final time.
    FinalLocus,
}

/// Geometry of a caustic edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EdgeShape {
    Segment(RatPoint, RatPoint),
    Ray(RatPoint, Direction),
    /// The line `{λ(p) = c}`.
    Line(Support),
}

/// A weighted edge of a tropical curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveEdge {
    pub shape: EdgeShape,
    pub weight: Int,
    pub kind: EdgeKind,
}

impl CurveEdge {
    /// Tropical length (`None` when infinite).
    pub fn length(&self) -> Option<Rat> {
        match &self.shape {
            EdgeShape::Segment(a, b) => Some(tropical_length(&(b - a))),
            _ => None,
        }
    }

    /// Primitive direction of the edge leaving `v`, when `v` is an endpoint.
    fn outgoing_at(&self, v: &RatPoint) -> Vec<Direction> {
        match &self.shape {
            EdgeShape::Segment(a, b) => {
                let mut out = Vec::new();
                if a == v {
                    out.extend((b - a).direction());
                }
                if b == v {
                    out.extend((a - b).direction());
                }
                out
            }
            EdgeShape::Ray(start, d) if start == v => vec![d.clone()],
            _ => vec![],
        }
    }
}

/// A vertex of a tropical curve; only interior vertices must balance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveVertex {
    pub point: RatPoint,
    /// `false` for points on the boundary of the initial domain.
    pub interior: bool,
}

/// A finite weighted rational-slope graph in the plane.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TropicalCurve {
    pub vertices: Vec<CurveVertex>,
    pub edges: Vec<CurveEdge>,
}

/// Outcome of [`validate_balancing`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BalanceReport {
    pub balanced: bool,
    /// Interior vertices whose weighted outgoing directions do not cancel,
    /// with the offending sum.
    pub violations: Vec<(RatPoint, LatticeVec)>,
}

/// Checks `Σ weight · outgoing primitive direction = 0` at every interior vertex.
pub fn validate_balancing(c: &TropicalCurve) -> BalanceReport {
    let mut violations = Vec::new();
    for v in c.vertices.iter().filter(|v| v.interior) {
        let sum = c.edges.iter().fold(LatticeVec::zero(), |acc, e| {
            e.outgoing_at(&v.point).iter().fold(acc, |acc, d| &acc + &d.scale(&e.weight))
        });
        if !sum.is_zero() {
            violations.push((v.point.clone(), sum));
        }
    }
    BalanceReport { balanced: violations.is_empty(), violations }
}

/// The caustic: particle trajectories with their weights plus the final
/// locus with weight two.  Fails with [`Error::Internal`] if the result is
/// not balanced.
pub fn caustic_of(trace: &EvolutionTrace) -> Result<TropicalCurve> {
    let mut vertices: BTreeMap<RatPoint, bool> = BTreeMap::new();
    let mut edges = Vec::new();
    for p in &trace.particles {
        let interior = !p.birth_time.is_zero();
        let slot = vertices.entry(p.birth_point.clone()).or_insert(interior);
        *slot = *slot && interior;
        let shape = match &p.death_point {
            Some(end) => {
                vertices.entry(end.clone()).or_insert(true);
                EdgeShape::Segment(p.birth_point.clone(), end.clone())
            }
            None => EdgeShape::Ray(p.birth_point.clone(), p.velocity.clone()),
        };
        edges.push(CurveEdge { shape, weight: p.weight.clone(), kind: EdgeKind::Trajectory });
    }
    let locus_shape = match &trace.final_locus {
        Some(FinalLocus::Segment(a, b)) => Some(EdgeShape::Segment(a.clone(), b.clone())),
        Some(FinalLocus::Ray(s, d)) => Some(EdgeShape::Ray(s.clone(), d.clone())),
        Some(FinalLocus::Line(s)) => Some(EdgeShape::Line(s.clone())),
        _ => None,
    };
    if let Some(shape) = locus_shape {
        edges.push(CurveEdge { shape, weight: int(2), kind: EdgeKind::FinalLocus });
    }
    let curve = TropicalCurve {
        vertices: vertices.into_iter().map(|(point, interior)| CurveVertex { point, interior }).collect(),
        edges,
    };
    let report = validate_balancing(&curve);
    ensure(report.balanced, || format!("caustic is unbalanced at {:?}", report.violations))?;
    Ok(curve)
}

/// Arrival time of the front at `p`: `min (λ(p) − c)` over the finite
/// constraint set of the evolution.
pub fn eval_series(d: &ConvexDomain, p: &RatPoint) -> Result<Rat> {
    eval_series_trace(&simulate(d)?, p)
}

/// [`eval_series`] on an already simulated trace.
pub fn eval_series_trace(trace: &EvolutionTrace, p: &RatPoint) -> Result<Rat> {
    if !trace.initial.contains(p) {
        return Err(Error::PointOutsideDomain(p.to_string()));
    }
    Ok(trace
        .constraints()
        .iter()
        .map(|s| pair(&s.lambda, p) - &s.c)
        .min()
        .expect("domains have at least one support half-plane"))
}

/// Both sides of `l(K) + l(∂Φ) = 12·t_Φ + 4·l(Φ(t_Φ))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NoetherAudit {
    /// Weighted tropical length of the caustic (final locus with weight 2).
    pub l_caustic: Rat,
    pub l_boundary: Rat,
    pub t_final: Rat,
    pub l_final: Rat,
    /// `l_caustic + l_boundary − 12·t_final − 4·l_final`.
    pub residual: Rat,
}

pub fn noether_audit(trace: &EvolutionTrace) -> Result<NoetherAudit> {
    if trace.initial.kind() != DomainKind::Bounded {
        return Err(Error::Unbounded);
    }
    let t_final = trace.final_time.finite().cloned().ok_or_else(|| Error::Internal("bounded domain never collapses".into()))?;
    let mut l_caustic = Rat::zero();
    for p in &trace.particles {
        let death = p.death_time.as_ref().ok_or_else(|| Error::Internal(format!("particle {} never dies", p.id)))?;
        l_caustic += (death - &p.birth_time) * rat_int(&p.weight);
    }
    let l_final = trace.final_locus.as_ref().and_then(FinalLocus::length).unwrap_or_else(Rat::zero);
    l_caustic += &l_final * rat_int(&int(2));
    let l_boundary = trace.initial.tropical_perimeter()?;
    let residual = &l_caustic + &l_boundary - &t_final * rat_int(&int(12)) - &l_final * rat_int(&int(4));
    Ok(NoetherAudit { l_caustic, l_boundary, t_final, l_final, residual })
}

/// Per-vertex and per-edge terms of a twelve-sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwelveAudit {
    pub per_vertex: Vec<(RatPoint, Int)>,
    pub per_edge: Vec<((RatPoint, RatPoint), Int)>,
    pub total: Int,
}

/// `d_E` for the edge `a → b` whose good side is the left half-plane:
/// `±|wedge(L₋, L₊)|`, positive when the bissectrices meet on the good side.
fn edge_term(a: &RatPoint, b: &RatPoint, ba: &Direction, bb: &Direction) -> Result<Int> {
    let n = wedge(ba, bb).abs();
    let Some(x) = line_intersection(a, ba, b, bb) else { return Ok(Int::zero()) };
    let normal = (b - a).direction()?.left_normal();
    let side = pair(&normal, &x) - pair(&normal, a);
    ensure(!side.is_zero(), || "bissectrices meet on the edge line".into())?;
    Ok(if side.is_positive() { n } else { -n })
}

/// `Σ d_v + Σ d_E` for a bounded canonical polygon; equals 12.
pub fn twelve_sum(d: &ConvexDomain) -> Result<TwelveAudit> {
    if !d.is_bounded() {
        return Err(Error::Unbounded);
    }
    let angles = d.vertex_angles();
    let mut bis = Vec::with_capacity(angles.len());
    for a in &angles {
        bis.push(trig::bissectrice(a).ok_or_else(|| Error::NotCanonical(a.apex.to_string()))?);
    }
    let per_vertex: Vec<(RatPoint, Int)> = angles.iter().map(|a| (a.apex.clone(), a.determinant())).collect();
    let n = angles.len();
    let mut per_edge = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (&angles[i].apex, &angles[j].apex);
        per_edge.push(((a.clone(), b.clone()), edge_term(a, b, &bis[i], &bis[j])?));
    }
    let total = per_vertex.iter().map(|(_, x)| x).chain(per_edge.iter().map(|(_, x)| x)).fold(Int::zero(), |s, x| s + x);
    Ok(TwelveAudit { per_vertex, per_edge, total })
}

/// Side of a closed broken line that carries its coorientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coorientation {
    Left,
    Right,
}

/// A closed broken line; vertices may repeat (multiple traversals).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BrokenLine {
    pub vertices: Vec<RatPoint>,
    pub coorientation: Coorientation,
}

/// Twelve-sum of a cooriented closed broken line and its rotation number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationAudit {
    pub audit: TwelveAudit,
    pub rot: i64,
}

/// `Σ d_v + Σ d_E = 12·rot(B)` for an immersed canonical broken line.
///
/// The half-plane opposite the coorientation plays the role of the
/// polygon's interior: vertices turning towards it count `+det`, reflex
/// vertices `−det`, and edge terms are signed by where the bissectrices
/// meet relative to it.
pub fn rotation_twelve(b: &BrokenLine) -> Result<RotationAudit> {
    let mut pts = b.vertices.clone();
    if b.coorientation == Coorientation::Left {
        pts.reverse();
    }
    let n = pts.len();
    if n < 3 {
        return Err(Error::DegenerateDomain("broken line needs at least three vertices".into()));
    }
    let dirs: Vec<Direction> = (0..n).map(|i| (&pts[(i + 1) % n] - &pts[i]).direction()).collect::<Result<_>>()?;
    let mut per_vertex = Vec::with_capacity(n);
    let mut bis = Vec::with_capacity(n);
    let mut rot = 0i64;
    for i in 0..n {
        let d_in = &dirs[(i + n - 1) % n];
        let d_out = &dirs[i];
        let turn = wedge(d_in, d_out);
        if turn.is_zero() {
            return Err(Error::NonCanonicalVertex(format!("{} (straight or backtracking)", pts[i])));
        }
        let angle = Angle::new(d_out.clone(), d_in.opposite())?.with_apex(pts[i].clone());
        let bissectrice = trig::bissectrice(&angle).ok_or_else(|| Error::NonCanonicalVertex(pts[i].to_string()))?;
        let det = angle.determinant();
        per_vertex.push((pts[i].clone(), if turn.is_positive() { det } else { -det }));
        bis.push(bissectrice);
        rot += axis_crossing(d_in, d_out);
    }
    let mut per_edge = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        per_edge.push(((pts[i].clone(), pts[j].clone()), edge_term(&pts[i], &pts[j], &bis[i], &bis[j])?));
    }
    let total = per_vertex.iter().map(|(_, x)| x).chain(per_edge.iter().map(|(_, x)| x)).fold(Int::zero(), |s, x| s + x);
    ensure(total == int(12 * rot), || format!("twelve-sum {total} differs from 12·rot = {}", 12 * rot))?;
    Ok(RotationAudit { audit: TwelveAudit { per_vertex, per_edge, total }, rot })
}

/// The star of a point-type final collision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReflexiveStarReport {
    pub location: RatPoint,
    /// Directions pointing back along the incoming trajectories, with weights,
    /// in counter-clockwise order.
    pub rays: Vec<(Direction, Int)>,
    /// Their convex hull: a lattice polygon whose only interior lattice point
    /// is the origin.
    pub hull: Vec<LatticeVec>,
    /// Lattice lengths of the polar-dual sides, one per hull vertex.
    pub dual_side_lengths: Vec<Int>,
    /// Normal form of the hull up to `GL₂(ℤ)`.
    pub normal_form: Vec<LatticeVec>,
    /// 1-based position of the normal form among the sixteen reflexive types.
    pub type_index: Option<usize>,
}

fn lattice_hull(points: &[LatticeVec]) -> Vec<LatticeVec> {
    let rp: Vec<RatPoint> = points.iter().map(LatticeVec::to_rat).collect();
    convex_hull(&rp).iter().map(|p| p.to_lattice().expect("hull of lattice points")).collect()
}

/// Number of lattice points strictly inside a counter-clockwise lattice polygon.
fn interior_point_count(poly: &[LatticeVec]) -> Int {
    // Pick: A = I + B/2 − 1.
    let n = poly.len();
    if n < 3 {
        return Int::zero();
    }
    let mut twice_area = Int::zero();
    let mut boundary = Int::zero();
    for i in 0..n {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        twice_area += wedge(a, b);
        boundary += crate::lattice::content(&(b - a));
    }
    (twice_area - boundary + int(2)) / int(2)
}

/// Unique representative of `M·V` over `M ∈ GL₂(ℤ)` for a rank-two 2×k matrix.
fn row_hnf(cols: &[LatticeVec]) -> Vec<LatticeVec> {
    let mut r0: Vec<Int> = cols.iter().map(|c| c.x.clone()).collect();
    let mut r1: Vec<Int> = cols.iter().map(|c| c.y.clone()).collect();
    let k = cols.len();
    let Some(j) = (0..k).find(|&j| !r0[j].is_zero() || !r1[j].is_zero()) else { return cols.to_vec() };
    let g = r0[j].extended_gcd(&r1[j]);
    let (a, b) = (r0[j].clone() / &g.gcd, r1[j].clone() / &g.gcd);
    let (n0, n1): (Vec<Int>, Vec<Int>) = (0..k)
        .map(|i| (&g.x * &r0[i] + &g.y * &r1[i], -&b * &r0[i] + &a * &r1[i]))
        .unzip();
    r0 = n0;
    r1 = n1;
    if r0[j].is_negative() {
        r0.iter_mut().for_each(|x| *x = -x.clone());
    }
    if let Some(l) = (j + 1..k).find(|&l| !r1[l].is_zero()) {
        if r1[l].is_negative() {
            r1.iter_mut().for_each(|x| *x = -x.clone());
        }
        let q = r0[l].div_floor(&r1[l]);
        for i in 0..k {
            r0[i] = &r0[i] - &q * &r1[i];
        }
    }
    (0..k).map(|i| LatticeVec::new(r0[i].clone(), r1[i].clone())).collect()
}

/// `GL₂(ℤ)` normal form of a lattice polygon around the origin: the
/// lexicographically smallest row-HNF over all starting vertices and both
/// orientations.
pub fn polygon_normal_form(poly: &[LatticeVec]) -> Vec<LatticeVec> {
    let n = poly.len();
    let mut best: Option<Vec<LatticeVec>> = None;
    for start in 0..n {
        for forward in [true, false] {
            let seq: Vec<LatticeVec> = (0..n)
                .map(|i| if forward { poly[(start + i) % n].clone() } else { poly[(start + n - i) % n].clone() })
                .collect();
            let nf = row_hnf(&seq);
            if best.as_ref().is_none_or(|b| nf < *b) {
                best = Some(nf);
            }
        }
    }
    best.unwrap_or_default()
}

/// The sixteen lattice polygons with exactly one interior lattice point,
/// as sorted normal forms.
pub fn reflexive_polygons() -> &'static [Vec<LatticeVec>] {
    static TYPES: OnceLock<Vec<Vec<LatticeVec>>> = OnceLock::new();
    TYPES.get_or_init(|| {
        let maximal: [&[(i64, i64)]; 3] = [
            &[(-1, -1), (2, -1), (-1, 2)],
            &[(-1, -1), (3, -1), (-1, 1)],
            &[(-1, -1), (1, -1), (1, 1), (-1, 1)],
        ];
        let mut found: Vec<Vec<LatticeVec>> = Vec::new();
        for corners in maximal {
            let hull: Vec<LatticeVec> = corners.iter().map(|&(x, y)| LatticeVec::new(x, y)).collect();
            let candidates: Vec<LatticeVec> = lattice_points(&hull).into_iter().filter(|p| !p.is_zero()).collect();
            for mask in 1u32..(1 << candidates.len()) {
                let subset: Vec<LatticeVec> =
                    (0..candidates.len()).filter(|i| mask & (1 << i) != 0).map(|i| candidates[i].clone()).collect();
                let poly = lattice_hull(&subset);
                if poly.len() >= 3 && strictly_inside(&poly, &LatticeVec::zero()) && interior_point_count(&poly).is_one() {
                    let nf = polygon_normal_form(&poly);
                    if !found.contains(&nf) {
                        found.push(nf);
                    }
                }
            }
        }
        found.sort();
        assert_eq!(found.len(), 16, "there are sixteen reflexive polygons");
        found
    })
}

fn strictly_inside(poly: &[LatticeVec], p: &LatticeVec) -> bool {
    let n = poly.len();
    (0..n).all(|i| wedge(&(&poly[(i + 1) % n] - &poly[i]), &(p - &poly[i])).is_positive())
}

fn lattice_points(poly: &[LatticeVec]) -> Vec<LatticeVec> {
    let (x0, x1) = (poly.iter().map(|p| p.x.clone()).min().unwrap(), poly.iter().map(|p| p.x.clone()).max().unwrap());
    let (y0, y1) = (poly.iter().map(|p| p.y.clone()).min().unwrap(), poly.iter().map(|p| p.y.clone()).max().unwrap());
    let n = poly.len();
    let mut out = Vec::new();
    let mut x = x0;
    while x <= x1 {
        let mut y = y0.clone();
        while y <= y1 {
            let p = LatticeVec::new(x.clone(), y.clone());
            if (0..n).all(|i| !wedge(&(&poly[(i + 1) % n] - &poly[i]), &(&p - &poly[i])).is_negative()) {
                out.push(p);
            }
            y += 1;
        }
        x += 1;
    }
    out
}

/// Lattice lengths of the sides of the polar dual of a counter-clockwise
/// lattice polygon around the origin, one per vertex.
///
/// The dual has one vertex per edge (its primitive inward normal); the dual
/// side opposite a vertex joins the normals of the two edges meeting there.
pub fn dual_side_lengths(poly: &[LatticeVec]) -> Result<Vec<Int>> {
    let n = poly.len();
    let normals: Vec<LatticeVec> = (0..n)
        .map(|i| crate::lattice::primitive(&(&poly[(i + 1) % n] - &poly[i])).map(|(e, _)| e.left_normal().into_vec()))
        .collect::<Result<_>>()?;
    Ok((0..n).map(|i| crate::lattice::content(&(&normals[i] - &normals[(i + n - 1) % n]))).collect())
}

/// Classifies the star of a point-type final collision.
pub fn final_star_type(trace: &EvolutionTrace) -> Result<ReflexiveStarReport> {
    let Some(FinalLocus::Point(location)) = &trace.final_locus else { return Err(Error::NotPointFinal) };
    let event = trace
        .events
        .iter()
        .find(|e| e.outcome == EventOutcome::FinalLocus)
        .ok_or_else(|| Error::Internal("point final without a final event".into()))?;
    let mut rays: Vec<(Direction, Int)> = event
        .incoming
        .iter()
        .map(|&id| (trace.particles[id].velocity.opposite(), trace.particles[id].weight.clone()))
        .collect();
    rays.sort_by(|a, b| crate::lattice::angle_cmp(&a.0, &b.0));
    let fail = |msg: String| Err(Error::UnexpectedFinalStar(msg));

    let sum = rays.iter().fold(LatticeVec::zero(), |acc, (d, w)| &acc + &d.scale(w));
    if !sum.is_zero() {
        return fail(format!("weighted directions sum to ({sum})"));
    }
    let dirs: Vec<LatticeVec> = rays.iter().map(|(d, _)| d.vec().clone()).collect();
    let hull = lattice_hull(&dirs);
    if hull.len() != rays.len() || hull.len() < 3 || !interior_point_count(&hull).is_one() || !strictly_inside(&hull, &LatticeVec::zero()) {
        return fail("direction hull does not have the origin as its only interior lattice point".into());
    }
    let dual_side_lengths = dual_side_lengths(&hull)?;
    for (i, v) in hull.iter().enumerate() {
        let w = &rays.iter().find(|(d, _)| d.vec() == v).expect("hull vertices are rays").1;
        if w != &dual_side_lengths[i] {
            return fail(format!("weight {w} at ({v}) differs from dual side length {}", dual_side_lengths[i]));
        }
    }
    let normal_form = polygon_normal_form(&hull);
    let type_index = reflexive_polygons().iter().position(|p| p == &normal_form).map(|i| i + 1);
    Ok(ReflexiveStarReport { location: location.clone(), rays, hull, dual_side_lengths, normal_form, type_index })
}

/// The allowed stars at an endpoint of a segment or ray final locus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EndpointPattern {
    /// Two weight-one trajectories.
    TwoUnit,
    /// Two weight-two trajectories.
    TwoDouble,
    /// Two weight-one trajectories and one of weight `n`.
    UnitHeavyUnit(Int),
}

/// Classifies each endpoint of a segment or ray final locus.
pub fn final_edge_endpoint_type(trace: &EvolutionTrace) -> Result<Vec<(RatPoint, EndpointPattern)>> {
    match &trace.final_locus {
        Some(FinalLocus::Segment(..)) | Some(FinalLocus::Ray(..)) => {}
        Some(FinalLocus::Line(_)) => return Ok(vec![]),
        _ => return Err(Error::NotEdgeFinal),
    }
    let mut out = Vec::new();
    for e in trace.events.iter().filter(|e| e.outcome == EventOutcome::FinalLocus) {
        let mut w: Vec<Int> = e.incoming.iter().map(|&id| trace.particles[id].weight.clone()).collect();
        w.sort();
        let pattern = match w.as_slice() {
            [a, b] if a.is_one() && b.is_one() => EndpointPattern::TwoUnit,
            [a, b] if *a == int(2) && *b == int(2) => EndpointPattern::TwoDouble,
            [a, b, c] if a.is_one() && (b.is_one() || c.is_one()) => {
                EndpointPattern::UnitHeavyUnit(if b.is_one() { c.clone() } else { b.clone() })
            }
            _ => return Err(Error::UnexpectedFinalStar(format!("weights {w:?} at ({})", e.location))),
        };
        out.push((e.location.clone(), pattern));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn poly(v: &[(i64, i64)]) -> ConvexDomain {
        ConvexDomain::bounded(v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect()).unwrap()
    }

    fn square() -> ConvexDomain {
        poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])
    }

    fn rectangle() -> ConvexDomain {
        poly(&[(0, 0), (3, 0), (3, 1), (0, 1)])
    }

    fn pentagon() -> ConvexDomain {
        poly(&[(0, 0), (4, 0), (4, 1), (2, 3), (0, 1)])
    }

    fn quadrilateral() -> ConvexDomain {
        poly(&[(0, 0), (1, -2), (1, 3), (0, 1)])
    }

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    #[test]
    fn caustic_examples() {
        let c = caustic_of(&simulate(&square()).unwrap()).unwrap();
        assert_eq!(c.edges.len(), 4);
        assert!(c.edges.iter().all(|e| e.weight.is_one() && e.length() == Some(rat(1, 1))));
        let c = caustic_of(&simulate(&rectangle()).unwrap()).unwrap();
        let locus: Vec<&CurveEdge> = c.edges.iter().filter(|e| e.kind == EdgeKind::FinalLocus).collect();
        assert_eq!(locus.len(), 1);
        assert_eq!(locus[0].weight, int(2));
        assert_eq!(
            locus[0].shape,
            EdgeShape::Segment(RatPoint::new(rat(1, 2), rat(1, 2)), RatPoint::new(rat(5, 2), rat(1, 2)))
        );
        let cone = ConvexDomain::two_rays(vec![RatPoint::origin()], dir(0, 1), dir(3, -1)).unwrap();
        let c = caustic_of(&simulate(&cone).unwrap()).unwrap();
        assert_eq!(c.edges, vec![CurveEdge {
            shape: EdgeShape::Ray(RatPoint::origin(), dir(1, 0)),
            weight: int(3),
            kind: EdgeKind::Trajectory
        }]);
    }

    #[test]
    fn series_examples() {
        assert_eq!(eval_series(&square(), &RatPoint::from_ints(1, 1)).unwrap(), rat(1, 1));
        assert_eq!(eval_series(&square(), &RatPoint::from_ints(2, 1)).unwrap(), rat(0, 1));
        assert_eq!(eval_series(&pentagon(), &RatPoint::new(rat(2, 1), rat(3, 2))).unwrap(), rat(3, 2));
        assert!(matches!(eval_series(&square(), &RatPoint::from_ints(3, 1)), Err(Error::PointOutsideDomain(_))));
    }

    #[test]
    fn noether_examples() {
        let cases = [
            (square(), rat(4, 1), rat(8, 1)),
            (rectangle(), rat(6, 1), rat(8, 1)),
            (pentagon(), rat(8, 1), rat(10, 1)),
            (quadrilateral(), rat(6, 1), rat(8, 1)),
        ];
        for (d, lc, lb) in cases {
            let a = noether_audit(&simulate(&d).unwrap()).unwrap();
            assert_eq!((a.l_caustic, a.l_boundary, a.residual), (lc, lb, rat(0, 1)));
        }
    }

    #[test]
    fn twelve_examples() {
        let a = twelve_sum(&poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])).unwrap();
        assert_eq!(a.total, int(12));
        assert!(a.per_edge.iter().all(|(_, d)| *d == int(2)));
        let a = twelve_sum(&poly(&[(0, 0), (1, 0), (0, 1)])).unwrap();
        assert!(a.per_edge.iter().all(|(_, d)| *d == int(3)));
        let a = twelve_sum(&quadrilateral()).unwrap();
        let mut edges: Vec<Int> = a.per_edge.iter().map(|(_, d)| d.clone()).collect();
        edges.sort();
        assert_eq!(edges, vec![int(-2), int(2), int(2), int(6)]);
        assert_eq!(a.total, int(12));
        assert!(matches!(twelve_sum(&poly(&[(0, 0), (7, 0), (0, 3)])), Err(Error::NotCanonical(_))));
    }

    #[test]
    fn rotation_examples() {
        let v: Vec<RatPoint> = [(0, 0), (1, 0), (1, 1), (0, 1)].iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect();
        let out = rotation_twelve(&BrokenLine { vertices: v.clone(), coorientation: Coorientation::Right }).unwrap();
        assert_eq!((out.audit.total.clone(), out.rot), (int(12), 1));
        let out = rotation_twelve(&BrokenLine { vertices: v.clone(), coorientation: Coorientation::Left }).unwrap();
        assert_eq!((out.audit.total.clone(), out.rot), (int(-12), -1));
        let twice: Vec<RatPoint> = v.iter().chain(v.iter()).cloned().collect();
        let out = rotation_twelve(&BrokenLine { vertices: twice, coorientation: Coorientation::Right }).unwrap();
        assert_eq!((out.audit.total, out.rot), (int(24), 2));
    }

    #[test]
    fn final_star_examples() {
        assert_eq!(reflexive_polygons().len(), 16);
        let r = final_star_type(&simulate(&square()).unwrap()).unwrap();
        assert_eq!(r.hull.len(), 4);
        let r = final_star_type(&simulate(&pentagon()).unwrap()).unwrap();
        let mut hull = r.hull.clone();
        hull.sort();
        assert_eq!(hull, vec![LatticeVec::new(-2, -1), LatticeVec::new(0, 1), LatticeVec::new(2, -1)]);
        assert!(r.rays.contains(&(dir(0, 1), int(2))));
        let r = final_star_type(&simulate(&poly(&[(0, 0), (2, 0), (0, 2)])).unwrap()).unwrap();
        assert!(r.type_index.is_some());
        assert!(matches!(final_star_type(&simulate(&rectangle()).unwrap()), Err(Error::NotPointFinal)));
    }

    #[test]
    fn endpoint_examples() {
        let e = final_edge_endpoint_type(&simulate(&rectangle()).unwrap()).unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|(_, p)| *p == EndpointPattern::TwoUnit));
        let e = final_edge_endpoint_type(&simulate(&quadrilateral()).unwrap()).unwrap();
        let points: Vec<RatPoint> = e.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(points, vec![RatPoint::new(rat(1, 2), rat(-1, 2)), RatPoint::new(rat(1, 2), rat(3, 2))]);
        let strip = ConvexDomain::strip(dir(0, 1), rat(0, 1), rat(3, 1)).unwrap();
        assert!(final_edge_endpoint_type(&simulate(&strip).unwrap()).unwrap().is_empty());
    }
}

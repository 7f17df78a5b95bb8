//! Convex rational domains and their tropical wave-front evolution.
//!
//! A domain is stored both as a vertex list and as an ordered list of
//! support half-planes `{λ(p) ≥ c}`.  Propagating by time `t` shifts every
//! support half-plane to `{λ(p) ≥ c + t}` — including the infinitely many
//! half-planes touching the domain at a single vertex.  Those are finitely
//! generated: at a vertex `v` with normal cone `σ`, every lattice covector of
//! `σ` is a nonnegative combination of Klein-polygon vertices of `σ` plus an
//! element of `σ`, so the half-planes `{k(p) ≥ k(v) + t}` for Klein vertices
//! `k` suffice.  The simulator therefore starts from this finite constraint
//! set and tracks the front as a kinetic polygon whose vertices (particles)
//! move with constant velocity between collision events.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{ensure, Error, Result};
use crate::lattice::{
    axis_crossing, convex_hull, int, intersect_lines, pair, rat_int, tropical_length, wedge, Direction,
    Extended, Int, LatticeVec, Rat, RatPoint, UnimodularAffineMap,
};
use crate::trig::{self, Angle};

/// The four shapes of admissible rational domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainKind {
    /// Convex polygon.
    Bounded,
    /// Convex polygonal chain closed off by two boundary rays.
    TwoRays,
    HalfPlane,
    /// Region between two parallel lines.
    Strip,
}

impl DomainKind {
    pub fn name(&self) -> &'static str {
        match self {
            DomainKind::Bounded => "bounded",
            DomainKind::TwoRays => "tworays",
            DomainKind::HalfPlane => "halfplane",
            DomainKind::Strip => "strip",
        }
    }
}

/// The half-plane `{p : λ(p) ≥ c}` with `λ` primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    pub lambda: Direction,
    pub c: Rat,
}

impl Support {
    pub fn new(lambda: Direction, c: Rat) -> Self {
        Support { lambda, c }
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        pair(&self.lambda, p) >= self.c
    }

    /// `{λ(p) ≥ c + t}`.
    pub fn shifted(&self, t: &Rat) -> Support {
        Support { lambda: self.lambda.clone(), c: &self.c + t }
    }

    /// Direction of the boundary line, with the half-plane on its left.
    pub fn edge_direction(&self) -> Direction {
        Direction::new_unchecked(LatticeVec::new(self.lambda.y.clone(), -&self.lambda.x))
    }
}

/// Shifts a support half-plane by `t`: `(λ, c) ↦ (λ, c + t)`.
pub fn propagate_half_plane(lambda: &Direction, c: &Rat, t: &Rat) -> (Direction, Rat) {
    (lambda.clone(), c + t)
}

/// A convex domain with rational-slope boundary.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexDomain {
    kind: DomainKind,
    vertices: Vec<RatPoint>,
    rays: Option<(Direction, Direction)>,
    support: Vec<Support>,
}

fn edge_dir(from: &RatPoint, to: &RatPoint) -> Result<Direction> {
    (to - from).direction()
}

fn dedupe_consecutive(points: Vec<RatPoint>, cyclic: bool) -> Vec<RatPoint> {
    let mut out: Vec<RatPoint> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while cyclic && out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

fn all_collinear(points: &[RatPoint]) -> bool {
    let base = &points[0];
    let Some(other) = points.iter().find(|p| *p != base) else { return true };
    let u = other - base;
    points.iter().all(|p| crate::lattice::wedge_rat(&u, &(p - base)).is_zero())
}

impl ConvexDomain {
    /// Builds a domain from its vertices (`rays = None`: a polygon) or from a
    /// boundary chain plus the two boundary rays `(rayFirst, rayLast)`: the
    /// boundary arrives at the first vertex along `−rayFirst` and leaves the
    /// last one along `rayLast`.  Either orientation is accepted; duplicate
    /// and collinear points are removed and convexity is checked.
    pub fn from_vertices(points: Vec<RatPoint>, rays: Option<(Direction, Direction)>) -> Result<Self> {
        match rays {
            None => ConvexDomain::bounded(points),
            Some((first, last)) => ConvexDomain::two_rays(points, first, last),
        }
    }

    /// A convex polygon.
    pub fn bounded(points: Vec<RatPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut pts = dedupe_consecutive(points, true);
        if pts.len() < 3 || all_collinear(&pts) {
            return Err(Error::DegenerateDomain("fewer than three non-collinear vertices".into()));
        }
        // Drop straight vertices; reject spikes.
        loop {
            let n = pts.len();
            let mut removed = false;
            for i in 0..n {
                let din = edge_dir(&pts[(i + n - 1) % n], &pts[i])?;
                let dout = edge_dir(&pts[i], &pts[(i + 1) % n])?;
                if wedge(&din, &dout).is_zero() {
                    if din != dout {
                        return Err(Error::NonConvexInput(format!("boundary doubles back at ({})", pts[i])));
                    }
                    pts.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
            if pts.len() < 3 {
                return Err(Error::DegenerateDomain("fewer than three non-collinear vertices".into()));
            }
        }
        let n = pts.len();
        let dirs: Vec<Direction> =
            (0..n).map(|i| edge_dir(&pts[i], &pts[(i + 1) % n])).collect::<Result<_>>()?;
        let turns: Vec<Int> = (0..n).map(|i| wedge(&dirs[(i + n - 1) % n], &dirs[i])).collect();
        if turns.iter().all(|t| t.is_negative()) {
            pts.reverse();
            return ConvexDomain::bounded(pts);
        }
        if !turns.iter().all(|t| t.is_positive()) {
            return Err(Error::NonConvexInput("turns change sign".into()));
        }
        let winding: i64 = (0..n).map(|i| axis_crossing(&dirs[i], &dirs[(i + 1) % n])).sum();
        if winding != 1 {
            return Err(Error::NonConvexInput(format!("boundary winds {winding} times")));
        }
        let start = (0..n).min_by(|&a, &b| pts[a].cmp(&pts[b])).expect("nonempty");
        pts.rotate_left(start);
        let support = (0..n)
            .map(|i| {
                let d = edge_dir(&pts[i], &pts[(i + 1) % n])?;
                let lambda = d.left_normal();
                let c = pair(&lambda, &pts[i]);
                Ok(Support { lambda, c })
            })
            .collect::<Result<_>>()?;
        Ok(ConvexDomain { kind: DomainKind::Bounded, vertices: pts, rays: None, support })
    }

    /// A domain bounded by a convex chain and two rays; see [`from_vertices`](Self::from_vertices).
    pub fn two_rays(points: Vec<RatPoint>, ray_first: Direction, ray_last: Direction) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if ray_first == ray_last.opposite() {
            return Err(Error::DegenerateDomain("antiparallel rays bound a strip or half-plane".into()));
        }
        let pts = dedupe_consecutive(points, false);
        match ConvexDomain::chain(pts.clone(), ray_first.clone(), ray_last.clone()) {
            Ok(d) => Ok(d),
            Err(first_err) => {
                let mut rev = pts;
                rev.reverse();
                ConvexDomain::chain(rev, ray_last, ray_first).map_err(|_| first_err)
            }
        }
    }

    fn chain(mut pts: Vec<RatPoint>, ray_first: Direction, ray_last: Direction) -> Result<Self> {
        let d_in = ray_first.opposite();
        loop {
            let n = pts.len();
            let mut removed = false;
            for i in 0..n {
                let before = if i == 0 { d_in.clone() } else { edge_dir(&pts[i - 1], &pts[i])? };
                let after = if i + 1 == n { ray_last.clone() } else { edge_dir(&pts[i], &pts[i + 1])? };
                if wedge(&before, &after).is_zero() {
                    if before != after {
                        return Err(Error::NonConvexInput(format!("boundary doubles back at ({})", pts[i])));
                    }
                    pts.remove(i);
                    removed = true;
                    break;
                }
            }
            if !removed {
                break;
            }
            if pts.is_empty() {
                return Err(Error::DegenerateDomain("boundary is a straight line".into()));
            }
        }
        let n = pts.len();
        let mut dirs = vec![d_in.clone()];
        for i in 0..n - 1 {
            dirs.push(edge_dir(&pts[i], &pts[i + 1])?);
        }
        dirs.push(ray_last.clone());
        let convex = dirs.windows(2).all(|w| wedge(&w[0], &w[1]).is_positive())
            && dirs.iter().all(|d| !wedge(&d_in, d).is_negative());
        if !convex {
            return Err(Error::NonConvexInput("boundary chain with rays is not convex".into()));
        }
        let mut support = Vec::with_capacity(n + 1);
        for (i, d) in dirs.iter().enumerate() {
            let anchor = if i == 0 { &pts[0] } else { &pts[i - 1] };
            let lambda = d.left_normal();
            let c = pair(&lambda, anchor);
            support.push(Support { lambda, c });
        }
        Ok(ConvexDomain { kind: DomainKind::TwoRays, vertices: pts, rays: Some((ray_first, ray_last)), support })
    }

    /// The Minkowski sum of the convex hull of `points` with the cone
    /// spanned by `r1` and `r2` (a ray when they coincide).
    pub fn hull_plus_cone(points: &[RatPoint], r1: &Direction, r2: &Direction) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let w = wedge(r1, r2);
        let (a, b) = if w.is_negative() { (r2, r1) } else { (r1, r2) };
        if w.is_zero() && r1 != r2 {
            return Err(Error::DegenerateDomain("antiparallel rays bound a strip or half-plane".into()));
        }
        let hull = convex_hull(points);
        let n_in = LatticeVec::new(b.y.clone(), -&b.x);
        let n_out = LatticeVec::new(-&a.y, a.x.clone());
        let argmin = |lam: &LatticeVec| {
            (0..hull.len()).min_by(|&i, &j| pair(lam, &hull[i]).cmp(&pair(lam, &hull[j]))).expect("nonempty")
        };
        let (i_in, i_out) = (argmin(&n_in), argmin(&n_out));
        let mut chain = vec![hull[i_in].clone()];
        let mut k = i_in;
        while k != i_out {
            k = (k + 1) % hull.len();
            chain.push(hull[k].clone());
        }
        ConvexDomain::chain(chain, b.clone(), a.clone())
    }

    /// `{λ(p) ≥ c}`.
    pub fn half_plane(lambda: Direction, c: Rat) -> Self {
        let support = vec![Support { lambda, c }];
        ConvexDomain { kind: DomainKind::HalfPlane, vertices: vec![], rays: None, support }
    }

    /// `{c_low ≤ λ(p) ≤ c_high}`, stored with a sign-normalised `λ`.
    pub fn strip(lambda: Direction, c_low: Rat, c_high: Rat) -> Result<Self> {
        if c_low >= c_high {
            return Err(Error::DegenerateDomain(format!("strip bounds {c_low} ≥ {c_high}")));
        }
        let (lambda, lo, hi) =
            if lambda.sign_normalized() == lambda { (lambda, c_low, c_high) } else { (lambda.opposite(), -c_high, -c_low) };
        let support = vec![Support { lambda: lambda.clone(), c: lo }, Support { lambda: lambda.opposite(), c: -hi }];
        Ok(ConvexDomain { kind: DomainKind::Strip, vertices: vec![], rays: None, support })
    }

    /// Rebuilds a domain of the given kind from an ordered side list by
    /// intersecting consecutive sides.
    pub fn from_sides(kind: DomainKind, sides: &[Support]) -> Result<Self> {
        match kind {
            DomainKind::HalfPlane => Ok(ConvexDomain::half_plane(sides[0].lambda.clone(), sides[0].c.clone())),
            DomainKind::Strip => {
                ConvexDomain::strip(sides[0].lambda.clone(), sides[0].c.clone(), -sides[1].c.clone())
            }
            DomainKind::Bounded => {
                let n = sides.len();
                let pts = (0..n).map(|j| side_intersection(&sides[j], &sides[(j + 1) % n])).collect::<Result<_>>()?;
                ConvexDomain::bounded(pts)
            }
            DomainKind::TwoRays => {
                let n = sides.len();
                let pts = (0..n - 1).map(|j| side_intersection(&sides[j], &sides[j + 1])).collect::<Result<_>>()?;
                let first = sides[0].edge_direction().opposite();
                let last = sides[n - 1].edge_direction();
                ConvexDomain::two_rays(pts, first, last)
            }
        }
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    /// `(rayFirst, rayLast)` for [`DomainKind::TwoRays`].
    pub fn rays(&self) -> Option<&(Direction, Direction)> {
        self.rays.as_ref()
    }

    /// Irredundant support half-planes in counter-clockwise boundary order.
    pub fn support(&self) -> &[Support] {
        &self.support
    }

    pub fn is_bounded(&self) -> bool {
        self.kind == DomainKind::Bounded
    }

    /// Whether every vertex has integer coordinates.
    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().all(|v| v.to_lattice().is_some())
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        self.support.iter().all(|s| s.contains(p))
    }

    /// Whether `p` lies in the interior.
    pub fn contains_strictly(&self, p: &RatPoint) -> bool {
        self.support.iter().all(|s| pair(&s.lambda, p) > s.c)
    }

    /// `sup{λ(p) : p ∈ domain}`.
    pub fn support_value(&self, lambda: &Direction) -> Extended {
        match self.kind {
            DomainKind::Bounded => {
                Extended::Finite(self.vertices.iter().map(|v| pair(lambda, v)).max().expect("nonempty"))
            }
            DomainKind::TwoRays => {
                let (r1, r2) = self.rays.as_ref().expect("two rays");
                if lambda.dot(r1).is_positive() || lambda.dot(r2).is_positive() {
                    Extended::Infinity
                } else {
                    Extended::Finite(self.vertices.iter().map(|v| pair(lambda, v)).max().expect("nonempty"))
                }
            }
            DomainKind::HalfPlane | DomainKind::Strip => self
                .support
                .iter()
                .find(|s| s.lambda.opposite() == *lambda)
                .map(|s| Extended::Finite(-s.c.clone()))
                .unwrap_or(Extended::Infinity),
        }
    }

    /// The angle of the domain at each vertex, legs pointing along the
    /// boundary away from the vertex.
    pub fn vertex_angles(&self) -> Vec<Angle> {
        let sides = &self.support;
        let n = sides.len();
        match self.kind {
            DomainKind::Bounded => (0..n)
                .map(|i| vertex_angle(&sides[(i + n - 1) % n], &sides[i], &self.vertices[i]))
                .collect(),
            DomainKind::TwoRays => {
                (0..n - 1).map(|i| vertex_angle(&sides[i], &sides[i + 1], &self.vertices[i])).collect()
            }
            _ => vec![],
        }
    }

    /// Whether every vertex angle is canonical (single-ray caustic).
    pub fn is_canonical(&self) -> bool {
        self.vertex_angles().iter().all(trig::is_canonical)
    }

    /// Tropical lengths of the bounded sides, in boundary order.
    pub fn side_lengths(&self) -> Vec<Rat> {
        match self.kind {
            DomainKind::Bounded => {
                let n = self.vertices.len();
                (0..n).map(|i| tropical_length(&(&self.vertices[(i + 1) % n] - &self.vertices[i]))).collect()
            }
            DomainKind::TwoRays => {
                self.vertices.windows(2).map(|w| tropical_length(&(&w[1] - &w[0]))).collect()
            }
            _ => vec![],
        }
    }

    /// Sum of the tropical lengths of the sides of a polygon.
    pub fn tropical_perimeter(&self) -> Result<Rat> {
        if !self.is_bounded() {
            return Err(Error::Unbounded);
        }
        Ok(self.side_lengths().into_iter().fold(Rat::zero(), |a, b| a + b))
    }

    /// Image under a tropical isomorphism.
    pub fn transform(&self, m: &UnimodularAffineMap) -> Result<ConvexDomain> {
        match self.kind {
            DomainKind::Bounded => ConvexDomain::bounded(self.vertices.iter().map(|v| m.apply_point(v)).collect()),
            DomainKind::TwoRays => {
                let (r1, r2) = self.rays.as_ref().expect("two rays");
                ConvexDomain::two_rays(
                    self.vertices.iter().map(|v| m.apply_point(v)).collect(),
                    m.apply_direction(r1),
                    m.apply_direction(r2),
                )
            }
            DomainKind::HalfPlane | DomainKind::Strip => {
                let sides: Vec<Support> = self
                    .support
                    .iter()
                    .map(|s| {
                        let lambda = Direction::new_unchecked(m.apply_covector(&s.lambda));
                        let c = &s.c + pair(&lambda, m.translation());
                        Support { lambda, c }
                    })
                    .collect();
                ConvexDomain::from_sides(self.kind, &sides)
            }
        }
    }
}

fn vertex_angle(before: &Support, after: &Support, apex: &RatPoint) -> Angle {
    let next = after.edge_direction();
    let prev = before.edge_direction().opposite();
    Angle::new(next, prev).expect("strictly convex vertex").with_apex(apex.clone())
}

fn side_intersection(a: &Support, b: &Support) -> Result<RatPoint> {
    intersect_lines(&a.lambda, &a.c, &b.lambda, &b.c)
        .ok_or_else(|| Error::Internal(format!("consecutive sides ({}) and ({}) are parallel", a.lambda, b.lambda)))
}

/// A moving vertex of the front.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Particle {
    pub id: usize,
    pub birth_time: Rat,
    pub birth_point: RatPoint,
    pub velocity: Direction,
    pub weight: Int,
    pub death_time: Option<Rat>,
    pub death_point: Option<RatPoint>,
}

impl Particle {
    pub fn position(&self, t: &Rat) -> RatPoint {
        self.birth_point.offset(&self.velocity, &(t - &self.birth_time))
    }

    /// `weight · velocity`.
    pub fn momentum(&self) -> LatticeVec {
        self.velocity.scale(&self.weight)
    }
}

/// What a collision produces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EventOutcome {
    NewParticle(usize),
    FinalLocus,
}

/// Particles meeting at one point at one time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Event {
    pub time: Rat,
    pub location: RatPoint,
    pub incoming: Vec<usize>,
    pub outcome: EventOutcome,
}

/// The degenerate set the domain collapses to at the final time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FinalLocus {
    Point(RatPoint),
    /// Endpoints in lexicographic order.
    Segment(RatPoint, RatPoint),
    Ray(RatPoint, Direction),
    /// The line `{λ(p) = c}`.
    Line(Support),
}

/// Shape tag of a final locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocusKind {
    Point,
    Segment,
    Ray,
    Line,
    None,
}

impl FinalLocus {
    pub fn kind(&self) -> LocusKind {
        match self {
            FinalLocus::Point(_) => LocusKind::Point,
            FinalLocus::Segment(..) => LocusKind::Segment,
            FinalLocus::Ray(..) => LocusKind::Ray,
            FinalLocus::Line(_) => LocusKind::Line,
        }
    }

    /// Tropical length (`None` when infinite).
    pub fn length(&self) -> Option<Rat> {
        match self {
            FinalLocus::Point(_) => Some(Rat::zero()),
            FinalLocus::Segment(a, b) => Some(tropical_length(&(b - a))),
            FinalLocus::Ray(..) | FinalLocus::Line(_) => None,
        }
    }
}

/// The state of a propagated domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Front {
    Domain(ConvexDomain),
    Locus(FinalLocus),
    Empty,
}

impl Front {
    /// Propagates further by `s ≥ 0`.
    pub fn propagate(&self, s: &Rat) -> Result<Front> {
        if s.is_negative() {
            return Err(Error::NegativeTime(s.to_string()));
        }
        match self {
            Front::Domain(d) => simulate(d)?.front_at(s),
            Front::Locus(_) if s.is_zero() => Ok(self.clone()),
            _ => Ok(Front::Empty),
        }
    }

    pub fn domain(&self) -> Option<&ConvexDomain> {
        match self {
            Front::Domain(d) => Some(d),
            _ => None,
        }
    }
}

/// Constraints in force between two consecutive events.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Phase {
    start: Rat,
    sides: Vec<Support>,
    particles: Vec<usize>,
}

/// Full event history of a wave-front evolution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvolutionTrace {
    pub initial: ConvexDomain,
    pub particles: Vec<Particle>,
    pub events: Vec<Event>,
    pub final_time: Extended,
    pub final_locus: Option<FinalLocus>,
    constraints: Vec<Support>,
    phases: Vec<Phase>,
}

/// Per-edge data of the front at a given time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrontEdge {
    /// The edge's half-plane at that time.
    pub support: Support,
    pub start: RatPoint,
    pub end: RatPoint,
    pub length: Rat,
    pub gradient: Int,
    pub start_particle: usize,
    pub end_particle: usize,
    /// Normals of the neighbouring sides (previous, next).
    pub neighbours: (Direction, Direction),
}

fn velocity_of(a: &Support, b: &Support) -> Result<(Direction, Int)> {
    let one = Rat::one();
    let v = intersect_lines(&a.lambda, &one, &b.lambda, &one)
        .ok_or_else(|| Error::Internal("parallel consecutive sides".into()))?;
    let lattice = v.to_lattice().ok_or_else(|| Error::Internal(format!("vertex velocity ({v}) is not integral")))?;
    let dir = Direction::from_vec(lattice).map_err(|e| Error::Internal(format!("vertex velocity: {e}")))?;
    Ok((dir, wedge(&a.lambda, &b.lambda).abs()))
}

fn along(e: &Direction, v: &RatPoint) -> Rat {
    if !e.x.is_zero() {
        &v.x / rat_int(&e.x)
    } else {
        &v.y / rat_int(&e.y)
    }
}

/// Intermediate Klein-polygon vertices of each normal cone, inserted as
/// zero-length sides.
fn klein_expand(kind: DomainKind, sides: &[Support]) -> Result<Vec<Support>> {
    let n = sides.len();
    let nverts = if kind == DomainKind::Bounded { n } else { n - 1 };
    let mut out = Vec::new();
    for j in 0..n {
        out.push(sides[j].clone());
        if j < nverts {
            let next = &sides[(j + 1) % n];
            let apex = side_intersection(&sides[j], next)?;
            let sail = trig::klein_vertices(&sides[j].lambda, &next.lambda);
            for k in &sail[1..sail.len() - 1] {
                let lambda = Direction::new_unchecked(k.clone());
                let c = pair(&lambda, &apex);
                out.push(Support { lambda, c });
            }
        }
    }
    Ok(out)
}

struct Kinetic {
    cyclic: bool,
}

impl Kinetic {
    fn nverts(&self, nsides: usize) -> usize {
        if self.cyclic {
            nsides
        } else {
            nsides - 1
        }
    }

    fn vertex(&self, sides: &[Support], j: usize, t: &Rat) -> Result<RatPoint> {
        let n = sides.len();
        side_intersection(&sides[j].shifted(t), &sides[(j + 1) % n].shifted(t))
    }

    /// Indices of the sides with two moving endpoints.
    fn bounded_sides(&self, n: usize) -> std::ops::Range<usize> {
        if self.cyclic {
            0..n
        } else {
            1..n - 1
        }
    }
}

/// Runs the event-driven simulation.
pub fn simulate(d: &ConvexDomain) -> Result<EvolutionTrace> {
    match d.kind {
        DomainKind::HalfPlane => Ok(EvolutionTrace {
            initial: d.clone(),
            particles: vec![],
            events: vec![],
            final_time: Extended::Infinity,
            final_locus: None,
            constraints: d.support.clone(),
            phases: vec![Phase { start: Rat::zero(), sides: d.support.clone(), particles: vec![] }],
        }),
        DomainKind::Strip => {
            let lo = &d.support[0].c;
            let hi = -&d.support[1].c;
            let half = (&hi - lo) / rat_int(&int(2));
            let middle = Support { lambda: d.support[0].lambda.clone(), c: lo + &half };
            Ok(EvolutionTrace {
                initial: d.clone(),
                particles: vec![],
                events: vec![],
                final_time: Extended::Finite(half),
                final_locus: Some(FinalLocus::Line(middle)),
                constraints: d.support.clone(),
                phases: vec![Phase { start: Rat::zero(), sides: d.support.clone(), particles: vec![] }],
            })
        }
        DomainKind::Bounded | DomainKind::TwoRays => simulate_polygonal(d),
    }
}

fn simulate_polygonal(d: &ConvexDomain) -> Result<EvolutionTrace> {
    let kin = Kinetic { cyclic: d.kind == DomainKind::Bounded };
    let zero = Rat::zero();
    let mut sides = klein_expand(d.kind, &d.support)?;
    let constraints = sides.clone();

    let mut particles: Vec<Particle> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    for j in 0..kin.nverts(sides.len()) {
        let (velocity, weight) = velocity_of(&sides[j], &sides[(j + 1) % sides.len()])?;
        let id = particles.len();
        particles.push(Particle {
            id,
            birth_time: zero.clone(),
            birth_point: kin.vertex(&sides, j, &zero)?,
            velocity,
            weight,
            death_time: None,
            death_point: None,
        });
        current.push(id);
    }
    check_initial_caustics(d, &particles)?;

    let mut events: Vec<Event> = Vec::new();
    let mut phases = vec![Phase { start: zero.clone(), sides: sides.clone(), particles: current.clone() }];
    let mut now = zero;
    let final_time;
    let mut final_locus = None;
    loop {
        let n = sides.len();
        let mut tau: Option<Rat> = None;
        let mut vanish_at: Vec<Option<Rat>> = vec![None; n];
        for j in kin.bounded_sides(n) {
            let e = sides[j].edge_direction();
            let s = (j + n - 1) % n;
            let len = along(&e, &(&kin.vertex(&sides, j, &now)? - &kin.vertex(&sides, s, &now)?));
            let dv = particles[current[j]].velocity.vec() - particles[current[s]].velocity.vec();
            let g = along(&e, &dv.to_rat());
            if g.is_negative() {
                let t = &now + len / -g;
                if tau.as_ref().is_none_or(|m| &t < m) {
                    tau = Some(t.clone());
                }
                vanish_at[j] = Some(t);
            }
        }
        let Some(tau) = tau else {
            ensure(!kin.cyclic, || "bounded front never collapses".into())?;
            final_time = Extended::Infinity;
            break;
        };
        let vanish: Vec<bool> = vanish_at.iter().map(|t| t.as_ref() == Some(&tau)).collect();
        let remaining: Vec<usize> = (0..n).filter(|&j| !vanish[j]).collect();
        let is_final = if kin.cyclic {
            remaining.len() < 3
        } else {
            remaining.len() == 2 && sides[0].lambda == sides[n - 1].lambda.opposite()
        };

        if is_final {
            let mut groups: BTreeMap<RatPoint, Vec<usize>> = BTreeMap::new();
            for &id in &current {
                groups.entry(particles[id].position(&tau)).or_default().push(id);
            }
            let points: Vec<RatPoint> = groups.keys().cloned().collect();
            for (location, incoming) in groups {
                for &id in &incoming {
                    particles[id].death_time = Some(tau.clone());
                    particles[id].death_point = Some(location.clone());
                }
                events.push(Event { time: tau.clone(), location, incoming, outcome: EventOutcome::FinalLocus });
            }
            final_locus = Some(if kin.cyclic {
                if points.len() == 1 {
                    FinalLocus::Point(points[0].clone())
                } else {
                    let first = points.first().expect("nonempty").clone();
                    let last = points.last().expect("nonempty").clone();
                    let u = &last - &first;
                    ensure(points.iter().all(|p| crate::lattice::wedge_rat(&u, &(p - &first)).is_zero()), || {
                        "final points are not collinear".into()
                    })?;
                    FinalLocus::Segment(first, last)
                }
            } else {
                let r = sides[0].edge_direction().opposite();
                let start = points
                    .iter()
                    .min_by(|a, b| pair(&r, a).cmp(&pair(&r, b)))
                    .expect("nonempty")
                    .clone();
                FinalLocus::Ray(start, r)
            });
            final_time = Extended::Finite(tau);
            break;
        }

        let m = remaining.len();
        let mut new_sides = Vec::with_capacity(m);
        let mut new_current = Vec::with_capacity(m);
        let pairs = if kin.cyclic { m } else { m - 1 };
        for i in 0..m {
            new_sides.push(sides[remaining[i]].clone());
        }
        for i in 0..pairs {
            let a = remaining[i];
            let b = remaining[(i + 1) % m];
            if (a + 1) % n == b {
                new_current.push(current[a]);
                continue;
            }
            // Sides a+1 … b−1 vanished; vertices a … b−1 collide.
            let mut incoming = Vec::new();
            let mut vanished = Vec::new();
            let mut k = a;
            while k != b {
                incoming.push(current[k]);
                if k != a {
                    vanished.push(sides[k].lambda.clone());
                }
                k = (k + 1) % n;
            }
            let location = side_intersection(&sides[a].shifted(&tau), &sides[b].shifted(&tau))?;
            for &id in &incoming {
                ensure(particles[id].position(&tau) == location, || {
                    format!("particle {id} misses the collision point ({location})")
                })?;
            }
            let outer = Angle::new(sides[a].lambda.clone(), sides[b].lambda.clone())?;
            ensure(!outer.reversed && trig::validate_convex_subdivision(&outer, &vanished), || {
                format!("collision at ({location}) is not a convex-type subdivision")
            })?;
            let (velocity, weight) = velocity_of(&sides[a], &sides[b])?;
            let angle = vertex_angle(&sides[a], &sides[b], &location);
            let rays = trig::cone_caustic(&angle);
            ensure(rays.len() == 1 && rays[0].direction == velocity && rays[0].weight == weight, || {
                format!("merged vertex at ({location}) is not canonical")
            })?;
            let id = particles.len();
            for &p in &incoming {
                particles[p].death_time = Some(tau.clone());
                particles[p].death_point = Some(location.clone());
            }
            particles.push(Particle {
                id,
                birth_time: tau.clone(),
                birth_point: location.clone(),
                velocity,
                weight,
                death_time: None,
                death_point: None,
            });
            events.push(Event { time: tau.clone(), location, incoming, outcome: EventOutcome::NewParticle(id) });
            new_current.push(id);
        }
        sides = new_sides;
        current = new_current;
        now = tau;
        phases.push(Phase { start: now.clone(), sides: sides.clone(), particles: current.clone() });
    }

    Ok(EvolutionTrace {
        initial: d.clone(),
        particles,
        events,
        final_time,
        final_locus,
        constraints,
        phases,
    })
}

/// Particles born at each initial vertex must be the rays of that vertex's
/// cone caustic.
fn check_initial_caustics(d: &ConvexDomain, particles: &[Particle]) -> Result<()> {
    let mut born: BTreeMap<&RatPoint, Vec<(Direction, Int)>> = BTreeMap::new();
    for p in particles {
        born.entry(&p.birth_point).or_default().push((p.velocity.clone(), p.weight.clone()));
    }
    for angle in d.vertex_angles() {
        let mut expect: Vec<(Direction, Int)> =
            trig::cone_caustic(&angle).into_iter().map(|r| (r.direction, r.weight)).collect();
        let mut got = born.get(&angle.apex).cloned().unwrap_or_default();
        expect.sort();
        got.sort();
        ensure(expect == got, || format!("particles at ({}) disagree with the cone caustic", angle.apex))?;
    }
    Ok(())
}

impl EvolutionTrace {
    /// The finite constraint set: initial supports plus the Klein-polygon
    /// covectors of every vertex.
    pub fn constraints(&self) -> &[Support] {
        &self.constraints
    }

    /// Start times of the constant-combinatorics phases.
    pub fn phase_starts(&self) -> Vec<Rat> {
        self.phases.iter().map(|p| p.start.clone()).collect()
    }

    /// Times at which the dual fan changes: `0` when the initial domain is
    /// not canonical, every collision time, and the final time.
    pub fn critical_times(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        if self.constraints.len() != self.initial.support.len() {
            out.push(Rat::zero());
        }
        for e in &self.events {
            if out.last() != Some(&e.time) {
                out.push(e.time.clone());
            }
        }
        if let Extended::Finite(t) = &self.final_time {
            if out.last() != Some(t) {
                out.push(t.clone());
            }
        }
        out
    }

    fn phase_at(&self, t: &Rat) -> &Phase {
        self.phases.iter().rev().find(|p| &p.start <= t).expect("phase zero starts at zero")
    }

    /// `Φ(t)`: the domain, the final locus at the final time, or empty beyond.
    pub fn front_at(&self, t: &Rat) -> Result<Front> {
        if t.is_negative() {
            return Err(Error::NegativeTime(t.to_string()));
        }
        if t.is_zero() {
            return Ok(Front::Domain(self.initial.clone()));
        }
        if let Extended::Finite(tf) = &self.final_time {
            if t == tf {
                return Ok(Front::Locus(self.final_locus.clone().expect("finite final time has a locus")));
            }
            if t > tf {
                return Ok(Front::Empty);
            }
        }
        let phase = self.phase_at(t);
        let shifted: Vec<Support> = phase.sides.iter().map(|s| s.shifted(t)).collect();
        ConvexDomain::from_sides(self.initial.kind, &shifted).map(Front::Domain)
    }

    /// Particles alive at time `t` (vertices of `Φ(t)` for `0 < t < t_Φ`).
    pub fn alive_at(&self, t: &Rat) -> Vec<&Particle> {
        self.particles
            .iter()
            .filter(|p| &p.birth_time <= t && p.death_time.as_ref().is_none_or(|d| t < d))
            .collect()
    }

    /// Bounded edges of the front at `0 ≤ t < t_Φ` with positive length,
    /// together with their length gradients.
    pub fn front_edges(&self, t: &Rat) -> Result<Vec<FrontEdge>> {
        if t.is_negative() {
            return Err(Error::NegativeTime(t.to_string()));
        }
        if let Extended::Finite(tf) = &self.final_time {
            if t >= tf {
                return Ok(vec![]);
            }
        }
        let kin = Kinetic { cyclic: self.initial.kind == DomainKind::Bounded };
        if !matches!(self.initial.kind, DomainKind::Bounded | DomainKind::TwoRays) {
            return Ok(vec![]);
        }
        let phase = self.phase_at(t);
        let sides = &phase.sides;
        let n = sides.len();
        let mut out = Vec::new();
        for j in kin.bounded_sides(n) {
            let s = (j + n - 1) % n;
            let start = kin.vertex(sides, s, t)?;
            let end = kin.vertex(sides, j, t)?;
            let e = sides[j].edge_direction();
            let length = along(&e, &(&end - &start));
            if !length.is_positive() {
                continue;
            }
            let (ps, pe) = (phase.particles[s], phase.particles[j]);
            let dv = self.particles[pe].velocity.vec() - self.particles[ps].velocity.vec();
            let g = along(&e, &dv.to_rat());
            ensure(g.is_integer(), || "non-integral length gradient".into())?;
            out.push(FrontEdge {
                support: sides[j].shifted(t),
                start,
                end,
                length,
                gradient: g.to_integer(),
                start_particle: ps,
                end_particle: pe,
                neighbours: (sides[s].lambda.clone(), sides[(j + 1) % n].lambda.clone()),
            });
        }
        Ok(out)
    }

    /// Length gradients of the bounded edges at time zero, in boundary order.
    pub fn initial_gradients(&self) -> Result<Vec<Int>> {
        let phase = &self.phases[0];
        let kin = Kinetic { cyclic: self.initial.kind == DomainKind::Bounded };
        let n = phase.sides.len();
        if !matches!(self.initial.kind, DomainKind::Bounded | DomainKind::TwoRays) {
            return Ok(vec![]);
        }
        Ok(kin
            .bounded_sides(n)
            .map(|j| {
                let s = (j + n - 1) % n;
                let e = phase.sides[j].edge_direction();
                let dv = self.particles[phase.particles[j]].velocity.vec()
                    - self.particles[phase.particles[s]].velocity.vec();
                along(&e, &dv.to_rat()).to_integer()
            })
            .collect())
    }

    /// Integer derivative of the tropical length of the front edge with
    /// normal `lambda` at time `t`, cross-checked against the double angle
    /// of the conormal rays through the endpoint bissectrices.
    pub fn length_gradient(&self, t: &Rat, lambda: &Direction) -> Result<Int> {
        let edge = self
            .front_edges(t)?
            .into_iter()
            .find(|e| &e.support.lambda == lambda)
            .ok_or(Error::UnboundedEdge)?;
        let vs = &self.particles[edge.start_particle].velocity;
        let ve = &self.particles[edge.end_particle].velocity;
        let by_angle = conormal_gradient(lambda, vs, ve)?;
        ensure(by_angle == edge.gradient, || {
            format!("kinetic gradient {} disagrees with double-angle gradient {}", edge.gradient, by_angle)
        })?;
        Ok(edge.gradient)
    }

    /// Violations of the collision laws: every interim collision has two
    /// incoming particles, one of weight one, and an outgoing particle of
    /// weight one; every collision conserves `Σ weight·velocity` (final
    /// collisions at an endpoint of a segment or ray send momentum `2·u`
    /// into the locus along its direction `u`).
    pub fn collision_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let momentum = |ids: &[usize]| {
            ids.iter().fold(LatticeVec::zero(), |acc, &id| &acc + &self.particles[id].momentum())
        };
        for ev in &self.events {
            let total = momentum(&ev.incoming);
            match &ev.outcome {
                EventOutcome::NewParticle(id) => {
                    let out_p = &self.particles[*id];
                    let min_w = ev.incoming.iter().map(|&i| self.particles[i].weight.clone()).min();
                    if ev.incoming.len() != 2 || min_w != Some(Int::one()) || !out_p.weight.is_one() {
                        out.push(format!("interim collision at t={} ({}) has shape {:?}", ev.time, ev.location, ev.incoming));
                    }
                    if total != out_p.momentum() {
                        out.push(format!("momentum not conserved at t={} ({})", ev.time, ev.location));
                    }
                }
                EventOutcome::FinalLocus => {
                    let expected = match &self.final_locus {
                        Some(FinalLocus::Point(_)) => Some(LatticeVec::zero()),
                        Some(FinalLocus::Segment(a, b)) => {
                            let other = if &ev.location == a { b } else { a };
                            (other - &ev.location).direction().ok().map(|u| u.scale(&int(2)))
                        }
                        Some(FinalLocus::Ray(_, r)) => Some(r.scale(&int(2))),
                        _ => None,
                    };
                    if expected.as_ref() != Some(&total) {
                        out.push(format!("final momentum at ({}) is ({total})", ev.location));
                    }
                }
            }
        }
        out
    }
}

/// `l′(E) = −tr(ν₋, −λ, ν₊)` where `ν±` vanish on the endpoint velocities
/// and are positive pointing away from the edge.
pub fn conormal_gradient(lambda: &Direction, v_start: &Direction, v_end: &Direction) -> Result<Int> {
    let e = LatticeVec::new(lambda.y.clone(), -&lambda.x);
    let conormal = |v: &Direction, away: &LatticeVec| {
        let c = v.left_normal();
        if c.dot(away).is_positive() {
            c
        } else {
            c.opposite()
        }
    };
    let nu_s = conormal(v_start, &-&e);
    let nu_e = conormal(v_end, &e);
    let tr = trig::double_angle_unordered(&nu_s, &lambda.opposite(), &nu_e)?;
    ensure(tr.is_integer(), || format!("double angle {tr} is not an integer"))?;
    Ok(-tr.to_integer())
}

/// Convenience: `Φ(t)` straight from a domain.
pub fn propagate(d: &ConvexDomain, t: &Rat) -> Result<Front> {
    if t.is_negative() {
        return Err(Error::NegativeTime(t.to_string()));
    }
    simulate(d)?.front_at(t)
}

/// Convex hull of the lattice points in the interior of a lattice polygon.
pub fn interior_hull(d: &ConvexDomain) -> Result<Front> {
    if !d.is_bounded() {
        return Err(Error::Unbounded);
    }
    if let Some(v) = d.vertices.iter().find(|v| v.to_lattice().is_none()) {
        return Err(Error::NotLatticePolygon(v.to_string()));
    }
    let xs: Vec<Int> = d.vertices.iter().map(|v| v.x.to_integer()).collect();
    let ys: Vec<Int> = d.vertices.iter().map(|v| v.y.to_integer()).collect();
    let (x0, x1) = (xs.iter().min().expect("nonempty"), xs.iter().max().expect("nonempty"));
    let (y0, y1) = (ys.iter().min().expect("nonempty"), ys.iter().max().expect("nonempty"));
    let mut inner = Vec::new();
    let mut x = x0.clone();
    while &x <= x1 {
        let mut y = y0.clone();
        while &y <= y1 {
            let p = RatPoint::new(rat_int(&x), rat_int(&y));
            if d.contains_strictly(&p) {
                inner.push(p);
            }
            y += 1;
        }
        x += 1;
    }
    Ok(hull_front(&inner))
}

/// The convex hull of finitely many points as a front.
pub fn hull_front(points: &[RatPoint]) -> Front {
    let hull = convex_hull(points);
    match hull.len() {
        0 => Front::Empty,
        1 => Front::Locus(FinalLocus::Point(hull[0].clone())),
        2 => Front::Locus(FinalLocus::Segment(hull[0].clone(), hull[1].clone())),
        _ => Front::Domain(ConvexDomain::bounded(hull).expect("strict hull is convex")),
    }
}

/// [`interior_hull`] lifted to fronts (loci have empty interior).
pub fn interior_hull_front(f: &Front) -> Result<Front> {
    match f {
        Front::Domain(d) => interior_hull(d),
        _ => Ok(Front::Empty),
    }
}

/// Final time, final locus and its shape.
pub fn final_data(trace: &EvolutionTrace) -> (Extended, Option<FinalLocus>, LocusKind) {
    let kind = trace.final_locus.as_ref().map(FinalLocus::kind).unwrap_or(LocusKind::None);
    (trace.final_time.clone(), trace.final_locus.clone(), kind)
}

/// Directions of rays contained in the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ResidualCone {
    Empty,
    Ray(Direction),
    Line(Direction),
    /// Cone spanned by two directions in counter-clockwise order.
    Cone(Direction, Direction),
    /// Half-plane `{λ ≥ 0}`.
    HalfPlane(Direction),
}

pub fn residual_cone(d: &ConvexDomain) -> ResidualCone {
    match d.kind {
        DomainKind::Bounded => ResidualCone::Empty,
        DomainKind::TwoRays => {
            let (first, last) = d.rays.clone().expect("two rays");
            if first == last {
                ResidualCone::Ray(first)
            } else {
                ResidualCone::Cone(last, first)
            }
        }
        DomainKind::HalfPlane => ResidualCone::HalfPlane(d.support[0].lambda.clone()),
        DomainKind::Strip => ResidualCone::Line(d.support[0].edge_direction().sign_normalized()),
    }
}

/// Supremum of backward evolution times: zero unless every vertex is
/// canonical, otherwise the minimum of `length / gradient` over growing
/// edges (`+∞` when none grows).
pub fn age(d: &ConvexDomain) -> Result<Extended> {
    if matches!(d.kind, DomainKind::HalfPlane | DomainKind::Strip) {
        return Ok(Extended::Infinity);
    }
    if !d.is_canonical() {
        return Ok(Extended::Finite(Rat::zero()));
    }
    let trace = simulate(d)?;
    let mut best = Extended::Infinity;
    for e in trace.front_edges(&Rat::zero())? {
        if e.gradient.is_positive() {
            let a = Extended::Finite(&e.length / rat_int(&e.gradient));
            if a < best {
                best = a;
            }
        }
    }
    Ok(best)
}

/// `Φ(−a)`: every support half-plane shifted back by `a`, for `0 ≤ a < age`.
pub fn negative_propagate(d: &ConvexDomain, a: &Rat) -> Result<ConvexDomain> {
    if a.is_negative() {
        return Err(Error::NegativeTime(a.to_string()));
    }
    let limit = age(d)?;
    if Extended::Finite(a.clone()) >= limit {
        return Err(Error::AgeExceeded { time: a.to_string(), age: limit.to_string() });
    }
    let shifted: Vec<Support> = d.support.iter().map(|s| s.shifted(&-a)).collect();
    ConvexDomain::from_sides(d.kind, &shifted)
}

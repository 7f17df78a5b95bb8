//! Toric bookkeeping over the dual fan of a front: divisor
//! self-intersections, the canonical class, class areas and their linear
//! evolution in time.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{ensure, Error, Result};
use crate::lattice::{angle_cmp, int, parse_rat, rat_int, wedge, Direction, Int, LatticeVec, Rat};
use crate::trig;
use crate::wavefront::{conormal_gradient, ConvexDomain, DomainKind, EvolutionTrace, Front};

/// Rays of a fan in angular order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    rays: Vec<Direction>,
    complete: bool,
}

impl Fan {
    /// A fan from its rays; complete fans are sorted counter-clockwise
    /// starting from angle zero, incomplete ones must already be in order.
    pub fn new(mut rays: Vec<Direction>, complete: bool) -> Result<Fan> {
        if rays.is_empty() {
            return Err(Error::EmptyInput);
        }
        if complete {
            rays.sort_by(|a, b| angle_cmp(a, b));
            let n = rays.len();
            let turns_ok = (0..n).all(|i| wedge(&rays[i], &rays[(i + 1) % n]).is_positive() || n < 3);
            if n < 3 || !turns_ok {
                return Err(Error::Invalid("complete fan needs rays in every open half-plane".into()));
            }
        } else if !rays.windows(2).all(|w| wedge(&w[0], &w[1]).is_positive()) {
            return Err(Error::Invalid("fan rays must turn strictly counter-clockwise".into()));
        }
        if rays.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("repeated ray".into()));
        }
        Ok(Fan { rays, complete })
    }

    pub fn rays(&self) -> &[Direction] {
        &self.rays
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, ray: &Direction) -> bool {
        self.rays.contains(ray)
    }

    fn neighbours(&self, i: usize) -> Result<(&Direction, &Direction)> {
        let n = self.rays.len();
        if i >= n {
            return Err(Error::Invalid(format!("ray index {i} out of range")));
        }
        if self.complete {
            Ok((&self.rays[(i + n - 1) % n], &self.rays[(i + 1) % n]))
        } else if i == 0 || i + 1 == n {
            Err(Error::BoundaryRay(i))
        } else {
            Ok((&self.rays[i - 1], &self.rays[i + 1]))
        }
    }
}

/// The normals of the support half-planes of a polygonal front.
pub fn dual_fan(front: &ConvexDomain) -> Fan {
    let rays: Vec<Direction> = front.support().iter().map(|s| s.lambda.clone()).collect();
    let complete = front.kind() == DomainKind::Bounded;
    Fan::new(rays, complete).expect("support normals of a convex domain form a fan")
}

/// Self-intersection of the divisor of ray `i`: the double angle of the
/// ray and its two neighbours.
pub fn self_intersection(f: &Fan, i: usize) -> Result<Rat> {
    let (prev, next) = f.neighbours(i)?;
    trig::double_angle_unordered(prev, &f.rays[i], next)
}

/// A class `Σ a_λ e_λ` with `Σ a_λ λ = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct H2Class {
    coefficients: BTreeMap<Direction, Int>,
}

impl H2Class {
    /// Builds a class, merging repeated rays and dropping zero coefficients.
    pub fn new(terms: Vec<(Direction, Int)>) -> Result<H2Class> {
        let mut coefficients: BTreeMap<Direction, Int> = BTreeMap::new();
        for (d, a) in terms {
            *coefficients.entry(d).or_insert_with(Int::zero) += a;
        }
        coefficients.retain(|_, a| !a.is_zero());
        let sum = coefficients.iter().fold(LatticeVec::zero(), |acc, (d, a)| &acc + &d.scale(a));
        if !sum.is_zero() {
            return Err(Error::ClassNotClosed(sum.to_string()));
        }
        Ok(H2Class { coefficients })
    }

    /// Parses `"1,0:1;-1,0:1"` (ray `:` coefficient, separated by `;`).
    pub fn parse(s: &str) -> Result<H2Class> {
        let mut terms = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (ray, coeff) =
                part.split_once(':').ok_or_else(|| Error::Parse(format!("expected ray:coefficient, got {part:?}")))?;
            let d = crate::json::parse_direction_str(ray)?;
            let a = parse_rat(coeff.trim())?;
            if !a.is_integer() {
                return Err(Error::Parse(format!("coefficient {a} is not an integer")));
            }
            terms.push((d, a.to_integer()));
        }
        H2Class::new(terms)
    }

    pub fn coefficients(&self) -> &BTreeMap<Direction, Int> {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl std::fmt::Display for H2Class {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|(d, a)| format!("{d}:{a}")).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// `K(c) = −Σ a_λ`.
pub fn canonical_pairing(c: &H2Class) -> Int {
    -c.coefficients.values().fold(Int::zero(), |s, a| s + a)
}

/// Area of a class in units of `2π`: `−Σ a_λ c_λ`.
pub fn symplectic_area(c: &H2Class, d: &ConvexDomain) -> Result<Rat> {
    let mut total = Rat::zero();
    for (ray, a) in &c.coefficients {
        let s = d.support().iter().find(|s| &s.lambda == ray).ok_or_else(|| Error::MissingRay(ray.to_string()))?;
        total -= rat_int(a) * &s.c;
    }
    Ok(total)
}

/// Result of comparing the area slope of a class with its canonical pairing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvolutionCheck {
    pub area_start: Rat,
    pub area_end: Rat,
    pub slope: Rat,
    pub pairing: Int,
    pub holds: bool,
}

/// Checks `d/dt area(c) = K(c)` on a window free of critical times.
pub fn canonical_evolution_check(trace: &EvolutionTrace, c: &H2Class, t0: &Rat, t1: &Rat) -> Result<EvolutionCheck> {
    if t0.is_negative() {
        return Err(Error::NegativeTime(t0.to_string()));
    }
    if t0 >= t1 {
        return Err(Error::Invalid(format!("window [{t0}, {t1}] is empty")));
    }
    if let Some(t) = trace.critical_times().into_iter().find(|t| t0 <= t && t <= t1) {
        return Err(Error::WindowContainsCriticalTime(t.to_string()));
    }
    let area = |t: &Rat| match trace.front_at(t)? {
        Front::Domain(d) => symplectic_area(c, &d),
        _ => Err(Error::Internal(format!("front at {t} is not a domain"))),
    };
    let area_start = area(t0)?;
    let area_end = area(t1)?;
    let slope = (&area_end - &area_start) / (t1 - t0);
    let pairing = canonical_pairing(c);
    let holds = slope == rat_int(&pairing);
    Ok(EvolutionCheck { area_start, area_end, slope, pairing, holds })
}

/// `3n + Σ self-intersections` for a complete unimodular fan (always 12).
pub fn complete_fan_twelve(f: &Fan) -> Result<Int> {
    if !f.complete {
        return Err(Error::NotUnimodularFan("fan is not complete".into()));
    }
    let n = f.rays.len();
    if let Some(i) = (0..n).find(|&i| !wedge(&f.rays[i], &f.rays[(i + 1) % n]).is_one()) {
        return Err(Error::NotUnimodularFan(format!("cone between ({}) and ({}) is not a right angle", f.rays[i], f.rays[(i + 1) % n])));
    }
    let mut total = int(3 * n as i64);
    for i in 0..n {
        let s = self_intersection(f, i)?;
        ensure(s.is_integer(), || "unimodular fan with fractional self-intersection".into())?;
        total += s.to_integer();
    }
    Ok(total)
}

/// The fan of the Hirzebruch surface `F_n`: `(1,0), (0,1), (−1,n), (0,−1)`.
pub fn hirzebruch_fan(n: i64) -> Fan {
    let rays = vec![
        Direction::new(1, 0).expect("primitive"),
        Direction::new(0, 1).expect("primitive"),
        Direction::new(-1, n).expect("primitive"),
        Direction::new(0, -1).expect("primitive"),
    ];
    Fan::new(rays, true).expect("Hirzebruch fans are complete")
}

/// Refines a fan into a unimodular one by inserting, in every cone, the
/// boundary lattice points of its Klein polygon.
pub fn unimodular_refinement(f: &Fan) -> Result<Fan> {
    let n = f.rays.len();
    let mut rays = Vec::new();
    for i in 0..n {
        let (a, b) = (&f.rays[i], &f.rays[(i + 1) % n]);
        let points = trig::sail_points(a, b);
        rays.extend(points[..points.len() - 1].iter().map(|p| Direction::new_unchecked(p.clone())));
    }
    Fan::new(rays, f.complete)
}

/// `K([E])` for a front edge computed two ways: from the conormals of the
/// endpoint bissectrices, and from the neighbouring fan rays corrected by
/// `1/n₊ + 1/n₋`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorDegree {
    pub via_conormals: Int,
    pub via_fan: Rat,
    pub n_minus: Int,
    pub n_plus: Int,
}

pub fn divisor_canonical_degree(trace: &EvolutionTrace, t: &Rat, lambda: &Direction) -> Result<DivisorDegree> {
    let edge = trace.front_edges(t)?.into_iter().find(|e| &e.support.lambda == lambda).ok_or(Error::UnboundedEdge)?;
    let start = &trace.particles[edge.start_particle];
    let end = &trace.particles[edge.end_particle];
    let via_conormals = conormal_gradient(lambda, &start.velocity, &end.velocity)?;
    let (m_minus, m_plus) = &edge.neighbours;
    let tr = trig::double_angle_unordered(m_minus, lambda, m_plus)?;
    let correction = Rat::one() / rat_int(&start.weight) + Rat::one() / rat_int(&end.weight);
    let via_fan = -tr - correction;
    ensure(via_fan == rat_int(&via_conormals), || {
        format!("edge ({lambda}): conormal degree {via_conormals} differs from fan degree {via_fan}")
    })?;
    Ok(DivisorDegree { via_conormals, via_fan, n_minus: start.weight.clone(), n_plus: end.weight.clone() })
}

/// A random closed class supported on the rays of `f`: a random integer
/// combination of the relations `wedge(b,c)·a + wedge(c,a)·b + wedge(a,b)·c = 0`
/// over random triples of rays.
pub fn random_closed_class<R: Rng>(f: &Fan, rng: &mut R) -> H2Class {
    let n = f.rays.len();
    let mut terms: Vec<(Direction, Int)> = Vec::new();
    if n < 3 {
        if n == 2 && f.rays[0] == f.rays[1].opposite() {
            let k = int(rng.gen_range(1..=3));
            terms.push((f.rays[0].clone(), k.clone()));
            terms.push((f.rays[1].clone(), k));
        }
        return H2Class::new(terms).expect("relation is closed");
    }
    for _ in 0..rng.gen_range(1..=2) {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        let (a, b, c) = (&f.rays[i], &f.rays[j], &f.rays[k]);
        let scale = int(rng.gen_range(-2..=2));
        terms.push((a.clone(), &scale * wedge(b, c)));
        terms.push((b.clone(), &scale * wedge(c, a)));
        terms.push((c.clone(), &scale * wedge(a, b)));
    }
    H2Class::new(terms).expect("relation is closed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{rat, RatPoint};
    use crate::wavefront::simulate;

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    fn fan(rays: &[(i64, i64)]) -> Fan {
        Fan::new(rays.iter().map(|&(x, y)| dir(x, y)).collect(), true).unwrap()
    }

    fn poly(v: &[(i64, i64)]) -> ConvexDomain {
        ConvexDomain::bounded(v.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect()).unwrap()
    }

    fn index_of(f: &Fan, d: Direction) -> usize {
        f.rays().iter().position(|r| *r == d).unwrap()
    }

    #[test]
    fn dual_fan_examples() {
        let sq = dual_fan(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]));
        assert_eq!(sq.rays(), &[dir(1, 0), dir(0, 1), dir(-1, 0), dir(0, -1)]);
        let tri = dual_fan(&poly(&[(0, 0), (3, 0), (0, 3)]));
        assert_eq!(tri.rays(), &[dir(1, 0), dir(0, 1), dir(-1, -1)]);
        let pent = simulate(&poly(&[(0, 0), (4, 0), (4, 1), (2, 3), (0, 1)])).unwrap();
        let early = dual_fan(pent.front_at(&rat(1, 2)).unwrap().domain().unwrap());
        let late = dual_fan(pent.front_at(&rat(5, 4)).unwrap().domain().unwrap());
        assert_eq!(late.len(), 3);
        assert!(late.rays().iter().all(|r| early.contains(r)));
    }

    #[test]
    fn self_intersection_examples() {
        let plane = fan(&[(1, 0), (0, 1), (-1, -1)]);
        assert_eq!(self_intersection(&plane, index_of(&plane, dir(0, 1))).unwrap(), rat(1, 1));
        let product = fan(&[(1, 0), (0, 1), (-1, 0), (0, -1)]);
        for i in 0..4 {
            assert_eq!(self_intersection(&product, i).unwrap(), rat(0, 1));
        }
        for n in 0..6 {
            let h = hirzebruch_fan(n);
            assert_eq!(self_intersection(&h, index_of(&h, dir(0, 1))).unwrap(), rat(-n, 1));
        }
        let open = Fan::new(vec![dir(1, 0), dir(1, 1), dir(0, 1)], false).unwrap();
        assert_eq!(self_intersection(&open, 0), Err(Error::BoundaryRay(0)));
    }

    #[test]
    fn pairing_and_area_examples() {
        let fiber = H2Class::parse("1,0:1;-1,0:1").unwrap();
        assert_eq!(canonical_pairing(&fiber), int(-2));
        let line = H2Class::parse("1,0:1;0,1:1;-1,-1:1").unwrap();
        assert_eq!(canonical_pairing(&line), int(-3));
        assert_eq!(canonical_pairing(&H2Class::default()), int(0));
        assert!(matches!(H2Class::parse("1,0:1"), Err(Error::ClassNotClosed(_))));

        let sq = poly(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        assert_eq!(symplectic_area(&fiber, &sq).unwrap(), rat(2, 1));
        let tri = poly(&[(0, 0), (3, 0), (0, 3)]);
        assert_eq!(symplectic_area(&line, &tri).unwrap(), rat(3, 1));
        let tr = simulate(&tri).unwrap();
        let later = tr.front_at(&rat(1, 3)).unwrap();
        assert_eq!(symplectic_area(&line, later.domain().unwrap()).unwrap(), rat(2, 1));
        assert!(matches!(symplectic_area(&line, &sq), Err(Error::MissingRay(_))));
    }

    #[test]
    fn evolution_examples() {
        let fiber = H2Class::parse("1,0:1;-1,0:1").unwrap();
        let sq = simulate(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        let check = canonical_evolution_check(&sq, &fiber, &rat(1, 4), &rat(1, 2)).unwrap();
        assert!(check.holds);
        assert_eq!(check.slope, rat(-2, 1));
        let line = H2Class::parse("1,0:1;0,1:1;-1,-1:1").unwrap();
        let tri = simulate(&poly(&[(0, 0), (3, 0), (0, 3)])).unwrap();
        let check = canonical_evolution_check(&tri, &line, &rat(1, 8), &rat(7, 8)).unwrap();
        assert_eq!(check.slope, rat(-3, 1));
        let zero = canonical_evolution_check(&tri, &H2Class::default(), &rat(1, 8), &rat(7, 8)).unwrap();
        assert_eq!(zero.slope, rat(0, 1));
        assert!(matches!(
            canonical_evolution_check(&sq, &fiber, &rat(1, 2), &rat(3, 2)),
            Err(Error::WindowContainsCriticalTime(_))
        ));
    }

    #[test]
    fn complete_fan_twelve_examples() {
        assert_eq!(complete_fan_twelve(&fan(&[(1, 0), (0, 1), (-1, -1)])).unwrap(), int(12));
        assert_eq!(complete_fan_twelve(&fan(&[(1, 0), (0, 1), (-1, 0), (0, -1)])).unwrap(), int(12));
        assert_eq!(complete_fan_twelve(&fan(&[(1, 0), (0, 1), (-1, 1), (0, -1)])).unwrap(), int(12));
        for n in 0..=5 {
            assert_eq!(complete_fan_twelve(&hirzebruch_fan(n)).unwrap(), int(12));
        }
        assert!(matches!(complete_fan_twelve(&fan(&[(1, 0), (1, 2), (-1, -1)])), Err(Error::NotUnimodularFan(_))));
        let refined = unimodular_refinement(&fan(&[(1, 0), (1, 2), (-3, -1)])).unwrap();
        assert_eq!(complete_fan_twelve(&refined).unwrap(), int(12));
    }

    #[test]
    fn divisor_degree_examples() {
        let sq = simulate(&poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        let d = divisor_canonical_degree(&sq, &rat(1, 2), &dir(0, 1)).unwrap();
        assert_eq!((d.via_conormals, d.via_fan), (int(-2), rat(-2, 1)));
        let pent = simulate(&poly(&[(0, 0), (4, 0), (4, 1), (2, 3), (0, 1)])).unwrap();
        let d = divisor_canonical_degree(&pent, &rat(1, 2), &dir(-1, -1)).unwrap();
        assert_eq!((d.via_conormals.clone(), d.via_fan.clone()), (int(-1), rat(-1, 1)));
        let mut weights = vec![d.n_minus, d.n_plus];
        weights.sort();
        assert_eq!(weights, vec![int(1), int(2)]);
        let quad = simulate(&poly(&[(0, 0), (1, -2), (1, 3), (0, 1)])).unwrap();
        assert_eq!(divisor_canonical_degree(&quad, &rat(1, 4), &dir(1, 0)).unwrap().via_conormals, int(2));
    }
}

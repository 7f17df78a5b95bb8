//! Tropical trigonometry: invariants of rational angles, duality,
//! cotangents, double angles, and the caustic of a cone.
//!
//! The caustic of a cone is read off the Klein polygon of its dual cone —
//! the convex hull of the nonzero lattice points of the dual cone.  Its
//! vertices come from the continued-fraction matrix recursion rather than
//! from enumerating lattice points, so the cost is polynomial in bit-size.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::contfrac::{recursion_from_cf, regular_cf};
use crate::error::{Error, Result};
use crate::lattice::{
    content, int, primitive, rat_int, unimodular_completion, wedge, Direction, Int, LatticeVec, Rat, RatPoint,
};

/// A strictly convex rational cone with an apex.
///
/// Legs are stored so that `wedge(leg1, leg2) > 0`; `reversed` records that
/// the caller supplied them in the opposite order, which matters for the
/// cotangent and the continued-fraction readings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Angle {
    pub apex: RatPoint,
    pub leg1: Direction,
    pub leg2: Direction,
    pub reversed: bool,
}

impl Angle {
    /// Angle at the origin, reordering the legs if needed.
    pub fn new(leg1: Direction, leg2: Direction) -> Result<Angle> {
        let w = wedge(&leg1, &leg2);
        if w.is_zero() {
            return Err(Error::CollinearLegs);
        }
        Ok(if w.is_positive() {
            Angle { apex: RatPoint::origin(), leg1, leg2, reversed: false }
        } else {
            Angle { apex: RatPoint::origin(), leg1: leg2, leg2: leg1, reversed: true }
        })
    }

    /// Angle at the origin whose legs must already be counter-clockwise.
    pub fn oriented(leg1: Direction, leg2: Direction) -> Result<Angle> {
        let a = Angle::new(leg1, leg2)?;
        if a.reversed {
            return Err(Error::OrientationError("legs are ordered clockwise".into()));
        }
        Ok(a)
    }

    /// Convenience constructor from integer vectors, which are replaced by
    /// their primitive directions.
    pub fn from_ints(v: (i64, i64), w: (i64, i64)) -> Result<Angle> {
        let (d1, _) = primitive(&LatticeVec::new(v.0, v.1))?;
        let (d2, _) = primitive(&LatticeVec::new(w.0, w.1))?;
        Angle::new(d1, d2)
    }

    /// The oriented angle with cotangent `m/n`: legs `(1, 0)` and `(n − m, n)`.
    pub fn with_cotangent(m: &Int, n: &Int) -> Result<Angle> {
        if !n.is_positive() || m.is_negative() || m >= n || !m.gcd(n).is_one() {
            return Err(Error::Invalid(format!("{m}/{n} is not a reduced class in [0, 1)")));
        }
        Angle::new(Direction::new(1, 0)?, Direction::from_vec(LatticeVec::new(n - m, n.clone()))?)
    }

    pub fn with_apex(mut self, apex: RatPoint) -> Angle {
        self.apex = apex;
        self
    }

    /// The legs in the order the caller supplied them.
    pub fn original_legs(&self) -> (&Direction, &Direction) {
        if self.reversed {
            (&self.leg2, &self.leg1)
        } else {
            (&self.leg1, &self.leg2)
        }
    }

    /// `|wedge(leg1, leg2)|`.
    pub fn determinant(&self) -> Int {
        wedge(&self.leg1, &self.leg2)
    }

    /// Whether a vector lies strictly inside the cone.
    pub fn contains_strictly(&self, v: &LatticeVec) -> bool {
        wedge(&self.leg1, v).is_positive() && wedge(v, &self.leg2).is_positive()
    }
}

/// Isomorphism type of an angle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AngleKind {
    /// Determinant one.
    Right,
    /// Height one and determinant `n + 1`.
    A(Int),
    /// Dual of an A-type angle, determinant `d ≥ 3`.
    Canonical(Int),
    General,
}

/// Invariants and type of an angle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AngleClass {
    pub kind: AngleKind,
    pub determinant: Int,
    pub width: Int,
    pub height: Int,
}

impl AngleClass {
    /// Right angles, A₁-angles and canonical angles: exactly the angles whose
    /// caustic is a single ray.
    pub fn is_canonical(&self) -> bool {
        match &self.kind {
            AngleKind::Right | AngleKind::Canonical(_) => true,
            AngleKind::A(n) => n.is_one(),
            AngleKind::General => false,
        }
    }
}

impl std::fmt::Display for AngleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AngleKind::Right => write!(f, "right"),
            AngleKind::A(n) => write!(f, "A{n}"),
            AngleKind::Canonical(d) => write!(f, "canonical({d})"),
            AngleKind::General => write!(f, "general"),
        }
    }
}

/// A residue `m/n ∈ Q/Z` in reduced form with `0 ≤ m < n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CotangentClass {
    pub m: Int,
    pub n: Int,
}

impl CotangentClass {
    pub fn new(m: Int, n: Int) -> Result<Self> {
        if !n.is_positive() {
            return Err(Error::Invalid(format!("denominator {n} must be positive")));
        }
        let m = m.mod_floor(&n);
        let g = m.gcd(&n);
        if !g.is_one() {
            return Err(Error::Invalid(format!("{m}/{n} is not reduced")));
        }
        Ok(CotangentClass { m, n })
    }

    pub fn value(&self) -> Rat {
        Rat::new(self.m.clone(), self.n.clone())
    }
}

impl std::fmt::Display for CotangentClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.m, self.n)
    }
}

/// One ray of a cone caustic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CausticRay {
    pub direction: Direction,
    pub weight: Int,
}

/// Determinant, width, height and type of an angle.
pub fn angle_invariants(a: &Angle) -> AngleClass {
    let determinant = a.determinant();
    let width = content(&(a.leg1.vec() - a.leg2.vec()));
    let height = &determinant / &width;
    debug_assert_eq!(&height * &width, determinant);
    let kind = if determinant.is_one() {
        AngleKind::Right
    } else if height.is_one() {
        AngleKind::A(&determinant - 1)
    } else if cone_caustic(a).len() == 1 {
        AngleKind::Canonical(determinant.clone())
    } else {
        AngleKind::General
    };
    AngleClass { kind, determinant, width, height }
}

/// Whether the angle's caustic is a single ray.
pub fn is_canonical(a: &Angle) -> bool {
    angle_invariants(a).is_canonical()
}

/// The two primitive covectors generating the dual cone, vanishing on
/// `leg1` and `leg2` respectively (in that order).
pub fn dual_generators(a: &Angle) -> (Direction, Direction) {
    let l1 = Direction::new_unchecked(LatticeVec::new(-&a.leg1.y, a.leg1.x.clone()));
    let l2 = Direction::new_unchecked(LatticeVec::new(a.leg2.y.clone(), -&a.leg2.x));
    (l1, l2)
}

/// The dual cone `{q : q(p) ≥ 0 for all p in the angle}`, at the origin.
pub fn dual_angle(a: &Angle) -> Angle {
    let (l1, l2) = dual_generators(a);
    Angle::new(l1, l2).expect("dual generators are independent")
}

/// The angle spanned by `leg1` and `−leg2`.
pub fn complementary_angle(a: &Angle) -> Angle {
    Angle::new(a.leg1.clone(), a.leg2.opposite()).expect("legs are independent")
}

/// Tropical cotangent of the oriented angle `(R₁, R₂)` given by the legs in
/// their original order: writing `R₂ = a·e₁ + b·e₂` in a basis with
/// `e₁ = R₁` and matching orientation, the class is `−a/b mod 1`.
pub fn cotangent(a: &Angle) -> CotangentClass {
    let (e1, l2) = a.original_legs();
    let n = a.determinant();
    let u = unimodular_completion(e1); // wedge(u, e1) = 1
    // e2 with wedge(e1, e2) = +1 (counter-clockwise legs) or −1 (clockwise).
    let e2 = if a.reversed { u } else { -u };
    let orientation = if a.reversed { int(-1) } else { int(1) };
    let coeff = wedge(l2, &e2) * &orientation;
    let m = (-coeff).mod_floor(&n);
    CotangentClass::new(m, n).expect("legs are primitive")
}

/// The class `k/n` with `m·k ≡ 1 (mod n)`: the cotangent of the angle read
/// with its legs swapped.
pub fn reversed_cotangent(c: &CotangentClass) -> CotangentClass {
    if c.n.is_one() {
        return c.clone();
    }
    let e = c.m.extended_gcd(&c.n);
    CotangentClass::new(e.x.mod_floor(&c.n), c.n.clone()).expect("inverse is a unit")
}

/// `m² ≡ 1 (mod n)`.
pub fn is_symmetric(c: &CotangentClass) -> bool {
    (&c.m * &c.m - Int::one()).mod_floor(&c.n).is_zero()
}

/// Double tropical angle `tr(R₋, R₀, R₊) = −(s₊ + s₋)`.
///
/// After a unimodular map sending `R₀` to `(0, 1)`, `R₊` must point into the
/// open right half-plane and `R₋` into the open left one; `s±` are the
/// ordinates where they cross `x = ±1`.
pub fn double_angle(r_minus: &Direction, r0: &Direction, r_plus: &Direction) -> Result<Rat> {
    // B = [u | r0] has determinant one; coordinates in that basis are
    // x = wedge(v, r0), y = wedge(u, v).
    let u = unimodular_completion(r0);
    let coords = |v: &Direction| (wedge(v, r0), wedge(&u, v));
    let (xp, yp) = coords(r_plus);
    let (xm, ym) = coords(r_minus);
    if !xp.is_positive() || !xm.is_negative() {
        return Err(Error::OrientationError(format!(
            "({r_minus}) and ({r_plus}) do not lie on opposite sides of ({r0})"
        )));
    }
    let s_plus = Rat::new(yp, xp);
    let s_minus = -Rat::new(ym, xm);
    Ok(-(s_plus + s_minus))
}

/// [`double_angle`] with the flanking rays in either order (the value is
/// symmetric in them).
pub fn double_angle_unordered(a: &Direction, r0: &Direction, b: &Direction) -> Result<Rat> {
    double_angle(a, r0, b).or_else(|_| double_angle(b, r0, a))
}

/// `3 + tr(R₋, R₀, R₊)` for a pair of right angles.
pub fn k_lift(r_minus: &Direction, r0: &Direction, r_plus: &Direction) -> Result<Int> {
    if !wedge(r_minus, r0).abs().is_one() || !wedge(r0, r_plus).abs().is_one() {
        return Err(Error::NotRightAnglePair);
    }
    let tr = double_angle(r_minus, r0, r_plus)?;
    debug_assert!(tr.is_integer());
    Ok(tr.to_integer() + 3)
}

/// Vertices of the Klein polygon of the cone spanned by `a` and `b` (either
/// orientation): the convex hull of its nonzero lattice points.  The
/// vertices are listed from `a` to `b`.
pub fn klein_vertices(a: &Direction, b: &Direction) -> Vec<LatticeVec> {
    let n = wedge(a, b).abs();
    assert!(!n.is_zero(), "klein_vertices needs independent generators");
    if n.is_one() {
        return vec![a.vec().clone(), b.vec().clone()];
    }
    // G = shear · reflection · [u | a]⁻¹ sends a to (0, 1) and b to (n, m), 0 < m < n.
    let u = unimodular_completion(a);
    let mut g: [[Int; 2]; 2] = [[a.y.clone(), -&a.x], [-&u.y, u.x.clone()]];
    let mut x = wedge(b, a);
    let y = wedge(&u, b);
    if x.is_negative() {
        g[0] = [-&g[0][0], -&g[0][1]];
        x = -x;
    }
    let k = y.div_floor(&x);
    let m = &y - &k * &x;
    g[1] = [&g[1][0] - &k * &g[0][0], &g[1][1] - &k * &g[0][1]];
    debug_assert_eq!(x, n);

    let cf = regular_cf(&Rat::new(m.clone(), n.clone())).expect("0 < m < n");
    let rec = recursion_from_cf(&cf);
    let mut hull: Vec<LatticeVec> = rec.steps.iter().map(|s| s.hull_vertex.clone()).collect();
    hull.push(rec.final_hull_vertex);
    assert_eq!(hull.last(), Some(&LatticeVec::new(n, m)), "recursion must end at the second generator");

    let det = &g[0][0] * &g[1][1] - &g[0][1] * &g[1][0];
    let inv = [[&g[1][1] * &det, -&g[0][1] * &det], [-&g[1][0] * &det, &g[0][0] * &det]];
    hull.iter()
        .map(|p| LatticeVec::new(&inv[0][0] * &p.x + &inv[0][1] * &p.y, &inv[1][0] * &p.x + &inv[1][1] * &p.y))
        .collect()
}

/// Every lattice point on the finite boundary of the Klein polygon of the
/// cone spanned by `a` and `b`, from `a` to `b`.
pub fn sail_points(a: &Direction, b: &Direction) -> Vec<LatticeVec> {
    let sail = klein_vertices(a, b);
    let mut out = vec![sail[0].clone()];
    for side in sail.windows(2) {
        let (step, len) = primitive(&(&side[1] - &side[0])).expect("distinct hull vertices");
        let mut k = Int::one();
        while k <= len {
            out.push(&side[0] + &step.scale(&k));
            k += 1;
        }
    }
    out
}

/// The caustic of a cone: one ray per finite side of the Klein polygon of
/// the dual cone, with weight the lattice length of that side, ordered from
/// the `leg1` side to the `leg2` side.
pub fn cone_caustic(a: &Angle) -> Vec<CausticRay> {
    let (l1, l2) = dual_generators(a);
    let sail = klein_vertices(&l1, &l2);
    let mut rays = Vec::with_capacity(sail.len() - 1);
    for side in sail.windows(2) {
        let (step, weight) = primitive(&(&side[1] - &side[0])).expect("distinct hull vertices");
        let mut dir = LatticeVec::new(step.y.clone(), -&step.x);
        if side[0].dot(&dir).is_negative() {
            dir = -dir;
        }
        assert!(a.contains_strictly(&dir), "caustic ray ({dir}) escapes the angle");
        rays.push(CausticRay { direction: Direction::new_unchecked(dir), weight });
    }
    rays
}

/// Bissectrice of a canonical angle: the primitive direction of the sum of
/// the legs, which is also its single caustic ray.
pub fn bissectrice(a: &Angle) -> Option<Direction> {
    if !is_canonical(a) {
        return None;
    }
    primitive(&(a.leg1.vec() + a.leg2.vec())).ok().map(|(d, _)| d)
}

/// Directions `λ` with `|wedge(λ, leg)| = 1` for both legs, sign-normalised
/// and deduplicated.
pub fn common_perpendiculars(a: &Angle) -> Vec<Direction> {
    let d = a.determinant();
    let mut out: Vec<Direction> = Vec::new();
    for e1 in [1i64, -1] {
        for e2 in [1i64, -1] {
            let num = &a.leg1.scale(&int(e2)) - &a.leg2.scale(&int(e1));
            if (&num.x % &d).is_zero() && (&num.y % &d).is_zero() {
                let v = LatticeVec::new(&num.x / &d, &num.y / &d);
                let dir = Direction::from_vec(v).expect("solution is primitive").sign_normalized();
                if !out.contains(&dir) {
                    out.push(dir);
                }
            }
        }
    }
    out.sort();
    out
}

/// Whether `rays` subdivide `outer` into A-type cones *of convex type*:
/// the origin and all primitive generators, `leg1, rays…, leg2`, are the
/// vertices of their convex hull.
pub fn validate_convex_subdivision(outer: &Angle, rays: &[Direction]) -> bool {
    let mut gens: Vec<&LatticeVec> = vec![outer.leg1.vec()];
    for r in rays {
        if !outer.contains_strictly(r) {
            return false;
        }
        gens.push(r.vec());
    }
    gens.push(outer.leg2.vec());
    for w in gens.windows(2) {
        let det = wedge(w[0], w[1]);
        if !det.is_positive() || content(&(w[0] - w[1])) != det {
            return false;
        }
    }
    gens.windows(3).all(|w| wedge(&(w[1] - w[0]), &(w[2] - w[1])).is_positive())
}

/// Exact intersection helper re-exported for the caustic module: where the
/// line `p + R·u` meets `q + R·v`.
pub(crate) fn line_intersection(p: &RatPoint, u: &LatticeVec, q: &RatPoint, v: &LatticeVec) -> Option<RatPoint> {
    let det = wedge(u, v);
    if det.is_zero() {
        return None;
    }
    // p + s u = q + r v  ⇒  s = wedge(q − p, v) / wedge(u, v)
    let d = q - p;
    let s = (&d.x * rat_int(&v.y) - &d.y * rat_int(&v.x)) / rat_int(&det);
    Some(p.offset(u, &s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    fn dir(x: i64, y: i64) -> Direction {
        Direction::new(x, y).unwrap()
    }

    fn angle(v: (i64, i64), w: (i64, i64)) -> Angle {
        Angle::from_ints(v, w).unwrap()
    }

    #[test]
    fn invariants_examples() {
        let c = angle_invariants(&angle((1, 0), (0, 1)));
        assert_eq!((c.kind, c.determinant, c.width, c.height), (AngleKind::Right, int(1), int(1), int(1)));
        let c = angle_invariants(&angle((0, 1), (2, 1)));
        assert_eq!((c.kind, c.determinant, c.width, c.height), (AngleKind::A(int(1)), int(2), int(2), int(1)));
        // Determinant 4, width 2, height 2.  Its caustic is a single ray of
        // weight 4, so by ray count it is the canonical angle of determinant 4.
        let a = angle((0, -1), (4, 1));
        let c = angle_invariants(&a);
        assert_eq!((c.determinant.clone(), c.width.clone(), c.height.clone()), (int(4), int(2), int(2)));
        assert_eq!(c.kind, AngleKind::Canonical(int(4)));
        assert_eq!(angle_invariants(&dual_angle(&a)).kind, AngleKind::A(int(3)));
        let c = angle_invariants(&angle((1, 0), (3, 7)));
        assert_eq!(c.kind, AngleKind::General);
    }

    #[test]
    fn dual_and_complement_examples() {
        let right = angle((1, 0), (0, 1));
        assert_eq!(angle_invariants(&dual_angle(&right)).kind, AngleKind::Right);
        assert_eq!(angle_invariants(&complementary_angle(&right)).kind, AngleKind::Right);
        assert_eq!(angle_invariants(&dual_angle(&angle((0, 1), (3, -1)))).kind, AngleKind::A(int(2)));
        let a1 = angle((0, 1), (2, 1));
        assert_eq!(angle_invariants(&dual_angle(&a1)).kind, AngleKind::A(int(1)));
        let comp = complementary_angle(&a1);
        assert_eq!(angle_invariants(&comp).kind, AngleKind::A(int(1)));
        let g = angle((1, 0), (3, 7));
        assert_eq!(angle_invariants(&complementary_angle(&g)), angle_invariants(&dual_angle(&g)));
    }

    #[test]
    fn cotangent_examples() {
        assert_eq!(cotangent(&angle((1, 0), (0, 1))), CotangentClass::new(int(0), int(1)).unwrap());
        assert_eq!(cotangent(&angle((1, 0), (3, 7))).to_string(), "4/7");
        assert_eq!(cotangent(&angle((3, 7), (1, 0))).to_string(), "2/7");
        assert_eq!(cotangent(&angle((0, 1), (2, 1))).to_string(), "1/2");
        for (m, n) in [(1, 5), (2, 5), (4, 7), (5, 12)] {
            let a = Angle::with_cotangent(&int(m), &int(n)).unwrap();
            assert_eq!(cotangent(&a), CotangentClass::new(int(m), int(n)).unwrap());
        }
    }

    #[test]
    fn reversed_cotangent_examples() {
        let c = |m: i64, n: i64| CotangentClass::new(int(m), int(n)).unwrap();
        assert_eq!(reversed_cotangent(&c(4, 7)), c(2, 7));
        assert_eq!(reversed_cotangent(&c(1, 5)), c(1, 5));
        assert_eq!(reversed_cotangent(&c(3, 7)), c(5, 7));
        assert!(is_symmetric(&c(1, 2)));
        assert!(is_symmetric(&c(1, 3)));
        assert!(!is_symmetric(&c(4, 7)));
    }

    #[test]
    fn double_angle_examples() {
        assert_eq!(double_angle(&dir(-1, 0), &dir(0, 1), &dir(1, 0)).unwrap(), rat(0, 1));
        assert_eq!(double_angle(&dir(-1, -1), &dir(0, 1), &dir(1, 0)).unwrap(), rat(1, 1));
        assert_eq!(double_angle(&dir(-1, 1), &dir(0, 1), &dir(1, 1)).unwrap(), rat(-2, 1));
        assert!(matches!(double_angle(&dir(1, 0), &dir(0, 1), &dir(-1, 0)), Err(Error::OrientationError(_))));
        assert_eq!(double_angle_unordered(&dir(1, 0), &dir(0, 1), &dir(-1, -1)).unwrap(), rat(1, 1));
        assert_eq!(double_angle(&dir(-1, 2), &dir(0, 1), &dir(1, 0)).unwrap(), rat(-2, 1));
        assert_eq!(double_angle(&dir(-2, 1), &dir(0, 1), &dir(1, 0)).unwrap(), rat(-1, 2));
    }

    #[test]
    fn k_lift_examples() {
        assert_eq!(k_lift(&dir(-1, 0), &dir(0, 1), &dir(1, 0)).unwrap(), int(3));
        assert_eq!(k_lift(&dir(-1, -1), &dir(0, 1), &dir(1, 0)).unwrap(), int(4));
        assert_eq!(k_lift(&dir(-1, 1), &dir(0, 1), &dir(1, 1)).unwrap(), int(1));
        assert_eq!(k_lift(&dir(-2, 1), &dir(0, 1), &dir(1, 0)), Err(Error::NotRightAnglePair));
    }

    #[test]
    fn caustic_examples() {
        let ray = |x, y, w| CausticRay { direction: dir(x, y), weight: int(w) };
        assert_eq!(cone_caustic(&angle((1, 0), (0, 1))), vec![ray(1, 1, 1)]);
        assert_eq!(cone_caustic(&angle((1, 0), (3, 7))), vec![ray(1, 1, 1), ray(1, 2, 3)]);
        assert_eq!(cone_caustic(&angle((0, 1), (3, -1))), vec![ray(1, 0, 3)]);
    }

    #[test]
    fn klein_examples() {
        let v = |x, y| LatticeVec::new(x, y);
        assert_eq!(klein_vertices(&dir(0, 1), &dir(7, 4)), vec![v(0, 1), v(1, 1), v(7, 4)]);
        assert_eq!(klein_vertices(&dir(7, 4), &dir(0, 1)), vec![v(7, 4), v(1, 1), v(0, 1)]);
        assert_eq!(klein_vertices(&dir(-1, 0), &dir(3, 7)), vec![v(-1, 0), v(0, 1), v(3, 7)]);
    }

    #[test]
    fn perpendicular_examples() {
        assert_eq!(common_perpendiculars(&angle((1, 0), (0, 1))), vec![dir(1, -1), dir(1, 1)]);
        assert_eq!(common_perpendiculars(&angle((0, 1), (3, -1))), vec![dir(1, 0)]);
        assert_eq!(common_perpendiculars(&angle((0, 1), (3, 1))), vec![dir(1, 0)]);
        assert_eq!(common_perpendiculars(&angle((0, 1), (2, 1))).len(), 2);
    }

    #[test]
    fn convex_subdivision_examples() {
        let quadrant = angle((1, 0), (0, 1));
        for n in 1..8 {
            assert!(validate_convex_subdivision(&quadrant, &[dir(1, n)]));
        }
        assert!(!validate_convex_subdivision(&quadrant, &[dir(2, 3)]));
        for k in 1..6 {
            let a = angle((0, 1), (k + 1, 1));
            assert_eq!(angle_invariants(&a).kind, AngleKind::A(int(k)));
            assert!(validate_convex_subdivision(&a, &[]));
        }
        assert!(!validate_convex_subdivision(&angle((1, 0), (3, 7)), &[]));
    }

    #[test]
    fn bissectrice_of_canonical_angles() {
        assert_eq!(bissectrice(&angle((1, 0), (0, 1))), Some(dir(1, 1)));
        assert_eq!(bissectrice(&angle((0, 1), (3, -1))), Some(dir(1, 0)));
        assert_eq!(bissectrice(&angle((1, 0), (3, 7))), None);
    }
}

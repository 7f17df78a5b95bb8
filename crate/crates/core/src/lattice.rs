//! Exact plane arithmetic over the integer lattice.
//!
//! Scalars are arbitrary-precision integers ([`Int`]) and normalised
//! fractions ([`Rat`]).  Nothing in this crate touches floating point except
//! the final decimal conversion when emitting SVG.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Deref, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = BigInt;
/// Normalised fraction of two [`Int`]s with positive denominator.
pub type Rat = BigRational;

/// Shorthand for an [`Int`] literal.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for the fraction `n/d`.  Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// An integer viewed as a fraction.
pub fn rat_int(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: Int = p.trim().parse().map_err(|_| bad())?;
        let q: Int = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let whole: Int = if whole_digits.is_empty() {
            Int::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(int(10), frac.len());
        let frac: Int = frac.parse().map_err(|_| bad())?;
        let magnitude = Rat::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    let p: Int = s.parse().map_err(|_| bad())?;
    Ok(Rat::from_integer(p))
}

/// Canonical text form: `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// A value in `Q ∪ {+∞}`, used for supremum values, final times and ages.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rat),
    Infinity,
}

impl Extended {
    pub fn is_finite(&self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rat> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinity => None,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinity) => Ordering::Less,
            (Extended::Infinity, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinity, Extended::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinity => write!(f, "inf"),
        }
    }
}

impl From<Rat> for Extended {
    fn from(r: Rat) -> Self {
        Extended::Finite(r)
    }
}

/// An integer vector; by role either a tangent vector or a covector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub x: Int,
    pub y: Int,
}

impl LatticeVec {
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Self {
        LatticeVec { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        LatticeVec::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Multiplies both coordinates by `k`.
    pub fn scale(&self, k: &Int) -> LatticeVec {
        LatticeVec { x: &self.x * k, y: &self.y * k }
    }

    /// The same vector with rational coordinates.
    pub fn to_rat(&self) -> RatVec {
        RatPoint { x: rat_int(&self.x), y: rat_int(&self.y) }
    }

    /// Euclidean inner product, used when a lattice vector acts as a covector.
    pub fn dot(&self, other: &LatticeVec) -> Int {
        &self.x * &other.x + &self.y * &other.y
    }

    /// The vector rotated by a quarter turn counter-clockwise, `(−y, x)`.
    pub fn left_normal(&self) -> LatticeVec {
        LatticeVec { x: -&self.y, y: self.x.clone() }
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

macro_rules! lattice_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&LatticeVec> for &LatticeVec {
            type Output = LatticeVec;
            fn $method(self, rhs: &LatticeVec) -> LatticeVec {
                LatticeVec { x: &self.x $op &rhs.x, y: &self.y $op &rhs.y }
            }
        }
        impl $tr<LatticeVec> for LatticeVec {
            type Output = LatticeVec;
            fn $method(self, rhs: LatticeVec) -> LatticeVec {
                &self $op &rhs
            }
        }
    };
}
lattice_binop!(Add, add, +);
lattice_binop!(Sub, sub, -);

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec { x: -&self.x, y: -&self.y }
    }
}

impl Neg for LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        -&self
    }
}

/// A primitive lattice vector: nonzero with coprime coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction(LatticeVec);

impl Direction {
    /// Builds a direction, rejecting zero and non-primitive vectors.
    pub fn new(x: impl Into<Int>, y: impl Into<Int>) -> Result<Self> {
        Direction::from_vec(LatticeVec::new(x, y))
    }

    /// Wraps `v`, rejecting zero and non-primitive vectors.
    pub fn from_vec(v: LatticeVec) -> Result<Self> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !content(&v).is_one() {
            return Err(Error::NotPrimitive(v.to_string()));
        }
        Ok(Direction(v))
    }

    /// Caller guarantees primitivity.
    pub(crate) fn new_unchecked(v: LatticeVec) -> Self {
        debug_assert!(content(&v).is_one());
        Direction(v)
    }

    pub fn vec(&self) -> &LatticeVec {
        &self.0
    }

    pub fn into_vec(self) -> LatticeVec {
        self.0
    }

    /// The opposite direction.
    pub fn opposite(&self) -> Direction {
        Direction(-&self.0)
    }

    /// The primitive covector vanishing on `self` and positive on the
    /// half-plane to its left, `(−y, x)`.
    pub fn left_normal(&self) -> Direction {
        Direction(self.0.left_normal())
    }

    /// Representative with positive first nonzero coordinate, used to
    /// identify lines through the origin.
    pub fn sign_normalized(&self) -> Direction {
        if self.0.x.is_negative() || (self.0.x.is_zero() && self.0.y.is_negative()) {
            self.opposite()
        } else {
            self.clone()
        }
    }
}

impl Deref for Direction {
    type Target = LatticeVec;
    fn deref(&self) -> &LatticeVec {
        &self.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point of the plane with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

/// Rational vectors share the representation of rational points.
pub type RatVec = RatPoint;

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    /// The point with integer coordinates `(x, y)`.
    pub fn from_ints(x: i64, y: i64) -> Self {
        RatPoint { x: Rat::from_integer(int(x)), y: Rat::from_integer(int(y)) }
    }

    pub fn origin() -> Self {
        RatPoint::from_ints(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `self + t·v`.
    pub fn offset(&self, v: &LatticeVec, t: &Rat) -> RatPoint {
        RatPoint { x: &self.x + t * rat_int(&v.x), y: &self.y + t * rat_int(&v.y) }
    }

    pub fn scale(&self, k: &Rat) -> RatPoint {
        RatPoint { x: &self.x * k, y: &self.y * k }
    }

    /// The lattice point equal to `self`, if both coordinates are integers.
    pub fn to_lattice(&self) -> Option<LatticeVec> {
        (self.x.is_integer() && self.y.is_integer())
            .then(|| LatticeVec { x: self.x.to_integer(), y: self.y.to_integer() })
    }

    /// The primitive direction of a nonzero rational vector.
    pub fn direction(&self) -> Result<Direction> {
        let (v, _) = clear_denominators(self);
        primitive(&v).map(|(d, _)| d)
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

macro_rules! ratpoint_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&RatPoint> for &RatPoint {
            type Output = RatPoint;
            fn $method(self, rhs: &RatPoint) -> RatPoint {
                RatPoint { x: &self.x $op &rhs.x, y: &self.y $op &rhs.y }
            }
        }
        impl $tr<RatPoint> for RatPoint {
            type Output = RatPoint;
            fn $method(self, rhs: RatPoint) -> RatPoint {
                &self $op &rhs
            }
        }
    };
}
ratpoint_binop!(Add, add, +);
ratpoint_binop!(Sub, sub, -);

impl Neg for &RatPoint {
    type Output = RatPoint;
    fn neg(self) -> RatPoint {
        RatPoint { x: -&self.x, y: -&self.y }
    }
}

impl Mul<&Rat> for &RatPoint {
    type Output = RatPoint;
    fn mul(self, k: &Rat) -> RatPoint {
        self.scale(k)
    }
}

/// Greatest common divisor of the coordinates (`gcd(0, n) = |n|`).
pub fn content(v: &LatticeVec) -> Int {
    v.x.gcd(&v.y)
}

/// Splits a nonzero vector into its primitive direction and its content.
pub fn primitive(v: &LatticeVec) -> Result<(Direction, Int)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = content(v);
    let d = LatticeVec { x: &v.x / &g, y: &v.y / &g };
    Ok((Direction(d), g))
}

/// Writes a rational vector as `w / D` with `w` integral and `D > 0` the
/// least common denominator.
pub fn clear_denominators(v: &RatVec) -> (LatticeVec, Int) {
    let d = v.x.denom().lcm(v.y.denom());
    let w = LatticeVec {
        x: v.x.numer() * (&d / v.x.denom()),
        y: v.y.numer() * (&d / v.y.denom()),
    };
    (w, d)
}

/// Tropical length: the `t ≥ 0` with `v = t·prim(v)`; zero for the zero vector.
pub fn tropical_length(v: &RatVec) -> Rat {
    if v.is_zero() {
        return Rat::zero();
    }
    let (w, d) = clear_denominators(v);
    Rat::new(content(&w), d)
}

/// Signed area form `u.x·v.y − u.y·v.x`.
pub fn wedge(u: &LatticeVec, v: &LatticeVec) -> Int {
    &u.x * &v.y - &u.y * &v.x
}

/// The area form on rational vectors.
pub fn wedge_rat(u: &RatVec, v: &RatVec) -> Rat {
    &u.x * &v.y - &u.y * &v.x
}

/// Evaluation of the covector `λ` at the point `p`.
pub fn pair(lambda: &LatticeVec, p: &RatPoint) -> Rat {
    rat_int(&lambda.x) * &p.x + rat_int(&lambda.y) * &p.y
}

/// Lattice distance between the parallel lines `{λ = c1}` and `{λ = c2}`.
pub fn parallel_line_distance(_lambda: &Direction, c1: &Rat, c2: &Rat) -> Rat {
    (c1 - c2).abs()
}

/// Intersection of the lines `{λa = ca}` and `{λb = cb}`; `None` if parallel.
pub fn intersect_lines(la: &LatticeVec, ca: &Rat, lb: &LatticeVec, cb: &Rat) -> Option<RatPoint> {
    let det = wedge(la, lb);
    if det.is_zero() {
        return None;
    }
    let det = rat_int(&det);
    let x = (ca * rat_int(&lb.y) - cb * rat_int(&la.y)) / &det;
    let y = (cb * rat_int(&la.x) - ca * rat_int(&lb.x)) / &det;
    Some(RatPoint { x, y })
}

/// A vector `u` with `wedge(u, a) = 1`, completing `a` to a positive basis.
pub fn unimodular_completion(a: &Direction) -> LatticeVec {
    let e = a.y.extended_gcd(&a.x);
    // a.y·e.x + a.x·e.y = ±1, so u = (e.x, −e.y) gives wedge(u, a) = ±1.
    let u = LatticeVec { x: e.x, y: -e.y };
    if wedge(&u, a).is_one() {
        u
    } else {
        -u
    }
}

/// Half-plane index for angular sorting: 0 for angles in `[0, π)`, 1 otherwise.
fn half(v: &LatticeVec) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Compares nonzero vectors by polar angle in `[0, 2π)` measured from `(1, 0)`.
pub fn angle_cmp(a: &LatticeVec, b: &LatticeVec) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| Int::zero().cmp(&wedge(a, b)))
}

/// Signed count of crossings of the positive x-axis by the direction
/// sequence `a → b`, assuming the turn is strictly less than a half turn.
pub(crate) fn axis_crossing(a: &LatticeVec, b: &LatticeVec) -> i64 {
    let turn = wedge(a, b);
    match (half(a), half(b)) {
        (1, 0) if turn.is_positive() => 1,
        (0, 1) if turn.is_negative() => -1,
        _ => 0,
    }
}

/// A tropical isomorphism: an integer matrix of determinant ±1 plus a
/// rational translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularAffineMap {
    matrix: [[Int; 2]; 2],
    translation: RatVec,
}

impl UnimodularAffineMap {
    pub fn new(matrix: [[Int; 2]; 2], translation: RatVec) -> Result<Self> {
        let det = &matrix[0][0] * &matrix[1][1] - &matrix[0][1] * &matrix[1][0];
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(UnimodularAffineMap { matrix, translation })
    }

    /// A linear map given by small integer entries `[[a, b], [c, d]]`.
    pub fn linear(m: [[i64; 2]; 2]) -> Result<Self> {
        UnimodularAffineMap::new(
            [[int(m[0][0]), int(m[0][1])], [int(m[1][0]), int(m[1][1])]],
            RatPoint::origin(),
        )
    }

    pub fn identity() -> Self {
        UnimodularAffineMap::linear([[1, 0], [0, 1]]).expect("identity is unimodular")
    }

    pub fn matrix(&self) -> &[[Int; 2]; 2] {
        &self.matrix
    }

    pub fn translation(&self) -> &RatVec {
        &self.translation
    }

    pub fn det(&self) -> Int {
        &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0]
    }

    /// `matrix · v` (translations do not act on vectors).
    pub fn apply_vec(&self, v: &LatticeVec) -> LatticeVec {
        let m = &self.matrix;
        LatticeVec { x: &m[0][0] * &v.x + &m[0][1] * &v.y, y: &m[1][0] * &v.x + &m[1][1] * &v.y }
    }

    /// The image of a primitive direction (again primitive).
    pub fn apply_direction(&self, d: &Direction) -> Direction {
        Direction(self.apply_vec(d))
    }

    /// `matrix · p + translation`.
    pub fn apply_point(&self, p: &RatPoint) -> RatPoint {
        let m = &self.matrix;
        RatPoint {
            x: rat_int(&m[0][0]) * &p.x + rat_int(&m[0][1]) * &p.y + &self.translation.x,
            y: rat_int(&m[1][0]) * &p.x + rat_int(&m[1][1]) * &p.y + &self.translation.y,
        }
    }

    /// The transpose-inverse, which is how covectors transform: `λ ↦ λ∘M⁻¹`.
    pub fn apply_covector(&self, lambda: &LatticeVec) -> LatticeVec {
        let inv = self.inverse();
        let m = &inv.matrix;
        LatticeVec { x: &m[0][0] * &lambda.x + &m[1][0] * &lambda.y, y: &m[0][1] * &lambda.x + &m[1][1] * &lambda.y }
    }

    pub fn inverse(&self) -> UnimodularAffineMap {
        let m = &self.matrix;
        let det = self.det();
        let inv = [[&m[1][1] * &det, -&m[0][1] * &det], [-&m[1][0] * &det, &m[0][0] * &det]];
        let lin = UnimodularAffineMap { matrix: inv, translation: RatPoint::origin() };
        let t = lin.apply_point(&self.translation);
        UnimodularAffineMap { matrix: lin.matrix, translation: -&t }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &UnimodularAffineMap) -> UnimodularAffineMap {
        let a = &self.matrix;
        let b = &other.matrix;
        let m = [
            [&a[0][0] * &b[0][0] + &a[0][1] * &b[1][0], &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1]],
            [&a[1][0] * &b[0][0] + &a[1][1] * &b[1][0], &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1]],
        ];
        let t = self.apply_point(&other.translation);
        UnimodularAffineMap { matrix: m, translation: t }
    }
}

/// Anything a [`UnimodularAffineMap`] can act on.
pub trait MapTarget {
    fn mapped_by(&self, m: &UnimodularAffineMap) -> Self;
}

impl MapTarget for RatPoint {
    fn mapped_by(&self, m: &UnimodularAffineMap) -> Self {
        m.apply_point(self)
    }
}

impl MapTarget for LatticeVec {
    fn mapped_by(&self, m: &UnimodularAffineMap) -> Self {
        m.apply_vec(self)
    }
}

/// Applies `m` to a point (with translation) or a lattice vector (without).
pub fn apply_map<T: MapTarget>(m: &UnimodularAffineMap, target: &T) -> T {
    target.mapped_by(m)
}

/// Strict convex hull in counter-clockwise order, starting from the
/// lexicographically smallest point; collinear boundary points are dropped.
pub fn convex_hull(points: &[RatPoint]) -> Vec<RatPoint> {
    let mut pts: Vec<RatPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: &RatPoint, a: &RatPoint, b: &RatPoint| wedge_rat(&(a - o), &(b - o));
    let mut lower: Vec<RatPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RatPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

//! Seeded generators of random inputs for the verification suites.
//!
//! Every generator draws from a caller-supplied RNG; [`case_rng`] derives an
//! independent ChaCha stream per case so that suites are reproducible and
//! their cases can run in any order or in parallel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::{int, rat, wedge, Direction, LatticeVec, Rat, RatPoint};
use crate::wavefront::ConvexDomain;

/// Independent, reproducible RNG for case `index` of a suite seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A random primitive direction with coordinates in `[−bound, bound]`.
pub fn random_direction<R: Rng>(rng: &mut R, bound: i64) -> Direction {
    loop {
        let v = LatticeVec::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if let Ok(d) = Direction::from_vec(v) {
            return d;
        }
    }
}

/// A random rational in `[0, max]` with denominator at most `max_den`.
pub fn random_rat<R: Rng>(rng: &mut R, max: i64, max_den: i64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    rat(rng.gen_range(0..=max * den), den)
}

/// Convex hull of 3–10 random lattice points in `[0, size]²`.
pub fn random_lattice_polygon<R: Rng>(rng: &mut R, size: i64) -> ConvexDomain {
    loop {
        let k = rng.gen_range(3..=10);
        let pts: Vec<RatPoint> =
            (0..k).map(|_| RatPoint::from_ints(rng.gen_range(0..=size), rng.gen_range(0..=size))).collect();
        let hull = crate::lattice::convex_hull(&pts);
        if hull.len() >= 3 {
            return ConvexDomain::bounded(hull).expect("strict hull is convex");
        }
    }
}

/// A random polygon with rational vertices: a lattice polygon scaled by
/// `1/q` for a small `q`.
pub fn random_rational_polygon<R: Rng>(rng: &mut R, size: i64) -> ConvexDomain {
    let d = random_lattice_polygon(rng, size);
    let q = rat(1, rng.gen_range(1..=3));
    ConvexDomain::bounded(d.vertices().iter().map(|v| v.scale(&q)).collect()).expect("scaling preserves convexity")
}

/// A random domain bounded by a convex chain and two rays: the hull of a few
/// random points plus a random cone (sometimes a single ray).
pub fn random_two_rays<R: Rng>(rng: &mut R, size: i64) -> ConvexDomain {
    loop {
        let k = rng.gen_range(1..=5);
        let pts: Vec<RatPoint> =
            (0..k).map(|_| RatPoint::from_ints(rng.gen_range(0..=size), rng.gen_range(0..=size))).collect();
        let r1 = random_direction(rng, 4);
        let r2 = if rng.gen_bool(0.15) { r1.clone() } else { random_direction(rng, 4) };
        if r1 != r2 && wedge(&r1, &r2) == int(0) {
            continue;
        }
        if let Ok(d) = ConvexDomain::hull_plus_cone(&pts, &r1, &r2) {
            return d;
        }
    }
}

/// A random half-plane or strip.
pub fn random_straight<R: Rng>(rng: &mut R) -> ConvexDomain {
    let lambda = random_direction(rng, 4);
    let c = random_rat(rng, 5, 3);
    if rng.gen_bool(0.5) {
        ConvexDomain::half_plane(lambda, c)
    } else {
        let width = random_rat(rng, 5, 3) + rat(1, 3);
        ConvexDomain::strip(lambda, c.clone(), c + width).expect("positive width")
    }
}

/// A random domain of any kind, mostly polygons.
pub fn random_domain<R: Rng>(rng: &mut R) -> ConvexDomain {
    match rng.gen_range(0..10) {
        0..=4 => random_lattice_polygon(rng, 12),
        5 | 6 => random_rational_polygon(rng, 12),
        7 | 8 => random_two_rays(rng, 6),
        _ => random_straight(rng),
    }
}

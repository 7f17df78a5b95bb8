//! Acceptance criteria: one PASS/FAIL line per criterion, all checked exactly.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

use tropicaust_core::caustic::{
    caustic_of, eval_series, eval_series_trace, final_edge_endpoint_type, final_star_type, noether_audit,
    twelve_sum, validate_balancing,
};
use tropicaust_core::contfrac::{cf_from_angle, hj_cf, minimal_resolution, reduced_fractions, regular_cf};
use tropicaust_core::lattice::{int, rat, rat_int, wedge};
use tropicaust_core::random::{case_rng, random_domain, random_lattice_polygon, random_two_rays};
use tropicaust_core::toric::{
    canonical_evolution_check, complete_fan_twelve, dual_fan, hirzebruch_fan, random_closed_class, Fan, H2Class,
};
use tropicaust_core::trig::{cotangent, reversed_cotangent};
use tropicaust_core::wavefront::{
    age, interior_hull_front, negative_propagate, propagate, EventOutcome, FinalLocus, Front,
};
use tropicaust_core::{
    simulate, Angle, ConvexDomain, Direction, DomainKind, EvolutionTrace, Extended, Int, LatticeVec, Rat, RatPoint,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn poly(pts: &[(i64, i64)]) -> ConvexDomain {
    ConvexDomain::bounded(pts.iter().map(|&(x, y)| RatPoint::from_ints(x, y)).collect()).unwrap()
}

fn dir(x: i64, y: i64) -> Direction {
    Direction::new(x, y).unwrap()
}

fn square() -> ConvexDomain {
    poly(&[(0, 0), (2, 0), (2, 2), (0, 2)])
}

fn pentagon() -> ConvexDomain {
    poly(&[(0, 0), (4, 0), (4, 1), (2, 3), (0, 1)])
}

fn quadrilateral() -> ConvexDomain {
    poly(&[(0, 0), (1, -2), (1, 3), (0, 1)])
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// A random time strictly inside the life of the evolution.
fn sample_time<R: Rng>(rng: &mut R, trace: &EvolutionTrace) -> Rat {
    let den = rng.gen_range(2..=12);
    let f = rat(rng.gen_range(1..den), den);
    match &trace.final_time {
        Extended::Finite(tf) => tf * f,
        Extended::Infinity => f * rat(6, 1),
    }
}

/// Runs `f` on `count` seeded cases in parallel and returns the first failure.
fn cases<F>(count: usize, seed: u64, f: F) -> Result<(), String>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> Result<(), String> + Sync,
{
    let failures: Vec<String> = (0..count)
        .into_par_iter()
        .filter_map(|i| f(&mut case_rng(seed, i as u64)).err().map(|e| format!("case {i}: {e}")))
        .collect();
    match failures.first() {
        None => Ok(()),
        Some(first) => Err(format!("{} failing cases, first: {first}", failures.len())),
    }
}

fn noether() -> Outcome {
    let fixtures = [
        (square(), rat(4, 1), rat(8, 1)),
        (poly(&[(0, 0), (3, 0), (3, 1), (0, 1)]), rat(6, 1), rat(8, 1)),
        (pentagon(), rat(8, 1), rat(10, 1)),
        (quadrilateral(), rat(6, 1), rat(8, 1)),
    ];
    for (d, caustic, boundary) in &fixtures {
        let a = noether_audit(&simulate(d).map_err(err)?).map_err(err)?;
        ensure(&a.l_caustic == caustic && &a.l_boundary == boundary && a.residual.is_zero(), || {
            format!("fixture {:?}: {} + {} with residual {}", d.vertices(), a.l_caustic, a.l_boundary, a.residual)
        })?;
    }
    cases(200, 101, |rng| {
        let d = random_lattice_polygon(rng, 30);
        let a = noether_audit(&simulate(&d).map_err(err)?).map_err(err)?;
        ensure(a.residual.is_zero(), || format!("{:?}: residual {}", d.vertices(), a.residual))
    })?;
    Ok("4 fixtures + 200 random lattice polygons".into())
}

fn discrete_continuous() -> Outcome {
    let tri = poly(&[(0, 0), (3, 0), (0, 3)]);
    let at_one = propagate(&tri, &rat(1, 1)).map_err(err)?;
    ensure(at_one == Front::Locus(FinalLocus::Point(RatPoint::from_ints(1, 1))), || format!("triangle at t=1: {at_one:?}"))?;
    ensure(interior_hull_front(&Front::Domain(tri)).map_err(err)? == at_one, || "triangle interior hull".into())?;
    cases(200, 102, |rng| {
        let d = random_lattice_polygon(rng, 20);
        let mut discrete = Front::Domain(d.clone());
        let mut k = 1;
        loop {
            discrete = interior_hull_front(&discrete).map_err(err)?;
            let continuous = propagate(&d, &rat(k, 1)).map_err(err)?;
            ensure(continuous == discrete, || format!("{:?} differs at t={k}", d.vertices()))?;
            if discrete == Front::Empty {
                return Ok(());
            }
            k += 1;
        }
    })?;
    Ok("triangle fixture + 200 random lattice polygons".into())
}

fn huygens() -> Outcome {
    let two_rays = std::sync::atomic::AtomicUsize::new(0);
    cases(500, 103, |rng| {
        let d = if rng.gen_bool(0.25) { random_two_rays(rng, 6) } else { random_domain(rng) };
        if d.kind() == DomainKind::TwoRays {
            two_rays.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        }
        let trace = simulate(&d).map_err(err)?;
        let t = sample_time(rng, &trace);
        let s = sample_time(rng, &trace);
        let lhs = propagate(&d, &t).map_err(err)?.propagate(&s).map_err(err)?;
        let rhs = propagate(&d, &(&t + &s)).map_err(err)?;
        ensure(lhs == rhs, || format!("{d:?} at t={t}, s={s}"))
    })?;
    let n = two_rays.into_inner();
    ensure(n > 0, || "no TwoRays cases were drawn".into())?;
    Ok(format!("500 triples, {n} with two rays"))
}

fn continued_fractions() -> Outcome {
    let pairs = reduced_fractions(50);
    for (m, n) in &pairs {
        let a = Angle::with_cotangent(m, n).map_err(err)?;
        let q = Rat::new(m.clone(), n.clone());
        let data = cf_from_angle(&a).map_err(err)?;
        ensure(data.cf == regular_cf(&q).map_err(err)?, || format!("regular CF of {q}"))?;
        let hj = hj_cf(&Rat::new(n - m, n.clone())).map_err(err)?;
        let negated: Vec<Int> = hj.entries().iter().map(|e| -e).collect();
        ensure(minimal_resolution(&a).map_err(err)? == negated, || format!("resolution of {q}"))?;
    }
    let a = Angle::from_ints((1, 0), (3, 7)).map_err(err)?;
    let ta = cotangent(&a);
    ensure(ta.value() == rat(4, 7), || format!("ta = {}", ta.value()))?;
    let cf = cf_from_angle(&a).map_err(err)?;
    ensure(cf.cf.entries() == [int(1), int(1), int(3)], || format!("regular {}", cf.cf))?;
    let res: Vec<Int> = minimal_resolution(&a).map_err(err)?.iter().map(|e| -e).collect();
    ensure(res == [int(3), int(2), int(2)], || format!("HJ {res:?}"))?;
    ensure(reversed_cotangent(&ta).value() == rat(2, 7), || "reversed cotangent".into())?;
    Ok(format!("{} reduced fractions + the 4/7 example", pairs.len()))
}

fn twelve_sums() -> Outcome {
    let fixtures: [(ConvexDomain, i64, Vec<i64>); 3] = [
        (poly(&[(0, 0), (1, 0), (1, 1), (0, 1)]), 4, vec![2, 2, 2, 2]),
        (poly(&[(0, 0), (1, 0), (0, 1)]), 3, vec![3, 3, 3]),
        (quadrilateral(), 4, vec![-2, 2, 2, 6]),
    ];
    for (d, vertex_sum, edges) in &fixtures {
        let a = twelve_sum(d).map_err(err)?;
        let vs: Int = a.per_vertex.iter().map(|(_, k)| k).sum();
        let mut es: Vec<Int> = a.per_edge.iter().map(|(_, k)| k.clone()).collect();
        es.sort();
        let expect: Vec<Int> = edges.iter().map(|&k| int(k)).collect();
        ensure(a.total == int(12) && vs == int(*vertex_sum) && es == expect, || {
            format!("{:?}: {vs} + {es:?} = {}", d.vertices(), a.total)
        })?;
    }
    let mut canonical = 0;
    let mut index = 0u64;
    while canonical < 200 {
        let mut rng = case_rng(105, index);
        index += 1;
        let d = random_domain(&mut rng);
        let trace = simulate(&d).map_err(err)?;
        let t = sample_time(&mut rng, &trace);
        if let Front::Domain(front) = propagate(&d, &t).map_err(err)? {
            if front.is_bounded() {
                let a = twelve_sum(&front).map_err(err)?;
                ensure(a.total == int(12), || format!("{:?}: total {}", front.vertices(), a.total))?;
                canonical += 1;
            }
        }
    }
    let plane = Fan::new(vec![dir(1, 0), dir(0, 1), dir(-1, -1)], true).map_err(err)?;
    let product = Fan::new(vec![dir(1, 0), dir(0, 1), dir(-1, 0), dir(0, -1)], true).map_err(err)?;
    for f in [plane, product].into_iter().chain((0..=5).map(hirzebruch_fan)) {
        let s = complete_fan_twelve(&f).map_err(err)?;
        ensure(s == int(12), || format!("fan {:?}: {s}", f.rays()))?;
    }
    Ok("3 fixtures + 200 canonical fronts; plane, product, Hirzebruch 0..5 fans".into())
}

fn collision_shape() -> Outcome {
    let events = std::sync::atomic::AtomicUsize::new(0);
    cases(400, 106, |rng| {
        let d = random_domain(rng);
        let trace = simulate(&d).map_err(err)?;
        events.fetch_add(trace.events.len(), std::sync::atomic::Ordering::Relaxed);
        let v = trace.collision_violations();
        ensure(v.is_empty(), || format!("{d:?}: {v:?}"))
    })?;
    let trace = simulate(&pentagon()).map_err(err)?;
    let interim: Vec<_> =
        trace.events.iter().filter(|e| matches!(e.outcome, EventOutcome::NewParticle(_))).collect();
    ensure(interim.len() == 2 && interim.iter().all(|e| e.time == rat(1, 1)), || "pentagon interim events".into())?;
    let last = trace.events.last().ok_or("pentagon has no events")?;
    ensure(
        last.outcome == EventOutcome::FinalLocus && last.incoming.len() == 3 && last.time == rat(3, 2),
        || format!("pentagon final event {last:?}"),
    )?;
    Ok(format!("400 random simulations ({} events) + pentagon fixture", events.into_inner()))
}

/// Interior lattice points of a lattice polygon, by Pick's theorem.
fn interior_points(hull: &[LatticeVec]) -> Int {
    let n = hull.len();
    let mut twice_area = Int::zero();
    let mut boundary = Int::zero();
    for i in 0..n {
        let (a, b) = (&hull[i], &hull[(i + 1) % n]);
        twice_area += wedge(a, b);
        let e = b - a;
        boundary += num_integer::Integer::gcd(&e.x, &e.y);
    }
    (twice_area.abs() - boundary + int(2)) / int(2)
}

fn balancing_and_stars() -> Outcome {
    let stars = std::sync::atomic::AtomicUsize::new(0);
    let endpoints = std::sync::atomic::AtomicUsize::new(0);
    let check = |d: &ConvexDomain| -> Result<(), String> {
        let trace = simulate(d).map_err(err)?;
        let curve = caustic_of(&trace).map_err(err)?;
        let report = validate_balancing(&curve);
        ensure(report.balanced, || format!("{d:?}: {:?}", report.violations))?;
        match &trace.final_locus {
            Some(FinalLocus::Point(_)) => {
                let star = final_star_type(&trace).map_err(err)?;
                let sum = star.rays.iter().fold(LatticeVec::zero(), |acc, (r, w)| &acc + &r.scale(w));
                ensure(sum.is_zero(), || format!("{d:?}: star sum {sum}"))?;
                let inner = interior_points(&star.hull);
                ensure(inner.is_one(), || format!("{d:?}: hull has {inner} interior points"))?;
                stars.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            }
            Some(FinalLocus::Segment(..)) | Some(FinalLocus::Ray(..)) => {
                let ends = final_edge_endpoint_type(&trace).map_err(err)?;
                endpoints.fetch_add(ends.len(), std::sync::atomic::Ordering::Relaxed);
            }
            _ => {}
        }
        Ok(())
    };
    for d in [square(), pentagon(), quadrilateral(), poly(&[(0, 0), (3, 0), (0, 3)])] {
        check(&d)?;
    }
    cases(400, 107, |rng| check(&random_domain(rng)))?;
    Ok(format!(
        "400 random caustics; {} point stars, {} segment/ray endpoints",
        stars.into_inner(),
        endpoints.into_inner()
    ))
}

fn series() -> Outcome {
    cases(200, 108, |rng| {
        let d = random_domain(rng);
        let trace = simulate(&d).map_err(err)?;
        for p in &trace.particles {
            if rng.gen_bool(0.5) {
                continue;
            }
            let end = match &p.death_time {
                Some(t) => t.clone(),
                None => &p.birth_time + rat(4, 1),
            };
            let den = rng.gen_range(1..=8);
            let s = &p.birth_time + (&end - &p.birth_time) * rat(rng.gen_range(0..=den), den);
            let f = eval_series_trace(&trace, &p.position(&s)).map_err(err)?;
            ensure(f == s, || format!("{d:?}: particle {} at t={s} gives {f}", p.id))?;
        }
        let t = sample_time(rng, &trace);
        if let Front::Domain(front) = propagate(&d, &t).map_err(err)? {
            for v in front.vertices() {
                let f = eval_series(&d, v).map_err(err)?;
                ensure(f == t, || format!("{d:?}: vertex {v} at t={t} gives {f}"))?;
            }
        }
        Ok(())
    })?;
    Ok("200 random domains: trajectories and front vertices".into())
}

fn ages() -> Outcome {
    let quad = quadrilateral();
    let a = age(&quad).map_err(err)?;
    ensure(a == Extended::Finite(rat(1, 2)), || format!("quadrilateral age {a}"))?;
    let mut canonical = vec![quad];
    let mut non_canonical = vec![poly(&[(0, 0), (7, 0), (0, 3)])];
    for i in 0..300u64 {
        let mut rng = case_rng(109, i);
        let d = random_domain(&mut rng);
        if !d.is_canonical() {
            non_canonical.push(d.clone());
        }
        let trace = simulate(&d).map_err(err)?;
        let t = sample_time(&mut rng, &trace);
        if let Front::Domain(front) = trace.front_at(&t).map_err(err)? {
            canonical.push(front);
        }
    }
    let mut round_trips = 0;
    for d in &canonical {
        if let Extended::Finite(a) = age(d).map_err(err)? {
            ensure(a.is_positive(), || format!("{d:?}: canonical domain with age 0"))?;
            let half = a / rat_int(&int(2));
            let back = negative_propagate(d, &half).map_err(err)?;
            let again = propagate(&back, &half).map_err(err)?;
            ensure(again == Front::Domain(d.clone()), || format!("{d:?}: round trip at a={half}"))?;
            round_trips += 1;
        }
    }
    for d in &non_canonical {
        let a = age(d).map_err(err)?;
        ensure(a == Extended::Finite(Rat::zero()), || format!("{d:?}: non-canonical age {a}"))?;
    }
    ensure(round_trips > 10, || format!("only {round_trips} finite-age fixtures"))?;
    Ok(format!("{round_trips} round trips, {} non-canonical inputs", non_canonical.len()))
}

fn class_evolution() -> Outcome {
    let fiber = H2Class::parse("1,0:1;-1,0:1").map_err(err)?;
    let sq = simulate(&square()).map_err(err)?;
    let c = canonical_evolution_check(&sq, &fiber, &rat(1, 4), &rat(1, 2)).map_err(err)?;
    ensure(c.holds && c.slope == rat(-2, 1), || format!("square fiber slope {}", c.slope))?;
    let line = H2Class::parse("1,0:1;0,1:1;-1,-1:1").map_err(err)?;
    let tri = simulate(&poly(&[(0, 0), (3, 0), (0, 3)])).map_err(err)?;
    let c = canonical_evolution_check(&tri, &line, &rat(1, 8), &rat(7, 8)).map_err(err)?;
    ensure(c.holds && c.slope == rat(-3, 1), || format!("plane class slope {}", c.slope))?;
    cases(100, 110, |rng| {
        let d = loop {
            let d = random_domain(rng);
            if matches!(d.kind(), DomainKind::Bounded | DomainKind::TwoRays) {
                break d;
            }
        };
        let trace = simulate(&d).map_err(err)?;
        let mut bounds = vec![Rat::zero()];
        bounds.extend(trace.critical_times());
        if trace.final_time == Extended::Infinity {
            bounds.push(bounds.last().cloned().unwrap_or_default() + rat(4, 1));
        }
        let windows: Vec<(Rat, Rat)> =
            bounds.windows(2).filter(|w| w[0] < w[1]).map(|w| (w[0].clone(), w[1].clone())).collect();
        let (lo, hi) = windows[rng.gen_range(0..windows.len())].clone();
        let t0 = &lo + (&hi - &lo) * rat(1, 3);
        let t1 = &lo + (&hi - &lo) * rat(rng.gen_range(3..=5), 6);
        let Front::Domain(front) = trace.front_at(&t0).map_err(err)? else {
            return Err(format!("{d:?}: no domain at t={t0}"));
        };
        let class = random_closed_class(&dual_fan(&front), rng);
        let c = canonical_evolution_check(&trace, &class, &t0, &t1).map_err(err)?;
        ensure(c.holds, || format!("{d:?}: {class} slope {} vs {}", c.slope, c.pairing))
    })?;
    Ok("square fiber (−2), plane class (−3) + 100 random triples".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("noether length formula", noether),
        ("discrete equals continuous evolution", discrete_continuous),
        ("huygens principle", huygens),
        ("continued fractions", continued_fractions),
        ("twelve-sums", twelve_sums),
        ("collision shape", collision_shape),
        ("balancing and final stars", balancing_and_stars),
        ("series consistency", series),
        ("age", ages),
        ("canonical class evolution", class_evolution),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                all = false;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.2}s)", i + 1)
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Invariant checks for a single domain and the seeded random suite.

use rand::Rng;
use rayon::prelude::*;

use crate::caustic::{caustic_of, eval_series_trace, final_edge_endpoint_type, final_star_type, noether_audit, twelve_sum};
use crate::error::Result;
use crate::lattice::{int, rat, rat_int, Extended, Rat, RatPoint, UnimodularAffineMap};
use crate::random::{case_rng, random_domain};
use crate::toric::{canonical_evolution_check, divisor_canonical_degree, dual_fan, random_closed_class};
use crate::trig::{self, angle_invariants};
use crate::wavefront::{interior_hull_front, simulate, ConvexDomain, DomainKind, EvolutionTrace, FinalLocus, Front};

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// All checks run on one domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseReport {
    pub index: Option<usize>,
    pub domain: ConvexDomain,
    pub final_time: Option<Extended>,
    pub checks: Vec<CheckResult>,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

/// Reports of a whole suite, in case order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub seed: u64,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn passed_count(&self) -> usize {
        self.cases.iter().filter(|c| c.passed()).count()
    }

    pub fn passed(&self) -> bool {
        self.passed_count() == self.cases.len()
    }
}

struct Checks(Vec<CheckResult>);

impl Checks {
    fn record(&mut self, name: &'static str, outcome: Result<std::result::Result<(), String>>) {
        let (passed, detail) = match outcome {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(msg)) => (false, msg),
            Err(e) => (false, e.to_string()),
        };
        self.0.push(CheckResult { name, passed, detail });
    }
}

fn verdict(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random rational strictly between 0 and 1.
fn unit_fraction<R: Rng>(rng: &mut R) -> Rat {
    let den = rng.gen_range(2..=12);
    rat(rng.gen_range(1..den), den)
}

/// A random time strictly inside `(0, t_Φ)`, or in `(0, 6)` when `t_Φ = ∞`.
fn sample_time<R: Rng>(rng: &mut R, trace: &EvolutionTrace) -> Rat {
    let f = unit_fraction(rng);
    match &trace.final_time {
        Extended::Finite(tf) => tf * f,
        Extended::Infinity => f * rat(6, 1),
    }
}

fn front_domain(trace: &EvolutionTrace, t: &Rat) -> Result<Option<ConvexDomain>> {
    Ok(match trace.front_at(t)? {
        Front::Domain(d) => Some(d),
        _ => None,
    })
}

fn random_unimodular<R: Rng>(rng: &mut R) -> UnimodularAffineMap {
    let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, -1], [1, 0]], [[1, 0], [0, -1]]];
    let mut m = UnimodularAffineMap::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let g = UnimodularAffineMap::linear(gens[rng.gen_range(0..gens.len())]).expect("unimodular generator");
        m = g.compose(&m);
    }
    let shift = RatPoint::new(rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)), rat(rng.gen_range(-6..=6), 1));
    UnimodularAffineMap::new(m.matrix().clone(), shift).expect("unimodular")
}

fn map_locus(m: &UnimodularAffineMap, l: &FinalLocus) -> Option<FinalLocus> {
    Some(match l {
        FinalLocus::Point(p) => FinalLocus::Point(m.apply_point(p)),
        FinalLocus::Segment(a, b) => {
            let (a, b) = (m.apply_point(a), m.apply_point(b));
            if a <= b {
                FinalLocus::Segment(a, b)
            } else {
                FinalLocus::Segment(b, a)
            }
        }
        _ => return None,
    })
}

/// Runs every applicable invariant check on `d`, sampling times and
/// transformations from `rng`.
pub fn verify_domain<R: Rng>(d: &ConvexDomain, rng: &mut R) -> CaseReport {
    let mut checks = Checks(Vec::new());
    let trace = match simulate(d) {
        Ok(t) => t,
        Err(e) => {
            checks.record("simulation", Err(e));
            return CaseReport { index: None, domain: d.clone(), final_time: None, checks: checks.0 };
        }
    };
    let polygonal = matches!(d.kind(), DomainKind::Bounded | DomainKind::TwoRays);

    checks.record("collisions", Ok({
        let v = trace.collision_violations();
        let initial = trace.particles.iter().filter(|p| p.birth_time == rat(0, 1)).count();
        let bounded_count = trace.events.is_empty() || trace.events.len() < initial;
        verdict(v.is_empty() && bounded_count, || format!("{v:?}; {} events for {initial} particles", trace.events.len()))
    }));
    checks.record("balancing", caustic_of(&trace).map(|_| Ok(())));

    if d.is_bounded() {
        checks.record(
            "noether",
            noether_audit(&trace).map(|a| verdict(a.residual == rat(0, 1), || format!("residual {}", a.residual))),
        );
    }

    match &trace.final_locus {
        Some(FinalLocus::Point(_)) => checks.record("final-star", final_star_type(&trace).map(|_| Ok(()))),
        Some(FinalLocus::Segment(..)) | Some(FinalLocus::Ray(..)) => {
            checks.record("final-endpoints", final_edge_endpoint_type(&trace).map(|_| Ok(())))
        }
        _ => {}
    }

    // Huygens: Φ(t)(s) = Φ(t + s).
    for _ in 0..2 {
        let t = sample_time(rng, &trace);
        let s = sample_time(rng, &trace);
        checks.record(
            "huygens",
            (|| {
                let lhs = trace.front_at(&t)?.propagate(&s)?;
                let rhs = trace.front_at(&(&t + &s))?;
                Ok(verdict(lhs == rhs, || format!("t={t}, s={s}")))
            })(),
        );
    }

    // Discrete evolution by interior hulls.
    if d.is_bounded() && d.is_lattice() {
        checks.record(
            "lattice-oracle",
            (|| {
                let tf = trace.final_time.finite().cloned().unwrap_or_default();
                let last = tf.ceil().to_integer();
                let mut discrete = Front::Domain(d.clone());
                let mut k = int(1);
                while k <= last {
                    discrete = interior_hull_front(&discrete)?;
                    let continuous = trace.front_at(&rat_int(&k))?;
                    if continuous != discrete {
                        return Ok(Err(format!("fronts differ at t={k}")));
                    }
                    k += 1;
                }
                Ok(Ok(()))
            })(),
        );
    }

    if polygonal {
        let t = sample_time(rng, &trace);
        let t_later = &t + (sample_time(rng, &trace) - &t) * unit_fraction(rng);
        let (t, t_later) = if t_later > t { (t, t_later) } else { (t_later, t) };
        let fronts = front_domain(&trace, &t).and_then(|a| Ok((a, front_domain(&trace, &t_later)?)));
        if let Ok((Some(early), Some(late))) = &fronts {
            checks.record("canonical-front", Ok({
                let bad: Vec<String> = early
                    .vertex_angles()
                    .iter()
                    .filter(|a| !trig::is_canonical(a))
                    .map(|a| a.apex.to_string())
                    .collect();
                verdict(bad.is_empty(), || format!("non-canonical vertices {bad:?} at t={t}"))
            }));
            checks.record("vertex-weights", Ok({
                let alive = trace.alive_at(&t);
                let ok = early.vertex_angles().iter().all(|a| {
                    let det = angle_invariants(a).determinant;
                    alive.iter().any(|p| p.position(&t) == a.apex && p.weight == det)
                });
                verdict(ok && alive.len() == early.vertices().len(), || format!("trajectory weights differ from vertex determinants at t={t}"))
            }));
            if early.is_bounded() {
                checks.record(
                    "twelve",
                    twelve_sum(early).map(|a| verdict(a.total == int(12), || format!("total {} at t={t}", a.total))),
                );
            }
            checks.record("fan-monotone", Ok({
                let (fe, fl) = (dual_fan(early), dual_fan(late));
                verdict(fl.rays().iter().all(|r| fe.contains(r)), || format!("fan grows between t={t} and t={t_later}"))
            }));
            checks.record("nesting", Ok(verdict(
                t == t_later || late.vertices().iter().all(|v| early.contains_strictly(v)),
                || format!("front at t={t_later} leaves the interior of the front at t={t}"),
            )));
            checks.record(
                "series",
                (|| {
                    for v in early.vertices() {
                        let f = eval_series_trace(&trace, v)?;
                        if f != t {
                            return Ok(Err(format!("series at vertex ({v}) is {f}, expected {t}")));
                        }
                    }
                    for p in trace.alive_at(&t) {
                        let f = eval_series_trace(&trace, &p.position(&t))?;
                        if f != t {
                            return Ok(Err(format!("series along particle {} is {f}, expected {t}", p.id)));
                        }
                    }
                    Ok(Ok(()))
                })(),
            );
            checks.record(
                "divisor-degree",
                (|| {
                    for e in trace.front_edges(&t)? {
                        let deg = divisor_canonical_degree(&trace, &t, &e.support.lambda)?;
                        if deg.via_conormals != e.gradient {
                            return Ok(Err(format!("edge ({}) gradient {} vs degree {}", e.support.lambda, e.gradient, deg.via_conormals)));
                        }
                    }
                    Ok(Ok(()))
                })(),
            );
        } else if let Err(e) = fronts {
            checks.record("fronts", Err(e));
        }

        // Area slope on a window between consecutive critical times.
        let crit = trace.critical_times();
        let mut bounds = vec![rat(0, 1)];
        bounds.extend(crit.iter().cloned());
        if trace.final_time == Extended::Infinity {
            bounds.push(bounds.last().cloned().unwrap_or_default() + rat(4, 1));
        }
        let windows: Vec<(Rat, Rat)> =
            bounds.windows(2).filter(|w| w[0] < w[1]).map(|w| (w[0].clone(), w[1].clone())).collect();
        if !windows.is_empty() {
            let (lo, hi) = windows[rng.gen_range(0..windows.len())].clone();
            let a = unit_fraction(rng);
            let b = unit_fraction(rng);
            let (a, b) = if a < b { (a, b) } else if b < a { (b, a) } else { (rat(1, 3), rat(2, 3)) };
            let t0 = &lo + (&hi - &lo) * a;
            let t1 = &lo + (&hi - &lo) * b;
            checks.record(
                "class-evolution",
                (|| {
                    let front = front_domain(&trace, &t0)?.expect("inside the window the front is a domain");
                    let class = random_closed_class(&dual_fan(&front), rng);
                    let check = canonical_evolution_check(&trace, &class, &t0, &t1)?;
                    Ok(verdict(check.holds, || format!("slope {} vs K = {} for {class}", check.slope, check.pairing)))
                })(),
            );
        }
    }

    // Equivariance under a random tropical isomorphism.
    if d.is_bounded() {
        let m = random_unimodular(rng);
        checks.record(
            "equivariance",
            (|| {
                let image = simulate(&d.transform(&m)?)?;
                let mut expect: Vec<_> = trace
                    .particles
                    .iter()
                    .map(|p| (m.apply_point(&p.birth_point), m.apply_direction(&p.velocity), p.weight.clone()))
                    .collect();
                let mut got: Vec<_> =
                    image.particles.iter().map(|p| (p.birth_point.clone(), p.velocity.clone(), p.weight.clone())).collect();
                expect.sort();
                got.sort();
                let locus = trace.final_locus.as_ref().and_then(|l| map_locus(&m, l));
                Ok(verdict(
                    expect == got && image.final_time == trace.final_time && image.final_locus == locus,
                    || "trace does not commute with the map".into(),
                ))
            })(),
        );
    }

    CaseReport { index: None, domain: d.clone(), final_time: Some(trace.final_time.clone()), checks: checks.0 }
}

/// Runs [`verify_domain`] on `count` random domains, in parallel, with case
/// `i` drawing from its own stream of the seed.
pub fn verify_suite(count: usize, seed: u64) -> SuiteReport {
    let cases = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            let d = random_domain(&mut rng);
            let mut report = verify_domain(&d, &mut rng);
            report.index = Some(i);
            report
        })
        .collect();
    SuiteReport { seed, cases }
}

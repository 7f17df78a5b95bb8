//! Property tests over seeded random domains.

use proptest::prelude::*;

use tropicaust_core::caustic::{caustic_of, twelve_sum};
use tropicaust_core::json::{domain_from_json, domain_to_json, parse_domain, trace_to_json};
use tropicaust_core::lattice::rat;
use tropicaust_core::random::{case_rng, random_domain};
use tropicaust_core::svg::{evolution_scene, render_svg, RenderSpec};
use tropicaust_core::wavefront::{propagate, Front};
use tropicaust_core::{simulate, ConvexDomain, DomainKind, Extended, Rat, RatPoint, UnimodularAffineMap};

fn domain(seed: u64) -> ConvexDomain {
    random_domain(&mut case_rng(seed, 0))
}

fn fraction() -> impl Strategy<Value = Rat> {
    (2i64..12).prop_flat_map(|d| (1..d).prop_map(move |n| rat(n, d)))
}

fn unimodular() -> impl Strategy<Value = UnimodularAffineMap> {
    let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, -1], [1, 0]], [[1, 0], [0, -1]]];
    (prop::collection::vec(0usize..4, 1..5), -5i64..=5, -5i64..=5, 1i64..=3).prop_map(move |(word, x, y, q)| {
        let m = word.iter().fold(UnimodularAffineMap::identity(), |m, &g| {
            UnimodularAffineMap::linear(gens[g]).unwrap().compose(&m)
        });
        UnimodularAffineMap::new(m.matrix().clone(), RatPoint::new(rat(x, q), rat(y, 1))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn domain_json_round_trips(seed in any::<u64>()) {
        let d = domain(seed);
        prop_assert_eq!(domain_from_json(&domain_to_json(&d)).unwrap(), d.clone());
        let text = serde_json::to_string(&domain_to_json(&d)).unwrap();
        prop_assert_eq!(parse_domain(&text).unwrap(), d);
    }

    #[test]
    fn traces_serialize_deterministically(seed in any::<u64>()) {
        let d = domain(seed);
        let a = trace_to_json(&simulate(&d).unwrap());
        let b = trace_to_json(&simulate(&d).unwrap());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn huygens(seed in any::<u64>(), f in fraction(), g in fraction()) {
        let d = domain(seed);
        let tf = match simulate(&d).unwrap().final_time {
            Extended::Finite(tf) => tf,
            Extended::Infinity => rat(5, 1),
        };
        let (t, s) = (&tf * &f, &tf * &g);
        let lhs = propagate(&d, &t).unwrap().propagate(&s).unwrap();
        prop_assert_eq!(lhs, propagate(&d, &(&t + &s)).unwrap());
    }

    #[test]
    fn propagation_commutes_with_lattice_isomorphisms(seed in any::<u64>(), m in unimodular(), f in fraction()) {
        let d = domain(seed);
        let t = f * rat(3, 1);
        let image = propagate(&d.transform(&m).unwrap(), &t).unwrap();
        // Degenerate fronts are covered by the equivariance check of the verifier.
        let Front::Domain(front) = propagate(&d, &t).unwrap() else { return Ok(()) };
        let expected = Front::Domain(front.transform(&m).unwrap());
        prop_assert_eq!(image, expected);
    }

    #[test]
    fn canonical_fronts_have_twelve_sum_twelve(seed in any::<u64>(), f in fraction()) {
        let d = domain(seed);
        let trace = simulate(&d).unwrap();
        let t = match &trace.final_time {
            Extended::Finite(tf) => tf * &f,
            Extended::Infinity => f,
        };
        if let Front::Domain(front) = trace.front_at(&t).unwrap() {
            prop_assert!(front.is_canonical());
            if front.kind() == DomainKind::Bounded {
                prop_assert_eq!(twelve_sum(&front).unwrap().total, 12.into());
            }
        }
        prop_assert!(caustic_of(&trace).is_ok());
    }

    #[test]
    fn svg_output_is_stable(seed in any::<u64>()) {
        let d = domain(seed);
        let scene = evolution_scene(&d, &[rat(1, 4)]).unwrap();
        let spec = RenderSpec::default();
        let svg = render_svg(&scene, &spec).unwrap();
        prop_assert_eq!(&svg, &render_svg(&scene, &spec).unwrap());
        prop_assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}

#[test]
fn square_svg_golden() {
    let sq = tropicaust_core::json::parse_domain(r#"{"kind":"bounded","vertices":[[0,0],[2,0],[2,2],[0,2]]}"#).unwrap();
    let scene = evolution_scene(&sq, &[rat(1, 2)]).unwrap();
    let svg = render_svg(&scene, &RenderSpec::default()).unwrap();
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/square.svg");
    if std::env::var_os("TROPICAUST_UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &svg).unwrap();
    }
    assert_eq!(svg, std::fs::read_to_string(&path).unwrap());
}

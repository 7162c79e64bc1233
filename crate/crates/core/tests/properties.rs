use cremer_lab::circle::{
    arc_distance, cantor_leaf_sturmian, double, growth_bound, pullback_in_siegel_arc,
    steps_to_third, tent, Angle, CriticalLeaf,
};
use cremer_lab::contfrac::ContinuedFraction;
use cremer_lab::numerics::{escape_time, semidistance, trace_ray, QuadraticMap, RayParams};
use cremer_lab::symbolic::{
    intersects, string_of, verify_shift_down, Itinerary, PullbackId, PullbackTree, Tail, Word,
};
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{RngAlgorithm, TestRng};

fn angle() -> impl Strategy<Value = Angle> {
    (1u64..1 << 40).prop_flat_map(|d| (0..d, Just(d))).prop_map(|(n, d)| Angle::new(n, d).unwrap())
}

fn leaf() -> impl Strategy<Value = CriticalLeaf> {
    (angle(), angle()).prop_filter_map("ordered leaf", |(a, b)| CriticalLeaf::new(a, b).ok())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|s| Word::new(s).unwrap())
}

fn itinerary() -> impl Strategy<Value = Itinerary> {
    let tail = prop_oneof![
        Just(Tail::AllOnes),
        prop::collection::vec(0u8..2, 1..=6).prop_map(|s| Tail::Periodic(Word::new(s).unwrap())),
    ];
    (word(8), tail).prop_map(|(h, t)| Itinerary::new(h, t).unwrap())
}

fn pullback(max: usize) -> impl Strategy<Value = PullbackId> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|w| PullbackId::from_word(&w))
}

/// Periodic words with at least one zero.
fn periodic_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 1..=9)
        .prop_filter("needs a zero", |s| s.contains(&0))
        .prop_map(|s| Word::new(s).unwrap())
}

fn point() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn tent_law(a in angle(), b in angle()) {
        prop_assert_eq!(arc_distance(&double(&a), &double(&b)), tent(&arc_distance(&a, &b)));
    }

    #[test]
    fn pullback_is_a_section_of_doubling(theta in angle(), leaf in leaf()) {
        let pre = pullback_in_siegel_arc(&theta, &leaf);
        prop_assert_eq!(pre.double(), theta);
    }

    #[test]
    fn growth_bound_holds(a in angle(), b in angle()) {
        let d0 = arc_distance(&a, &b);
        let third = BigRational::new(1.into(), 3.into());
        prop_assume!(d0 > BigRational::from_integer(0.into()) && d0 < third);
        prop_assert!(steps_to_third(&a, &b).unwrap() <= growth_bound(&d0));
    }

    #[test]
    fn itinerary_round_trip(it in itinerary()) {
        let text = it.to_string();
        prop_assert_eq!(text.parse::<Itinerary>().unwrap(), it.clone());
        let json = serde_json::to_string(&it).unwrap();
        prop_assert_eq!(serde_json::from_str::<Itinerary>(&json).unwrap(), it);
    }

    #[test]
    fn shift_matches_prefix(it in itinerary(), k in 0usize..12) {
        prop_assert_eq!(it.shift(k).prefix(20), it.prefix(k + 20)[k..].to_vec());
    }

    #[test]
    fn intersections_map_forward(i in pullback(7), j in pullback(7)) {
        if intersects(&i, &j) {
            let (a, b) = (i.shift(1), j.shift(1));
            prop_assert!(a == b || intersects(&a, &b), "{} {}", i, j);
        }
    }

    #[test]
    fn no_three_pullbacks_meet(nodes in prop::collection::btree_set(pullback(6), 1..40)) {
        let g = PullbackTree::from_nodes(6, nodes.into_iter().collect());
        prop_assert!(g.is_triangle_free());
    }

    #[test]
    fn strings_are_chains(w in periodic_word()) {
        let s = string_of(&Itinerary::periodic(&w).unwrap(), 12).unwrap();
        let e = s.elements();
        for j in 0..e.len() {
            for k in j + 1..e.len() {
                prop_assert_eq!(intersects(&e[j], &e[k]), k == j + 1, "{} {} {}", w, j, k);
            }
        }
    }

    #[test]
    fn strings_separate(u in periodic_word(), v in periodic_word()) {
        let (iu, iv) = (Itinerary::periodic(&u).unwrap(), Itinerary::periodic(&v).unwrap());
        prop_assume!(iu != iv);
        let su = string_of(&iu, 20).unwrap();
        let sv = string_of(&iv, 20).unwrap();
        let m = (1..).take_while(|&j| su.element(j) == sv.element(j)).count();
        prop_assume!(m + 1 < 20);
        for a in &su.elements()[m..] {
            for b in &sv.elements()[m..] {
                prop_assert!(a != b && !intersects(a, b), "{} {} {} {}", u, v, a, b);
            }
        }
    }

    #[test]
    fn escape_classification_is_monotone(z in point(), n in 1u32..200) {
        let map = QuadraticMap::golden_mean();
        let short = escape_time(&map, z, n, 3.0);
        let long = escape_time(&map, z, 2 * n, 3.0);
        match short {
            Some(i) => prop_assert_eq!(long, Some(i)),
            None => prop_assert!(long.is_none_or(|i| i >= n)),
        }
    }

    #[test]
    fn semidistance_vanishes_exactly_on_containment(
        b in prop::collection::vec(point(), 1..60),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..30),
        extra in prop::option::of(point()),
    ) {
        let mut a: Vec<Complex64> = picks.iter().map(|i| b[i.index(b.len())]).collect();
        prop_assert_eq!(semidistance(&a, &b).unwrap(), 0.0);
        prop_assert_eq!(semidistance(&b, &b).unwrap(), 0.0);
        if let Some(x) = extra {
            a.push(x);
            let contained = b.iter().any(|&y| (x - y).norm() <= 1e-12);
            prop_assert_eq!(semidistance(&a, &b).unwrap() <= 1e-12, contained);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn zero_ray_lands_at_repelling_fixed_point(quotients in prop::collection::vec(1u64..5, 12)) {
        let cf = ContinuedFraction::new(quotients).unwrap();
        let map = QuadraticMap::from_continued_fraction(&cf);
        let trace = trace_ray(&map, &Angle::zero(), &RayParams::default()).unwrap();
        let z = trace.landing_estimate.expect("angle-0 ray lands");
        prop_assert!((map.evaluate(z) - z).norm() < 1e-9);
        prop_assert!(map.derivative(z).norm() > 1.0);
        prop_assert!((z - (1.0 - map.lambda())).norm() < 1e-6);
    }
}

#[test]
fn involution_identity_on_a_million_points() {
    let map = QuadraticMap::golden_mean();
    let mut rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let worst = (0..1_000_000)
        .map(|_| {
            let z = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
            let (p, q) = (map.evaluate(z), map.evaluate(map.involution(z)));
            (p - q).norm() / p.norm().max(1.0)
        })
        .fold(0.0, f64::max);
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn shift_down_for_all_short_words() {
    for len in 1..=10usize {
        for bits in 0u32..1 << len {
            let w = Word::new((0..len).map(|b| ((bits >> b) & 1) as u8).collect()).unwrap();
            if w.zeros() == 0 || !w.is_primitive() {
                continue;
            }
            assert_eq!(verify_shift_down(&w, 10), Ok(true), "{w}");
        }
    }
}

#[test]
fn leaf_alpha_stabilizes() {
    let cf = ContinuedFraction::golden_mean(24);
    let deep = cantor_leaf_sturmian(&cf, 18).unwrap().leaf.alpha;
    assert!((deep.to_f64() - 0.354_901_721_431).abs() < 1e-10);
    let diameter = CriticalLeaf::diameter(deep.clone()).unwrap();
    assert_eq!(pullback_in_siegel_arc(&deep.double(), &diameter), deep);
}

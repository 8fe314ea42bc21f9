//! Property tests of cross-module invariants.

use proptest::prelude::*;
use proptest::strategy::Strategy as _;

use entropic::entropy::{entropy_pair, EntropyPoint, RenyiOrder};
use entropic::equality::{fourier_equality_states, mu_deficit, overlap_data};
use entropic::frontier::{d2_gamma, pareto_lower, reduce_2x2_to_rotation, sample_diagram};
use entropic::numerics::{dft, norm_sqr, sample_state, CMatrix, SeededRng, Strategy, C64};
use entropic::observables::{
    annihilator, fourier_group, indicator_state, parse_unitary_json, random_unitary, subgroups, unitary_json,
    AbelianGroup, ObservablePair,
};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

fn arb_order() -> impl proptest::strategy::Strategy<Value = RenyiOrder> {
    prop_oneof![
        Just(RenyiOrder::new(1.0).unwrap()),
        Just(RenyiOrder::HALF),
        Just(RenyiOrder::INFINITY),
        (0.5f64..6.0).prop_map(|a| RenyiOrder::new(a).unwrap()),
    ]
}

fn arb_strategy() -> impl proptest::strategy::Strategy<Value = Strategy> {
    prop_oneof![
        Just(Strategy::Haar),
        Just(Strategy::Real),
        Just(Strategy::Rrs),
        Just(Strategy::BasisMix(None)),
    ]
}

fn arb_group() -> impl proptest::strategy::Strategy<Value = AbelianGroup> {
    prop_oneof![
        (2usize..=12).prop_map(|d| AbelianGroup::cyclic(d).unwrap()),
        Just(AbelianGroup::new(vec![2, 2]).unwrap()),
        Just(AbelianGroup::new(vec![2, 4]).unwrap()),
        Just(AbelianGroup::new(vec![3, 3]).unwrap()),
        Just(AbelianGroup::new(vec![2, 2, 2]).unwrap()),
        Just(AbelianGroup::new(vec![2, 3]).unwrap()),
    ]
}

fn diagonal_phases(d: usize, rng: &mut SeededRng) -> Vec<C64> {
    let z = sample_state(d, Strategy::Haar, rng).unwrap();
    z.iter().map(|c| c / c.norm()).collect()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn mu_bound_holds(seed in any::<u64>(), d in 2usize..=8, alpha in arb_order(), strategy in arb_strategy()) {
        let mut rng = SeededRng::new(seed, 0);
        let w = random_unitary(d, &mut rng).unwrap();
        for _ in 0..20 {
            let psi = sample_state(d, strategy, &mut rng).unwrap();
            prop_assert!(mu_deficit(&w, &psi, alpha, alpha.dual()).unwrap() >= -1e-9);
        }
    }

    #[test]
    fn overlap_is_in_range(seed in any::<u64>(), d in 2usize..=12) {
        let w = random_unitary(d, &mut SeededRng::new(seed, 0)).unwrap();
        let o = overlap_data(&w);
        prop_assert!(o.c >= 1.0 / (d as f64).sqrt() - 1e-12 && o.c <= 1.0 + 1e-12);
        prop_assert!(o.mu_bound_bits >= -1e-12 && o.mu_bound_bits <= (d as f64).log2() + 1e-12);
    }

    #[test]
    fn sampled_states_are_normalized(seed in any::<u64>(), d in 2usize..=16, strategy in arb_strategy()) {
        let mut rng = SeededRng::new(seed, 0);
        for _ in 0..10 {
            let psi = sample_state(d, strategy, &mut rng).unwrap();
            prop_assert!((norm_sqr(&psi).sqrt() - 1.0).abs() <= 1e-12);
            if strategy == Strategy::Rrs {
                prop_assert!(dft(&psi).iter().all(|z| z.im.abs() <= 1e-10));
            }
        }
    }

    #[test]
    fn entropies_are_in_range(seed in any::<u64>(), d in 2usize..=8, alpha in arb_order()) {
        let w = ObservablePair::new("f", fourier_group(&AbelianGroup::cyclic(d).unwrap()).matrix().clone()).unwrap();
        let s = sample_diagram(&w, alpha, alpha.dual(), 50, Strategy::Haar, seed).unwrap();
        let max = (d as f64).log2() + 1e-9;
        for p in &s.points {
            prop_assert!(p.hx >= 0.0 && p.hx <= max && p.hy >= 0.0 && p.hy <= max);
        }
    }

    #[test]
    fn qubit_points_lie_above_the_exact_curve(seed in any::<u64>(), alpha in arb_order()) {
        prop_assume!(!alpha.is_infinite());
        let mut rng = SeededRng::new(seed, 0);
        let w = random_unitary(2, &mut rng).unwrap();
        let phi = reduce_2x2_to_rotation(&w).unwrap();
        let beta = alpha.dual();
        for _ in 0..20 {
            let psi = sample_state(2, Strategy::Haar, &mut rng).unwrap();
            let p = entropy_pair(&w, &psi, alpha, beta).unwrap();
            prop_assert!(p.hy >= d2_gamma(phi, alpha, beta, p.hx) - 1e-9, "{p:?} phi {phi}");
        }
    }

    #[test]
    fn diagonal_phases_do_not_change_the_diagram(seed in any::<u64>(), d in 2usize..=6, alpha in arb_order()) {
        let mut rng = SeededRng::new(seed, 0);
        let w = random_unitary(d, &mut rng).unwrap();
        let (d1, d2) = (diagonal_phases(d, &mut rng), diagonal_phases(d, &mut rng));
        let m = CMatrix::from_fn(d, |i, j| d1[i] * w.matrix()[(i, j)] * d2[j]);
        let w2 = ObservablePair::new("phased", m).unwrap();
        let psi = sample_state(d, Strategy::Haar, &mut rng).unwrap();
        let moved: Vec<C64> = psi.iter().zip(&d2).map(|(x, p)| x * p.conj()).collect();
        let a = entropy_pair(&w, &psi, alpha, alpha.dual()).unwrap();
        let b = entropy_pair(&w2, &moved, alpha, alpha.dual()).unwrap();
        prop_assert!((a.hx - b.hx).abs() <= 1e-10 && (a.hy - b.hy).abs() <= 1e-10);
    }

    #[test]
    fn pareto_lower_is_an_antichain(raw in prop::collection::vec((0.0f64..3.0, 0.0f64..3.0), 1..200)) {
        let points: Vec<EntropyPoint> = raw.iter().map(|&(x, y)| EntropyPoint::new(x, y)).collect();
        let f = pareto_lower(&points).unwrap();
        for w in f.points.windows(2) {
            prop_assert!(w[0].hx < w[1].hx && w[0].hy > w[1].hy);
        }
        for p in &points {
            prop_assert!(f.points.iter().any(|q| q.hx <= p.hx && q.hy <= p.hy));
        }
    }

    #[test]
    fn unitary_files_round_trip(seed in any::<u64>(), d in 2usize..=8) {
        let w = random_unitary(d, &mut SeededRng::new(seed, 0)).unwrap();
        let back = parse_unitary_json(&unitary_json(&w), false).unwrap();
        prop_assert!(back.matrix().max_abs_diff(w.matrix()) <= 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn fourier_maps_indicators_to_annihilators(g in arb_group()) {
        let f = fourier_group(&g);
        for l in subgroups(&g) {
            let perp = annihilator(&g, &l).unwrap();
            prop_assert_eq!(l.len() * perp.len(), g.order());
            let image = f.matrix().apply(&indicator_state(&g, &l).unwrap());
            let target = indicator_state(&g, &perp).unwrap();
            for (a, b) in image.iter().zip(&target) {
                prop_assert!((a - b).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn fourier_equality_states_attain_every_dual_pair(g in arb_group(), alpha in arb_order()) {
        prop_assume!(alpha != RenyiOrder::HALF && !alpha.is_infinite());
        let w = fourier_group(&g);
        for class in fourier_equality_states(&g).unwrap() {
            for psi in &class.states {
                prop_assert!(mu_deficit(&w, psi, alpha, alpha.dual()).unwrap().abs() <= 1e-8);
            }
        }
    }
}

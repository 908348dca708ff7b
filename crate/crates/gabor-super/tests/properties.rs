//! Randomized structural laws, checked with proptest.

use num_complex::Complex64;
use proptest::prelude::*;

use gabor_super::amalgam::{amalgam_norm, AmalgamParams, Exponent, Weight};
use gabor_super::gabor::{analyze, frame_operator_direct, synthesize, GaborLattice};
use gabor_super::signal::{random_signal, VectorSignal};
use gabor_super::walnut::{correlations, walnut_apply};

fn divisor_pairs(len: usize) -> Vec<(usize, usize)> {
    let divs: Vec<usize> = (1..=len).filter(|d| len % d == 0).collect();
    divs.iter()
        .flat_map(|&a| divs.iter().map(move |&b| (a, b)))
        .collect()
}

/// (len, a, b, channels) with a | len and b | len.
fn lattice_strategy() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (prop_oneof![Just(8usize), Just(12), Just(16)], 1usize..=3).prop_flat_map(|(len, n)| {
        let pairs = divisor_pairs(len);
        (0..pairs.len()).prop_map(move |i| {
            let (a, b) = pairs[i];
            (len, a, b, n)
        })
    })
}

fn signal_strategy(len: usize, n: usize) -> impl Strategy<Value = VectorSignal> {
    any::<u64>().prop_map(move |seed| random_signal(len, n, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// <analyze(f), c> = <f, synthesize(c)> — the two maps are adjoint.
    #[test]
    fn analysis_and_synthesis_are_adjoint(
        (len, a, b, n) in lattice_strategy(),
        fs in any::<u64>(),
        gs in any::<u64>(),
        cs in any::<u64>(),
    ) {
        let lat = GaborLattice::new(a, b, len).unwrap();
        let f = random_signal(len, n, fs);
        let g = random_signal(len, n, gs);
        let coeffs = analyze(&f, &g, lat).unwrap();

        // random coefficient array from a flat signal draw
        let flat = random_signal(lat.n_time() * lat.n_freq(), 1, cs);
        let mut c = gabor_super::gabor::GaborCoefficients::zeros(lat);
        for k in 0..lat.n_time() {
            for m in 0..lat.n_freq() {
                c.set(k, m, flat.at((k * lat.n_freq() + m) as i64, 0));
            }
        }

        let lhs: Complex64 = (0..lat.n_time())
            .flat_map(|k| (0..lat.n_freq()).map(move |m| (k, m)))
            .map(|(k, m)| coeffs.at(k, m) * c.at(k, m).conj())
            .sum();
        let rhs = f.inner(&synthesize(&c, &g, lat).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + lhs.norm()));
    }

    /// The structured apply agrees with the fully dense operator.
    #[test]
    fn structured_apply_matches_dense(
        (len, a, b, n) in lattice_strategy(),
        gs in any::<u64>(),
        hs in any::<u64>(),
        fs in any::<u64>(),
    ) {
        let lat = GaborLattice::new(a, b, len).unwrap();
        let g = random_signal(len, n, gs);
        let gamma = random_signal(len, n, hs);
        let f = random_signal(len, n, fs);
        let fast = walnut_apply(&correlations(&g, &gamma, lat).unwrap(), &f).unwrap();
        let slow = frame_operator_direct(&g, &gamma, lat).unwrap().apply(&f).unwrap();
        prop_assert!(fast.sub(&slow).unwrap().max_abs() <= 1e-10);
    }

    /// Translations compose additively and wrap at the signal length.
    #[test]
    fn translation_is_a_group_action(
        f in signal_strategy(12, 2),
        x in -30i64..30,
        y in -30i64..30,
    ) {
        let two_step = f.translate(x).translate(y);
        let one_step = f.translate(x + y);
        prop_assert!(two_step.sub(&one_step).unwrap().max_abs() <= 1e-12);
        let wrapped = f.translate(x + 12).sub(&f.translate(x)).unwrap();
        prop_assert!(wrapped.max_abs() <= 1e-12);
    }

    /// Modulations compose additively; swapping a translation past a
    /// modulation costs exactly a unit phase.
    #[test]
    fn modulation_commutes_up_to_phase(
        f in signal_strategy(12, 2),
        x in 0i64..12,
        m in 0i64..12,
    ) {
        let mm = f.modulate(m).modulate(-m);
        prop_assert!(mm.sub(&f).unwrap().max_abs() <= 1e-12);

        let tm = f.translate(x).modulate(m);
        let mt = f.modulate(m).translate(x);
        // translating after modulating costs e^(-2 pi i m x / L)
        let phase = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * (m * x) as f64 / 12.0);
        prop_assert!(tm.scale(phase).sub(&mt).unwrap().max_abs() <= 1e-12);
    }

    /// Block norms scale absolutely homogeneously and satisfy the
    /// triangle inequality.
    #[test]
    fn amalgam_norm_is_a_norm(
        fs in any::<u64>(),
        gs in any::<u64>(),
        re in -3.0f64..3.0,
        im in -3.0f64..3.0,
        pi in 0usize..4,
        qi in 0usize..4,
        s in 0.0f64..2.0,
    ) {
        let len = 12;
        let exps = [
            Exponent::Finite(1.0),
            Exponent::Finite(1.5),
            Exponent::Finite(2.0),
            Exponent::Infinite,
        ];
        let prm = AmalgamParams::new(exps[pi], exps[qi], 3, Weight::polynomial(len, s).unwrap());
        let f = random_signal(len, 2, fs);
        let g = random_signal(len, 2, gs);
        let c = Complex64::new(re, im);

        let nf = amalgam_norm(&f, &prm).unwrap();
        let scaled = amalgam_norm(&f.scale(c), &prm).unwrap();
        prop_assert!((scaled - c.norm() * nf).abs() <= 1e-9 * (1.0 + nf));

        let ng = amalgam_norm(&g, &prm).unwrap();
        let nsum = amalgam_norm(&f.add(&g).unwrap(), &prm).unwrap();
        prop_assert!(nsum <= nf + ng + 1e-9);
    }

    /// Exponent text forms round-trip through parsing.
    #[test]
    fn exponent_parse_round_trips(p in 1.0f64..64.0) {
        let e = Exponent::new(p).unwrap();
        let back = Exponent::parse(&format!("{p}")).unwrap();
        prop_assert_eq!(e, back);
        prop_assert_eq!(Exponent::parse("inf").unwrap(), Exponent::Infinite);
        // conjugation is an involution
        let twice = match (e, e.conjugate().conjugate()) {
            (Exponent::Finite(x), Exponent::Finite(y)) => (x - y).abs() <= 1e-12,
            (a, b) => a == b,
        };
        prop_assert!(twice);
    }
}

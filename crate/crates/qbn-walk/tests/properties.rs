//! Randomized property tests: algebraic invariants that should hold for
//! every vertex, weight, state, and time, not just the seeded panels in
//! the unit and acceptance suites.

use num_complex::Complex64;
use proptest::prelude::*;

use qbn_walk::evolution::Propagator;
use qbn_walk::state::State;
use qbn_walk::vertex::{level_mask, Vertex};
use qbn_walk::weight::{Weight, WeightSpec};

const LEVEL: usize = 5;

fn arb_vertex() -> impl Strategy<Value = Vertex> {
    (0u64..=level_mask(LEVEL)).prop_map(Vertex::from_bits)
}

fn arb_state() -> impl Strategy<Value = State> {
    // a handful of (vertex, amplitude) pairs, normalized
    prop::collection::btree_map(
        0u64..=level_mask(LEVEL),
        (-1.0f64..1.0, -1.0f64..1.0),
        1..8,
    )
    .prop_filter_map("needs nonzero norm", |m| {
        let s = State::from_amplitudes(
            m.into_iter()
                .map(|(bits, (re, im))| (Vertex::from_bits(bits), Complex64::new(re, im))),
        )
        .unwrap();
        s.normalized().ok()
    })
}

fn arb_weight() -> impl Strategy<Value = Weight> {
    prop_oneof![
        (0.05f64..0.95, 0.1f64..2.0)
            .prop_map(|(ratio, scale)| Weight::new(WeightSpec::Geometric { ratio, scale })
                .unwrap()),
        (1.1f64..4.0, 0.1f64..2.0)
            .prop_map(|(exponent, scale)| Weight::new(WeightSpec::PowerLaw { exponent, scale })
                .unwrap()),
        prop::collection::vec(0.01f64..1.0, 1..=LEVEL + 1)
            .prop_map(|v| Weight::new(WeightSpec::Explicit(v)).unwrap()),
    ]
}

proptest! {
    /// Symmetric difference makes the vertex set an abelian group of
    /// exponent two.
    #[test]
    fn symdiff_group_laws(a in arb_vertex(), b in arb_vertex(), c in arb_vertex()) {
        prop_assert_eq!(a.symdiff(b), b.symdiff(a));
        prop_assert_eq!(a.symdiff(b).symdiff(c), a.symdiff(b.symdiff(c)));
        prop_assert_eq!(a.symdiff(Vertex::EMPTY), a);
        prop_assert_eq!(a.symdiff(a), Vertex::EMPTY);
    }

    /// Vertex display and parse are inverse.
    #[test]
    fn vertex_display_round_trip(v in arb_vertex()) {
        prop_assert_eq!(v.to_string().parse::<Vertex>().unwrap(), v);
    }

    /// Evolution preserves the norm and composes additively in time.
    #[test]
    fn evolution_is_a_unitary_group(
        w in arb_weight(),
        s in arb_state(),
        t1 in -4.0f64..4.0,
        t2 in -4.0f64..4.0,
    ) {
        let level = w.clamp_level(LEVEL);
        // explicit weights may clamp below LEVEL; restrict the state
        let restricted =
            State::from_amplitudes(s.iter().filter(|(v, _)| v.fits_level(level))).unwrap();
        prop_assume!(!restricted.is_zero());
        let s = restricted.normalized().unwrap();
        let u1 = Propagator::new(&w, level, t1).unwrap();
        let u2 = Propagator::new(&w, level, t2).unwrap();
        let u12 = Propagator::new(&w, level, t1 + t2).unwrap();

        let once = u1.evolve(&s).unwrap();
        prop_assert!((once.norm() - 1.0).abs() < 1e-12);

        let stepped = u2.evolve(&once).unwrap();
        let direct = u12.evolve(&s).unwrap();
        prop_assert!(stepped.sub(&direct).norm() < 1e-12);
    }

    /// Reversed evolution undoes the walk exactly.
    #[test]
    fn evolution_inverts(w in arb_weight(), s in arb_state(), t in -4.0f64..4.0) {
        let level = w.clamp_level(LEVEL);
        let restricted =
            State::from_amplitudes(s.iter().filter(|(v, _)| v.fits_level(level))).unwrap();
        prop_assume!(!restricted.is_zero());
        let s = restricted.normalized().unwrap();
        let there = Propagator::new(&w, level, t).unwrap().evolve(&s).unwrap();
        let back = Propagator::new(&w, level, -t).unwrap().evolve(&there).unwrap();
        prop_assert!(back.sub(&s).norm() < 1e-12);
    }

    /// The closed-form matrix element agrees with applying the propagator
    /// to a basis vector.
    #[test]
    fn basis_amplitude_matches_evolution(
        w in arb_weight(),
        rho in arb_vertex(),
        sigma in arb_vertex(),
        t in -4.0f64..4.0,
    ) {
        let level = w.clamp_level(LEVEL);
        prop_assume!(rho.fits_level(level) && sigma.fits_level(level));
        let u = Propagator::new(&w, level, t).unwrap();
        let evolved = u.evolve(&State::basis(sigma)).unwrap();
        let direct = u.basis_amplitude(rho, sigma).unwrap();
        prop_assert!((evolved.amplitude(rho) - direct).norm() < 1e-13);
    }

    /// Tail identity: total = partial level sum + tail, for every level.
    #[test]
    fn weight_tail_is_consistent(w in arb_weight(), n in 0usize..=LEVEL) {
        let n = w.clamp_level(n);
        let partial = w.level_sum(n);
        prop_assert!((partial + w.tail(n) - w.total()).abs() < 1e-12 * w.total().max(1.0));
    }

    /// Parity splits every state into orthogonal halves that sum back.
    #[test]
    fn parity_projections_decompose(s in arb_state()) {
        use qbn_walk::state::Sector;
        let even = s.project_parity(Sector::Even);
        let odd = s.project_parity(Sector::Odd);
        prop_assert!(even.add(&odd).sub(&s).norm() < 1e-14);
        prop_assert!(even.inner(&odd).norm() < 1e-14);
        prop_assert!(
            (even.norm_sqr() + odd.norm_sqr() - s.norm_sqr()).abs() < 1e-12
        );
    }
}

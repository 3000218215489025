use std::f64::consts::PI;

use biphoton_core::fisher::{outcome_distribution, Outcome};
use biphoton_core::fock::enumerate_basis;
use biphoton_core::{
    indistinguishability_unitary, output_state, output_state_closed_form, phase_mode_rotation,
    PairCount, ParamPoint,
};

fn grid() -> Vec<ParamPoint> {
    let mut points = Vec::new();
    for a in 0..9 {
        let i = 0.05 + 0.9 * f64::from(a) / 8.0;
        for b in 0..15 {
            let phi = 0.1 + 2.9 * f64::from(b) / 14.0;
            points.push(ParamPoint::new(i, phi).unwrap());
        }
    }
    points
}

#[test]
fn constant_sign_relation_to_closed_form() {
    let one = PairCount::new(1).unwrap();
    let basis = enumerate_basis(4, 2).unwrap();
    // Fix each basis ket's sign from the first grid point where it is not small.
    let mut signs: Vec<Option<f64>> = vec![None; basis.len()];
    for p in grid() {
        let sim = output_state(one, p).unwrap();
        let closed = output_state_closed_form(p).unwrap();
        for (k, occ) in basis.iter().enumerate() {
            let (a, b) = (sim.amplitude(occ), closed.amplitude(occ));
            assert!(a.im.abs() < 1e-15 && b.im.abs() < 1e-15);
            if b.re.abs() > 1e-3 && signs[k].is_none() {
                signs[k] = Some((a.re / b.re).signum());
            }
            let d = signs[k].unwrap_or(1.0);
            assert!((a - b * d).norm() <= 1e-12, "{occ} at {p:?}: {a} vs {b}");
        }
    }
    // With these conventions the relation is a global sign flip.
    for (k, s) in signs.iter().enumerate() {
        if let Some(s) = s {
            assert_eq!(*s, -1.0, "{}", basis[k]);
        }
    }
}

#[test]
fn squared_amplitudes_match_outcome_model() {
    let one = PairCount::new(1).unwrap();
    for p in grid() {
        let state = output_state(one, p).unwrap();
        let model = outcome_distribution(p);
        for o in Outcome::ALL {
            let sq = state.amplitude(&o.occupation()).norm_sqr();
            assert!((sq - model.probability(o)).abs() <= 1e-12, "{o} at {p:?}");
        }
    }
}

#[test]
fn output_states_are_normalized() {
    for n in 1..=3 {
        let pairs = PairCount::new(n).unwrap();
        for p in grid() {
            let state = output_state(pairs, p).unwrap();
            assert!((state.norm_sqr() - 1.0).abs() <= 1e-12, "n={n} {p:?}");
            assert_eq!(state.photon_number(), Some(2 * n));
        }
    }
}

#[test]
fn indistinguishability_encoding_is_unitary() {
    for k in 0..=100 {
        let u = indistinguishability_unitary(f64::from(k) / 100.0).unwrap();
        assert!(u.deviation_from_unitary() <= 1e-15, "k={k}");
    }
}

#[test]
fn phase_rotations_form_a_group() {
    let angles = [0.0, 0.3, 1.1, PI / 2.0, 2.5, PI];
    for &a in &angles {
        for &b in &angles {
            let composed = phase_mode_rotation(a)
                .after(&phase_mode_rotation(b))
                .unwrap();
            let direct = phase_mode_rotation(a + b);
            let diff = (composed.matrix() - direct.matrix()).camax();
            assert!(diff <= 1e-12, "{a} + {b}: {diff}");
        }
    }
}

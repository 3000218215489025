use biphoton_core::fisher::{
    cfim, qfi_from_generator, qfim_closed_form, qfim_pure_numeric, Derivative,
};
use biphoton_core::{output_state, PairCount, ParamPoint};

fn point(i: f64, phi: f64) -> ParamPoint {
    ParamPoint::new(i, phi).unwrap()
}

fn interior_grid() -> Vec<ParamPoint> {
    let mut out = Vec::new();
    for a in 1..=9 {
        for b in 1..=15 {
            out.push(point(f64::from(a) / 10.0, 0.2 * f64::from(b)));
        }
    }
    out
}

#[test]
fn classical_matches_quantum_on_grid() {
    for p in interior_grid() {
        let q = qfim_closed_form(p.indistinguishability())
            .unwrap()
            .as_finite()
            .unwrap();
        let analytic = cfim(p, Derivative::Analytic).unwrap().as_finite().unwrap();
        let numeric = cfim(p, Derivative::Numeric { step: 1e-5 })
            .unwrap()
            .as_finite()
            .unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let scale = q[i][j].abs().max(1.0);
                assert!(
                    (analytic[i][j] - q[i][j]).abs() <= 1e-12 * scale,
                    "{p:?} [{i}][{j}]"
                );
                assert!(
                    (numeric[i][j] - q[i][j]).abs() <= 1e-6 * scale,
                    "{p:?} [{i}][{j}]"
                );
            }
        }
    }
}

#[test]
fn numeric_qfim_is_phase_independent() {
    let one = PairCount::new(1).unwrap();
    for a in 1..=9 {
        let i = f64::from(a) / 10.0;
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for b in 1..=15 {
            let m = qfim_pure_numeric(|p| output_state(one, p), point(i, 0.2 * f64::from(b)), 1e-5)
                .unwrap();
            assert!(m.is_symmetric(1e-10) && m.is_positive_semidefinite(1e-8));
            let f = m.as_finite().unwrap();
            for k in 0..2 {
                lo[k] = lo[k].min(f[k][k]);
                hi[k] = hi[k].max(f[k][k]);
            }
        }
        assert!(hi[0] - lo[0] <= 1e-6, "φφ spread at 𝓘={i}");
        assert!(hi[1] - lo[1] <= 1e-6 * hi[1], "𝓘𝓘 spread at 𝓘={i}");
    }
}

#[test]
fn generator_variance_matches_phase_entry() {
    let one = PairCount::new(1).unwrap();
    for &(i, phi) in &[(0.2, 0.5), (0.5, 1.7), (0.8, 2.6)] {
        let p = point(i, phi);
        let from_generator = qfi_from_generator(&output_state(one, p).unwrap()).unwrap();
        let numeric = qfim_pure_numeric(|q| output_state(one, q), p, 1e-5)
            .unwrap()
            .phase_phase()
            .finite()
            .unwrap();
        assert!(
            (from_generator - numeric).abs() <= 1e-6,
            "{from_generator} vs {numeric}"
        );
    }
}

#[test]
fn phase_information_grows_with_slope_two() {
    let phase = |i: f64| qfim_closed_form(i).unwrap().phase_phase().finite().unwrap();
    let h = 1e-3;
    let mut previous = phase(0.0);
    for k in 1..=100 {
        let i = f64::from(k) / 100.0;
        let current = phase(i);
        assert!(current > previous);
        previous = current;
        if k < 100 {
            let slope = (phase(i + h) - phase(i - h)) / (2.0 * h);
            assert!((slope - 2.0).abs() < 1e-9);
        }
    }
}

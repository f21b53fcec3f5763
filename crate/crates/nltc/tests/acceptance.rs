//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured figure once its pinned tolerance holds.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! figures; the suite is deterministic under the seeds fixed here.

use nalgebra::Matrix4;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use nltc::entanglement::{
    concurrence, predicted_concurrence_half, predicted_concurrence_quarter, predicted_purity,
    pure_concurrence, purity, RevivalFraction,
};
use nltc::evolution::{approx_state, evolve_oracle, BlockPropagator};
use nltc::hilbert::{
    build_initial, default_n_max, haar_random_two_qubit, partial_trace_atoms,
    partial_trace_oscillator, BellAmplitudes, CoherentSpec, JointState,
};
use nltc::model::{ion_trap_optimum, x0, IntensityModel, ModelKind};
use nltc::observables::{expect_sz, husimi, GridSpec};
use nltc::protocols::{
    apply_gate_to_atoms, bell_measurement, bell_target, gate_g_theta, gate_sz_rotation,
    generate_ghz, generate_w, k_operator, l_operator, m_operator, w_gate_t,
    w_idealized_fidelity, w_separable_intermediate, ThetaAngle,
};

fn sample_rng(master: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(master.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn random_state(rng: &mut ChaCha8Rng, n_max: usize) -> JointState {
    let mut st = JointState::zero(n_max, 1).unwrap();
    for c in st.amp.iter_mut() {
        *c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    st.normalize();
    st
}

/// 1. Exact block propagation against the dense-exponential oracle:
/// componentwise agreement within 1e-10 for 50 random states and 10 random
/// times per model.
#[test]
fn criterion_01_oracle_equivalence() {
    let n_max = 24;
    let models = [
        IntensityModel::tavis_cummings(1.0),
        IntensityModel::buck_sukumar(1.0),
        IntensityModel::ion_trap(1.0, 0.170582),
    ];
    let mut worst: f64 = 0.0;
    for (mi, model) in models.iter().enumerate() {
        let spectral = model.tabulate_spectrum(n_max).unwrap();
        let mut rng = sample_rng(0xACCE, mi as u64);
        for _ in 0..50 {
            let st = random_state(&mut rng, n_max);
            for _ in 0..10 {
                let t: f64 = rng.random_range(0.0..3.0);
                let mut blocks = st.clone();
                BlockPropagator::new(&spectral, t).apply(&mut blocks).unwrap();
                let dense = evolve_oracle(&st, model, t).unwrap();
                let diff = blocks
                    .amp
                    .iter()
                    .zip(&dense.amp)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                worst = worst.max(diff);
            }
        }
    }
    assert!(worst < 1e-10, "max componentwise deviation {worst:.2e}");
    println!("ACCEPTANCE 1 PASS: oracle equivalence, max deviation {worst:.2e} < 1e-10");
}

/// 2. Constants of motion: ⟨I⟩ and ⟨S²⟩ drift below 1e-8 over [0, 2 t_r]
/// for BS and TC at N = 85.
#[test]
fn criterion_02_constants_of_motion() {
    let n_mean = 85.0;
    let n_max = default_n_max(n_mean);
    let mut worst: f64 = 0.0;
    for model in [IntensityModel::buck_sukumar(1.0), IntensityModel::tavis_cummings(1.0)] {
        let spec = model.linearize(n_mean).unwrap();
        let spectral = model.tabulate_spectrum(n_max).unwrap();
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(n_mean.sqrt()), n_max)
            .unwrap();
        let (i0, s0) = (st.excitation_expectation(), st.s_squared_expectation());
        for k in 0..=200 {
            let t = 2.0 * spec.t_revival * k as f64 / 200.0;
            let mut out = st.clone();
            BlockPropagator::new(&spectral, t).apply(&mut out).unwrap();
            worst = worst.max((out.excitation_expectation() - i0).abs());
            worst = worst.max((out.s_squared_expectation() - s0).abs());
        }
    }
    assert!(worst < 1e-8, "constants of motion drifted by {worst:.2e}");
    println!("ACCEPTANCE 2 PASS: <I> and <S^2> drift {worst:.2e} < 1e-8 over [0, 2t_r]");
}

/// 3. Ion-trap optimum: recomputed x₀, the eigenfrequency at the optimum,
/// and the η → N mapping of the reference parameter pairs.
#[test]
fn criterion_03_ion_trap_optimum() {
    let x0v = x0();
    assert!((x0v - 9.95161).abs() < 1e-5, "x0 = {x0v}");
    let n = ion_trap_optimum(0.170582).unwrap();
    assert!((n - 85.0).abs() <= 1.0, "eta 0.170582 -> N = {n}");
    let n2000 = ion_trap_optimum(0.0352653).unwrap();
    assert!((n2000 - 2000.0).abs() <= 1.0, "eta 0.0352653 -> N = {n2000}");
    let model = IntensityModel::ion_trap_at(1.0, 85.0);
    let w = model.eigenfrequency(85).unwrap();
    assert!((w - 0.558924).abs() < 1e-5, "omega_N = {w}");
    println!(
        "ACCEPTANCE 3 PASS: x0 = {x0v:.6}, omega_N = {w:.6}, eta->N pairs ({n:.2}, {n2000:.1})"
    );
}

/// 4. Revival quality: BS peak |⟨S_z⟩| within 5% of t_r at least 0.9 and
/// strictly above the TC peak in the same window.
#[test]
fn criterion_04_revival_quality() {
    let n_mean = 85.0;
    let n_max = default_n_max(n_mean);
    let peak = |model: &IntensityModel| {
        let spec = model.linearize(n_mean).unwrap();
        let spectral = model.tabulate_spectrum(n_max).unwrap();
        let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(n_mean.sqrt()), n_max)
            .unwrap();
        (0..=800)
            .into_par_iter()
            .map(|k| {
                let t = spec.t_revival * (0.95 + 0.1 * k as f64 / 800.0);
                let mut out = st.clone();
                BlockPropagator::new(&spectral, t).apply(&mut out).unwrap();
                expect_sz(&out).abs()
            })
            .reduce(|| 0.0, f64::max)
    };
    let bs = peak(&IntensityModel::buck_sukumar(1.0));
    let tc = peak(&IntensityModel::tavis_cummings(1.0));
    assert!(bs >= 0.9, "BS revival peak {bs}");
    assert!(tc < bs, "TC peak {tc} not smaller than BS peak {bs}");
    println!("ACCEPTANCE 4 PASS: revival peaks BS {bs:.4} >= 0.9 > TC {tc:.4}");
}

fn mean_fidelity_floor(model: &IntensityModel, n_mean: f64, t_max_frac: f64, samples: u64, grid: usize) -> f64 {
    let spec = model.linearize(n_mean).unwrap();
    let n_max = default_n_max(n_mean);
    let spectral = model.tabulate_spectrum(n_max).unwrap();
    let alpha = n_mean.sqrt();
    let ts: Vec<f64> =
        (0..=grid).map(|i| 1e-9 + t_max_frac * spec.t_revival * i as f64 / grid as f64).collect();
    let props: Vec<BlockPropagator> =
        ts.iter().map(|&t| BlockPropagator::new(&spectral, t)).collect();
    let sums: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|k| {
            let atoms = haar_random_two_qubit(&mut sample_rng(0xF1DE, k));
            let st0 = build_initial(&atoms, &CoherentSpec::real(alpha), n_max).unwrap();
            props
                .iter()
                .zip(&ts)
                .map(|(p, &t)| {
                    let mut ex = st0.clone();
                    p.apply(&mut ex).unwrap();
                    let ap = approx_state(&atoms, alpha, &spec, t).materialize(n_max).unwrap();
                    ap.inner(&ex).unwrap().norm_sqr() / ap.norm_sq()
                })
                .collect::<Vec<f64>>()
        })
        .reduce(
            || vec![0.0; ts.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    sums.iter().map(|s| s / samples as f64).fold(f64::INFINITY, f64::min)
}

/// 5. Approximate-state fidelity, Haar-averaged over 200 samples: above 0.9
/// on [0, t_r] for the ion trap at N = 85 and above 0.98 on [0, 2 t_r] for
/// BS at N = 85.
#[test]
fn criterion_05_fidelity() {
    let ion = mean_fidelity_floor(&IntensityModel::ion_trap_at(1.0, 85.0), 85.0, 1.0, 200, 120);
    assert!(ion > 0.9, "ion mean fidelity floor {ion}");
    let bs = mean_fidelity_floor(&IntensityModel::buck_sukumar(1.0), 85.0, 2.0, 200, 160);
    assert!(bs > 0.98, "BS mean fidelity floor {bs}");
    println!("ACCEPTANCE 5 PASS: mean fidelity floors ion {ion:.4} > 0.9, BS {bs:.4} > 0.98");
}

/// 6. Entanglement analytics at the fractional revivals, BS N = 85, 100 Haar
/// samples: ensemble-averaged concurrence and purity within 0.02 of the
/// closed forms at t_r/4, 3t_r/4, t_r/2, 3t_r/2, and the half-revival
/// prediction never exceeding the initial concurrence (exact inequality,
/// zero violations).
#[test]
fn criterion_06_entanglement_analytics() {
    let n_mean = 85.0;
    let model = IntensityModel::buck_sukumar(1.0);
    let spec = model.linearize(n_mean).unwrap();
    let n_max = default_n_max(n_mean);
    let spectral = model.tabulate_spectrum(n_max).unwrap();
    let alpha = n_mean.sqrt();
    let samples: Vec<BellAmplitudes> =
        (0..100).map(|k| haar_random_two_qubit(&mut sample_rng(0xE47A, k))).collect();

    let mut violations = 0usize;
    for atoms in &samples {
        if predicted_concurrence_half(atoms) > pure_concurrence(atoms) + 1e-14 {
            violations += 1;
        }
    }
    assert_eq!(violations, 0, "half-revival bound violated {violations} times");

    let cases = [
        (spec.t_revival / 4.0, RevivalFraction::Quarter),
        (3.0 * spec.t_revival / 4.0, RevivalFraction::Quarter),
        (spec.t_revival / 2.0, RevivalFraction::Half),
        (3.0 * spec.t_revival / 2.0, RevivalFraction::Half),
    ];
    let mut worst_c: f64 = 0.0;
    let mut worst_p: f64 = 0.0;
    for (t, which) in cases {
        let prop = BlockPropagator::new(&spectral, t);
        let numeric: Vec<(f64, f64)> = samples
            .par_iter()
            .map(|atoms| {
                let mut st = build_initial(atoms, &CoherentSpec::real(alpha), n_max).unwrap();
                prop.apply(&mut st).unwrap();
                let rho = partial_trace_atoms(&st);
                (concurrence(&rho).unwrap(), purity(&rho))
            })
            .collect();
        let purity_floor = numeric.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
        assert!(purity_floor > 0.5 - 0.02, "numeric purity dipped to {purity_floor}");
        let (mut cn, mut pn, mut cp, mut pp) = (0.0, 0.0, 0.0, 0.0);
        for (atoms, (c, p)) in samples.iter().zip(&numeric) {
            cn += c;
            pn += p;
            cp += match which {
                RevivalFraction::Quarter => predicted_concurrence_quarter(atoms),
                RevivalFraction::Half => predicted_concurrence_half(atoms),
            };
            pp += predicted_purity(atoms, which);
        }
        let n = samples.len() as f64;
        worst_c = worst_c.max((cn / n - cp / n).abs());
        worst_p = worst_p.max((pn / n - pp / n).abs());
    }
    assert!(worst_c < 0.02, "mean concurrence deviates by {worst_c}");
    assert!(worst_p < 0.02, "mean purity deviates by {worst_p}");
    println!(
        "ACCEPTANCE 6 PASS: entanglement analytics, mean |dC| {worst_c:.4}, |dP| {worst_p:.4} < 0.02, 0 inequality violations"
    );
}

/// 7. Operator algebra at twenty gate angles, all within 1e-12.
#[test]
fn criterion_07_operator_algebra() {
    let id = Matrix4::<C64>::identity();
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let theta = ThetaAngle::idealized(0.05 + 0.32 * k as f64);
        let m = m_operator();
        let l = l_operator();
        let kk = k_operator(theta);
        let g = gate_g_theta(theta);
        let t = w_gate_t();
        worst = worst.max((m * m + l * l - id).norm());
        worst = worst.max(((m + l) * (m + l).adjoint() - id).norm());
        worst = worst.max((kk - kk.adjoint()).norm());
        worst = worst.max((kk * kk - l * l).norm());
        worst = worst.max((g * g.adjoint() - id).norm());
        worst = worst.max((t * t.adjoint() - id).norm());
    }
    let rot = gate_sz_rotation(-std::f64::consts::FRAC_PI_2);
    let out = apply_gate_to_atoms(&rot, &BellAmplitudes::phi_plus());
    worst = worst.max((out.d_minus - C64::I).norm());
    worst = worst.max(out.d_plus.norm() + out.c_plus.norm() + out.c_minus.norm());
    assert!(worst < 1e-12, "operator algebra defect {worst:.2e}");
    println!("ACCEPTANCE 7 PASS: operator algebra defects {worst:.2e} < 1e-12");
}

/// 8. GHZ generation fidelity above 0.99 at BS, N = 85.
#[test]
fn criterion_08_ghz() {
    let model = IntensityModel::buck_sukumar(1.0);
    let spec = model.linearize(85.0).unwrap();
    let ghz = generate_ghz(85.0_f64.sqrt(), &model, &spec).unwrap();
    assert!(ghz.fidelity > 0.99, "GHZ fidelity {}", ghz.fidelity);
    println!("ACCEPTANCE 8 PASS: GHZ fidelity {:.4} > 0.99", ghz.fidelity);
}

/// 9. W state: an admissible ion-trap N from the scan with θ residual below
/// 0.01 rad, full-simulation fidelity above 0.95, and exact separability of
/// the pointer-basis intermediate.
#[test]
fn criterion_09_w_state() {
    let psi2 = w_separable_intermediate();
    let c = pure_concurrence(&psi2);
    assert!(c < 1e-10, "psi_2 concurrence {c:.2e}");
    let ideal = w_idealized_fidelity(ThetaAngle::idealized(std::f64::consts::FRAC_PI_4));
    assert!((ideal - 1.0).abs() < 1e-12, "idealized W fidelity {ideal}");
    let w = generate_w(1.0, ModelKind::IonTrap, (500, 3000)).unwrap();
    assert!(w.theta_residual < 0.01, "theta residual {}", w.theta_residual);
    assert!(w.fidelity > 0.95, "W fidelity {}", w.fidelity);
    println!(
        "ACCEPTANCE 9 PASS: W at N = {} (residual {:.5}), fidelity {:.4} > 0.95, idealized {:.12}, psi2 concurrence {c:.1e}",
        w.n_mean, w.theta_residual, w.fidelity, ideal
    );
}

/// 10. Bell measurement over 100 Haar samples at BS, N = 85: the four
/// outcome probabilities match (|c₋|², |d₋|², |d₊|², |c₊|²) within 0.02 and
/// every outcome with probability above 0.01 postselects its Bell target
/// with fidelity above 0.99.
#[test]
fn criterion_10_bell_measurement() {
    let model = IntensityModel::buck_sukumar(1.0);
    let n_mean = 85.0;
    let spec = model.linearize(n_mean).unwrap();
    let alpha = n_mean.sqrt();
    let results: Vec<(f64, f64, f64)> = (0..100u64)
        .into_par_iter()
        .map(|k| {
            let atoms = haar_random_two_qubit(&mut sample_rng(0xBE11, k));
            let expect = [
                atoms.c_minus.norm_sqr(),
                atoms.d_minus.norm_sqr(),
                atoms.d_plus.norm_sqr(),
                atoms.c_plus.norm_sqr(),
            ];
            let outs = bell_measurement(&atoms, alpha, alpha, &model, &spec).unwrap();
            let mut worst_p: f64 = 0.0;
            let mut worst_f: f64 = 1.0;
            let mut worst_c: f64 = 1.0;
            for (o, e) in outs.iter().zip(expect) {
                worst_p = worst_p.max((o.probability - e).abs());
                if o.probability > 0.01 {
                    let target = bell_target(o.label).unwrap();
                    let got = o.postselected_bell.as_ref().unwrap();
                    let ov: C64 = got
                        .as_array()
                        .iter()
                        .zip(target.as_array())
                        .map(|(a, b)| a.conj() * b)
                        .sum();
                    worst_f = worst_f.min(ov.norm_sqr());
                    worst_c = worst_c.min(pure_concurrence(got));
                }
            }
            (worst_p, worst_f, worst_c)
        })
        .collect();
    let worst_p = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let worst_f = results.iter().map(|r| r.1).fold(1.0, f64::min);
    let worst_c = results.iter().map(|r| r.2).fold(1.0, f64::min);
    assert!(worst_p < 0.02, "outcome probability deviation {worst_p}");
    assert!(worst_f > 0.99, "postselected fidelity floor {worst_f}");
    assert!(worst_c > 0.98, "postselected concurrence floor {worst_c}");
    println!(
        "ACCEPTANCE 10 PASS: Bell measurement, probability deviation {worst_p:.4} < 0.02, postselection fidelity floor {worst_f:.4} > 0.99, concurrence floor {worst_c:.4} > 0.98"
    );
}

/// 11. Husimi function at BS, N = 85: three peaks near {α, iα, −iα} at
/// t_r/4, peaks only near {α, −α} at t_r/2, Riemann normalization within 2%.
#[test]
fn criterion_11_husimi() {
    let model = IntensityModel::buck_sukumar(1.0);
    let n_mean = 85.0;
    let spec = model.linearize(n_mean).unwrap();
    let n_max = default_n_max(n_mean);
    let alpha = n_mean.sqrt();
    let st = build_initial(&BellAmplitudes::ee(), &CoherentSpec::real(alpha), n_max).unwrap();
    let spectral = model.tabulate_spectrum(n_max).unwrap();
    let threshold = 0.1 / std::f64::consts::PI;

    let peaks_at = |t: f64| {
        let mut out = st.clone();
        BlockPropagator::new(&spectral, t).apply(&mut out).unwrap();
        let rho = partial_trace_oscillator(&out);
        let grid = husimi(&rho, &GridSpec::centered(alpha)).unwrap();
        (grid.riemann_norm(), grid.local_maxima(threshold))
    };

    let (norm_q, peaks_q) = peaks_at(spec.t_revival / 4.0);
    assert!((norm_q - 1.0).abs() < 0.02, "Riemann norm {norm_q}");
    assert_eq!(peaks_q.len(), 3, "expected exactly 3 peaks, got {:?}", peaks_q);
    let expected_quarter =
        [C64::new(alpha, 0.0), C64::new(0.0, alpha), C64::new(0.0, -alpha)];
    for target in expected_quarter {
        assert!(
            peaks_q.iter().any(|(b, _)| (b - target).norm() < 1.0),
            "no peak within 1 of {target}"
        );
    }

    let (norm_h, peaks_h) = peaks_at(spec.t_revival / 2.0);
    assert!((norm_h - 1.0).abs() < 0.02, "Riemann norm {norm_h}");
    let expected_half = [C64::new(alpha, 0.0), C64::new(-alpha, 0.0)];
    assert!(!peaks_h.is_empty());
    for (b, _) in &peaks_h {
        assert!(
            expected_half.iter().any(|t| (b - t).norm() < 1.0),
            "stray peak at {b}"
        );
    }
    println!(
        "ACCEPTANCE 11 PASS: Husimi peaks {} at t_r/4 near (a, ia, -ia), {} at t_r/2 near (a, -a); norms {:.4}/{:.4}",
        peaks_q.len(),
        peaks_h.len(),
        norm_q,
        norm_h
    );
}

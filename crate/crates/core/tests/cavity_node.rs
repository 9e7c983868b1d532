mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use common::*;
use rand::Rng;
use teleport_core::cavity::{
    atomic_readout, cavity_reflection, conditional_loss_kraus, dephase_window, idle_decoherence, prepare_state,
    raman_rotation, reflection_amplitudes, rotation_matrix, DecoherenceLaw, InputQubit, NodeParams, RotationAxis,
};
use teleport_core::photonics::fock::{beam_splitter_matrix, phase_matrix};
use teleport_core::photonics::{
    coherent_pulse_state, PhotonSource, PolBasis, Polarization, PolarizationModePair, PulseConfig,
};
use teleport_core::protocol::ProtocolConfig;
use teleport_core::quantum::{apply_kraus, apply_local, fidelity_pure, partial_trace, tensor_product, DensityState, HilbertLayout};
use teleport_core::{CMatrix, CVector, SimError, C64};

fn single_photon(pol: Polarization) -> (DensityState, PolarizationModePair) {
    coherent_pulse_state(&PulseConfig {
        source: PhotonSource::SinglePhoton,
        fock_cutoff: 1,
        polarization: pol,
        ..PulseConfig::default()
    })
    .unwrap()
}

fn atom(v: &[C64]) -> DensityState {
    DensityState::from_pure(HilbertLayout::qubit("atom"), &ket(v)).unwrap()
}

/// Probability that the reflected pulse still holds its photon.
fn photon_survival(state: &DensityState) -> f64 {
    // |0,0⟩ is the only vacuum index of the pair
    let photons = partial_trace(state, &["photon_0", "photon_1"]).unwrap();
    1.0 - photons.matrix()[(0, 0)].re
}

#[test]
fn lossless_cavity_gives_pi_conditional_phase() {
    let a = reflection_amplitudes(&NodeParams::ideal()).unwrap();
    assert!((a.r_coupled - c(1.0, 0.0)).norm() < 1e-15);
    assert!((a.r_uncoupled - c(-1.0, 0.0)).norm() < 1e-15);
}

/// With every photon coupled into the cavity the coupled amplitude reduces
/// to `(2C − 1)/(2C + 1)`.
#[test]
fn critically_coupled_amplitude_closed_form() {
    let mut node = NodeParams::table_bob();
    node.input_coupling_fraction = 1.0;
    let coop = 7.6f64.powi(2) / (2.0 * 2.5 * 3.0);
    assert!((node.cooperativity() - coop).abs() < 1e-12);
    assert!((node.cooperativity() - 3.9).abs() < 0.05);
    assert!((NodeParams::table_alice().cooperativity() - 3.4).abs() < 0.05);
    let a = reflection_amplitudes(&node).unwrap();
    assert!((a.r_coupled.re - (2.0 * coop - 1.0) / (2.0 * coop + 1.0)).abs() < 1e-12);
    assert!((a.r_uncoupled.re + 1.0).abs() < 1e-15);

    // at exactly C = 3.9
    node.g_mhz = (3.9f64 * 2.0 * 2.5 * 3.0).sqrt();
    let a = reflection_amplitudes(&node).unwrap();
    assert!((a.r_coupled.re - 0.7727).abs() < 1e-4);
}

#[test]
fn amplitudes_conserve_flux_and_are_monotone() {
    let mut r = rng(21);
    for _ in 0..50 {
        let node = NodeParams {
            input_coupling_fraction: r.random_range(0.05..=1.0),
            mode_matching: r.random_range(0.05..=1.0),
            g_mhz: r.random_range(0.1..20.0),
            ..NodeParams::table_alice()
        };
        let a = reflection_amplitudes(&node).unwrap();
        assert!(a.flux_error() < 1e-10);
        for amp in [a.r_coupled, a.r_uncoupled] {
            assert!((0.0..=1.0).contains(&amp.norm_sqr()));
        }
        let stronger = NodeParams {
            g_mhz: node.g_mhz * 1.1,
            ..node.clone()
        };
        let b = reflection_amplitudes(&stronger).unwrap();
        assert!(b.r_coupled.re >= a.r_coupled.re - 1e-15);
    }
}

/// Conditional reflection against an explicit model: for each atom state a
/// phase shift and a beam splitter onto a vacuum ancilla, which is then
/// traced out.
#[test]
fn conditional_kraus_matches_explicit_dilation() {
    let mut r = rng(22);
    let cutoff = 3;
    let d = cutoff + 1;
    for _ in 0..10 {
        let amps = [0, 1].map(|_| C64::from_polar(r.random_range(0.0..=1.0), r.random_range(-PI..PI)));
        let layout = HilbertLayout::new([("atom", 2), ("mode", d)]).unwrap();
        let rho = random_density(&mut r, layout);

        let mut dilation = CMatrix::zeros(2 * d * d, 2 * d * d);
        for (s, a) in amps.iter().enumerate() {
            let phase = phase_matrix(a.arg(), cutoff).kronecker(&CMatrix::identity(d, d));
            let block = beam_splitter_matrix(a.norm_sqr(), cutoff) * phase;
            dilation.view_mut((s * d * d, s * d * d), (d * d, d * d)).copy_from(&block);
        }
        let anc = DensityState::basis(HilbertLayout::single("anc", d).unwrap(), 0).unwrap();
        let joint = tensor_product(&[rho.clone(), anc]).unwrap();
        let evolved = apply_local(&joint, &["atom", "mode", "anc"], &dilation).unwrap();
        let oracle = partial_trace(&evolved, &["atom", "mode"]).unwrap();
        assert!((evolved.trace() - 1.0).abs() < 1e-12);

        let out = apply_kraus(&rho, &["atom", "mode"], &conditional_loss_kraus(amps, cutoff).unwrap()).unwrap();
        assert!(max_diff(out.matrix(), oracle.matrix()) < 1e-12);
    }
}

#[test]
fn conditional_kraus_rejects_gain() {
    assert!(matches!(
        conditional_loss_kraus([c(1.1, 0.0), c(0.5, 0.0)], 2),
        Err(SimError::OutOfRange { .. })
    ));
}

#[test]
fn ideal_reflection_examples() {
    let node = NodeParams::ideal();
    let h = c(FRAC_1_SQRT_2, 0.0);
    let (a_photon, pair) = single_photon(Polarization::A);

    let down = tensor_product(&[atom(&[c(0.0, 0.0), c(1.0, 0.0)]), a_photon.clone()]).unwrap();
    let out = cavity_reflection(&down, &node, &pair, "atom").unwrap();
    assert!(max_diff(out.matrix(), down.matrix()) < 1e-15);

    let plus = tensor_product(&[atom(&[h, h]), a_photon]).unwrap();
    let out = cavity_reflection(&plus, &node, &pair, "atom").unwrap();
    // (|↑z⟩|D⟩ + |↓z⟩|A⟩)/√2; |D⟩ = |0,1⟩ (index 1), |A⟩ = |1,0⟩ (index 2)
    let mut bell = CVector::zeros(8);
    bell[1] = h;
    bell[4 + 2] = h;
    assert!(max_diff(out.matrix(), &projector(&bell)) < 1e-15);
}

/// On the one-photon subspace the ideal reflection is the controlled swap
/// of |A⟩ and |D⟩ with the atom as control.
#[test]
fn ideal_reflection_is_controlled_polarization_flip() {
    let mut r = rng(23);
    let node = NodeParams::ideal();
    let pair = PolarizationModePair::new(1, PolBasis::AD);
    let layout = HilbertLayout::new([("atom", 2), ("photon_0", 2), ("photon_1", 2)]).unwrap();
    // |↓⟩⟨↓| ⊗ I + |↑⟩⟨↑| ⊗ (swap of |1,0⟩ and |0,1⟩, identity elsewhere)
    let mut u = CMatrix::identity(8, 8);
    u[(1, 1)] = c(0.0, 0.0);
    u[(2, 2)] = c(0.0, 0.0);
    u[(1, 2)] = c(1.0, 0.0);
    u[(2, 1)] = c(1.0, 0.0);
    for _ in 0..10 {
        let mut v = CVector::zeros(8);
        for s in 0..2 {
            for idx in [1, 2] {
                v[s * 4 + idx] = c(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
            }
        }
        let rho = DensityState::from_pure(layout.clone(), &v).unwrap();
        let out = cavity_reflection(&rho, &node, &pair, "atom").unwrap();
        let expect = &u * rho.matrix() * u.adjoint();
        assert!(max_diff(out.matrix(), &expect) < 1e-10);
    }
}

/// In the circular basis the ideal reflection is `(−1)^{n_R}` conditioned on
/// the atom, for every Fock level.
#[test]
fn ideal_reflection_in_circular_basis() {
    let mut r = rng(24);
    let cutoff = 3;
    let d = cutoff + 1;
    let pair = PolarizationModePair::new(cutoff, PolBasis::RL);
    let layout = HilbertLayout::new([("atom", 2), ("photon_0", d), ("photon_1", d)]).unwrap();
    let diag = CVector::from_iterator(
        2 * d * d,
        (0..2 * d * d).map(|i| {
            let (s, n_r) = (i / (d * d), (i % (d * d)) / d);
            if s == 0 && n_r % 2 == 1 { c(-1.0, 0.0) } else { c(1.0, 0.0) }
        }),
    );
    let u = CMatrix::from_diagonal(&diag);
    let rho = random_density(&mut r, layout);
    let out = cavity_reflection(&rho, &NodeParams::ideal(), &pair, "atom").unwrap();
    assert!(max_diff(out.matrix(), &(&u * rho.matrix() * u.adjoint())) < 1e-10);
}

#[test]
fn lossy_reflection_only_removes_trace() {
    let mut r = rng(25);
    let node = ProtocolConfig::default_operating_point().node_bob;
    let pair = PolarizationModePair::new(2, PolBasis::AD);
    let layout = HilbertLayout::new([("atom", 2), ("photon_0", 3), ("photon_1", 3)]).unwrap();
    let d = 3;
    for _ in 0..5 {
        // support on total photon number <= cutoff, where basis changes are exact
        let mut v = random_vector(&mut r, 2 * d * d);
        for i in 0..2 * d * d {
            let (na, nb) = ((i % (d * d)) / d, i % d);
            if na + nb > 2 {
                v[i] = c(0.0, 0.0);
            }
        }
        let rho = DensityState::from_pure(layout.clone(), &v).unwrap();
        let out = cavity_reflection(&rho, &node, &pair, "atom").unwrap();
        out.validate().unwrap();
        assert!((out.trace() - 1.0).abs() < 1e-12);
        assert!(photon_survival(&out) <= photon_survival(&rho) + 1e-12);
    }
}

#[test]
fn fitted_bob_node_keeps_sixty_percent_of_photons() {
    let node = ProtocolConfig::default_operating_point().node_bob;
    let h = c(FRAC_1_SQRT_2, 0.0);
    let (a_photon, pair) = single_photon(Polarization::A);
    let state = tensor_product(&[atom(&[h, h]), a_photon]).unwrap();
    let out = cavity_reflection(&state, &node, &pair, "atom").unwrap();
    let survival = photon_survival(&out);
    assert!((survival - 0.60).abs() < 0.02, "survival {survival}");
    let amps = reflection_amplitudes(&node).unwrap();
    assert!((survival - amps.operational_reflectivity()).abs() < 1e-12);
}

#[test]
fn cavity_reflection_checks_subsystems() {
    let (photon, pair) = single_photon(Polarization::A);
    let node = NodeParams::ideal();
    let s = tensor_product(&[atom(&[c(1.0, 0.0), c(0.0, 0.0)]), photon]).unwrap();
    assert!(cavity_reflection(&s, &node, &pair, "nobody").is_err());
    let big = PolarizationModePair::new(3, PolBasis::AD);
    assert!(cavity_reflection(&s, &node, &big, "atom").is_err());
}

#[test]
fn preparation_examples() {
    let perfect = NodeParams::ideal();
    for (label, q) in InputQubit::six_states() {
        let s = prepare_state(&q, &perfect, "a").unwrap();
        assert!((fidelity_pure(&s, &q.vector()).unwrap() - 1.0).abs() < 1e-14, "{label}");
    }

    let table = NodeParams::table_alice();
    let up = prepare_state(&InputQubit::up_z(), &table, "a").unwrap();
    assert!((up.matrix()[(0, 0)].re - 0.99).abs() < 1e-15);

    let down = prepare_state(&InputQubit::down_z(), &table, "a").unwrap();
    let p_down = down.matrix()[(1, 1)].re;
    assert!(p_down >= 0.96);
    // pump error and failed π pulse compose as independent events
    let oracle = 0.99 * 0.97 + 0.01 * 0.03;
    assert!((p_down - oracle).abs() < 1e-12);
}

#[test]
fn rotation_examples() {
    let h = FRAC_1_SQRT_2;
    let up = atom(&[c(1.0, 0.0), c(0.0, 0.0)]);
    let out = raman_rotation(&up, "atom", RotationAxis::Y, FRAC_PI_2).unwrap();
    assert!((fidelity_pure(&out, &ket(&[c(h, 0.0), c(h, 0.0)])).unwrap() - 1.0).abs() < 1e-15);
    let flipped = raman_rotation(&up, "atom", RotationAxis::X, PI).unwrap();
    assert!((flipped.matrix()[(1, 1)].re - 1.0).abs() < 1e-15);

    let ry = rotation_matrix(RotationAxis::Y, FRAC_PI_2);
    let printed = CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(-h, 0.0), c(h, 0.0), c(h, 0.0)]);
    assert!(max_diff(&ry, &printed) < 1e-15);
    let rx = rotation_matrix(RotationAxis::X, PI);
    let printed = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, -1.0), c(0.0, 0.0)]);
    assert!(max_diff(&rx, &printed) < 1e-15);

    let mut r = rng(26);
    for _ in 0..10 {
        let theta = r.random_range(-PI..PI);
        for axis in [RotationAxis::X, RotationAxis::Y, RotationAxis::Z] {
            let m = rotation_matrix(axis, theta);
            assert!(max_diff(&(m.adjoint() * &m), &CMatrix::identity(2, 2)) < 1e-14);
            let back = rotation_matrix(axis, -theta) * &m;
            assert!(max_diff(&back, &CMatrix::identity(2, 2)) < 1e-14);
        }
    }
    // z rotation by π is the phase gate up to a global phase
    let z = rotation_matrix(RotationAxis::Z, PI) * c(0.0, 1.0);
    assert!(max_diff(&z, &CMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])) < 1e-15);
}

#[test]
fn decoherence_examples() {
    let node = NodeParams::table_alice();
    let plus = InputQubit::up_x();
    let s = plus.density("atom");
    for law in [DecoherenceLaw::Exponential, DecoherenceLaw::Gaussian] {
        assert_eq!(idle_decoherence(&s, "atom", 0.0, &node, law).unwrap(), s);
        let z = InputQubit::up_z().density("atom");
        assert_eq!(idle_decoherence(&z, "atom", 1e4, &node, law).unwrap().matrix(), z.matrix());
    }
    let out = idle_decoherence(&s, "atom", node.coherence_time_us, &node, DecoherenceLaw::Exponential).unwrap();
    let f = fidelity_pure(&out, &plus.vector()).unwrap();
    assert!((f - (1.0 + (-1.0f64).exp()) / 2.0).abs() < 1e-12);
    assert!((f - 0.6839).abs() < 1e-4);

    let out = idle_decoherence(&s, "atom", node.coherence_time_us, &node, DecoherenceLaw::Gaussian).unwrap();
    assert!((out.matrix()[(0, 1)].re - 0.5 * (-1.0f64).exp()).abs() < 1e-12);

    assert!(idle_decoherence(&s, "atom", -1.0, &node, DecoherenceLaw::Exponential).is_err());
    assert!(dephase_window(&s, "atom", 5.0, 4.0, &node, DecoherenceLaw::Exponential).is_err());
}

#[test]
fn readout_examples() {
    let up = InputQubit::up_z().density("atom");
    let [u, d] = atomic_readout(&up, "atom", 1.0).unwrap();
    assert_eq!(u.weight, 1.0);
    assert!(d.is_null());

    let plus = InputQubit::up_x().density("atom");
    let [u, d] = atomic_readout(&plus, "atom", 1.0).unwrap();
    assert!((u.weight - 0.5).abs() < 1e-15 && (d.weight - 0.5).abs() < 1e-15);

    let [u, d] = atomic_readout(&up, "atom", 0.98).unwrap();
    assert!((u.weight - 0.98).abs() < 1e-15);
    assert!((d.weight - 0.02).abs() < 1e-15);
    // a misreported ↓ still leaves the atom in ↑
    assert!((d.state.unwrap().matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
}

#[test]
fn input_qubit_validation() {
    assert!(InputQubit::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    let q = InputQubit::new(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
    let rotated = q.with_phase(1.3);
    assert!((rotated.alpha.norm_sqr() + rotated.beta.norm_sqr() - 1.0).abs() < 1e-12);
    assert_eq!(InputQubit::six_states().len(), 6);
    assert!(InputQubit::by_label("up_y").is_some());
    assert!(InputQubit::by_label("sideways").is_none());
}

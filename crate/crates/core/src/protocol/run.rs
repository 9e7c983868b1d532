use std::f64::consts::FRAC_PI_2;

use serde::{Serialize, Serializer};

use super::config::ProtocolConfig;
use super::feedback::{feedback_for, FeedbackGate, PhotonOutcome};
use super::timeline::{build_timeline, EventKind, Timeline};
use crate::cavity::{
    atomic_readout, cavity_reflection, dephase_window, prepare_state, raman_rotation, AtomOutcome, InputQubit,
    RotationAxis,
};
use crate::constants::NULL_BRANCH_WEIGHT;
use crate::error::Result;
use crate::photonics::{
    click_povm, coherent_pulse_state, loss_channel, polarization_depolarize, ClickOutcome, PhotonSource,
    PolarizationModePair, PulseConfig,
};
use crate::quantum::{apply_local, fidelity_pure, measure_and_discard, partial_trace, tensor_product, DensityState};

pub const BOB: &str = "bob";
pub const ALICE: &str = "alice";

/// Pulse actually simulated: a one-photon input needs no levels above one.
pub fn effective_pulse(pulse: &PulseConfig) -> PulseConfig {
    let mut p = pulse.clone();
    if p.source == PhotonSource::SinglePhoton {
        p.fock_cutoff = 1;
    }
    p
}

/// Dephases each atom for the part of its exposure window inside `[from, to]`.
fn decohere(state: &DensityState, config: &ProtocolConfig, timeline: &Timeline, from: f64, to: f64) -> Result<DensityState> {
    let mut s = state.clone();
    let atoms = [
        (BOB, &config.node_bob, timeline.bob_exposure),
        (ALICE, &config.node_alice, timeline.alice_exposure),
    ];
    for (label, node, window) in atoms {
        if !s.layout().contains(label) {
            continue;
        }
        let (e0, e1) = (window.exposure_at(from), window.exposure_at(to));
        if e1 > e0 {
            s = dephase_window(&s, label, e0, e1, node, config.decoherence_law)?;
        }
    }
    Ok(s)
}

/// Joint state of both atoms and the pulse right after the second
/// reflection, before any detection-path loss.
#[derive(Debug, Clone)]
pub struct EntangledStage {
    pub state: DensityState,
    pub pair: PolarizationModePair,
    pub timeline: Timeline,
}

pub fn entangling_stage(config: &ProtocolConfig) -> Result<EntangledStage> {
    config.validate()?;
    let timeline = build_timeline(config);
    let bob = prepare_state(&InputQubit::up_x(), &config.node_bob, BOB)?;
    let alice = prepare_state(&config.input, &config.node_alice, ALICE)?;
    let (photon, pair) = coherent_pulse_state(&effective_pulse(&config.pulse))?;
    let mut state = tensor_product(&[bob, alice, photon])?;

    let [m0, m1] = pair.label_refs();
    let reflect_bob = timeline.event(EventKind::ReflectBob).start_us;
    state = decohere(&state, config, &timeline, 0.0, reflect_bob)?;
    state = cavity_reflection(&state, &config.node_bob, &pair, BOB)?;
    state = loss_channel(&state, m0, config.fiber_transmission)?;
    state = loss_channel(&state, m1, config.fiber_transmission)?;
    state = polarization_depolarize(&state, &pair, config.fiber_depolarization)?;
    let reflect_alice = timeline.event(EventKind::ReflectAlice).start_us;
    state = decohere(&state, config, &timeline, reflect_bob, reflect_alice)?;
    state = cavity_reflection(&state, &config.node_alice, &pair, ALICE)?;
    Ok(EntangledStage { state, pair, timeline })
}

fn serialize_state<S: Serializer>(state: &Option<DensityState>, s: S) -> std::result::Result<S::Ok, S::Error> {
    state.as_ref().map(DensityState::to_rows).serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchResult {
    pub photon: PhotonOutcome,
    pub alice: AtomOutcome,
    /// Joint probability per attempt.
    pub probability: f64,
    pub feedback: Vec<FeedbackGate>,
    /// Normalized conditional state of Bob's atom; absent for null branches.
    #[serde(serialize_with = "serialize_state", rename = "bob_density")]
    pub bob_state: Option<DensityState>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TeleportResult {
    pub input: InputQubit,
    /// Fixed order: (A, ↑z), (A, ↓z), (D, ↑z), (D, ↓z).
    pub branches: Vec<BranchResult>,
    pub herald_probability: f64,
    pub double_click_probability: f64,
    pub no_click_probability: f64,
}

impl TeleportResult {
    /// Fidelity of each branch to the input, `None` for null branches.
    pub fn branch_fidelities(&self) -> Vec<Option<f64>> {
        let target = self.input.vector();
        self.branches
            .iter()
            .map(|b| b.bob_state.as_ref().map(|s| fidelity_pure(s, &target).unwrap_or(0.0)))
            .collect()
    }

    /// Herald-weighted branch average; `None` if nothing is heralded.
    pub fn fidelity(&self) -> Option<f64> {
        if self.herald_probability <= 0.0 {
            return None;
        }
        let acc: f64 = self
            .branches
            .iter()
            .zip(self.branch_fidelities())
            .map(|(b, f)| b.probability * f.unwrap_or(0.0))
            .sum();
        Some(acc / self.herald_probability)
    }

    /// Fidelity seen through a Bob readout that misreports each outcome
    /// with probability `1 − readout_fidelity`.
    pub fn raw_fidelity(&self, readout_fidelity: f64) -> Option<f64> {
        self.fidelity()
            .map(|f| 0.5 * (1.0 + (2.0 * readout_fidelity - 1.0) * (2.0 * f - 1.0)))
    }

    /// Herald-weighted average of the conditional Bob states.
    pub fn average_bob_state(&self) -> Option<DensityState> {
        if self.herald_probability <= 0.0 {
            return None;
        }
        let mut acc: Option<crate::CMatrix> = None;
        let mut layout = None;
        for b in &self.branches {
            if let Some(s) = &b.bob_state {
                let term = s.matrix() * crate::C64::new(b.probability / self.herald_probability, 0.0);
                acc = Some(match acc {
                    Some(a) => a + term,
                    None => term,
                });
                layout = Some(s.layout().clone());
            }
        }
        DensityState::from_matrix(layout?, acc?).ok()
    }
}

/// Full protocol: entangling reflections, detection, herald, Alice's
/// analysis, feedback and Bob's conditional states.
pub fn run_protocol(config: &ProtocolConfig) -> Result<TeleportResult> {
    let EntangledStage { state, pair, timeline } = entangling_stage(config)?;
    let [m0, m1] = pair.label_refs();
    let mut state = loss_channel(&state, m0, config.detection_path_efficiency)?;
    state = loss_channel(&state, m1, config.detection_path_efficiency)?;
    let t_reflected = timeline.event(EventKind::ReflectAlice).start_us;

    let povm = click_povm(&config.detector, pair.cutoff)?;
    let weight = |o: ClickOutcome| trace_with(&state, &pair, povm.element(o));
    let no_click = weight(ClickOutcome::ALL[0]);
    let double_click = weight(ClickOutcome::ALL[3]);

    let pi_half = timeline.event(EventKind::AlicePiHalf).start_us;
    let readout = timeline.event(EventKind::AliceReadout).start_us;
    let feedback_start = timeline.event(EventKind::FeedbackRx).start_us;
    let end = timeline.end_us();

    let mut branches = Vec::with_capacity(4);
    let mut herald = 0.0;
    for photon in PhotonOutcome::ALL {
        let outcome = ClickOutcome {
            clicked_a: photon == PhotonOutcome::A,
            clicked_d: photon == PhotonOutcome::D,
        };
        let heralded = measure_and_discard(&state, &[m0, m1], povm.element(outcome))?;
        herald += heralded.weight;
        let Some(atoms) = heralded.state.filter(|_| heralded.weight > NULL_BRANCH_WEIGHT) else {
            for alice in AtomOutcome::ALL {
                branches.push(null_branch(photon, alice));
            }
            continue;
        };
        let mut atoms = decohere(&atoms, config, &timeline, t_reflected, pi_half)?;
        atoms = raman_rotation(&atoms, ALICE, RotationAxis::Y, FRAC_PI_2)?;
        atoms = decohere(&atoms, config, &timeline, pi_half, readout)?;
        let reports = atomic_readout(&atoms, ALICE, config.node_alice.readout_fidelity)?;
        for alice in AtomOutcome::ALL {
            let report = &reports[alice.index()];
            let gates = if config.flags.apply_feedback {
                feedback_for(photon, alice)
            } else {
                Vec::new()
            };
            let Some(s) = &report.state else {
                branches.push(BranchResult {
                    probability: heralded.weight * report.weight,
                    feedback: gates,
                    ..null_branch(photon, alice)
                });
                continue;
            };
            let mut s = decohere(s, config, &timeline, readout, feedback_start)?;
            s = decohere(&s, config, &timeline, feedback_start, end)?;
            for g in &gates {
                s = apply_local(&s, &[BOB], &g.matrix())?;
            }
            let bob = partial_trace(&s, &[BOB])?;
            branches.push(BranchResult {
                photon,
                alice,
                probability: heralded.weight * report.weight,
                feedback: gates,
                bob_state: Some(bob),
            });
        }
    }
    Ok(TeleportResult {
        input: config.input,
        branches,
        herald_probability: herald,
        double_click_probability: double_click,
        no_click_probability: no_click,
    })
}

fn null_branch(photon: PhotonOutcome, alice: AtomOutcome) -> BranchResult {
    BranchResult {
        photon,
        alice,
        probability: 0.0,
        feedback: feedback_for(photon, alice),
        bob_state: None,
    }
}

fn trace_with(state: &DensityState, pair: &PolarizationModePair, effect: &crate::CMatrix) -> f64 {
    measure_and_discard(state, &pair.label_refs(), effect)
        .map(|b| b.weight)
        .unwrap_or(0.0)
}

/// Probability per attempt that exactly one detector clicks.
pub fn herald_probability(config: &ProtocolConfig) -> Result<f64> {
    Ok(run_protocol(config)?.herald_probability)
}

//! Randomized channel checks shared by the property suite and the
//! acceptance run. Each returns `Err` with a description on violation.

use std::sync::OnceLock;

use teleport_core::cavity::{cavity_reflection, dephase_window, DecoherenceLaw, InputQubit, NodeParams};
use teleport_core::photonics::{click_povm, loss_channel, DetectorParams, PolBasis, PolarizationModePair};
use teleport_core::protocol::{run_protocol, ProtocolConfig};
use teleport_core::quantum::{
    apply_noise, apply_unitary, partial_trace, projective_measure, tensor_product, DensityState, HilbertLayout,
    LinearOperator, NoiseChannelSpec,
};
use teleport_core::{CMatrix, C64};

use super::{c, max_diff, random_density, random_qubit, random_unitary, random_vector, rng};

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(a: &CMatrix, b: &CMatrix, tol: f64, what: &str) -> Check {
    let d = max_diff(a, b);
    ensure(d < tol, || format!("{what}: deviation {d:e} above {tol:e}"))
}

pub fn physical(s: &DensityState) -> Check {
    ensure(s.hermiticity_error() < 1e-12, || format!("hermiticity {:e}", s.hermiticity_error()))?;
    ensure(s.min_eigenvalue() >= -1e-9, || format!("min eigenvalue {:e}", s.min_eigenvalue()))?;
    ensure((s.trace() - 1.0).abs() < 1e-10, || format!("trace {}", s.trace()))
}

fn two_qubits() -> HilbertLayout {
    HilbertLayout::new([("a", 2), ("b", 2)]).unwrap()
}

fn noise_spec(p: f64, depol: bool) -> NoiseChannelSpec {
    if depol {
        NoiseChannelSpec::depolarizing(p)
    } else {
        NoiseChannelSpec::dephasing(p)
    }
    .unwrap()
}

/// Atom plus an A/D pair with cutoff 2, supported on at most two photons.
fn atom_and_pulse(seed: u64) -> (DensityState, PolarizationModePair) {
    let pair = PolarizationModePair::new(2, PolBasis::AD);
    let layout = HilbertLayout::new([("atom", 2), ("photon_0", 3), ("photon_1", 3)]).unwrap();
    let mut r = rng(seed);
    let mut m = CMatrix::zeros(18, 18);
    for _ in 0..3 {
        let mut v = random_vector(&mut r, 18);
        for i in 0..18 {
            if (i % 9) / 3 + i % 3 > 2 {
                v[i] = c(0.0, 0.0);
            }
        }
        m += &v * v.adjoint();
    }
    let tr = m.trace();
    (DensityState::from_matrix(layout, m / tr).unwrap(), pair)
}

pub fn noise_cptp(seed: u64, p: f64, depol: bool) -> Check {
    let s = random_density(&mut rng(seed), two_qubits());
    physical(&apply_noise(&s, "b", noise_spec(p, depol)).map_err(|e| e.to_string())?)
}

pub fn zero_noise_identity(seed: u64, depol: bool) -> Check {
    let s = random_density(&mut rng(seed), two_qubits());
    let out = apply_noise(&s, "a", noise_spec(0.0, depol)).map_err(|e| e.to_string())?;
    ensure(out == s, || "zero-strength noise changed the state".into())
}

pub fn unitary_cptp(seed: u64) -> Check {
    let mut r = rng(seed);
    let layout = HilbertLayout::new([("a", 2), ("b", 3)]).unwrap();
    let s = random_density(&mut r, layout.clone());
    let u = LinearOperator::unitary(layout, random_unitary(&mut r, 6)).unwrap();
    let out = apply_unitary(&s, &u).unwrap();
    physical(&out)?;
    ensure((out.purity() - s.purity()).abs() < 1e-10, || "purity changed".into())
}

pub fn unitary_inverse(seed: u64) -> Check {
    let mut r = rng(seed);
    let s = random_density(&mut r, two_qubits());
    let u = LinearOperator::unitary(two_qubits(), random_unitary(&mut r, 4)).unwrap();
    let back = apply_unitary(&apply_unitary(&s, &u).unwrap(), &u.adjoint()).unwrap();
    close(back.matrix(), s.matrix(), 1e-10, "U† U ρ U† U")
}

pub fn loss_cptp(seed: u64, t: f64) -> Check {
    let s = random_density(&mut rng(seed), HilbertLayout::single("m", 5).unwrap());
    physical(&loss_channel(&s, "m", t).unwrap())
}

pub fn loss_semigroup(seed: u64, t1: f64, t2: f64) -> Check {
    let s = random_density(&mut rng(seed), HilbertLayout::single("m", 5).unwrap());
    let twice = loss_channel(&loss_channel(&s, "m", t1).unwrap(), "m", t2).unwrap();
    let once = loss_channel(&s, "m", t1 * t2).unwrap();
    close(twice.matrix(), once.matrix(), 1e-9, "L(t2) L(t1) vs L(t1 t2)")
}

/// `x`, `m` in (0, 1]; `ideal` swaps in the lossless node.
pub fn reflection_cptp(seed: u64, x: f64, m: f64, ideal: bool) -> Check {
    let node = if ideal {
        NodeParams::ideal()
    } else {
        NodeParams {
            input_coupling_fraction: x,
            mode_matching: m,
            ..NodeParams::table_bob()
        }
    };
    let (s, pair) = atom_and_pulse(seed);
    physical(&cavity_reflection(&s, &node, &pair, "atom").map_err(|e| e.to_string())?)
}

pub fn decoherence_cptp(seed: u64, t: f64, gauss: bool) -> Check {
    let s = random_density(&mut rng(seed), two_qubits());
    let law = if gauss { DecoherenceLaw::Gaussian } else { DecoherenceLaw::Exponential };
    physical(&dephase_window(&s, "a", 0.0, t, &NodeParams::table_bob(), law).unwrap())
}

pub fn povm_complete(eta: f64, dark_hz: f64, window_us: f64, cutoff: usize) -> Check {
    let params = DetectorParams {
        efficiency: eta,
        dark_count_rate_hz: dark_hz,
        gate_window_us: window_us,
    };
    let povm = click_povm(&params, cutoff).map_err(|e| e.to_string())?;
    let d = (cutoff + 1) * (cutoff + 1);
    let mut sum = CMatrix::zeros(d, d);
    for (o, e) in &povm.elements {
        ensure(e.diagonal().iter().all(|w| w.re >= 0.0 && w.im == 0.0), || format!("{o:?} not positive"))?;
        sum += e;
    }
    close(&sum, &CMatrix::identity(d, d), 1e-12, "sum of POVM elements")
}

pub fn partial_trace_of_product(seed: u64) -> Check {
    let mut r = rng(seed);
    let a = random_density(&mut r, HilbertLayout::single("a", 3).unwrap());
    let b = random_density(&mut r, HilbertLayout::qubit("b"));
    let ab = tensor_product(&[a.clone(), b.clone()]).unwrap();
    close(partial_trace(&ab, &["a"]).unwrap().matrix(), a.matrix(), 1e-12, "Tr_b")?;
    close(partial_trace(&ab, &["b"]).unwrap().matrix(), b.matrix(), 1e-12, "Tr_a")
}

/// Two projectors onto complementary random subspaces of a 4-level system.
pub fn projectors_complete(seed: u64, split: usize) -> Check {
    let mut r = rng(seed);
    let layout = HilbertLayout::single("q", 4).unwrap();
    let u = random_unitary(&mut r, 4);
    let block = |start: usize, len: usize| {
        let v = u.columns(start, len).into_owned();
        LinearOperator::new(layout.clone(), &v * v.adjoint()).unwrap()
    };
    let projectors = [block(0, split), block(split, 4 - split)];
    let s = random_density(&mut r, layout.clone());
    let branches = projective_measure(&s, &projectors).map_err(|e| e.to_string())?;
    let total: f64 = branches.iter().map(|b| b.weight).sum();
    ensure((total - 1.0).abs() < 1e-12, || format!("outcome weights sum to {total}"))?;
    branches.iter().filter_map(|b| b.state.as_ref()).try_for_each(physical)
}

/// Unnormalized Bob output per branch, `p_b ρ_b`.
fn branch_outputs(config: &ProtocolConfig, input: InputQubit) -> Vec<CMatrix> {
    let result = run_protocol(&config.with_input(input)).unwrap();
    result
        .branches
        .iter()
        .map(|b| match &b.bob_state {
            Some(s) => s.matrix() * c(b.probability, 0.0),
            None => CMatrix::zeros(2, 2),
        })
        .collect()
}

type BasisOutputs = [Vec<CMatrix>; 4];

fn outputs_for(cfg: ProtocolConfig) -> (ProtocolConfig, BasisOutputs) {
    let inputs = [InputQubit::up_z(), InputQubit::down_z(), InputQubit::up_x(), InputQubit::up_y()];
    let out = inputs.map(|q| branch_outputs(&cfg, q));
    (cfg, out)
}

/// Defaults with perfect preparation on both nodes, which leaves every
/// input-dependent step linear.
pub fn defaults_perfect_prep() -> ProtocolConfig {
    let mut cfg = ProtocolConfig::default_operating_point();
    for node in [&mut cfg.node_bob, &mut cfg.node_alice] {
        node.pump_fidelity = 1.0;
        node.pi_pulse_residual = 0.0;
    }
    cfg
}

fn ideal_basis() -> &'static (ProtocolConfig, BasisOutputs) {
    static CELL: OnceLock<(ProtocolConfig, BasisOutputs)> = OnceLock::new();
    CELL.get_or_init(|| outputs_for(ProtocolConfig::ideal(InputQubit::up_z())))
}

fn lossy_basis() -> &'static (ProtocolConfig, BasisOutputs) {
    static CELL: OnceLock<(ProtocolConfig, BasisOutputs)> = OnceLock::new();
    CELL.get_or_init(|| outputs_for(defaults_perfect_prep()))
}

/// Output for `α|↑⟩ + β|↓⟩` rebuilt from the four basis runs, using
/// `E(|0⟩⟨1|) = E(+) + i E(+i) − (1+i)/2 (E(00) + E(11))`.
fn linear_prediction(basis: &BasisOutputs, alpha: C64, beta: C64, branch: usize) -> CMatrix {
    let [e00, e11, ep, epi] = basis.each_ref().map(|o| &o[branch]);
    let e01 = ep + epi * c(0.0, 1.0) - (e00 + e11) * c(0.5, 0.5);
    let e10 = e01.adjoint();
    e00 * c(alpha.norm_sqr(), 0.0)
        + e11 * c(beta.norm_sqr(), 0.0)
        + e01 * (alpha * beta.conj())
        + e10 * (alpha.conj() * beta)
}

/// Teleportation is linear in the input density matrix, branch by branch.
pub fn teleportation_linear(seed: u64, lossy: bool) -> Check {
    let (cfg, basis) = if lossy { lossy_basis() } else { ideal_basis() };
    let (alpha, beta) = random_qubit(&mut rng(seed));
    let actual = branch_outputs(cfg, InputQubit::new(alpha, beta).unwrap());
    for (b, m) in actual.iter().enumerate() {
        close(m, &linear_prediction(basis, alpha, beta, b), 1e-10, &format!("branch {b}"))?;
    }
    Ok(())
}

pub fn global_phase_invariant(seed: u64, phi: f64) -> Check {
    let (alpha, beta) = random_qubit(&mut rng(seed));
    let q = InputQubit::new(alpha, beta).unwrap();
    let cfg = ProtocolConfig::default_operating_point();
    let a = run_protocol(&cfg.with_input(q)).unwrap();
    let b = run_protocol(&cfg.with_input(q.with_phase(phi))).unwrap();
    for (x, y) in a.branches.iter().zip(&b.branches) {
        ensure((x.probability - y.probability).abs() < 1e-12, || "branch probability moved".into())?;
        if let (Some(sx), Some(sy)) = (&x.bob_state, &y.bob_state) {
            close(sx.matrix(), sy.matrix(), 1e-12, "Bob state")?;
        }
    }
    let (fa, fb) = (a.fidelity().unwrap(), b.fidelity().unwrap());
    ensure((fa - fb).abs() < 1e-12, || format!("fidelity {fa} vs {fb}"))
}

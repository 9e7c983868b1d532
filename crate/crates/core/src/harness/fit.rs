use serde::{Deserialize, Serialize};

use crate::cavity::{reflection_amplitudes, NodeParams};
use crate::error::{Result, SimError};
use crate::protocol::ProtocolConfig;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingFit {
    pub input_coupling_fraction: f64,
    pub mode_matching: f64,
    pub target: f64,
    pub reflectivity: f64,
    /// Squared reflectivity error at the optimum; zero when the target is
    /// reachable.
    pub residual: f64,
}

fn reflectivity(node: &NodeParams, x: f64) -> Result<f64> {
    let p = NodeParams {
        input_coupling_fraction: x,
        ..node.clone()
    };
    Ok(reflection_amplitudes(&p)?.operational_reflectivity())
}

const SCAN_POINTS: usize = 2000;

/// Fits the input-coupling fraction so the operational reflectivity (the
/// reflected fraction averaged over an unbiased atomic superposition) hits
/// `target`, keeping the node's mode matching. The search runs on the
/// over-coupled branch, between the reflectivity minimum and `x = 1`, where
/// the reflectivity rises monotonically: a coarse scan followed by
/// bisection. Unreachable targets return the closest endpoint and its
/// residual.
pub fn fit_node_coupling(node: &NodeParams, target: f64) -> Result<CouplingFit> {
    if !(target > 0.0 && target <= 1.0) {
        return Err(SimError::OutOfRange {
            name: "reflectivity target",
            value: target,
            range: "(0, 1]",
        });
    }
    node.validate()?;
    let xs: Vec<f64> = (1..=SCAN_POINTS).map(|i| i as f64 / SCAN_POINTS as f64).collect();
    let rs = xs.iter().map(|&x| reflectivity(node, x)).collect::<Result<Vec<_>>>()?;
    let i_min = (0..rs.len()).min_by(|&a, &b| rs[a].total_cmp(&rs[b])).unwrap_or(0);

    let fit = |x: f64, r: f64| CouplingFit {
        input_coupling_fraction: x,
        mode_matching: node.mode_matching,
        target,
        reflectivity: r,
        residual: (r - target).powi(2),
    };
    let r_top = *rs.last().expect("scan is non-empty");
    if target >= r_top {
        return Ok(fit(1.0, r_top));
    }
    if target <= rs[i_min] {
        return Ok(fit(xs[i_min], rs[i_min]));
    }
    let (mut lo, mut hi) = (xs[i_min], 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if reflectivity(node, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok(fit(x, reflectivity(node, x)?))
}

/// Fits both nodes and returns the configuration with the fitted
/// coupling fractions written in.
pub fn fit_couplings(config: &ProtocolConfig, targets: [f64; 2]) -> Result<(ProtocolConfig, [CouplingFit; 2])> {
    let bob = fit_node_coupling(&config.node_bob, targets[0])?;
    let alice = fit_node_coupling(&config.node_alice, targets[1])?;
    let mut out = config.clone();
    out.node_bob.input_coupling_fraction = bob.input_coupling_fraction;
    out.node_alice.input_coupling_fraction = alice.input_coupling_fraction;
    Ok((out, [bob, alice]))
}

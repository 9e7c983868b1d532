use serde::Serialize;

use super::config::ProtocolConfig;
use crate::constants::FIBER_LIGHT_SPEED_M_PER_US;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    PumpBob,
    PumpAlice,
    PrepareBob,
    /// Delay between the two state preparations.
    PreparationDelay,
    PrepareAlice,
    ReflectBob,
    Transit,
    /// Extra photon propagation time.
    TransitDelay,
    ReflectAlice,
    Detection,
    AlicePiHalf,
    AliceReadout,
    /// Propagation time of the feedback signals.
    FeedbackDelay,
    FeedbackRx,
    FeedbackZ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Actor {
    Bob,
    Alice,
    Photon,
    Channel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Event {
    pub kind: EventKind,
    pub actor: Actor,
    pub start_us: f64,
    pub duration_us: f64,
}

impl Event {
    pub fn end_us(&self) -> f64 {
        self.start_us + self.duration_us
    }
}

/// Time span over which an atom carries coherence that can dephase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExposureWindow {
    pub start_us: f64,
    pub end_us: f64,
}

impl ExposureWindow {
    /// Cumulative exposure accrued by absolute time `t`.
    pub fn exposure_at(&self, t: f64) -> f64 {
        (t.clamp(self.start_us, self.end_us) - self.start_us).max(0.0)
    }

    pub fn length(&self) -> f64 {
        self.end_us - self.start_us
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timeline {
    pub events: Vec<Event>,
    /// End of the longer optical pumping; protocol durations are quoted from
    /// here.
    pub pumping_end_us: f64,
    pub bob_exposure: ExposureWindow,
    pub alice_exposure: ExposureWindow,
}

impl Timeline {
    pub fn event(&self, kind: EventKind) -> &Event {
        self.events
            .iter()
            .find(|e| e.kind == kind)
            .expect("every event kind is scheduled")
    }

    pub fn end_us(&self) -> f64 {
        self.events.iter().map(Event::end_us).fold(0.0, f64::max)
    }

    pub fn post_pump_duration(&self) -> f64 {
        self.end_us() - self.pumping_end_us
    }

    pub fn delays(&self) -> impl Iterator<Item = &Event> {
        self.events.iter().filter(|e| {
            matches!(
                e.kind,
                EventKind::PreparationDelay | EventKind::TransitDelay | EventKind::FeedbackDelay
            )
        })
    }
}

/// Fiber length traversed by light in `tau_us` (refractive index 1.5), km.
pub fn length_equivalent_km(tau_us: f64) -> f64 {
    tau_us * FIBER_LIGHT_SPEED_M_PER_US / 1000.0
}

/// Schedules the protocol. Both pumps start at zero and run in parallel;
/// Bob's π/2 fits inside Alice's longer pumping. Alice's preparation slot is
/// a full π-pulse long whatever the target.
pub fn build_timeline(config: &ProtocolConfig) -> Timeline {
    let t = &config.timing;
    let tau = config.delay_tau_us;
    let mut events = Vec::with_capacity(15);
    let mut push = |kind, actor, start_us: f64, duration_us: f64| {
        events.push(Event {
            kind,
            actor,
            start_us,
            duration_us,
        });
        start_us + duration_us
    };

    push(EventKind::PumpBob, Actor::Bob, 0.0, t.pump_bob_us);
    let alice_pumped = push(EventKind::PumpAlice, Actor::Alice, 0.0, t.pump_alice_us);
    let bob_ready = push(EventKind::PrepareBob, Actor::Bob, t.pump_bob_us, config.node_bob.pi_half_duration_us);
    let pumping_end = alice_pumped.max(t.pump_bob_us);
    let mut now = pumping_end.max(bob_ready);
    now = push(EventKind::PreparationDelay, Actor::Channel, now, tau);
    let alice_ready = push(EventKind::PrepareAlice, Actor::Alice, now, config.node_alice.pi_duration_us);
    now = push(EventKind::ReflectBob, Actor::Photon, alice_ready, t.reflection_us);
    now = push(EventKind::Transit, Actor::Photon, now, t.fiber_length_m / FIBER_LIGHT_SPEED_M_PER_US);
    now = push(EventKind::TransitDelay, Actor::Photon, now, tau);
    let reflected = push(EventKind::ReflectAlice, Actor::Photon, now, t.reflection_us);
    let heralded = push(EventKind::Detection, Actor::Photon, reflected, t.detection_latency_us);
    let analysis_start = if config.flags.alice_analysis_after_herald {
        heralded
    } else {
        reflected
    };
    now = push(EventKind::AlicePiHalf, Actor::Alice, analysis_start, config.node_alice.pi_half_duration_us);
    let readout_start = now;
    now = push(EventKind::AliceReadout, Actor::Alice, now, t.readout_us);
    now = now.max(heralded);
    now = push(EventKind::FeedbackDelay, Actor::Channel, now, tau);
    now = push(EventKind::FeedbackRx, Actor::Bob, now, config.node_bob.pi_duration_us);
    let finished = push(EventKind::FeedbackZ, Actor::Bob, now, t.z_gate_us);

    Timeline {
        events,
        pumping_end_us: pumping_end,
        bob_exposure: ExposureWindow {
            start_us: bob_ready,
            end_us: finished,
        },
        alice_exposure: ExposureWindow {
            start_us: alice_ready,
            end_us: readout_start,
        },
    }
}

//! Slotted dissemination simulator.
//!
//! Every slot, periodic generators emit messages whose base value is the
//! assessed score of their source. The queue is ordered by effective value
//! and walked once: each message that still fits in the slot's bit budget is
//! sent, anything larger stays queued. Messages whose effective value has
//! decayed to zero are dropped. A FIFO ordering is available as a baseline.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{self, effective_voi, Metadata, Point, SourceKind, VoiConfig};
use crate::{Error, Result};

/// Periodic message source.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Generator {
    pub source: SourceKind,
    /// Emits on every slot divisible by this.
    pub period_slots: u64,
    pub size_bits: u64,
    pub quality: f64,
    pub position: Point,
    /// Each message's quality is drawn uniformly from `quality ± quality_jitter`
    /// (clamped to `[0, 1]`) using the scenario seed.
    #[cfg_attr(feature = "serde", serde(default))]
    pub quality_jitter: f64,
    #[cfg_attr(feature = "serde", serde(default))]
    pub urgency_level: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub duration_slots: u64,
    pub slot_ms: f64,
    pub channel_bits_per_slot: u64,
    pub generators: Vec<Generator>,
    pub receiver_position: Point,
    pub voi_config: VoiConfig,
    pub gamma: f64,
    pub rng_seed: u64,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.channel_bits_per_slot == 0 {
            return Err(Error::Config(
                "channel_bits_per_slot must be positive".into(),
            ));
        }
        if !(self.slot_ms > 0.0 && self.slot_ms.is_finite()) {
            return Err(Error::Config(format!(
                "slot_ms must be positive, got {}",
                self.slot_ms
            )));
        }
        self.voi_config.validate()?;
        if self.voi_config.gamma_slot.is_some() {
            model::check_gamma(self.gamma)?;
        }
        for (i, g) in self.generators.iter().enumerate() {
            if g.period_slots == 0 {
                return Err(Error::Config(format!(
                    "generator {i}: period_slots must be >= 1"
                )));
            }
            if g.size_bits == 0 {
                return Err(Error::Config(format!(
                    "generator {i}: size_bits must be positive"
                )));
            }
            if !(0.0..=1.0).contains(&g.quality) {
                return Err(Error::Config(format!(
                    "generator {i}: quality must lie in [0, 1], got {}",
                    g.quality
                )));
            }
            if !(0.0..=1.0).contains(&g.quality_jitter) {
                return Err(Error::Config(format!(
                    "generator {i}: quality_jitter must lie in [0, 1], got {}",
                    g.quality_jitter
                )));
            }
            if self.voi_config.source_position(g.source).is_none() {
                return Err(Error::Config(format!(
                    "generator {i}: source {} is not assessed by the application config",
                    g.source
                )));
            }
        }
        Ok(())
    }

    /// Start time of `slot`, ms.
    pub fn slot_time(&self, slot: u64) -> f64 {
        slot as f64 * self.slot_ms
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Message {
    pub id: u64,
    pub meta: Metadata,
    pub base_voi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum SchedulerPolicy {
    /// Descending effective value.
    #[default]
    Voi,
    /// Oldest first.
    Fifo,
}

impl SchedulerPolicy {
    pub fn name(self) -> &'static str {
        match self {
            SchedulerPolicy::Voi => "voi",
            SchedulerPolicy::Fifo => "fifo",
        }
    }
}

/// A message paired with its effective value at schedule time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduledMessage {
    pub message: Message,
    pub value: f64,
}

/// One sent message.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Transmission {
    pub slot: u64,
    pub message_id: u64,
    pub source: SourceKind,
    pub effective_voi: f64,
    pub size_bits: u64,
}

/// Delivery counters indexed by [`SourceKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SourceCounts([u64; 5]);

impl SourceCounts {
    pub fn get(&self, source: SourceKind) -> u64 {
        self.0[source.index()]
    }

    fn bump(&mut self, source: SourceKind) {
        self.0[source.index()] += 1;
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SourceKind, u64)> + '_ {
        SourceKind::ALL.into_iter().map(|s| (s, self.get(s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimMetrics {
    pub slots: u64,
    pub generated_count: u64,
    /// Sum of effective values at transmission time.
    pub delivered_value: f64,
    pub delivered_count: SourceCounts,
    pub dropped_count: u64,
    /// Messages still queued after the last slot.
    pub residual_count: u64,
    pub mean_age_at_delivery_ms: f64,
    pub max_age_at_delivery_ms: f64,
    pub transmitted_bits: u64,
    /// Transmitted bits over offered capacity.
    pub channel_utilization: f64,
}

impl SimMetrics {
    pub fn delivered_total(&self) -> u64 {
        self.delivered_count.total()
    }
}

/// Ranking used by the value scheduler: higher value first, then older, then
/// smaller id.
pub fn voi_order(a: &ScheduledMessage, b: &ScheduledMessage) -> Ordering {
    b.value.total_cmp(&a.value).then_with(|| fifo_order(a, b))
}

/// Oldest first, then smaller id.
pub fn fifo_order(a: &ScheduledMessage, b: &ScheduledMessage) -> Ordering {
    a.message
        .meta
        .generated_at
        .total_cmp(&b.message.meta.generated_at)
        .then_with(|| a.message.id.cmp(&b.message.id))
}

/// Messages of `config`'s generators that fire at `slot`, stamped with the
/// slot's start time.
///
/// Pure in `(config, slot)`: ids are `slot * generators + generator index`
/// and quality jitter comes from a seeded stream per generator positioned at
/// the slot.
pub fn generate(config: &ScenarioConfig, slot: u64) -> Result<Vec<Message>> {
    let scores = base_scores(config)?;
    Ok(generate_scored(config, &scores, slot))
}

fn base_scores(config: &ScenarioConfig) -> Result<[f64; 5]> {
    let assessment = model::assess(&config.voi_config, config.gamma)?;
    let mut scores = [0.0; 5];
    for (source, score) in config
        .voi_config
        .sources
        .iter()
        .zip(assessment.scores.as_slice())
    {
        scores[source.index()] = *score;
    }
    Ok(scores)
}

fn generate_scored(config: &ScenarioConfig, scores: &[f64; 5], slot: u64) -> Vec<Message> {
    let now = config.slot_time(slot);
    let per_slot = config.generators.len() as u64;
    config
        .generators
        .iter()
        .enumerate()
        .filter(|(_, g)| slot.is_multiple_of(g.period_slots))
        .map(|(i, g)| {
            let quality = if g.quality_jitter > 0.0 {
                let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
                rng.set_stream(i as u64);
                rng.set_word_pos(u128::from(slot) * 16);
                let offset: f64 = rng.gen_range(-1.0..=1.0);
                (g.quality + g.quality_jitter * offset).clamp(0.0, 1.0)
            } else {
                g.quality
            };
            Message {
                id: slot * per_slot + i as u64,
                meta: Metadata {
                    source: g.source,
                    generated_at: now,
                    origin_position: g.position,
                    size_bits: g.size_bits,
                    quality,
                    urgency_level: g.urgency_level,
                    hop_count: 0,
                },
                base_voi: scores[g.source.index()],
            }
        })
        .collect()
}

/// Orders `queue` for transmission at time `now` under the value scheduler.
pub fn schedule(
    queue: Vec<Message>,
    now: f64,
    config: &ScenarioConfig,
) -> Result<Vec<ScheduledMessage>> {
    schedule_with(queue, now, config, SchedulerPolicy::Voi)
}

pub fn schedule_with(
    queue: Vec<Message>,
    now: f64,
    config: &ScenarioConfig,
    policy: SchedulerPolicy,
) -> Result<Vec<ScheduledMessage>> {
    let mut scored = queue
        .into_iter()
        .map(|message| {
            effective_voi(
                message.base_voi,
                &message.meta,
                now,
                config.receiver_position,
                &config.voi_config.decay,
            )
            .map(|value| ScheduledMessage { message, value })
        })
        .collect::<Result<Vec<_>>>()?;
    match policy {
        SchedulerPolicy::Voi => scored.sort_by(voi_order),
        SchedulerPolicy::Fifo => scored.sort_by(fifo_order),
    }
    Ok(scored)
}

/// What one slot does with a queue.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SlotPlan {
    /// Sent this slot, in schedule order.
    pub transmitted: Vec<ScheduledMessage>,
    /// Still queued, in schedule order.
    pub deferred: Vec<ScheduledMessage>,
    /// Worthless messages removed from the queue.
    pub dropped: Vec<ScheduledMessage>,
    pub bits: u64,
    pub value: f64,
}

/// Drops zero-value messages, orders the rest by `policy` and walks the order
/// once, sending every message that fits in the remaining budget.
pub fn plan_slot(
    queue: Vec<Message>,
    now: f64,
    config: &ScenarioConfig,
    policy: SchedulerPolicy,
) -> Result<SlotPlan> {
    let ordered = schedule_with(queue, now, config, policy)?;
    let mut plan = SlotPlan::default();
    let mut remaining = config.channel_bits_per_slot;
    for item in ordered {
        if item.value <= 0.0 {
            plan.dropped.push(item);
        } else if item.message.meta.size_bits <= remaining {
            remaining -= item.message.meta.size_bits;
            plan.bits += item.message.meta.size_bits;
            plan.value += item.value;
            plan.transmitted.push(item);
        } else {
            plan.deferred.push(item);
        }
    }
    Ok(plan)
}

/// Per-slot outcome returned by [`Simulation::step`].
#[derive(Debug, Clone, PartialEq)]
pub struct SlotReport {
    pub slot: u64,
    pub generated: usize,
    pub plan: SlotPlan,
    pub utilization: f64,
}

/// Simulation state: queue, clock and running totals.
#[derive(Debug, Clone)]
pub struct Simulation<'a> {
    config: &'a ScenarioConfig,
    policy: SchedulerPolicy,
    scores: [f64; 5],
    slot: u64,
    queue: Vec<Message>,
    metrics: SimMetrics,
    age_sum_ms: f64,
    log: Vec<Transmission>,
}

impl<'a> Simulation<'a> {
    pub fn new(config: &'a ScenarioConfig, policy: SchedulerPolicy) -> Result<Self> {
        config.validate()?;
        let scores = base_scores(config)?;
        Ok(Self {
            config,
            policy,
            scores,
            slot: 0,
            queue: Vec::new(),
            metrics: SimMetrics::default(),
            age_sum_ms: 0.0,
            log: Vec::new(),
        })
    }

    pub fn slot(&self) -> u64 {
        self.slot
    }

    pub fn is_finished(&self) -> bool {
        self.slot >= self.config.duration_slots
    }

    pub fn queue(&self) -> &[Message] {
        &self.queue
    }

    /// Adds messages to the queue directly, bypassing the generators.
    pub fn enqueue(&mut self, messages: impl IntoIterator<Item = Message>) {
        for m in messages {
            self.metrics.generated_count += 1;
            self.queue.push(m);
        }
    }

    pub fn log(&self) -> &[Transmission] {
        &self.log
    }

    /// Generates, schedules and transmits one slot. `None` once the run is over.
    pub fn step(&mut self) -> Result<Option<SlotReport>> {
        if self.is_finished() {
            return Ok(None);
        }
        let slot = self.slot;
        let now = self.config.slot_time(slot);

        let fresh = generate_scored(self.config, &self.scores, slot);
        let generated = fresh.len();
        self.enqueue(fresh);

        let queue = core::mem::take(&mut self.queue);
        let plan = plan_slot(queue, now, self.config, self.policy)?;

        for item in &plan.transmitted {
            let meta = &item.message.meta;
            let age = now - meta.generated_at;
            self.age_sum_ms += age;
            self.metrics.max_age_at_delivery_ms = self.metrics.max_age_at_delivery_ms.max(age);
            self.metrics.delivered_count.bump(meta.source);
            self.metrics.delivered_value += item.value;
            self.log.push(Transmission {
                slot,
                message_id: item.message.id,
                source: meta.source,
                effective_voi: item.value,
                size_bits: meta.size_bits,
            });
        }
        self.metrics.transmitted_bits += plan.bits;
        self.metrics.dropped_count += plan.dropped.len() as u64;
        self.queue = plan.deferred.iter().map(|d| d.message).collect();
        self.slot += 1;

        let utilization = plan.bits as f64 / self.config.channel_bits_per_slot as f64;
        Ok(Some(SlotReport {
            slot,
            generated,
            plan,
            utilization,
        }))
    }

    /// Totals so far.
    pub fn metrics(&self) -> SimMetrics {
        let mut m = self.metrics;
        m.slots = self.slot;
        m.residual_count = self.queue.len() as u64;
        let delivered = m.delivered_total();
        m.mean_age_at_delivery_ms = if delivered == 0 {
            0.0
        } else {
            self.age_sum_ms / delivered as f64
        };
        let capacity = self.slot as f64 * self.config.channel_bits_per_slot as f64;
        m.channel_utilization = if capacity > 0.0 {
            m.transmitted_bits as f64 / capacity
        } else {
            0.0
        };
        m
    }

    pub fn into_outcome(self) -> SimOutcome {
        SimOutcome {
            metrics: self.metrics(),
            log: self.log,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub metrics: SimMetrics,
    pub log: Vec<Transmission>,
}

/// Runs every slot of the scenario under `policy`.
pub fn run_with(config: &ScenarioConfig, policy: SchedulerPolicy) -> Result<SimOutcome> {
    let mut sim = Simulation::new(config, policy)?;
    while sim.step()?.is_some() {}
    Ok(sim.into_outcome())
}

/// Runs the scenario under the value scheduler.
pub fn run(config: &ScenarioConfig) -> Result<SimMetrics> {
    run_with(config, SchedulerPolicy::Voi).map(|o| o.metrics)
}

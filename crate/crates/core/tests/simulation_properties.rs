use proptest::prelude::*;
use voi_core::model::{Metadata, Point, SourceKind, VoiConfig};
use voi_core::sim::{
    self, plan_slot, Generator, Message, ScenarioConfig, SchedulerPolicy, Simulation,
};

fn generator(equal_size: Option<u64>) -> impl Strategy<Value = Generator> {
    (
        prop::bool::ANY,
        1u64..=5,
        100u64..=1200,
        0.0f64..=1.0,
        -400.0f64..400.0,
        -400.0f64..400.0,
        0.0f64..0.3,
    )
        .prop_map(
            move |(surrounding, period, size, quality, x, y, jitter)| Generator {
                source: if surrounding {
                    SourceKind::Surrounding
                } else {
                    SourceKind::Position
                },
                period_slots: period,
                size_bits: equal_size.unwrap_or(size),
                quality,
                position: Point::new(x, y),
                quality_jitter: jitter,
                urgency_level: 0,
            },
        )
}

fn scenario(equal_size: Option<u64>) -> impl Strategy<Value = ScenarioConfig> {
    (
        prop::collection::vec(generator(equal_size), 1..=4),
        300u64..=3000,
        0u64..=60,
        (1.0f64 / 9.0)..=9.0,
        any::<u64>(),
        10.0f64..500.0,
    )
        .prop_map(|(generators, budget, duration, gamma, seed, half_life)| {
            let mut voi_config = VoiConfig::safety_default();
            voi_config.decay.time_half_life_ms = half_life;
            ScenarioConfig {
                duration_slots: duration,
                slot_ms: 10.0,
                channel_bits_per_slot: budget,
                generators,
                receiver_position: Point::ORIGIN,
                voi_config,
                gamma,
                rng_seed: seed,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conservation_budget_and_dominance(cfg in scenario(None)) {
        let mut run = Simulation::new(&cfg, SchedulerPolicy::Voi).unwrap();
        while let Some(report) = run.step().unwrap() {
            prop_assert!(report.plan.bits <= cfg.channel_bits_per_slot);
            for sent in &report.plan.transmitted {
                for kept in &report.plan.deferred {
                    if kept.message.meta.size_bits <= sent.message.meta.size_bits {
                        prop_assert!(sent.value >= kept.value);
                    }
                }
            }
        }
        let m = run.metrics();
        prop_assert_eq!(m.generated_count, m.delivered_total() + m.dropped_count + m.residual_count);
        prop_assert!((0.0..=1.0).contains(&m.channel_utilization));
    }

    #[test]
    fn identical_configs_give_identical_runs(cfg in scenario(None)) {
        let a = sim::run_with(&cfg, SchedulerPolicy::Voi).unwrap();
        let b = sim::run_with(&cfg.clone(), SchedulerPolicy::Voi).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn value_beats_fifo_with_equal_sizes(cfg in scenario(Some(500))) {
        let voi = sim::run_with(&cfg, SchedulerPolicy::Voi).unwrap().metrics;
        let fifo = sim::run_with(&cfg, SchedulerPolicy::Fifo).unwrap().metrics;
        prop_assert!(
            voi.delivered_value >= fifo.delivered_value * (1.0 - 1e-12),
            "voi {} < fifo {}", voi.delivered_value, fifo.delivered_value
        );

        // Same queue, same instant: the value order picks at least as much value.
        let mut run = Simulation::new(&cfg, SchedulerPolicy::Voi).unwrap();
        for slot in 0..cfg.duration_slots {
            let mut queue = run.queue().to_vec();
            queue.extend(sim::generate(&cfg, slot).unwrap());
            let now = cfg.slot_time(slot);
            let by_value = plan_slot(queue.clone(), now, &cfg, SchedulerPolicy::Voi).unwrap();
            let by_age = plan_slot(queue, now, &cfg, SchedulerPolicy::Fifo).unwrap();
            prop_assert!(by_value.value >= by_age.value * (1.0 - 1e-12));
            let report = run.step().unwrap().unwrap();
            prop_assert_eq!(report.plan, by_value);
        }
    }

    #[test]
    fn schedule_matches_pairwise_rank_oracle(
        raw in prop::collection::vec((0u8..4, 0u8..3, 0u64..100), 0..=8)
    ) {
        let mut cfg = ScenarioConfig {
            duration_slots: 1,
            slot_ms: 10.0,
            channel_bits_per_slot: 1000,
            generators: vec![],
            receiver_position: Point::ORIGIN,
            voi_config: VoiConfig::safety_default(),
            gamma: 3.0,
            rng_seed: 0,
        };
        cfg.voi_config.decay.time_half_life_ms = f64::MAX;
        // Coarse values and timestamps force ties on both keys.
        let queue: Vec<Message> = raw
            .iter()
            .enumerate()
            .map(|(k, (v, t, salt))| Message {
                id: salt * 10 + k as u64,
                meta: Metadata {
                    source: SourceKind::Position,
                    generated_at: f64::from(*t) * 10.0,
                    origin_position: Point::ORIGIN,
                    size_bits: 1,
                    quality: 1.0,
                    urgency_level: 0,
                    hop_count: 0,
                },
                base_voi: f64::from(*v) / 4.0,
            })
            .collect();
        let now = 30.0;
        let ordered: Vec<u64> = sim::schedule(queue.clone(), now, &cfg)
            .unwrap()
            .iter()
            .map(|s| s.message.id)
            .collect();

        // Rank of each message = how many others beat it pairwise.
        let beats = |a: &Message, b: &Message| {
            a.base_voi > b.base_voi
                || (a.base_voi == b.base_voi && a.meta.generated_at < b.meta.generated_at)
                || (a.base_voi == b.base_voi
                    && a.meta.generated_at == b.meta.generated_at
                    && a.id < b.id)
        };
        let mut expected = vec![0u64; queue.len()];
        for a in &queue {
            let rank = queue.iter().filter(|b| beats(b, a)).count();
            expected[rank] = a.id;
        }
        prop_assert_eq!(ordered, expected);
    }
}

//! CSV and plain-text renderings. Reals in CSV use fixed 6-decimal formatting.

use std::fmt::Write as _;

use voi_core::model::{Assessment, SourceKind, VoiConfig};
use voi_core::sim::{SchedulerPolicy, SimMetrics, Transmission};
use voi_core::sweep::{GammaInterval, SweepRow};

/// `value` rounded to `decimals` places, never printed as `-0`.
pub fn fixed(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_owned()
    } else {
        s
    }
}

fn real(value: f64) -> String {
    fixed(value, 6)
}

pub fn sweep_header(sources: &[SourceKind]) -> String {
    let mut header = String::from("gamma,cr,consistent");
    for s in sources {
        let _ = write!(header, ",voi_{}", s.name());
    }
    header
}

pub fn sweep_csv(sources: &[SourceKind], rows: &[SweepRow]) -> String {
    let mut out = sweep_header(sources);
    out.push('\n');
    for row in rows {
        let _ = write!(
            out,
            "{},{},{}",
            real(row.gamma),
            real(row.cr),
            row.is_consistent
        );
        for score in &row.scores {
            let _ = write!(out, ",{}", real(*score));
        }
        out.push('\n');
    }
    out
}

pub const LOG_HEADER: &str = "slot,message_id,source,effective_voi,size_bits";

pub fn transmission_log_csv(log: &[Transmission]) -> String {
    let mut out = String::from(LOG_HEADER);
    out.push('\n');
    for t in log {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            t.slot,
            t.message_id,
            t.source.name(),
            real(t.effective_voi),
            t.size_bits
        );
    }
    out
}

pub fn metrics_csv(results: &[(SchedulerPolicy, SimMetrics)]) -> String {
    let mut out = String::from("scheduler,slots,generated,delivered_value");
    for s in SourceKind::ALL {
        let _ = write!(out, ",delivered_{}", s.name());
    }
    out.push_str(",dropped,residual,mean_age_ms,max_age_ms,transmitted_bits,utilization\n");
    for (policy, m) in results {
        let _ = write!(
            out,
            "{},{},{},{}",
            policy.name(),
            m.slots,
            m.generated_count,
            real(m.delivered_value)
        );
        for (_, count) in m.delivered_count.iter() {
            let _ = write!(out, ",{count}");
        }
        let _ = writeln!(
            out,
            ",{},{},{},{},{},{}",
            m.dropped_count,
            m.residual_count,
            real(m.mean_age_at_delivery_ms),
            real(m.max_age_at_delivery_ms),
            m.transmitted_bits,
            real(m.channel_utilization)
        );
    }
    out
}

fn attribute_label(a: voi_core::model::Attribute) -> String {
    serde_json::to_value(a)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

pub fn check_report(config: &VoiConfig, gamma: Option<f64>, a: &Assessment) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "application: {:?} ({} attributes, {} sources)",
        config.application.kind,
        config.attributes.len(),
        config.sources.len()
    );
    if let Some(g) = gamma {
        let _ = writeln!(out, "gamma: {}", fixed(g, 4));
    }
    let _ = writeln!(out, "attribute weights:");
    for (attr, w) in config.attributes.iter().zip(a.attribute_weights.as_slice()) {
        let _ = writeln!(out, "  {:<20} {}", attribute_label(*attr), fixed(*w, 4));
    }
    let r = &a.report;
    let _ = writeln!(out, "lambda_max={}", fixed(r.lambda_max, 4));
    let _ = writeln!(out, "CI={}", fixed(r.consistency_index, 4));
    let _ = writeln!(
        out,
        "CR={} (threshold {}): {}",
        fixed(r.consistency_ratio, 4),
        fixed(config.consistency_threshold, 2),
        if r.is_consistent {
            "consistent"
        } else {
            "inconsistent"
        }
    );
    let _ = writeln!(out, "source scores:");
    for (s, w) in config.sources.iter().zip(a.scores.as_slice()) {
        let _ = writeln!(out, "  {:<20} {}", s.name(), fixed(*w, 4));
    }
    out
}

pub fn sweep_summary(rows: &[SweepRow], region: &[GammaInterval]) -> String {
    let mut out = format!("{} rows\n", rows.len());
    if region.is_empty() {
        out.push_str("consistent region: none\n");
    }
    for iv in region {
        let _ = writeln!(out, "consistent region: [{}, {}]", real(iv.lo), real(iv.hi));
    }
    out
}

pub fn simulation_summary(results: &[(SchedulerPolicy, SimMetrics)]) -> String {
    let mut out = String::new();
    for (policy, m) in results {
        let _ = writeln!(
            out,
            "{:<5} delivered_value={} delivered={} dropped={} residual={} mean_age_ms={} max_age_ms={} utilization={}",
            policy.name(),
            real(m.delivered_value),
            m.delivered_total(),
            m.dropped_count,
            m.residual_count,
            fixed(m.mean_age_at_delivery_ms, 3),
            fixed(m.max_age_at_delivery_ms, 3),
            fixed(m.channel_utilization, 4)
        );
    }
    out
}

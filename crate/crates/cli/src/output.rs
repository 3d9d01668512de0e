//! Text, CSV, JSON and PGM renderings. Every writer is a pure function of
//! its input, so identical runs give identical bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;
use sqt_core::{BathParams, PointParams, RegionMap, SqtMetrics, TimeWindow};

/// Longest line written to a PGM file.
pub const PGM_LINE_LIMIT: usize = 70;

/// 17 significant digits: parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn verdict(m: &SqtMetrics) -> &'static str {
    if m.is_secure() {
        "secure"
    } else {
        "not secure"
    }
}

pub fn metrics_text(p: &PointParams, bath: &BathParams, m: &SqtMetrics) -> String {
    let rows: [(&str, f64); 12] = [
        ("r", p.r),
        ("R", p.bath_squeezing),
        ("T", p.temperature),
        ("gamma", p.gamma),
        ("t", p.t),
        ("n_th", bath.n_th()),
        ("N", bath.mean_photons()),
        ("M", bath.squeezing_correlation()),
        ("F", m.fidelity),
        ("S_ab", m.s_ab),
        ("S_ba", m.s_ba),
        ("L", m.l),
    ];
    let mut s = String::new();
    for (k, v) in rows {
        writeln!(s, "{k}={v}").unwrap();
    }
    writeln!(s, "verdict={}", verdict(m)).unwrap();
    s
}

#[derive(Serialize)]
struct MetricsRecord<'a> {
    params: &'a PointParams,
    n_th: f64,
    #[serde(rename = "N")]
    n: f64,
    #[serde(rename = "M")]
    m: f64,
    #[serde(rename = "F")]
    fidelity: f64,
    #[serde(rename = "S_ab")]
    s_ab: f64,
    #[serde(rename = "S_ba")]
    s_ba: f64,
    #[serde(rename = "L")]
    l: f64,
    secure: bool,
    verdict: &'static str,
}

pub fn metrics_json(p: &PointParams, bath: &BathParams, m: &SqtMetrics) -> String {
    let record = MetricsRecord {
        params: p,
        n_th: bath.n_th(),
        n: bath.mean_photons(),
        m: bath.squeezing_correlation(),
        fidelity: m.fidelity,
        s_ab: m.s_ab,
        s_ba: m.s_ba,
        l: m.l,
        secure: m.is_secure(),
        verdict: verdict(m),
    };
    serde_json::to_string_pretty(&record).expect("metrics serialise") + "\n"
}

pub const NO_WINDOW: &str = "no SQT window";

pub fn window_text(w: &TimeWindow) -> String {
    if w.is_empty() {
        return format!("{NO_WINDOW}\n");
    }
    w.intervals.iter().map(|(a, b)| format!("[{a:.9}, {b:.9}]\n")).collect()
}

pub fn window_csv(w: &TimeWindow) -> String {
    let mut s = String::from("t_start,t_end\n");
    for &(a, b) in &w.intervals {
        writeln!(s, "{},{}", num(a), num(b)).unwrap();
    }
    s
}

pub fn window_json(w: &TimeWindow, p: &PointParams, t_max: f64) -> String {
    let doc = json!({
        "params": p,
        "t_max": t_max,
        "tolerance": w.tolerance,
        "intervals": w.intervals,
        "total_length": w.total_length(),
    });
    serde_json::to_string_pretty(&doc).expect("window serialises") + "\n"
}

/// One row per cell, axis-1 index outermost.
pub fn sweep_csv(map: &RegionMap) -> String {
    let (n1, n2) = (map.axis1.count, map.axis2.count);
    let mut s = String::with_capacity(n1 * n2 * 140);
    writeln!(s, "{},{},F,S_ab,S_ba,L,secure", map.axis1.parameter, map.axis2.parameter).unwrap();
    for i in 0..n1 {
        let v1 = num(map.axis1.value(i));
        for j in 0..n2 {
            let m = map.get(i, j);
            writeln!(
                s,
                "{v1},{},{},{},{},{},{}",
                num(map.axis2.value(j)),
                num(m.fidelity),
                num(m.s_ab),
                num(m.s_ba),
                num(m.l),
                u8::from(m.is_secure())
            )
            .unwrap();
        }
    }
    s
}

pub fn sweep_json(map: &RegionMap) -> String {
    let (n1, n2) = (map.axis1.count, map.axis2.count);
    let grid = |f: &dyn Fn(&SqtMetrics) -> f64| -> Vec<Vec<f64>> {
        (0..n1).map(|i| (0..n2).map(|j| f(map.get(i, j))).collect()).collect()
    };
    let axis = |a: &sqt_core::Axis| {
        json!({
            "name": a.parameter.name(),
            "min": a.min,
            "max": a.max,
            "count": a.count,
            "values": a.values(),
        })
    };
    let secure: Vec<Vec<bool>> = (0..n1).map(|i| (0..n2).map(|j| map.is_secure(i, j)).collect()).collect();
    let doc = json!({
        "axes": [axis(&map.axis1), axis(&map.axis2)],
        "fixed": map.template,
        "F": grid(&|m| m.fidelity),
        "S_ab": grid(&|m| m.s_ab),
        "S_ba": grid(&|m| m.s_ba),
        "L": grid(&|m| m.l),
        "secure": secure,
    });
    serde_json::to_string(&doc).expect("sweep serialises") + "\n"
}

/// Plain PGM of the secure mask: axis 1 runs left to right, axis 2 bottom
/// to top, white where `L > 0`.
pub fn sweep_pgm(map: &RegionMap) -> String {
    let (w, h) = (map.axis1.count, map.axis2.count);
    let mut s = String::with_capacity(w * h * 4 + 128);
    s.push_str("P2\n");
    let comment = format!(
        "# secure mask: x = {} [{}, {}], y = {} [{}, {}]",
        map.axis1.parameter, map.axis1.min, map.axis1.max, map.axis2.parameter, map.axis2.min, map.axis2.max
    );
    if comment.len() <= PGM_LINE_LIMIT {
        s.push_str(&comment);
        s.push('\n');
    }
    writeln!(s, "{w} {h}\n255").unwrap();
    for j in (0..h).rev() {
        let mut line = String::new();
        for i in 0..w {
            let px = if map.is_secure(i, j) { "255" } else { "0" };
            if !line.is_empty() && line.len() + 1 + px.len() > PGM_LINE_LIMIT {
                s.push_str(&line);
                s.push('\n');
                line.clear();
            }
            if !line.is_empty() {
                line.push(' ');
            }
            line.push_str(px);
        }
        s.push_str(&line);
        s.push('\n');
    }
    s
}

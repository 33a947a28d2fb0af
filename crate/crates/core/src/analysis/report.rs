//! Text and JSON renderers for orphan tables and the three-circuit comparison.

use serde_json::{json, Value};

use super::{orphan_summary, AnalysisError, GateTransition, OrphanTable, PhaseOrphans, DEFAULT_ANALYSIS_CAP};
use crate::logic::{Codeword, RailLiteral};
use crate::netlist::{build_fixture, Circuit, Fixture};
use crate::sim::Phase;

/// Cell text: acknowledged path plus orphan annotation,
/// e.g. `C4-OR3 (Orphans due to OR1↑, OR2↑)`.
pub fn cell(p: &PhaseOrphans) -> String {
    let mut s = if p.acknowledged.is_empty() { "-".to_string() } else { p.path() };
    match p.orphans.len() {
        0 => {}
        1 => s.push_str(&format!(" (Orphan due to {})", p.orphans[0].label())),
        _ => {
            let labels: Vec<String> = p.orphans.iter().map(GateTransition::label).collect();
            s.push_str(&format!(" (Orphans due to {})", labels.join(", ")));
        }
    }
    s
}

/// Rail values of a codeword in `Xn1 Xn0 .. X11 X10` column order.
fn rail_columns(cw: &Codeword) -> Vec<String> {
    (1..=cw.n())
        .rev()
        .flat_map(|v| [true, false].map(|r| if cw.rails().get(RailLiteral::new(v, r)) { "1" } else { "0" }.to_string()))
        .collect()
}

fn rail_headers(n: usize) -> Vec<String> {
    (1..=n).rev().flat_map(|v| [format!("X{v}1"), format!("X{v}0")]).collect()
}

fn render_grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|i| rows.iter().filter_map(|r| r.get(i)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let mut line = String::new();
        for (i, s) in r.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(s);
            if i + 1 < r.len() {
                line.extend(std::iter::repeat_n(' ', widths[i] - s.chars().count()));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn transitions_json(ts: &[GateTransition]) -> Value {
    ts.iter().map(|t| json!({"gate": t.gate, "direction": t.direction, "time": t.time})).collect()
}

fn phase_json(p: &PhaseOrphans) -> Value {
    json!({
        "path": p.acknowledged.iter().map(|t| t.gate.as_str()).collect::<Vec<_>>(),
        "acknowledged": transitions_json(&p.acknowledged),
        "orphans": transitions_json(&p.orphans),
        "first_stage": p.first_stage,
    })
}

/// Per-codeword orphan table for one circuit; `phases` selects the columns.
pub fn orphan_table_text(circuit: &Circuit, table: &OrphanTable, phases: &[Phase]) -> String {
    let mut header = vec!["codeword".to_string()];
    header.extend(rail_headers(circuit.n()));
    header.extend(phases.iter().map(|p| format!("{p} phase")));
    let mut rows = vec![header];
    for r in &table.rows {
        let mut row = vec![r.codeword.to_string()];
        row.extend(rail_columns(&r.codeword));
        row.extend(phases.iter().map(|&p| cell(r.phase(p))));
        rows.push(row);
    }
    let mut out = render_grid(&rows);
    for &p in phases {
        out.push_str(&format!("{p}-phase orphan rows: {} of {}\n", table.orphan_rows(p), table.rows.len()));
    }
    out
}

pub fn orphan_table_json(table: &OrphanTable, phases: &[Phase]) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let mut row = serde_json::Map::new();
            row.insert("codeword".into(), json!(r.codeword.to_string()));
            row.insert("rails".into(), json!(r.codeword.rails().to_string()));
            for &p in phases {
                row.insert(p.name().into(), phase_json(r.phase(p)));
            }
            Value::Object(row)
        })
        .collect();
    let counts: serde_json::Map<String, Value> =
        phases.iter().map(|&p| (p.name().to_string(), json!(table.orphan_rows(p)))).collect();
    json!({ "rows": rows, "orphan_rows": counts })
}

/// The three 3-input AND implementations compared side by side.
pub const TABLE1_CIRCUITS: [(Fixture, &str); 3] =
    [(Fixture::Fig3, "fig3 (dims)"), (Fixture::Fig4, "fig4 (fdims)"), (Fixture::Fig5, "fig5 (safe)")];

/// Orphan tables for the three built-in AND circuits.
pub fn table1_data(or_fanin: Option<usize>) -> Result<Vec<OrphanTable>, AnalysisError> {
    TABLE1_CIRCUITS
        .iter()
        .map(|&(f, _)| {
            let c = build_fixture(f, or_fanin).validate().expect("fixtures are well-formed");
            orphan_summary(&c, DEFAULT_ANALYSIS_CAP)
        })
        .collect()
}

pub fn table1_text(tables: &[OrphanTable], phase: Phase) -> String {
    let mut header = rail_headers(3);
    header.extend(TABLE1_CIRCUITS.iter().map(|(_, name)| name.to_string()));
    let mut rows = vec![header];
    for (i, cw) in Codeword::all(3).enumerate() {
        let mut row = rail_columns(&cw);
        row.extend(tables.iter().map(|t| cell(t.rows[i].phase(phase))));
        rows.push(row);
    }
    let mut out = format!("3-input AND, {phase} phase: activated paths and gate orphans\n");
    out.push_str(&render_grid(&rows));
    for ((_, name), t) in TABLE1_CIRCUITS.iter().zip(tables) {
        out.push_str(&format!("{name}: {} of {} rows with orphans\n", t.orphan_rows(phase), t.rows.len()));
    }
    out
}

pub fn table1_json(tables: &[OrphanTable], phase: Phase) -> Value {
    let rows: Vec<Value> = Codeword::all(3)
        .enumerate()
        .map(|(i, cw)| {
            let cells: Vec<Value> = TABLE1_CIRCUITS
                .iter()
                .zip(tables)
                .map(|((f, _), t)| {
                    let mut v = phase_json(t.rows[i].phase(phase));
                    v["circuit"] = json!(f.name());
                    v
                })
                .collect();
            json!({"codeword": cw.to_string(), "rails": cw.rails().to_string(), "cells": cells})
        })
        .collect();
    let summary: Vec<Value> = TABLE1_CIRCUITS
        .iter()
        .zip(tables)
        .map(|((f, _), t)| json!({"circuit": f.name(), "orphan_rows": t.orphan_rows(phase)}))
        .collect();
    json!({"function": "and3", "phase": phase, "rows": rows, "summary": summary})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table1_cells() {
        let t = table1_data(None).unwrap();
        let text = table1_text(&t, Phase::Set);
        assert!(text.contains("OR2-C3-OR3 (Orphan due to OR1↑)"), "{text}");
        assert!(text.contains("C4-OR3 (Orphans due to OR1↑, OR2↑)"));
        assert!(text.contains("fig4 (fdims): 4 of 8 rows with orphans"));
        let first = text.lines().nth(2).unwrap();
        assert!(first.starts_with("0    1    0    1    0    1    C2-OR1"), "{first:?}");
    }

    #[test]
    fn reset_arrows_point_down() {
        let t = table1_data(None).unwrap();
        let text = table1_text(&t, Phase::Reset);
        assert!(!text.contains('↑'));
    }

    #[test]
    fn json_shape() {
        let t = table1_data(None).unwrap();
        let v = table1_json(&t, Phase::Set);
        assert_eq!(v["rows"].as_array().unwrap().len(), 8);
        assert_eq!(v["rows"][3]["cells"][1]["orphans"][1]["gate"], "OR2");
        assert_eq!(v["summary"][1]["orphan_rows"], 4);
    }
}

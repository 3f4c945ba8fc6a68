// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use qsearch_core::{
    build_oracle, build_uniform_prep, build_zero_reflection, grover_operator, improvement_row,
    qubits_for, run_search, series_pow2plus1, sweep, to_csv, to_qasm3, SearchSpec, StateVector,
    MAX_QUBITS,
};

use crate::output::{json, opt_fixed, Format, Record};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<qsearch_core::Error> for CliError {
    fn from(e: qsearch_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn parse_marked(list: &str) -> Result<Vec<usize>, CliError> {
    list.split(',')
        .map(|item| {
            item.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Usage(format!("bad marked index `{item}`: {e}")))
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct Uniformity {
    max_probability: f64,
    min_probability: f64,
    spread: f64,
    leakage: f64,
}

#[derive(Debug, Serialize)]
struct PrepareReport {
    #[serde(rename = "N")]
    n_items: u64,
    n_qubits: usize,
    gate_count: usize,
    depth: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    probabilities: Option<Uniformity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    qasm_path: Option<String>,
}

pub fn prepare(
    n_items: u64,
    probabilities: bool,
    emit_qasm: Option<&Path>,
    format: Format,
) -> Result<String, CliError> {
    let circuit = build_uniform_prep(n_items)?;
    let uniformity = if probabilities {
        if circuit.n_qubits() > MAX_QUBITS {
            return Err(CliError::Usage(format!(
                "N = {n_items} needs {} qubits; --probabilities is limited to {MAX_QUBITS}",
                circuit.n_qubits()
            )));
        }
        let probs = circuit
            .simulate(&StateVector::zero_state(circuit.n_qubits())?)?
            .probabilities();
        let (inside, outside) = probs.split_at(n_items as usize);
        let max = inside.iter().copied().fold(f64::MIN, f64::max);
        let min = inside.iter().copied().fold(f64::MAX, f64::min);
        Some(Uniformity {
            max_probability: max,
            min_probability: min,
            spread: max - min,
            leakage: outside.iter().sum(),
        })
    } else {
        None
    };
    if let Some(path) = emit_qasm {
        write_file(path, &to_qasm3(&circuit))?;
    }

    let report = PrepareReport {
        n_items,
        n_qubits: circuit.n_qubits(),
        gate_count: circuit.gate_count(),
        depth: circuit.depth(),
        probabilities: uniformity,
        qasm_path: emit_qasm.map(|p| p.display().to_string()),
    };
    if format == Format::Json {
        return Ok(json(&report));
    }
    let mut rec = Record::default()
        .field("N", report.n_items)
        .field("qubits", report.n_qubits)
        .field("gates", report.gate_count)
        .field("depth", report.depth);
    if let Some(u) = &report.probabilities {
        rec = rec
            .field("max_probability", format!("{:.15e}", u.max_probability))
            .field("min_probability", format!("{:.15e}", u.min_probability))
            .field("spread", format!("{:.3e}", u.spread))
            .field("leakage", format!("{:.3e}", u.leakage));
    }
    if let Some(p) = &report.qasm_path {
        rec = rec.field("qasm", p);
    }
    Ok(match format {
        Format::Csv => rec.csv(),
        _ => rec.table(),
    })
}

pub fn search(
    n_items: u64,
    marked: &str,
    iterations: Option<u64>,
    shots: Option<u64>,
    seed: Option<u64>,
    format: Format,
) -> Result<String, CliError> {
    let spec = SearchSpec::new(n_items, parse_marked(marked)?)?;
    if spec.n_qubits() > MAX_QUBITS {
        return Err(CliError::Usage(format!(
            "N = {n_items} needs {} qubits; simulation is limited to {MAX_QUBITS}",
            spec.n_qubits()
        )));
    }
    let report = run_search(&spec, iterations, shots, seed)?;
    if format == Format::Json {
        return Ok(json(&report));
    }

    let marked_list = report
        .marked
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(";");
    let mut rec = Record::default()
        .field("N", report.n_items)
        .field("qubits", report.n_qubits)
        .field("M", report.n_marked)
        .field("marked", marked_list)
        .field("iterations", report.iterations)
        .field("oracle_calls", report.oracle_calls)
        .field(
            "success_probability",
            format!("{:.9}", report.success_probability),
        )
        .field(
            "theoretical_probability",
            format!("{:.9}", report.theoretical_probability),
        )
        .field("t_old", report.t_old)
        .field("t_new", report.t_new)
        .field("eta_percent", opt_fixed(report.eta_percent, 4));
    if let (Some(hist), Some(shots), Some(seed)) = (&report.histogram, report.shots, report.seed) {
        let hits: u64 = report.marked.iter().filter_map(|x| hist.get(x)).sum();
        rec = rec
            .field("shots", shots)
            .field("seed", seed)
            .field("marked_hits", hits);
        if format == Format::Csv {
            let cells: Vec<String> = hist.iter().map(|(i, c)| format!("{i}:{c}")).collect();
            rec = rec.field("histogram", cells.join(";"));
        } else {
            let mut top: Vec<(usize, u64)> = hist.iter().map(|(&i, &c)| (i, c)).collect();
            top.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            rec = rec.trailer(format!("{:<26}{}", "histogram (top 16)", "count"));
            for (i, c) in top.into_iter().take(16) {
                rec = rec.trailer(format!("  {i:<24}{c}"));
            }
        }
    }
    Ok(match format {
        Format::Csv => rec.csv(),
        _ => rec.table(),
    })
}

pub fn compare(n_items: u64, n_marked: u64, format: Format) -> Result<String, CliError> {
    let row = improvement_row(n_items, n_marked)?;
    Ok(match format {
        Format::Json => json(&row),
        Format::Csv => to_csv(std::slice::from_ref(&row)),
        Format::Human => Record::default()
            .field("N", row.n_items)
            .field("n", row.n_qubits)
            .field("M", row.n_marked)
            .field("T_old", row.t_old)
            .field("T_new", row.t_new)
            .field("f", opt_fixed(row.f, 4))
            .field("eta_percent", opt_fixed(row.eta_percent, 4))
            .field("f_asymptotic", format!("{:.6}", row.f_asymptotic))
            .field(
                "eta_asymptotic_percent",
                format!("{:.4}", row.eta_asymptotic_percent),
            )
            .table(),
    })
}

#[derive(Debug, Clone, Copy)]
pub enum Family {
    Sweep { from: u64, to: u64 },
    Pow2Plus1 { from: u64, to: u64 },
}

#[derive(Debug, Serialize)]
struct AnalyzeSummary {
    rows: usize,
    out: String,
}

pub fn analyze(
    family: Family,
    n_marked: u64,
    out: &Path,
    format: Format,
) -> Result<String, CliError> {
    let rows = match family {
        Family::Sweep { from, to } => sweep(from, to, n_marked)?,
        Family::Pow2Plus1 { from, to } => {
            let exp = |v: u64| {
                u32::try_from(v).map_err(|_| CliError::Usage(format!("exponent {v} out of range")))
            };
            series_pow2plus1(exp(from)?, exp(to)?, n_marked)?
        }
    };
    write_file(out, &to_csv(&rows))?;
    let summary = AnalyzeSummary {
        rows: rows.len(),
        out: out.display().to_string(),
    };
    Ok(match format {
        Format::Json => json(&summary),
        Format::Csv => Record::default()
            .field("rows", summary.rows)
            .field("out", summary.out)
            .csv(),
        Format::Human => Record::default()
            .field("rows", summary.rows)
            .field("out", summary.out)
            .table(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Prep,
    Oracle,
    ZeroReflection,
    Grover,
}

pub fn export_qasm(
    block: BlockKind,
    n_items: u64,
    marked: Option<&str>,
    out: &Path,
) -> Result<String, CliError> {
    let spec = || -> Result<SearchSpec, CliError> {
        let list =
            marked.ok_or_else(|| CliError::Usage("--marked is required for this block".into()))?;
        Ok(SearchSpec::new(n_items, parse_marked(list)?)?)
    };
    let (text, gates, depth) = match block {
        BlockKind::Prep => {
            let c = build_uniform_prep(n_items)?;
            (to_qasm3(&c), c.gate_count(), c.depth())
        }
        BlockKind::Oracle => {
            let c = build_oracle(&spec()?)?;
            (to_qasm3(&c), c.gate_count(), c.depth())
        }
        BlockKind::ZeroReflection => {
            if n_items < 2 {
                return Err(CliError::Usage(format!(
                    "N must be at least 2, got {n_items}"
                )));
            }
            let c = build_zero_reflection(qubits_for(n_items))?.with_n_items(n_items);
            (to_qasm3(&c), c.gate_count(), c.depth())
        }
        BlockKind::Grover => {
            let spec = spec()?;
            let q = grover_operator(&build_uniform_prep(n_items)?, &build_oracle(&spec)?)?;
            (q.to_qasm3(), q.circuit().gate_count(), q.circuit().depth())
        }
    };
    write_file(out, &text)?;
    Ok(format!(
        "wrote {gates} gates (depth {depth}) to {}\n",
        out.display()
    ))
}

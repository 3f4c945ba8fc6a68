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

//! OpenQASM 3 export.
//!
//! Output is a single register `q`; qubit `q[i]` is bit `i` of the basis
//! index. Controls are written with `ctrl @` / `negctrl @` modifiers, one
//! modifier per run of same-polarity controls, so zero-controls appear
//! as-is rather than as X-conjugated positive controls.

use std::fmt::Write;

use crate::circuit::{Circuit, GateKind, GateOp};

/// Renders `circuit` as a self-contained OpenQASM 3 program.
pub fn to_qasm3(circuit: &Circuit) -> String {
    to_qasm3_with_notes(circuit, &[])
}

/// Same as [`to_qasm3`], with extra `//` comment lines after the metadata block.
pub fn to_qasm3_with_notes(circuit: &Circuit, notes: &[&str]) -> String {
    let mut out = String::new();
    out.push_str("OPENQASM 3.0;\n");
    out.push_str("include \"stdgates.inc\";\n");
    let _ = writeln!(out, "// label: {}", circuit.label());
    if let Some(n) = circuit.n_items() {
        let _ = writeln!(out, "// N: {n}");
    }
    let _ = writeln!(out, "// gate_count: {}", circuit.gate_count());
    let _ = writeln!(out, "// depth: {}", circuit.depth());
    for note in notes {
        let _ = writeln!(out, "// {note}");
    }
    let _ = writeln!(out, "qubit[{}] q;", circuit.n_qubits());
    for op in circuit.ops() {
        write_op(&mut out, op);
    }
    out
}

/// Angle with 17 significant digits, enough to round-trip any `f64`.
pub fn format_angle(theta: f64) -> String {
    format!("{theta:.16e}")
}

fn write_op(out: &mut String, op: &GateOp) {
    let mut runs: Vec<(bool, usize)> = Vec::new();
    for c in &op.controls {
        match runs.last_mut() {
            Some((on_one, len)) if *on_one == c.on_one => *len += 1,
            _ => runs.push((c.on_one, 1)),
        }
    }
    for (on_one, len) in runs {
        out.push_str(if on_one { "ctrl" } else { "negctrl" });
        if len > 1 {
            let _ = write!(out, "({len})");
        }
        out.push_str(" @ ");
    }
    out.push_str(op.kind.name());
    if let GateKind::Ry(theta) = op.kind {
        let _ = write!(out, "({})", format_angle(theta));
    }
    let args: Vec<String> = op
        .controls
        .iter()
        .map(|c| c.qubit)
        .chain(std::iter::once(op.target))
        .map(|q| format!("q[{q}]"))
        .collect();
    let _ = writeln!(out, " {};", args.join(", "));
}

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

//! Shared inputs for the criterion benches.

use qsearch_core::{Circuit, Control, GateKind, StateVector, Unitary2};

/// Hadamard on every qubit of |0...0>.
pub fn plus_state(n_qubits: usize) -> StateVector {
    let mut s = StateVector::zero_state(n_qubits).expect("width within simulator cap");
    for q in 0..n_qubits {
        s.apply_gate(&[], q, &Unitary2::h()).expect("valid qubit");
    }
    s
}

/// A deterministic mixed circuit: a layer of RY, then a zero-controlled H
/// chain, then a fully controlled Z.
pub fn layered_circuit(n_qubits: usize) -> Circuit {
    let mut c = Circuit::new(n_qubits, "bench");
    for q in 0..n_qubits {
        c.ry(0.1 + q as f64 * 0.07, q).expect("valid qubit");
    }
    for q in 1..n_qubits {
        c.controlled(GateKind::H, vec![Control::zero(q - 1)], q)
            .expect("valid qubit");
    }
    let top = n_qubits - 1;
    c.controlled(GateKind::Z, (0..top).map(Control::one).collect(), top)
        .expect("valid qubit");
    c
}

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

//! Uniform superposition over the first `N` basis states.
//!
//! For `N = 2^n` this is a wall of Hadamards. Otherwise, write
//! `N = 2^l_0 + 2^l_1 + ... + 2^l_k` with `l_0 < ... < l_k`. The circuit
//! splits amplitude off one set bit at a time with an RY rotation, and each
//! split is followed by Hadamards (zero-controlled on the bit that was just
//! rotated) that spread the remaining weight over a dyadic block of
//! indices. The gate count is `2k + l_k <= 3 * ceil(log2 N)` on exactly
//! `ceil(log2 N)` qubits.

use crate::circuit::{Circuit, GateKind};
use crate::error::{invalid, Result};
use crate::state::{Control, StateVector, MAX_QUBITS};

/// Largest `N` accepted: integers up to here convert to `f64` exactly.
pub const MAX_ITEMS: u64 = 1 << 52;

/// Set-bit positions of `N`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitDecomposition {
    pub n_items: u64,
    pub positions: Vec<u32>,
}

impl BitDecomposition {
    /// `ceil(log2 N)`.
    pub fn n_qubits(&self) -> usize {
        qubits_for(self.n_items)
    }

    pub fn is_power_of_two(&self) -> bool {
        self.positions.len() == 1
    }
}

/// `ceil(log2 n)` for `n >= 1`.
pub fn qubits_for(n_items: u64) -> usize {
    if n_items <= 1 {
        0
    } else {
        (u64::BITS - (n_items - 1).leading_zeros()) as usize
    }
}

pub fn bit_positions(n_items: u64) -> Result<BitDecomposition> {
    if n_items < 2 {
        return invalid(format!("N must be at least 2, got {n_items}"));
    }
    let positions = (0..u64::BITS).filter(|b| n_items >> b & 1 == 1).collect();
    Ok(BitDecomposition { n_items, positions })
}

fn split_angle(part: u64, whole: u64) -> f64 {
    let ratio = part as f64 / whole as f64;
    -2.0 * ratio.sqrt().min(1.0).acos()
}

/// Builds the preparation circuit for `N` items on `ceil(log2 N)` qubits.
pub fn build_uniform_prep(n_items: u64) -> Result<Circuit> {
    if n_items > MAX_ITEMS {
        return invalid(format!("N must not exceed 2^52, got {n_items}"));
    }
    let bits = bit_positions(n_items)?;
    let n = bits.n_qubits();
    let mut c = Circuit::new(n, "prep").with_n_items(n_items);

    if bits.is_power_of_two() {
        for q in 0..n {
            c.h(q)?;
        }
        return Ok(c);
    }

    let l: Vec<usize> = bits.positions.iter().map(|&p| p as usize).collect();
    let k = l.len() - 1;

    for &pos in &l[1..] {
        c.x(pos)?;
    }
    for q in 0..l[0] {
        c.h(q)?;
    }

    let mut done = 1u64 << l[0];
    c.ry(split_angle(done, n_items), l[1])?;
    for q in l[0]..l[1] {
        c.controlled(GateKind::H, vec![Control::zero(l[1])], q)?;
    }

    for m in 1..k {
        let theta = split_angle(1u64 << l[m], n_items - done);
        c.controlled(GateKind::Ry(theta), vec![Control::zero(l[m])], l[m + 1])?;
        for q in l[m]..l[m + 1] {
            c.controlled(GateKind::H, vec![Control::zero(l[m + 1])], q)?;
        }
        done += 1u64 << l[m];
    }
    Ok(c)
}

/// Simulates [`build_uniform_prep`] on |0...0>.
pub fn prepare_uniform(n_items: u64) -> Result<StateVector> {
    let circuit = build_uniform_prep(n_items)?;
    if circuit.n_qubits() > MAX_QUBITS {
        return invalid(format!(
            "N = {n_items} needs {} qubits; simulation is capped at {MAX_QUBITS}",
            circuit.n_qubits()
        ));
    }
    circuit.simulate(&StateVector::zero_state(circuit.n_qubits())?)
}

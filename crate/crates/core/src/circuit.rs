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

//! Gate-level circuit representation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::state::{control_masks, Control, StateVector, Unitary2};

/// The gate alphabet. Multi-controlled variants are expressed through
/// [`GateOp::controls`], never as separate kinds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum GateKind {
    X,
    H,
    Z,
    /// Y-axis rotation by the given angle in radians.
    Ry(f64),
}

impl GateKind {
    pub fn matrix(&self) -> Unitary2 {
        match *self {
            GateKind::X => Unitary2::x(),
            GateKind::H => Unitary2::h(),
            GateKind::Z => Unitary2::z(),
            GateKind::Ry(theta) => Unitary2::ry(theta),
        }
    }

    pub fn inverse(&self) -> Self {
        match *self {
            GateKind::Ry(theta) => GateKind::Ry(-theta),
            other => other,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "x",
            GateKind::H => "h",
            GateKind::Z => "z",
            GateKind::Ry(_) => "ry",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateOp {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl GateOp {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Self {
            kind,
            target,
            controls: Vec::new(),
        }
    }

    pub fn controlled(kind: GateKind, target: usize, controls: Vec<Control>) -> Self {
        Self {
            kind,
            target,
            controls,
        }
    }

    /// Target followed by control qubits.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target).chain(self.controls.iter().map(|c| c.qubit))
    }

    fn validate(&self, n_qubits: usize) -> Result<()> {
        if let GateKind::Ry(theta) = self.kind {
            if !theta.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "non-finite rotation angle {theta}"
                )));
            }
        }
        control_masks(n_qubits, &self.controls, self.target).map(|_| ())
    }
}

/// An ordered gate list over a fixed register.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateOp>,
    label: String,
    n_items: Option<u64>,
}

impl Circuit {
    pub fn new(n_qubits: usize, label: impl Into<String>) -> Self {
        Self {
            n_qubits,
            ops: Vec::new(),
            label: label.into(),
            n_items: None,
        }
    }

    /// Records the search-space size the circuit was built for. Only used
    /// as export metadata.
    pub fn with_n_items(mut self, n_items: u64) -> Self {
        self.n_items = Some(n_items);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_items(&self) -> Option<u64> {
        self.n_items
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Appends an op after checking its qubit indices against the register.
    pub fn push(&mut self, op: GateOp) -> Result<()> {
        op.validate(self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    pub fn x(&mut self, target: usize) -> Result<()> {
        self.push(GateOp::new(GateKind::X, target))
    }

    pub fn h(&mut self, target: usize) -> Result<()> {
        self.push(GateOp::new(GateKind::H, target))
    }

    pub fn ry(&mut self, theta: f64, target: usize) -> Result<()> {
        self.push(GateOp::new(GateKind::Ry(theta), target))
    }

    pub fn controlled(
        &mut self,
        kind: GateKind,
        controls: Vec<Control>,
        target: usize,
    ) -> Result<()> {
        self.push(GateOp::controlled(kind, target, controls))
    }

    /// `a` followed by `b`. Label and metadata are taken from `a`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let mut out = self.clone();
        out.ops.extend(other.ops.iter().cloned());
        Ok(out)
    }

    /// Reversed op order with every rotation angle negated. X, H and Z are
    /// self-inverse, and controls carry over unchanged.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            ops: self
                .ops
                .iter()
                .rev()
                .map(|op| GateOp {
                    kind: op.kind.inverse(),
                    target: op.target,
                    controls: op.controls.clone(),
                })
                .collect(),
            label: self.label.clone(),
            n_items: self.n_items,
        }
    }

    pub fn gate_count(&self) -> usize {
        self.ops.len()
    }

    /// Number of layers under ASAP scheduling: each op is placed one layer
    /// after the latest op that touches any of its qubits (target or control).
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.n_qubits];
        let mut depth = 0;
        for op in &self.ops {
            let layer = op.qubits().map(|q| frontier[q]).max().unwrap_or(0) + 1;
            for q in op.qubits() {
                frontier[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    /// Applies the ops in order to a copy of `input`.
    pub fn simulate(&self, input: &StateVector) -> Result<StateVector> {
        let mut state = input.clone();
        self.apply_to(&mut state)?;
        Ok(state)
    }

    /// In-place variant of [`simulate`](Self::simulate).
    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits() != self.n_qubits {
            return Err(Error::WidthMismatch {
                left: self.n_qubits,
                right: state.n_qubits(),
            });
        }
        for op in &self.ops {
            state.apply_gate(&op.controls, op.target, &op.kind.matrix())?;
        }
        Ok(())
    }
}

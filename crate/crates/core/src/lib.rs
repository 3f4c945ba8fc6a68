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

//! Grover search over search spaces of arbitrary size.
//!
//! The usual Hadamard preparation only produces a uniform superposition
//! over `2^n` items, so searching `N` items traditionally pads the space to
//! the next power of two. This crate replaces that step with an
//! ancilla-free preparation circuit of `O(log N)` gates that is uniform
//! over exactly `N` items, and simulates the resulting search on a dense
//! state vector.
//!
//! - [`state`]: state vectors, single-qubit kernels with polarity-aware
//!   controls, phase flips, sampling.
//! - [`circuit`]: gate-level IR with gate count, depth, inversion and simulation.
//! - [`qasm`]: OpenQASM 3 export.
//! - [`stateprep`]: the uniform preparation circuit.
//! - [`grover`]: oracle, zero reflection, Grover iterate, search driver and
//!   generic amplitude amplification.
//! - [`analysis`]: iteration counts for padded versus exact search, and
//!   sweeps rendered as CSV.
//!
//! ```
//! use qsearch_core::{run_search, SearchSpec};
//!
//! let spec = SearchSpec::new(273, [9]).unwrap();
//! let report = run_search(&spec, None, None, None).unwrap();
//! assert_eq!((report.t_old, report.t_new), (17, 12));
//! assert!(report.success_probability > 0.99);
//! ```

pub mod analysis;
pub mod circuit;
pub mod error;
pub mod grover;
pub mod qasm;
pub mod state;
pub mod stateprep;

pub use analysis::{
    asymptotic_eta, asymptotic_factor, eta, improvement_factor, improvement_row, series_pow2plus1,
    sweep, t_new, t_old, to_csv, ImprovementRow,
};
pub use circuit::{Circuit, GateKind, GateOp};
pub use error::{Error, Result};
pub use grover::{
    amplitude_amplify, build_oracle, build_zero_reflection, grover_operator, initial_angle,
    optimal_iterations, run_search, search_state, theoretical_success, GroverOperator,
    SearchReport, SearchSpec,
};
pub use qasm::to_qasm3;
pub use state::{
    init_zero_state, ComplexAmp, Control, Histogram, StateVector, Unitary2, MAX_QUBITS,
};
pub use stateprep::{
    bit_positions, build_uniform_prep, prepare_uniform, qubits_for, BitDecomposition, MAX_ITEMS,
};

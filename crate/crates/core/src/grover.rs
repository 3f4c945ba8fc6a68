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

//! Oracle and reflection blocks, the Grover iterate, and the search driver.
//!
//! One iteration is `Q = -A U_0 A^dagger U_P`, where `U_P` flips the sign
//! of the marked basis states, `U_0` flips the sign of |0...0>, and `A`
//! is the state-preparation circuit. With `A` the uniform preparation over
//! `N` items, the search runs on `ceil(log2 N)` qubits with no padding of
//! the search space.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis;
use crate::circuit::{Circuit, GateKind};
use crate::error::{invalid, Error, Result};
use crate::qasm;
use crate::state::{Control, Histogram, StateVector};
use crate::stateprep::{build_uniform_prep, qubits_for};

/// A search instance: `N` items, of which `marked` are good.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    n_items: u64,
    marked: BTreeSet<usize>,
}

impl SearchSpec {
    pub fn new<I>(n_items: u64, marked: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        if n_items < 2 {
            return invalid(format!("N must be at least 2, got {n_items}"));
        }
        let marked: BTreeSet<usize> = marked.into_iter().collect();
        if marked.is_empty() {
            return invalid("marked set must not be empty");
        }
        if let Some(&x) = marked.iter().next_back().filter(|&&x| x as u64 >= n_items) {
            return invalid(format!("marked index {x} is not below N = {n_items}"));
        }
        Ok(Self { n_items, marked })
    }

    pub fn n_items(&self) -> u64 {
        self.n_items
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn n_marked(&self) -> u64 {
        self.marked.len() as u64
    }

    pub fn n_qubits(&self) -> usize {
        qubits_for(self.n_items)
    }
}

/// Outcome of [`run_search`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    #[serde(rename = "N")]
    pub n_items: u64,
    #[serde(rename = "n")]
    pub n_qubits: usize,
    #[serde(rename = "M")]
    pub n_marked: u64,
    pub marked: Vec<usize>,
    pub iterations: u64,
    /// One oracle application per iteration.
    pub oracle_calls: u64,
    pub success_probability: f64,
    pub theoretical_probability: f64,
    pub t_old: u64,
    pub t_new: u64,
    pub eta_percent: Option<f64>,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
    pub histogram: Option<BTreeMap<usize, u64>>,
}

fn flip_block(n_qubits: usize, index: usize, c: &mut Circuit) -> Result<()> {
    let flips: Vec<usize> = (0..n_qubits).filter(|q| index >> q & 1 == 0).collect();
    for &q in &flips {
        c.x(q)?;
    }
    let top = n_qubits - 1;
    c.controlled(GateKind::Z, (0..top).map(Control::one).collect(), top)?;
    for &q in &flips {
        c.x(q)?;
    }
    Ok(())
}

/// Phase oracle: for each marked `x`, X on the zero bits of `x`, a Z on the
/// top qubit controlled by all others, then the X's again.
pub fn build_oracle(spec: &SearchSpec) -> Result<Circuit> {
    let n = spec.n_qubits();
    let mut c = Circuit::new(n, "oracle").with_n_items(spec.n_items);
    for &x in &spec.marked {
        flip_block(n, x, &mut c)?;
    }
    Ok(c)
}

/// `I - 2|0><0|` as an X / multi-controlled-Z / X sandwich.
pub fn build_zero_reflection(n_qubits: usize) -> Result<Circuit> {
    if n_qubits == 0 {
        return invalid("zero reflection needs at least one qubit");
    }
    let mut c = Circuit::new(n_qubits, "zero-reflection");
    flip_block(n_qubits, 0, &mut c)?;
    Ok(c)
}

/// One Grover iterate as a circuit plus the global sign it omits.
#[derive(Debug, Clone, PartialEq)]
pub struct GroverOperator {
    circuit: Circuit,
    global_phase_minus: bool,
}

/// Assembles `[oracle; prep^-1; zero reflection; prep]`. The leading minus
/// of `Q` is carried as a flag and applied by [`GroverOperator::apply`].
pub fn grover_operator(prep: &Circuit, oracle: &Circuit) -> Result<GroverOperator> {
    if prep.n_qubits() != oracle.n_qubits() {
        return Err(Error::WidthMismatch {
            left: prep.n_qubits(),
            right: oracle.n_qubits(),
        });
    }
    let mut circuit = oracle
        .compose(&prep.inverse())?
        .compose(&build_zero_reflection(prep.n_qubits())?)?
        .compose(prep)?
        .with_label("grover");
    if let Some(n) = prep.n_items().or(oracle.n_items()) {
        circuit = circuit.with_n_items(n);
    }
    Ok(GroverOperator {
        circuit,
        global_phase_minus: true,
    })
}

impl GroverOperator {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn global_phase_minus(&self) -> bool {
        self.global_phase_minus
    }

    /// Applies `Q` once, sign included.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        self.circuit.apply_to(state)?;
        if self.global_phase_minus {
            state.apply_global_phase_minus();
        }
        Ok(())
    }

    /// QASM export of the gate sequence with the omitted global phase noted.
    pub fn to_qasm3(&self) -> String {
        qasm::to_qasm3_with_notes(
            &self.circuit,
            &["global phase -1 per iteration omitted (no measurement effect)"],
        )
    }
}

/// `floor((pi/4) * sqrt(N/M))`. Zero is returned as-is when `M/N` is large.
pub fn optimal_iterations(n_items: u64, n_marked: u64) -> Result<u64> {
    analysis::t_new(n_items, n_marked)
}

/// `sin^2((2k+1) * asin(sqrt(M/N)))`.
pub fn theoretical_success(n_items: u64, n_marked: u64, k: u64) -> Result<f64> {
    if n_marked == 0 || n_marked > n_items {
        return invalid(format!("need 1 <= M <= N, got N={n_items}, M={n_marked}"));
    }
    let ratio = n_marked as f64 / n_items as f64;
    if k == 0 {
        return Ok(ratio);
    }
    let theta = ratio.sqrt().asin();
    Ok(((2 * k + 1) as f64 * theta).sin().powi(2))
}

// Applies Q with the phase flips done directly on the amplitudes; the
// preparation circuit and its inverse are simulated gate by gate.
struct Amplifier {
    prep: Circuit,
    prep_inv: Circuit,
    good: Vec<usize>,
}

impl Amplifier {
    fn new(prep: &Circuit, good: &BTreeSet<usize>) -> Result<Self> {
        if good.is_empty() {
            return invalid("good set must not be empty");
        }
        let dim = 1usize
            .checked_shl(prep.n_qubits() as u32)
            .unwrap_or(usize::MAX);
        if let Some(&index) = good.iter().next_back().filter(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        Ok(Self {
            prep: prep.clone(),
            prep_inv: prep.inverse(),
            good: good.iter().copied().collect(),
        })
    }

    fn initial_state(&self) -> Result<StateVector> {
        self.prep
            .simulate(&StateVector::zero_state(self.prep.n_qubits())?)
    }

    fn step(&self, state: &mut StateVector) -> Result<()> {
        state.phase_flip_indices(self.good.iter().copied())?;
        self.prep_inv.apply_to(state)?;
        state.phase_flip_indices([0])?;
        self.prep.apply_to(state)?;
        state.apply_global_phase_minus();
        Ok(())
    }

    fn run(&self, mut state: StateVector, k: u64) -> Result<StateVector> {
        for _ in 0..k {
            self.step(&mut state)?;
        }
        Ok(state)
    }
}

/// `asin(||P A|0>||)`: the angle between the prepared state and the bad subspace.
pub fn initial_angle(prep: &Circuit, good: &BTreeSet<usize>) -> Result<f64> {
    let amp = Amplifier::new(prep, good)?;
    let weight = amp.initial_state()?.probability_of(good.iter().copied());
    Ok(weight.sqrt().min(1.0).asin())
}

/// Runs `k` iterations of amplitude amplification for an arbitrary
/// preparation circuit and returns the final state.
///
/// Fails with [`Error::Degenerate`] when the prepared state has no overlap
/// with the good set, since no number of iterations can help.
pub fn amplitude_amplify(prep: &Circuit, good: &BTreeSet<usize>, k: u64) -> Result<StateVector> {
    let amp = Amplifier::new(prep, good)?;
    let start = amp.initial_state()?;
    let weight = start.probability_of(good.iter().copied());
    if weight <= f64::EPSILON * f64::EPSILON {
        return Err(Error::Degenerate(
            "prepared state has no overlap with the good set".into(),
        ));
    }
    amp.run(start, k)
}

/// State after `k` iterations (default: the optimal count) over the exact
/// search space.
pub fn search_state(spec: &SearchSpec, k: Option<u64>) -> Result<StateVector> {
    let k = match k {
        Some(k) => k,
        None => optimal_iterations(spec.n_items, spec.n_marked())?,
    };
    let prep = build_uniform_prep(spec.n_items)?;
    amplitude_amplify(&prep, &spec.marked, k)
}

/// Full search: amplify, read off the success probability, optionally sample.
pub fn run_search(
    spec: &SearchSpec,
    k: Option<u64>,
    shots: Option<u64>,
    seed: Option<u64>,
) -> Result<SearchReport> {
    let (n_items, n_marked) = (spec.n_items, spec.n_marked());
    let k = match k {
        Some(k) => k,
        None => optimal_iterations(n_items, n_marked)?,
    };
    let state = search_state(spec, Some(k))?;
    let success = state
        .probability_of(spec.marked.iter().copied())
        .clamp(0.0, 1.0);

    let (histogram, seed) = match shots {
        Some(shots) => {
            let seed = seed.unwrap_or(0);
            let hist: Histogram = state.sample(shots, seed)?;
            (Some(hist), Some(seed))
        }
        None => (None, seed),
    };

    Ok(SearchReport {
        n_items,
        n_qubits: spec.n_qubits(),
        n_marked,
        marked: spec.marked.iter().copied().collect(),
        iterations: k,
        oracle_calls: k,
        success_probability: success,
        theoretical_probability: theoretical_success(n_items, n_marked, k)?,
        t_old: analysis::t_old(n_items, n_marked)?,
        t_new: analysis::t_new(n_items, n_marked)?,
        eta_percent: analysis::eta(n_items, n_marked)?,
        shots,
        seed,
        histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stateprep::prepare_uniform;
    use num_complex::Complex64;

    fn max_err(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn spec_validation() {
        assert!(SearchSpec::new(1, [0]).is_err());
        assert!(SearchSpec::new(10, []).is_err());
        assert!(SearchSpec::new(10, [10]).is_err());
        let s = SearchSpec::new(10, [3, 3, 9]).unwrap();
        assert_eq!(s.n_marked(), 2);
        assert_eq!(s.n_qubits(), 4);
    }

    #[test]
    fn oracle_for_nine_of_273() {
        let spec = SearchSpec::new(273, [9]).unwrap();
        let oracle = build_oracle(&spec).unwrap();
        assert_eq!(oracle.n_qubits(), 9);
        let start = prepare_uniform(273).unwrap();
        let out = oracle.simulate(&start).unwrap();
        let mut expected = start.clone();
        expected.phase_flip_indices([9]).unwrap();
        assert!(max_err(&out, &expected) < 1e-12);
        // 9 = 0b000001001: qubits 1, 2, 4..8 are conjugated
        let xs: Vec<usize> = oracle.ops().iter().take(7).map(|op| op.target).collect();
        assert_eq!(xs, vec![1, 2, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn oracle_all_ones_is_bare_cz() {
        let spec = SearchSpec::new(4, [3]).unwrap();
        let oracle = build_oracle(&spec).unwrap();
        assert_eq!(oracle.ops().len(), 1);
        let op = &oracle.ops()[0];
        assert_eq!(
            (op.kind, op.target, op.controls.clone()),
            (GateKind::Z, 1, vec![Control::one(0)])
        );
    }

    #[test]
    fn one_qubit_blocks() {
        let z = build_oracle(&SearchSpec::new(2, [1]).unwrap()).unwrap();
        assert_eq!(z.ops().len(), 1);
        let u0 = build_zero_reflection(1).unwrap();
        let kinds: Vec<GateKind> = u0.ops().iter().map(|op| op.kind).collect();
        assert_eq!(kinds, vec![GateKind::X, GateKind::Z, GateKind::X]);
        let mut s =
            StateVector::from_amplitudes(vec![Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)])
                .unwrap();
        u0.apply_to(&mut s).unwrap();
        assert!(
            (s.amplitudes()[0].re + 0.6).abs() < 1e-12
                && (s.amplitudes()[1].re - 0.8).abs() < 1e-12
        );
        assert!(build_zero_reflection(0).is_err());
    }

    #[test]
    fn zero_reflection_nine_qubits() {
        let u0 = build_zero_reflection(9).unwrap();
        assert_eq!(u0.gate_count(), 19);
        let start = prepare_uniform(300).unwrap();
        let mut expected = start.clone();
        expected.phase_flip_indices([0]).unwrap();
        let out = u0.simulate(&start).unwrap();
        assert!(max_err(&out, &expected) < 1e-12);
        assert!(max_err(&u0.simulate(&out).unwrap(), &start) < 1e-12);
    }

    #[test]
    fn operator_assembly() {
        let prep = build_uniform_prep(5).unwrap();
        let oracle = build_oracle(&SearchSpec::new(5, [2]).unwrap()).unwrap();
        let q = grover_operator(&prep, &oracle).unwrap();
        assert!(q.global_phase_minus());
        let expected = oracle.gate_count() + 2 * prep.gate_count() + 7;
        assert_eq!(q.circuit().gate_count(), expected);
        assert_eq!(q.circuit().n_items(), Some(5));
        assert!(q.to_qasm3().contains("// global phase -1"));
        let wide = build_uniform_prep(9).unwrap();
        assert!(grover_operator(&wide, &oracle).is_err());
    }

    #[test]
    fn one_iteration_for_four_items() {
        let spec = SearchSpec::new(4, [2]).unwrap();
        let q = grover_operator(
            &build_uniform_prep(4).unwrap(),
            &build_oracle(&spec).unwrap(),
        )
        .unwrap();
        let mut s = prepare_uniform(4).unwrap();
        q.apply(&mut s).unwrap();
        assert!((s.probabilities()[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rotation_law_at_k_equal_one() {
        for (n_items, marked) in [(5u64, vec![1usize]), (273, vec![9]), (100, vec![3, 50, 99])] {
            let spec = SearchSpec::new(n_items, marked.clone()).unwrap();
            let theta = (marked.len() as f64 / n_items as f64).sqrt().asin();
            let psi = prepare_uniform(n_items).unwrap();
            let q = grover_operator(
                &build_uniform_prep(n_items).unwrap(),
                &build_oracle(&spec).unwrap(),
            )
            .unwrap();
            let mut out = psi.clone();
            q.apply(&mut out).unwrap();

            // normalized good/bad components of the start state
            let mut good = vec![Complex64::new(0.0, 0.0); psi.dim()];
            let mut bad = good.clone();
            for (i, a) in psi.amplitudes().iter().enumerate() {
                if marked.contains(&i) {
                    good[i] = *a
                } else {
                    bad[i] = *a
                }
            }
            let scale = |v: Vec<Complex64>| {
                let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
                StateVector::from_amplitudes(v.into_iter().map(|a| a / n).collect()).unwrap()
            };
            let (good, bad) = (scale(good), scale(bad));
            let g = good.inner_product(&out).unwrap();
            let b = bad.inner_product(&out).unwrap();
            assert!((g - Complex64::new((3.0 * theta).sin(), 0.0)).norm() < 1e-9);
            assert!((b - Complex64::new((3.0 * theta).cos(), 0.0)).norm() < 1e-9);
            // nothing outside span{good, bad}
            let outside = out
                .amplitudes()
                .iter()
                .zip(good.amplitudes().iter().zip(bad.amplitudes()))
                .map(|(o, (gi, bi))| (o - g * gi - b * bi).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(outside <= 1e-9, "{outside}");
        }
    }

    #[test]
    fn optimal_counts() {
        assert_eq!(optimal_iterations(273, 1).unwrap(), 12);
        assert_eq!(optimal_iterations(512, 1).unwrap(), 17);
        assert_eq!(optimal_iterations(4, 1).unwrap(), 1);
        assert_eq!(optimal_iterations(3, 2).unwrap(), 0);
        assert!(optimal_iterations(3, 0).is_err());
        assert!(optimal_iterations(3, 4).is_err());
    }

    #[test]
    fn closed_form_success() {
        assert_eq!(theoretical_success(273, 1, 0).unwrap(), 1.0 / 273.0);
        assert!((theoretical_success(273, 1, 12).unwrap() - 0.996776).abs() < 1e-6);
        assert!((theoretical_success(5, 1, 1).unwrap() - 0.968).abs() < 1e-12);
        assert!(theoretical_success(5, 0, 1).is_err());
    }

    #[test]
    fn search_examples() {
        let r = run_search(&SearchSpec::new(273, [9]).unwrap(), None, None, None).unwrap();
        assert_eq!(
            (r.iterations, r.oracle_calls, r.t_old, r.t_new),
            (12, 12, 17, 12)
        );
        assert!((r.success_probability - r.theoretical_probability).abs() < 1e-9);
        assert!(r.histogram.is_none());

        let r = run_search(&SearchSpec::new(4, [2]).unwrap(), Some(1), None, None).unwrap();
        assert!((r.success_probability - 1.0).abs() < 1e-12);

        let r = run_search(&SearchSpec::new(8, [1, 5]).unwrap(), None, None, None).unwrap();
        assert_eq!(r.iterations, 1);
        assert!((r.success_probability - 1.0).abs() < 1e-12);

        let r = run_search(&SearchSpec::new(3, [0, 2]).unwrap(), None, None, None).unwrap();
        assert_eq!(r.iterations, 0);
        assert!((r.success_probability - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn search_with_shots() {
        let spec = SearchSpec::new(273, [9]).unwrap();
        let r = run_search(&spec, None, Some(4096), Some(7)).unwrap();
        let hist = r.histogram.as_ref().unwrap();
        assert_eq!(hist.values().sum::<u64>(), 4096);
        let hits = *hist.get(&9).unwrap_or(&0) as f64;
        let p = r.success_probability;
        let sigma = (4096.0 * p * (1.0 - p)).sqrt();
        assert!((hits - 4096.0 * p).abs() <= 5.0 * sigma);
        assert!(hits >= 0.95 * 4096.0);
        assert_eq!(r.seed, Some(7));
        assert_eq!(run_search(&spec, None, Some(4096), Some(7)).unwrap(), r);
    }

    #[test]
    fn fast_path_matches_circuit_operator() {
        let spec = SearchSpec::new(45, [0, 7, 44]).unwrap();
        let prep = build_uniform_prep(45).unwrap();
        let q = grover_operator(&prep, &build_oracle(&spec).unwrap()).unwrap();
        let mut via_circuit = prepare_uniform(45).unwrap();
        for k in 0..4u64 {
            let fast = search_state(&spec, Some(k)).unwrap();
            assert!(max_err(&fast, &via_circuit) < 1e-12, "k={k}");
            q.apply(&mut via_circuit).unwrap();
        }
    }

    #[test]
    fn generic_amplification() {
        // Hadamard preparation: textbook Grover on 6 qubits
        let mut prep = Circuit::new(6, "hadamard");
        for q in 0..6 {
            prep.h(q).unwrap();
        }
        let good = set(&[37]);
        let theta = initial_angle(&prep, &good).unwrap();
        assert!((theta - (1.0f64 / 64.0).sqrt().asin()).abs() < 1e-12);
        let k = (std::f64::consts::PI / (4.0 * theta)).floor() as u64;
        let s = amplitude_amplify(&prep, &good, k).unwrap();
        let want = ((2 * k + 1) as f64 * theta).sin().powi(2);
        assert!((s.probability_of([37]) - want).abs() < 1e-9);

        // uniform prep reproduces search_state
        let spec = SearchSpec::new(100, [4, 60]).unwrap();
        let a = amplitude_amplify(&build_uniform_prep(100).unwrap(), spec.marked(), 5).unwrap();
        assert!(max_err(&a, &search_state(&spec, Some(5)).unwrap()) < 1e-12);

        // fully good start: theta = pi/2, nothing to do
        let all: BTreeSet<usize> = (0..64).collect();
        assert!((initial_angle(&prep, &all).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-7);
        let s = amplitude_amplify(&prep, &all, 0).unwrap();
        assert!((s.probability_of(all.iter().copied()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplification_errors() {
        let prep = build_uniform_prep(5).unwrap();
        assert!(matches!(
            amplitude_amplify(&prep, &set(&[6]), 1),
            Err(Error::Degenerate(_))
        ));
        assert!(amplitude_amplify(&prep, &set(&[]), 1).is_err());
        assert!(matches!(
            amplitude_amplify(&prep, &set(&[8]), 1),
            Err(Error::IndexOutOfRange { index: 8, dim: 8 })
        ));
    }
}

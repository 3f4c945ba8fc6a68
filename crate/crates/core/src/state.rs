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

//! Dense state vectors and in-place gate kernels.
//!
//! Qubit `q` corresponds to bit `q` of the basis index, so qubit 0 is the
//! least significant bit. Every index computation in the crate, including
//! the OpenQASM emitter, uses this convention.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};

/// A single complex amplitude.
pub type ComplexAmp = Complex64;

/// Shot histogram: basis index to count. Indices that were never drawn are absent.
pub type Histogram = BTreeMap<usize, u64>;

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: usize = 24;

/// Tolerance used for unitarity and normalization checks.
pub const NORM_TOLERANCE: f64 = 1e-12;

// Registers at or above this width run the gate kernel on the rayon pool.
const PARALLEL_MIN_QUBITS: usize = 14;
const PARALLEL_CHUNK: usize = 1 << 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2x2 complex matrix acting on one qubit, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    m: [[Complex64; 2]; 2],
}

impl Unitary2 {
    /// Builds a matrix, rejecting non-finite or non-unitary input.
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Self { m };
        if m.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return invalid("matrix entries must be finite");
        }
        if !u.is_unitary(NORM_TOLERANCE) {
            return invalid("matrix is not unitary");
        }
        Ok(u)
    }

    fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            m: [
                [Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
                [Complex64::new(c, 0.0), Complex64::new(d, 0.0)],
            ],
        }
    }

    pub fn identity() -> Self {
        Self::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn x() -> Self {
        Self::real(0.0, 1.0, 1.0, 0.0)
    }

    pub fn z() -> Self {
        Self::real(1.0, 0.0, 0.0, -1.0)
    }

    pub fn h() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::real(s, s, s, -s)
    }

    /// `RY(theta) = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]`.
    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::real(c, -s, s, c)
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self {
            m: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.m, &other.m);
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self { m }
    }

    /// True when `U^dagger U` is the identity within `tol` (max entry error).
    pub fn is_unitary(&self, tol: f64) -> bool {
        let p = self.adjoint().mul(self);
        let id = Self::identity();
        p.m.iter()
            .flatten()
            .zip(id.m.iter().flatten())
            .all(|(a, b)| (a - b).norm() <= tol)
    }
}

/// A control qubit together with the value it must hold for the gate to fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Control {
    pub qubit: usize,
    /// `true`: fires when the qubit is |1>. `false`: fires when it is |0> (zero-control).
    pub on_one: bool,
}

impl Control {
    pub fn one(qubit: usize) -> Self {
        Self {
            qubit,
            on_one: true,
        }
    }

    pub fn zero(qubit: usize) -> Self {
        Self {
            qubit,
            on_one: false,
        }
    }
}

/// Checks target/control indices and returns the (mask, value) pair a basis
/// index must satisfy for the gate to fire.
pub(crate) fn control_masks(
    n_qubits: usize,
    controls: &[Control],
    target: usize,
) -> Result<(usize, usize)> {
    if target >= n_qubits {
        return Err(Error::QubitOutOfRange {
            index: target,
            n_qubits,
        });
    }
    let mut mask = 1usize << target;
    let mut value = 0usize;
    for c in controls {
        if c.qubit >= n_qubits {
            return Err(Error::QubitOutOfRange {
                index: c.qubit,
                n_qubits,
            });
        }
        let bit = 1usize << c.qubit;
        if mask & bit != 0 {
            return Err(Error::DuplicateQubit(c.qubit));
        }
        mask |= bit;
        if c.on_one {
            value |= bit;
        }
    }
    Ok((mask & !(1usize << target), value))
}

/// The simulation state: `2^n_qubits` complex amplitudes with unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return invalid(format!("qubit count must be in 1..={MAX_QUBITS}, got {n}"));
    }
    Ok(())
}

impl StateVector {
    /// |0...0> on `n` qubits.
    pub fn zero_state(n: usize) -> Result<Self> {
        Self::basis_state(n, 0)
    }

    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        check_width(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n_qubits: n, amps })
    }

    /// Wraps raw amplitudes. The length must be a power of two and the norm
    /// must be 1 within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return invalid(format!("amplitude count {dim} is not a power of two >= 2"));
        }
        let n = dim.trailing_zeros() as usize;
        check_width(n)?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return invalid("amplitudes must be finite");
        }
        let state = Self { n_qubits: n, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return invalid(format!("state norm {norm} is not 1"));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Option<Complex64> {
        self.amps.get(index).copied()
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `u` to `target`, conditioned on every control holding its polarity.
    ///
    /// For each pair of basis indices `(i0, i1)` that differ only in the
    /// target bit, the pair is replaced by `u * (a[i0], a[i1])` when the
    /// control bits of `i0` match, and left alone otherwise.
    pub fn apply_gate(&mut self, controls: &[Control], target: usize, u: &Unitary2) -> Result<()> {
        let (mask, value) = control_masks(self.n_qubits, controls, target)?;
        debug_assert!(u.is_unitary(NORM_TOLERANCE));
        let stride = 1usize << target;
        let [[u00, u01], [u10, u11]] = u.m;

        let kernel = |base: usize, lo: &mut [Complex64], hi: &mut [Complex64]| {
            for (j, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                if (base + j) & mask == value {
                    let (x, y) = (*a, *b);
                    *a = u00 * x + u01 * y;
                    *b = u10 * x + u11 * y;
                }
            }
        };

        if self.n_qubits >= PARALLEL_MIN_QUBITS {
            let sub = stride.min(PARALLEL_CHUNK);
            self.amps
                .par_chunks_mut(2 * stride)
                .enumerate()
                .for_each(|(blk, chunk)| {
                    let (lo, hi) = chunk.split_at_mut(stride);
                    lo.par_chunks_mut(sub)
                        .zip(hi.par_chunks_mut(sub))
                        .enumerate()
                        .for_each(|(s, (l, h))| kernel(blk * 2 * stride + s * sub, l, h));
                });
        } else {
            for (blk, chunk) in self.amps.chunks_mut(2 * stride).enumerate() {
                let (lo, hi) = chunk.split_at_mut(stride);
                kernel(blk * 2 * stride, lo, hi);
            }
        }
        Ok(())
    }

    /// Negates the amplitude of every listed basis index. Duplicates are ignored.
    pub fn phase_flip_indices<I>(&mut self, indices: I) -> Result<()>
    where
        I: IntoIterator<Item = usize>,
    {
        let dim = self.dim();
        let set: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&index) = set.iter().next_back().filter(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        for i in set {
            self.amps[i] = -self.amps[i];
        }
        Ok(())
    }

    /// Multiplies the whole state by -1.
    pub fn apply_global_phase_minus(&mut self) {
        for a in &mut self.amps {
            *a = -*a;
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Draws `shots` measurements in the computational basis.
    ///
    /// Sampling is inverse-CDF over [`probabilities`](Self::probabilities),
    /// driven by `ChaCha8Rng::seed_from_u64(seed)` drawing one `f64` in
    /// `[0, 1)` per shot. Same state, shots and seed give the same histogram.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<Histogram> {
        if shots == 0 {
            return invalid("shots must be at least 1");
        }
        let mut acc = 0.0;
        let cdf: Vec<f64> = self
            .amps
            .iter()
            .map(|a| {
                acc += a.norm_sqr();
                acc
            })
            .collect();
        // Rounding can leave the CDF slightly below 1; draws past the end go
        // to the last index that carries weight.
        let last = self
            .amps
            .iter()
            .rposition(|a| a.norm_sqr() > 0.0)
            .unwrap_or(0);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hist = Histogram::new();
        for _ in 0..shots {
            let u: f64 = rng.random();
            let idx = cdf.partition_point(|&c| c <= u).min(last);
            *hist.entry(idx).or_insert(0) += 1;
        }
        Ok(hist)
    }

    /// `<self|other> = sum_i conj(self_i) * other_i`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::WidthMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Total probability carried by `indices` (duplicates counted once).
    pub fn probability_of<I>(&self, indices: I) -> f64
    where
        I: IntoIterator<Item = usize>,
    {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        set.into_iter()
            .filter_map(|i| self.amps.get(i))
            .map(|a| a.norm_sqr())
            .sum()
    }
}

/// |0...0> on `n` qubits; `n` must lie in `1..=MAX_QUBITS`.
pub fn init_zero_state(n: usize) -> Result<StateVector> {
    StateVector::zero_state(n)
}

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

//! Test-only oracles, kept independent of the library's kernels.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_complex::Complex64;
use qsearch_core::{Circuit, GateKind};

pub type Matrix = Vec<Vec<Complex64>>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn gate_matrix(kind: GateKind) -> [[Complex64; 2]; 2] {
    let r = |x: f64| Complex64::new(x, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match kind {
        GateKind::X => [[r(0.0), r(1.0)], [r(1.0), r(0.0)]],
        GateKind::H => [[r(s), r(s)], [r(s), r(-s)]],
        GateKind::Z => [[r(1.0), r(0.0)], [r(0.0), r(-1.0)]],
        GateKind::Ry(t) => {
            let (sn, cs) = (t / 2.0).sin_cos();
            [[r(cs), r(-sn)], [r(sn), r(cs)]]
        }
    }
}

/// A gate with explicit (qubit, fires-on-one) controls.
#[derive(Debug, Clone, PartialEq)]
pub struct RawGate {
    pub kind: GateKind,
    pub controls: Vec<(usize, bool)>,
    pub target: usize,
}

pub fn raw_gates(c: &Circuit) -> Vec<RawGate> {
    c.ops()
        .iter()
        .map(|op| RawGate {
            kind: op.kind,
            controls: op.controls.iter().map(|c| (c.qubit, c.on_one)).collect(),
            target: op.target,
        })
        .collect()
}

/// Full 2^n x 2^n matrix of one gate, filled column by column from the
/// definition of a controlled single-qubit gate.
#[allow(clippy::needless_range_loop)]
pub fn dense_gate(n: usize, g: &RawGate) -> Matrix {
    let dim = 1 << n;
    let u = gate_matrix(g.kind);
    let mut m = vec![vec![ZERO; dim]; dim];
    for col in 0..dim {
        let fires = g
            .controls
            .iter()
            .all(|&(q, on)| ((col >> q) & 1 == 1) == on);
        if !fires {
            m[col][col] = ONE;
            continue;
        }
        let bit = (col >> g.target) & 1;
        for (out, u_row) in u.iter().enumerate() {
            let row = (col & !(1 << g.target)) | (out << g.target);
            m[row][col] = u_row[bit];
        }
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let dim = a.len();
    let mut out = vec![vec![ZERO; dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i][k];
            if aik == ZERO {
                continue;
            }
            for j in 0..dim {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Product of the per-gate matrices, later gates on the left.
pub fn dense_circuit(n: usize, gates: &[RawGate]) -> Matrix {
    let dim = 1 << n;
    let mut acc: Matrix = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { ONE } else { ZERO }).collect())
        .collect();
    for g in gates {
        acc = matmul(&dense_gate(n, g), &acc);
    }
    acc
}

/// Applies gates to a vector by a plain loop over basis indices, without
/// stride tricks or masks.
pub fn naive_apply(n: usize, gates: &[RawGate], state: &mut [Complex64]) {
    assert_eq!(state.len(), 1 << n);
    for g in gates {
        let u = gate_matrix(g.kind);
        let before = state.to_vec();
        for (i, slot) in state.iter_mut().enumerate() {
            let fires = g.controls.iter().all(|&(q, on)| ((i >> q) & 1 == 1) == on);
            if !fires {
                continue;
            }
            let bit = (i >> g.target) & 1;
            let i0 = i & !(1 << g.target);
            let i1 = i0 | (1 << g.target);
            *slot = u[bit][0] * before[i0] + u[bit][1] * before[i1];
        }
    }
}

/// Reads the subset of OpenQASM 3 produced by the exporter: one `qubit[n] q;`
/// register, gates x/h/z/ry with optional `ctrl`/`negctrl` modifiers.
pub fn parse_qasm(text: &str) -> (usize, Vec<RawGate>) {
    let mut width = None;
    let mut gates = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty()
            || line.starts_with("//")
            || line.starts_with("OPENQASM")
            || line.starts_with("include")
        {
            continue;
        }
        let line = line.strip_suffix(';').expect("statement ends with ';'");
        if let Some(rest) = line.strip_prefix("qubit[") {
            let (n, name) = rest.split_once(']').unwrap();
            assert_eq!(name.trim(), "q");
            width = Some(n.parse::<usize>().unwrap());
            continue;
        }
        let mut parts: Vec<&str> = line.split(" @ ").collect();
        let body = parts.pop().unwrap();
        let mut polarities = Vec::new();
        for m in parts {
            let (name, count) = match m.split_once('(') {
                Some((name, c)) => (name, c.trim_end_matches(')').parse::<usize>().unwrap()),
                None => (m, 1),
            };
            let on = match name {
                "ctrl" => true,
                "negctrl" => false,
                other => panic!("unknown modifier {other}"),
            };
            polarities.extend(std::iter::repeat_n(on, count));
        }
        let (head, args) = body.split_once(' ').unwrap();
        let kind = match head {
            "x" => GateKind::X,
            "h" => GateKind::H,
            "z" => GateKind::Z,
            _ if head.starts_with("ry(") => GateKind::Ry(head[3..head.len() - 1].parse().unwrap()),
            other => panic!("unknown gate {other}"),
        };
        let qubits: Vec<usize> = args
            .split(',')
            .map(|a| {
                let a = a.trim();
                a.strip_prefix("q[")
                    .unwrap()
                    .strip_suffix(']')
                    .unwrap()
                    .parse()
                    .unwrap()
            })
            .collect();
        assert_eq!(qubits.len(), polarities.len() + 1, "arity in `{line}`");
        let (target, ctrl) = qubits.split_last().unwrap();
        gates.push(RawGate {
            kind,
            controls: ctrl.iter().copied().zip(polarities).collect(),
            target: *target,
        });
    }
    (width.expect("register declaration"), gates)
}

/// Inverse of a gate list: reversed, rotation angles negated.
pub fn invert(gates: &[RawGate]) -> Vec<RawGate> {
    gates
        .iter()
        .rev()
        .map(|g| RawGate {
            kind: match g.kind {
                GateKind::Ry(t) => GateKind::Ry(-t),
                k => k,
            },
            ..g.clone()
        })
        .collect()
}

// pi to 60 decimals
const PI_DIGITS: &str = "3141592653589793238462643383279502884197169399375105820974944";
const PI_SCALE_DIGITS: u32 = 60;

/// `floor((pi/4) * sqrt(space / marked))` in exact integer arithmetic,
/// bracketing pi between two 60-digit rationals. Panics if the bracket is
/// too wide to decide the floor.
pub fn exact_floor_quarter_pi_sqrt(space: u64, marked: u64) -> u64 {
    let pi_lo: BigUint = PI_DIGITS.parse().unwrap();
    let pi_hi = &pi_lo + 1u32;
    let scale = BigUint::from(10u32).pow(2 * PI_SCALE_DIGITS);
    // floor(sqrt(pi^2 * space / (16 * marked)))
    let floor_for = |pi: &BigUint| {
        let num = pi * pi * BigUint::from(space);
        let den = &scale * BigUint::from(16u64 * marked);
        (num / den).sqrt()
    };
    let (lo, hi) = (floor_for(&pi_lo), floor_for(&pi_hi));
    assert_eq!(
        lo, hi,
        "pi bracket too wide for space={space}, marked={marked}"
    );
    u64::try_from(lo).unwrap()
}

/// `ceil(log2 n)` by repeated doubling.
pub fn ceil_log2(n: u64) -> u32 {
    let mut bits = 0;
    while (1u64 << bits) < n {
        bits += 1;
    }
    bits
}

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

//! Iteration-count arithmetic for exact versus rounded-up search spaces.
//!
//! `t_old` is the optimal iteration count when the search space is padded
//! to `2^n` items with `n = ceil(log2 N)`; `t_new` is the count for the
//! exact `N`. Ratios that would divide by zero are `None`.

use std::f64::consts::FRAC_PI_4;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::stateprep::{qubits_for, MAX_ITEMS};

/// Header line of [`to_csv`].
pub const CSV_HEADER: &str = "N,n,M,T_old,T_new,f,eta_percent,f_asymptotic,eta_asymptotic_percent";

/// `(1 - 1/sqrt(2)) * 100`, the supremum of [`asymptotic_eta`].
pub const ETA_ASYMPTOTE_PERCENT: f64 = 29.289321881345245;

/// One comparison between padded and exact search.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImprovementRow {
    #[serde(rename = "N")]
    pub n_items: u64,
    #[serde(rename = "n")]
    pub n_qubits: usize,
    #[serde(rename = "M")]
    pub n_marked: u64,
    pub t_old: u64,
    pub t_new: u64,
    pub f: Option<f64>,
    pub eta_percent: Option<f64>,
    pub f_asymptotic: f64,
    pub eta_asymptotic_percent: f64,
}

fn check_domain(n_items: u64, n_marked: u64) -> Result<()> {
    if n_marked == 0 || n_marked > n_items {
        return invalid(format!("need 1 <= M <= N, got N={n_items}, M={n_marked}"));
    }
    if n_items > MAX_ITEMS {
        return invalid(format!("N must not exceed 2^52, got {n_items}"));
    }
    Ok(())
}

fn floor_quarter_pi_sqrt(space: u64, n_marked: u64) -> u64 {
    (FRAC_PI_4 * (space as f64 / n_marked as f64).sqrt()).floor() as u64
}

/// `floor((pi/4) * sqrt(2^n / M))`.
pub fn t_old(n_items: u64, n_marked: u64) -> Result<u64> {
    check_domain(n_items, n_marked)?;
    Ok(floor_quarter_pi_sqrt(1u64 << qubits_for(n_items), n_marked))
}

/// `floor((pi/4) * sqrt(N / M))`.
pub fn t_new(n_items: u64, n_marked: u64) -> Result<u64> {
    check_domain(n_items, n_marked)?;
    Ok(floor_quarter_pi_sqrt(n_items, n_marked))
}

/// `t_old / t_new`, or `None` when `t_new` is 0.
pub fn improvement_factor(n_items: u64, n_marked: u64) -> Result<Option<f64>> {
    let (old, new) = (t_old(n_items, n_marked)?, t_new(n_items, n_marked)?);
    Ok((new > 0).then(|| old as f64 / new as f64))
}

/// Percentage reduction `(1 - t_new / t_old) * 100`, or `None` when `t_old` is 0.
pub fn eta(n_items: u64, n_marked: u64) -> Result<Option<f64>> {
    let (old, new) = (t_old(n_items, n_marked)?, t_new(n_items, n_marked)?);
    Ok((old > 0).then(|| (1.0 - new as f64 / old as f64) * 100.0))
}

fn check_items(n_items: u64) -> Result<()> {
    if !(2..=MAX_ITEMS).contains(&n_items) {
        return invalid(format!("N must lie in 2..=2^52, got {n_items}"));
    }
    Ok(())
}

/// Large-`N/M` limit of the improvement factor, `sqrt(2^n / N)`. Always in `[1, sqrt 2)`.
pub fn asymptotic_factor(n_items: u64) -> Result<f64> {
    check_items(n_items)?;
    let padded = (1u64 << qubits_for(n_items)) as f64;
    Ok((padded / n_items as f64).sqrt())
}

/// `(1 - sqrt(N / 2^n)) * 100`. Always in `[0, ETA_ASYMPTOTE_PERCENT)`.
pub fn asymptotic_eta(n_items: u64) -> Result<f64> {
    check_items(n_items)?;
    let padded = (1u64 << qubits_for(n_items)) as f64;
    Ok((1.0 - (n_items as f64 / padded).sqrt()) * 100.0)
}

pub fn improvement_row(n_items: u64, n_marked: u64) -> Result<ImprovementRow> {
    check_items(n_items)?;
    Ok(ImprovementRow {
        n_items,
        n_qubits: qubits_for(n_items),
        n_marked,
        t_old: t_old(n_items, n_marked)?,
        t_new: t_new(n_items, n_marked)?,
        f: improvement_factor(n_items, n_marked)?,
        eta_percent: eta(n_items, n_marked)?,
        f_asymptotic: asymptotic_factor(n_items)?,
        eta_asymptotic_percent: asymptotic_eta(n_items)?,
    })
}

/// One row per `N` in `from..=to` with `M <= N`, ascending.
pub fn sweep(from: u64, to: u64, n_marked: u64) -> Result<Vec<ImprovementRow>> {
    if from < 2 || from > to {
        return invalid(format!("empty or invalid range {from}..{to}"));
    }
    if to > MAX_ITEMS {
        return invalid(format!("N must not exceed 2^52, got {to}"));
    }
    if n_marked == 0 {
        return invalid("M must be at least 1");
    }
    (from.max(n_marked)..=to)
        .into_par_iter()
        .map(|n_items| improvement_row(n_items, n_marked))
        .collect()
}

/// Rows for `N = 2^(n-1) + 1`, `n` in `n_from..=n_to`, skipping `N < M`.
pub fn series_pow2plus1(n_from: u32, n_to: u32, n_marked: u64) -> Result<Vec<ImprovementRow>> {
    if n_from < 2 || n_from > n_to || n_to > 52 {
        return invalid(format!(
            "exponent range {n_from}..{n_to} must satisfy 2 <= from <= to <= 52"
        ));
    }
    if n_marked == 0 {
        return invalid("M must be at least 1");
    }
    (n_from..=n_to)
        .map(|n| (1u64 << (n - 1)) + 1)
        .filter(|&n_items| n_items >= n_marked)
        .map(|n_items| improvement_row(n_items, n_marked))
        .collect()
}

fn opt(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.6}")).unwrap_or_default()
}

/// CSV with [`CSV_HEADER`], LF line endings, six decimals, empty fields for undefined ratios.
pub fn to_csv(rows: &[ImprovementRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6},{:.6}",
            r.n_items,
            r.n_qubits,
            r.n_marked,
            r.t_old,
            r.t_new,
            opt(r.f),
            opt(r.eta_percent),
            r.f_asymptotic,
            r.eta_asymptotic_percent
        );
    }
    out
}

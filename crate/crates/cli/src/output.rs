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

//! Rendering of command results as a fixed-width table, JSON or CSV.

use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Ordered key/value fields shared by the table and CSV renderers.
#[derive(Debug, Default)]
pub struct Record {
    fields: Vec<(&'static str, String)>,
    trailer: Vec<String>,
}

impl Record {
    pub fn field(mut self, key: &'static str, value: impl ToString) -> Self {
        self.fields.push((key, value.to_string()));
        self
    }

    /// Extra lines shown only in the table form.
    pub fn trailer(mut self, line: String) -> Self {
        self.trailer.push(line);
        self
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            out.push_str(&format!("{k:<26}{v}\n"));
        }
        for line in &self.trailer {
            out.push_str(line);
            out.push('\n');
        }
        out
    }

    pub fn csv(&self) -> String {
        let keys: Vec<&str> = self.fields.iter().map(|(k, _)| *k).collect();
        let values: Vec<String> = self.fields.iter().map(|(_, v)| csv_escape(v)).collect();
        format!("{}\n{}\n", keys.join(","), values.join(","))
    }
}

fn csv_escape(v: &str) -> String {
    if v.contains([',', '"', '\n']) {
        format!("\"{}\"", v.replace('"', "\"\""))
    } else {
        v.to_string()
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn opt_fixed(v: Option<f64>, decimals: usize) -> String {
    v.map(|x| format!("{x:.decimals$}")).unwrap_or_default()
}

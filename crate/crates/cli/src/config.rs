// SPDX-License-Identifier: Apache-2.0

//! `key=value` defaults file. Flags given on the command line win.

use std::collections::BTreeMap;
use std::path::Path;

use geonet::economics::CostParams;

use crate::CliError;

const COST_KEYS: [&str; 7] = ["c1", "c2", "c_cp", "c_c", "c_ct", "s_pc", "s_p"];
const KNOWN_KEYS: [&str; 5] = ["delta", "q1", "q2", "trials", "seed"];

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::invalid("config", format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::invalid("config", format!("line {}: expected key=value", i + 1))
            })?;
            let key = key.trim();
            if !COST_KEYS.contains(&key) && !KNOWN_KEYS.contains(&key) {
                return Err(CliError::invalid(
                    "config",
                    format!("line {}: unknown key '{key}'", i + 1),
                ));
            }
            values.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    /// Applies comma-separated `key=value` pairs on top of the file values.
    pub fn overlay(&mut self, pairs: Option<&str>) -> Result<(), CliError> {
        let Some(pairs) = pairs else { return Ok(()) };
        let joined = pairs.split(',').collect::<Vec<_>>().join("\n");
        self.values.extend(Config::parse(&joined)?.values);
        Ok(())
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| CliError::invalid("config", format!("bad value '{v}' for {key}")))
            })
            .transpose()
    }

    pub fn costs(&self) -> Result<CostParams, CliError> {
        let mut p = CostParams::default();
        let slots: [(&str, &mut f64); 7] = [
            ("c1", &mut p.c1),
            ("c2", &mut p.c2),
            ("c_cp", &mut p.c_cp),
            ("c_c", &mut p.c_c),
            ("c_ct", &mut p.c_ct),
            ("s_pc", &mut p.s_pc),
            ("s_p", &mut p.s_p),
        ];
        for (key, slot) in slots {
            if let Some(v) = self.get(key)? {
                *slot = v;
            }
        }
        p.validate()
            .map_err(|e| CliError::invalid("costs", e.to_string()))?;
        Ok(p)
    }
}

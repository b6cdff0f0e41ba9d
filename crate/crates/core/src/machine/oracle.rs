//! Pluggable total oracles.
//!
//! An oracle is a total decidable map from naturals to naturals. The default
//! answers 0 everywhere; the only file-loadable form is a finite table
//! extended by 0. Assumptions are only ever made about what an oracle can
//! decide, never about what it cannot, so a table is as honest as it gets at
//! desk scale.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::num::Nat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default)]
pub enum Oracle {
    /// Constantly zero.
    #[default]
    Zero,
    /// Finite table; unlisted inputs map to 0.
    Table(Arc<BTreeMap<Nat, Nat>>),
}

impl Oracle {
    pub fn table(entries: impl IntoIterator<Item = (Nat, Nat)>) -> Oracle {
        Oracle::Table(Arc::new(entries.into_iter().collect()))
    }

    pub fn query(&self, n: &Nat) -> Nat {
        match self {
            Oracle::Zero => Nat::default(),
            Oracle::Table(t) => t.get(n).cloned().unwrap_or_default(),
        }
    }

    /// Parse the table file format: one `input output` decimal pair per line,
    /// `#` starts a comment, blank lines ignored.
    pub fn parse_table(text: &str) -> Result<Oracle> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let mut fields = line.split_whitespace();
            let Some(input) = fields.next() else {
                continue;
            };
            let output = fields.next().ok_or_else(|| {
                Error::InvalidOracle(format!("line {}: missing output", lineno + 1))
            })?;
            if fields.next().is_some() {
                return Err(Error::InvalidOracle(format!(
                    "line {}: trailing fields",
                    lineno + 1
                )));
            }
            let parse = |s: &str| {
                s.parse::<Nat>().map_err(|_| {
                    Error::InvalidOracle(format!("line {}: bad number {:?}", lineno + 1, s))
                })
            };
            map.insert(parse(input)?, parse(output)?);
        }
        Ok(Oracle::Table(Arc::new(map)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_zero() {
        let o = Oracle::default();
        assert_eq!(o.query(&Nat::from(17u32)), Nat::default());
    }

    #[test]
    fn table_parsing() {
        let o = Oracle::parse_table("# demo\n5 1\n 7 9 # tail comment\n\n").unwrap();
        assert_eq!(o.query(&Nat::from(5u32)), Nat::from(1u32));
        assert_eq!(o.query(&Nat::from(7u32)), Nat::from(9u32));
        assert_eq!(o.query(&Nat::from(6u32)), Nat::default());
    }

    #[test]
    fn table_rejects_garbage() {
        assert!(Oracle::parse_table("5").is_err());
        assert!(Oracle::parse_table("5 x").is_err());
        assert!(Oracle::parse_table("5 1 2").is_err());
    }
}

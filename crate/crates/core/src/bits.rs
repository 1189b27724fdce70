use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Branch choices for the torsions of v4..vn, leftmost bit first.
///
/// Bit `j` belongs to vertex `j + 4`. A `0` selects the positive sine branch,
/// a `1` the negative one. As an integer the leftmost bit is the most
/// significant, so `0101` is candidate 5.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![false; len])
    }

    pub fn from_index(index: u64, len: usize) -> Self {
        assert!(len <= 64, "bit strings longer than 64 bits have no integer index");
        Self((0..len).map(|j| (index >> (len - 1 - j)) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> u64 {
        self.0.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bit(&self, pos: usize) -> bool {
        self.0[pos]
    }

    /// Sign of the torsion sine selected for vertex `v` (4 <= v <= n).
    pub fn sign_for_vertex(&self, v: usize) -> f64 {
        if self.0[v - 4] {
            -1.0
        } else {
            1.0
        }
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.0
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }

    /// Flips every position belonging to vertices `>= v`.
    pub fn flip_from_vertex(&self, v: usize) -> Self {
        let start = v.saturating_sub(4).min(self.0.len());
        let mut bits = self.0.clone();
        for b in &mut bits[start..] {
            *b = !*b;
        }
        Self(bits)
    }

    pub fn expect_len(&self, expected: usize) -> Result<()> {
        if self.0.len() == expected {
            Ok(())
        } else {
            Err(Error::BitLength { expected, actual: self.0.len() })
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::BitString(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest admissible speed. Candidate evaluation forms products
/// `a·s` with `a ≤ 2·s_max`, which stay below 2¹²⁶ and therefore fit in
/// `u128` without overflow.
pub const MAX_SPEED: u64 = 1 << 62;

/// Nonempty, strictly increasing set of positive integer speeds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SpeedSet(Vec<u64>);

impl SpeedSet {
    /// Builds a speed set from any ordering; rejects zero, duplicates and
    /// the empty list.
    pub fn new(mut speeds: Vec<u64>) -> Result<Self, Error> {
        if speeds.is_empty() {
            return Err(Error::EmptySpeedSet);
        }
        speeds.sort_unstable();
        if speeds[0] == 0 {
            return Err(Error::InvalidSpeed(0));
        }
        if let Some(&s) = speeds.iter().find(|&&s| s > MAX_SPEED) {
            return Err(Error::InvalidSpeed(s));
        }
        if let Some(w) = speeds.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSpeed(w[0] as i128));
        }
        Ok(SpeedSet(speeds))
    }

    /// Like [`SpeedSet::new`] but collapses repeated values.
    pub fn from_values_dedup(mut speeds: Vec<u64>) -> Result<Self, Error> {
        speeds.sort_unstable();
        speeds.dedup();
        Self::new(speeds)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_speed(&self) -> u64 {
        *self.0.last().expect("nonempty")
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn gcd(&self) -> u64 {
        self.0.iter().fold(0u64, |g, &s| g.gcd(&s))
    }

    pub fn contains(&self, s: u64) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    /// Every speed multiplied by `c`.
    pub fn scaled(&self, c: u64) -> Result<Self, Error> {
        let v = self
            .0
            .iter()
            .map(|&s| s.checked_mul(c).ok_or(Error::InvalidSpeed(s)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(v)
    }

    pub fn into_vec(self) -> Vec<u64> {
        self.0
    }
}

impl<'de> Deserialize<'de> for SpeedSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        let set = SpeedSet::new(v.clone()).map_err(serde::de::Error::custom)?;
        if set.0 != v {
            return Err(serde::de::Error::custom(
                "speeds must be strictly increasing",
            ));
        }
        Ok(set)
    }
}

impl fmt::Debug for SpeedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for SpeedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl TryFrom<Vec<u64>> for SpeedSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self, Error> {
        SpeedSet::new(v)
    }
}

impl TryFrom<&[u64]> for SpeedSet {
    type Error = Error;
    fn try_from(v: &[u64]) -> Result<Self, Error> {
        SpeedSet::new(v.to_vec())
    }
}

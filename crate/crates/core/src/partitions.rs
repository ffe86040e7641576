//! Integer partitions: Jordan types of nilpotent matrices and labels of strata.
//!
//! A partition is kept as its weakly decreasing sequence of positive parts.
//! The empty partition is the partition of 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from parts that are already weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The partition `(1, ..., 1)` of `n`.
    pub fn ones(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts, l(p).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The partitioned integer |p|.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest_part(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    /// Transpose of the Young diagram.
    pub fn dual(&self) -> Partition {
        let width = self.largest_part();
        let parts = (1..=width)
            .map(|row| self.0.iter().take_while(|&&p| p >= row).count())
            .collect();
        Partition(parts)
    }

    /// Dominance order: true iff every prefix sum of `self` is at most the
    /// corresponding prefix sum of `other`.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let len = self.len().max(other.len());
        let (mut lhs, mut rhs) = (0, 0);
        for i in 0..len {
            lhs += self.0.get(i).copied().unwrap_or(0);
            rhs += other.0.get(i).copied().unwrap_or(0);
            if lhs > rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `p - 1`: subtract one from every part and drop the parts that vanish.
    /// Undefined for `(1, ..., 1)` and for the empty partition.
    pub fn minus_one(&self) -> Result<Partition> {
        if self.is_all_ones() {
            return Err(Error::Precondition(format!("{self} - 1 is undefined")));
        }
        Ok(Partition(self.0.iter().filter(|&&p| p >= 2).map(|p| p - 1).collect()))
    }

    /// `p - 1`, read as the empty partition when p is all ones.
    pub fn minus_one_or_empty(&self) -> Partition {
        Partition(self.0.iter().filter(|&&p| p >= 2).map(|p| p - 1).collect())
    }

    /// l(p - 1), read as 0 when p is all ones.
    pub fn len_minus_one(&self) -> usize {
        self.0.iter().filter(|&&p| p >= 2).count()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// Sum of squares of the parts.
    pub fn square_sum(&self) -> usize {
        self.0.iter().map(|p| p * p).sum()
    }
}

/// All partitions of `n` with parts at most `max_part`, lexicographically decreasing.
pub fn enumerate_partitions(n: usize, max_part: usize) -> Vec<Partition> {
    fn rec(remaining: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for part in (1..=cap.min(remaining)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if max_part == 0 {
        if n == 0 {
            out.push(Partition::empty());
        }
        return out;
    }
    rec(n, max_part, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [p1,p2,...], got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

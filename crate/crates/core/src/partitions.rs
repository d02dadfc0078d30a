//! Partitions, integer weights and partitions in a box.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{DetvarError, Result};

/// A partition in canonical form (weakly decreasing, no trailing zeros).
///
/// The derived order is the lexicographic order on parts, which for
/// canonical partitions agrees with comparing zero-padded sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Accepts trailing zeros; rejects increasing sequences.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(DetvarError::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1, 1, ..., 1)` with `k` parts.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `i` (zero beyond the length).
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        Partition(
            (0..cols)
                .map(|j| self.0.iter().take_while(|&&p| p as usize > j).count() as u32)
                .collect(),
        )
    }

    pub fn fits_in(&self, rows: usize, cols: u32) -> bool {
        self.rows() <= rows && self.part(0) <= cols
    }

    /// The parts padded with zeros to length `len`, as a weight.
    pub fn to_weight(&self, len: usize) -> Result<WeightVector> {
        if self.rows() > len {
            return Err(DetvarError::InvalidPartition(format!("{self} has more than {len} rows")));
        }
        let mut e: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        e.resize(len, 0);
        Ok(WeightVector(e))
    }

    /// Lexicographic comparison (the canonical total order).
    pub fn lex_compare(&self, other: &Partition) -> std::cmp::Ordering {
        self.cmp(other)
    }

    /// Partitions `mu ⊃ self` with `mu / self` a horizontal strip of size `k`.
    pub fn horizontal_strips(&self, k: u32, max_rows: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let len = (self.rows() + 1).min(max_rows.max(self.rows()));
        let mut cur = vec![0u32; len];
        fn rec(lam: &Partition, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == cur.len() {
                if left == 0 {
                    out.push(Partition::new(cur.clone()).expect("interlacing keeps order"));
                }
                return;
            }
            let lo = lam.part(i);
            let hi = if i == 0 { lo + left } else { lam.part(i - 1).min(lo + left) };
            for v in lo..=hi {
                cur[i] = v;
                rec(lam, i + 1, left - (v - lo), cur, out);
            }
        }
        rec(self, 0, k, &mut cur, &mut out);
        out
    }

    /// Partitions `mu ⊃ self` with `mu / self` a vertical strip of size `k`
    /// and at most `max_rows` rows.
    pub fn vertical_strips(&self, k: u32, max_rows: usize) -> Vec<Partition> {
        self.conjugate()
            .horizontal_strips(k, usize::MAX)
            .into_iter()
            .map(|p| p.conjugate())
            .filter(|p| p.rows() <= max_rows)
            .collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = DetvarError;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Parses `"2,1"`; the empty partition is `"0"` (an empty string is also
/// accepted).
impl FromStr for Partition {
    type Err = DetvarError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| DetvarError::InvalidPartition(format!("cannot parse {t:?} as a part")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `t` with at most `max_rows` rows, lex-sorted.
pub fn partitions_of(t: u32, max_rows: usize) -> Vec<Partition> {
    fn rec(left: u32, max_part: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=max_part.min(left)).rev() {
            cur.push(p);
            rec(left - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, t, max_rows, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// An integer weight of `GL_m`, `m` the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Self {
        WeightVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        WeightVector(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn shifted(&self, c: i64) -> WeightVector {
        WeightVector(self.0.iter().map(|e| e + c).collect())
    }

    /// Weight of the dual representation.
    pub fn dual(&self) -> WeightVector {
        WeightVector(self.0.iter().rev().map(|e| -e).collect())
    }

    /// The partition obtained after subtracting the last entry, together with
    /// that entry.
    pub fn to_partition_shift(&self) -> Result<(Partition, i64)> {
        if !self.is_dominant() {
            return Err(DetvarError::NotDominant(self.0.clone()));
        }
        let c = self.0.last().copied().unwrap_or(0);
        let parts = self.0.iter().map(|e| (e - c) as u32).collect();
        Ok((Partition::new(parts)?, c))
    }

    pub fn concat(&self, other: &WeightVector) -> WeightVector {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        WeightVector(e)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Dimension of the irreducible `GL_m`-module of a dominant weight, `m` the
/// weight's length.
pub fn weyl_dim(w: &WeightVector) -> Result<u64> {
    if !w.is_dominant() {
        return Err(DetvarError::NotDominant(w.0.clone()));
    }
    let e = &w.0;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            num *= e[i] - e[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    (num / den).to_u64().ok_or(DetvarError::Overflow("weyl_dim"))
}

/// `binomial(n, k)`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Partitions in a `u × v` box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxSet {
    pub u: usize,
    pub v: u32,
    pub members: Vec<Partition>,
}

impl BoxSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Partition) -> bool {
        p.fits_in(self.u, self.v)
    }
}

/// All partitions with at most `u` rows and `v` columns, lex-sorted.
pub fn enumerate_box(u: usize, v: u32) -> BoxSet {
    fn rec(u: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()).expect("decreasing by construction"));
        if cur.len() == u {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(u, p, cur, out);
            cur.pop();
        }
    }
    let mut members = Vec::new();
    rec(u, v, &mut Vec::new(), &mut members);
    members.sort();
    BoxSet { u, v, members }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn canonical_form_and_parsing() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!("2,1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(p(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
    }

    #[test]
    fn boxes() {
        assert_eq!(enumerate_box(1, 2).members, vec![Partition::empty(), p(&[1]), p(&[2])]);
        assert_eq!(enumerate_box(2, 2).len(), 6);
        assert_eq!(enumerate_box(1, 1).members, vec![Partition::empty(), p(&[1])]);
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(&WeightVector::new(vec![1, 0])).unwrap(), 2);
        assert_eq!(weyl_dim(&WeightVector::new(vec![1, 1, 0, 0])).unwrap(), 6);
        assert_eq!(weyl_dim(&WeightVector::new(vec![2, 0])).unwrap(), 3);
        assert!(weyl_dim(&WeightVector::new(vec![0, 1])).is_err());
        assert_eq!(weyl_dim(&WeightVector::new(vec![])).unwrap(), 1);
    }

    #[test]
    fn lex_order() {
        use std::cmp::Ordering::*;
        assert_eq!(p(&[2, 1]).lex_compare(&p(&[1, 1, 1])), Greater);
        assert_eq!(p(&[1]).lex_compare(&p(&[1])), Equal);
        assert_eq!(Partition::empty().lex_compare(&p(&[1])), Less);
    }

    #[test]
    fn strips() {
        let mut hs = p(&[1]).horizontal_strips(1, 5);
        hs.sort();
        assert_eq!(hs, vec![p(&[1, 1]), p(&[2])]);
        let vs = p(&[1]).vertical_strips(2, 5);
        assert_eq!(vs.len(), 2);
        assert!(vs.contains(&p(&[2, 1])) && vs.contains(&p(&[1, 1, 1])));
        assert_eq!(p(&[1]).vertical_strips(2, 2), vec![p(&[2, 1])]);
    }

    #[test]
    fn partitions_of_small_sizes() {
        assert_eq!(partitions_of(4, 10).len(), 5);
        assert_eq!(partitions_of(0, 0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3, 1), vec![p(&[3])]);
    }
}

//! Hilbert series of graded modules, via monomial ideals.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;

/// `t^shift * (c_0 + c_1 t + ...) / (1 - t)^denominator_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    shift: i32,
    numerator: Vec<i64>,
    denominator_power: u32,
}

impl HilbertSeries {
    pub fn new(shift: i32, numerator: Vec<i64>, denominator_power: u32) -> Self {
        let mut s = HilbertSeries {
            shift,
            numerator,
            denominator_power,
        };
        s.normalize();
        s
    }

    pub fn zero(denominator_power: u32) -> Self {
        HilbertSeries::new(0, Vec::new(), denominator_power)
    }

    /// Builds from a map `degree -> coefficient` of the numerator.
    pub fn from_numerator_map(map: &BTreeMap<i32, i64>, denominator_power: u32) -> Self {
        let Some((&lo, _)) = map.iter().next() else {
            return HilbertSeries::zero(denominator_power);
        };
        let hi = *map.keys().last().unwrap();
        let mut num = vec![0; (hi - lo + 1) as usize];
        for (&d, &c) in map {
            num[(d - lo) as usize] += c;
        }
        HilbertSeries::new(lo, num, denominator_power)
    }

    fn normalize(&mut self) {
        while self.numerator.last() == Some(&0) {
            self.numerator.pop();
        }
        let lead_zeros = self.numerator.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.numerator.len() {
            self.numerator.clear();
            self.shift = 0;
            return;
        }
        self.numerator.drain(..lead_zeros);
        self.shift += lead_zeros as i32;
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn denominator_power(&self) -> u32 {
        self.denominator_power
    }

    /// Numerator as `degree -> coefficient`.
    pub fn numerator_map(&self) -> BTreeMap<i32, i64> {
        self.numerator
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (self.shift + k as i32, c))
            .collect()
    }

    /// Cancels factors `(1 - t)` from numerator and denominator.
    pub fn reduced(&self) -> HilbertSeries {
        let mut num = self.numerator.clone();
        let mut pow = self.denominator_power;
        while pow > 0 && !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 - t): q_k = sum_{j<=k} c_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0;
            for &c in &num[..num.len() - 1] {
                acc += c;
                q.push(acc);
            }
            num = q;
            pow -= 1;
        }
        HilbertSeries::new(self.shift, num, pow)
    }

    /// Krull dimension of the module (`None` for the zero module).
    pub fn dimension(&self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.reduced().denominator_power)
        }
    }

    /// Multiplicity (degree): the reduced numerator at `t = 1`.
    pub fn multiplicity(&self) -> i64 {
        self.reduced().numerator.iter().sum()
    }

    /// Rewrites over `(1 - t)^power`, `power >= denominator_power`.
    pub fn with_denominator(&self, power: u32) -> HilbertSeries {
        assert!(power >= self.denominator_power);
        let mut num = self.numerator.clone();
        for _ in self.denominator_power..power {
            let mut next = vec![0; num.len() + 1];
            for (k, &c) in num.iter().enumerate() {
                next[k] += c;
                next[k + 1] -= c;
            }
            num = next;
        }
        HilbertSeries::new(self.shift, num, power)
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let p = self.denominator_power.max(other.denominator_power);
        let a = self.with_denominator(p);
        let b = other.with_denominator(p);
        let mut map = a.numerator_map();
        for (d, c) in b.numerator_map() {
            *map.entry(d).or_insert(0) += c;
        }
        HilbertSeries::from_numerator_map(&map, p)
    }

    pub fn scale(&self, k: i64) -> HilbertSeries {
        HilbertSeries::new(
            self.shift,
            self.numerator.iter().map(|c| c * k).collect(),
            self.denominator_power,
        )
    }

    pub fn shifted(&self, by: i32) -> HilbertSeries {
        HilbertSeries::new(self.shift + by, self.numerator.clone(), self.denominator_power)
    }

    /// Equality as rational functions.
    pub fn same_series(&self, other: &HilbertSeries) -> bool {
        self.reduced() == other.reduced()
    }

    /// Power series coefficients for degrees `shift .. shift + count`.
    pub fn coefficients(&self, from: i32, count: usize) -> Vec<i64> {
        // coefficient of t^d in t^s * N(t) / (1-t)^p is sum_k c_k binom(d-s-k+p-1, p-1)
        (0..count as i32)
            .map(|i| {
                let d = from + i;
                self.numerator
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| c * binom_stars(d - self.shift - k as i32, self.denominator_power))
                    .sum()
            })
            .collect()
    }

    /// Smallest exponent shift `s` with `self == t^s * other`, if any.
    pub fn shift_relative_to(&self, other: &HilbertSeries) -> Option<i32> {
        let (a, b) = (self.reduced(), other.reduced());
        if a.numerator == b.numerator && a.denominator_power == b.denominator_power {
            Some(a.shift - b.shift)
        } else {
            None
        }
    }
}

/// Number of monomials of degree `d` in `p` variables.
fn binom_stars(d: i32, p: u32) -> i64 {
    if d < 0 {
        return 0;
    }
    if p == 0 {
        return i64::from(d == 0);
    }
    let (n, k) = (d as i64 + p as i64 - 1, p as i64 - 1);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (d, c) in self.numerator_map() {
            let mono = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            let s = match (c, mono.is_empty()) {
                (c, true) => c.to_string(),
                (1, false) => mono,
                (-1, false) => format!("-{mono}"),
                (c, false) => format!("{c}{mono}"),
            };
            parts.push(s);
        }
        let num = parts.join(" + ").replace("+ -", "- ");
        match self.denominator_power {
            0 => write!(f, "{num}"),
            p => write!(f, "({num})/(1-t)^{p}"),
        }
    }
}

/// Numerator `N(t)` with `HS(S/J) = N(t) / (1-t)^nvars` for a monomial ideal `J`.
pub fn monomial_quotient_numerator(gens: &[Monomial]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_sub(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + shift] -= c;
    }
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.degree() as usize;
            let mut next = acc.clone();
            poly_sub(&mut next, &acc, d);
            acc = next;
        }
        return acc;
    }
    // pivot on the variable occurring in the most generators (not alone)
    let mut counts = [0usize; crate::monomial::MAX_VARS];
    for g in &gens {
        for (v, c) in counts.iter_mut().enumerate() {
            if g.exponent(v) > 0 {
                *c += 1;
            }
        }
    }
    let var = (0..counts.len()).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    // HS(S/J) = HS(S/(J + x)) + t * HS(S/(J : x))
    let pivot = Monomial::var(var);
    let mut with_var: Vec<Monomial> = gens.iter().filter(|g| g.exponent(var) == 0).copied().collect();
    with_var.push(pivot);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let e = g.exponent(var);
            if e > 0 {
                g.with_exponent(var, e - 1)
            } else {
                *g
            }
        })
        .collect();
    let mut a = numerator_rec(minimalize(with_var));
    let b = numerator_rec(minimalize(colon));
    // a + t*b
    if a.len() < b.len() + 1 {
        a.resize(b.len() + 1, 0);
    }
    for (k, &c) in b.iter().enumerate() {
        a[k + 1] += c;
    }
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_by_variables() {
        // S/(x,y) in 2 vars has series 1
        let n = monomial_quotient_numerator(&[Monomial::var(0), Monomial::var(1)]);
        let hs = HilbertSeries::new(0, n, 2).reduced();
        assert_eq!(hs, HilbertSeries::new(0, vec![1], 0));
    }

    #[test]
    fn hypersurface_quadric() {
        // S/(x0*x3) in 4 vars: (1 - t^2)/(1-t)^4 = (1+t)/(1-t)^3
        let m = Monomial::from_exponents(&[1, 0, 0, 1]);
        let hs = HilbertSeries::new(0, monomial_quotient_numerator(&[m]), 4);
        assert_eq!(hs.reduced(), HilbertSeries::new(0, vec![1, 1], 3));
        assert_eq!(hs.dimension(), Some(3));
        assert_eq!(hs.coefficients(0, 3), vec![1, 4, 9]);
    }

    #[test]
    fn pivot_recursion_matches_counting() {
        // J = (x^2, xy, y^3) in 2 vars: standard monomials 1, x, y, y^2 -> 1 + 2t + t^2
        let j = [
            Monomial::from_exponents(&[2, 0]),
            Monomial::from_exponents(&[1, 1]),
            Monomial::from_exponents(&[0, 3]),
        ];
        let hs = HilbertSeries::new(0, monomial_quotient_numerator(&j), 2).reduced();
        assert_eq!(hs, HilbertSeries::new(0, vec![1, 2, 1], 0));
    }

    #[test]
    fn display_and_shift() {
        let hs = HilbertSeries::new(0, vec![1, 1], 3);
        assert_eq!(hs.to_string(), "(1 + t)/(1-t)^3");
        assert_eq!(hs.shifted(2).shift_relative_to(&hs), Some(2));
    }
}

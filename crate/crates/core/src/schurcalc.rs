//! Characteristic-zero Schur calculus: Littlewood–Richardson products,
//! Pieri expansions, the Cauchy decomposition and a tableau-based character
//! oracle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{DetvarError, Result};
use crate::partitions::{partitions_of, weyl_dim, Partition, WeightVector};

/// A sum of irreducible `GL_l`-modules with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurSum {
    rank: usize,
    #[serde(serialize_with = "serialize_terms")]
    terms: BTreeMap<WeightVector, u64>,
}

fn serialize_terms<S: serde::Serializer>(t: &BTreeMap<WeightVector, u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(t.iter())
}

impl SchurSum {
    pub fn new(rank: usize) -> Self {
        SchurSum {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The trivial module.
    pub fn trivial(rank: usize) -> Self {
        let mut s = SchurSum::new(rank);
        s.terms.insert(WeightVector::zero(rank), 1);
        s
    }

    pub fn single(w: WeightVector) -> Result<Self> {
        let mut s = SchurSum::new(w.len());
        s.insert(w, 1)?;
        Ok(s)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<WeightVector, u64> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn multiplicity(&self, w: &WeightVector) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Adds `mult` copies of `L_w`. Entries past the rank must be zero;
    /// if not, the term vanishes for `GL_rank` and is dropped.
    pub fn insert(&mut self, w: WeightVector, mult: u64) -> Result<()> {
        let mut e = w.0;
        if e.len() > self.rank {
            if e[self.rank..].iter().any(|&x| x != 0) {
                return Ok(());
            }
            e.truncate(self.rank);
        }
        e.resize(self.rank, 0);
        let w = WeightVector(e);
        if !w.is_dominant() {
            return Err(DetvarError::NotDominant(w.0));
        }
        if mult > 0 {
            *self.terms.entry(w).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn add(&mut self, other: &SchurSum, scale: u64) {
        for (w, &m) in &other.terms {
            *self.terms.entry(w.clone()).or_insert(0) += m * scale;
        }
    }

    pub fn tensor(&self, other: &SchurSum) -> Result<SchurSum> {
        if self.rank != other.rank {
            return Err(DetvarError::InvalidParameters("tensor of sums of different rank".into()));
        }
        let mut out = SchurSum::new(self.rank);
        for (x, &a) in &self.terms {
            for (y, &b) in &other.terms {
                out.add(&tensor_weights(x, y, self.rank)?, a * b);
            }
        }
        Ok(out)
    }

    pub fn dual(&self) -> SchurSum {
        SchurSum {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, &m)| (w.dual(), m)).collect(),
        }
    }

    pub fn dimension(&self) -> Result<u64> {
        self.terms.iter().try_fold(0u64, |acc, (w, &m)| Ok(acc + m * weyl_dim(w)?))
    }
}

/// Checks the lattice condition for the letters placed so far. `rows[i]`
/// lists the skew-cell letters in row `i`, left to right.
fn is_lattice(rows: &[Vec<u32>], letters: usize) -> bool {
    let mut counts = vec![0u32; letters + 1];
    for row in rows {
        for &c in row.iter().rev() {
            let c = c as usize;
            counts[c] += 1;
            if c > 0 && counts[c] > counts[c - 1] {
                return false;
            }
        }
    }
    true
}

/// `c^γ_{ab}` for all `γ` with nonzero coefficient, by enumerating
/// Littlewood–Richardson skew tableaux of shape `γ / a` and content `b`.
pub fn lr_coefficients(a: &Partition, b: &Partition) -> BTreeMap<Partition, u64> {
    lr_bounded(a, b, usize::MAX)
}

/// As [`lr_coefficients`], keeping only `γ` with at most `max_rows` rows.
pub fn lr_bounded(a: &Partition, b: &Partition, max_rows: usize) -> BTreeMap<Partition, u64> {
    fn rec(
        shape: &Partition,
        rows: &mut Vec<Vec<u32>>,
        b: &Partition,
        k: usize,
        max_rows: usize,
        out: &mut BTreeMap<Partition, u64>,
    ) {
        if k == b.rows() {
            *out.entry(shape.clone()).or_insert(0) += 1;
            return;
        }
        for next in shape.horizontal_strips(b.part(k), max_rows) {
            let saved = rows.clone();
            if rows.len() < next.rows() {
                rows.resize(next.rows(), Vec::new());
            }
            for (i, row) in rows.iter_mut().enumerate() {
                for _ in shape.part(i)..next.part(i) {
                    row.push(k as u32);
                }
            }
            if is_lattice(rows, k) {
                rec(&next, rows, b, k + 1, max_rows, out);
            }
            *rows = saved;
        }
    }
    let mut out = BTreeMap::new();
    if a.rows() > max_rows || b.rows() > max_rows {
        return out;
    }
    rec(a, &mut vec![Vec::new(); a.rows()], b, 0, max_rows, &mut out);
    out
}

/// Decomposition of `∧^{α'_1}V ⊗ ... ⊗ ∧^{α'_r}V` for `dim V = l`, by
/// iterated Pieri products.
pub fn exterior_expand(alpha: &Partition, l: usize) -> Result<SchurSum> {
    if alpha.rows() > l {
        return Err(DetvarError::InvalidParameters(format!("{alpha} has more than {l} rows")));
    }
    let mut cur: BTreeMap<Partition, u64> = BTreeMap::from([(Partition::empty(), 1)]);
    for &c in alpha.conjugate().parts() {
        let mut next = BTreeMap::new();
        for (p, m) in cur {
            for q in p.vertical_strips(c, l) {
                *next.entry(q).or_insert(0) += m;
            }
        }
        cur = next;
    }
    let mut out = SchurSum::new(l);
    for (p, m) in cur {
        out.insert(p.to_weight(l)?, m)?;
    }
    Ok(out)
}

/// Decomposition of `L_x ⊗ L_y` for `GL_l`, via shifting both weights to
/// partitions.
pub fn tensor_weights(x: &WeightVector, y: &WeightVector, l: usize) -> Result<SchurSum> {
    if x.len() != l || y.len() != l {
        return Err(DetvarError::InvalidParameters(format!("weights must have length {l}")));
    }
    let (px, cx) = x.to_partition_shift()?;
    let (py, cy) = y.to_partition_shift()?;
    let mut out = SchurSum::new(l);
    for (g, m) in lr_bounded(&px, &py, l) {
        out.insert(g.to_weight(l)?.shifted(cx + cy), m)?;
    }
    Ok(out)
}

/// One term `L_γ V ⊗ L_γ W` of the Cauchy decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyTerm {
    pub gamma: Partition,
    pub multiplicity: u64,
    /// `(dim L_γ V, dim L_γ W)`.
    pub dims: (u64, u64),
}

/// `Sym_t(V ⊗ W) = ⊕ L_γ V ⊗ L_γ W` over `γ ⊢ t` with at most
/// `min(l1, l2)` rows, `dim V = l1`, `dim W = l2`.
pub fn cauchy_expand(t: u32, l1: usize, l2: usize) -> Result<Vec<CauchyTerm>> {
    partitions_of(t, l1.min(l2))
        .into_iter()
        .map(|gamma| {
            let d1 = weyl_dim(&gamma.to_weight(l1)?)?;
            let d2 = weyl_dim(&gamma.to_weight(l2)?)?;
            Ok(CauchyTerm {
                gamma,
                multiplicity: 1,
                dims: (d1, d2),
            })
        })
        .collect()
}

/// A symmetric polynomial with integer coefficients, keyed by exponent
/// vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SymCharacter {
    pub vars: usize,
    pub coefficients: BTreeMap<Vec<u32>, i64>,
}

impl SymCharacter {
    pub fn zero(vars: usize) -> Self {
        SymCharacter {
            vars,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add_scaled(&mut self, other: &SymCharacter, k: i64) {
        for (e, &c) in &other.coefficients {
            let v = self.coefficients.entry(e.clone()).or_insert(0);
            *v += k * c;
            if *v == 0 {
                self.coefficients.remove(e);
            }
        }
    }

    pub fn mul(&self, other: &SymCharacter) -> SymCharacter {
        let mut out = SymCharacter::zero(self.vars);
        for (a, &ca) in &self.coefficients {
            for (b, &cb) in &other.coefficients {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let v = out.coefficients.entry(e.clone()).or_insert(0);
                *v += ca * cb;
                if *v == 0 {
                    out.coefficients.remove(&e);
                }
            }
        }
        out
    }

    /// Sum of coefficients (the dimension of the representation).
    pub fn dimension(&self) -> i64 {
        self.coefficients.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coefficients.iter().all(|(e, &c)| {
            (0..self.vars.saturating_sub(1)).all(|i| {
                let mut f = e.clone();
                f.swap(i, i + 1);
                self.coefficients.get(&f) == Some(&c)
            })
        })
    }
}

/// The Schur polynomial `s_g(x_1, ..., x_vars)`, by enumerating
/// semistandard tableaux.
pub fn schur_character(g: &Partition, vars: usize) -> SymCharacter {
    let mut out = SymCharacter::zero(vars);
    if g.rows() > vars {
        return out;
    }
    let cells: Vec<(usize, usize)> = (0..g.rows())
        .flat_map(|i| (0..g.part(i) as usize).map(move |j| (i, j)))
        .collect();
    let mut filling: Vec<Vec<u32>> = (0..g.rows()).map(|i| vec![0; g.part(i) as usize]).collect();
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        filling: &mut Vec<Vec<u32>>,
        vars: usize,
        out: &mut SymCharacter,
    ) {
        if k == cells.len() {
            let mut e = vec![0u32; vars];
            for row in filling.iter() {
                for &v in row {
                    e[v as usize] += 1;
                }
            }
            *out.coefficients.entry(e).or_insert(0) += 1;
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { filling[i][j - 1] } else { 0 };
        let lo_col = if i > 0 { filling[i - 1][j] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..vars as u32 {
            filling[i][j] = v;
            rec(k + 1, cells, filling, vars, out);
        }
    }
    rec(0, &cells, &mut filling, vars, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec())
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficients(&p(&[1]), &p(&[1])), BTreeMap::from([(p(&[2]), 1), (p(&[1, 1]), 1)]));
        assert_eq!(
            lr_coefficients(&p(&[2, 1]), &p(&[1])),
            BTreeMap::from([(p(&[3, 1]), 1), (p(&[2, 2]), 1), (p(&[2, 1, 1]), 1)])
        );
        assert_eq!(lr_coefficients(&p(&[]), &p(&[3, 2])), BTreeMap::from([(p(&[3, 2]), 1)]));
        // the classic multiplicity two
        assert_eq!(lr_coefficients(&p(&[2, 1]), &p(&[2, 1]))[&p(&[3, 2, 1])], 2);
    }

    #[test]
    fn exterior_examples() {
        let e = exterior_expand(&p(&[2, 1]), 2).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.multiplicity(&w(&[2, 1])), 1);
        let e = exterior_expand(&p(&[2, 1]), 3).unwrap();
        assert_eq!(e.multiplicity(&w(&[2, 1, 0])), 1);
        assert_eq!(e.multiplicity(&w(&[1, 1, 1])), 1);
        assert_eq!(e.terms().len(), 2);
        assert_eq!(exterior_expand(&p(&[1]), 1).unwrap().terms().len(), 1);
        let e = exterior_expand(&p(&[2, 2]), 2).unwrap();
        assert_eq!(e.terms().keys().collect::<Vec<_>>(), vec![&w(&[2, 2])]);
        assert!(exterior_expand(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn tensor_examples() {
        let t = tensor_weights(&w(&[0, 0]), &w(&[2, 0]), 2).unwrap();
        assert_eq!(t.terms(), &BTreeMap::from([(w(&[2, 0]), 1)]));
        let t = tensor_weights(&w(&[-1, -1]), &w(&[2, 0]), 2).unwrap();
        assert_eq!(t.terms(), &BTreeMap::from([(w(&[1, -1]), 1)]));
        let t = tensor_weights(&w(&[1, 0]), &w(&[0, -1]), 2).unwrap();
        assert_eq!(t.terms(), &BTreeMap::from([(w(&[1, -1]), 1), (w(&[0, 0]), 1)]));
        assert!(tensor_weights(&w(&[0, 1]), &w(&[0, 0]), 2).is_err());
    }

    #[test]
    fn cauchy_examples() {
        let c = cauchy_expand(0, 2, 2).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].gamma.is_empty());
        let c = cauchy_expand(2, 2, 2).unwrap();
        assert_eq!(c.iter().map(|t| t.gamma.clone()).collect::<Vec<_>>(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(c.iter().map(|t| t.dims.0 * t.dims.1).sum::<u64>(), 10);
        let c = cauchy_expand(3, 1, 5).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].gamma, p(&[3]));
    }

    #[test]
    fn characters() {
        let s = schur_character(&p(&[1]), 2);
        assert_eq!(s.coefficients, BTreeMap::from([(vec![1, 0], 1), (vec![0, 1], 1)]));
        let s = schur_character(&p(&[2, 1]), 2);
        assert_eq!(s.coefficients, BTreeMap::from([(vec![2, 1], 1), (vec![1, 2], 1)]));
        assert!(schur_character(&p(&[1, 1, 1]), 2).is_zero());
    }
}

//! Homogeneous maps between graded free modules.
//!
//! A free module is described by the degrees of its basis vectors. A map
//! `f: F -> G` sends basis vector `e_c` of `F` to column `c`; it is homogeneous
//! of degree zero when every nonzero entry `(r, c)` has degree
//! `source_degrees[c] - target_degrees[r]`.

use crate::error::{CommalgError, Result};
use crate::field::Field;
use crate::poly::{PolyRing, Polynomial};

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMap<F: Field> {
    source_degrees: Vec<i32>,
    target_degrees: Vec<i32>,
    /// `columns[c][r]` is the entry in row `r`, column `c`.
    columns: Vec<Vec<Polynomial<F>>>,
}

impl<F: Field> ModuleMap<F> {
    pub fn from_columns(
        columns: Vec<Vec<Polynomial<F>>>,
        source_degrees: Vec<i32>,
        target_degrees: Vec<i32>,
    ) -> Result<Self> {
        if columns.len() != source_degrees.len() {
            return Err(CommalgError::DimensionMismatch(format!(
                "{} columns but {} source degrees",
                columns.len(),
                source_degrees.len()
            )));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != target_degrees.len()) {
            return Err(CommalgError::DimensionMismatch(format!(
                "column of length {} in a map with {} rows",
                c.len(),
                target_degrees.len()
            )));
        }
        Ok(ModuleMap {
            source_degrees,
            target_degrees,
            columns,
        })
    }

    /// Row-major constructor.
    pub fn from_rows(
        rows: Vec<Vec<Polynomial<F>>>,
        source_degrees: Vec<i32>,
        target_degrees: Vec<i32>,
    ) -> Result<Self> {
        let ncols = source_degrees.len();
        if rows.len() != target_degrees.len() || rows.iter().any(|r| r.len() != ncols) {
            return Err(CommalgError::DimensionMismatch(
                "row lengths do not match the degree vectors".into(),
            ));
        }
        let mut columns = vec![Vec::with_capacity(rows.len()); ncols];
        for row in rows {
            for (c, p) in row.into_iter().enumerate() {
                columns[c].push(p);
            }
        }
        Self::from_columns(columns, source_degrees, target_degrees)
    }

    /// Infers source degrees from the first nonzero entry of each column
    /// (zero columns get degree 0).
    pub fn with_target_degrees(columns: Vec<Vec<Polynomial<F>>>, target_degrees: Vec<i32>) -> Result<Self> {
        let source_degrees = columns
            .iter()
            .map(|col| {
                col.iter()
                    .enumerate()
                    .find_map(|(r, p)| p.degree().map(|d| target_degrees[r] + d as i32))
                    .unwrap_or(0)
            })
            .collect();
        Self::from_columns(columns, source_degrees, target_degrees)
    }

    pub fn zero(source_degrees: Vec<i32>, target_degrees: Vec<i32>) -> Self {
        let columns = vec![vec![Polynomial::zero(); target_degrees.len()]; source_degrees.len()];
        ModuleMap {
            source_degrees,
            target_degrees,
            columns,
        }
    }

    pub fn identity(ring: &PolyRing<F>, degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        let columns = (0..n)
            .map(|c| (0..n).map(|r| if r == c { ring.one() } else { ring.zero() }).collect())
            .collect();
        ModuleMap {
            source_degrees: degrees.clone(),
            target_degrees: degrees,
            columns,
        }
    }

    pub fn nrows(&self) -> usize {
        self.target_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.source_degrees.len()
    }

    pub fn source_degrees(&self) -> &[i32] {
        &self.source_degrees
    }

    pub fn target_degrees(&self) -> &[i32] {
        &self.target_degrees
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial<F> {
        &self.columns[c][r]
    }

    pub fn column(&self, c: usize) -> &[Polynomial<F>] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<Polynomial<F>>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<Polynomial<F>>> {
        self.columns
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial<F>>> {
        (0..self.nrows())
            .map(|r| self.columns.iter().map(|c| c[r].clone()).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|p| p.is_zero()))
    }

    /// Checks the degree condition on every nonzero entry.
    pub fn is_homogeneous(&self) -> bool {
        self.columns.iter().enumerate().all(|(c, col)| {
            col.iter().enumerate().all(|(r, p)| {
                p.is_zero()
                    || (p.is_homogeneous()
                        && p.degree().unwrap() as i32 == self.source_degrees[c] - self.target_degrees[r])
            })
        })
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        if self.is_homogeneous() {
            Ok(())
        } else {
            Err(CommalgError::NotHomogeneous(format!(
                "{}x{} map with source degrees {:?} and target degrees {:?}",
                self.nrows(),
                self.ncols(),
                self.source_degrees,
                self.target_degrees
            )))
        }
    }

    /// True if some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.iter().any(|p| p.leading().is_some_and(|(m, _)| m.is_one())))
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &PolyRing<F>, other: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        if other.nrows() != self.ncols() {
            return Err(CommalgError::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|oc| self.apply(ring, oc))
            .collect();
        Ok(ModuleMap {
            source_degrees: other.source_degrees.clone(),
            target_degrees: self.target_degrees.clone(),
            columns,
        })
    }

    /// Image of a vector of the source module.
    pub fn apply(&self, ring: &PolyRing<F>, v: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        assert_eq!(v.len(), self.ncols());
        let mut out = vec![Polynomial::zero(); self.nrows()];
        for (c, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (r, p) in self.columns[c].iter().enumerate() {
                if !p.is_zero() {
                    out[r] = ring.add(&out[r], &ring.mul(coeff, p));
                }
            }
        }
        out
    }

    /// Transposed matrix, as a map between the dual free modules.
    pub fn transpose(&self) -> ModuleMap<F> {
        ModuleMap {
            source_degrees: self.target_degrees.iter().map(|d| -d).collect(),
            target_degrees: self.source_degrees.iter().map(|d| -d).collect(),
            columns: self.rows(),
        }
    }

    /// Kronecker product; row `(i, k)` has index `i * other.nrows() + k`.
    pub fn kronecker(&self, ring: &PolyRing<F>, other: &ModuleMap<F>) -> ModuleMap<F> {
        let mut columns = Vec::with_capacity(self.ncols() * other.ncols());
        let mut source_degrees = Vec::with_capacity(self.ncols() * other.ncols());
        for (a, acol) in self.columns.iter().enumerate() {
            for (b, bcol) in other.columns.iter().enumerate() {
                let mut col = Vec::with_capacity(acol.len() * bcol.len());
                for p in acol {
                    for q in bcol {
                        col.push(ring.mul(p, q));
                    }
                }
                columns.push(col);
                source_degrees.push(self.source_degrees[a] + other.source_degrees[b]);
            }
        }
        let mut target_degrees = Vec::with_capacity(self.nrows() * other.nrows());
        for a in &self.target_degrees {
            for b in &other.target_degrees {
                target_degrees.push(a + b);
            }
        }
        ModuleMap {
            source_degrees,
            target_degrees,
            columns,
        }
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> ModuleMap<F> {
        ModuleMap {
            source_degrees: cols.iter().map(|&c| self.source_degrees[c]).collect(),
            target_degrees: self.target_degrees.clone(),
            columns: cols.iter().map(|&c| self.columns[c].clone()).collect(),
        }
    }

    /// Evaluates all entries at a point; returns rows.
    pub fn evaluate(&self, ring: &PolyRing<F>, point: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        (0..self.nrows())
            .map(|r| {
                self.columns
                    .iter()
                    .map(|col| ring.eval(&col[r], point))
                    .collect()
            })
            .collect()
    }
}

/// Rank of a dense matrix over a field by Gaussian elimination.
pub fn dense_rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !field.is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(&m[rank][col]);
        for r in 0..m.len() {
            if r == rank || field.is_zero(&m[r][col]) {
                continue;
            }
            let factor = field.mul(&m[r][col], &inv);
            for c in col..ncols {
                let t = field.mul(&factor, &m[rank][c]);
                m[r][c] = field.sub(&m[r][c], &t);
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank of `f` specialized at `point`.
pub fn random_rank<F: Field>(ring: &PolyRing<F>, f: &ModuleMap<F>, point: &[F::Elem]) -> Result<usize> {
    if point.len() != ring.nvars() {
        return Err(CommalgError::DimensionMismatch(format!(
            "point of length {} for a ring with {} variables",
            point.len(),
            ring.nvars()
        )));
    }
    Ok(dense_rank(ring.field(), &f.evaluate(ring, point)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn generic(ring: &PolyRing<Rationals>, rows: usize, cols: usize) -> ModuleMap<Rationals> {
        let r: Vec<Vec<_>> = (0..rows)
            .map(|i| (0..cols).map(|j| ring.var(i * cols + j)).collect())
            .collect();
        ModuleMap::from_rows(r, vec![1; cols], vec![0; rows]).unwrap()
    }

    #[test]
    fn rank_of_zero_and_identity() {
        let ring = PolyRing::new(2, Rationals).unwrap();
        let z = ModuleMap::<Rationals>::zero(vec![0, 0], vec![0, 0, 0]);
        assert_eq!(random_rank(&ring, &z, &[Rationals.one(), Rationals.one()]).unwrap(), 0);
        let id = ModuleMap::identity(&ring, vec![0, 0, 0]);
        assert_eq!(random_rank(&ring, &id, &[Rationals.one(), Rationals.one()]).unwrap(), 3);
    }

    #[test]
    fn rank_one_specialization_of_generic_2x3() {
        let q = Rationals;
        let ring = PolyRing::new(6, q).unwrap();
        let x = generic(&ring, 2, 3);
        let u = [2i64, -3];
        let v = [1i64, 5, 7];
        let point: Vec<_> = (0..2)
            .flat_map(|i| (0..3).map(move |j| u[i] * v[j]))
            .map(|t| q.from_i64(t))
            .collect();
        assert_eq!(random_rank(&ring, &x, &point).unwrap(), 1);
    }

    #[test]
    fn homogeneity_and_transpose() {
        let ring = PolyRing::new(4, Rationals).unwrap();
        let x = generic(&ring, 2, 2);
        assert!(x.is_homogeneous());
        assert!(x.transpose().is_homogeneous());
        let bad = ModuleMap::from_rows(vec![vec![ring.var(0)]], vec![0], vec![0]).unwrap();
        assert!(!bad.is_homogeneous());
    }
}

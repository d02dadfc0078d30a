use std::sync::Arc;

use commalg::{Field, FieldKind, Ideal, ModuleMap, PolyRing, Polynomial};
use serde_json::{json, Value};

use crate::error::{DetvarError, Result};
use crate::partitions::{binomial, enumerate_box, BoxSet};

use super::wedge::{determinant, subsets};

/// The generic `m × n` matrix `X` over `S = k[x_ij]` with the ideal `I` of
/// its `(l+1)`-minors.
#[derive(Debug, Clone)]
pub struct DetSetup<F: Field> {
    pub m: usize,
    pub n: usize,
    pub l: usize,
    ring: PolyRing<F>,
    matrix: Vec<Vec<Polynomial<F>>>,
    ideal: Arc<Ideal<F>>,
    transposed: bool,
}

impl<F: Field> DetSetup<F> {
    /// Builds the setup and verifies the codimension of `I`.
    pub fn new(m: usize, n: usize, l: usize, field: F) -> Result<Self> {
        if l >= m.min(n) {
            return Err(DetvarError::InvalidParameters(format!(
                "need 0 <= l < min(m,n), got m={m}, n={n}, l={l}"
            )));
        }
        let ring = PolyRing::new(m * n, field)?;
        let matrix: Vec<Vec<Polynomial<F>>> = (0..m).map(|i| (0..n).map(|j| ring.var(i * n + j)).collect()).collect();
        let setup = Self::assemble(m, n, l, ring, matrix, false)?;
        let codim = setup.ideal.codimension() as usize;
        if codim != setup.codim_expected() {
            return Err(DetvarError::InvalidParameters(format!(
                "computed codimension {codim}, expected {}",
                setup.codim_expected()
            )));
        }
        Ok(setup)
    }

    fn assemble(
        m: usize,
        n: usize,
        l: usize,
        ring: PolyRing<F>,
        matrix: Vec<Vec<Polynomial<F>>>,
        transposed: bool,
    ) -> Result<Self> {
        let k = l + 1;
        let rows = matrix.len();
        let cols = matrix.first().map_or(0, |r| r.len());
        let mut minors = Vec::new();
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                let sub: Vec<Vec<Polynomial<F>>> = r.iter().map(|&i| c.iter().map(|&j| matrix[i][j].clone()).collect()).collect();
                minors.push(determinant(&ring, &sub));
            }
        }
        let ideal = Arc::new(Ideal::new(&ring, minors)?);
        Ok(DetSetup {
            m,
            n,
            l,
            ring,
            matrix,
            ideal,
            transposed,
        })
    }

    /// The same ring and ideal with the generic matrix transposed: `m` and
    /// `n` swap roles.
    pub fn flip(&self) -> DetSetup<F> {
        let matrix = (0..self.n)
            .map(|j| (0..self.m).map(|i| self.matrix[i][j].clone()).collect())
            .collect();
        DetSetup {
            m: self.n,
            n: self.m,
            l: self.l,
            ring: self.ring.clone(),
            matrix,
            ideal: self.ideal.clone(),
            transposed: !self.transposed,
        }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn field_kind(&self) -> FieldKind {
        self.ring.field_kind()
    }

    /// `X`, as rows.
    pub fn matrix(&self) -> &[Vec<Polynomial<F>>] {
        &self.matrix
    }

    pub fn ideal(&self) -> &Arc<Ideal<F>> {
        &self.ideal
    }

    pub fn minors(&self) -> &[Polynomial<F>] {
        self.ideal.gens()
    }

    pub fn is_transposed(&self) -> bool {
        self.transposed
    }

    pub fn codim_expected(&self) -> usize {
        (self.n - self.l) * (self.m - self.l)
    }

    pub fn expected_minor_count(&self) -> u64 {
        binomial(self.m as u64, self.l as u64 + 1) * binomial(self.n as u64, self.l as u64 + 1)
    }

    /// `B_{l, m-l}`.
    pub fn box_set(&self) -> BoxSet {
        enumerate_box(self.l, (self.m - self.l) as u32)
    }

    /// `φ^∨ = X^T : S^m -> S^n`, source degree 0, target degree -1.
    pub fn phi_dual(&self) -> ModuleMap<F> {
        let cols = (0..self.m).map(|i| self.matrix[i].clone()).collect();
        ModuleMap::from_columns(cols, vec![0; self.m], vec![-1; self.n]).expect("consistent shape")
    }

    pub fn describe(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n,
            "l": self.l,
            "field": self.field_kind().label(),
            "transposed": self.transposed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use commalg::Rationals;

    #[test]
    fn setups() {
        for (m, n, l, count, codim) in [(2, 2, 1, 1, 1), (2, 3, 1, 3, 2), (3, 3, 2, 1, 1)] {
            let s = DetSetup::new(m, n, l, Rationals).unwrap();
            assert_eq!(s.minors().len(), count);
            assert_eq!(s.expected_minor_count(), count as u64);
            assert_eq!(s.codim_expected(), codim);
            assert_eq!(s.ideal().codimension() as usize, codim);
        }
        assert!(DetSetup::new(2, 2, 2, Rationals).is_err());
    }

    #[test]
    fn flip_swaps_dimensions() {
        let s = DetSetup::new(2, 3, 1, Rationals).unwrap();
        let f = s.flip();
        assert_eq!((f.m, f.n), (3, 2));
        assert_eq!(f.matrix()[2][1], s.matrix()[1][2]);
        assert!(Arc::ptr_eq(f.ideal(), s.ideal()));
        assert_eq!(s.phi_dual().nrows(), 3);
        assert_eq!(f.phi_dual().nrows(), 2);
    }
}

//! Free resolutions of finitely presented graded modules.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::hilbert::HilbertSeries;
use crate::matrix::ModuleMap;
use crate::module::{columns_to_map, minimal_syzygies, select_minimal, ModulePresentation};
use crate::poly::PolyRing;

/// `0 <- F_0 <-d_1- F_1 <-d_2- ... <- F_k <- 0`.
#[derive(Debug, Clone)]
pub struct Resolution<F: Field> {
    ring: PolyRing<F>,
    free_degrees: Vec<i32>,
    maps: Vec<ModuleMap<F>>,
    minimal: bool,
}

/// Graded Betti numbers keyed by (homological index, internal degree).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), usize>,
}

impl BettiTable {
    pub fn ranks(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut out = vec![0; len];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }

    /// Rows in the usual "degree minus index" layout, as strings.
    pub fn display_rows(&self) -> Vec<String> {
        let ranks = self.ranks();
        let mut rows: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (&(i, d), &b) in &self.entries {
            rows.entry(d - i as i32).or_insert_with(|| vec![0; ranks.len()])[i] = b;
        }
        let mut out = vec![format!(
            "total: {}",
            ranks.iter().map(|r| format!("{r:>4}")).collect::<String>()
        )];
        for (row, vals) in rows {
            out.push(format!(
                "{row:>5}: {}",
                vals.iter()
                    .map(|&v| if v == 0 { "   .".to_string() } else { format!("{v:>4}") })
                    .collect::<String>()
            ));
        }
        out
    }
}

impl<F: Field> Resolution<F> {
    pub fn maps(&self) -> &[ModuleMap<F>] {
        &self.maps
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Projective dimension (number of nonzero maps).
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// Degrees of the basis of `F_i`.
    pub fn free_module_degrees(&self, i: usize) -> &[i32] {
        if i == 0 {
            &self.free_degrees
        } else {
            self.maps.get(i - 1).map_or(&[], |m| m.source_degrees())
        }
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for i in 0..=self.maps.len() {
            for &d in self.free_module_degrees(i) {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// `d_i ∘ d_{i+1} = 0` for all `i`.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[0].compose(&self.ring, &w[1]).map(|c| c.is_zero()).unwrap_or(false))
    }

    pub fn has_unit_entries(&self) -> bool {
        self.maps.iter().any(|m| m.has_unit_entry())
    }

    /// Alternating sum of the free modules' Hilbert series.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let mut map: BTreeMap<i32, i64> = BTreeMap::new();
        for i in 0..=self.maps.len() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for &d in self.free_module_degrees(i) {
                *map.entry(d).or_insert(0) += sign;
            }
        }
        HilbertSeries::from_numerator_map(&map, self.ring.nvars() as u32)
    }
}

/// Resolves `m`. With `minimal` the first step prunes unit relations and
/// selects minimal relations; later steps always use minimal syzygies, so a
/// non-minimal resolution differs only in `d_1`.
pub fn free_resolution<F: Field>(m: &ModulePresentation<F>, minimal: bool) -> Result<Resolution<F>> {
    let ring = m.ring().clone();
    let m = if minimal { m.prune().0 } else { m.clone() };
    let full = m.full_relations();
    let cols: Vec<_> = full
        .columns()
        .iter()
        .filter(|c| c.iter().any(|p| !p.is_zero()))
        .cloned()
        .collect();
    let cols = if minimal {
        let keep = select_minimal(&ring, m.gen_degrees(), &cols, Vec::new())?;
        keep.into_iter().map(|i| cols[i].clone()).collect()
    } else {
        cols
    };
    let mut maps = Vec::new();
    if !cols.is_empty() {
        maps.push(columns_to_map(cols, m.gen_degrees().to_vec())?);
        loop {
            let next = minimal_syzygies(&ring, maps.last().unwrap())?;
            if next.ncols() == 0 {
                break;
            }
            maps.push(next);
        }
    }
    Ok(Resolution {
        ring,
        free_degrees: m.gen_degrees().to_vec(),
        maps,
        minimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::module::Ideal;
    use std::sync::Arc;

    fn generic_minors<F: Field>(ring: &PolyRing<F>, m: usize, n: usize, size: usize) -> Vec<crate::poly::Polynomial<F>> {
        assert_eq!(size, 2);
        let x = |i: usize, j: usize| ring.var(i * n + j);
        let mut out = Vec::new();
        for r1 in 0..m {
            for r2 in r1 + 1..m {
                for c1 in 0..n {
                    for c2 in c1 + 1..n {
                        out.push(ring.sub(&ring.mul(&x(r1, c1), &x(r2, c2)), &ring.mul(&x(r1, c2), &x(r2, c1))));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn principal_quotient_has_length_one() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let i = Arc::new(Ideal::new(&r, vec![r.var(0)]).unwrap());
        let res = free_resolution(&ModulePresentation::quotient_ring(i), true).unwrap();
        assert_eq!(res.length(), 1);
        assert_eq!(res.betti_table().ranks(), vec![1, 1]);
    }

    #[test]
    fn quadric_cone() {
        let r = PolyRing::new(4, Rationals).unwrap();
        let i = Arc::new(Ideal::new(&r, generic_minors(&r, 2, 2, 2)).unwrap());
        let m = ModulePresentation::quotient_ring(i);
        let res = free_resolution(&m, true).unwrap();
        assert_eq!(res.betti_table().ranks(), vec![1, 1]);
        assert_eq!(m.hilbert_series().reduced(), HilbertSeries::new(0, vec![1, 1], 3));
        assert!(res.hilbert_series().same_series(&m.hilbert_series()));
    }

    #[test]
    fn two_by_three_minors_eagon_northcott() {
        let r = PolyRing::new(6, Rationals).unwrap();
        let i = Arc::new(Ideal::new(&r, generic_minors(&r, 2, 3, 2)).unwrap());
        let m = ModulePresentation::quotient_ring(i);
        let res = free_resolution(&m, true).unwrap();
        assert_eq!(res.betti_table().ranks(), vec![1, 3, 2]);
        assert!(res.is_complex());
        assert!(!res.has_unit_entries());
        assert!(res.hilbert_series().same_series(&m.hilbert_series()));
        assert_eq!(m.hilbert_series().dimension(), Some(4));
    }

    #[test]
    fn rank_one_three_by_three() {
        let r = PolyRing::new(9, PrimeField::new(32003).unwrap()).unwrap();
        let i = Arc::new(Ideal::new(&r, generic_minors(&r, 3, 3, 2)).unwrap());
        let m = ModulePresentation::quotient_ring(i);
        let res = free_resolution(&m, true).unwrap();
        assert_eq!(res.betti_table().ranks(), vec![1, 9, 16, 9, 1]);
        assert!(res.is_complex());
        assert!(res.hilbert_series().same_series(&m.hilbert_series()));
    }

    fn twisted_cubic<F: Field>(r: &PolyRing<F>) -> Vec<crate::poly::Polynomial<F>> {
        let v = |i| r.var(i);
        let minor = |a, b, c, d| r.sub(&r.mul(&v(a), &v(b)), &r.mul(&v(c), &v(d)));
        vec![minor(0, 2, 1, 1), minor(0, 3, 1, 2), minor(1, 3, 2, 2)]
    }

    #[test]
    fn prime_field_matches_rationals() {
        let q = PolyRing::new(4, Rationals).unwrap();
        let p = PolyRing::new(4, PrimeField::new(32003).unwrap()).unwrap();
        let bq = free_resolution(&ModulePresentation::quotient_ring(Arc::new(Ideal::new(&q, twisted_cubic(&q)).unwrap())), true)
            .unwrap()
            .betti_table();
        let bp = free_resolution(&ModulePresentation::quotient_ring(Arc::new(Ideal::new(&p, twisted_cubic(&p)).unwrap())), true)
            .unwrap()
            .betti_table();
        assert_eq!(bq, bp);
        assert_eq!(bq.ranks(), vec![1, 3, 2]);
    }

    #[test]
    fn free_module_resolution_is_trivial() {
        let r = PolyRing::new(3, Rationals).unwrap();
        let res = free_resolution(&ModulePresentation::free(&r, vec![0, 1]), true).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.betti_table().ranks(), vec![2]);
    }
}

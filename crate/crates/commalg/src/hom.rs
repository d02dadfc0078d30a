//! Hom modules between finitely presented graded modules.
//!
//! For `M = coker(A: F1 -> F0)` and `N = coker(B: G1 -> G0)`, a homomorphism
//! is a map `F0 -> G0` (up to maps into `im B`) whose composite with `A`
//! lands in `im B`. Elements of `Hom(F0, G0)` are stored as vectors indexed by
//! `i * rank(G0) + j`, the coefficient of `e_i -> h_j`.

use std::sync::Arc;

use crate::error::{CommalgError, Result};
use crate::field::Field;
use crate::groebner::{to_dense, Engine, InputRole, ModuleOrder, SparseVec, Term};
use crate::matrix::ModuleMap;
use crate::module::{columns_to_map, kernel_modulo, select_minimal, Ideal, ModulePresentation};
use crate::poly::{PolyRing, Polynomial};

/// `Hom(M, N)` together with the data needed to interpret its elements as
/// homomorphisms.
#[derive(Debug, Clone)]
pub struct HomModule<F: Field> {
    module: ModulePresentation<F>,
    source_gens: usize,
    target: ModulePresentation<F>,
    /// Generators of the Hom module as elements of `Hom(F0, G0)`.
    generators: Vec<Vec<Polynomial<F>>>,
    ambient_degrees: Vec<i32>,
}

/// Copies `gb` into `count` consecutive blocks of `stride` components.
fn block_copies<E: Clone>(gb: &[SparseVec<E>], order: &ModuleOrder, stride: usize, count: usize) -> Vec<SparseVec<E>> {
    let mut out = Vec::with_capacity(gb.len() * count);
    for b in 0..count {
        for v in gb {
            let mut w: SparseVec<E> = v
                .iter()
                .map(|t| Term {
                    comp: (b * stride) as u32 + t.comp,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                })
                .collect();
            order.sort(&mut w);
            out.push(w);
        }
    }
    out
}

fn same_ideal<F: Field>(a: Option<&Arc<Ideal<F>>>, b: Option<&Arc<Ideal<F>>>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a.gb() == b.gb(),
        _ => false,
    }
}

/// Presentation of `Hom(M, N)`. When both are modules over `S/I` this is
/// `Hom_{S/I}(M, N)`, and the result carries `N`'s annihilator.
pub fn hom_module<F: Field>(m: &ModulePresentation<F>, n: &ModulePresentation<F>) -> Result<HomModule<F>> {
    let ring = m.ring().clone();
    if ring.nvars() != n.ring().nvars() || ring.field_kind() != n.ring().field_kind() {
        return Err(CommalgError::DimensionMismatch("modules over different rings".into()));
    }
    let (g0m, g0n) = (m.num_generators(), n.num_generators());
    let gdeg = m.gen_degrees();
    let hdeg = n.gen_degrees();

    // relations of M that need checking
    let a = if same_ideal(m.annihilator(), n.annihilator()) {
        m.relations().clone()
    } else {
        m.full_relations()
    };
    let ak = a.source_degrees();

    let ambient_degrees: Vec<i32> = (0..g0m)
        .flat_map(|i| hdeg.iter().map(move |&h| h - gdeg[i]))
        .collect();
    let image_degrees: Vec<i32> = ak
        .iter()
        .flat_map(|&d| hdeg.iter().map(move |&h| h - d))
        .collect();

    // Psi(E_ij) = sum_k A_ik E'_kj
    let psi_cols: Vec<Vec<Polynomial<F>>> = (0..g0m)
        .flat_map(|i| (0..g0n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let mut col = vec![Polynomial::zero(); a.ncols() * g0n];
            for k in 0..a.ncols() {
                col[k * g0n + j] = a.entry(i, k).clone();
            }
            col
        })
        .collect();
    let psi = ModuleMap::from_columns(psi_cols, ambient_degrees.clone(), image_degrees.clone())?;

    let n_gb = n.relation_gb();
    let image_order = ModuleOrder::new(image_degrees);
    let image_base = block_copies(&n_gb, &image_order, g0n, a.ncols());
    let kernel = kernel_modulo(&ring, &psi, image_base)?;

    let ambient_order = ModuleOrder::new(ambient_degrees.clone());
    let ambient_base = block_copies(&n_gb, &ambient_order, g0n, g0m);
    let keep = select_minimal(&ring, &ambient_degrees, &kernel, ambient_base.clone())?;
    let generators: Vec<Vec<Polynomial<F>>> = keep.into_iter().map(|i| kernel[i].clone()).collect();
    let gens_map = columns_to_map(generators.clone(), ambient_degrees.clone())?;
    let hom_degrees = gens_map.source_degrees().to_vec();

    let rel_cols = kernel_modulo(&ring, &gens_map, ambient_base)?;
    let relations = columns_to_map(rel_cols, hom_degrees.clone())?;
    let module = ModulePresentation::new(&ring, hom_degrees, relations, n.annihilator().cloned())?.minimize_relations()?;
    Ok(HomModule {
        module,
        source_gens: g0m,
        target: n.clone(),
        generators,
        ambient_degrees,
    })
}

/// `Hom(M, S/I)` if `M` has annihilator `I`, otherwise `Hom(M, S)`.
pub fn dual_module<F: Field>(m: &ModulePresentation<F>) -> Result<HomModule<F>> {
    let target = match m.annihilator() {
        Some(i) => ModulePresentation::quotient_ring(i.clone()),
        None => ModulePresentation::free(m.ring(), vec![0]),
    };
    hom_module(m, &target)
}

impl<F: Field> HomModule<F> {
    pub fn module(&self) -> &ModulePresentation<F> {
        &self.module
    }

    pub fn into_module(self) -> ModulePresentation<F> {
        self.module
    }

    pub fn generators(&self) -> &[Vec<Polynomial<F>>] {
        &self.generators
    }

    /// Degrees of the basis `e_i -> h_j` of `Hom(F0, G0)`.
    pub fn ambient_degrees(&self) -> &[i32] {
        &self.ambient_degrees
    }

    /// True iff every element of `elements` (in `Hom(F0, G0)` coordinates)
    /// defines a homomorphism `M -> N`.
    pub fn contains(&self, elements: &[Vec<Polynomial<F>>]) -> Result<bool> {
        let ring = self.module.ring();
        let order = ModuleOrder::new(self.ambient_degrees.clone());
        let n_gb = self.target.relation_gb();
        let mut engine = Engine::new(ring.field(), &order);
        engine.add_base(block_copies(&n_gb, &order, self.target.num_generators(), self.source_gens));
        let inputs = self
            .generators
            .iter()
            .map(|g| Ok((order.to_sparse(g, 0), InputRole::Extra)))
            .collect::<Result<Vec<_>>>()?;
        let gb = engine.run(inputs).basis;
        let mut check = Engine::new(ring.field(), &order);
        check.add_base(gb);
        Ok(elements
            .iter()
            .all(|e| check.normal_form(order.to_sparse(e, 0)).is_empty()))
    }

    /// True iff `elements` (in `Hom(F0, G0)` coordinates) generate the Hom
    /// module.
    pub fn is_generated_by(&self, elements: &[Vec<Polynomial<F>>]) -> Result<bool> {
        let ring = self.module.ring();
        let order = ModuleOrder::new(self.ambient_degrees.clone());
        let n_gb = self.target.relation_gb();
        let mut engine = Engine::new(ring.field(), &order);
        engine.add_base(block_copies(&n_gb, &order, self.target.num_generators(), self.source_gens));
        let inputs = elements
            .iter()
            .filter(|e| e.iter().any(|p| !p.is_zero()))
            .map(|e| {
                if e.len() != self.ambient_degrees.len() || !e.iter().all(|p| p.is_homogeneous()) {
                    return Err(CommalgError::NotHomogeneous("Hom element".into()));
                }
                Ok((order.to_sparse(e, 0), InputRole::Extra))
            })
            .collect::<Result<Vec<_>>>()?;
        let gb = engine.run(inputs).basis;
        let mut check = Engine::new(ring.field(), &order);
        check.add_base(gb);
        Ok(self
            .generators
            .iter()
            .all(|g| check.normal_form(order.to_sparse(g, 0)).is_empty()))
    }

    /// The images `phi(e_i)` in `G0` of an element of `Hom(F0, G0)`.
    pub fn images(&self, element: &[Polynomial<F>]) -> Vec<Vec<Polynomial<F>>> {
        let g0n = self.target.num_generators();
        (0..self.source_gens)
            .map(|i| element[i * g0n..(i + 1) * g0n].to_vec())
            .collect()
    }

    /// Element of `Hom(F0, G0)` for a vector of coefficients on the Hom
    /// generators.
    pub fn element(&self, ring: &PolyRing<F>, coeffs: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let len = self.source_gens * self.target.num_generators();
        let mut out = vec![Polynomial::zero(); len];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(g) {
                *o = ring.add(o, &ring.mul(c, p));
            }
        }
        out
    }

    /// True iff the homomorphism given by `element` (in `Hom(F0, G0)`
    /// coordinates) is surjective onto the target.
    pub fn cokernel_is_zero(&self, element: &[Polynomial<F>]) -> Result<bool> {
        is_surjective(&self.target, &self.images(element))
    }
}

/// True iff the elements `images` (vectors in the generator module of `n`)
/// generate `n`.
pub fn is_surjective<F: Field>(n: &ModulePresentation<F>, images: &[Vec<Polynomial<F>>]) -> Result<bool> {
    let ring = n.ring();
    let order = n.order();
    let mut engine = Engine::new(ring.field(), &order);
    engine.add_base(n.relation_gb());
    let inputs = images
        .iter()
        .filter(|v| v.iter().any(|p| !p.is_zero()))
        .map(|v| {
            if v.len() != n.num_generators() {
                return Err(CommalgError::DimensionMismatch("image vector length".into()));
            }
            if !v.iter().all(|p| p.is_homogeneous()) {
                return Err(CommalgError::NotHomogeneous("image vector".into()));
            }
            Ok((order.to_sparse(v, 0), InputRole::Extra))
        })
        .collect::<Result<Vec<_>>>()?;
    let gb = engine.run(inputs).basis;
    let mut check = Engine::new(ring.field(), &order);
    check.add_base(gb);
    for j in 0..n.num_generators() {
        let mut e = vec![Polynomial::zero(); n.num_generators()];
        e[j] = ring.one();
        let nf = check.normal_form(order.to_sparse(&e, 0));
        if !to_dense::<F>(&nf, 0..n.num_generators()).iter().all(|p| p.is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::hilbert::HilbertSeries;

    #[test]
    fn hom_of_free_rank_one() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let s = ModulePresentation::free(&r, vec![0]);
        let h = hom_module(&s, &s).unwrap();
        assert_eq!(h.module().num_generators(), 1);
        assert_eq!(h.module().hilbert_series(), HilbertSeries::new(0, vec![1], 2));
        assert!(h.cokernel_is_zero(&h.generators()[0]).unwrap());
    }

    #[test]
    fn cyclic_self_hom() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let rel = ModuleMap::from_rows(vec![vec![r.var(0)]], vec![1], vec![0]).unwrap();
        let m = ModulePresentation::cokernel(&r, rel).unwrap();
        let h = hom_module(&m, &m).unwrap();
        assert!(h.module().hilbert_series().same_series(&m.hilbert_series()));
        assert_eq!(h.module().num_generators(), 1);
    }

    #[test]
    fn torsion_module_has_zero_dual() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let rel = ModuleMap::from_rows(vec![vec![r.var(0)]], vec![1], vec![0]).unwrap();
        let m = ModulePresentation::cokernel(&r, rel).unwrap();
        assert!(dual_module(&m).unwrap().module().is_zero());
        let s = ModulePresentation::free(&r, vec![0]);
        assert_eq!(dual_module(&s).unwrap().module().num_generators(), 1);
    }

    #[test]
    fn zero_map_is_not_surjective() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let s = ModulePresentation::free(&r, vec![0]);
        assert!(!is_surjective(&s, &[vec![r.zero()]]).unwrap());
        assert!(is_surjective(&s, &[vec![r.one()]]).unwrap());
        assert!(!is_surjective(&s, &[vec![r.var(0)], vec![r.var(1)]]).unwrap());
    }

    #[test]
    fn hom_into_shifted_free_module() {
        // Hom(S(-1), S) = S(1)
        let r = PolyRing::new(3, Rationals).unwrap();
        let h = hom_module(&ModulePresentation::free(&r, vec![1]), &ModulePresentation::free(&r, vec![0])).unwrap();
        assert_eq!(h.module().gen_degrees(), &[-1]);
    }
}

//! Finitely presented graded modules: ideals, presentations, kernels,
//! minimal generators and pruning.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{CommalgError, Result};
use crate::field::Field;
use crate::groebner::{interreduce, to_dense, Engine, InputRole, ModuleOrder, SparseVec, Term};
use crate::hilbert::{monomial_quotient_numerator, HilbertSeries};
use crate::matrix::ModuleMap;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

/// A homogeneous ideal together with its reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    gens: Vec<Polynomial<F>>,
    gb: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &PolyRing<F>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
            return Err(CommalgError::NotHomogeneous(ring.format(g)));
        }
        let gb = groebner_basis(ring, &[0], &gens.iter().map(|g| vec![g.clone()]).collect::<Vec<_>>())?
            .into_iter()
            .map(|mut v| v.remove(0))
            .collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn gb(&self) -> &[Polynomial<F>] {
        &self.gb
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let order = ModuleOrder::new(vec![0]);
        let mut engine = Engine::new(self.ring.field(), &order);
        engine.add_base(self.base_for(&order, 0, 1));
        let nf = engine.normal_form(order.to_sparse(std::slice::from_ref(p), 0));
        to_dense::<F>(&nf, 0..1).remove(0)
    }

    pub fn contains(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// `I * e_c` for `c` in `offset .. offset + count`, a Gröbner basis in any
    /// module order.
    pub(crate) fn base_for(&self, order: &ModuleOrder, offset: usize, count: usize) -> Vec<SparseVec<F::Elem>> {
        let mut out = Vec::with_capacity(self.gb.len() * count);
        for c in offset..offset + count {
            for g in &self.gb {
                let mut v: SparseVec<F::Elem> = g
                    .terms()
                    .iter()
                    .map(|(m, k)| Term {
                        comp: c as u32,
                        mono: *m,
                        coeff: k.clone(),
                    })
                    .collect();
                order.sort(&mut v);
                out.push(v);
            }
        }
        out
    }

    /// Hilbert series of `S/I`.
    pub fn quotient_hilbert_series(&self) -> HilbertSeries {
        let leads: Vec<Monomial> = self.gb.iter().map(|g| g.leading().unwrap().0).collect();
        HilbertSeries::new(0, monomial_quotient_numerator(&leads), self.ring.nvars() as u32)
    }

    /// Codimension of `V(I)`.
    pub fn codimension(&self) -> u32 {
        match self.quotient_hilbert_series().dimension() {
            Some(d) => self.ring.nvars() as u32 - d,
            None => self.ring.nvars() as u32 + 1,
        }
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` (dense columns)
/// of the free module with the given generator degrees.
pub fn groebner_basis<F: Field>(
    ring: &PolyRing<F>,
    degrees: &[i32],
    gens: &[Vec<Polynomial<F>>],
) -> Result<Vec<Vec<Polynomial<F>>>> {
    let order = ModuleOrder::new(degrees.to_vec());
    let inputs = sparse_inputs(&order, degrees, gens, InputRole::Extra)?;
    let out = Engine::new(ring.field(), &order).run(inputs);
    Ok(interreduce(ring.field(), &order, out.basis)
        .iter()
        .map(|v| to_dense::<F>(v, 0..degrees.len()))
        .collect())
}

fn check_vector<F: Field>(degrees: &[i32], v: &[Polynomial<F>]) -> Result<Option<i32>> {
    if v.len() != degrees.len() {
        return Err(CommalgError::DimensionMismatch(format!(
            "vector of length {} in a free module of rank {}",
            v.len(),
            degrees.len()
        )));
    }
    let mut deg = None;
    for (r, p) in v.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        if !p.is_homogeneous() {
            return Err(CommalgError::NotHomogeneous(format!("{p:?}")));
        }
        let d = p.degree().unwrap() as i32 + degrees[r];
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => {
                return Err(CommalgError::NotHomogeneous(format!(
                    "component degrees {e} and {d} differ"
                )))
            }
            _ => {}
        }
    }
    Ok(deg)
}

/// Degree of a homogeneous vector, `None` if zero.
pub fn vector_degree<F: Field>(degrees: &[i32], v: &[Polynomial<F>]) -> Option<i32> {
    v.iter()
        .enumerate()
        .find_map(|(r, p)| p.degree().map(|d| d as i32 + degrees[r]))
}

fn sparse_inputs<F: Field>(
    order: &ModuleOrder,
    degrees: &[i32],
    gens: &[Vec<Polynomial<F>>],
    role: InputRole,
) -> Result<Vec<(SparseVec<F::Elem>, InputRole)>> {
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            check_vector(degrees, g)?;
            let role = match role {
                InputRole::Extra => InputRole::Extra,
                InputRole::Generator(_) => InputRole::Generator(i),
            };
            Ok((order.to_sparse(g, 0), role))
        })
        .collect()
}

/// Indices of a minimal generating set of `span(gens) + base`, modulo `base`.
///
/// `base` must be a Gröbner basis in the order of `degrees`.
pub(crate) fn select_minimal<F: Field>(
    ring: &PolyRing<F>,
    degrees: &[i32],
    gens: &[Vec<Polynomial<F>>],
    base: Vec<SparseVec<F::Elem>>,
) -> Result<Vec<usize>> {
    let order = ModuleOrder::new(degrees.to_vec());
    let inputs = sparse_inputs(&order, degrees, gens, InputRole::Generator(0))?;
    let mut engine = Engine::new(ring.field(), &order);
    engine.add_base(base);
    let mut selected = engine.run(inputs).selected;
    selected.sort_by_key(|&i| (vector_degree(degrees, &gens[i]), i));
    Ok(selected)
}

/// Generators of the kernel of `F_src -> F_tgt / U`, where `U` is given by a
/// Gröbner basis `target_base` in the order of the target degrees.
pub(crate) fn kernel_modulo<F: Field>(
    ring: &PolyRing<F>,
    f: &ModuleMap<F>,
    target_base: Vec<SparseVec<F::Elem>>,
) -> Result<Vec<Vec<Polynomial<F>>>> {
    f.check_homogeneous()?;
    let nrows = f.nrows();
    let mut degrees = f.target_degrees().to_vec();
    degrees.extend_from_slice(f.source_degrees());
    let order = ModuleOrder::with_tags(degrees, nrows);
    let inputs = f
        .columns()
        .iter()
        .enumerate()
        .map(|(c, col)| {
            let mut v = order.to_sparse(col, 0);
            v.push(Term {
                comp: (nrows + c) as u32,
                mono: Monomial::ONE,
                coeff: ring.field().one(),
            });
            order.sort(&mut v);
            (v, InputRole::Extra)
        })
        .collect();
    let mut engine = Engine::new(ring.field(), &order);
    engine.add_base(target_base);
    let out = engine.run(inputs);
    Ok(out
        .tagged
        .iter()
        .map(|v| to_dense::<F>(v, nrows..nrows + f.ncols()))
        .collect())
}

/// Generators of `ker f` (not necessarily minimal).
pub fn syzygies<F: Field>(ring: &PolyRing<F>, f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let cols = kernel_modulo(ring, f, Vec::new())?;
    columns_to_map(cols, f.source_degrees().to_vec())
}

/// Minimal generators of `ker f`.
pub fn minimal_syzygies<F: Field>(ring: &PolyRing<F>, f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
    let cols = kernel_modulo(ring, f, Vec::new())?;
    let keep = select_minimal(ring, f.source_degrees(), &cols, Vec::new())?;
    let cols = keep.into_iter().map(|i| cols[i].clone()).collect();
    columns_to_map(cols, f.source_degrees().to_vec())
}

pub(crate) fn columns_to_map<F: Field>(cols: Vec<Vec<Polynomial<F>>>, target_degrees: Vec<i32>) -> Result<ModuleMap<F>> {
    let source_degrees = cols
        .iter()
        .map(|c| vector_degree(&target_degrees, c).unwrap_or(0))
        .collect();
    ModuleMap::from_columns(cols, source_degrees, target_degrees)
}

/// `coker(relations) / annihilator * F`, a graded module with a finite
/// presentation. When `annihilator` is set, `I * e_j` are implicit relations
/// for every generator `e_j`, so the module is a module over `S/I`.
#[derive(Debug, Clone)]
pub struct ModulePresentation<F: Field> {
    ring: PolyRing<F>,
    gen_degrees: Vec<i32>,
    relations: ModuleMap<F>,
    annihilator: Option<Arc<Ideal<F>>>,
}

impl<F: Field> ModulePresentation<F> {
    pub fn new(
        ring: &PolyRing<F>,
        gen_degrees: Vec<i32>,
        relations: ModuleMap<F>,
        annihilator: Option<Arc<Ideal<F>>>,
    ) -> Result<Self> {
        if relations.target_degrees() != gen_degrees.as_slice() {
            return Err(CommalgError::DimensionMismatch(
                "relation target degrees differ from generator degrees".into(),
            ));
        }
        relations.check_homogeneous()?;
        Ok(ModulePresentation {
            ring: ring.clone(),
            gen_degrees,
            relations,
            annihilator,
        })
    }

    /// Free module with the given generator degrees.
    pub fn free(ring: &PolyRing<F>, gen_degrees: Vec<i32>) -> Self {
        ModulePresentation {
            ring: ring.clone(),
            relations: ModuleMap::zero(Vec::new(), gen_degrees.clone()),
            gen_degrees,
            annihilator: None,
        }
    }

    /// The cyclic module `S/I`.
    pub fn quotient_ring(ideal: Arc<Ideal<F>>) -> Self {
        ModulePresentation {
            ring: ideal.ring().clone(),
            gen_degrees: vec![0],
            relations: ModuleMap::zero(Vec::new(), vec![0]),
            annihilator: Some(ideal),
        }
    }

    /// `coker(f)`.
    pub fn cokernel(ring: &PolyRing<F>, f: ModuleMap<F>) -> Result<Self> {
        Self::new(ring, f.target_degrees().to_vec(), f, None)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn gen_degrees(&self) -> &[i32] {
        &self.gen_degrees
    }

    pub fn relations(&self) -> &ModuleMap<F> {
        &self.relations
    }

    pub fn annihilator(&self) -> Option<&Arc<Ideal<F>>> {
        self.annihilator.as_ref()
    }

    pub fn with_annihilator(mut self, ideal: Option<Arc<Ideal<F>>>) -> Self {
        self.annihilator = ideal;
        self
    }

    pub fn order(&self) -> ModuleOrder {
        ModuleOrder::new(self.gen_degrees.clone())
    }

    /// `I * e_j` for all generators, as a Gröbner basis.
    pub(crate) fn annihilator_base(&self, order: &ModuleOrder) -> Vec<SparseVec<F::Elem>> {
        match &self.annihilator {
            Some(i) => i.base_for(order, 0, self.num_generators()),
            None => Vec::new(),
        }
    }

    /// All relations over `S`, including `I * e_j`.
    pub fn full_relations(&self) -> ModuleMap<F> {
        let mut cols: Vec<Vec<Polynomial<F>>> = self.relations.columns().to_vec();
        if let Some(ideal) = &self.annihilator {
            for j in 0..self.num_generators() {
                for g in ideal.gens() {
                    let mut col = vec![Polynomial::zero(); self.num_generators()];
                    col[j] = g.clone();
                    cols.push(col);
                }
            }
        }
        columns_to_map(cols, self.gen_degrees.clone()).expect("consistent dimensions")
    }

    /// Gröbner basis of the full relation module (not interreduced).
    pub(crate) fn relation_gb(&self) -> Vec<SparseVec<F::Elem>> {
        let order = self.order();
        let mut engine = Engine::new(self.ring.field(), &order);
        engine.add_base(self.annihilator_base(&order));
        let inputs = self
            .relations
            .columns()
            .iter()
            .map(|c| (order.to_sparse(c, 0), InputRole::Extra))
            .collect();
        engine.run(inputs).basis
    }

    /// Normal form of an element of the generator module.
    pub fn normal_form(&self, v: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
        check_vector(&self.gen_degrees, v)?;
        let order = self.order();
        let mut engine = Engine::new(self.ring.field(), &order);
        engine.add_base(self.relation_gb());
        let nf = engine.normal_form(order.to_sparse(v, 0));
        Ok(to_dense::<F>(&nf, 0..self.num_generators()))
    }

    /// Normal forms of several elements, sharing one Gröbner basis.
    pub fn normal_forms(&self, vs: &[Vec<Polynomial<F>>]) -> Result<Vec<Vec<Polynomial<F>>>> {
        let order = self.order();
        let mut engine = Engine::new(self.ring.field(), &order);
        engine.add_base(self.relation_gb());
        vs.iter()
            .map(|v| {
                check_vector(&self.gen_degrees, v)?;
                let nf = engine.normal_form(order.to_sparse(v, 0));
                Ok(to_dense::<F>(&nf, 0..self.num_generators()))
            })
            .collect()
    }

    /// Generators (not necessarily minimal) of the kernel of the map from a
    /// free module to this module given by the columns of `f`.
    pub fn kernel_of(&self, f: &ModuleMap<F>) -> Result<ModuleMap<F>> {
        if f.target_degrees() != self.gen_degrees.as_slice() {
            return Err(CommalgError::DimensionMismatch(
                "map target differs from the generator module".into(),
            ));
        }
        let cols = kernel_modulo(&self.ring, f, self.relation_gb())?;
        columns_to_map(cols, f.source_degrees().to_vec())
    }

    /// True iff `v` is zero in the module.
    pub fn is_zero_element(&self, v: &[Polynomial<F>]) -> Result<bool> {
        Ok(self.normal_form(v)?.iter().all(|p| p.is_zero()))
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let mut leads: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
        for v in self.relation_gb() {
            leads.entry(v[0].comp).or_default().push(v[0].mono);
        }
        let n = self.ring.nvars() as u32;
        let mut total: BTreeMap<i32, i64> = BTreeMap::new();
        for (j, &d) in self.gen_degrees.iter().enumerate() {
            let num = monomial_quotient_numerator(leads.get(&(j as u32)).map_or(&[][..], |v| &v[..]));
            for (k, c) in num.into_iter().enumerate() {
                *total.entry(d + k as i32).or_insert(0) += c;
            }
        }
        HilbertSeries::from_numerator_map(&total, n)
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    /// Eliminates generators that are killed by relations with a unit entry.
    /// Returns the pruned module and the indices of surviving generators; the
    /// surviving generators still generate the module.
    pub fn prune(&self) -> (ModulePresentation<F>, Vec<usize>) {
        let field = self.ring.field();
        let ring = &self.ring;
        let mut cols: Vec<Vec<Polynomial<F>>> = self.relations.columns().to_vec();
        let mut alive: Vec<bool> = vec![true; self.num_generators()];
        loop {
            let mut pivot = None;
            'search: for (ci, col) in cols.iter().enumerate() {
                for (r, p) in col.iter().enumerate() {
                    if alive[r] {
                        if let Some((m, _)) = p.leading() {
                            if m.is_one() {
                                pivot = Some((ci, r));
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((ci, r)) = pivot else { break };
            let rel = cols.swap_remove(ci);
            let unit = rel[r].leading().unwrap().1.clone();
            let inv = field.inv(&unit);
            for col in cols.iter_mut() {
                if col[r].is_zero() {
                    continue;
                }
                // col := col - (col[r] / unit) * rel
                let factor = ring.scale(&col[r], &inv);
                for (k, q) in rel.iter().enumerate() {
                    if !q.is_zero() {
                        col[k] = ring.sub(&col[k], &ring.mul(&factor, q));
                    }
                }
                debug_assert!(col[r].is_zero());
            }
            alive[r] = false;
        }
        let kept: Vec<usize> = (0..alive.len()).filter(|&r| alive[r]).collect();
        let gen_degrees: Vec<i32> = kept.iter().map(|&r| self.gen_degrees[r]).collect();
        let cols: Vec<Vec<Polynomial<F>>> = cols
            .into_iter()
            .map(|c| kept.iter().map(|&r| c[r].clone()).collect::<Vec<_>>())
            .filter(|c: &Vec<Polynomial<F>>| c.iter().any(|p| !p.is_zero()))
            .collect();
        let relations = columns_to_map(cols, gen_degrees.clone()).expect("consistent dimensions");
        (
            ModulePresentation {
                ring: self.ring.clone(),
                gen_degrees,
                relations,
                annihilator: self.annihilator.clone(),
            },
            kept,
        )
    }

    /// Drops relations that are redundant modulo the other relations and
    /// the annihilator.
    pub fn minimize_relations(&self) -> Result<ModulePresentation<F>> {
        let order = self.order();
        let cols = self.relations.columns();
        let keep = select_minimal(&self.ring, &self.gen_degrees, cols, self.annihilator_base(&order))?;
        let relations = self.relations.select_columns(&keep);
        Ok(ModulePresentation {
            ring: self.ring.clone(),
            gen_degrees: self.gen_degrees.clone(),
            relations,
            annihilator: self.annihilator.clone(),
        })
    }

    /// Pruned presentation with minimal relations (modulo the annihilator).
    pub fn minimal_presentation(&self) -> Result<(ModulePresentation<F>, Vec<usize>)> {
        let (pruned, kept) = self.prune();
        Ok((pruned.minimize_relations()?, kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let f = ModuleMap::from_rows(vec![vec![r.var(0), r.var(1)]], vec![1, 1], vec![0]).unwrap();
        let k = minimal_syzygies(&r, &f).unwrap();
        assert_eq!(k.ncols(), 1);
        let composed = f.compose(&r, &k).unwrap();
        assert!(composed.is_zero());
        let col = k.column(0);
        // proportional to (y, -x)
        assert_eq!(r.mul(&col[0], &r.var(0)), r.neg(&r.mul(&col[1], &r.var(1))));
    }

    #[test]
    fn identity_has_zero_kernel() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let id = ModuleMap::identity(&r, vec![0]);
        assert_eq!(minimal_syzygies(&r, &id).unwrap().ncols(), 0);
    }

    #[test]
    fn prune_removes_unit_relation() {
        let r = PolyRing::new(2, Rationals).unwrap();
        // generators e0, e1 (deg 0), relations: e0 - e1, x*e1
        let rel = ModuleMap::from_rows(
            vec![vec![r.one(), r.zero()], vec![r.neg(&r.one()), r.var(0)]],
            vec![0, 1],
            vec![0, 0],
        )
        .unwrap();
        let m = ModulePresentation::cokernel(&r, rel).unwrap();
        let (p, kept) = m.prune();
        assert_eq!(kept.len(), 1);
        assert_eq!(p.num_generators(), 1);
        assert_eq!(p.hilbert_series(), m.hilbert_series());
        assert_eq!(p.hilbert_series().reduced(), HilbertSeries::new(0, vec![1], 1));
    }

    #[test]
    fn ideal_codimension() {
        let r = PolyRing::new(4, Rationals).unwrap();
        let det = r.sub(&r.mul(&r.var(0), &r.var(3)), &r.mul(&r.var(1), &r.var(2)));
        let i = Ideal::new(&r, vec![det]).unwrap();
        assert_eq!(i.codimension(), 1);
        assert!(i.contains(&r.mul(&r.var(0), &i.gens()[0])));
        assert!(!i.contains(&r.var(0)));
    }
}

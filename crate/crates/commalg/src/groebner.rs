//! Homogeneous Buchberger algorithm for submodules of graded free modules.
//!
//! Terms are compared with a position-aware extension of grevlex: first by an
//! optional elimination block (components below `tag_start` dominate), then by
//! total degree including the component's degree, then grevlex on the
//! monomial, then by component index (lower index is larger).
//!
//! Input is processed one degree at a time. This gives two things for free:
//! inputs that are already in the span of what came before can be detected and
//! dropped (minimal generator selection), and in elimination mode every
//! element whose leading term falls in the tag block is a syzygy.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: E,
}

/// A sparse module element, terms sorted decreasing for some [`ModuleOrder`].
pub type SparseVec<E> = Vec<Term<E>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    degrees: Vec<i32>,
    tag_start: Option<usize>,
}

impl ModuleOrder {
    pub fn new(degrees: Vec<i32>) -> Self {
        ModuleOrder {
            degrees,
            tag_start: None,
        }
    }

    /// Components `>= tag_start` form the eliminated (smaller) block.
    pub fn with_tags(degrees: Vec<i32>, tag_start: usize) -> Self {
        ModuleOrder {
            degrees,
            tag_start: Some(tag_start),
        }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    #[inline]
    pub fn is_tag(&self, comp: u32) -> bool {
        self.tag_start.is_some_and(|t| comp as usize >= t)
    }

    #[inline]
    pub fn term_degree(&self, comp: u32, mono: &Monomial) -> i32 {
        mono.degree() as i32 + self.degrees[comp as usize]
    }

    #[inline]
    pub fn cmp(&self, ac: u32, am: &Monomial, bc: u32, bm: &Monomial) -> Ordering {
        if let Some(t) = self.tag_start {
            let (at, bt) = (ac as usize >= t, bc as usize >= t);
            if at != bt {
                return if at { Ordering::Less } else { Ordering::Greater };
            }
        }
        let (ad, bd) = (self.term_degree(ac, am), self.term_degree(bc, bm));
        ad.cmp(&bd)
            .then_with(|| am.cmp(bm))
            .then_with(|| bc.cmp(&ac))
    }

    /// Converts a dense column into a sorted sparse vector.
    pub fn to_sparse<F: Field>(&self, column: &[Polynomial<F>], comp_offset: u32) -> SparseVec<F::Elem> {
        let mut terms: Vec<Term<F::Elem>> = column
            .iter()
            .enumerate()
            .flat_map(|(r, p)| {
                p.terms().iter().map(move |(m, c)| Term {
                    comp: r as u32 + comp_offset,
                    mono: *m,
                    coeff: c.clone(),
                })
            })
            .collect();
        terms.sort_by(|a, b| self.cmp(b.comp, &b.mono, a.comp, &a.mono));
        terms
    }

    pub fn sort<E>(&self, v: &mut SparseVec<E>) {
        v.sort_by(|a, b| self.cmp(b.comp, &b.mono, a.comp, &a.mono));
    }
}

/// Splits a sparse vector into dense polynomials for components in `range`,
/// re-indexed from zero.
pub fn to_dense<F: Field>(v: &SparseVec<F::Elem>, range: std::ops::Range<usize>) -> Vec<Polynomial<F>> {
    let mut cols: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); range.len()];
    for t in v {
        let c = t.comp as usize;
        if range.contains(&c) {
            cols[c - range.start].push((t.mono, t.coeff.clone()));
        }
    }
    cols.into_iter()
        .map(|mut terms| {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            Polynomial::from_sorted_unchecked(terms)
        })
        .collect()
}

/// `a - c * m * b` for sorted sparse vectors.
pub(crate) fn sub_mul<F: Field>(
    field: &F,
    order: &ModuleOrder,
    a: &[Term<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    b: &[Term<F::Elem>],
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bm = b.first().map(|t| t.mono.mul(m));
    while i < a.len() && j < b.len() {
        let bmono = bm.unwrap();
        match order.cmp(a[i].comp, &a[i].mono, b[j].comp, &bmono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    comp: b[j].comp,
                    mono: bmono,
                    coeff: field.neg(&field.mul(c, &b[j].coeff)),
                });
                j += 1;
                bm = b.get(j).map(|t| t.mono.mul(m));
            }
            Ordering::Equal => {
                let v = field.sub(&a[i].coeff, &field.mul(c, &b[j].coeff));
                if !field.is_zero(&v) {
                    out.push(Term {
                        comp: a[i].comp,
                        mono: a[i].mono,
                        coeff: v,
                    });
                }
                i += 1;
                j += 1;
                bm = b.get(j).map(|t| t.mono.mul(m));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(Term {
            comp: b[j].comp,
            mono: b[j].mono.mul(m),
            coeff: field.neg(&field.mul(c, &b[j].coeff)),
        });
        j += 1;
    }
    out
}

fn scale<F: Field>(field: &F, v: &mut SparseVec<F::Elem>, s: &F::Elem) {
    for t in v.iter_mut() {
        t.coeff = field.mul(&t.coeff, s);
    }
}

fn make_monic<F: Field>(field: &F, v: &mut SparseVec<F::Elem>) {
    if let Some(t) = v.first() {
        if !field.is_one(&t.coeff) {
            let inv = field.inv(&t.coeff);
            scale(field, v, &inv);
        }
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    deg: i32,
}

#[derive(Debug, Clone)]
struct Element<E> {
    terms: SparseVec<E>,
    mask: u32,
}

impl<E> Element<E> {
    fn lead(&self) -> &Term<E> {
        &self.terms[0]
    }
}

/// What to do with an input vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputRole {
    /// Always added; not tracked.
    Extra,
    /// Tracked: reported as selected if it is not in the span of earlier input.
    Generator(usize),
}

/// Outcome of [`buchberger`].
#[derive(Debug, Clone)]
pub struct GbOutput<E> {
    /// A Gröbner basis (leading terms outside the tag block), not interreduced.
    pub basis: Vec<SparseVec<E>>,
    /// Generator ids, in increasing degree, forming a minimal generating set
    /// modulo the base and extra input.
    pub selected: Vec<usize>,
    /// Elements whose leading term lies in the tag block.
    pub tagged: Vec<SparseVec<E>>,
}

pub struct Engine<'a, F: Field> {
    field: &'a F,
    order: &'a ModuleOrder,
    /// Keep pairs with coprime leading monomials. The product criterion only
    /// holds for ideals, so this is on for vectors and for syzygy runs.
    keep_coprime: bool,
    basis: Vec<Element<F::Elem>>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    tagged: Vec<SparseVec<F::Elem>>,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(field: &'a F, order: &'a ModuleOrder) -> Self {
        Engine {
            field,
            order,
            keep_coprime: order.tag_start.is_some() || order.rank() > 1,
            basis: Vec::new(),
            by_comp: vec![Vec::new(); order.rank()],
            pairs: Vec::new(),
            tagged: Vec::new(),
        }
    }

    /// Adds elements known to form a Gröbner basis among themselves.
    pub fn add_base(&mut self, base: impl IntoIterator<Item = SparseVec<F::Elem>>) {
        for mut v in base {
            if v.is_empty() {
                continue;
            }
            make_monic(self.field, &mut v);
            let idx = self.basis.len();
            let comp = v[0].comp as usize;
            self.basis.push(Element {
                mask: v[0].mono.support_mask(),
                terms: v,
            });
            self.by_comp[comp].push(idx);
        }
    }

    fn find_divisor(&self, comp: u32, mono: &Monomial) -> Option<usize> {
        let mask = mono.support_mask();
        self.by_comp[comp as usize].iter().copied().find(|&g| {
            let e = &self.basis[g];
            e.mask & !mask == 0 && e.lead().mono.divides(mono)
        })
    }

    /// Reduces the leading term until it is not divisible by any basis lead
    /// (or lies in the tag block).
    pub fn top_reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        loop {
            let Some(lead) = v.first() else { return v };
            if self.order.is_tag(lead.comp) {
                return v;
            }
            let Some(g) = self.find_divisor(lead.comp, &lead.mono) else {
                return v;
            };
            let g = &self.basis[g];
            let q = g.lead().mono.quotient_of(&lead.mono);
            let c = self.field.div(&lead.coeff, &g.lead().coeff);
            v = sub_mul(self.field, self.order, &v, &c, &q, &g.terms);
        }
    }

    /// Full normal form (all terms outside the tag block reduced).
    pub fn normal_form(&self, v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut done: SparseVec<F::Elem> = Vec::new();
        let mut rest = v;
        loop {
            rest = self.top_reduce(rest);
            if rest.is_empty() {
                break;
            }
            if self.order.is_tag(rest[0].comp) {
                done.extend(rest);
                break;
            }
            done.push(rest.remove(0));
        }
        done
    }

    fn spoly(&self, p: &Pair) -> SparseVec<F::Elem> {
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let qa = a.lead().mono.quotient_of(&p.lcm);
        let qb = b.lead().mono.quotient_of(&p.lcm);
        // leads are monic
        let va: SparseVec<F::Elem> = a
            .terms
            .iter()
            .map(|t| Term {
                comp: t.comp,
                mono: t.mono.mul(&qa),
                coeff: t.coeff.clone(),
            })
            .collect();
        sub_mul(self.field, self.order, &va, &self.field.one(), &qb, &b.terms)
    }

    fn insert(&mut self, mut h: SparseVec<F::Elem>) {
        make_monic(self.field, &mut h);
        let comp = h[0].comp;
        let th = h[0].mono;
        let idx = self.basis.len();

        // Gebauer–Möller: drop old pairs made redundant by the new lead.
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.comp != comp || !th.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead().mono.lcm(&th);
            let lj = basis[p.j].lead().mono.lcm(&th);
            li == p.lcm || lj == p.lcm
        });

        let mut candidates: Vec<(Pair, bool)> = self.by_comp[comp as usize]
            .iter()
            .map(|&g| {
                let tg = self.basis[g].lead().mono;
                let lcm = tg.lcm(&th);
                let deg = self.order.term_degree(comp, &lcm);
                (
                    Pair {
                        i: g,
                        j: idx,
                        comp,
                        lcm,
                        deg,
                    },
                    tg.is_coprime(&th),
                )
            })
            .collect();
        candidates.sort_by(|a, b| a.0.lcm.cmp(&b.0.lcm).then_with(|| a.0.i.cmp(&b.0.i)));
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        for k in 0..candidates.len() {
            let (p, coprime) = &candidates[k];
            let divides_p = |q: &Pair| q.lcm.divides(&p.lcm);
            if *coprime
                || (!candidates[k + 1..].iter().any(|(q, _)| divides_p(q))
                    && !kept.iter().any(|(q, _)| divides_p(q)))
            {
                kept.push((p.clone(), *coprime));
            }
        }
        for (p, coprime) in kept {
            if !coprime || self.keep_coprime {
                self.pairs.push(p);
            }
        }

        self.basis.push(Element {
            mask: th.support_mask(),
            terms: h,
        });
        self.by_comp[comp as usize].push(idx);
    }

    fn absorb(&mut self, v: SparseVec<F::Elem>) -> bool {
        let r = self.top_reduce(v);
        if r.is_empty() {
            return false;
        }
        if self.order.is_tag(r[0].comp) {
            self.tagged.push(r);
            return false;
        }
        self.insert(r);
        true
    }

    /// Runs Buchberger on `inputs` (homogeneous vectors, sorted).
    pub fn run(mut self, inputs: Vec<(SparseVec<F::Elem>, InputRole)>) -> GbOutput<F::Elem> {
        let mut by_degree: BTreeMap<i32, Vec<(SparseVec<F::Elem>, InputRole)>> = BTreeMap::new();
        for (v, role) in inputs {
            match v.first() {
                Some(t) => {
                    let d = self.order.term_degree(t.comp, &t.mono);
                    by_degree.entry(d).or_default().push((v, role));
                }
                None => {
                    // zero input: never selected
                }
            }
        }
        let mut selected = Vec::new();
        loop {
            let next_pair = self.pairs.iter().map(|p| p.deg).min();
            let next_input = by_degree.keys().next().copied();
            let d = match (next_pair, next_input) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            let mut current: Vec<Pair> = Vec::new();
            self.pairs.retain(|p| {
                if p.deg == d {
                    current.push(p.clone());
                    false
                } else {
                    true
                }
            });
            current.sort_by(|a, b| a.lcm.cmp(&b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
            for p in &current {
                let s = self.spoly(p);
                self.absorb(s);
            }
            if let Some(mut batch) = by_degree.remove(&d) {
                // extras first so that tracked generators are judged against them
                batch.sort_by_key(|(_, role)| match role {
                    InputRole::Extra => (0, 0),
                    InputRole::Generator(i) => (1, *i),
                });
                for (v, role) in batch {
                    let added = self.absorb(v);
                    if let InputRole::Generator(id) = role {
                        if added {
                            selected.push(id);
                        }
                    }
                }
            }
        }
        GbOutput {
            basis: self.basis.into_iter().map(|e| e.terms).collect(),
            selected,
            tagged: self.tagged,
        }
    }
}

/// Interreduces a Gröbner basis: drops elements with divisible leads and
/// fully reduces the rest. Output is monic and sorted by decreasing
/// leading term.
pub fn interreduce<F: Field>(field: &F, order: &ModuleOrder, basis: Vec<SparseVec<F::Elem>>) -> Vec<SparseVec<F::Elem>> {
    let mut basis: Vec<SparseVec<F::Elem>> = basis.into_iter().filter(|v| !v.is_empty()).collect();
    basis.sort_by(|a, b| order.cmp(a[0].comp, &a[0].mono, b[0].comp, &b[0].mono));
    let mut minimal: Vec<SparseVec<F::Elem>> = Vec::new();
    for v in basis {
        let redundant = minimal
            .iter()
            .any(|g| g[0].comp == v[0].comp && g[0].mono.divides(&v[0].mono));
        if !redundant {
            minimal.push(v);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let mut engine = Engine::new(field, order);
        engine.add_base(
            minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, g)| g.clone()),
        );
        let lead = minimal[k][0].clone();
        let tail: SparseVec<F::Elem> = minimal[k][1..].to_vec();
        let mut v = vec![lead];
        v.extend(engine.normal_form(tail));
        make_monic(field, &mut v);
        out.push(v);
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::PolyRing;

    fn ideal_gb(ring: &PolyRing<Rationals>, gens: &[Polynomial<Rationals>]) -> Vec<Polynomial<Rationals>> {
        let order = ModuleOrder::new(vec![0]);
        let inputs = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (order.to_sparse(std::slice::from_ref(g), 0), InputRole::Generator(i)))
            .collect();
        let out = Engine::new(ring.field(), &order).run(inputs);
        interreduce(ring.field(), &order, out.basis)
            .iter()
            .map(|v| to_dense::<Rationals>(v, 0..1).remove(0))
            .collect()
    }

    #[test]
    fn difference_and_sum_of_squares() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let (x, y) = (r.var(0), r.var(1));
        let x2 = r.mul(&x, &x);
        let y2 = r.mul(&y, &y);
        let gb = ideal_gb(&r, &[r.sub(&x2, &y2), r.add(&x2, &y2)]);
        assert_eq!(gb, vec![x2, y2]);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let r = PolyRing::new(2, Rationals).unwrap();
        assert!(ideal_gb(&r, &[]).is_empty());
        assert!(ideal_gb(&r, &[r.zero()]).is_empty());
    }

    #[test]
    fn twisted_cubic() {
        // 2-minors of [[x0 x1 x2],[x1 x2 x3]]
        let r = PolyRing::new(4, Rationals).unwrap();
        let v = |i| r.var(i);
        let minor = |a: usize, b: usize, c: usize, d: usize| r.sub(&r.mul(&v(a), &v(b)), &r.mul(&v(c), &v(d)));
        let gens = vec![minor(0, 2, 1, 1), minor(0, 3, 1, 2), minor(1, 3, 2, 2)];
        let gb = ideal_gb(&r, &gens);
        assert_eq!(gb.len(), 3);
    }
}

//! Sparse multivariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{CommalgError, Result};
use crate::field::{Field, FieldKind};
use crate::monomial::{Monomial, MAX_VARS};

/// Polynomial ring `K[x_0, ..., x_{n-1}]`, all variables of degree one.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    nvars: usize,
    field: F,
}

/// Terms sorted strictly decreasing in grevlex order; no zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> std::hash::Hash for Polynomial<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, F::Elem)> {
        self.terms.first()
    }

    /// Total degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(t, _)| t.degree() == m.degree()),
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(field: &F, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Polynomial { terms: out }
    }

    /// Builds a polynomial from terms already sorted and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Monomial, F::Elem)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Polynomial { terms }
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*{m:?}")?;
        }
        Ok(())
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new(nvars: usize, field: F) -> Result<Self> {
        if nvars > MAX_VARS {
            return Err(CommalgError::TooManyVariables(nvars));
        }
        Ok(PolyRing { nvars, field })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn field_kind(&self) -> FieldKind {
        self.field.kind()
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial::zero()
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_unchecked(vec![(Monomial::ONE, c)])
        }
    }

    pub fn from_int(&self, v: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(v))
    }

    pub fn one(&self) -> Polynomial<F> {
        self.from_int(1)
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars, "variable index out of range");
        Polynomial::from_sorted_unchecked(vec![(Monomial::var(i), self.field.one())])
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Polynomial<F> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_unchecked(vec![(m, c)])
        }
    }

    /// `a + s*b` where `s` is a scalar.
    pub fn add_scaled(&self, a: &Polynomial<F>, s: &F::Elem, b: &Polynomial<F>) -> Polynomial<F> {
        if self.field.is_zero(s) {
            return a.clone();
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match a.terms[i].0.cmp(&b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.terms[j].0, f.mul(s, &b.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a.terms[i].1, &f.mul(s, &b.terms[j].1));
                    if !f.is_zero(&c) {
                        out.push((a.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend(b.terms[j..].iter().map(|(m, c)| (*m, f.mul(s, c))));
        Polynomial::from_sorted_unchecked(out)
    }

    pub fn add(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        self.add_scaled(a, &self.field.one(), b)
    }

    pub fn sub(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        self.add_scaled(a, &self.field.from_i64(-1), b)
    }

    pub fn neg(&self, a: &Polynomial<F>) -> Polynomial<F> {
        self.scale(a, &self.field.from_i64(-1))
    }

    pub fn scale(&self, a: &Polynomial<F>, s: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(s) {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_unchecked(
            a.terms.iter().map(|(m, c)| (*m, self.field.mul(s, c))).collect(),
        )
    }

    pub fn mul_term(&self, a: &Polynomial<F>, m: &Monomial, s: &F::Elem) -> Polynomial<F> {
        if self.field.is_zero(s) {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_unchecked(
            a.terms.iter().map(|(t, c)| (t.mul(m), self.field.mul(s, c))).collect(),
        )
    }

    pub fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        if a.is_zero() || b.is_zero() {
            return Polynomial::zero();
        }
        let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = Polynomial::zero();
        for (m, c) in &short.terms {
            acc = self.add(&acc, &self.mul_term(long, m, c));
        }
        acc
    }

    pub fn pow(&self, a: &Polynomial<F>, e: u32) -> Polynomial<F> {
        let mut out = self.one();
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    pub fn sum<'a>(&self, it: impl IntoIterator<Item = &'a Polynomial<F>>) -> Polynomial<F> {
        it.into_iter().fold(Polynomial::zero(), |acc, p| self.add(&acc, p))
    }

    /// Evaluates at a point given as one field element per variable.
    pub fn eval(&self, a: &Polynomial<F>, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars, "point has wrong length");
        let f = &self.field;
        let mut total = f.zero();
        for (m, c) in &a.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    v = f.mul(&v, x);
                }
            }
            total = f.add(&total, &v);
        }
        total
    }

    /// The constant coefficient, zero if absent.
    pub fn constant_coefficient(&self, a: &Polynomial<F>) -> F::Elem {
        match a.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field.zero(),
        }
    }

    pub fn make_monic(&self, a: &Polynomial<F>) -> Polynomial<F> {
        match a.leading() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(a, &self.field.inv(c)),
        }
    }

    pub fn format(&self, a: &Polynomial<F>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            let cs = self.field.format(c);
            if i > 0 {
                if let Some(rest) = cs.strip_prefix('-') {
                    s.push_str(" - ");
                    s.push_str(rest);
                } else {
                    s.push_str(" + ");
                    s.push_str(&cs);
                }
            } else {
                s.push_str(&cs);
            }
            if !m.is_one() {
                s.push_str(&format!("*{m:?}"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn arithmetic_over_q() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let x = r.var(0);
        let y = r.var(1);
        let a = r.add(&x, &y);
        let b = r.sub(&x, &y);
        let prod = r.mul(&a, &b);
        let expect = r.sub(&r.mul(&x, &x), &r.mul(&y, &y));
        assert_eq!(prod, expect);
        assert!(prod.is_homogeneous());
        assert!(r.sub(&prod, &expect).is_zero());
    }

    #[test]
    fn evaluation_mod_p() {
        let f = PrimeField::new(101).unwrap();
        let r = PolyRing::new(3, f).unwrap();
        let p = r.add(&r.mul(&r.var(0), &r.var(1)), &r.from_int(5));
        assert_eq!(r.eval(&p, &[3, 4, 9]), 17);
    }

    #[test]
    fn from_terms_merges() {
        let q = Rationals;
        let m = Monomial::var(0);
        let p = Polynomial::<Rationals>::from_terms(&q, vec![(m, q.from_i64(2)), (m, q.from_i64(-2))]);
        assert!(p.is_zero());
    }
}

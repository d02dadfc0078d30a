use std::collections::HashMap;
use std::sync::Arc;

use commalg::{
    dense_rank, free_resolution, groebner_basis, minimal_syzygies, Field, Ideal, ModuleMap, ModulePresentation, Monomial,
    PolyRing, Polynomial, PrimeField,
};
use proptest::prelude::*;

fn ring() -> PolyRing<PrimeField> {
    PolyRing::new(3, PrimeField::new(101).unwrap()).unwrap()
}

fn monomials(nvars: usize, deg: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == nvars {
            cur.push(left);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(nvars, i + 1, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, 0, deg, &mut Vec::new(), &mut out);
    out
}

/// Homogeneous polynomial of degree `deg` from a coefficient stream.
fn poly_from(r: &PolyRing<PrimeField>, deg: u32, coeffs: &[i64]) -> Polynomial<PrimeField> {
    let terms = monomials(r.nvars(), deg)
        .into_iter()
        .zip(coeffs.iter().cycle())
        .map(|(m, &c)| (m, r.field().from_i64(c)))
        .filter(|(_, c)| !r.field().is_zero(c))
        .collect();
    Polynomial::from_terms(r.field(), terms)
}

/// dim_k (S/I)_d by linear algebra on the spanning set `m * g`.
fn hilbert_function_oracle(r: &PolyRing<PrimeField>, gens: &[Polynomial<PrimeField>], d: u32) -> i64 {
    let basis = monomials(r.nvars(), d);
    let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some(gd) = g.degree() else { continue };
        if gd > d {
            continue;
        }
        for m in monomials(r.nvars(), d - gd) {
            let mut row = vec![r.field().zero(); basis.len()];
            for (t, c) in g.terms() {
                row[index[&t.mul(&m)]] = c.clone();
            }
            rows.push(row);
        }
    }
    basis.len() as i64 - dense_rank(r.field(), &rows) as i64
}

fn ideal_strategy() -> impl Strategy<Value = Vec<(u32, Vec<i64>)>> {
    prop::collection::vec((1u32..=3, prop::collection::vec(-3i64..=3, 1..8)), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hilbert_series_matches_linear_algebra(spec in ideal_strategy()) {
        let r = ring();
        let gens: Vec<_> = spec.iter().map(|(d, c)| poly_from(&r, *d, c)).collect();
        let ideal = Arc::new(Ideal::new(&r, gens.clone()).unwrap());
        let hs = ModulePresentation::quotient_ring(ideal).hilbert_series();
        let coeffs = hs.coefficients(0, 6);
        for d in 0..6u32 {
            prop_assert_eq!(coeffs[d as usize], hilbert_function_oracle(&r, &gens, d));
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(spec in ideal_strategy(), a in prop::collection::vec(-5i64..=5, 1..10), b in prop::collection::vec(-5i64..=5, 1..10), s in 1i64..50) {
        let r = ring();
        let gens: Vec<_> = spec.iter().map(|(d, c)| poly_from(&r, *d, c)).collect();
        let ideal = Ideal::new(&r, gens).unwrap();
        let p = poly_from(&r, 3, &a);
        let q = poly_from(&r, 3, &b);
        let np = ideal.normal_form(&p);
        prop_assert_eq!(ideal.normal_form(&np), np.clone());
        let sc = r.field().from_i64(s);
        let combo = r.add(&p, &r.scale(&q, &sc));
        let expected = r.add(&np, &r.scale(&ideal.normal_form(&q), &sc));
        prop_assert_eq!(ideal.normal_form(&combo), expected);
        prop_assert!(ideal.contains(&r.sub(&p, &np)));
    }

    #[test]
    fn resolutions_are_minimal_complexes(spec in ideal_strategy()) {
        let r = ring();
        let gens: Vec<_> = spec.iter().map(|(d, c)| poly_from(&r, *d, c)).collect();
        let m = ModulePresentation::quotient_ring(Arc::new(Ideal::new(&r, gens).unwrap()));
        let res = free_resolution(&m, true).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(!res.has_unit_entries());
        prop_assert!(res.length() <= r.nvars());
        prop_assert!(res.hilbert_series().same_series(&m.hilbert_series()));
    }

    #[test]
    fn syzygies_compose_to_zero(spec in prop::collection::vec((0u32..=2, prop::collection::vec(-3i64..=3, 1..6)), 1..5)) {
        let r = ring();
        let row: Vec<_> = spec.iter().map(|(d, c)| poly_from(&r, *d, c)).collect();
        let degrees: Vec<i32> = spec.iter().map(|(d, _)| *d as i32).collect();
        let f = ModuleMap::from_rows(vec![row], degrees, vec![0]).unwrap();
        let k = minimal_syzygies(&r, &f).unwrap();
        prop_assert!(f.compose(&r, &k).unwrap().is_zero());
    }
}

#[test]
fn determinant_of_generic_two_by_two_is_a_basis() {
    let r = PolyRing::new(4, PrimeField::new(32003).unwrap()).unwrap();
    let det = r.sub(&r.mul(&r.var(0), &r.var(3)), &r.mul(&r.var(1), &r.var(2)));
    let gb = groebner_basis(&r, &[0], &[vec![det.clone()]]).unwrap();
    assert_eq!(gb, vec![vec![r.make_monic(&det)]]);
}

#[test]
fn module_hilbert_series_of_koszul_cokernel() {
    // coker of (x, y, z)^T : S(-1)^3 -> S is k, with series 1
    let r = ring();
    let f = ModuleMap::from_rows(vec![vec![r.var(0), r.var(1), r.var(2)]], vec![1, 1, 1], vec![0]).unwrap();
    let m = ModulePresentation::cokernel(&r, f).unwrap();
    assert_eq!(m.hilbert_series().coefficients(0, 4), vec![1, 0, 0, 0]);
    let res = free_resolution(&m, true).unwrap();
    assert_eq!(res.betti_table().ranks(), vec![1, 3, 3, 1]);
}

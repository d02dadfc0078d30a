use commalg::{ModuleMap, ModulePresentation, PolyRing, PrimeField, Rationals};
use detvar_core::detvar::*;
use detvar_core::schurcalc::exterior_expand;
use detvar_core::Partition;
use proptest::prelude::*;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn random_matrix(ring: &PolyRing<PrimeField>, rows: usize, cols: usize, seed: &[i64]) -> ModuleMap<PrimeField> {
    // entries are c0 + c1*x0 + c2*x1 with coefficients drawn from the seed
    let mut it = seed.iter().cycle();
    let mut next = || *it.next().unwrap();
    let columns = (0..cols)
        .map(|_| {
            (0..rows)
                .map(|_| {
                    let c = ring.from_int(next());
                    let a = ring.mul(&ring.from_int(next()), &ring.var(0));
                    let b = ring.mul(&ring.from_int(next()), &ring.var(1));
                    ring.add(&ring.add(&c, &a), &b)
                })
                .collect()
        })
        .collect();
    ModuleMap::from_columns(columns, vec![0; cols], vec![0; rows]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cauchy_binet(
        r in 1usize..=4, q in 1usize..=4, c in 1usize..=4, k in 1usize..=3,
        seed in proptest::collection::vec(-5i64..=5, 7..20),
    ) {
        prop_assume!(k <= r.min(q).min(c));
        let ring = PolyRing::new(2, PrimeField::new(101).unwrap()).unwrap();
        let a = random_matrix(&ring, r, q, &seed);
        let b = random_matrix(&ring, q, c, &seed[3..]);
        let ab = a.compose(&ring, &b).unwrap();
        let lhs = exterior_power_matrix(&ring, &ab, k).unwrap();
        let rhs = exterior_power_matrix(&ring, &a, k)
            .unwrap()
            .compose(&ring, &exterior_power_matrix(&ring, &b, k).unwrap())
            .unwrap();
        prop_assert_eq!(lhs.columns(), rhs.columns());
    }
}

#[test]
fn setup_examples() {
    for (m, n, l, codim, minors) in [(2, 2, 1, 1, 1), (2, 3, 1, 2, 3), (3, 3, 2, 1, 1), (3, 4, 2, 2, 4), (3, 3, 1, 4, 9)] {
        let s = DetSetup::new(m, n, l, Rationals).unwrap();
        assert_eq!(s.codim_expected(), codim);
        assert_eq!(s.minors().len(), minors);
        assert_eq!(s.expected_minor_count(), minors as u64);
        assert_eq!(s.ideal().codimension() as usize, codim);
    }
    assert!(DetSetup::new(2, 3, 2, Rationals).is_err());
}

#[test]
fn wedge_of_transpose_is_minor_matrix() {
    let s = DetSetup::new(3, 3, 2, Rationals).unwrap();
    let ring = s.ring();
    let map = wedge_alpha_map(&s, &p(&[1, 1])).unwrap();
    assert_eq!((map.nrows(), map.ncols()), (3, 3));
    let x = |i: usize, j: usize| ring.var(i * 3 + j);
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for (r, &(c1, c2)) in pairs.iter().enumerate() {
        for (c, &(r1, r2)) in pairs.iter().enumerate() {
            // X^T has entry (c, r) = x_{r c}
            let minor = ring.sub(&ring.mul(&x(r1, c1), &x(r2, c2)), &ring.mul(&x(r2, c1), &x(r1, c2)));
            assert_eq!(map.entry(r, c), &minor);
        }
    }
}

#[test]
fn annihilation_of_all_summands() {
    let f = PrimeField::new(32003).unwrap();
    for (m, n, l) in [(2, 2, 1), (2, 3, 1), (3, 3, 2), (3, 4, 2), (3, 3, 1)] {
        let s = DetSetup::new(m, n, l, f.clone()).unwrap();
        for alpha in s.box_set().members {
            for module in [t_alpha(&s, &alpha).unwrap(), n_alpha(&s, &alpha).unwrap()] {
                assert!(module.annihilated_by_ideal(&s).unwrap(), "({m},{n},{l}) {alpha}");
                assert!(module.relations_well_defined(&s).unwrap());
            }
        }
    }
}

#[test]
fn t_alpha_generator_counts() {
    let s = DetSetup::new(3, 4, 2, Rationals).unwrap();
    for alpha in s.box_set().members {
        let t = t_alpha(&s, &alpha).unwrap();
        let expected: u64 = alpha
            .conjugate()
            .parts()
            .iter()
            .map(|&c| detvar_core::binomial(3, c as u64))
            .product();
        assert_eq!(t.source_rank() as u64, expected);
    }
}

#[test]
fn t_alpha_splits_into_n_beta_over_q() {
    for (m, n, l) in [(2, 3, 1), (3, 3, 2)] {
        let s = DetSetup::new(m, n, l, Rationals).unwrap();
        for alpha in s.box_set().members {
            let t = t_alpha(&s, &alpha).unwrap().presentation.hilbert_series();
            let mut sum = commalg::HilbertSeries::zero(0);
            for (w, &k) in exterior_expand(&alpha, l).unwrap().terms() {
                let beta = Partition::new(w.entries().iter().map(|&e| e as u32).collect()).unwrap();
                let nb = n_alpha(&s, &beta).unwrap().presentation.hilbert_series();
                sum = sum.add(&nb.scale(k as i64));
            }
            assert!(t.same_series(&sum), "({m},{n},{l}) {alpha}: {t} vs {sum}");
        }
    }
}

#[test]
fn single_exterior_powers_when_l_is_m_minus_one() {
    for (m, n) in [(2, 3), (3, 3), (3, 4)] {
        let s = DetSetup::new(m, n, m - 1, Rationals).unwrap();
        for a in 0..m {
            let alpha = Partition::column(a);
            let t = t_alpha(&s, &alpha).unwrap();
            let direct_map = if a == 0 {
                ModuleMap::identity(s.ring(), vec![0])
            } else {
                exterior_power_matrix(s.ring(), &s.phi_dual(), a).unwrap()
            };
            let direct = image_module(&s, &alpha, direct_map).unwrap();
            assert_eq!(t.map, direct.map);
            assert_eq!(t.kept, direct.kept);
            assert_eq!(t.presentation.gen_degrees(), direct.presentation.gen_degrees());
            assert_eq!(t.presentation.relations(), direct.presentation.relations());
        }
    }
}

#[test]
fn generic_rank_matches_decomposition() {
    let s = DetSetup::new(3, 4, 2, PrimeField::new(32003).unwrap()).unwrap();
    for alpha in [p(&[1]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2])] {
        let v = rank_check(&s, &alpha, 5, 11).unwrap();
        assert_eq!(v["pass"], true, "{v}");
        assert_eq!(v["expected"].as_u64().unwrap(), pieri_dimension(&alpha, 2).unwrap());
    }
}

#[test]
fn mcm_over_both_fields_agree() {
    for (m, n, l) in [(2, 2, 1), (2, 3, 1)] {
        let sq = DetSetup::new(m, n, l, Rationals).unwrap();
        let sp = DetSetup::new(m, n, l, PrimeField::new(32003).unwrap()).unwrap();
        for alpha in sq.box_set().members {
            let vq = certify_mcm(&t_alpha(&sq, &alpha).unwrap().presentation, &sq).unwrap();
            let vp = certify_mcm(&t_alpha(&sp, &alpha).unwrap().presentation, &sp).unwrap();
            assert!(vq.pass && vp.pass);
            assert_eq!(vq.betti, vp.betti);
        }
    }
}

#[test]
fn r_is_mcm_and_s_mod_variable_is_not() {
    let s = DetSetup::new(2, 2, 1, Rationals).unwrap();
    let r = ModulePresentation::quotient_ring(s.ideal().clone());
    assert!(certify_mcm(&r, &s).unwrap().pass);
    let ring = s.ring();
    let x00 = ModuleMap::from_columns(vec![vec![ring.var(0)]], vec![1], vec![0]).unwrap();
    let bad = ModulePresentation::cokernel(ring, x00).unwrap();
    let v = certify_mcm(&bad, &s).unwrap();
    assert_eq!(v.projective_dimension, 1);
    assert!(!v.pass);
}

#[test]
fn n_alpha_exists_in_characteristic_two() {
    let s = DetSetup::new(2, 3, 1, PrimeField::new(2).unwrap()).unwrap();
    let n = n_alpha(&s, &p(&[1])).unwrap();
    assert!(n.annihilated_by_ideal(&s).unwrap());
    assert!(n.presentation.num_generators() > 0);
}

//! The modules `T_α` and `N_α` over `R = S / I_{l+1}`.

use commalg::{free_resolution, Field, ModuleMap, ModulePresentation, Polynomial, Resolution};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{DetvarError, Result};
use crate::partitions::{binomial, weyl_dim, Partition};

use super::setup::DetSetup;
use super::wedge::{schur_functor_matrix, wedge_alpha};

/// The image of a map `S^a ⊗ R -> S^b ⊗ R`, presented over `R`.
#[derive(Debug, Clone)]
pub struct ImageModule<F: Field> {
    pub alpha: Partition,
    /// The map whose image (over `R`) is the module.
    pub map: ModuleMap<F>,
    /// Presentation over `S` before reduction modulo `I`; generators are the
    /// source basis.
    pub full: ModulePresentation<F>,
    /// Minimal `R`-presentation (annihilator `I`) after pruning.
    pub presentation: ModulePresentation<F>,
    /// Source basis indices of the generators of `presentation`.
    pub kept: Vec<usize>,
}

/// `T_α`.
pub type TAlpha<F> = ImageModule<F>;

fn check_alpha<F: Field>(setup: &DetSetup<F>, alpha: &Partition) -> Result<()> {
    if !alpha.fits_in(setup.l, (setup.m - setup.l) as u32) {
        return Err(DetvarError::InvalidParameters(format!(
            "{alpha} is not in B_{{{},{}}}",
            setup.l,
            setup.m - setup.l
        )));
    }
    Ok(())
}

/// `∧^{α'_1} φ^∨ ⊗ ... ⊗ ∧^{α'_r} φ^∨`.
pub fn wedge_alpha_map<F: Field>(setup: &DetSetup<F>, alpha: &Partition) -> Result<ModuleMap<F>> {
    check_alpha(setup, alpha)?;
    wedge_alpha(setup.ring(), &setup.phi_dual(), alpha)
}

/// Presents the image of `map ⊗ R`.
pub fn image_module<F: Field>(setup: &DetSetup<F>, alpha: &Partition, map: ModuleMap<F>) -> Result<ImageModule<F>> {
    let ring = setup.ring();
    let target =
        ModulePresentation::free(ring, map.target_degrees().to_vec()).with_annihilator(Some(setup.ideal().clone()));
    let kernel = target.kernel_of(&map)?;
    let full = ModulePresentation::new(ring, map.source_degrees().to_vec(), kernel, None)?;
    let r_module = full.clone().with_annihilator(Some(setup.ideal().clone()));
    let (pruned, kept) = r_module.minimal_presentation()?;
    Ok(ImageModule {
        alpha: alpha.clone(),
        map,
        full,
        presentation: pruned,
        kept,
    })
}

/// `T_α = im(∧^{α'} φ^∨ ⊗ R)`.
pub fn t_alpha<F: Field>(setup: &DetSetup<F>, alpha: &Partition) -> Result<TAlpha<F>> {
    let map = wedge_alpha_map(setup, alpha)?;
    image_module(setup, alpha, map)
}

/// `L_α(φ^∨)` as `d_α ∘ ∧^{α'} φ^∨` on the semistandard basis.
pub fn schur_map<F: Field>(setup: &DetSetup<F>, alpha: &Partition) -> Result<ModuleMap<F>> {
    check_alpha(setup, alpha)?;
    schur_functor_matrix(setup.ring(), &setup.phi_dual(), alpha)
}

/// `N_α = im(L_α(φ^∨) ⊗ R)`.
pub fn n_alpha<F: Field>(setup: &DetSetup<F>, alpha: &Partition) -> Result<ImageModule<F>> {
    let map = schur_map(setup, alpha)?;
    image_module(setup, alpha, map)
}

impl<F: Field> ImageModule<F> {
    /// `∏_j binomial(m, α'_j)`, the number of source basis vectors for `T_α`.
    pub fn source_rank(&self) -> usize {
        self.map.ncols()
    }

    /// Every relation maps into `I · target`.
    pub fn relations_well_defined(&self, setup: &DetSetup<F>) -> Result<bool> {
        let ring = setup.ring();
        let ideal = setup.ideal();
        for col in self.full.relations().columns() {
            let image = self.map.apply(ring, col);
            if !image.iter().all(|p| ideal.contains(p)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every `(l+1)`-minor times every generator is zero in the
    /// `S`-presentation.
    pub fn annihilated_by_ideal(&self, setup: &DetSetup<F>) -> Result<bool> {
        annihilated(&self.full, setup)
    }

    pub fn resolution(&self, minimal: bool) -> Result<Resolution<F>> {
        Ok(free_resolution(&self.presentation, minimal)?)
    }

    /// Perturbs the first relation so that it no longer maps into
    /// `I · target` (test fixture for negative controls).
    pub fn corrupt(&mut self, setup: &DetSetup<F>) -> Result<()> {
        let ring = setup.ring();
        let degrees = self.full.gen_degrees().to_vec();
        let mut cols = self.full.relations().columns().to_vec();
        match cols.iter_mut().find_map(|c| c.iter_mut().find(|p| !p.is_zero())) {
            Some(entry) => {
                let bump = ring.pow(&ring.var(0), entry.degree().unwrap_or(0));
                *entry = ring.add(entry, &bump);
            }
            None => {
                let mut col = vec![ring.zero(); degrees.len()];
                col[0] = ring.var(0);
                cols.push(col);
            }
        }
        let relations = ModuleMap::with_target_degrees(cols, degrees.clone())?;
        self.full = ModulePresentation::new(ring, degrees, relations, None)?;
        let (pruned, kept) = self
            .full
            .clone()
            .with_annihilator(Some(setup.ideal().clone()))
            .minimal_presentation()?;
        self.presentation = pruned;
        self.kept = kept;
        Ok(())
    }
}

/// Every minor times every generator vanishes in `m` (an `S`-module).
pub fn annihilated<F: Field>(m: &ModulePresentation<F>, setup: &DetSetup<F>) -> Result<bool> {
    let g = m.num_generators();
    let mut probes = Vec::with_capacity(g * setup.minors().len());
    for j in 0..g {
        for minor in setup.minors() {
            let mut v = vec![Polynomial::zero(); g];
            v[j] = minor.clone();
            probes.push(v);
        }
    }
    let forms = m.normal_forms(&probes)?;
    Ok(forms.iter().all(|v| v.iter().all(|p| p.is_zero())))
}

/// Outcome of an MCM certification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McmVerdict {
    pub annihilated: bool,
    pub projective_dimension: usize,
    pub codim: usize,
    pub betti: Vec<usize>,
    pub complex_ok: bool,
    pub minimal_ok: bool,
    pub hilbert_ok: bool,
    pub pass: bool,
}

/// `M` is a maximal Cohen–Macaulay `R`-module iff `I` annihilates it and its
/// minimal `S`-resolution has length `codim I`.
pub fn certify_mcm<F: Field>(m: &ModulePresentation<F>, setup: &DetSetup<F>) -> Result<McmVerdict> {
    let s_module = ModulePresentation::new(setup.ring(), m.gen_degrees().to_vec(), m.full_relations(), None)?;
    let annihilated = m.annihilator().is_some_and(|i| i.gb() == setup.ideal().gb()) || annihilated(&s_module, setup)?;
    let res = free_resolution(m, true)?;
    let complex_ok = res.is_complex();
    let minimal_ok = !res.has_unit_entries();
    let hilbert = m.hilbert_series();
    let hilbert_ok = res.hilbert_series().same_series(&hilbert);
    let codim = setup.codim_expected();
    let pd = res.length();
    Ok(McmVerdict {
        annihilated,
        projective_dimension: pd,
        codim,
        betti: res.betti_table().ranks(),
        complex_ok,
        minimal_ok,
        hilbert_ok,
        pass: annihilated && !hilbert.is_zero() && pd == codim && complex_ok && minimal_ok && hilbert_ok,
    })
}

/// `∏_j binomial(l, α'_j)`.
pub fn expected_generic_rank(alpha: &Partition, l: usize) -> usize {
    alpha
        .conjugate()
        .parts()
        .iter()
        .map(|&c| binomial(l as u64, c as u64) as usize)
        .product()
}

/// Specializes `X` to `Σ_{k<l} u_k v_k^T` with seeded random integer
/// vectors and compares the rank of `∧^{α'} φ^∨` with the prediction.
/// Any `α` with at most `min(m, n)` rows is accepted.
pub fn rank_check<F: Field>(setup: &DetSetup<F>, alpha: &Partition, trials: usize, seed: u64) -> Result<Value> {
    if alpha.rows() > setup.m.min(setup.n) || trials == 0 {
        return Err(DetvarError::InvalidParameters(format!(
            "rank_check needs trials >= 1 and at most {} rows, got {alpha}",
            setup.m.min(setup.n)
        )));
    }
    let map = wedge_alpha(setup.ring(), &setup.phi_dual(), alpha)?;
    let ring = setup.ring();
    let field = ring.field();
    let expected = expected_generic_rank(alpha, setup.l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ranks = Vec::with_capacity(trials);
    for _ in 0..trials {
        // small fields can produce points of rank < l; draw again
        let point = loop {
            let mut point = vec![field.zero(); ring.nvars()];
            for _ in 0..setup.l {
                let u: Vec<i64> = (0..setup.m).map(|_| rng.gen_range(-50..=50)).collect();
                let v: Vec<i64> = (0..setup.n).map(|_| rng.gen_range(-50..=50)).collect();
                for i in 0..setup.m {
                    for j in 0..setup.n {
                        point[i * setup.n + j] = field.add(&point[i * setup.n + j], &field.from_i64(u[i] * v[j]));
                    }
                }
            }
            let rows: Vec<Vec<F::Elem>> = point.chunks(setup.n).map(<[F::Elem]>::to_vec).collect();
            if commalg::dense_rank(field, &rows) == setup.l {
                break point;
            }
        };
        ranks.push(commalg::random_rank(ring, &map, &point)?);
    }
    let pass = ranks.iter().all(|&r| r == expected);
    Ok(json!({
        "alpha": alpha,
        "seed": seed,
        "trials": trials,
        "expected": expected,
        "ranks": ranks,
        "pass": pass,
    }))
}

/// Dimension of `L_α` of an `l`-space summed over the decomposition of
/// `∧^{α'}`, for cross-checking [`expected_generic_rank`].
pub fn pieri_dimension(alpha: &Partition, l: usize) -> Result<u64> {
    crate::schurcalc::exterior_expand(alpha, l)?
        .terms()
        .iter()
        .try_fold(0u64, |acc, (w, &k)| Ok(acc + k * weyl_dim(w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use commalg::{PrimeField, Rationals};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_alpha_gives_r() {
        let s = DetSetup::new(2, 3, 1, Rationals).unwrap();
        let t = t_alpha(&s, &p(&[])).unwrap();
        assert_eq!(t.presentation.num_generators(), 1);
        assert!(t.presentation.relations().ncols() == 0);
        let r = ModulePresentation::quotient_ring(s.ideal().clone());
        assert!(t.presentation.hilbert_series().same_series(&r.hilbert_series()));
    }

    #[test]
    fn wedge_alpha_map_shapes() {
        let s = DetSetup::new(2, 3, 1, Rationals).unwrap();
        let a = wedge_alpha_map(&s, &p(&[1])).unwrap();
        assert_eq!((a.nrows(), a.ncols()), (3, 2));
        for i in 0..3 {
            for j in 0..2 {
                assert_eq!(a.entry(i, j), &s.matrix()[j][i]);
            }
        }
        assert!(wedge_alpha_map(&s, &p(&[2])).is_err());
        assert!(wedge_alpha_map(&s, &p(&[1, 1])).is_err());
    }

    #[test]
    fn mcm_examples() {
        let s = DetSetup::new(2, 2, 1, Rationals).unwrap();
        let t = t_alpha(&s, &p(&[1])).unwrap();
        let v = certify_mcm(&t.presentation, &s).unwrap();
        assert!(v.pass && v.projective_dimension == 1, "{v:?}");

        let s = DetSetup::new(2, 3, 1, Rationals).unwrap();
        let r = ModulePresentation::quotient_ring(s.ideal().clone());
        let v = certify_mcm(&r, &s).unwrap();
        assert!(v.pass && v.projective_dimension == 2, "{v:?}");
        let t = t_alpha(&s, &p(&[1])).unwrap();
        assert_eq!(certify_mcm(&t.presentation, &s).unwrap().projective_dimension, 2);
    }

    #[test]
    fn hyperplane_is_not_mcm() {
        let s = DetSetup::new(2, 2, 1, Rationals).unwrap();
        let ring = s.ring();
        let f = ModuleMap::from_columns(vec![vec![ring.var(0)]], vec![1], vec![0]).unwrap();
        let m = ModulePresentation::cokernel(ring, f).unwrap();
        let v = certify_mcm(&m, &s).unwrap();
        assert!(!v.annihilated);
        assert!(!v.pass);
    }

    #[test]
    fn corrupted_relations_are_detected() {
        let s = DetSetup::new(2, 3, 1, PrimeField::new(32003).unwrap()).unwrap();
        let mut t = t_alpha(&s, &p(&[1])).unwrap();
        assert!(t.relations_well_defined(&s).unwrap());
        assert!(t.annihilated_by_ideal(&s).unwrap());
        t.corrupt(&s).unwrap();
        assert!(!t.relations_well_defined(&s).unwrap());
    }

    #[test]
    fn rank_check_examples() {
        let s = DetSetup::new(2, 3, 1, Rationals).unwrap();
        let v = rank_check(&s, &p(&[1]), 3, 7).unwrap();
        assert_eq!(v["expected"], 1);
        assert_eq!(v["pass"], true);
        let s = DetSetup::new(3, 4, 2, PrimeField::new(32003).unwrap()).unwrap();
        for (alpha, rank) in [(p(&[1, 1]), 1), (p(&[2, 1]), 2), (p(&[1]), 2), (p(&[2]), 4)] {
            assert_eq!(expected_generic_rank(&alpha, 2), rank);
            for seed in 0..5 {
                let v = rank_check(&s, &alpha, 1, seed).unwrap();
                assert_eq!(v["pass"], true, "{alpha} seed {seed}: {v}");
            }
        }
    }

    #[test]
    fn pieri_matches_generic_rank() {
        for l in 1..=3usize {
            for alpha in crate::partitions::enumerate_box(l, 3).members {
                assert_eq!(pieri_dimension(&alpha, l).unwrap(), expected_generic_rank(&alpha, l) as u64);
            }
        }
    }

    #[test]
    fn n_of_one_is_t_of_one() {
        let s = DetSetup::new(2, 3, 1, Rationals).unwrap();
        let n = n_alpha(&s, &p(&[1])).unwrap();
        let t = t_alpha(&s, &p(&[1])).unwrap();
        assert_eq!(n.map, t.map);
        assert_eq!(n.presentation.gen_degrees(), t.presentation.gen_degrees());
        assert!(n.presentation.hilbert_series().same_series(&t.presentation.hilbert_series()));
    }
}

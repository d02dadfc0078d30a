//! `T = ⊕ T_α`, the endomorphism ring `E = End_R(T)`, the flip
//! `T_2' ≅ T_1^∨` and the summand involution `α ↦ α^!`.

use commalg::{dual_module, hom_module, Field, HilbertSeries, HomModule, ModuleMap, ModulePresentation, Polynomial};
use serde::Serialize;

use crate::error::{DetvarError, Result};
use crate::par;
use crate::partitions::Partition;

use super::setup::DetSetup;
use super::talpha::{certify_mcm, t_alpha, McmVerdict, TAlpha};

fn require_m_le_n<F: Field>(setup: &DetSetup<F>, what: &str) -> Result<()> {
    if setup.m > setup.n {
        return Err(DetvarError::InvalidParameters(format!(
            "{what} needs m <= n (got m={}, n={}); use the transposed setup",
            setup.m, setup.n
        )));
    }
    Ok(())
}

/// The summands `T_α`, `α ∈ B_{l,m-l}`, in lex order.
pub fn build_t<F: Field>(setup: &DetSetup<F>) -> Result<Vec<TAlpha<F>>> {
    par::map(&setup.box_set().members, |a| t_alpha(setup, a))
        .into_iter()
        .collect()
}

/// `Hom_R(M_α, M_β)`.
#[derive(Debug, Clone)]
pub struct HomBlock<F: Field> {
    pub alpha: Partition,
    pub beta: Partition,
    pub hom: HomModule<F>,
}

/// `⊕_{α,β} Hom_R(M_α, M_β)` for a family of modules indexed by partitions.
#[derive(Debug, Clone)]
pub struct EndRing<F: Field> {
    pub summands: Vec<Partition>,
    /// Row-major: block `(i, j)` is `Hom(M_i, M_j)`.
    pub blocks: Vec<HomBlock<F>>,
}

impl<F: Field> EndRing<F> {
    pub fn block(&self, i: usize, j: usize) -> &HomBlock<F> {
        &self.blocks[i * self.summands.len() + j]
    }

    /// Sum of the block series.
    pub fn hilbert_series(&self) -> HilbertSeries {
        self.blocks.iter().fold(HilbertSeries::zero(0), |acc, b| {
            acc.add(&b.hom.module().hilbert_series())
        })
    }

    /// The direct sum of the blocks as one graded module.
    pub fn presentation(&self) -> Result<ModulePresentation<F>> {
        let first = self.blocks[0].hom.module();
        let ring = first.ring();
        let degrees: Vec<i32> = self
            .blocks
            .iter()
            .flat_map(|b| b.hom.module().gen_degrees().to_vec())
            .collect();
        let total = degrees.len();
        let mut cols = Vec::new();
        let mut offset = 0;
        for b in &self.blocks {
            let m = b.hom.module();
            for col in m.relations().columns() {
                let mut v = vec![Polynomial::zero(); total];
                v[offset..offset + col.len()].clone_from_slice(col);
                cols.push(v);
            }
            offset += m.num_generators();
        }
        let relations = ModuleMap::with_target_degrees(cols, degrees.clone())?;
        Ok(ModulePresentation::new(
            ring,
            degrees,
            relations,
            first.annihilator().cloned(),
        )?)
    }
}

/// Blockwise `Hom` between all members of `modules`.
pub fn end_ring_of<F: Field>(modules: &[(Partition, ModulePresentation<F>)]) -> Result<EndRing<F>> {
    let k = modules.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    let blocks = par::map(&pairs, |&(i, j)| -> Result<HomBlock<F>> {
        Ok(HomBlock {
            alpha: modules[i].0.clone(),
            beta: modules[j].0.clone(),
            hom: hom_module(&modules[i].1, &modules[j].1)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(EndRing {
        summands: modules.iter().map(|(a, _)| a.clone()).collect(),
        blocks,
    })
}

/// `E = End_R(T)`.
pub fn end_ring<F: Field>(setup: &DetSetup<F>) -> Result<EndRing<F>> {
    require_m_le_n(setup, "end_ring")?;
    let modules: Vec<_> = build_t(setup)?
        .into_iter()
        .map(|t| (t.alpha, t.presentation))
        .collect();
    end_ring_of(&modules)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockMcm {
    pub alpha: Partition,
    pub beta: Partition,
    pub generators: usize,
    pub verdict: McmVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndMcmVerdict {
    pub codim: usize,
    pub hilbert: String,
    pub blocks: Vec<BlockMcm>,
    /// Certification of the assembled direct sum, when requested.
    pub whole: Option<McmVerdict>,
    pub pass: bool,
}

/// Certifies `E` as an MCM `R`-module blockwise, and optionally as one
/// assembled module.
pub fn certify_end_mcm<F: Field>(setup: &DetSetup<F>, whole: bool) -> Result<EndMcmVerdict> {
    let e = end_ring(setup)?;
    let blocks = par::map(&e.blocks, |b| -> Result<BlockMcm> {
        Ok(BlockMcm {
            alpha: b.alpha.clone(),
            beta: b.beta.clone(),
            generators: b.hom.module().num_generators(),
            verdict: certify_mcm(b.hom.module(), setup)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let whole = if whole {
        Some(certify_mcm(&e.presentation()?, setup)?)
    } else {
        None
    };
    let pass = blocks.iter().all(|b| b.verdict.pass) && whole.as_ref().is_none_or(|w| w.pass);
    Ok(EndMcmVerdict {
        codim: setup.codim_expected(),
        hilbert: e.hilbert_series().reduced().to_string(),
        blocks,
        whole,
        pass,
    })
}

/// The transposed setup: same ring and ideal, generic matrix `X^T`.
pub fn flip_setup<F: Field>(setup: &DetSetup<F>) -> Result<DetSetup<F>> {
    require_m_le_n(setup, "flip_setup")?;
    Ok(setup.flip())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlipBlock {
    pub alpha: Partition,
    /// The map defining `T_2'` is the transpose of the one defining `T_1`.
    pub transpose_ok: bool,
    /// The relations of `T_2'` map into `I`.
    pub well_defined: bool,
    /// Every `τ(g)` is a homomorphism `T_1 -> R`.
    pub homomorphisms: bool,
    /// The `τ(g)` generate `T_1^∨`.
    pub surjective: bool,
    pub dual_hilbert: String,
    pub t2_hilbert: String,
    /// `HS(T_1^∨) = t^{|α|} HS(T_2')`.
    pub hilbert_equal: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlipVerdict {
    pub blocks: Vec<FlipBlock>,
    pub pass: bool,
}

fn flip_block<F: Field>(setup: &DetSetup<F>, flipped: &DetSetup<F>, alpha: &Partition) -> Result<FlipBlock> {
    let t1 = t_alpha(setup, alpha)?;
    let t2 = t_alpha(flipped, alpha)?;
    let a1 = &t1.map;
    let a2 = &t2.map;
    let transpose_ok = a2.nrows() == a1.ncols()
        && a2.ncols() == a1.nrows()
        && (0..a1.nrows()).all(|i| (0..a1.ncols()).all(|j| a1.entry(i, j) == a2.entry(j, i)));
    let well_defined = t2.relations_well_defined(flipped)?;

    // τ sends the i-th basis vector of the transposed source to the i-th
    // coordinate function on the target of T_1, restricted to T_1.
    let dual = dual_module(&t1.presentation)?;
    let images: Vec<Vec<Polynomial<F>>> = (0..a1.nrows())
        .map(|i| t1.kept.iter().map(|&j| a1.entry(i, j).clone()).collect())
        .collect();
    let homomorphisms = dual.contains(&images)?;
    let surjective = dual.is_generated_by(&images)?;

    let dual_hs = dual.module().hilbert_series();
    let t2_hs = t2.presentation.hilbert_series();
    let hilbert_equal = dual_hs.same_series(&t2_hs.shifted(alpha.size() as i32));
    Ok(FlipBlock {
        alpha: alpha.clone(),
        transpose_ok,
        well_defined,
        homomorphisms,
        surjective,
        dual_hilbert: dual_hs.reduced().to_string(),
        t2_hilbert: t2_hs.reduced().to_string(),
        hilbert_equal,
        pass: transpose_ok && well_defined && homomorphisms && surjective && hilbert_equal,
    })
}

/// `T_2' ≅ T_1^∨` summand by summand, via `τ`.
pub fn check_flip_iso<F: Field>(setup: &DetSetup<F>) -> Result<FlipVerdict> {
    let flipped = flip_setup(setup)?;
    let blocks = par::map(&setup.box_set().members, |a| flip_block(setup, &flipped, a))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let pass = blocks.iter().all(|b| b.pass);
    Ok(FlipVerdict { blocks, pass })
}

/// `α^! = (k - α_l, ..., k - α_1)` with `k = m - l`.
pub fn dual_partition(alpha: &Partition, l: usize, k: u32) -> Result<Partition> {
    if !alpha.fits_in(l, k) {
        return Err(DetvarError::InvalidParameters(format!("{alpha} is not in B_{{{l},{k}}}")));
    }
    Partition::new((0..l).rev().map(|i| k - alpha.part(i)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualBlock {
    pub alpha: Partition,
    pub beta: Partition,
    /// `s` with `HS(Hom(T_α^∨, T_β^∨)) = t^s HS(Hom(T_{α^!}, T_{β^!}))`.
    pub shift: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndDualVerdict {
    pub pairing: Vec<(Partition, Partition)>,
    pub involution: bool,
    pub end_hilbert: String,
    pub dual_end_hilbert: String,
    pub series_equal: bool,
    pub blocks: Vec<DualBlock>,
    /// Block shifts have the form `c_β - c_α`.
    pub shifts_consistent: bool,
    pub pass: bool,
}

/// Compares block `(i, j)` of `dual_end` with block `(perm[i], perm[j])` of
/// `end`.
fn block_shifts<F: Field>(end: &EndRing<F>, dual_end: &EndRing<F>, perm: &[Option<usize>]) -> (Vec<DualBlock>, bool) {
    let r = end.summands.len();
    let mut blocks = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let shift = match (perm[i], perm[j]) {
                (Some(pi), Some(pj)) => dual_end
                    .block(i, j)
                    .hom
                    .module()
                    .hilbert_series()
                    .shift_relative_to(&end.block(pi, pj).hom.module().hilbert_series()),
                _ => None,
            };
            blocks.push(DualBlock {
                alpha: end.summands[i].clone(),
                beta: end.summands[j].clone(),
                shift,
            });
        }
    }
    let s = |i: usize, j: usize| blocks[i * r + j].shift;
    let consistent = (0..r).all(|i| {
        (0..r).all(|j| match (s(i, j), s(i, 0), s(0, j)) {
            (Some(x), Some(a), Some(b)) => x == a + b,
            _ => false,
        })
    }) && (0..r).all(|i| s(i, i) == Some(0));
    (blocks, consistent)
}

/// Compares `End(T^∨)` with `End(T)` and matches summands via `α ↦ α^!`.
pub fn check_end_dual<F: Field>(setup: &DetSetup<F>) -> Result<EndDualVerdict> {
    require_m_le_n(setup, "check_end_dual")?;
    let (l, k) = (setup.l, (setup.m - setup.l) as u32);
    let members = setup.box_set().members;
    let bang: Vec<Partition> = members
        .iter()
        .map(|a| dual_partition(a, l, k))
        .collect::<Result<_>>()?;
    let index = |p: &Partition| members.iter().position(|q| q == p);
    let perm: Vec<Option<usize>> = bang.iter().map(index).collect();
    let involution = perm
        .iter()
        .enumerate()
        .all(|(i, p)| p.is_some_and(|j| perm[j] == Some(i)));

    let ts = build_t(setup)?;
    let modules: Vec<_> = ts.iter().map(|t| (t.alpha.clone(), t.presentation.clone())).collect();
    let duals: Vec<_> = par::map(&modules, |(a, m)| -> Result<_> {
        Ok((a.clone(), dual_module(m)?.into_module()))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let end = end_ring_of(&modules)?;
    let dual_end = end_ring_of(&duals)?;
    let (hs, dual_hs) = (end.hilbert_series(), dual_end.hilbert_series());
    let series_equal = hs.same_series(&dual_hs);

    let (blocks, shifts_consistent) = block_shifts(&end, &dual_end, &perm);

    Ok(EndDualVerdict {
        pairing: members.iter().cloned().zip(bang).collect(),
        involution,
        end_hilbert: hs.reduced().to_string(),
        dual_end_hilbert: dual_hs.reduced().to_string(),
        series_equal,
        blocks,
        shifts_consistent,
        pass: involution && series_equal && shifts_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use commalg::{PrimeField, Rationals};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn dual_partition_examples() {
        assert_eq!(dual_partition(&p(&[]), 1, 1).unwrap(), p(&[1]));
        assert_eq!(dual_partition(&p(&[1]), 1, 1).unwrap(), p(&[]));
        assert_eq!(dual_partition(&p(&[1]), 2, 1).unwrap(), p(&[1]));
        assert_eq!(dual_partition(&p(&[]), 2, 1).unwrap(), p(&[1, 1]));
        assert_eq!(dual_partition(&p(&[2, 1]), 2, 3).unwrap(), p(&[2, 1]));
        assert!(dual_partition(&p(&[2]), 1, 1).is_err());
    }

    #[test]
    fn summand_counts() {
        for (m, n, l, count) in [(2, 2, 1, 2), (2, 3, 1, 2), (3, 3, 2, 3)] {
            let s = DetSetup::new(m, n, l, Rationals).unwrap();
            assert_eq!(build_t(&s).unwrap().len(), count);
        }
    }

    #[test]
    fn end_ring_of_quadric() {
        let s = DetSetup::new(2, 2, 1, Rationals).unwrap();
        let e = end_ring(&s).unwrap();
        assert_eq!(e.blocks.len(), 4);
        let sum = e
            .blocks
            .iter()
            .fold(HilbertSeries::zero(0), |acc, b| acc.add(&b.hom.module().hilbert_series()));
        assert!(e.hilbert_series().same_series(&sum));
        assert!(e.hilbert_series().same_series(&e.presentation().unwrap().hilbert_series()));
        let v = certify_end_mcm(&s, true).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn end_ring_rejects_wide_setups() {
        let s = DetSetup::new(3, 2, 1, Rationals).unwrap();
        assert!(end_ring(&s).is_err());
        assert!(check_flip_iso(&s).is_err());
        assert!(check_end_dual(&s).is_err());
    }

    #[test]
    fn flip_small() {
        let s = DetSetup::new(2, 2, 1, Rationals).unwrap();
        let v = check_flip_iso(&s).unwrap();
        assert!(v.pass, "{v:?}");
        let s = DetSetup::new(2, 3, 1, PrimeField::new(32003).unwrap()).unwrap();
        let v = check_flip_iso(&s).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn end_dual_small() {
        let s = DetSetup::new(2, 2, 1, Rationals).unwrap();
        let v = check_end_dual(&s).unwrap();
        assert!(v.pass, "{v:?}");
    }

    #[test]
    fn end_dual_needs_the_involution() {
        let s = DetSetup::new(2, 4, 1, PrimeField::new(32003).unwrap()).unwrap();
        let modules: Vec<_> = build_t(&s).unwrap().into_iter().map(|t| (t.alpha, t.presentation)).collect();
        let duals: Vec<_> = modules
            .iter()
            .map(|(a, m)| (a.clone(), dual_module(m).unwrap().into_module()))
            .collect();
        let end = end_ring_of(&modules).unwrap();
        let dual_end = end_ring_of(&duals).unwrap();
        let identity = vec![Some(0), Some(1)];
        assert!(!block_shifts(&end, &dual_end, &identity).1);
        let bang = vec![Some(1), Some(0)];
        assert!(block_shifts(&end, &dual_end, &bang).1);
    }
}

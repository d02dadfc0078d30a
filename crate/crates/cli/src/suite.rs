//! The acceptance grid, one entry per criterion.

use std::time::{Duration, Instant};

use commalg::{Field, ModuleMap, ModulePresentation, PrimeField, Rationals};
use detvar_core::bott::{
    check_dualizing_vanishing, check_fm_kernel_vanishing, check_prop_work_all, check_tilting_grass,
    check_tilting_springer, cohomology_of, BundleExpression,
};
use detvar_core::detvar::{certify_end_mcm, certify_mcm, check_end_dual, check_flip_iso, n_alpha, rank_check, t_alpha, DetSetup};
use detvar_core::partitions::partitions_of;
use detvar_core::schurcalc::{cauchy_expand, lr_coefficients, schur_character, SymCharacter};
use detvar_core::{binomial, par};
use serde_json::{json, Value};

use crate::commands::{mcm_case, on_field, prime};
use crate::report::{CliError, Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// F_32003 throughout, with ℚ spot checks.
    Quick,
    /// ℚ throughout.
    Full,
}

impl Profile {
    pub fn name(&self) -> &'static str {
        match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        }
    }

    fn characteristic(&self) -> u32 {
        match self {
            Profile::Quick => 32003,
            Profile::Full => 0,
        }
    }
}

pub const TILT_GRASS_GRID: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (3, 6)];
pub const SPRINGER_GRID: [(usize, usize, usize); 5] = [(1, 2, 2), (1, 2, 3), (1, 3, 3), (2, 3, 3), (2, 3, 4)];
pub const MCM_GRID: [(usize, usize, usize); 6] = [(2, 2, 1), (2, 3, 1), (2, 4, 1), (3, 3, 1), (3, 3, 2), (3, 4, 2)];
pub const SMALL_GRID: [(usize, usize, usize); 3] = [(2, 2, 1), (2, 3, 1), (3, 3, 2)];
pub const RANK_SEEDS: u64 = 5;

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub pass: bool,
    pub details: Value,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn line(&self) -> String {
        format!(
            "criterion {:>2}: {} {} ({:.2?}, budget {:?})",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed,
            self.budget
        )
    }

    /// Excludes timing.
    pub fn to_json(&self) -> Value {
        json!({"criterion": self.id, "title": self.title, "details": self.details, "pass": self.pass})
    }
}

pub const CRITERIA: [(u32, &str, u64); 10] = [
    (1, "tilting on the Grassmannian: no higher Ext between summands", 10),
    (2, "vanishing for (∧^{α'}Q)^∨ ⊗ L_δ Q, m ≤ 5, |δ| ≤ 6", 30),
    (3, "(∧²Q)^∨ ⊗ Sym²Q on Grass(2,4) has no cohomology at all", 1),
    (4, "degreewise vanishing on the Springer resolution, t ≤ tmax", 60),
    (5, "each T_α is maximal Cohen-Macaulay: pd_S = (n−l)(m−l)", 600),
    (6, "End_R(T) is maximal Cohen-Macaulay", 900),
    (7, "flip: T_2' ≅ T_1^∨ via τ", 600),
    (8, "End(T^∨) ≅ End(T) under α ↦ α^!", 600),
    (9, "oracle cross-checks: LR, generic rank, Cauchy, d² = 0", 600),
    (10, "negative controls are rejected", 120),
];

pub fn run_suite(profile: Profile, ctx: &Context) -> Result<Vec<CriterionResult>, CliError> {
    CRITERIA.iter().map(|&(id, ..)| run_criterion(id, profile, ctx)).collect()
}

pub fn run_criterion(id: u32, profile: Profile, ctx: &Context) -> Result<CriterionResult, CliError> {
    let &(_, title, budget) = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?;
    let start = Instant::now();
    let (pass, details) = match id {
        1 => tilt_grass()?,
        2 => prop31()?,
        3 => non_split()?,
        4 => springer(ctx.tmax)?,
        5 => mcm_grid(profile, ctx)?,
        6 => on_field!(profile.characteristic(), end_mcm(profile))?,
        7 => on_field!(profile.characteristic(), flip())?,
        8 => on_field!(profile.characteristic(), end_dual())?,
        9 => oracles(ctx)?,
        _ => negative_controls()?,
    };
    Ok(CriterionResult {
        id,
        title,
        pass,
        details,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget),
    })
}

type Verdict = (bool, Value);

fn tilt_grass() -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    for (l, m) in TILT_GRASS_GRID {
        let r = check_tilting_grass(l, m)?;
        out.push(json!({"l": l, "m": m, "cases": r.cases.len(), "pass": r.pass}));
    }
    Ok(all_pass(out))
}

fn prop31() -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    for m in 2..=5usize {
        for l in 1..m {
            let r = check_prop_work_all(l, m, 6)?;
            out.push(json!({"l": l, "m": m, "cases": r.cases.len(), "pass": r.pass}));
        }
    }
    Ok(all_pass(out))
}

fn non_split() -> Result<Verdict, CliError> {
    let e = BundleExpression::trivial(2, 4)?.wedge_q_dual(2)?.sym_q(2)?;
    let t = cohomology_of(&e)?;
    Ok((t.is_zero(), json!({"degrees": t.dims().into_iter().map(|(i, d)| (i.to_string(), d)).collect::<std::collections::BTreeMap<_, _>>()})))
}

fn springer(tmax: u32) -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    for (l, m, n) in SPRINGER_GRID {
        let a = check_tilting_springer(l, m, n, tmax)?;
        let b = check_dualizing_vanishing(l, m, n, tmax)?;
        let c = check_fm_kernel_vanishing(l, m, n, tmax)?;
        out.push(json!({
            "l": l, "m": m, "n": n, "tmax": tmax,
            "tilt_springer": a.pass, "dualizing": b.pass, "fm": c.pass,
            "pass": a.pass && b.pass && c.pass,
        }));
    }
    Ok(all_pass(out))
}

fn mcm_setup<F: Field>(field: F, (m, n, l): (usize, usize, usize), seed: u64, corrupt_first: bool) -> Result<Vec<Value>, CliError> {
    let setup = DetSetup::new(m, n, l, field)?;
    let alphas = setup.box_set().members;
    let results = par::map(&alphas, |a| mcm_case(&setup, a, 0, seed, corrupt_first && *a == alphas[alphas.len() - 1]));
    results
        .into_iter()
        .map(|r| r.map(|(case, _)| compact_mcm(&case)))
        .collect()
}

fn compact_mcm(case: &Value) -> Value {
    json!({
        "setup": [case["setup"]["m"], case["setup"]["n"], case["setup"]["l"]],
        "field": case["setup"]["field"],
        "alpha": case["alpha"],
        "pd": case["pd"],
        "codim": case["verdict"]["codim"],
        "betti": case["verdict"]["betti"],
        "well_defined": case["well_defined"],
        "pass": case["pass"],
    })
}

fn mcm_grid(profile: Profile, ctx: &Context) -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    let mut agreement = Vec::new();
    let compared = match profile {
        Profile::Quick => &MCM_GRID[..2],
        Profile::Full => &MCM_GRID[..],
    };
    for (k, &size) in MCM_GRID.iter().enumerate() {
        let corrupt = ctx.inject_fault && k == 0;
        let main = on_field!(profile.characteristic(), mcm_setup(size, ctx.seed, corrupt))?;
        if compared.contains(&size) {
            let other = match profile {
                Profile::Quick => mcm_setup(Rationals, size, ctx.seed, false)?,
                Profile::Full => mcm_setup(prime(32003)?, size, ctx.seed, false)?,
            };
            let same = main.iter().zip(&other).all(|(a, b)| a["betti"] == b["betti"]);
            agreement.push(json!({"setup": [size.0, size.1, size.2], "betti_agree": same}));
            out.extend(other);
        }
        out.extend(main);
    }
    let agree = agreement.iter().all(|a| a["betti_agree"] == true);
    let (pass, cases) = all_pass(out);
    Ok((pass && agree, json!({"cases": cases, "field_agreement": agreement})))
}

fn end_mcm<F: Field>(field: F, profile: Profile) -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    let grid = SMALL_GRID.iter().map(|&s| (s, true)).chain([((3, 3, 1), profile == Profile::Full)]);
    for ((m, n, l), whole) in grid {
        let setup = DetSetup::new(m, n, l, field.clone())?;
        let v = certify_end_mcm(&setup, whole)?;
        out.push(json!({
            "setup": [m, n, l],
            "block_pds": v.blocks.iter().map(|b| b.verdict.projective_dimension).collect::<Vec<_>>(),
            "whole_pd": v.whole.as_ref().map(|w| w.projective_dimension),
            "codim": v.codim,
            "pass": v.pass,
        }));
    }
    Ok(all_pass(out))
}

fn flip<F: Field>(field: F) -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    for (m, n, l) in SMALL_GRID {
        let setup = DetSetup::new(m, n, l, field.clone())?;
        let v = check_flip_iso(&setup)?;
        out.push(json!({
            "setup": [m, n, l],
            "surjective": v.blocks.iter().all(|b| b.surjective),
            "hilbert_equal": v.blocks.iter().all(|b| b.hilbert_equal),
            "pass": v.pass,
        }));
    }
    Ok(all_pass(out))
}

fn end_dual<F: Field>(field: F) -> Result<Verdict, CliError> {
    let mut out = Vec::new();
    for (m, n, l) in SMALL_GRID {
        let setup = DetSetup::new(m, n, l, field.clone())?;
        let v = check_end_dual(&setup)?;
        out.push(json!({
            "setup": [m, n, l],
            "pairing": v.pairing,
            "involution": v.involution,
            "series_equal": v.series_equal,
            "shifts_consistent": v.shifts_consistent,
            "pass": v.pass,
        }));
    }
    Ok(all_pass(out))
}

fn lr_oracle() -> (bool, usize) {
    let mut checked = 0;
    let mut ok = true;
    for total in 0..=6u32 {
        let vars = total as usize;
        for sa in 0..=total {
            for a in partitions_of(sa, vars) {
                for b in partitions_of(total - sa, vars) {
                    let lhs = schur_character(&a, vars).mul(&schur_character(&b, vars));
                    let mut rhs = SymCharacter::zero(vars);
                    for (g, k) in lr_coefficients(&a, &b) {
                        rhs.add_scaled(&schur_character(&g, vars), k as i64);
                    }
                    ok &= lhs == rhs;
                    checked += 1;
                }
            }
        }
    }
    (ok, checked)
}

fn cauchy_oracle() -> Result<(bool, usize), CliError> {
    let mut checked = 0;
    let mut ok = true;
    for t in 0..=5u32 {
        for l1 in 1..=4usize {
            for l2 in 1..=4usize {
                let total: u64 = cauchy_expand(t, l1, l2)?
                    .iter()
                    .map(|c| c.multiplicity * c.dims.0 * c.dims.1)
                    .sum();
                let n = (l1 * l2) as u64;
                ok &= total == binomial(n + t as u64 - 1, t as u64);
                checked += 1;
            }
        }
    }
    Ok((ok, checked))
}

fn rank_oracle(seed: u64) -> Result<(bool, usize), CliError> {
    let field = PrimeField::new(32003)?;
    let mut checked = 0;
    let mut ok = true;
    for (m, n, l) in MCM_GRID {
        let setup = DetSetup::new(m, n, l, field.clone())?;
        for alpha in setup.box_set().members {
            for k in 0..RANK_SEEDS {
                let v = rank_check(&setup, &alpha, 1, seed.wrapping_add(k))?;
                ok &= v["pass"] == true;
                checked += 1;
            }
        }
    }
    Ok((ok, checked))
}

fn complex_oracle() -> Result<(bool, usize), CliError> {
    let field = PrimeField::new(32003)?;
    let mut checked = 0;
    let mut ok = true;
    for (m, n, l) in MCM_GRID {
        let setup = DetSetup::new(m, n, l, field.clone())?;
        for alpha in setup.box_set().members {
            for module in [t_alpha(&setup, &alpha)?, n_alpha(&setup, &alpha)?] {
                for minimal in [true, false] {
                    ok &= module.resolution(minimal)?.is_complex();
                    checked += 1;
                }
            }
        }
    }
    Ok((ok, checked))
}

fn oracles(ctx: &Context) -> Result<Verdict, CliError> {
    let (lr_ok, lr_n) = lr_oracle();
    let (rank_ok, rank_n) = rank_oracle(ctx.seed)?;
    let (cauchy_ok, cauchy_n) = cauchy_oracle()?;
    let (complex_ok, complex_n) = complex_oracle()?;
    Ok((
        lr_ok && rank_ok && cauchy_ok && complex_ok,
        json!({
            "lr_vs_characters": {"checked": lr_n, "pass": lr_ok},
            "generic_rank": {"checked": rank_n, "seeds_per_case": RANK_SEEDS, "pass": rank_ok},
            "cauchy_dimension": {"checked": cauchy_n, "pass": cauchy_ok},
            "resolutions_are_complexes": {"checked": complex_n, "pass": complex_ok},
        }),
    ))
}

fn negative_controls() -> Result<Verdict, CliError> {
    let setup = DetSetup::new(2, 2, 1, Rationals)?;
    let ring = setup.ring();
    let x11 = ModuleMap::from_columns(vec![vec![ring.var(0)]], vec![1], vec![0])?;
    let hyperplane = ModulePresentation::cokernel(ring, x11)?;
    let v = certify_mcm(&hyperplane, &setup)?;
    let corrupted = mcm_case(&setup, &"1".parse()?, 0, 0, true)?.0;
    let hyperplane_rejected = !v.pass;
    let corruption_rejected = corrupted["pass"] == false;
    Ok((
        hyperplane_rejected && corruption_rejected,
        json!({
            "hyperplane_section": {"verdict": v, "rejected": hyperplane_rejected},
            "corrupted_relation": {"well_defined": corrupted["well_defined"], "rejected": corruption_rejected},
        }),
    ))
}

fn all_pass(cases: Vec<Value>) -> Verdict {
    let pass = cases.iter().all(|c| c["pass"] == true);
    (pass, Value::Array(cases))
}

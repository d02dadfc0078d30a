//! Cohomology of homogeneous bundles on the Grassmannian `G = Grass(l, m)`
//! in characteristic zero, and the vanishing checkers built on it.
//!
//! `Q` is the tautological quotient bundle of rank `l` and `R` the
//! subbundle of rank `m - l`. A pure term `L_x Q ⊗ L_y R` is handled by
//! Bott's algorithm on `λ = (x ‖ y)` with `ρ = (m-1, ..., 0)`.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{DetvarError, Result};
use crate::par;
use crate::partitions::{enumerate_box, weyl_dim, Partition, WeightVector};
use crate::schurcalc::{cauchy_expand, SchurSum};

/// One irreducible `GL_m`-module in a cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyEntry {
    pub weight: WeightVector,
    pub multiplicity: u64,
    pub dimension: u64,
}

/// `H^i` for each degree `i` with nonzero cohomology.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub entries: BTreeMap<u32, Vec<CohomologyEntry>>,
}

impl CohomologyTable {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `dim H^i`.
    pub fn dim(&self, i: u32) -> u64 {
        self.entries
            .get(&i)
            .map_or(0, |v| v.iter().map(|e| e.multiplicity * e.dimension).sum())
    }

    pub fn dims(&self) -> BTreeMap<u32, u64> {
        self.entries.keys().map(|&i| (i, self.dim(i))).collect()
    }

    pub fn higher_vanishes(&self) -> bool {
        self.entries.keys().all(|&i| i == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .keys()
            .map(|&i| if i % 2 == 0 { self.dim(i) as i64 } else { -(self.dim(i) as i64) })
            .sum()
    }

    /// Adds `scale` copies of `other`.
    pub fn merge(&mut self, other: &CohomologyTable, scale: u64) {
        if scale == 0 {
            return;
        }
        for (&i, list) in &other.entries {
            let dest = self.entries.entry(i).or_default();
            for e in list {
                match dest.iter_mut().find(|d| d.weight == e.weight) {
                    Some(d) => d.multiplicity += e.multiplicity * scale,
                    None => dest.push(CohomologyEntry {
                        multiplicity: e.multiplicity * scale,
                        ..e.clone()
                    }),
                }
            }
            dest.sort_by(|a, b| b.weight.cmp(&a.weight));
        }
    }
}

/// Cohomology of `L_x Q ⊗ L_y R` on `Grass(l, m)`.
pub fn bott_cohomology(l: usize, m: usize, x: &WeightVector, y: &WeightVector) -> Result<CohomologyTable> {
    if l > m || x.len() != l || y.len() != m - l {
        return Err(DetvarError::InvalidParameters(format!(
            "weights of lengths {} and {} on Grass({l},{m})",
            x.len(),
            y.len()
        )));
    }
    for w in [x, y] {
        if !w.is_dominant() {
            return Err(DetvarError::NotDominant(w.0.clone()));
        }
    }
    let shifted: Vec<i64> = x
        .concat(y)
        .0
        .iter()
        .enumerate()
        .map(|(i, e)| e + (m - 1 - i) as i64)
        .collect();
    let mut sorted = shifted.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut table = CohomologyTable::default();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(table);
    }
    let degree = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| shifted[i] < shifted[j])
        .count() as u32;
    let weight = WeightVector(sorted.iter().enumerate().map(|(i, e)| e - (m - 1 - i) as i64).collect());
    let dimension = weyl_dim(&weight)?;
    table.entries.insert(
        degree,
        vec![CohomologyEntry {
            weight,
            multiplicity: 1,
            dimension,
        }],
    );
    Ok(table)
}

/// A formal tensor product of Schur functors of `Q` and `R` on
/// `Grass(l, m)`, possibly with a trivial multiplicity space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleExpression {
    pub l: usize,
    pub m: usize,
    q_factors: Vec<SchurSum>,
    r_factors: Vec<SchurSum>,
    multiplicity: u64,
}

impl BundleExpression {
    /// The structure sheaf.
    pub fn trivial(l: usize, m: usize) -> Result<Self> {
        if l == 0 || l >= m {
            return Err(DetvarError::InvalidParameters(format!("need 1 <= l < m, got l={l}, m={m}")));
        }
        Ok(BundleExpression {
            l,
            m,
            q_factors: Vec::new(),
            r_factors: Vec::new(),
            multiplicity: 1,
        })
    }

    pub fn times_q(mut self, s: SchurSum) -> Result<Self> {
        if s.rank() != self.l {
            return Err(DetvarError::InvalidParameters("Q factor of the wrong rank".into()));
        }
        self.q_factors.push(s);
        Ok(self)
    }

    pub fn times_r(mut self, s: SchurSum) -> Result<Self> {
        if s.rank() != self.m - self.l {
            return Err(DetvarError::InvalidParameters("R factor of the wrong rank".into()));
        }
        self.r_factors.push(s);
        Ok(self)
    }

    /// `L_x Q`.
    pub fn schur_q(self, x: WeightVector) -> Result<Self> {
        let s = SchurSum::single(x)?;
        self.times_q(s)
    }

    /// `L_y R`.
    pub fn schur_r(self, y: WeightVector) -> Result<Self> {
        let s = SchurSum::single(y)?;
        self.times_r(s)
    }

    /// `∧^a Q`.
    pub fn wedge_q(self, a: usize) -> Result<Self> {
        let l = self.l;
        self.schur_q(Partition::column(a).to_weight(l)?)
    }

    /// `(∧^a Q)^∨`.
    pub fn wedge_q_dual(self, a: usize) -> Result<Self> {
        let l = self.l;
        self.schur_q(Partition::column(a).to_weight(l)?.dual())
    }

    /// `Sym^k Q`.
    pub fn sym_q(self, k: u32) -> Result<Self> {
        let l = self.l;
        self.schur_q(Partition::new(vec![k])?.to_weight(l)?)
    }

    /// `(∧^l Q)^{⊗k}`, any integer `k`.
    pub fn det_q(self, k: i64) -> Result<Self> {
        let l = self.l;
        self.schur_q(WeightVector(vec![k; l]))
    }

    /// `∧^a R`.
    pub fn wedge_r(self, a: usize) -> Result<Self> {
        let r = self.m - self.l;
        self.schur_r(Partition::column(a).to_weight(r)?)
    }

    /// `∧^{α'} Q = ⊗_j ∧^{α'_j} Q`.
    pub fn wedge_alpha_q(mut self, alpha: &Partition) -> Result<Self> {
        for &c in alpha.conjugate().parts() {
            self = self.wedge_q(c as usize)?;
        }
        Ok(self)
    }

    /// `(∧^{α'} Q)^∨`.
    pub fn wedge_alpha_q_dual(mut self, alpha: &Partition) -> Result<Self> {
        for &c in alpha.conjugate().parts() {
            self = self.wedge_q_dual(c as usize)?;
        }
        Ok(self)
    }

    /// Tensors with a trivial bundle of rank `k`.
    pub fn with_multiplicity(mut self, k: u64) -> Self {
        self.multiplicity *= k;
        self
    }

    /// The dual bundle.
    pub fn dual(&self) -> Self {
        BundleExpression {
            l: self.l,
            m: self.m,
            q_factors: self.q_factors.iter().map(SchurSum::dual).collect(),
            r_factors: self.r_factors.iter().map(SchurSum::dual).collect(),
            multiplicity: self.multiplicity,
        }
    }

    /// The canonical bundle `ω = (∧^l Q)^{-(m-l)} ⊗ (∧^{m-l} R)^{l}`.
    pub fn canonical(l: usize, m: usize) -> Result<Self> {
        let r = m - l;
        BundleExpression::trivial(l, m)?
            .det_q(-(r as i64))?
            .schur_r(WeightVector(vec![l as i64; r]))
    }

    pub fn tensor(mut self, other: &BundleExpression) -> Result<Self> {
        if (self.l, self.m) != (other.l, other.m) {
            return Err(DetvarError::InvalidParameters("bundles on different Grassmannians".into()));
        }
        self.q_factors.extend(other.q_factors.iter().cloned());
        self.r_factors.extend(other.r_factors.iter().cloned());
        self.multiplicity *= other.multiplicity;
        Ok(self)
    }

    /// Decomposition into pure terms `(Q-sum, R-sum)`.
    pub fn normalize(&self) -> Result<(SchurSum, SchurSum)> {
        let mut q = SchurSum::trivial(self.l);
        for f in &self.q_factors {
            q = q.tensor(f)?;
        }
        let mut r = SchurSum::trivial(self.m - self.l);
        for f in &self.r_factors {
            r = r.tensor(f)?;
        }
        Ok((q, r))
    }
}

/// Cohomology of a bundle expression, term by term.
pub fn cohomology_of(expr: &BundleExpression) -> Result<CohomologyTable> {
    let (q, r) = expr.normalize()?;
    let mut out = CohomologyTable::default();
    for (x, &a) in q.terms() {
        for (y, &b) in r.terms() {
            out.merge(&bott_cohomology(expr.l, expr.m, x, y)?, a * b * expr.multiplicity);
        }
    }
    Ok(out)
}

/// One checked bundle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseReport {
    pub input: Value,
    pub degrees: BTreeMap<String, u64>,
    pub pass: bool,
}

/// Outcome of a vanishing checker.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub parameters: Value,
    pub characteristic: u32,
    pub cases: Vec<CaseReport>,
    pub pass: bool,
}

impl CheckReport {
    fn new(check: &str, parameters: Value, cases: Vec<CaseReport>) -> Self {
        let pass = cases.iter().all(|c| c.pass);
        CheckReport {
            check: check.to_string(),
            parameters,
            characteristic: 0,
            cases,
            pass,
        }
    }
}

fn higher_vanishing_case(input: Value, table: &CohomologyTable) -> CaseReport {
    CaseReport {
        input,
        degrees: table.dims().into_iter().map(|(i, d)| (i.to_string(), d)).collect(),
        pass: table.higher_vanishes(),
    }
}

fn check_grass(l: usize, m: usize) -> Result<()> {
    if l == 0 || l >= m {
        return Err(DetvarError::InvalidParameters(format!("need 1 <= l < m, got l={l}, m={m}")));
    }
    Ok(())
}

fn check_lmn(l: usize, m: usize, n: usize) -> Result<()> {
    if l == 0 || l >= m.min(n) {
        return Err(DetvarError::InvalidParameters(format!(
            "need 1 <= l < min(m,n), got l={l}, m={m}, n={n}"
        )));
    }
    Ok(())
}

/// `(∧^{α'} Q)^∨ ⊗ L_δ Q` has no higher cohomology.
pub fn check_prop_work(l: usize, m: usize, alpha: &Partition, delta: &Partition) -> Result<CheckReport> {
    check_grass(l, m)?;
    if !alpha.fits_in(l, (m - l) as u32) {
        return Err(DetvarError::InvalidParameters(format!("{alpha} is not in B_{{{l},{}}}", m - l)));
    }
    if delta.rows() > l {
        return Err(DetvarError::InvalidParameters(format!("{delta} has more than {l} rows")));
    }
    let case = prop_case(l, m, alpha, delta)?;
    Ok(CheckReport::new(
        "prop31",
        json!({"l": l, "m": m, "alpha": alpha, "delta": delta}),
        vec![case],
    ))
}

fn prop_case(l: usize, m: usize, alpha: &Partition, delta: &Partition) -> Result<CaseReport> {
    let expr = BundleExpression::trivial(l, m)?
        .wedge_alpha_q_dual(alpha)?
        .schur_q(delta.to_weight(l)?)?;
    Ok(higher_vanishing_case(
        json!({"alpha": alpha, "delta": delta}),
        &cohomology_of(&expr)?,
    ))
}

/// [`check_prop_work`] for all `α ∈ B_{l,m-l}` and all `δ` with at most `l`
/// rows and `|δ| <= max_size`.
pub fn check_prop_work_all(l: usize, m: usize, max_size: u32) -> Result<CheckReport> {
    check_grass(l, m)?;
    let boxes = enumerate_box(l, (m - l) as u32);
    let deltas: Vec<Partition> = (0..=max_size)
        .flat_map(|s| crate::partitions::partitions_of(s, l))
        .collect();
    let tuples: Vec<(Partition, Partition)> = boxes
        .members
        .iter()
        .flat_map(|a| deltas.iter().map(move |d| (a.clone(), d.clone())))
        .collect();
    let cases = par::map(&tuples, |(a, d)| prop_case(l, m, a, d))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new(
        "prop31",
        json!({"l": l, "m": m, "max_delta_size": max_size}),
        cases,
    ))
}

/// `Ext^{>0}` vanishing between all summands `∧^{α'} Q` of the tilting
/// bundle on the Grassmannian.
pub fn check_tilting_grass(l: usize, m: usize) -> Result<CheckReport> {
    check_grass(l, m)?;
    let boxes = enumerate_box(l, (m - l) as u32);
    let pairs: Vec<(Partition, Partition)> = boxes
        .members
        .iter()
        .flat_map(|a| boxes.members.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let cases = par::map(&pairs, |(a, b)| -> Result<CaseReport> {
        let expr = BundleExpression::trivial(l, m)?.wedge_alpha_q_dual(a)?.wedge_alpha_q(b)?;
        Ok(higher_vanishing_case(json!({"alpha": a, "beta": b}), &cohomology_of(&expr)?))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new("tilt-grass", json!({"l": l, "m": m}), cases))
}

/// `Sym_t(V ⊗ Q)` with `dim V = dim_v`, as a bundle per Cauchy term.
fn cauchy_pieces(l: usize, m: usize, t: u32, dim_v: usize) -> Result<Vec<(Partition, BundleExpression)>> {
    cauchy_expand(t, dim_v, l)?
        .into_iter()
        .map(|term| {
            let e = BundleExpression::trivial(l, m)?
                .schur_q(term.gamma.to_weight(l)?)?
                .with_multiplicity(term.dims.0 * term.multiplicity);
            Ok((term.gamma, e))
        })
        .collect()
}

/// Degreewise check that `Hom(∧^{α'} Q, ∧^{β'} Q) ⊗ Sym_t(G ⊗ Q)` has no
/// higher cohomology, `dim G = n`.
pub fn check_tilting_springer(l: usize, m: usize, n: usize, t_max: u32) -> Result<CheckReport> {
    check_lmn(l, m, n)?;
    let cases = pair_degree_cases(l, m, t_max, |a, b, t| {
        let base = BundleExpression::trivial(l, m)?.wedge_alpha_q_dual(a)?.wedge_alpha_q(b)?;
        sum_over_cauchy(&base, l, m, t, n)
    })?;
    Ok(CheckReport::new(
        "tilt-springer",
        json!({"l": l, "m": m, "n": n, "t_max": t_max}),
        cases,
    ))
}

/// Degreewise check for `∧^{α'} Q^∨ ⊗ ∧^{β'} Q ⊗ (∧^l Q)^{n-m} ⊗ Sym_t(G ⊗ Q)`.
pub fn check_dualizing_vanishing(l: usize, m: usize, n: usize, t_max: u32) -> Result<CheckReport> {
    check_lmn(l, m, n)?;
    if m > n {
        return Err(DetvarError::InvalidParameters(format!("requires m <= n, got m={m}, n={n}")));
    }
    let cases = pair_degree_cases(l, m, t_max, |a, b, t| {
        let base = BundleExpression::trivial(l, m)?
            .wedge_alpha_q_dual(a)?
            .wedge_alpha_q(b)?
            .det_q((n - m) as i64)?;
        sum_over_cauchy(&base, l, m, t, n)
    })?;
    Ok(CheckReport::new(
        "dualizing",
        json!({"l": l, "m": m, "n": n, "t_max": t_max}),
        cases,
    ))
}

/// Degreewise check for `∧^{α'} Q^∨ ⊗ Sym_t(Q ⊗ W)` with `dim W = l`.
pub fn check_fm_kernel_vanishing(l: usize, m: usize, n: usize, t_max: u32) -> Result<CheckReport> {
    check_lmn(l, m, n)?;
    if m > n {
        return Err(DetvarError::InvalidParameters(format!("requires m <= n, got m={m}, n={n}")));
    }
    let boxes = enumerate_box(l, (m - l) as u32);
    let tuples: Vec<(Partition, u32)> = boxes
        .members
        .iter()
        .flat_map(|a| (0..=t_max).map(move |t| (a.clone(), t)))
        .collect();
    let cases = par::map(&tuples, |(a, t)| -> Result<CaseReport> {
        let base = BundleExpression::trivial(l, m)?.wedge_alpha_q_dual(a)?;
        let table = sum_over_cauchy(&base, l, m, *t, l)?;
        Ok(higher_vanishing_case(json!({"alpha": a, "t": t}), &table))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::new(
        "fm-kernel",
        json!({"l": l, "m": m, "n": n, "t_max": t_max}),
        cases,
    ))
}

fn sum_over_cauchy(base: &BundleExpression, l: usize, m: usize, t: u32, dim_v: usize) -> Result<CohomologyTable> {
    let mut table = CohomologyTable::default();
    for (_, piece) in cauchy_pieces(l, m, t, dim_v)? {
        table.merge(&cohomology_of(&base.clone().tensor(&piece)?)?, 1);
    }
    Ok(table)
}

fn pair_degree_cases(
    l: usize,
    m: usize,
    t_max: u32,
    table: impl Fn(&Partition, &Partition, u32) -> Result<CohomologyTable> + Sync + Send,
) -> Result<Vec<CaseReport>> {
    let boxes = enumerate_box(l, (m - l) as u32);
    let tuples: Vec<(Partition, Partition, u32)> = boxes
        .members
        .iter()
        .flat_map(|a| {
            boxes
                .members
                .iter()
                .flat_map(move |b| (0..=t_max).map(move |t| (a.clone(), b.clone(), t)))
        })
        .collect();
    par::map(&tuples, |(a, b, t)| {
        Ok(higher_vanishing_case(
            json!({"alpha": a, "beta": b, "t": t}),
            &table(a, b, *t)?,
        ))
    })
    .into_iter()
    .collect()
}

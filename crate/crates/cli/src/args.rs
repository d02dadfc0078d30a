//! Parsers for command-line values.

use detvar_core::bott::BundleExpression;
use detvar_core::{Partition, WeightVector};

/// `2,1`; the empty partition is `0`.
pub fn partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: detvar_core::DetvarError| e.to_string())
}

/// Comma-separated integers, e.g. `1,-1`.
pub fn weight(s: &str) -> Result<WeightVector, String> {
    if s.trim().is_empty() {
        return Ok(WeightVector::new(Vec::new()));
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("cannot parse {t:?} as an integer")))
        .collect::<Result<Vec<_>, _>>()
        .map(WeightVector::new)
}

/// Comma-separated factors `name:arg` applied to the trivial bundle on
/// `Grass(l, m)`: `wedge_q:a`, `wedge_q_dual:a`, `sym_q:k`, `det_q:k`,
/// `wedge_r:a`.
pub fn expression(l: usize, m: usize, s: &str) -> Result<BundleExpression, String> {
    let mut e = BundleExpression::trivial(l, m).map_err(|e| e.to_string())?;
    for factor in s.split(',').map(str::trim).filter(|f| !f.is_empty()) {
        let (name, arg) = factor
            .split_once(':')
            .ok_or_else(|| format!("factor {factor:?} is not of the form name:arg"))?;
        let arg: i64 = arg.trim().parse().map_err(|_| format!("bad argument in {factor:?}"))?;
        let nonneg = || u32::try_from(arg).map_err(|_| format!("{name} needs a nonnegative argument"));
        e = match name.trim() {
            "wedge_q" => e.wedge_q(nonneg()? as usize),
            "wedge_q_dual" => e.wedge_q_dual(nonneg()? as usize),
            "sym_q" => e.sym_q(nonneg()?),
            "det_q" => e.det_q(arg),
            "wedge_r" => e.wedge_r(nonneg()? as usize),
            other => return Err(format!("unknown factor {other:?}")),
        }
        .map_err(|e| e.to_string())?;
    }
    Ok(e)
}

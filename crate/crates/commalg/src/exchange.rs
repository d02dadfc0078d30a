//! JSON exchange format.
//!
//! A polynomial is a list of `[coefficient, exponents]` pairs with the
//! coefficient as a string. A map is stored row-major with source and target
//! shift arrays, where a basis vector of degree `d` has shift `-d`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{CommalgError, Result};
use crate::field::{Field, FieldKind};
use crate::matrix::ModuleMap;
use crate::module::{Ideal, ModulePresentation};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

pub type PolyJson = Vec<(String, Vec<u32>)>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MapJson {
    pub source_shifts: Vec<i32>,
    pub target_shifts: Vec<i32>,
    pub rows: Vec<Vec<PolyJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PresentationJson {
    pub field: FieldKind,
    pub variables: usize,
    pub generator_shifts: Vec<i32>,
    pub relations: MapJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<Vec<PolyJson>>,
}

pub fn poly_to_json<F: Field>(ring: &PolyRing<F>, p: &Polynomial<F>) -> PolyJson {
    p.terms()
        .iter()
        .map(|(m, c)| (ring.field().format(c), m.exponents(ring.nvars())))
        .collect()
}

pub fn poly_from_json<F: Field>(ring: &PolyRing<F>, p: &PolyJson) -> Result<Polynomial<F>> {
    let mut terms = Vec::with_capacity(p.len());
    for (c, e) in p {
        if e.len() != ring.nvars() {
            return Err(CommalgError::Parse(format!(
                "exponent vector of length {} in a ring with {} variables",
                e.len(),
                ring.nvars()
            )));
        }
        if e.iter().any(|&x| x > u8::MAX as u32) {
            return Err(CommalgError::ExponentOverflow);
        }
        terms.push((Monomial::from_exponents(e), ring.field().parse(c)?));
    }
    Ok(Polynomial::from_terms(ring.field(), terms))
}

fn negate(v: &[i32]) -> Vec<i32> {
    v.iter().map(|d| -d).collect()
}

pub fn map_to_json<F: Field>(ring: &PolyRing<F>, f: &ModuleMap<F>) -> MapJson {
    MapJson {
        source_shifts: negate(f.source_degrees()),
        target_shifts: negate(f.target_degrees()),
        rows: f
            .rows()
            .iter()
            .map(|row| row.iter().map(|p| poly_to_json(ring, p)).collect())
            .collect(),
    }
}

pub fn map_from_json<F: Field>(ring: &PolyRing<F>, m: &MapJson) -> Result<ModuleMap<F>> {
    let rows = m
        .rows
        .iter()
        .map(|row| row.iter().map(|p| poly_from_json(ring, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let f = if rows.is_empty() && !m.source_shifts.is_empty() {
        ModuleMap::zero(negate(&m.source_shifts), Vec::new())
    } else {
        ModuleMap::from_rows(rows, negate(&m.source_shifts), negate(&m.target_shifts))?
    };
    f.check_homogeneous()?;
    Ok(f)
}

pub fn presentation_to_json<F: Field>(m: &ModulePresentation<F>) -> PresentationJson {
    let ring = m.ring();
    PresentationJson {
        field: ring.field_kind(),
        variables: ring.nvars(),
        generator_shifts: negate(m.gen_degrees()),
        relations: map_to_json(ring, m.relations()),
        annihilator: m
            .annihilator()
            .map(|i| i.gens().iter().map(|g| poly_to_json(ring, g)).collect()),
    }
}

pub fn presentation_from_json<F: Field>(ring: &PolyRing<F>, p: &PresentationJson) -> Result<ModulePresentation<F>> {
    if p.field != ring.field_kind() {
        return Err(CommalgError::FieldMismatch {
            expected: ring.field_kind().label(),
            found: p.field.label(),
        });
    }
    if p.variables != ring.nvars() {
        return Err(CommalgError::DimensionMismatch(format!(
            "presentation over {} variables, ring has {}",
            p.variables,
            ring.nvars()
        )));
    }
    let relations = map_from_json(ring, &p.relations)?;
    let annihilator = match &p.annihilator {
        Some(gens) => {
            let gens = gens.iter().map(|g| poly_from_json(ring, g)).collect::<Result<Vec<_>>>()?;
            Some(Arc::new(Ideal::new(ring, gens)?))
        }
        None => None,
    };
    ModulePresentation::new(ring, negate(&p.generator_shifts), relations, annihilator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn round_trip() {
        let r = PolyRing::new(2, Rationals).unwrap();
        let half = r.field().parse("1/2").unwrap();
        let p = r.add(&r.scale(&r.var(0), &half), &r.var(1));
        let f = ModuleMap::from_rows(vec![vec![p.clone(), r.zero()]], vec![1, 0], vec![0]).unwrap();
        let j = map_to_json(&r, &f);
        assert_eq!(j.source_shifts, vec![-1, 0]);
        assert_eq!(j.rows[0][0][0], ("1/2".to_string(), vec![1, 0]));
        assert_eq!(map_from_json(&r, &j).unwrap(), f);
        let i = Arc::new(Ideal::new(&r, vec![r.mul(&p, &p)]).unwrap());
        let m = ModulePresentation::quotient_ring(i);
        let text = serde_json::to_string(&presentation_to_json(&m)).unwrap();
        let back: PresentationJson = serde_json::from_str(&text).unwrap();
        let m2 = presentation_from_json(&r, &back).unwrap();
        assert_eq!(m2.hilbert_series(), m.hilbert_series());
    }
}

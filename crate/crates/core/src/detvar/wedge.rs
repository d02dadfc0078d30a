//! Exterior powers of polynomial matrices and the Schur map
//! `∧^{α'} V -> ⊗_i Sym_{α_i} V`.

use std::collections::HashMap;

use commalg::{Field, ModuleMap, PolyRing, Polynomial};

use crate::error::{DetvarError, Result};
use crate::partitions::Partition;

/// All `k`-subsets of `0..n` in lex order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// All `k`-multisets of `0..n` (weakly increasing sequences) in lex order.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion along the first column.
pub fn determinant<F: Field>(ring: &PolyRing<F>, a: &[Vec<Polynomial<F>>]) -> Polynomial<F> {
    let k = a.len();
    match k {
        0 => ring.one(),
        1 => a[0][0].clone(),
        2 => ring.sub(&ring.mul(&a[0][0], &a[1][1]), &ring.mul(&a[0][1], &a[1][0])),
        _ => {
            let mut det = ring.zero();
            for r in 0..k {
                if a[r][0].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial<F>>> = (0..k)
                    .filter(|&i| i != r)
                    .map(|i| a[i][1..].to_vec())
                    .collect();
                let term = ring.mul(&a[r][0], &determinant(ring, &minor));
                det = if r % 2 == 0 { ring.add(&det, &term) } else { ring.sub(&det, &term) };
            }
            det
        }
    }
}

/// `∧^k A`: entry `(I, J)` is the minor on rows `I` and columns `J`,
/// subsets in lex order.
pub fn exterior_power_matrix<F: Field>(ring: &PolyRing<F>, a: &ModuleMap<F>, k: usize) -> Result<ModuleMap<F>> {
    if k > a.nrows().min(a.ncols()) {
        return Err(DetvarError::InvalidParameters(format!(
            "∧^{k} of a {}×{} matrix",
            a.nrows(),
            a.ncols()
        )));
    }
    let rows = subsets(a.nrows(), k);
    let cols = subsets(a.ncols(), k);
    let columns = cols
        .iter()
        .map(|c| {
            rows.iter()
                .map(|r| {
                    let sub: Vec<Vec<Polynomial<F>>> =
                        r.iter().map(|&i| c.iter().map(|&j| a.entry(i, j).clone()).collect()).collect();
                    determinant(ring, &sub)
                })
                .collect()
        })
        .collect();
    let sum = |degs: &[i32], s: &[usize]| s.iter().map(|&i| degs[i]).sum::<i32>();
    let source = cols.iter().map(|c| sum(a.source_degrees(), c)).collect();
    let target = rows.iter().map(|r| sum(a.target_degrees(), r)).collect();
    Ok(ModuleMap::from_columns(columns, source, target)?)
}

/// `∧^{α'_1} A ⊗ ... ⊗ ∧^{α'_r} A`; the empty partition gives the 1×1
/// identity.
pub fn wedge_alpha<F: Field>(ring: &PolyRing<F>, a: &ModuleMap<F>, alpha: &Partition) -> Result<ModuleMap<F>> {
    let mut out = ModuleMap::identity(ring, vec![0]);
    for &c in alpha.conjugate().parts() {
        out = out.kronecker(ring, &exterior_power_matrix(ring, a, c as usize)?);
    }
    Ok(out)
}

/// Basis of `∧^{α'} V` for `dim V = d`: one subset per column of `α`.
pub fn wedge_basis(alpha: &Partition, d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &c in alpha.conjugate().parts() {
        let subs = subsets(d, c as usize);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                subs.iter().map(move |s| {
                    let mut p = prefix.clone();
                    p.push(s.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Basis of `⊗_i Sym_{α_i} V` for `dim V = d`: one multiset per row.
pub fn sym_basis(alpha: &Partition, d: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for &r in alpha.parts() {
        let ms = multisets(d, r as usize);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                ms.iter().map(move |s| {
                    let mut p = prefix.clone();
                    p.push(s.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// Indices into [`wedge_basis`] of the semistandard tableaux: columns
/// strictly increasing (automatic) and rows weakly increasing.
pub fn semistandard_indices(alpha: &Partition, d: usize) -> Vec<usize> {
    wedge_basis(alpha, d)
        .iter()
        .enumerate()
        .filter(|(_, cols)| cols.windows(2).all(|w| w[1].iter().zip(&w[0]).all(|(b, a)| a <= b)))
        .map(|(i, _)| i)
        .collect()
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(Vec::new(), false)];
    }
    let mut out = Vec::new();
    for (p, odd) in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting k-1 at pos creates (len - pos) inversions
            out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
        }
    }
    out
}

/// Integer matrix of `d_α : ∧^{α'} V -> ⊗_i Sym_{α_i} V` (comultiply each
/// exterior factor, then multiply along rows), `dim V = d`. Returned
/// column-wise as sparse `(row, coefficient)` lists.
pub fn schur_map_matrix(alpha: &Partition, d: usize) -> Vec<Vec<(usize, i64)>> {
    let rows = sym_basis(alpha, d);
    let index: HashMap<Vec<Vec<usize>>, usize> = rows.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let conj = alpha.conjugate();
    let perms: Vec<Vec<(Vec<usize>, bool)>> = conj.parts().iter().map(|&c| permutations(c as usize)).collect();
    wedge_basis(alpha, d)
        .iter()
        .map(|cols| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            // choose one permutation per column
            let mut choice = vec![0usize; cols.len()];
            loop {
                let mut rows_content: Vec<Vec<usize>> = vec![Vec::new(); alpha.rows()];
                let mut odd = false;
                for (j, col) in cols.iter().enumerate() {
                    let (perm, sign) = &perms[j][choice[j]];
                    odd ^= sign;
                    for (i, &p) in perm.iter().enumerate() {
                        rows_content[i].push(col[p]);
                    }
                }
                for r in rows_content.iter_mut() {
                    r.sort_unstable();
                }
                *acc.entry(index[&rows_content]).or_insert(0) += if odd { -1 } else { 1 };
                let mut j = 0;
                loop {
                    if j == choice.len() {
                        let mut out: Vec<(usize, i64)> = acc.into_iter().filter(|&(_, c)| c != 0).collect();
                        out.sort_unstable();
                        return out;
                    }
                    choice[j] += 1;
                    if choice[j] < perms[j].len() {
                        break;
                    }
                    choice[j] = 0;
                    j += 1;
                }
            }
        })
        .collect()
}

/// `L_α(A)` realized as `d_α^{target} ∘ ∧^{α'} A`, restricted to the
/// semistandard basis of the source. Columns index semistandard tableaux,
/// rows the basis of `⊗_i Sym_{α_i}` of the target.
pub fn schur_functor_matrix<F: Field>(ring: &PolyRing<F>, a: &ModuleMap<F>, alpha: &Partition) -> Result<ModuleMap<F>> {
    let wedge = wedge_alpha(ring, a, alpha)?;
    let ssyt = semistandard_indices(alpha, a.ncols());
    let d = schur_map_matrix(alpha, a.nrows());
    let nrows = sym_basis(alpha, a.nrows()).len();
    let field = ring.field();
    let columns: Vec<Vec<Polynomial<F>>> = ssyt
        .iter()
        .map(|&c| {
            let mut col = vec![ring.zero(); nrows];
            for (w, entry) in wedge.column(c).iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                for &(r, k) in &d[w] {
                    col[r] = ring.add(&col[r], &ring.scale(entry, &field.from_i64(k)));
                }
            }
            col
        })
        .collect();
    let shift: i32 = wedge.target_degrees().first().copied().unwrap_or(0);
    let source = ssyt.iter().map(|&c| wedge.source_degrees()[c]).collect();
    Ok(ModuleMap::from_columns(columns, source, vec![shift; nrows])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{weyl_dim, Partition};
    use commalg::{dense_rank, PrimeField, Rationals};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn generic(ring: &PolyRing<Rationals>, r: usize, c: usize, offset: usize) -> ModuleMap<Rationals> {
        let cols = (0..c).map(|j| (0..r).map(|i| ring.var(offset + i * c + j)).collect()).collect();
        ModuleMap::from_columns(cols, vec![1; c], vec![0; r]).unwrap()
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn exterior_power_examples() {
        let r = PolyRing::new(9, Rationals).unwrap();
        let a = generic(&r, 2, 2, 0);
        assert_eq!(exterior_power_matrix(&r, &a, 1).unwrap(), a);
        let w2 = exterior_power_matrix(&r, &a, 2).unwrap();
        assert_eq!((w2.nrows(), w2.ncols()), (1, 1));
        assert_eq!(w2.entry(0, 0), &determinant(&r, &a.rows()));
        let id = ModuleMap::identity(&r, vec![0, 0, 0]);
        assert_eq!(exterior_power_matrix(&r, &id, 2).unwrap(), ModuleMap::identity(&r, vec![0, 0, 0]));
    }

    #[test]
    fn schur_map_has_weyl_rank() {
        let q = Rationals;
        let f2 = PrimeField::new(2).unwrap();
        for alpha in [p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1]), p(&[2, 2]), p(&[3, 1])] {
            for d in 1..=3usize {
                if alpha.rows() > d {
                    continue;
                }
                let cols = schur_map_matrix(&alpha, d);
                let nrows = sym_basis(&alpha, d).len();
                let dense_q: Vec<Vec<_>> = semistandard_indices(&alpha, d)
                    .iter()
                    .map(|&c| {
                        let mut v = vec![q.zero(); nrows];
                        for &(r, k) in &cols[c] {
                            v[r] = q.from_i64(k);
                        }
                        v
                    })
                    .collect();
                let dense_2: Vec<Vec<_>> = semistandard_indices(&alpha, d)
                    .iter()
                    .map(|&c| {
                        let mut v = vec![f2.zero(); nrows];
                        for &(r, k) in &cols[c] {
                            v[r] = f2.from_i64(k);
                        }
                        v
                    })
                    .collect();
                let expected = weyl_dim(&alpha.to_weight(d).unwrap()).unwrap() as usize;
                assert_eq!(semistandard_indices(&alpha, d).len(), expected);
                assert_eq!(dense_rank(&q, &dense_q), expected, "{alpha} d={d}");
                assert_eq!(dense_rank(&f2, &dense_2), expected, "{alpha} d={d} over F_2");
            }
        }
    }

    #[test]
    fn one_row_and_one_column_schur_maps() {
        // (2): multiplication V⊗V -> Sym²V; (1,1): comultiplication ∧²V -> V⊗V
        let m = schur_map_matrix(&p(&[2]), 2);
        assert_eq!(m.len(), 4);
        assert_eq!(m[1], m[2]);
        let m = schur_map_matrix(&p(&[1, 1]), 2);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].len(), 2);
        assert_eq!(m[0].iter().map(|x| x.1).sum::<i64>(), 0);
    }
}

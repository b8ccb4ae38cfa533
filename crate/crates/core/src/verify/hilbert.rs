//! Truncated Hilbert functions of the generated ideal, and a geometric
//! count of the same numbers from Riemann-Roch.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::EchelonBasis;
use crate::picard::{check_r, enumerate_negative_curves, generators, riemann_roch, DivisorClass};
use crate::relations::RelationSet;

pub const DEFAULT_T_MAX: u32 = 3;

/// Number of degree `t` monomials beyond which the elimination is refused.
const MONOMIAL_LIMIT: u128 = 2_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn guard(t: u32, t_max: u32, nvars: usize) -> Result<()> {
    if t > t_max {
        return Err(Error::OutOfDeskScale(format!("degree {t} exceeds T_max = {t_max}")));
    }
    let count = binomial(nvars as u128 + t as u128 - 1, t as u128);
    if count > MONOMIAL_LIMIT {
        return Err(Error::OutOfDeskScale(format!(
            "{count} monomials of degree {t} in {nvars} variables"
        )));
    }
    Ok(())
}

/// Multisets of size `t` from `0..n`, as sorted vectors.
fn multisets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(t);
    fn rec(n: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, t, i, cur, out);
            cur.pop();
        }
    }
    rec(n, t, 0, &mut cur, &mut out);
    out
}

/// `dim (R/J)_t`: degree `t` monomials minus the rank of all products of
/// relations with degree `t - 2` monomials, computed one Picard degree at a
/// time.
pub fn hilbert_function<F: Field>(rs: &RelationSet<F>, t: u32, t_max: u32) -> Result<u64> {
    check_r(rs.r(), 4, 7)?;
    let n = rs.generators.len();
    guard(t, t_max, n)?;
    let t = t as usize;
    let classes: Vec<&[i64]> = rs.generators.iter().map(|g| g.class.coeffs()).collect();
    let class_of = |m: &[usize]| -> Vec<i64> {
        let mut c = vec![0; rs.r() + 1];
        for &i in m {
            for (x, y) in c.iter_mut().zip(classes[i]) {
                *x += y;
            }
        }
        c
    };

    let monos = multisets(n, t);
    if t < 2 {
        return Ok(monos.len() as u64);
    }
    let mut column: HashMap<Vec<i64>, HashMap<Vec<usize>, usize>> = HashMap::new();
    for m in &monos {
        let cols = column.entry(class_of(m)).or_default();
        let next = cols.len();
        cols.insert(m.clone(), next);
    }

    // Sparse rows of m * q, grouped by Picard degree.
    let f = rs.field();
    let mut rows: HashMap<Vec<i64>, Vec<Vec<(usize, F::Elem)>>> = HashMap::new();
    for m in multisets(n, t - 2) {
        let base = class_of(&m);
        for block in &rs.blocks {
            let class: Vec<i64> = base
                .iter()
                .zip(block.ruling.class.coeffs())
                .map(|(x, y)| x + y)
                .collect();
            let cols = &column[&class];
            for q in &block.relations {
                let row = q
                    .terms(f)
                    .map(|(mono, c)| {
                        let mut key = m.clone();
                        key.extend([mono.a, mono.b]);
                        key.sort_unstable();
                        (cols[&key], c.clone())
                    })
                    .collect();
                rows.entry(class.clone()).or_default().push(row);
            }
        }
    }

    let ideal_dim: usize = rows
        .into_par_iter()
        .map(|(class, sparse)| {
            let width = column[&class].len();
            let mut basis = EchelonBasis::new(f.clone(), width);
            for row in sparse {
                if basis.rank() == width {
                    break;
                }
                let mut dense = vec![f.zero(); width];
                for (j, c) in row {
                    dense[j] = f.add(&dense[j], &c);
                }
                basis.insert(dense);
            }
            basis.rank()
        })
        .sum();
    Ok((monos.len() - ideal_dim) as u64)
}

/// `dim Gamma(S_r, D)` for an effective class: negative curves meeting `D`
/// negatively are fixed components and are removed until `D` is nef.
fn h0_effective(mut d: DivisorClass, curves: &[DivisorClass]) -> i64 {
    'strip: loop {
        if d.anticanonical_degree() < 0 {
            return 0;
        }
        for c in curves {
            if d.dot(c) < 0 {
                d = &d - c;
                continue 'strip;
            }
        }
        return riemann_roch(&d);
    }
}

/// `sum_D dim Gamma(S_r, D)` over the Picard degrees `D` of degree `t`
/// monomials in the generators. Agrees with [`hilbert_function`] where the
/// ideal is known to be the full ideal of relations, which excludes `r = 8`.
pub fn hilbert_oracle(r: usize, t: u32, t_max: u32) -> Result<u64> {
    if r == 8 {
        return Err(Error::Precondition(
            "no geometric oracle for r = 8: the generated ideal is not known to be radical".into(),
        ));
    }
    check_r(r, 1, 7)?;
    let gens = generators(r)?;
    guard(t, t_max, gens.len())?;
    let curves: Vec<DivisorClass> = enumerate_negative_curves(r)?.into_iter().map(|c| c.class).collect();
    let mut degrees: BTreeSet<DivisorClass> = BTreeSet::from([DivisorClass::zero(r)]);
    for _ in 0..t {
        degrees = degrees
            .iter()
            .flat_map(|d| gens.iter().map(move |g| d + &g.class))
            .collect();
    }
    Ok(degrees
        .into_iter()
        .map(|d| h0_effective(d, &curves) as u64)
        .sum())
}

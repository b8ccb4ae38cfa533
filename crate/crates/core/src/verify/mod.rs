//! Witness points, Jacobian ranks, reconstruction of Cox coordinates from a
//! neighbourhood of one curve, and truncated Hilbert functions.

pub mod hilbert;
pub mod reference;
pub mod report;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, EchelonBasis, Row};
use crate::picard::{anticanonical, intersection, Generator};
use crate::plane::{PlaneForm, PointConfiguration};
use crate::relations::{evaluate_relation, QuadraticRelation, RelationSet};
use crate::rulings::Monomial;

pub use hilbert::{hilbert_function, hilbert_oracle, DEFAULT_T_MAX};
pub use reference::{check_reference_relations, reference_relations, ReferenceCheck};

/// A point of affine space with one coordinate per Cox ring generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Valuation<F: Field> {
    pub r: usize,
    pub values: Vec<F::Elem>,
}

impl<F: Field> Valuation<F> {
    pub fn zero(field: &F, r: usize, len: usize) -> Self {
        Valuation {
            r,
            values: vec![field.zero(); len],
        }
    }
}

/// Residuals and Jacobian rank of a set of relations at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub residuals_all_zero: bool,
    pub nonzero_residuals: usize,
}

/// Jacobian rank of every relation of `rs` at `v`.
pub fn jacobian_rank<F: Field>(rs: &RelationSet<F>, v: &Valuation<F>) -> Result<RankReport> {
    jacobian_rank_of(rs.field(), rs.relations(), rs.generators.len(), v)
}

/// Jacobian rank of the given relations, as a `#relations x ncols` matrix.
pub fn jacobian_rank_of<'a, F: Field + 'a>(
    field: &F,
    relations: impl IntoIterator<Item = &'a QuadraticRelation<F>>,
    ncols: usize,
    v: &Valuation<F>,
) -> Result<RankReport> {
    if v.values.len() != ncols {
        return Err(Error::IndexMismatch {
            expected: ncols,
            found: v.values.len(),
        });
    }
    let mut basis = EchelonBasis::new(field.clone(), ncols);
    let (mut rows, mut nonzero) = (0, 0);
    for q in relations {
        rows += 1;
        if !field.is_zero(&evaluate_relation(field, q, &v.values)?) {
            nonzero += 1;
        }
        let mut grad = vec![field.zero(); ncols];
        for (m, c) in q.terms(field) {
            field.add_mul(&mut grad[m.a], c, &v.values[m.b]);
            field.add_mul(&mut grad[m.b], c, &v.values[m.a]);
        }
        if basis.rank() < ncols {
            basis.insert(grad);
        }
    }
    Ok(RankReport {
        rows,
        cols: ncols,
        rank: basis.rank(),
        residuals_all_zero: nonzero == 0,
        nonzero_residuals: nonzero,
    })
}

fn id_of(gens: &[Generator], label: &str) -> usize {
    gens.iter()
        .position(|g| g.label() == label)
        .unwrap_or_else(|| panic!("no generator labelled {label}"))
}

/// A smooth point of the relation variety for `r = 6` or `r = 8`, given in
/// the canonical scaling of the plane forms.
///
/// For `r = 6` with `p_5 = (1:a:b)`, `p_6 = (1:c:d)` the point is, in the
/// determinantal scaling of [`reference`], `eta_5 = a(b-1)`, `eta_6 = c(d-1)`,
/// `mu_{1,2} = mu_{2,3} = mu_{3,4} = 1`, `mu_{1,4} = -1`,
/// `lambda_5 = lambda_6 = 1`. For `r = 8` it lies on the locus cut out by
/// the ruling `H - E_3` and needs `alpha_5, alpha_6 != 0`,
/// `alpha_8 != alpha_7`.
pub fn smooth_point<F: Field>(
    r: usize,
    gens: &[Generator],
    forms: &[PlaneForm<F>],
    cfg: &PointConfiguration<F>,
) -> Result<Valuation<F>> {
    if cfg.r() != r || gens.len() != forms.len() {
        return Err(Error::RankMismatch {
            left: r,
            right: cfg.r(),
        });
    }
    let f = cfg.field();
    let p = cfg.parameters();
    let mut v = Valuation::zero(f, r, gens.len());
    let mut set = |label: &str, x: F::Elem| v.values[id_of(gens, label)] = x;
    match r {
        6 => {
            let scale = reference::reference_scaling(gens, forms, cfg)?;
            let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
            let one = f.one();
            let reference = [
                ("E_5", f.mul(a, &f.sub(b, &one))),
                ("E_6", f.mul(c, &f.sub(d, &one))),
                ("m_{1,2}", one.clone()),
                ("m_{1,4}", f.neg(&one)),
                ("m_{2,3}", one.clone()),
                ("m_{3,4}", one.clone()),
                ("Q_{5}", one.clone()),
                ("Q_{6}", one),
            ];
            for (label, x) in reference {
                let id = id_of(gens, label);
                set(label, f.div(&x, &scale[id])?);
            }
        }
        8 => {
            let alpha = |k: usize| p[2 * (k - 1)].clone();
            let (a1, a2, a3, a4) = (alpha(1), alpha(2), alpha(3), alpha(4));
            let diff = f.sub(&a4, &a3);
            if f.is_zero(&a1) || f.is_zero(&a2) || f.is_zero(&diff) {
                return Err(Error::Precondition(
                    "the r = 8 witness needs alpha_5, alpha_6 != 0 and alpha_7 != alpha_8; \
                     choose different points"
                        .into(),
                ));
            }
            let over = |x: F::Elem| f.div(&f.mul(&x, &a4), &diff);
            let one = f.one();
            for label in ["E_8", "m_{1,3}", "m_{2,3}", "m_{3,4}", "m_{3,5}", "m_{3,6}", "m_{3,8}"] {
                set(label, one.clone());
            }
            set("E_1", over(a3.clone())?);
            set("E_2", over(one.clone())?);
            set("E_4", over(f.sub(&one, &a3))?);
            set("E_5", f.div(&over(f.sub(&a1, &a3))?, &a1)?);
            set("E_6", f.div(&over(f.sub(&a2, &a3))?, &a2)?);
        }
        _ => {
            return Err(Error::Precondition(format!(
                "smooth witness points are provided for r = 6 and r = 8, not r = {r}"
            )))
        }
    }
    Ok(v)
}

/// `eta_1 = lambda_1 = 1`, all other coordinates zero, on `S_7`.
pub fn singular_witness_r7<F: Field>(field: &F, gens: &[Generator]) -> Result<Valuation<F>> {
    if gens.len() != 56 {
        return Err(Error::Precondition("the witness q lives on r = 7".into()));
    }
    let mut v = Valuation::zero(field, 7, gens.len());
    v.values[id_of(gens, "E_1")] = field.one();
    v.values[id_of(gens, "C_1")] = field.one();
    Ok(v)
}

/// A random point of the relation variety: `xi(D) = chi(D) f_D(s)` for a
/// random plane point `s` and a random character `chi` of the Picard torus.
/// Retries until every coordinate is nonzero.
pub fn sample_variety_point<F: Field, R: Rng + ?Sized>(
    rs: &RelationSet<F>,
    rng: &mut R,
) -> Valuation<F> {
    let f = rs.field();
    let nonzero = |rng: &mut R| loop {
        let x = f.sample(rng);
        if !f.is_zero(&x) {
            break x;
        }
    };
    loop {
        let s = [nonzero(rng), nonzero(rng), nonzero(rng)];
        let torus: Vec<(F::Elem, F::Elem)> = (0..=rs.r())
            .map(|_| {
                let t = nonzero(rng);
                let inv = f.inv(&t).expect("nonzero");
                (t, inv)
            })
            .collect();
        let values: Vec<F::Elem> = rs
            .generators
            .iter()
            .zip(&rs.forms)
            .map(|(g, form)| {
                let chi = g.class.coeffs().iter().zip(&torus).fold(f.one(), |acc, (&e, (t, inv))| {
                    let base = if e >= 0 { t } else { inv };
                    f.mul(&acc, &f.pow(base, e.unsigned_abs() as u32))
                });
                f.mul(&chi, &form.evaluate(f, &s))
            })
            .collect();
        if values.iter().all(|x| !f.is_zero(x)) {
            return Valuation { r: rs.r(), values };
        }
    }
}

/// A coordinate recovered by [`propagate_dependence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedCoordinate {
    pub generator: usize,
    /// Intersection number with the pivot curve; 1 for the `K_i`.
    pub stage: i64,
    pub ruling: String,
}

#[derive(Clone, Debug)]
pub struct Propagation<F: Field> {
    pub valuation: Valuation<F>,
    /// Coordinates in the order they were determined.
    pub solved: Vec<SolvedCoordinate>,
    pub nonzero_residuals: usize,
}

/// Recovers every coordinate from `xi(D) != 0` and the coordinates of the
/// generators orthogonal to `D`.
///
/// Unknowns are solved in stages: generators meeting `D` once, then
/// `K_1, K_2`, then those meeting `D` twice, then the one meeting it three
/// times. Each unknown `g` appears in the ruling `D + g` only through the
/// monomial `xi(D) xi(g)`; a combination of the ruling's relations that
/// avoids the other unknown monomials determines it.
pub fn propagate_dependence<F: Field>(
    rs: &RelationSet<F>,
    pivot: usize,
    partial: &[Option<F::Elem>],
) -> Result<Propagation<F>> {
    let f = rs.field();
    let gens = &rs.generators;
    if partial.len() != gens.len() {
        return Err(Error::IndexMismatch {
            expected: gens.len(),
            found: partial.len(),
        });
    }
    let d = gens
        .get(pivot)
        .filter(|g| !g.is_kappa())
        .ok_or_else(|| Error::Precondition(format!("generator {pivot} is not a negative curve")))?;
    let xi_d = match &partial[pivot] {
        Some(x) if !f.is_zero(x) => x.clone(),
        _ => {
            return Err(Error::Precondition(format!(
                "the value at {} must be nonzero",
                d.label()
            )))
        }
    };
    let mut stage_of = Vec::with_capacity(gens.len());
    for g in gens {
        let s = if g.is_kappa() {
            1
        } else {
            intersection(&g.class, &d.class)?
        };
        stage_of.push(s);
    }
    let mut values: Vec<Option<F::Elem>> = vec![None; gens.len()];
    values[pivot] = Some(xi_d.clone());
    for (id, g) in gens.iter().enumerate() {
        if id != pivot && !g.is_kappa() && stage_of[id] == 0 {
            values[id] = Some(partial[id].clone().ok_or(Error::MissingValue(id))?);
        }
    }

    let kappas: Vec<usize> = (0..gens.len()).filter(|&i| gens[i].is_kappa()).collect();
    let stage_ids = |s: i64| -> Vec<usize> {
        (0..gens.len())
            .filter(|&i| !gens[i].is_kappa() && i != pivot && stage_of[i] == s)
            .collect()
    };
    let mut stages: Vec<(i64, Vec<usize>)> = vec![(1, stage_ids(1))];
    if !kappas.is_empty() {
        stages.push((1, kappas.clone()));
    }
    stages.push((2, stage_ids(2)));
    stages.push((3, stage_ids(3)));
    if let Some(&bad) = stage_of.iter().find(|&&s| s > 3) {
        return Err(Error::Precondition(format!("unexpected intersection number {bad}")));
    }

    let minus_k = anticanonical(rs.r())?;
    let mut solved = Vec::new();
    for (stage, ids) in stages {
        for target in ids {
            let class = if gens[target].is_kappa() {
                &minus_k + &d.class
            } else {
                &d.class + &gens[target].class
            };
            let block = rs
                .block(&class)
                .ok_or_else(|| Error::Undetermined(format!("{}: no ruling {class}", gens[target].label())))?;
            let reps = &block.ruling.representations;
            let target_mono = Monomial::new(pivot, target);
            let t_col = reps
                .iter()
                .position(|m| *m == target_mono)
                .ok_or_else(|| Error::Undetermined(gens[target].label()))?;
            // Columns of other monomials that still contain an unknown.
            let blocked: Vec<usize> = (0..reps.len())
                .filter(|&j| j != t_col && (values[reps[j].a].is_none() || values[reps[j].b].is_none()))
                .collect();
            let row = eliminating_combination(f, &block.relations, &blocked, t_col)
                .ok_or_else(|| Error::Undetermined(gens[target].label()))?;
            let mut rest = f.zero();
            for (j, m) in reps.iter().enumerate() {
                if j == t_col || f.is_zero(&row[j]) {
                    continue;
                }
                let a = values[m.a].as_ref().expect("blocked columns eliminated");
                let b = values[m.b].as_ref().expect("blocked columns eliminated");
                f.add_mul(&mut rest, &row[j], &f.mul(a, b));
            }
            let denom = f.mul(&row[t_col], &xi_d);
            values[target] = Some(f.neg(&f.div(&rest, &denom)?));
            solved.push(SolvedCoordinate {
                generator: target,
                stage,
                ruling: class.to_string(),
            });
        }
    }

    let values: Vec<F::Elem> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.ok_or(Error::MissingValue(i)))
        .collect::<Result<_>>()?;
    let mut nonzero_residuals = 0;
    for q in rs.relations() {
        if !f.is_zero(&evaluate_relation(f, q, &values)?) {
            nonzero_residuals += 1;
        }
    }
    Ok(Propagation {
        valuation: Valuation { r: rs.r(), values },
        solved,
        nonzero_residuals,
    })
}

/// A linear combination of `relations` vanishing on the `blocked` columns
/// and nonzero at `target`.
fn eliminating_combination<F: Field>(
    f: &F,
    relations: &[QuadraticRelation<F>],
    blocked: &[usize],
    target: usize,
) -> Option<Row<F>> {
    let restricted: Vec<Row<F>> = relations
        .iter()
        .map(|q| blocked.iter().map(|&j| q.coeffs[j].clone()).collect())
        .collect();
    let combos = if blocked.is_empty() {
        (0..relations.len())
            .map(|i| {
                let mut e = vec![f.zero(); relations.len()];
                e[i] = f.one();
                e
            })
            .collect()
    } else {
        linalg::left_kernel(f, &restricted)
    };
    combos.into_iter().find_map(|c| {
        let width = relations.first()?.coeffs.len();
        let mut row = vec![f.zero(); width];
        for (ci, q) in c.iter().zip(relations) {
            if f.is_zero(ci) {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&q.coeffs) {
                f.add_mul(x, ci, y);
            }
        }
        (!f.is_zero(&row[target])).then_some(row)
    })
}

//! Quadratic relations of the Cox ring.
//!
//! For an `(n)`-ruling with `k` representations `D_j + D'_j`, the products
//! `f_{D_j} f_{D'_j}` span an `(n+1)`-dimensional space of plane forms; every
//! linear dependency among them is a relation between the monomials
//! `xi(D_j) xi(D'_j)`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Row};
use crate::picard::{check_r, generators, Generator};
use crate::plane::{generator_forms, multiply, PlaneForm, PointConfiguration};
use crate::rulings::{ruling_orders, rulings_with, Monomial, Ruling};

/// `sum_j coeffs[j] * xi(a_j) xi(b_j) = 0` over the ruling's monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticRelation<F: Field> {
    pub ruling: Arc<Ruling>,
    pub coeffs: Row<F>,
}

impl<F: Field> QuadraticRelation<F> {
    /// Monomials with nonzero coefficient.
    pub fn terms(&self, field: &F) -> impl Iterator<Item = (Monomial, &F::Elem)> + '_ {
        let field = field.clone();
        self.ruling
            .representations
            .iter()
            .copied()
            .zip(&self.coeffs)
            .filter(move |(_, c)| !field.is_zero(c))
    }

    pub fn order(&self) -> u8 {
        self.ruling.order
    }
}

/// The relations contributed by one ruling.
#[derive(Clone, Debug)]
pub struct RelationBlock<F: Field> {
    pub ruling: Arc<Ruling>,
    /// Measured dimension of the span of the product forms.
    pub rank: usize,
    pub relations: Vec<QuadraticRelation<F>>,
}

/// All quadratic relations for a point configuration, grouped by ruling in
/// canonical order.
#[derive(Clone, Debug)]
pub struct RelationSet<F: Field> {
    pub cfg: PointConfiguration<F>,
    pub generators: Vec<Generator>,
    pub forms: Vec<PlaneForm<F>>,
    pub blocks: Vec<RelationBlock<F>>,
}

impl<F: Field> RelationSet<F> {
    pub fn r(&self) -> usize {
        self.cfg.r()
    }

    pub fn field(&self) -> &F {
        self.cfg.field()
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.relations.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn relations(&self) -> impl Iterator<Item = &QuadraticRelation<F>> {
        self.blocks.iter().flat_map(|b| &b.relations)
    }

    pub fn relations_of_order(&self, n: u8) -> impl Iterator<Item = &QuadraticRelation<F>> {
        self.relations().filter(move |q| q.order() == n)
    }

    /// The block of the ruling with this class, if any.
    pub fn block(&self, class: &crate::picard::DivisorClass) -> Option<&RelationBlock<F>> {
        self.blocks.iter().find(|b| &b.ruling.class == class)
    }
}

/// Rows `f_{D_j} * f_{D'_j}`, one per representation.
pub fn product_matrix<F: Field>(field: &F, ruling: &Ruling, forms: &[PlaneForm<F>]) -> Vec<Row<F>> {
    ruling
        .representations
        .iter()
        .map(|m| multiply(field, &forms[m.a], &forms[m.b]).coeffs)
        .collect()
}

fn block_for_ruling<F: Field>(
    field: &F,
    ruling: Arc<Ruling>,
    forms: &[PlaneForm<F>],
) -> Result<RelationBlock<F>> {
    let rows = product_matrix(field, &ruling, forms);
    let rank = linalg::rank(field, &rows);
    let expected = ruling.order as usize + 1;
    if rank != expected {
        return Err(Error::RulingRank {
            class: ruling.class.to_string(),
            expected,
            found: rank,
        });
    }
    let mut kernel = linalg::left_kernel(field, &rows);
    linalg::rref(field, &mut kernel);
    let relations = kernel
        .into_iter()
        .map(|coeffs| QuadraticRelation {
            ruling: Arc::clone(&ruling),
            coeffs,
        })
        .collect();
    Ok(RelationBlock {
        ruling,
        rank,
        relations,
    })
}

/// Reduced echelon basis of the `k - (n+1)` relations of one ruling.
pub fn relations_for_ruling<F: Field>(
    ruling: &Ruling,
    cfg: &PointConfiguration<F>,
) -> Result<Vec<QuadraticRelation<F>>> {
    if ruling.class.r() != cfg.r() {
        return Err(Error::RankMismatch {
            left: ruling.class.r(),
            right: cfg.r(),
        });
    }
    let gens = generators(cfg.r())?;
    let forms = generator_forms(&gens, cfg)?;
    Ok(block_for_ruling(cfg.field(), Arc::new(ruling.clone()), &forms)?.relations)
}

/// The full generating set of quadratic relations: 5, 20, 81, 529 and 17399
/// relations for `r = 4..=8`.
pub fn full_ideal<F: Field>(r: usize, cfg: &PointConfiguration<F>) -> Result<RelationSet<F>> {
    check_r(r, 4, 8)?;
    if cfg.r() != r {
        return Err(Error::RankMismatch {
            left: r,
            right: cfg.r(),
        });
    }
    cfg.validate().map_err(Error::GeneralPosition)?;
    let gens = generators(r)?;
    let forms = generator_forms(&gens, cfg)?;
    let rulings: Vec<Arc<Ruling>> = ruling_orders(r)
        .iter()
        .flat_map(|&n| rulings_with(&gens, r, n))
        .map(Arc::new)
        .collect();
    let field = cfg.field();
    let blocks = rulings
        .into_par_iter()
        .map(|ruling| block_for_ruling(field, ruling, &forms))
        .collect::<Result<Vec<_>>>()?;
    Ok(RelationSet {
        cfg: cfg.clone(),
        generators: gens,
        forms,
        blocks,
    })
}

/// Whether `candidate` (indexed by the ruling's monomials) is a relation,
/// i.e. annihilates the product forms.
pub fn span_contains<F: Field>(
    ruling: &Ruling,
    candidate: &[F::Elem],
    cfg: &PointConfiguration<F>,
) -> Result<bool> {
    let gens = generators(cfg.r())?;
    let forms = generator_forms(&gens, cfg)?;
    span_contains_with_forms(cfg.field(), ruling, candidate, &forms)
}

/// [`span_contains`] with precomputed generator forms.
pub fn span_contains_with_forms<F: Field>(
    field: &F,
    ruling: &Ruling,
    candidate: &[F::Elem],
    forms: &[PlaneForm<F>],
) -> Result<bool> {
    if candidate.len() != ruling.representations.len() {
        return Err(Error::IndexMismatch {
            expected: ruling.representations.len(),
            found: candidate.len(),
        });
    }
    let rows = product_matrix(field, ruling, forms);
    let width = rows.first().map_or(0, Vec::len);
    let mut combo = vec![field.zero(); width];
    for (c, row) in candidate.iter().zip(&rows) {
        if field.is_zero(c) {
            continue;
        }
        for (acc, x) in combo.iter_mut().zip(row) {
            field.add_mul(acc, c, x);
        }
    }
    Ok(combo.iter().all(|x| field.is_zero(x)))
}

/// `sum_j c_j v(a_j) v(b_j)` for a valuation indexed by generator id.
pub fn evaluate_relation<F: Field>(
    field: &F,
    q: &QuadraticRelation<F>,
    values: &[F::Elem],
) -> Result<F::Elem> {
    let mut acc = field.zero();
    for (m, c) in q.ruling.representations.iter().zip(&q.coeffs) {
        if field.is_zero(c) {
            continue;
        }
        let a = values.get(m.a).ok_or(Error::MissingValue(m.a))?;
        let b = values.get(m.b).ok_or(Error::MissingValue(m.b))?;
        field.add_mul(&mut acc, c, &field.mul(a, b));
    }
    Ok(acc)
}

//! Points in the projective plane, general position, and the plane forms
//! `f_D` cutting out the images of negative curves.

use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg::{self, Row};
use crate::picard::{check_r, DivisorClass, Generator, GeneratorPayload, NegativeCurve, MAX_POINTS};

/// `p_1 = (1:0:0), p_2 = (0:1:0), p_3 = (0:0:1), p_4 = (1:1:1)`.
const STANDARD_POINTS: [[i64; 3]; 4] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]];

pub type Point<F> = [<F as Field>::Elem; 3];

/// `alpha_5, beta_5, ..., alpha_8, beta_8` of the built-in configurations;
/// the first `2(r-4)` entries are used. They are in general position over Q
/// and over `F_101`.
pub const DEFAULT_PARAMETERS: [i64; 8] = [2, 3, 5, 7, 13, 17, 3, 2];

/// `r` points of the plane with the first four in standard position and
/// `p_j = (1 : alpha_j : beta_j)` for `j >= 5`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfiguration<F: Field> {
    field: F,
    points: Vec<Point<F>>,
}

impl<F: Field> PointConfiguration<F> {
    /// Builds the configuration from `alpha_5, beta_5, alpha_6, beta_6, ...`.
    pub fn from_parameters(field: F, r: usize, params: &[F::Elem]) -> Result<Self> {
        check_r(r, 1, MAX_POINTS)?;
        let needed = 2 * r.saturating_sub(4);
        if params.len() != needed {
            return Err(Error::Precondition(format!(
                "r = {r} needs {needed} parameters (alpha_j, beta_j for j >= 5), got {}",
                params.len()
            )));
        }
        let mut points: Vec<Point<F>> = STANDARD_POINTS[..r.min(4)]
            .iter()
            .map(|p| p.map(|x| field.from_i64(x)))
            .collect();
        for pair in params.chunks(2) {
            points.push([field.one(), pair[0].clone(), pair[1].clone()]);
        }
        Ok(PointConfiguration { field, points })
    }

    /// The built-in configuration with [`DEFAULT_PARAMETERS`].
    pub fn default_for(field: F, r: usize) -> Result<Self> {
        check_r(r, 1, MAX_POINTS)?;
        let params: Vec<F::Elem> = DEFAULT_PARAMETERS[..2 * r.saturating_sub(4)]
            .iter()
            .map(|&x| field.from_i64(x))
            .collect();
        Self::from_parameters(field, r, &params)
    }

    /// Accepts arbitrary homogeneous coordinates; the first four points must
    /// be the standard ones up to scaling and later points need `x_0 != 0`.
    pub fn from_points(field: F, raw: Vec<Point<F>>) -> Result<Self> {
        check_r(raw.len(), 1, MAX_POINTS)?;
        let mut points = Vec::with_capacity(raw.len());
        for (idx, p) in raw.into_iter().enumerate() {
            let lead = p
                .iter()
                .position(|x| !field.is_zero(x))
                .ok_or_else(|| Error::Precondition(format!("p_{} is the zero vector", idx + 1)))?;
            let inv = field.inv(&p[lead]).expect("nonzero");
            let scaled: Point<F> = [0, 1, 2].map(|i| field.mul(&p[i], &inv));
            if idx < 4 {
                let expected = STANDARD_POINTS[idx].map(|x| field.from_i64(x));
                if scaled != expected {
                    return Err(Error::Precondition(format!(
                        "p_{} must be {:?} in normalized coordinates",
                        idx + 1,
                        STANDARD_POINTS[idx]
                    )));
                }
            } else if lead != 0 {
                return Err(Error::Precondition(format!(
                    "p_{} must have a nonzero first coordinate",
                    idx + 1
                )));
            }
            points.push(scaled);
        }
        Ok(PointConfiguration { field, points })
    }

    /// A configuration with uniformly random nonzero `alpha_j, beta_j`.
    /// It is not validated.
    pub fn random<R: Rng + ?Sized>(field: F, r: usize, rng: &mut R) -> Result<Self> {
        let params: Vec<F::Elem> = (0..2 * r.saturating_sub(4))
            .map(|_| loop {
                let x = field.sample(rng);
                if !field.is_zero(&x) {
                    break x;
                }
            })
            .collect();
        Self::from_parameters(field, r, &params)
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &[Point<F>] {
        &self.points
    }

    /// `p_i` for a 1-based index.
    pub fn point(&self, i: usize) -> &Point<F> {
        &self.points[i - 1]
    }

    /// `(alpha_j, beta_j)` of `p_j`, `j >= 5`.
    pub fn parameters(&self) -> Vec<F::Elem> {
        self.points[4.min(self.r())..]
            .iter()
            .flat_map(|p| [p[1].clone(), p[2].clone()])
            .collect()
    }

    /// Checks the three general position conditions, returning the first
    /// violation found.
    pub fn validate(&self) -> std::result::Result<(), GeneralPositionWitness> {
        validate_general_position(self)
    }
}

impl PointConfiguration<Rationals> {
    /// Reduction mod p; `None` if a coordinate has a denominator divisible by p.
    pub fn reduce(&self, fp: PrimeField) -> Option<PointConfiguration<PrimeField>> {
        let points = self
            .points
            .iter()
            .map(|p| Some([fp.reduce(&p[0])?, fp.reduce(&p[1])?, fp.reduce(&p[2])?]))
            .collect::<Option<Vec<_>>>()?;
        Some(PointConfiguration { field: fp, points })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositionDefect {
    /// Three points on a line.
    Collinear,
    /// Six points on a conic.
    OnConic,
    /// All eight points on a cubic that is singular at one of them.
    SingularCubic,
}

/// Which general position condition fails, and for which points (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralPositionWitness {
    pub defect: PositionDefect,
    pub points: Vec<usize>,
    /// The double point of the cubic for [`PositionDefect::SingularCubic`].
    pub double_point: Option<usize>,
}

impl fmt::Display for GeneralPositionWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts = self
            .points
            .iter()
            .map(|p| format!("p_{p}"))
            .collect::<Vec<_>>()
            .join(", ");
        match self.defect {
            PositionDefect::Collinear => write!(f, "{pts} are collinear"),
            PositionDefect::OnConic => write!(f, "{pts} lie on a conic"),
            PositionDefect::SingularCubic => write!(
                f,
                "{pts} lie on a cubic singular at p_{}",
                self.double_point.unwrap_or(0)
            ),
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(1, n, k, &mut cur, &mut out);
    out
}

pub fn validate_general_position<F: Field>(
    cfg: &PointConfiguration<F>,
) -> std::result::Result<(), GeneralPositionWitness> {
    let f = cfg.field();
    let r = cfg.r();
    for triple in combinations(r, 3) {
        let m: Vec<Row<F>> = triple.iter().map(|&i| cfg.point(i).to_vec()).collect();
        if f.is_zero(&linalg::determinant(f, &m)) {
            return Err(GeneralPositionWitness {
                defect: PositionDefect::Collinear,
                points: triple,
                double_point: None,
            });
        }
    }
    if r >= 6 {
        for six in combinations(r, 6) {
            let m: Vec<Row<F>> = six
                .iter()
                .map(|&i| evaluate_monomials(f, 2, cfg.point(i)))
                .collect();
            if f.is_zero(&linalg::determinant(f, &m)) {
                return Err(GeneralPositionWitness {
                    defect: PositionDefect::OnConic,
                    points: six,
                    double_point: None,
                });
            }
        }
    }
    if r == 8 {
        for i in 1..=8 {
            let mut rows = Vec::new();
            for j in 1..=8 {
                rows.extend(condition_rows(f, 3, cfg.point(j), if i == j { 2 } else { 1 }));
            }
            if linalg::rank(f, &rows) < monomial_count(3) {
                return Err(GeneralPositionWitness {
                    defect: PositionDefect::SingularCubic,
                    points: (1..=8).collect(),
                    double_point: Some(i),
                });
            }
        }
    }
    Ok(())
}

/// Number of monomials of degree `d` in three variables.
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// Exponent triples of degree `d` in descending lexicographic order.
pub fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for e0 in (0..=d).rev() {
        for e1 in (0..=d - e0).rev() {
            out.push([e0, e1, d - e0 - e1]);
        }
    }
    out
}

/// Position of an exponent triple in [`monomials`].
pub fn monomial_index(e: [u32; 3]) -> usize {
    let d = e[0] + e[1] + e[2];
    let s = (d - e[0]) as usize;
    s * (s + 1) / 2 + (s - e[1] as usize)
}

fn evaluate_monomials<F: Field>(f: &F, d: u32, p: &Point<F>) -> Row<F> {
    monomials(d)
        .iter()
        .map(|e| derivative_value(f, *e, [0, 0, 0], p))
        .collect()
}

/// Value at `p` of the partial derivative `d^k / dx^k` of the monomial `x^e`.
fn derivative_value<F: Field>(f: &F, e: [u32; 3], k: [u32; 3], p: &Point<F>) -> F::Elem {
    let mut acc = f.one();
    for i in 0..3 {
        if k[i] > e[i] {
            return f.zero();
        }
        let falling: i64 = (0..k[i]).map(|t| (e[i] - t) as i64).product();
        if falling != 1 {
            acc = f.mul(&acc, &f.from_i64(falling));
        }
        acc = f.mul(&acc, &f.pow(&p[i], e[i] - k[i]));
    }
    acc
}

fn multi_indices(order: u32) -> Vec<[u32; 3]> {
    monomials(order)
}

/// Linear conditions on degree-`d` coefficients for multiplicity `>= mult` at `p`:
/// every partial derivative of order `< mult` vanishes.
pub fn condition_rows<F: Field>(f: &F, d: u32, p: &Point<F>, mult: u32) -> Vec<Row<F>> {
    let mons = monomials(d);
    (0..mult)
        .flat_map(|order| multi_indices(order))
        .map(|k| mons.iter().map(|&e| derivative_value(f, e, k, p)).collect())
        .collect()
}

/// A ternary form with coefficients indexed by [`monomials`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneForm<F: Field> {
    pub degree: u32,
    pub coeffs: Row<F>,
}

impl<F: Field> PlaneForm<F> {
    pub fn constant(f: &F, c: F::Elem) -> Self {
        let _ = f;
        PlaneForm {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.coeffs.iter().all(|c| f.is_zero(c))
    }

    pub fn evaluate(&self, f: &F, p: &Point<F>) -> F::Elem {
        self.derivative_at(f, [0, 0, 0], p)
    }

    /// Value at `p` of the partial derivative with multi-index `k`.
    pub fn derivative_at(&self, f: &F, k: [u32; 3], p: &Point<F>) -> F::Elem {
        let mut acc = f.zero();
        for (c, e) in self.coeffs.iter().zip(monomials(self.degree)) {
            if f.is_zero(c) {
                continue;
            }
            f.add_mul(&mut acc, c, &derivative_value(f, e, k, p));
        }
        acc
    }

    /// Largest `m` such that all partials of order `< m` vanish at `p`.
    pub fn multiplicity_at(&self, f: &F, p: &Point<F>) -> u32 {
        let mut m = 0;
        while m <= self.degree {
            if multi_indices(m)
                .into_iter()
                .any(|k| !f.is_zero(&self.derivative_at(f, k, p)))
            {
                return m;
            }
            m += 1;
        }
        m
    }
}

/// Exact product of two forms.
pub fn multiply<F: Field>(f: &F, a: &PlaneForm<F>, b: &PlaneForm<F>) -> PlaneForm<F> {
    let degree = a.degree + b.degree;
    let mut coeffs = vec![f.zero(); monomial_count(degree)];
    let mons_b = monomials(b.degree);
    for (ca, ea) in a.coeffs.iter().zip(monomials(a.degree)) {
        if f.is_zero(ca) {
            continue;
        }
        for (cb, eb) in b.coeffs.iter().zip(&mons_b) {
            if f.is_zero(cb) {
                continue;
            }
            let idx = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
            f.add_mul(&mut coeffs[idx], ca, cb);
        }
    }
    PlaneForm { degree, coeffs }
}

/// Reduced echelon basis of the forms of degree `d` with multiplicity at
/// least `mults[j]` at `p_{j+1}`.
pub fn linear_system<F: Field>(
    cfg: &PointConfiguration<F>,
    degree: u32,
    mults: &[u32],
) -> Vec<PlaneForm<F>> {
    let f = cfg.field();
    let mut rows = Vec::new();
    for (j, &m) in mults.iter().enumerate() {
        if m > 0 {
            rows.extend(condition_rows(f, degree, cfg.point(j + 1), m));
        }
    }
    let n = monomial_count(degree);
    let mut basis = if rows.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![f.zero(); n];
                v[i] = f.one();
                v
            })
            .collect()
    } else {
        linalg::kernel(f, &rows, n)
    };
    linalg::rref(f, &mut basis);
    basis
        .into_iter()
        .map(|coeffs| PlaneForm { degree, coeffs })
        .collect()
}

fn class_system(class: &DivisorClass) -> Result<(u32, Vec<u32>)> {
    let degree = u32::try_from(class.degree())
        .map_err(|_| Error::Precondition(format!("class {class} has negative degree")))?;
    let mults = (1..=class.r())
        .map(|i| {
            u32::try_from(class.multiplicity(i)).map_err(|_| {
                Error::Precondition(format!("class {class} has a negative multiplicity"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((degree, mults))
}

/// The form `f_D` of a negative curve, normalized so that its first nonzero
/// coefficient is 1. Exceptional curves get the constant 1.
pub fn curve_form<F: Field>(curve: &NegativeCurve, cfg: &PointConfiguration<F>) -> Result<PlaneForm<F>> {
    if curve.class.r() != cfg.r() {
        return Err(Error::RankMismatch {
            left: curve.class.r(),
            right: cfg.r(),
        });
    }
    if curve.class.degree() == 0 {
        return Ok(PlaneForm::constant(cfg.field(), cfg.field().one()));
    }
    let (degree, mults) = class_system(&curve.class)?;
    let mut basis = linear_system(cfg, degree, &mults);
    if basis.len() != 1 {
        return Err(Error::KernelDimension {
            what: format!("the form of {}", curve.kind),
            expected: 1,
            found: basis.len(),
        });
    }
    Ok(basis.pop().expect("one form"))
}

/// The two cubics through eight points, in reduced echelon form.
pub fn cubic_pencil<F: Field>(cfg: &PointConfiguration<F>) -> Result<(PlaneForm<F>, PlaneForm<F>)> {
    if cfg.r() != 8 {
        return Err(Error::Precondition(format!(
            "the anticanonical pencil is defined for r = 8, got r = {}",
            cfg.r()
        )));
    }
    let mut basis = linear_system(cfg, 3, &[1; 8]);
    if basis.len() != 2 {
        return Err(Error::KernelDimension {
            what: "the cubics through eight points".into(),
            expected: 2,
            found: basis.len(),
        });
    }
    let second = basis.pop().expect("two forms");
    let first = basis.pop().expect("two forms");
    Ok((first, second))
}

/// Forms of all Cox ring generators, indexed by generator id.
pub fn generator_forms<F: Field>(
    gens: &[Generator],
    cfg: &PointConfiguration<F>,
) -> Result<Vec<PlaneForm<F>>> {
    let pencil = if gens.iter().any(Generator::is_kappa) {
        Some(cubic_pencil(cfg)?)
    } else {
        None
    };
    gens.par_iter()
        .map(|g| match &g.payload {
            GeneratorPayload::Curve(c) => curve_form(c, cfg),
            GeneratorPayload::Kappa(k) => {
                let (a, b) = pencil.as_ref().expect("pencil computed for kappas");
                Ok(if *k == 1 { a.clone() } else { b.clone() })
            }
        })
        .collect()
}

/// `det(v(x), v(p_{i_1}), ..., v(p_{i_n}))` where `v` is the Veronese map of
/// degree `d` and `n = monomial_count(d) - 1`: the unique form of degree `d`
/// through the listed points, with the scaling given by the determinant.
pub fn determinantal_form<F: Field>(
    cfg: &PointConfiguration<F>,
    degree: u32,
    point_indices: &[usize],
) -> Result<PlaneForm<F>> {
    let f = cfg.field();
    let n = monomial_count(degree);
    if point_indices.len() + 1 != n {
        return Err(Error::Precondition(format!(
            "a determinantal form of degree {degree} needs {} points",
            n - 1
        )));
    }
    let rows: Vec<Row<F>> = point_indices
        .iter()
        .map(|&i| evaluate_monomials(f, degree, cfg.point(i)))
        .collect();
    let coeffs = (0..n)
        .map(|col| {
            let minor: Vec<Row<F>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let det = linalg::determinant(f, &minor);
            if col % 2 == 0 {
                det
            } else {
                f.neg(&det)
            }
        })
        .collect();
    Ok(PlaneForm { degree, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::{enumerate_negative_curves, CurveKind};

    fn q_cfg(r: usize, params: &[i64]) -> PointConfiguration<Rationals> {
        let p: Vec<_> = params.iter().map(|&x| Rationals.from_i64(x)).collect();
        PointConfiguration::from_parameters(Rationals, r, &p).unwrap()
    }

    #[test]
    fn monomial_order_and_index() {
        assert_eq!(monomials(1), vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(monomials(2)[2], [1, 0, 1]);
        for d in 0..=12 {
            for (i, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(e), i);
            }
        }
    }

    #[test]
    fn collinear_points_are_reported() {
        // p_3 = (0:0:1) on the line through p_1 and p_2 would need x_2 = 0;
        // use p_5 on the line x_1 = 0 through p_1 and p_3 instead.
        let cfg = q_cfg(5, &[0, 3]);
        let w = cfg.validate().unwrap_err();
        assert_eq!(w.defect, PositionDefect::Collinear);
        assert_eq!(w.points, vec![1, 3, 5]);

        let raw = vec![
            [1, 0, 0].map(|x| Rationals.from_i64(x)),
            [0, 1, 0].map(|x| Rationals.from_i64(x)),
            [1, 1, 0].map(|x| Rationals.from_i64(x)),
        ];
        // The third point is not the standard p_3.
        assert!(PointConfiguration::from_points(Rationals, raw).is_err());
    }

    #[test]
    fn general_position_examples() {
        assert!(q_cfg(6, &[2, 3, 5, 7]).validate().is_ok());
        let f = PrimeField::new(101).unwrap();
        let p: Vec<u64> = [2, 3, 5, 7, 13, 17].iter().map(|&x| f.from_i64(x)).collect();
        let cfg = PointConfiguration::from_parameters(f, 7, &p).unwrap();
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn six_points_on_a_conic() {
        // x0 x1 - 2 x0 x2 + x1 x2 passes through p_1..p_4, (1:3:-3) and (1:4:-2).
        let cfg = q_cfg(6, &[3, -3, 4, -2]);
        let w = cfg.validate().unwrap_err();
        assert_eq!(w.defect, PositionDefect::OnConic);
        assert_eq!(w.points, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn line_through_first_two_points() {
        let f = Rationals;
        let cfg = q_cfg(6, &[2, 3, 5, 7]);
        let curves = enumerate_negative_curves(6).unwrap();
        let m12 = curves.iter().find(|c| c.kind == CurveKind::Line(1, 2)).unwrap();
        let form = curve_form(m12, &cfg).unwrap();
        assert_eq!(form.coeffs, vec![f.zero(), f.zero(), f.one()]);
        let e3 = &curves[2];
        assert_eq!(curve_form(e3, &cfg).unwrap(), PlaneForm::constant(&f, f.one()));
    }

    #[test]
    fn conic_through_five_points() {
        let cfg = q_cfg(6, &[2, 3, 5, 7]);
        let curves = enumerate_negative_curves(6).unwrap();
        let q1 = curves.iter().find(|c| c.kind == CurveKind::Conic(vec![1])).unwrap();
        let form = curve_form(q1, &cfg).unwrap();
        // Independent oracle: nullspace of the 5x6 evaluation matrix.
        let rows: Vec<_> = (2..=6).map(|i| evaluate_monomials(&Rationals, 2, cfg.point(i))).collect();
        let ker = linalg::kernel(&Rationals, &rows, 6);
        assert_eq!(ker.len(), 1);
        let lead = ker[0].iter().find(|x| !Rationals.is_zero(x)).unwrap().clone();
        let scaled: Vec<_> = ker[0].iter().map(|x| x / &lead).collect();
        assert_eq!(form.coeffs, scaled);
        for i in 2..=6 {
            assert!(Rationals.is_zero(&form.evaluate(&Rationals, cfg.point(i))));
        }
        assert!(!Rationals.is_zero(&form.evaluate(&Rationals, cfg.point(1))));
    }

    #[test]
    fn multiply_matches_convolution() {
        let f = Rationals;
        let a = PlaneForm::<Rationals> {
            degree: 2,
            coeffs: (1..=6).map(|x| f.from_i64(x)).collect(),
        };
        let b = PlaneForm::<Rationals> {
            degree: 3,
            coeffs: (1..=10).map(|x| f.from_i64(x * x - 3)).collect(),
        };
        let prod = multiply(&f, &a, &b);
        assert_eq!(prod.degree, 5);
        // Brute force: evaluate both sides at a few points.
        for p in [[1, 2, 3], [2, -1, 5], [0, 1, 7], [3, 3, -4]] {
            let pt = p.map(|x| f.from_i64(x));
            assert_eq!(prod.evaluate(&f, &pt), a.evaluate(&f, &pt) * b.evaluate(&f, &pt));
        }
        let one = PlaneForm::constant(&f, f.one());
        assert_eq!(multiply(&f, &a, &one), a);
    }

    #[test]
    fn cubic_pencil_vanishes_at_the_points() {
        let f = PrimeField::new(32003).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let cfg = loop {
            let c = PointConfiguration::random(f, 8, &mut rng).unwrap();
            if c.validate().is_ok() {
                break c;
            }
        };
        let (k1, k2) = cubic_pencil(&cfg).unwrap();
        assert_ne!(k1, k2);
        for _ in 0..5 {
            let (s, t) = (f.sample(&mut rng), f.sample(&mut rng));
            let member = PlaneForm::<PrimeField> {
                degree: 3,
                coeffs: k1
                    .coeffs
                    .iter()
                    .zip(&k2.coeffs)
                    .map(|(a, b)| f.add(&f.mul(&s, a), &f.mul(&t, b)))
                    .collect(),
            };
            for p in cfg.points() {
                assert_eq!(member.evaluate(&f, p), 0);
            }
        }
        assert!(cubic_pencil(&q_cfg(7, &[2, 3, 5, 7, 13, 17])).is_err());
    }

    #[test]
    fn determinantal_line() {
        let cfg = q_cfg(6, &[2, 3, 5, 7]);
        // det(x, p_1, p_4) = x_2 - x_1 ... check it vanishes on both points.
        let l = determinantal_form(&cfg, 1, &[1, 4]).unwrap();
        let f = Rationals;
        assert_eq!(l.coeffs, vec![f.zero(), f.from_i64(-1), f.one()]);
    }
}

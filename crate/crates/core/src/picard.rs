//! The Picard lattice `Z^{r+1}` of the blow-up `S_r` of the plane in `r`
//! general points, its negative curves and the generators of the Cox ring.
//!
//! Classes are written in the basis `H, E_1, ..., E_r`; the intersection form
//! is `diag(1, -1, ..., -1)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 8;

pub(crate) fn check_r(r: usize, min: usize, max: usize) -> Result<()> {
    if r < min || r > max {
        return Err(Error::PointCountOutOfRange { r, min, max });
    }
    Ok(())
}

/// A divisor class `d_0 H + d_1 E_1 + ... + d_r E_r`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    coeffs: Vec<i64>,
}

impl DivisorClass {
    /// Builds a class from `(d_0, d_1, ..., d_r)`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("a divisor class needs at least the H coefficient".into()));
        }
        check_r(coeffs.len() - 1, 0, MAX_POINTS)?;
        Ok(DivisorClass { coeffs })
    }

    pub fn zero(r: usize) -> Self {
        DivisorClass {
            coeffs: vec![0; r + 1],
        }
    }

    /// The pullback `H` of a line.
    pub fn hyperplane(r: usize) -> Self {
        let mut c = Self::zero(r);
        c.coeffs[0] = 1;
        c
    }

    /// The exceptional class `E_i`, `1 <= i <= r`.
    pub fn exceptional(r: usize, i: usize) -> Self {
        assert!((1..=r).contains(&i), "E_{i} does not exist for r = {r}");
        let mut c = Self::zero(r);
        c.coeffs[i] = 1;
        c
    }

    /// `d H - sum_i m_i E_i` from a degree and point multiplicities.
    pub fn from_degree_and_multiplicities(degree: i64, mults: &[i64]) -> Self {
        let mut coeffs = Vec::with_capacity(mults.len() + 1);
        coeffs.push(degree);
        coeffs.extend(mults.iter().map(|m| -m));
        DivisorClass { coeffs }
    }

    pub fn r(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree of the plane curve: the `H` coefficient.
    pub fn degree(&self) -> i64 {
        self.coeffs[0]
    }

    /// Multiplicity at `p_i`, i.e. `-d_i`.
    pub fn multiplicity(&self, i: usize) -> i64 {
        -self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Intersection number; panics if the classes live on different surfaces.
    pub fn dot(&self, other: &DivisorClass) -> i64 {
        assert_eq!(self.r(), other.r(), "intersection of classes with different r");
        self.coeffs[0] * other.coeffs[0]
            - self.coeffs[1..]
                .iter()
                .zip(&other.coeffs[1..])
                .map(|(a, b)| a * b)
                .sum::<i64>()
    }

    /// Anticanonical degree `(-K_r) . D`.
    pub fn anticanonical_degree(&self) -> i64 {
        self.dot(&anticanonical_unchecked(self.r()))
    }

    fn zip_with(&self, other: &DivisorClass, op: impl Fn(i64, i64) -> i64) -> DivisorClass {
        assert_eq!(self.r(), other.r(), "arithmetic on classes with different r");
        DivisorClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, sym: String| -> fmt::Result {
            if c == 0 {
                return Ok(());
            }
            let sign = if c < 0 { "-" } else if wrote { "+" } else { "" };
            let mag = c.unsigned_abs();
            wrote = true;
            if mag == 1 {
                write!(f, "{sign}{sym}")
            } else {
                write!(f, "{sign}{mag}{sym}")
            }
        };
        term(f, self.coeffs[0], "H".into())?;
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            term(f, c, format!("E{i}"))?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            coeffs: rhs.coeffs.iter().map(|c| self * c).collect(),
        }
    }
}

/// Intersection number of two classes on the same surface.
pub fn intersection(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    if a.r() != b.r() {
        return Err(Error::RankMismatch {
            left: a.r(),
            right: b.r(),
        });
    }
    Ok(a.dot(b))
}

fn anticanonical_unchecked(r: usize) -> DivisorClass {
    let mut coeffs = vec![-1; r + 1];
    coeffs[0] = 3;
    DivisorClass { coeffs }
}

/// The anticanonical class `-K_r = 3H - (E_1 + ... + E_r)`.
pub fn anticanonical(r: usize) -> Result<DivisorClass> {
    check_r(r, 1, MAX_POINTS)?;
    Ok(anticanonical_unchecked(r))
}

/// Which plane curve a negative curve is the strict transform of.
///
/// Point indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CurveKind {
    /// `E_i`
    Exceptional(usize),
    /// `m_{i,j} = H - E_i - E_j`
    Line(usize, usize),
    /// Conic through all points except the listed ones:
    /// `2H - sum E + sum_{missing} E`.
    Conic(Vec<usize>),
    /// Cubic through the points, double at `double`, missing `missing` (r = 8 only).
    Cubic {
        double: usize,
        missing: Option<usize>,
    },
    /// Quartic through all eight points, double at the three given ones.
    Quartic(usize, usize, usize),
    /// Quintic double at six points, simple at the two given ones.
    Quintic(usize, usize),
    /// Sextic triple at the given point, double at the other seven.
    Sextic(usize),
}

impl CurveKind {
    /// The class of this curve on `S_r`.
    pub fn class(&self, r: usize) -> DivisorClass {
        let all = |d: i64, m: i64| {
            let mut c = DivisorClass::zero(r);
            c.coeffs[0] = d;
            for x in &mut c.coeffs[1..] {
                *x = -m;
            }
            c
        };
        match self {
            CurveKind::Exceptional(i) => DivisorClass::exceptional(r, *i),
            CurveKind::Line(i, j) => {
                let mut c = DivisorClass::hyperplane(r);
                c.coeffs[*i] = -1;
                c.coeffs[*j] = -1;
                c
            }
            CurveKind::Conic(missing) => {
                let mut c = all(2, 1);
                for &i in missing {
                    c.coeffs[i] = 0;
                }
                c
            }
            CurveKind::Cubic { double, missing } => {
                let mut c = all(3, 1);
                c.coeffs[*double] = -2;
                if let Some(j) = missing {
                    c.coeffs[*j] = 0;
                }
                c
            }
            CurveKind::Quartic(i, j, k) => {
                let mut c = all(4, 1);
                for &x in &[*i, *j, *k] {
                    c.coeffs[x] = -2;
                }
                c
            }
            CurveKind::Quintic(i, j) => {
                let mut c = all(5, 2);
                c.coeffs[*i] = -1;
                c.coeffs[*j] = -1;
                c
            }
            CurveKind::Sextic(i) => {
                let mut c = all(6, 2);
                c.coeffs[*i] = -3;
                c
            }
        }
    }

    /// Family name in the order used for canonical ids.
    pub fn family(&self) -> &'static str {
        match self {
            CurveKind::Exceptional(_) => "exceptional",
            CurveKind::Line(..) => "line",
            CurveKind::Conic(_) => "conic",
            CurveKind::Cubic { .. } => "cubic",
            CurveKind::Quartic(..) => "quartic",
            CurveKind::Quintic(..) => "quintic",
            CurveKind::Sextic(_) => "sextic",
        }
    }
}

fn join(idx: &[usize]) -> String {
    idx.iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::Exceptional(i) => write!(f, "E_{i}"),
            CurveKind::Line(i, j) => write!(f, "m_{{{i},{j}}}"),
            CurveKind::Conic(m) if m.is_empty() => write!(f, "Q"),
            CurveKind::Conic(m) => write!(f, "Q_{{{}}}", join(m)),
            CurveKind::Cubic {
                double,
                missing: None,
            } => write!(f, "C_{double}"),
            CurveKind::Cubic {
                double,
                missing: Some(j),
            } => write!(f, "C_{{{double},{j}}}"),
            CurveKind::Quartic(i, j, k) => write!(f, "V_{{{i},{j},{k}}}"),
            CurveKind::Quintic(i, j) => write!(f, "F_{{{i},{j}}}"),
            CurveKind::Sextic(i) => write!(f, "T_{i}"),
        }
    }
}

/// A negative curve: a `(-1)`-curve on `S_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NegativeCurve {
    pub kind: CurveKind,
    pub class: DivisorClass,
}

impl NegativeCurve {
    pub fn new(kind: CurveKind, r: usize) -> Self {
        let class = kind.class(r);
        NegativeCurve { kind, class }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
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
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// All negative curves of `S_r` in canonical order: exceptional, lines,
/// conics, cubics, quartics, quintics, sextics, lexicographic within each
/// family.
pub fn enumerate_negative_curves(r: usize) -> Result<Vec<NegativeCurve>> {
    check_r(r, 1, MAX_POINTS)?;
    let mut kinds = Vec::new();
    kinds.extend((1..=r).map(CurveKind::Exceptional));
    kinds.extend(subsets(r, 2).into_iter().map(|s| CurveKind::Line(s[0], s[1])));
    if r >= 5 {
        kinds.extend(subsets(r, r - 5).into_iter().map(CurveKind::Conic));
    }
    if r == 7 {
        kinds.extend((1..=7).map(|i| CurveKind::Cubic {
            double: i,
            missing: None,
        }));
    }
    if r == 8 {
        for i in 1..=8 {
            for j in (1..=8).filter(|&j| j != i) {
                kinds.push(CurveKind::Cubic {
                    double: i,
                    missing: Some(j),
                });
            }
        }
        kinds.extend(subsets(8, 3).into_iter().map(|s| CurveKind::Quartic(s[0], s[1], s[2])));
        kinds.extend(subsets(8, 2).into_iter().map(|s| CurveKind::Quintic(s[0], s[1])));
        kinds.extend((1..=8).map(CurveKind::Sextic));
    }
    Ok(kinds.into_iter().map(|k| NegativeCurve::new(k, r)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorPayload {
    Curve(NegativeCurve),
    /// One of the two independent sections of `-K_8`.
    Kappa(u8),
}

/// A generator of the Cox ring with its dense id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub id: usize,
    pub payload: GeneratorPayload,
    pub class: DivisorClass,
}

impl Generator {
    pub fn is_kappa(&self) -> bool {
        matches!(self.payload, GeneratorPayload::Kappa(_))
    }

    pub fn curve(&self) -> Option<&NegativeCurve> {
        match &self.payload {
            GeneratorPayload::Curve(c) => Some(c),
            GeneratorPayload::Kappa(_) => None,
        }
    }

    /// Display label such as `m_{1,2}` or `K_1`.
    pub fn label(&self) -> String {
        match &self.payload {
            GeneratorPayload::Curve(c) => c.kind.to_string(),
            GeneratorPayload::Kappa(i) => format!("K_{i}"),
        }
    }
}

/// Cox ring generators: the negative curves, then `K_1, K_2` when `r = 8`.
pub fn generators(r: usize) -> Result<Vec<Generator>> {
    let mut gens: Vec<Generator> = enumerate_negative_curves(r)?
        .into_iter()
        .enumerate()
        .map(|(id, c)| Generator {
            id,
            class: c.class.clone(),
            payload: GeneratorPayload::Curve(c),
        })
        .collect();
    if r == 8 {
        for k in 1..=2u8 {
            gens.push(Generator {
                id: gens.len(),
                payload: GeneratorPayload::Kappa(k),
                class: anticanonical_unchecked(8),
            });
        }
    }
    Ok(gens)
}

/// A simple reflection of the Weyl group acting on `Pic(S_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeylReflection {
    /// Swaps `E_i` and `E_{i+1}`.
    Transposition(usize),
    /// `D -> D + (D . root) root` for a root with `root . root = -2`.
    Root(DivisorClass),
}

impl WeylReflection {
    pub fn apply(&self, d: &DivisorClass) -> DivisorClass {
        match self {
            WeylReflection::Transposition(i) => {
                let mut c = d.clone();
                c.coeffs.swap(*i, *i + 1);
                c
            }
            WeylReflection::Root(root) => {
                let k = d.dot(root);
                d + &(k * root)
            }
        }
    }
}

/// The `r` simple reflections generating `W_r`, `3 <= r <= 8`.
pub fn weyl_generators(r: usize) -> Result<Vec<WeylReflection>> {
    check_r(r, 3, MAX_POINTS)?;
    let mut gens: Vec<_> = (1..r).map(WeylReflection::Transposition).collect();
    let mut root = DivisorClass::hyperplane(r);
    for i in 1..=3 {
        root.coeffs[i] = -1;
    }
    gens.push(WeylReflection::Root(root));
    Ok(gens)
}

/// Orbit of `start` under the group generated by `gens`, sorted.
pub fn orbit(start: &DivisorClass, gens: &[WeylReflection]) -> Vec<DivisorClass> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(d) = queue.pop_front() {
        for g in gens {
            let image = g.apply(&d);
            if seen.insert(image.clone()) {
                queue.push_back(image);
            }
        }
    }
    seen.into_iter().collect()
}

pub(crate) fn is_nef_against(d: &DivisorClass, curves: &[NegativeCurve]) -> bool {
    curves.iter().all(|c| d.dot(&c.class) >= 0)
}

/// Whether `D . C >= 0` for every negative curve `C`.
pub fn is_nef(d: &DivisorClass) -> bool {
    let curves = enumerate_negative_curves(d.r()).unwrap_or_default();
    is_nef_against(d, &curves)
}

/// `h^0(S_r, D) = D.(D - K)/2 + 1` for a nef class.
pub fn h0_nef(d: &DivisorClass) -> Result<i64> {
    if !is_nef(d) {
        return Err(Error::NotNef(d.to_string()));
    }
    Ok(riemann_roch(d))
}

pub(crate) fn riemann_roch(d: &DivisorClass) -> i64 {
    let minus_k = anticanonical_unchecked(d.r());
    let twice = d.dot(&(d + &minus_k));
    debug_assert!(twice % 2 == 0);
    twice / 2 + 1
}

//! `(n)`-rulings: classes `D_1 + D_2` of two negative curves with
//! `D_1 . D_2 = n`, together with every degree-2 monomial of that degree.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard::{
    anticanonical, check_r, enumerate_negative_curves, generators, DivisorClass, Generator,
    NegativeCurve,
};

/// Product of two generators, stored with `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Monomial {
    pub a: usize,
    pub b: usize,
}

impl Monomial {
    pub fn new(x: usize, y: usize) -> Self {
        Monomial {
            a: x.min(y),
            b: x.max(y),
        }
    }

    pub fn contains(&self, id: usize) -> bool {
        self.a == id || self.b == id
    }

    /// The other factor when `id` is one of the two.
    pub fn partner(&self, id: usize) -> Option<usize> {
        if self.a == id {
            Some(self.b)
        } else if self.b == id {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn class(&self, gens: &[Generator]) -> DivisorClass {
        &gens[self.a].class + &gens[self.b].class
    }
}

impl From<Monomial> for [usize; 2] {
    fn from(m: Monomial) -> Self {
        [m.a, m.b]
    }
}

impl From<[usize; 2]> for Monomial {
    fn from(p: [usize; 2]) -> Self {
        Monomial::new(p[0], p[1])
    }
}

/// An `(n)`-ruling and all of its representations as degree-2 monomials.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ruling {
    pub class: DivisorClass,
    #[serde(rename = "n")]
    pub order: u8,
    pub representations: Vec<Monomial>,
}

impl Ruling {
    /// Number of independent relations in this degree, `k - (n + 1)`.
    pub fn relation_count(&self) -> usize {
        self.representations.len() - (self.order as usize + 1)
    }
}

pub fn check_ruling_request(r: usize, n: u8) -> Result<()> {
    check_r(r, 3, 8)?;
    let ok = n == 1 || (n == 2 && r >= 7) || (n == 3 && r == 8);
    if ok {
        Ok(())
    } else {
        Err(Error::UnsupportedRuling { r, n })
    }
}

/// Orders of the rulings that contribute relations on `S_r`.
pub fn ruling_orders(r: usize) -> &'static [u8] {
    match r {
        7 => &[1, 2],
        8 => &[1, 2, 3],
        _ => &[1],
    }
}

/// All `(n)`-rulings of `S_r`, lexicographic in the class coefficients.
///
/// Representations are sorted by `(min id, max id)`. For `r = 8` the
/// `kappa` monomials are included: `K_i * xi(D)` in the `(2)`-ruling
/// `-K_8 + D`, and the three quadratic monomials in the `(3)`-ruling `-2K_8`.
pub fn enumerate_rulings(r: usize, n: u8) -> Result<Vec<Ruling>> {
    check_ruling_request(r, n)?;
    let gens = generators(r)?;
    Ok(rulings_with(&gens, r, n))
}

pub(crate) fn rulings_with(gens: &[Generator], r: usize, n: u8) -> Vec<Ruling> {
    let curves: Vec<&Generator> = gens.iter().filter(|g| !g.is_kappa()).collect();
    let mut by_class: BTreeMap<DivisorClass, Vec<Monomial>> = BTreeMap::new();
    for (i, x) in curves.iter().enumerate() {
        for y in &curves[i + 1..] {
            if x.class.dot(&y.class) == n as i64 {
                by_class
                    .entry(&x.class + &y.class)
                    .or_default()
                    .push(Monomial::new(x.id, y.id));
            }
        }
    }
    if r == 8 && n >= 2 {
        let minus_k = anticanonical(8).expect("r = 8 is valid");
        let kappas: Vec<usize> = gens.iter().filter(|g| g.is_kappa()).map(|g| g.id).collect();
        for (class, reps) in by_class.iter_mut() {
            if n == 2 {
                let rest = class - &minus_k;
                let d = curves
                    .iter()
                    .find(|g| g.class == rest)
                    .expect("every (2)-ruling is -K_8 plus a negative curve");
                reps.extend(kappas.iter().map(|&k| Monomial::new(d.id, k)));
            } else {
                reps.push(Monomial::new(kappas[0], kappas[0]));
                reps.push(Monomial::new(kappas[0], kappas[1]));
                reps.push(Monomial::new(kappas[1], kappas[1]));
            }
        }
    }
    by_class
        .into_iter()
        .map(|(class, mut reps)| {
            reps.sort();
            Ruling {
                class,
                order: n,
                representations: reps,
            }
        })
        .collect()
}

/// Every relation-bearing ruling of `S_r` (`4 <= r <= 8`): order 1 first,
/// then 2 and 3 where they exist.
pub fn all_rulings(r: usize) -> Result<Vec<Ruling>> {
    check_r(r, 4, 8)?;
    let gens = generators(r)?;
    Ok(ruling_orders(r)
        .iter()
        .flat_map(|&n| rulings_with(&gens, r, n))
        .collect())
}

/// Shape of a class up to permuting the points: degree and the sorted
/// multiplicities. Each orbit of the symmetric group on the points is one
/// family of rulings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FamilySignature {
    pub degree: i64,
    /// Multiplicities in decreasing order.
    pub multiplicities: Vec<i64>,
}

impl FamilySignature {
    pub fn of(class: &DivisorClass) -> Self {
        let mut multiplicities: Vec<i64> = (1..=class.r()).map(|i| class.multiplicity(i)).collect();
        multiplicities.sort_unstable_by(|a, b| b.cmp(a));
        FamilySignature {
            degree: class.degree(),
            multiplicities,
        }
    }
}

impl fmt::Display for FamilySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}H", self.degree)?;
        let mut i = 0;
        while i < self.multiplicities.len() {
            let m = self.multiplicities[i];
            let run = self.multiplicities[i..].iter().take_while(|&&x| x == m).count();
            write!(f, " {m}^{run}")?;
            i += run;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RulingFamily {
    pub signature: FamilySignature,
    pub label: String,
    /// Indices into the canonical ruling list.
    pub members: Vec<usize>,
}

impl RulingFamily {
    pub fn count(&self) -> usize {
        self.members.len()
    }
}

/// Partition of the `(n)`-rulings into families, sorted by signature.
pub fn ruling_families(r: usize, n: u8) -> Result<Vec<RulingFamily>> {
    let rulings = enumerate_rulings(r, n)?;
    Ok(families_of(&rulings))
}

pub fn families_of(rulings: &[Ruling]) -> Vec<RulingFamily> {
    let mut by_sig: BTreeMap<FamilySignature, Vec<usize>> = BTreeMap::new();
    for (i, ruling) in rulings.iter().enumerate() {
        by_sig.entry(FamilySignature::of(&ruling.class)).or_default().push(i);
    }
    by_sig
        .into_iter()
        .map(|(signature, members)| RulingFamily {
            label: signature.to_string(),
            signature,
            members,
        })
        .collect()
}

/// Graph on the negative curves with an edge for each pair meeting in one point.
#[derive(Clone, Debug)]
pub struct DynkinGraph {
    pub vertices: Vec<NegativeCurve>,
    pub edges: Vec<(usize, usize)>,
    pub adjacency: Vec<Vec<usize>>,
}

impl DynkinGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }
}

pub fn dynkin_graph(r: usize) -> Result<DynkinGraph> {
    check_r(r, 3, 8)?;
    let vertices = enumerate_negative_curves(r)?;
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            if vertices[i].class.dot(&vertices[j].class) == 1 {
                edges.push((i, j));
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    Ok(DynkinGraph {
        vertices,
        edges,
        adjacency,
    })
}

/// Triples of pairwise intersecting lines on the cubic surface (`r = 6`),
/// as sorted vertex indices.
pub fn triangles() -> Vec<[usize; 3]> {
    let g = dynkin_graph(6).expect("r = 6 is valid");
    let mut out = Vec::new();
    for &(u, v) in &g.edges {
        for &w in &g.adjacency[v] {
            if w > v && g.adjacent(u, w) {
                out.push([u, v, w]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::CurveKind;

    #[test]
    fn ruling_counts_by_order() {
        let r71 = enumerate_rulings(7, 1).unwrap();
        assert_eq!(r71.len(), 126);
        assert!(r71.iter().all(|r| r.representations.len() == 6));

        let r72 = enumerate_rulings(7, 2).unwrap();
        assert_eq!(r72.len(), 1);
        assert_eq!(r72[0].class, anticanonical(7).unwrap());
        assert_eq!(r72[0].representations.len(), 28);

        let r82 = enumerate_rulings(8, 2).unwrap();
        assert_eq!(r82.len(), 240);
        assert!(r82.iter().all(|r| r.representations.len() == 30));

        let r83 = enumerate_rulings(8, 3).unwrap();
        assert_eq!(r83.len(), 1);
        assert_eq!(r83[0].representations.len(), 123);
        assert_eq!(r83[0].class, 2 * &anticanonical(8).unwrap());
    }

    #[test]
    fn unsupported_requests() {
        assert!(matches!(
            enumerate_rulings(6, 2),
            Err(Error::UnsupportedRuling { r: 6, n: 2 })
        ));
        assert!(enumerate_rulings(7, 3).is_err());
        assert!(enumerate_rulings(2, 1).is_err());
    }

    #[test]
    fn cubic_surface_rulings_are_complements_of_lines() {
        let k = anticanonical(6).unwrap();
        let curves = enumerate_negative_curves(6).unwrap();
        let rulings = enumerate_rulings(6, 1).unwrap();
        assert_eq!(rulings.len(), 27);
        for r in &rulings {
            assert!(curves.iter().any(|c| &k - &c.class == r.class));
        }
        let fams = ruling_families(6, 1).unwrap();
        let counts: Vec<usize> = fams.iter().map(RulingFamily::count).collect();
        assert_eq!(counts.iter().sum::<usize>(), 27);
        assert_eq!(fams.len(), 3);
    }

    #[test]
    fn h_minus_e_family_for_r8() {
        let gens = generators(8).unwrap();
        let rulings = enumerate_rulings(8, 1).unwrap();
        let fams = families_of(&rulings);
        let fam = fams
            .iter()
            .find(|f| f.signature.degree == 1)
            .expect("H - E_i family");
        assert_eq!(fam.count(), 8);
        for &idx in &fam.members {
            let ruling = &rulings[idx];
            let i = (1..=8).find(|&i| ruling.class.multiplicity(i) == 1).unwrap();
            assert_eq!(ruling.representations.len(), 7);
            for m in &ruling.representations {
                let kinds = [&gens[m.a], &gens[m.b]].map(|g| g.curve().unwrap().kind.clone());
                let j = match kinds[0] {
                    CurveKind::Exceptional(j) => j,
                    _ => panic!("expected E_j first, got {:?}", kinds),
                };
                assert_eq!(kinds[1], CurveKind::Line(i.min(j), i.max(j)));
            }
        }
    }

    #[test]
    fn dynkin_small_cases() {
        let g3 = dynkin_graph(3).unwrap();
        assert_eq!(g3.vertices.len(), 6);
        assert_eq!(g3.edges.len(), 6);
        let g6 = dynkin_graph(6).unwrap();
        assert_eq!(g6.edges.len(), 135);
        assert!((0..27).all(|v| g6.degree(v) == 10));
        assert_eq!(dynkin_graph(7).unwrap().edges.len(), 756);
    }

    #[test]
    fn triangle_structure() {
        let t = triangles();
        assert_eq!(t.len(), 45);
        let k = anticanonical(6).unwrap();
        let curves = enumerate_negative_curves(6).unwrap();
        let mut mixed = 0;
        for tri in &t {
            let sum = tri
                .iter()
                .fold(DivisorClass::zero(6), |acc, &v| &acc + &curves[v].class);
            assert_eq!(sum, k);
            if tri.iter().any(|&v| matches!(curves[v].kind, CurveKind::Exceptional(_))) {
                mixed += 1;
            }
        }
        assert_eq!(mixed, 30);
    }

    #[test]
    fn monomial_serializes_as_pair() {
        let m = Monomial::new(5, 2);
        assert_eq!(serde_json::to_string(&m).unwrap(), "[2,5]");
        assert_eq!(m.partner(2), Some(5));
        assert_eq!(m.partner(3), None);
    }
}

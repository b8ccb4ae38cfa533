use cox_core::field::{Field, PrimeField, Rationals};
use cox_core::linalg::Row;
use cox_core::picard::{
    anticanonical, enumerate_negative_curves, generators, intersection, orbit, weyl_generators, DivisorClass,
};
use cox_core::plane::{generator_forms, monomial_index, monomials, multiply, PlaneForm, PointConfiguration, PositionDefect};
use cox_core::relations::{full_ideal, span_contains_with_forms};
use cox_core::rulings::enumerate_rulings;
use proptest::prelude::*;

fn class_strategy(r: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(-6i64..=6, r + 1).prop_map(|c| DivisorClass::new(c).unwrap())
}

fn form_strategy(degree: u32) -> impl Strategy<Value = PlaneForm<PrimeField>> {
    let n = monomials(degree).len();
    prop::collection::vec(0u64..101, n).prop_map(move |coeffs| PlaneForm { degree, coeffs })
}

/// Product by convolution over exponent triples, independent of the library's loop order.
fn convolve(f: &PrimeField, a: &PlaneForm<PrimeField>, b: &PlaneForm<PrimeField>) -> Row<PrimeField> {
    let mut out = vec![0u64; monomials(a.degree + b.degree).len()];
    for (i, ea) in monomials(a.degree).into_iter().enumerate() {
        for (j, eb) in monomials(b.degree).into_iter().enumerate() {
            let k = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
            out[k] = f.add(&out[k], &f.mul(&a.coeffs[i], &b.coeffs[j]));
        }
    }
    out
}

proptest! {
    #[test]
    fn intersection_is_symmetric_and_bilinear(
        (a, b, c) in (3usize..=8).prop_flat_map(|r| (class_strategy(r), class_strategy(r), class_strategy(r))),
        k in -4i64..=4,
    ) {
        prop_assert_eq!(intersection(&a, &b).unwrap(), intersection(&b, &a).unwrap());
        let lhs = intersection(&(&(k * &a) + &b), &c).unwrap();
        prop_assert_eq!(lhs, k * a.dot(&c) + b.dot(&c));
    }

    #[test]
    fn weyl_reflections_are_isometries_fixing_k(
        (r, a, b) in (3usize..=8).prop_flat_map(|r| (Just(r), class_strategy(r), class_strategy(r))),
    ) {
        let k = anticanonical(r).unwrap();
        for w in weyl_generators(r).unwrap() {
            prop_assert_eq!(w.apply(&a).dot(&w.apply(&b)), a.dot(&b));
            prop_assert_eq!(w.apply(&k), k.clone());
            prop_assert_eq!(w.apply(&w.apply(&a)), a.clone());
        }
    }

    #[test]
    fn multiply_matches_convolution(
        (a, b) in (0u32..=4, 0u32..=4).prop_flat_map(|(d, e)| (form_strategy(d), form_strategy(e))),
    ) {
        let f = PrimeField::new(101).unwrap();
        let prod = multiply(&f, &a, &b);
        prop_assert_eq!(prod.degree, a.degree + b.degree);
        prop_assert_eq!(prod.coeffs, convolve(&f, &a, &b));
    }

    #[test]
    fn rational_forms_reduce_to_prime_field_forms(params in prop::collection::vec(1i64..40, 4)) {
        let q: Vec<_> = params.iter().map(|&x| Rationals.from_i64(x)).collect();
        let cfg = PointConfiguration::from_parameters(Rationals, 6, &q).unwrap();
        let fp = PrimeField::new(32003).unwrap();
        let reduced = cfg.reduce(fp).unwrap();
        prop_assume!(cfg.validate().is_ok() && reduced.validate().is_ok());
        let gens = generators(6).unwrap();
        let over_q = generator_forms(&gens, &cfg).unwrap();
        let over_p = generator_forms(&gens, &reduced).unwrap();
        for (a, b) in over_q.iter().zip(&over_p) {
            let red: Vec<u64> = a.coeffs.iter().map(|c| fp.reduce(c).unwrap()).collect();
            prop_assert_eq!(&red, &b.coeffs);
        }
    }

    #[test]
    fn span_membership_is_basis_independent(weights in prop::collection::vec(0u64..32003, 3), block in 0usize..27) {
        let f = PrimeField::new(32003).unwrap();
        let cfg = PointConfiguration::default_for(f, 6).unwrap();
        let rs = full_ideal(6, &cfg).unwrap();
        let b = &rs.blocks[block];
        let mut combo = vec![0u64; b.ruling.representations.len()];
        for (w, q) in weights.iter().zip(&b.relations) {
            for (x, c) in combo.iter_mut().zip(&q.coeffs) {
                f.add_mul(x, w, c);
            }
        }
        prop_assert!(span_contains_with_forms(&f, &b.ruling, &combo, &rs.forms).unwrap());
        // The reduced basis has a unit at each pivot; the first pivot column
        // of the first relation cannot be hit by the others.
        let pivot = b.relations[0].coeffs.iter().position(|c| *c != 0).unwrap();
        let mut outside = combo.clone();
        outside[pivot] = f.add(&outside[pivot], &1);
        prop_assert!(!span_contains_with_forms(&f, &b.ruling, &outside, &rs.forms).unwrap());
    }
}

#[test]
fn negative_curves_form_one_weyl_orbit() {
    for r in 3..=8 {
        let curves: Vec<DivisorClass> = enumerate_negative_curves(r).unwrap().into_iter().map(|c| c.class).collect();
        let mut sorted = curves.clone();
        sorted.sort();
        let orb = orbit(&DivisorClass::exceptional(r, 1), &weyl_generators(r).unwrap());
        assert_eq!(orb, sorted, "r = {r}");
    }
}

#[test]
fn relations_are_picard_homogeneous_and_kappa_placement() {
    let f = PrimeField::new(101).unwrap();
    let cfg = PointConfiguration::default_for(f, 8).unwrap();
    let rs = full_ideal(8, &cfg).unwrap();
    let is_kappa = |i: usize| rs.generators[i].is_kappa();
    for block in &rs.blocks {
        for q in &block.relations {
            let mut kappa_degree = Vec::new();
            for (m, _) in q.terms(&f) {
                assert_eq!(m.class(&rs.generators), block.ruling.class);
                kappa_degree.push(usize::from(is_kappa(m.a)) + usize::from(is_kappa(m.b)));
            }
            let top = kappa_degree.iter().copied().max().unwrap();
            match block.ruling.order {
                1 => assert_eq!(top, 0),
                2 => assert!(top <= 1),
                _ => {}
            }
        }
        let any_kappa = block.relations.iter().any(|q| q.terms(&f).any(|(m, _)| is_kappa(m.a) || is_kappa(m.b)));
        assert_eq!(any_kappa, block.ruling.order >= 2, "{}", block.ruling.class);
    }
    let quadratic_kappa = rs
        .relations_of_order(3)
        .any(|q| q.terms(&f).any(|(m, _)| is_kappa(m.a) && is_kappa(m.b)));
    assert!(quadratic_kappa);
}

#[test]
fn degenerate_configurations_produce_witnesses() {
    let q = |v: &[i64]| -> PointConfiguration<Rationals> {
        let p: Vec<_> = v.iter().map(|&x| Rationals.from_i64(x)).collect();
        PointConfiguration::from_parameters(Rationals, 4 + v.len() / 2, &p).unwrap()
    };
    // p_5 on the line x_1 = x_2 through p_1 and p_4.
    let w = q(&[3, 3]).validate().unwrap_err();
    assert_eq!((w.defect, w.points.clone()), (PositionDefect::Collinear, vec![1, 4, 5]));
    // Six points on x0 x1 - 2 x0 x2 + x1 x2 = 0.
    let w = q(&[3, -3, 4, -2]).validate().unwrap_err();
    assert_eq!(w.defect, PositionDefect::OnConic);
    // A ruling request outside the supported range.
    assert!(enumerate_rulings(6, 2).is_err());
}

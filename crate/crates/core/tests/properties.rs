//! Randomized law checking over the exact arithmetic types: ring axioms,
//! Galois action, norms, unit decomposition, residue classes, and the text
//! encodings. Counterexamples persist under `proptest-regressions/`.

use proptest::prelude::*;

use gfe1313::curves::CurvePoint;
use gfe1313::residue::class_vector;
use gfe1313::ring::{
    retract_to_cubic, unit_decompose, unit_recompose, CubicNum, CycloNum, GaloisElement, QuadNum,
    Rat, UnitDecomposition,
};

fn cyclo() -> impl Strategy<Value = CycloNum> {
    proptest::array::uniform12(-20i64..=20).prop_map(CycloNum::from_integers)
}

fn cubic() -> impl Strategy<Value = CubicNum> {
    proptest::array::uniform3(-20i64..=20).prop_map(CubicNum::from_integers)
}

fn quad() -> impl Strategy<Value = QuadNum> {
    proptest::array::uniform2(-20i64..=20).prop_map(QuadNum::from_integers)
}

fn galois() -> impl Strategy<Value = GaloisElement> {
    (1u32..=12).prop_map(|c| GaloisElement::new(c).unwrap())
}

/// Units of `Z[zeta]`: a root of unity times a word in the cyclotomic
/// units `(1 - zeta^a)/(1 - zeta)`.
fn cyclo_unit() -> impl Strategy<Value = CycloNum> {
    (0i64..13, proptest::array::uniform5(-2i64..=2)).prop_map(|(k, exps)| {
        let base = CycloNum::one_minus_zeta_pow(1).inverse().unwrap();
        let mut u = CycloNum::zeta_pow(k);
        for (a, &e) in (2..=6).zip(exps.iter()) {
            let g = &CycloNum::one_minus_zeta_pow(a) * &base;
            u = &u * &g.pow(e).unwrap();
        }
        u
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(x in cyclo(), y in cyclo(), z in cyclo()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &y, &x + &(-&y));
        prop_assert_eq!(&x * &CycloNum::one(), x.clone());
        prop_assert_eq!(&x + &CycloNum::zero(), x);
    }

    #[test]
    fn galois_is_a_ring_action(x in cyclo(), y in cyclo(), s in galois(), t in galois()) {
        prop_assert_eq!((&x * &y).galois(s), &x.galois(s) * &y.galois(s));
        prop_assert_eq!((&x + &y).galois(s), &x.galois(s) + &y.galois(s));
        prop_assert_eq!(x.galois(s).galois(t), x.galois(s.compose(t)));
        prop_assert_eq!(x.galois(s).galois(s.inverse()), x);
    }

    #[test]
    fn norms_are_multiplicative(x in cyclo(), y in cyclo()) {
        prop_assert_eq!((&x * &y).full_norm(), x.full_norm() * y.full_norm());
        let nx = x.norm_to_cubic().unwrap();
        let ny = y.norm_to_cubic().unwrap();
        prop_assert_eq!((&x * &y).norm_to_cubic().unwrap(), &nx * &ny);
    }

    #[test]
    fn nonzero_elements_invert(x in cyclo()) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inverse().unwrap(), CycloNum::one());
    }

    #[test]
    fn cyclotomic_units_have_norm_one_and_invert_integrally(u in cyclo_unit()) {
        prop_assert!(u.is_unit());
        prop_assert_eq!(u.full_norm(), Rat::from_integer(1.into()));
        let inv = u.inverse().unwrap();
        prop_assert!(inv.is_integral());
        prop_assert_eq!(&u * &inv, CycloNum::one());
    }

    #[test]
    fn cubic_retraction_inverts_the_embedding(x in cubic(), y in cubic()) {
        prop_assert_eq!(retract_to_cubic(&x.embed()).unwrap(), x.clone());
        prop_assert_eq!((&x * &y).embed(), &x.embed() * &y.embed());
        prop_assert_eq!(x.conjugate().conjugate().conjugate(), x.clone());
        // The product of the three conjugates is the rational norm.
        let n = &(&x * &x.conjugate()) * &x.conjugate().conjugate();
        let c = n.coords();
        let zero = Rat::from_integer(0.into());
        prop_assert_eq!(c[1].clone(), zero.clone());
        prop_assert_eq!(c[2].clone(), zero);
        prop_assert_eq!(c[0].clone(), x.norm());
    }

    #[test]
    fn quadratic_conjugation_is_an_involution(x in quad(), y in quad()) {
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        let n = &x * &x.conjugate();
        prop_assert_eq!(n.coords()[1].clone(), Rat::from_integer(0.into()));
        prop_assert_eq!(n.coords()[0].clone(), x.norm());
    }

    #[test]
    fn unit_decomposition_round_trips(sign in prop::bool::ANY, i in -6i64..=6, j in -6i64..=6) {
        let d = UnitDecomposition {
            sign: if sign { 1 } else { -1 },
            rho_exp: i,
            one_minus_rho_exp: j,
        };
        let u = unit_recompose(&d);
        let back = unit_decompose(&u).unwrap();
        prop_assert_eq!(back.sign, d.sign);
        prop_assert_eq!(back.rho_exp, d.rho_exp);
        prop_assert_eq!(back.one_minus_rho_exp, d.one_minus_rho_exp);
    }

    #[test]
    fn residue_classes_are_additive_on_units(u in cyclo_unit(), v in cyclo_unit()) {
        let cu = class_vector(&u, 5, 5).unwrap();
        let cv = class_vector(&v, 5, 5).unwrap();
        let cuv = class_vector(&(&u * &v), 5, 5).unwrap();
        prop_assert_eq!(cuv.flatten(), cu.add(&cv).flatten());
    }

    #[test]
    fn element_and_point_encodings_round_trip(x in cyclo(), a in cubic(), b in cubic(), k in 1i64..50) {
        let s = Rat::new(1.into(), k.into());
        let x = x.scale(&s);
        prop_assert_eq!(x.to_string().parse::<CycloNum>().unwrap(), x.clone());
        let pt = CurvePoint::Affine(a.scale(&s), b.scale(&s));
        prop_assert_eq!(pt.to_string().parse::<CurvePoint>().unwrap(), pt);
        prop_assert_eq!("INF".parse::<CurvePoint>().unwrap(), CurvePoint::Infinity);
    }
}

use std::sync::{Arc, OnceLock};

use hecke_core::affine_hecke::{AsphElement, HeckeAlgebra, HeckeElement};
use hecke_core::formal_series::{diff, FormalSeries, LinearForm};
use hecke_core::graded_hecke::{GradedAlgebra, GradedAsphElement, GradedElement};
use hecke_core::lattice_algebra::{demazure_quotient, ga_mul, mul_by_scriptg, GroupAlgebraElement, LaurentScalar};
use hecke_core::lusztig::Lusztig;
use hecke_core::root_datum::{CartanType, RootDatum, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn data() -> &'static [Arc<RootDatum>] {
    static DATA: OnceLock<Vec<Arc<RootDatum>>> = OnceLock::new();
    DATA.get_or_init(|| {
        [CartanType::A(1), CartanType::A(2), CartanType::B(2), CartanType::G2]
            .into_iter()
            .map(|ty| Arc::new(RootDatum::from_type(ty).unwrap()))
            .collect()
    })
}

fn weight(d: &RootDatum, raw: &[i64]) -> Weight {
    Weight::new(raw[..d.rank()].to_vec())
}

fn raw_weight() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 2)
}

/// `(c, k, x)` triples for `sum c v^k theta_x`.
fn raw_group() -> impl Strategy<Value = Vec<(i64, i32, Vec<i64>)>> {
    prop::collection::vec((-3i64..=3, -2i32..=2, raw_weight()), 1..=3)
}

fn group(d: &RootDatum, raw: &[(i64, i32, Vec<i64>)]) -> GroupAlgebraElement {
    raw.iter().fold(GroupAlgebraElement::zero(), |acc, (c, k, x)| {
        &acc + &GroupAlgebraElement::term(LaurentScalar::monomial(*c, *k), weight(d, x))
    })
}

/// `(w, coefficient)` pairs for `sum a_w T_w`.
fn raw_hecke() -> impl Strategy<Value = Vec<(usize, i64, i32, Vec<i64>)>> {
    prop::collection::vec((0usize..12, -2i64..=2, -1i32..=1, raw_weight()), 1..=2)
}

fn hecke(d: &RootDatum, raw: &[(usize, i64, i32, Vec<i64>)]) -> HeckeElement {
    raw.iter().fold(HeckeElement::zero(), |acc, (w, c, k, x)| {
        let a = GroupAlgebraElement::term(LaurentScalar::monomial(*c, *k), weight(d, x));
        &acc + &HeckeElement::term(a, w % d.weyl_order())
    })
}

type RawMonomial = (Vec<u32>, i64, i64);
type RawGradedTerm = (usize, Vec<RawMonomial>);

/// `(exponents, p, q)` monomials in three variables; unused slots are dropped.
fn raw_poly() -> impl Strategy<Value = Vec<RawMonomial>> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -8i64..=8, 1i64..=8), 1..=4)
}

fn poly(nvars: usize, order: u32, raw: &[RawMonomial]) -> FormalSeries {
    let terms = raw.iter().map(|(e, p, q)| {
        let mut exps = e[..nvars].to_vec();
        if nvars < 3 {
            exps[nvars - 1] += e[2];
        }
        (exps, BigRational::new(BigInt::from(*p), BigInt::from(*q)))
    });
    FormalSeries::from_terms(nvars, order, terms)
}

fn graded(d: &RootDatum, order: u32, raw: &[RawGradedTerm]) -> GradedElement {
    let nvars = d.rank() + 1;
    raw.iter().fold(GradedElement::zero(nvars, order), |acc, (w, p)| {
        acc.add(&GradedElement::term(poly(nvars, order, p), w % d.weyl_order()))
    })
}

fn raw_graded() -> impl Strategy<Value = Vec<RawGradedTerm>> {
    prop::collection::vec((0usize..12, raw_poly()), 1..=2)
}

fn linear(coeffs: &[i64]) -> LinearForm {
    LinearForm::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_change_length_by_one(k in 0usize..4, i in 0usize..2) {
        let d = &data()[k];
        let i = i % d.rank();
        for w in 0..d.weyl_order() {
            let sw = d.left_mul(i, w);
            prop_assert_eq!(d.length(sw).abs_diff(d.length(w)), 1);
        }
    }

    #[test]
    fn inverse_undoes_action(k in 0usize..4, w in 0usize..12, x in raw_weight()) {
        let d = &data()[k];
        let w = w % d.weyl_order();
        let x = weight(d, &x);
        prop_assert_eq!(d.apply(w, &d.apply(d.inverse(w), &x)), x);
    }

    #[test]
    fn braid_relation_on_weights(k in 1usize..4, x in raw_weight()) {
        let d = &data()[k];
        let x = weight(d, &x);
        let m = d.braid_order(0, 1);
        let alternate = |first: usize, second: usize| {
            (0..m).fold(x.clone(), |acc, n| d.reflect(if n % 2 == 0 { first } else { second }, &acc))
        };
        prop_assert_eq!(alternate(0, 1), alternate(1, 0));
    }

    #[test]
    fn demazure_quotient_multiplies_back(k in 0usize..4, i in 0usize..2, x in raw_weight()) {
        let d = &data()[k];
        let i = i % d.rank();
        let x = weight(d, &x);
        let factor = &GroupAlgebraElement::one(d.rank()) - &GroupAlgebraElement::theta(-d.simple_root(i));
        let lhs = ga_mul(&demazure_quotient(d, &x, i), &factor);
        let rhs = &GroupAlgebraElement::theta(x.clone()) - &GroupAlgebraElement::theta(d.reflect(i, &x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn scriptg_multiplies_back(k in 0usize..4, i in 0usize..2, x in raw_weight()) {
        let d = &data()[k];
        let i = i % d.rank();
        let x = weight(d, &x);
        let rank = d.rank();
        let alpha = GroupAlgebraElement::theta(d.simple_root(i).clone());
        let one = GroupAlgebraElement::one(rank);
        let v2 = GroupAlgebraElement::scalar(LaurentScalar::v_pow(2), rank);
        let lhs = ga_mul(&mul_by_scriptg(d, &x, i), &(&alpha - &one));
        let delta = &GroupAlgebraElement::theta(x.clone()) - &GroupAlgebraElement::theta(d.reflect(i, &x));
        let rhs = ga_mul(&delta, &(&ga_mul(&v2, &alpha) - &one));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_algebra_is_commutative_ring(k in 0usize..4, a in raw_group(), b in raw_group(), c in raw_group()) {
        let d = &data()[k];
        let (a, b, c) = (group(d, &a), group(d, &b), group(d, &c));
        prop_assert_eq!(ga_mul(&a, &b), ga_mul(&b, &a));
        prop_assert_eq!(ga_mul(&ga_mul(&a, &b), &c), ga_mul(&a, &ga_mul(&b, &c)));
    }

    #[test]
    fn commutation_with_t_plus_one(k in 0usize..4, i in 0usize..2, x in raw_weight()) {
        let d = &data()[k];
        let h = HeckeAlgebra::new(d.clone());
        let i = i % d.rank();
        let x = weight(d, &x);
        let tp = &h.t(i) + &h.one();
        let lhs = &h.mul(&tp, &h.theta(x.clone())) - &h.mul(&h.theta(d.reflect(i, &x)), &tp);
        prop_assert_eq!(lhs, h.coefficient(mul_by_scriptg(d, &x, i)));
    }

    #[test]
    fn hecke_module_law(k in 0usize..3, a in raw_hecke(), b in raw_hecke(), m in raw_group()) {
        let d = &data()[k];
        let h = HeckeAlgebra::new(d.clone());
        let (a, b, m) = (hecke(d, &a), hecke(d, &b), AsphElement(group(d, &m)));
        prop_assert_eq!(
            h.asph_act_left(&h.mul(&a, &b), &m),
            h.asph_act_left(&a, &h.asph_act_left(&b, &m))
        );
    }

    #[test]
    fn precision_algebra(a in raw_poly(), b in raw_poly(), oa in 2u32..7, ob in 2u32..7) {
        let f = poly(3, oa, &a);
        let g = poly(3, ob, &b);
        prop_assert_eq!((&f + &g).order(), oa.min(ob));
        prop_assert_eq!((&f * &g).order(), oa.min(ob));
        let d = &data()[1];
        let delta = &f - &f.reflect(d, 0);
        prop_assert_eq!(delta.div_linear(&diff(d.simple_root(0))).unwrap().order(), oa - 1);
        prop_assert_eq!(f.weyl(d, 3).order(), oa);
        prop_assert_eq!(f.negate_r().order(), oa);
        let unit = &FormalSeries::one(3, oa) + &(&f - &FormalSeries::constant(3, oa, f.constant_term()));
        prop_assert_eq!(unit.inv().unwrap().order(), oa);
        let nilpotent = &f - &FormalSeries::constant(3, oa, f.constant_term());
        prop_assert_eq!(nilpotent.exp().unwrap().order(), oa);
    }

    #[test]
    fn weyl_action_is_a_group_action(k in 1usize..4, v in 0usize..12, w in 0usize..12, a in raw_poly()) {
        let d = &data()[k];
        let (v, w) = (v % d.weyl_order(), w % d.weyl_order());
        let f = poly(3, 5, &a);
        prop_assert_eq!(f.weyl(d, w).weyl(d, v), f.weyl(d, d.product(v, w)));
    }

    #[test]
    fn demazure_differences_divide(k in 1usize..4, i in 0usize..2, a in raw_poly()) {
        let d = &data()[k];
        let f = poly(3, 5, &a);
        let delta = &f - &f.reflect(d, i);
        let alpha = diff(d.simple_root(i));
        let quotient = delta.div_linear(&alpha).unwrap();
        prop_assert_eq!(quotient.mul_linear(&alpha).truncate(4), delta.truncate(4));
    }

    #[test]
    fn exp_is_a_homomorphism(x in prop::collection::vec(-3i64..=3, 3), y in prop::collection::vec(-3i64..=3, 3)) {
        let (x, y) = (linear(&x), linear(&y));
        prop_assert_eq!(&x.exp(6) * &y.exp(6), (&x + &y).exp(6));
    }

    #[test]
    fn graded_commutation(k in 1usize..4, i in 0usize..2, a in raw_poly()) {
        let d = &data()[k];
        let g = GradedAlgebra::new(d.clone());
        let phi = poly(3, 5, &a);
        let sphi = phi.reflect(d, i);
        let tp = g.t(i, 5).add(&g.one(5));
        let lhs = g.mul(&tp, &g.series(phi.clone())).unwrap().sub(&g.mul(&g.series(sphi.clone()), &tp).unwrap());
        let rhs = g.series(&(&phi - &sphi) + &g.demazure_term(i, &phi).unwrap());
        prop_assert!(lhs.difference_mod(&rhs, 4).unwrap().is_none());
    }

    #[test]
    fn graded_ring_laws(k in 1usize..3, a in raw_graded(), b in raw_graded(), c in raw_graded(), m in raw_poly()) {
        let d = &data()[k];
        let g = GradedAlgebra::new(d.clone());
        let (a, b, c) = (graded(d, 5, &a), graded(d, 5, &b), graded(d, 5, &c));
        let ab = g.mul(&a, &b).unwrap();
        let lhs = g.mul(&ab, &c).unwrap();
        let rhs = g.mul(&a, &g.mul(&b, &c).unwrap()).unwrap();
        prop_assert!(lhs.difference_mod(&rhs, 5).unwrap().is_none());
        let fourier = g.mul(&g.fourier(&a), &g.fourier(&b)).unwrap();
        prop_assert!(g.fourier(&ab).difference_mod(&fourier, 5).unwrap().is_none());
        let m = GradedAsphElement(poly(3, 5, &m));
        let lhs = g.asph_act(&ab, &m).unwrap();
        let rhs = g.asph_act(&a, &g.asph_act(&b, &m).unwrap()).unwrap();
        prop_assert!(lhs.0.difference_mod(&rhs.0, 5).unwrap().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn involutions_are_multiplicative(k in 0usize..2, a in raw_hecke(), b in raw_hecke()) {
        let d = &data()[k];
        let h = HeckeAlgebra::new(d.clone());
        let (a, b) = (hecke(d, &a), hecke(d, &b));
        let ab = h.mul(&a, &b);
        prop_assert_eq!(h.koszul(&ab), h.mul(&h.koszul(&a), &h.koszul(&b)));
        prop_assert_eq!(h.duality(&ab), h.mul(&h.duality(&a), &h.duality(&b)));
        prop_assert_eq!(h.duality(&h.duality(&a)), a.clone());
        prop_assert_eq!(h.parity(&h.parity(&a)), a);
    }

    #[test]
    fn routes_agree_on_random_elements(k in 0usize..2, a in raw_hecke()) {
        let d = &data()[k];
        let l = Lusztig::new(d.clone(), 4, 2);
        let a = hecke(d, &a);
        let lhs = l.pipeline_k(&a).unwrap();
        let rhs = l.pipeline_h(&a).unwrap();
        prop_assert!(lhs.difference_mod(&rhs, 4).unwrap().is_none());
    }

    #[test]
    fn lusztig_maps_are_multiplicative(k in 0usize..2, a in raw_hecke(), b in raw_hecke()) {
        let d = &data()[k];
        let l = Lusztig::new(d.clone(), 4, 2);
        let (a, b) = (hecke(d, &a), hecke(d, &b));
        let ab = l.hecke().mul(&a, &b);
        let g = l.graded();
        let product = g.mul(&l.lusztig_r(&a).unwrap(), &l.lusztig_r(&b).unwrap()).unwrap();
        prop_assert!(l.lusztig_r(&ab).unwrap().difference_mod(&product, 4).unwrap().is_none());
        let product = g.mul(&l.lusztig_l(&a).unwrap(), &l.lusztig_l(&b).unwrap()).unwrap();
        prop_assert!(l.lusztig_l(&ab).unwrap().difference_mod(&product, 4).unwrap().is_none());
    }
}

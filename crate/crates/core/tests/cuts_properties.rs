mod common;

use std::cmp::Ordering;

use common::*;
use num_rational::BigRational;
use ordcut::cuts::{Cut, CutKind, CutSide, CutType};
use ordcut::lexgroups::{FactorwiseInjection, LexGroup};
use ordcut::oracle::Sampler;
use ordcut::scalars::RankOneKind::{self, *};
use ordcut::scalars::Scalar;
use proptest::prelude::*;

const FAMILIES: &[&[RankOneKind]] = &[
    &[IntegersZ],
    &[RationalsQ],
    &[IntegersZ, IntegersZ],
    &[IntegersZ, RationalsQ],
    &[IntegersZ, IntegersZ, RationalsQ],
    &[QuadQ(2), IntegersZ],
    &[QuadZ(2), RationalsQ],
    &[RationalsQ, QuadQ(3), IntegersZ],
];

fn family() -> impl Strategy<Value = LexGroup> {
    (0..FAMILIES.len()).prop_map(|i| lex(FAMILIES[i]))
}

fn to_side(s: CutSide) -> Side {
    match s {
        CutSide::MinusSide => Side::Minus,
        CutSide::PlusSide => Side::Plus,
    }
}

/// Elements on and next to the anchor of the cut, plus random ones.
fn probes(cut: &Cut, sampler: &mut Sampler, count: usize) -> Vec<Vec<Scalar>> {
    let g = cut.group();
    let mut out: Vec<Vec<Scalar>> = (0..count).map(|_| sampler.element(g).coords().to_vec()).collect();
    let (theta, _) = cut.bound();
    let mut base = theta.clone();
    base.resize(g.rank(), Scalar::zero());
    if g.element(base.clone()).is_ok() {
        for i in 1..=g.rank() {
            let e = g.unit(i);
            out.push(add(&base, e.coords()));
            out.push(sub(&base, e.coords()));
        }
        out.push(base);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_matches_descriptor(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let cut = s.cut_or_trivial(&group);
        for x in probes(&cut, &mut s, 20) {
            let e = group.element(x.clone()).unwrap();
            prop_assert_eq!(to_side(cut.member(&e).unwrap()), side(&cut, &x), "{} {}", cut, e);
        }
    }

    #[test]
    fn bound_is_canonical(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let cut = s.cut_or_trivial(&group);
        let (theta, inclusive) = cut.bound();
        prop_assert_eq!(Cut::from_bound(&group, theta, inclusive).unwrap(), cut);
    }

    #[test]
    fn translation_moves_membership(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let cut = s.cut_or_trivial(&group);
        let g = s.element(&group);
        let moved = match cut.translate(&g) {
            Ok(c) => c,
            Err(ordcut::Error::MixedRadicals(..)) => {
                // only a gap anchor from another quadratic field can clash
                let CutKind::Gap { level, delta, .. } = cut.kind() else {
                    return Err(TestCaseError::fail("mixed radicals without a gap"));
                };
                let gk = g.coord(*level);
                prop_assert!(!gk.is_rational() && delta.radicand() != gk.radicand());
                return Ok(());
            }
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert_eq!(moved.invariance().level(), cut.invariance().level());
        prop_assert_eq!(moved.classify(), cut.classify());
        for x in probes(&cut, &mut s, 10) {
            prop_assert_eq!(side(&moved, &add(&x, g.coords())), side(&cut, &x));
        }
    }

    #[test]
    fn negation_swaps_sides(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let cut = s.cut_or_trivial(&group);
        let neg = cut.negate();
        prop_assert_eq!(neg.negate(), cut.clone());
        for x in probes(&cut, &mut s, 10) {
            let minus_x: Vec<Scalar> = x.iter().map(|c| -c).collect();
            prop_assert_ne!(side(&neg, &minus_x), side(&cut, &x));
        }
    }

    #[test]
    fn order_is_inclusion_of_lower_parts(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let a = s.cut_or_trivial(&group);
        let b = s.cut_or_trivial(&group);
        let o = a.compare(&b).unwrap();
        prop_assert_eq!(b.compare(&a).unwrap(), o.reverse());
        prop_assert_eq!(o == Ordering::Equal, a == b);
        let (lo, hi) = if o == Ordering::Greater { (&b, &a) } else { (&a, &b) };
        let mut xs = probes(lo, &mut s, 15);
        xs.extend(probes(hi, &mut s, 15));
        for x in xs {
            if side(lo, &x) == Side::Minus {
                prop_assert_eq!(side(hi, &x), Side::Minus, "{} <= {} at {:?}", lo, hi, x);
            }
        }
    }

    #[test]
    fn invariance_survives_the_falsifier(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let cut = s.cut(&group);
        let k = cut.invariance().level();
        for _ in 0..5 {
            if let Some(g) = s.element_outside_subgroup(&group, k) {
                prop_assert!(falsify(&cut, &g, &mut s, 8).is_some(), "{} g = {}", cut, g);
            }
            if let Some(g) = s.element_of_subgroup(&group, k) {
                prop_assert!(falsify(&cut, &g, &mut s, 8).is_none(), "{} g = {}", cut, g);
            }
        }
    }

    #[test]
    fn archimedean_classes_follow_iota(group in family(), seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let x = s.nonzero_element(&group);
        let y = s.nonzero_element(&group);
        prop_assert_eq!(x.iota(), iota(x.coords()));
        let bounded = |a: &[Scalar], b: &[Scalar]| {
            // some multiple n·|b| with n <= 10^4 dominates |a|
            let (a, b) = (x_abs(a), x_abs(b));
            [1i64, 10, 100, 1000, 10_000].iter().any(|&n| {
                let nb: Vec<Scalar> = b.iter().map(|c| c.scale(&BigRational::from_integer(n.into()))).collect();
                cmp_coords(&a, &nb) != Ordering::Greater
            })
        };
        let equivalent = bounded(x.coords(), y.coords()) && bounded(y.coords(), x.coords());
        prop_assert_eq!(equivalent, x.iota() == y.iota());
        prop_assert_eq!(x.principal_pair().unwrap() == y.principal_pair().unwrap(), equivalent);
    }

    #[test]
    fn transport_agrees_with_membership(seed in any::<u64>()) {
        let mut s = Sampler::new(seed, 6);
        let group = lex(&[IntegersZ, RationalsQ, QuadQ(2), IntegersZ]);
        let cut = s.cut(&group);
        let k = cut.level().unwrap();
        for m2 in 0..k {
            for m1 in k..=group.rank() {
                let t = cut.transport(&group.convex_subgroup(m1).unwrap(), &group.convex_subgroup(m2).unwrap()).unwrap();
                prop_assert_eq!(t.classify(), cut.classify());
                prop_assert_eq!(t.group().rank(), m1 - m2);
                let (theta, _) = cut.bound();
                for _ in 0..6 {
                    let x = s.element(&group);
                    let mut lifted = theta[..m2].to_vec();
                    lifted.extend_from_slice(&x.coords()[m2..]);
                    prop_assert_eq!(side(&t, &x.coords()[m2..m1]), side(&cut, &lifted));
                }
            }
        }
    }

    #[test]
    fn pushes_are_adjoint_to_pull(seed in any::<u64>(), which in 0usize..4) {
        let mut s = Sampler::new(seed, 6);
        let half = BigRational::new(1.into(), 2.into());
        let three = BigRational::from_integer(3.into());
        let one = BigRational::from_integer(1.into());
        let m = match which {
            0 => FactorwiseInjection::widen(lex(&[IntegersZ, RationalsQ]), lex(&[RationalsQ, RationalsQ])),
            1 => FactorwiseInjection::widen(lex(&[IntegersZ, IntegersZ]), lex(&[RationalsQ, RationalsQ])),
            2 => FactorwiseInjection::new(lex(&[IntegersZ, IntegersZ]), lex(&[RationalsQ, IntegersZ]), vec![half, three]),
            _ => FactorwiseInjection::new(lex(&[QuadZ(2), IntegersZ]), lex(&[QuadQ(2), RationalsQ]), vec![one.clone(), one]),
        }.unwrap();
        let c = s.cut_or_trivial(m.dom());
        let d = s.cut_or_trivial(m.cod());
        let lower = c.push_lower(&m).unwrap();
        let upper = c.push_upper(&m).unwrap();
        let back = d.pull(&m).unwrap();
        prop_assert_eq!(lower.compare(&d).unwrap() != Ordering::Greater, c.compare(&back).unwrap() != Ordering::Greater);
        prop_assert_eq!(back.compare(&c).unwrap() != Ordering::Greater, d.compare(&upper).unwrap() != Ordering::Greater);
        prop_assert_eq!(lower.pull(&m).unwrap(), c.clone());
        prop_assert_eq!(upper.pull(&m).unwrap(), c.clone());
        for _ in 0..8 {
            let x = s.element(m.dom());
            let y = m.apply(&x).unwrap();
            prop_assert_eq!(side(&back, x.coords()), side(&d, y.coords()));
        }
    }
}

fn x_abs(a: &[Scalar]) -> Vec<Scalar> {
    match iota(a) {
        Some(i) if cmp_scalar(&a[i - 1], &Scalar::zero()) == Ordering::Less => a.iter().map(|c| -c).collect(),
        _ => a.to_vec(),
    }
}

#[test]
fn rank_one_types() {
    let mut s = Sampler::new(0, 6);
    let z = lex(&[IntegersZ]);
    for _ in 0..100 {
        assert_eq!(s.cut(&z).classify(), CutType::RelativeJump);
    }
    let q = lex(&[RationalsQ]);
    let mut seen = std::collections::BTreeSet::new();
    for _ in 0..100 {
        let c = s.cut(&q);
        seen.insert(c.classify().to_string());
        if let CutKind::Gap { .. } = c.kind() {
            assert_eq!(c.classify(), CutType::Gapped);
        }
    }
    let expected: std::collections::BTreeSet<String> = ["relatively_principal_below", "relatively_principal_above", "gapped"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(seen, expected);
}

#[test]
fn strict_inclusion_example() {
    let dom = lex(&[IntegersZ, RationalsQ]);
    let cod = lex(&[RationalsQ, RationalsQ]);
    let m = FactorwiseInjection::widen(dom, cod.clone()).unwrap();
    let sigma = Cut::below(&cod, vec![Scalar::from_ratio(1, 2), Scalar::zero()], 2).unwrap();
    let eps = m.epsilon_upper(&sigma.invariance()).unwrap();
    let back = sigma.pull(&m).unwrap().invariance();
    assert_eq!((eps.level(), back.level()), (2, 1));
    assert!(eps.is_subset(&back) && eps != back);
}

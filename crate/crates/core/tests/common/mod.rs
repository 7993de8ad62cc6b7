//! Oracles shared by the integration tests and the acceptance suite. They
//! recompute answers from first principles: exact signs of `a + b√d + c√e`,
//! membership read off cut descriptors, and brute-force segment images on
//! finite chains.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use ordcut::cuts::{Cut, CutKind, PrincipalSide};
use ordcut::hahnomega::{OmegaAnchor, OmegaCut, OmegaElement};
use ordcut::lexgroups::{GroupElement, LexGroup};
use ordcut::oracle::Sampler;
use ordcut::ordsets::{MonotoneMap, Segment};
use ordcut::scalars::Scalar;

fn sgn(r: &BigRational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn perfect_square_root(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|s| s * s == n)
}

/// Sign of `r + s√n`.
pub fn sign_sqrt(r: &BigRational, s: &BigRational, n: u64) -> i8 {
    if s.is_zero() || n == 0 {
        return sgn(r);
    }
    if let Some(q) = perfect_square_root(n) {
        return sgn(&(r + s * rat(q)));
    }
    let (sr, ss) = (sgn(r), sgn(s));
    if sr == 0 || sr == ss {
        return ss;
    }
    // opposite signs: the larger square wins
    match (r * r).cmp(&(s * s * rat(n))) {
        Ordering::Greater => sr,
        Ordering::Less => ss,
        Ordering::Equal => 0,
    }
}

/// Sign of `a + b√d + c√e`.
pub fn sign_two(a: &BigRational, b: &BigRational, d: u64, c: &BigRational, e: u64) -> i8 {
    if d == e {
        return sign_sqrt(a, &(b + c), d);
    }
    // sign of u = b√d + c√e
    let su = sign_sqrt(&BigRational::zero(), b, d);
    let sv = sign_sqrt(&BigRational::zero(), c, e);
    let u_sign = if su == 0 || su == sv {
        if su == 0 {
            sv
        } else {
            su
        }
    } else if sv == 0 {
        su
    } else {
        match (b * b * rat(d)).cmp(&(c * c * rat(e))) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => 0,
        }
    };
    let sa = sgn(a);
    if u_sign == 0 {
        return sa;
    }
    if sa == 0 || sa == u_sign {
        return u_sign;
    }
    // a and u have opposite signs: compare a² with u² = b²d + c²e + 2bc√(de)
    let r = a * a - b * b * rat(d) - c * c * rat(e);
    let s = -(b * c * BigRational::from_integer(2.into()));
    match sign_sqrt(&r, &s, d * e) {
        1 => sa,
        -1 => u_sign,
        _ => 0,
    }
}

pub fn cmp_scalar(x: &Scalar, y: &Scalar) -> Ordering {
    let a = x.rational_part() - y.rational_part();
    let s = if x.radicand() == y.radicand() || y.radical_coeff().is_zero() || x.radical_coeff().is_zero() {
        let d = if x.radical_coeff().is_zero() { y.radicand() } else { x.radicand() };
        let b = x.radical_coeff() - y.radical_coeff();
        sign_sqrt(&a, &b, d)
    } else {
        sign_two(&a, x.radical_coeff(), x.radicand(), &-y.radical_coeff(), y.radicand())
    };
    s.cmp(&0)
}

pub fn cmp_coords(x: &[Scalar], y: &[Scalar]) -> Ordering {
    assert_eq!(x.len(), y.len());
    for (a, b) in x.iter().zip(y) {
        match cmp_scalar(a, b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

pub fn iota(x: &[Scalar]) -> Option<usize> {
    x.iter().position(|c| cmp_scalar(c, &Scalar::zero()) != Ordering::Equal).map(|i| i + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

fn minus_if(b: bool) -> Side {
    if b {
        Side::Minus
    } else {
        Side::Plus
    }
}

/// Membership read directly off the descriptor.
pub fn side(cut: &Cut, x: &[Scalar]) -> Side {
    match cut.kind() {
        CutKind::AllBelow => Side::Minus,
        CutKind::AllAbove => Side::Plus,
        CutKind::Principal { side, anchor, level } => {
            let o = cmp_coords(&x[..*level], &anchor.coords()[..*level]);
            match side {
                PrincipalSide::Below => minus_if(o != Ordering::Greater),
                PrincipalSide::Above => minus_if(o == Ordering::Less),
            }
        }
        CutKind::Gap { prefix, level, delta } => match cmp_coords(&x[..level - 1], prefix) {
            Ordering::Less => Side::Minus,
            Ordering::Greater => Side::Plus,
            Ordering::Equal => minus_if(cmp_scalar(&x[level - 1], delta) == Ordering::Less),
        },
    }
}

pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a.checked_add(b).expect("same field")).collect()
}

pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a.checked_sub(b).expect("same field")).collect()
}

fn times(h: &Scalar, m: &BigInt) -> Scalar {
    h.scale(&BigRational::from_integer(m.clone()))
}

/// Largest integer `m` with `m·h ≤ x`, for `h > 0`.
pub fn floor_div(x: &Scalar, h: &Scalar) -> BigInt {
    let guess = (x.approx() / h.approx()).floor().to_i64().unwrap_or(0);
    let mut m = BigInt::from(guess);
    while cmp_scalar(&times(h, &m), x) == Ordering::Greater {
        m -= 1;
    }
    while cmp_scalar(&times(h, &(&m + 1)), x) != Ordering::Greater {
        m += 1;
    }
    m
}

fn separates(cut: &Cut, y: &[Scalar], g: &[Scalar]) -> bool {
    side(cut, y) != side(cut, &add(y, g))
}

/// Falsifier: looks for `y` with `y` and `y + g` on opposite sides, using only
/// arithmetic and [`side`].
pub fn falsify(cut: &Cut, g: &GroupElement, sampler: &mut Sampler, extra: usize) -> Option<Vec<Scalar>> {
    let group = cut.group();
    let n = group.rank();
    let g = g.coords();
    let mut bases: Vec<Vec<Scalar>> = vec![];
    let push = |mut coords: Vec<Scalar>, bases: &mut Vec<Vec<Scalar>>| {
        coords.resize(n, Scalar::zero());
        if group.element(coords.clone()).is_ok() {
            bases.push(coords);
        }
    };
    match cut.kind() {
        CutKind::Principal { anchor, .. } => push(anchor.coords().to_vec(), &mut bases),
        CutKind::Gap { prefix, level, delta } => {
            let k = *level;
            let mut lasts = vec![];
            for den in 1..=sampler.bound().max(1) {
                let h = Scalar::from_ratio(1, den);
                let m = floor_div(delta, &h);
                lasts.push(times(&h, &m));
                lasts.push(times(&h, &(m + 1)));
            }
            let gk = &g[k - 1];
            if !gk.is_zero() {
                let h = if gk.sign() < 0 { -gk } else { gk.clone() };
                let m = floor_div(delta, &h);
                lasts.push(times(&h, &m));
                lasts.push(times(&h, &(m + 1)));
            }
            for l in lasts {
                let mut coords = prefix.clone();
                coords.push(l);
                push(coords, &mut bases);
            }
        }
        _ => {}
    }
    for _ in 0..extra {
        bases.push(sampler.element(group).coords().to_vec());
    }
    for base in bases {
        for y in [base.clone(), sub(&base, g)] {
            if separates(cut, &y, g) {
                return Some(y);
            }
        }
    }
    None
}

/// Membership in `S ⊆ dom` for a segment.
pub fn segment_set(s: &Segment) -> Vec<bool> {
    (0..s.chain.size).map(|i| i < s.cutoff).collect()
}

fn segments_of(size: usize) -> Vec<Vec<bool>> {
    (0..=size).map(|c| (0..size).map(|i| i < c).collect()).collect()
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x || *y)
}

fn cutoff(set: &[bool]) -> usize {
    set.iter().filter(|b| **b).count()
}

/// Preimage of a codomain segment, elementwise.
pub fn brute_pullback(u: &MonotoneMap, t: &Segment) -> usize {
    let tt = segment_set(t);
    cutoff(&(0..u.dom().size).map(|j| tt[u.apply(j)]).collect::<Vec<_>>())
}

/// Smallest codomain segment containing `u(S)`.
pub fn brute_lower(u: &MonotoneMap, s: &Segment) -> usize {
    let ss = segment_set(s);
    segments_of(u.cod().size)
        .into_iter()
        .filter(|t| (0..u.dom().size).all(|j| !ss[j] || t[u.apply(j)]))
        .map(|t| cutoff(&t))
        .min()
        .expect("the full chain qualifies")
}

/// Largest codomain segment whose preimage lies in `S`.
pub fn brute_upper(u: &MonotoneMap, s: &Segment) -> usize {
    let ss = segment_set(s);
    segments_of(u.cod().size)
        .into_iter()
        .filter(|t| (0..u.dom().size).all(|j| !t[u.apply(j)] || ss[j]))
        .map(|t| cutoff(&t))
        .max()
        .expect("the empty segment qualifies")
}

/// `|u(S) ∩ u(dom ∖ S)|`.
pub fn brute_overlap(u: &MonotoneMap, s: &Segment) -> usize {
    let ss = segment_set(s);
    (0..u.cod().size)
        .filter(|&v| {
            let hit = |inside: bool| (0..u.dom().size).any(|j| ss[j] == inside && u.apply(j) == v);
            hit(true) && hit(false)
        })
        .count()
}

pub fn segment_subset(a: &Segment, b: &Segment) -> bool {
    subset(&segment_set(a), &segment_set(b))
}

/// Anchor coordinate `j` computed from the anchor data.
pub fn omega_anchor_coord(cut: &OmegaCut, j: usize) -> Scalar {
    match cut.anchor() {
        OmegaAnchor::Point(x) => x.support().iter().find(|(i, _)| *i == j).map_or(Scalar::zero(), |(_, v)| v.clone()),
        OmegaAnchor::GapAt { prefix, index, delta } => {
            if j < *index {
                prefix.support().iter().find(|(i, _)| *i == j).map_or(Scalar::zero(), |(_, v)| v.clone())
            } else if j == *index {
                delta.clone()
            } else {
                Scalar::zero()
            }
        }
        OmegaAnchor::Periodic { preperiod, period } => {
            if j < preperiod.len() {
                preperiod[j].clone()
            } else {
                period[(j - preperiod.len()) % period.len()].clone()
            }
        }
    }
}

fn dense(x: &OmegaElement, len: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); len];
    for (i, c) in x.support() {
        if *i < len {
            v[*i] = c.clone();
        }
    }
    v
}

/// Membership in an ω-cut by scanning coordinates. Past the support of `x` and
/// of any point anchor, a periodic anchor has a nonzero entry within one
/// period and a gap anchor differs at its index.
pub fn omega_side(cut: &OmegaCut, x: &OmegaElement) -> Side {
    let support_end = x.max_index().map_or(0, |m| m + 1);
    let len = match cut.anchor() {
        OmegaAnchor::Point(p) => support_end.max(p.max_index().map_or(0, |m| m + 1)),
        OmegaAnchor::GapAt { index, .. } => support_end.max(index + 1),
        OmegaAnchor::Periodic { preperiod, period } => support_end.max(preperiod.len()) + period.len(),
    };
    let xs = dense(x, len);
    for (j, xj) in xs.iter().enumerate() {
        match cmp_scalar(xj, &omega_anchor_coord(cut, j)) {
            Ordering::Less => return Side::Minus,
            Ordering::Greater => return Side::Plus,
            Ordering::Equal => {}
        }
    }
    Side::Minus
}

pub fn omega_separates(cut: &OmegaCut, y: &OmegaElement, g: &OmegaElement) -> bool {
    omega_side(cut, y) != omega_side(cut, &y.checked_add(g).expect("same group"))
}

/// ω-falsifier: tries truncations of the anchor at every length up to
/// `max_len`, each also shifted by `-g`.
pub fn omega_falsify(cut: &OmegaCut, g: &OmegaElement, max_len: usize) -> Option<OmegaElement> {
    let group = cut.group();
    let mut bases = vec![];
    for n in 0..=max_len {
        let entries: Vec<(usize, Scalar)> = (0..n).map(|j| (j, omega_anchor_coord(cut, j))).collect();
        if let Ok(t) = group.element(entries) {
            bases.push(t);
        }
    }
    if let OmegaAnchor::GapAt { prefix, index, delta } = cut.anchor() {
        let mut lasts = vec![];
        for den in 1..=6 {
            let h = Scalar::from_ratio(1, den);
            let m = floor_div(delta, &h);
            lasts.push(times(&h, &m));
            lasts.push(times(&h, &(m + 1)));
        }
        let gi = g.support().iter().find(|(i, _)| i == index).map(|(_, v)| v.clone());
        if let Some(gi) = gi {
            let h = if gi.sign() < 0 { -&gi } else { gi };
            let m = floor_div(delta, &h);
            lasts.push(times(&h, &m));
            lasts.push(times(&h, &(m + 1)));
        }
        for l in lasts {
            let mut entries = prefix.support().to_vec();
            entries.push((*index, l));
            if let Ok(t) = group.element(entries) {
                bases.push(t);
            }
        }
    }
    for t in bases {
        for y in [t.clone(), t.checked_sub(g).expect("same group")] {
            if omega_separates(cut, &y, g) {
                return Some(y);
            }
        }
    }
    None
}

pub fn lex(factors: &[ordcut::scalars::RankOneKind]) -> LexGroup {
    LexGroup::new(factors.to_vec()).unwrap()
}

pub fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Random well-formed commands covering every verb.
pub fn generate_commands(seed: u64, count: usize) -> Vec<ordcut::cli::Command> {
    use ordcut::cli::{Arg, Command, Flags, Verb};
    use ordcut::dsl::{GroupExpr, MorphismSpec};
    use ordcut::hahnomega::OmegaGroup;
    use ordcut::scalars::RankOneKind::*;
    use rand::Rng;

    let groups: Vec<LexGroup> = [
        vec![IntegersZ],
        vec![RationalsQ],
        vec![IntegersZ, IntegersZ],
        vec![IntegersZ, RationalsQ],
        vec![IntegersZ, IntegersZ, RationalsQ],
        vec![QuadZ(2), RationalsQ],
        vec![RationalsQ, QuadQ(3), IntegersZ],
    ]
    .into_iter()
    .map(|f| LexGroup::new(f).unwrap())
    .collect();
    let omega_verbs = [Verb::Classify, Verb::Invariance, Verb::Member, Verb::Translate, Verb::Embed, Verb::Skeleton, Verb::Hull];
    let mut s = Sampler::new(seed, 6);
    let mut out = vec![];
    while out.len() < count {
        let verb = Verb::ALL[s.rng().gen_range(0..Verb::ALL.len())];
        let flags = Flags {
            json: s.rng().gen_bool(0.3),
            seed: s.rng().gen_range(0..4),
            box_bound: s.rng().gen_range(3..=8),
        };
        if omega_verbs.contains(&verb) && s.rng().gen_ratio(1, 4) {
            let g = OmegaGroup::new(if s.rng().gen_bool(0.5) { IntegersZ } else { RationalsQ }).unwrap();
            let anchor = if s.rng().gen_bool(0.5) {
                OmegaCut::point(s.omega_element(g, 3))
            } else {
                let period = vec![Scalar::from_int(s.rng().gen_range(1..4)), s.scalar(g.factor())];
                OmegaCut::periodic(g, vec![s.scalar(g.factor())], period).unwrap()
            };
            let args = match verb {
                Verb::Classify => vec![Arg::Anchor(anchor)],
                Verb::Invariance => vec![Arg::Anchor(anchor), Arg::OmegaElement(s.omega_element(g, 3))],
                Verb::Member | Verb::Translate => vec![Arg::Anchor(anchor), Arg::OmegaElement(s.omega_element(g, 3))],
                Verb::Embed => vec![Arg::OmegaElement(s.omega_element(g, 3))],
                _ => vec![],
            };
            out.push(Command { verb, group: GroupExpr::Omega(g), args, flags });
            continue;
        }
        let g = groups[s.rng().gen_range(0..groups.len())].clone();
        let n = g.rank();
        let mut cut = || s.cut_or_trivial(&g);
        let c = cut();
        let args = match verb {
            Verb::Classify => vec![Arg::Cut(c)],
            Verb::Invariance => vec![Arg::Cut(c), Arg::Element(s.element(&g))],
            Verb::Member | Verb::Translate | Verb::Bounds => vec![Arg::Cut(c), Arg::Element(s.element(&g))],
            Verb::Compare => vec![Arg::Cut(c), Arg::Cut(s.cut_or_trivial(&g))],
            Verb::Project => vec![Arg::Cut(c), Arg::Level(s.rng().gen_range(0..=n))],
            Verb::Trace => vec![Arg::Cut(c), Arg::Level(s.rng().gen_range(0..=n))],
            Verb::Transport => vec![
                Arg::Cut(c),
                Arg::Level(s.rng().gen_range(0..=n)),
                Arg::Level(s.rng().gen_range(0..=n)),
            ],
            Verb::Push | Verb::Pull => {
                let m = if s.rng().gen_bool(0.5) {
                    MorphismSpec::Widen
                } else {
                    MorphismSpec::Scale(
                        (0..n)
                            .map(|_| num_rational::BigRational::new(s.rng().gen_range(1..5).into(), s.rng().gen_range(1..4).into()))
                            .collect(),
                    )
                };
                let cut = if verb == Verb::Push {
                    c
                } else {
                    s.cut_or_trivial(m.resolve(&g).unwrap().cod())
                };
                vec![Arg::Morphism(m), Arg::Cut(cut)]
            }
            Verb::Embed => vec![Arg::Element(s.element(&g))],
            _ => vec![],
        };
        out.push(Command { verb, group: GroupExpr::Lex(g), args, flags });
    }
    out
}

//! Seeded random sampling and brute-force falsifiers.
//!
//! The falsifiers decide nothing symbolically: they only evaluate membership
//! and group arithmetic on candidate elements, so they can be used to check
//! the closed forms of the `cuts` module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cuts::{Cut, CutSide};
use crate::error::Result;
use crate::hahnomega::{OmegaElement, OmegaGroup};
use crate::lexgroups::{GroupElement, LexGroup};
use crate::scalars::{contains, RankOneKind, Scalar};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_BOX: i64 = 6;

/// Deterministic sampler of scalars, elements and cut descriptors with
/// integer coordinates in `[-bound, bound]` and rational numerators and
/// denominators bounded by `bound`.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64, bound: i64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound: bound.max(1),
        }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.bound..=self.bound)
    }

    pub fn nonzero_int(&mut self) -> i64 {
        loop {
            let n = self.int();
            if n != 0 {
                return n;
            }
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let den = self.rng.gen_range(1..=self.bound);
        BigRational::new(BigInt::from(self.int()), BigInt::from(den))
    }

    fn int_q(&mut self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.int()))
    }

    pub fn scalar(&mut self, kind: RankOneKind) -> Scalar {
        match kind {
            RankOneKind::IntegersZ => Scalar::rational(self.int_q()),
            RankOneKind::RationalsQ => Scalar::rational(self.rational()),
            RankOneKind::QuadZ(d) => Scalar::new(self.int_q(), self.int_q(), d),
            RankOneKind::QuadQ(d) => Scalar::new(self.rational(), self.rational(), d),
        }
    }

    /// A real number outside the factor `kind`.
    pub fn outside(&mut self, kind: RankOneKind) -> Scalar {
        loop {
            let s = match kind {
                RankOneKind::IntegersZ => Scalar::rational(self.rational()),
                RankOneKind::QuadZ(d) => {
                    let half = BigRational::new(1.into(), 2.into());
                    let a = self.int_q() + &half;
                    let b = if self.rng.gen_bool(0.5) {
                        self.int_q()
                    } else {
                        self.int_q() + half
                    };
                    Scalar::new(a, b, d)
                }
                RankOneKind::RationalsQ | RankOneKind::QuadQ(_) => {
                    let e = **[2u64, 3, 5, 7]
                        .iter()
                        .filter(|&&e| Some(e) != kind.radicand())
                        .collect::<Vec<_>>()
                        .choose(&mut self.rng)
                        .expect("nonempty");
                    let den = self.rng.gen_range(1..=self.bound);
                    let r = BigRational::new(BigInt::from(self.nonzero_int()), BigInt::from(den));
                    Scalar::new(self.rational(), r, e)
                }
            };
            if !contains(kind, &s) {
                return s;
            }
        }
    }

    /// An element whose coordinates are zero with probability one quarter.
    pub fn element(&mut self, group: &LexGroup) -> GroupElement {
        let coords = group
            .factors()
            .iter()
            .map(|&f| {
                if self.rng.gen_ratio(1, 4) {
                    Scalar::zero()
                } else {
                    self.scalar(f)
                }
            })
            .collect();
        group.element(coords).expect("sampled coordinates lie in their factors")
    }

    pub fn nonzero_element(&mut self, group: &LexGroup) -> GroupElement {
        assert!(group.rank() > 0, "the trivial group has no nonzero element");
        loop {
            let x = self.element(group);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn positive_element(&mut self, group: &LexGroup) -> GroupElement {
        self.nonzero_element(group).abs()
    }

    /// A nonzero element of `C_level`.
    pub fn element_of_subgroup(&mut self, group: &LexGroup, level: usize) -> Option<GroupElement> {
        if level >= group.rank() {
            return None;
        }
        loop {
            let x = self.element(group);
            let mut coords = x.coords().to_vec();
            for c in coords.iter_mut().take(level) {
                *c = Scalar::zero();
            }
            let y = group.element(coords).expect("zeroing keeps membership");
            if !y.is_zero() {
                return Some(y);
            }
        }
    }

    /// A nonzero element outside `C_level`, for `level >= 1`.
    pub fn element_outside_subgroup(&mut self, group: &LexGroup, level: usize) -> Option<GroupElement> {
        if level == 0 {
            return None;
        }
        loop {
            let x = self.nonzero_element(group);
            if x.iota().map_or(false, |i| i <= level) {
                return Some(x);
            }
        }
    }

    /// A nontrivial cut descriptor; gaps are drawn only at dense levels.
    pub fn cut(&mut self, group: &LexGroup) -> Cut {
        assert!(group.rank() > 0, "the trivial group has only trivial cuts");
        let level = self.rng.gen_range(1..=group.rank());
        let factor = group.factor(level);
        let anchor: Vec<Scalar> = (1..=level).map(|i| self.scalar(group.factor(i))).collect();
        let choice = if factor == RankOneKind::IntegersZ {
            self.rng.gen_range(0..2)
        } else {
            self.rng.gen_range(0..3)
        };
        match choice {
            0 => Cut::below(group, anchor, level),
            1 => Cut::above(group, anchor, level),
            _ => {
                let prefix = anchor[..level - 1].to_vec();
                let delta = self.outside(factor);
                Cut::gap(group, prefix, level, delta)
            }
        }
        .expect("sampled descriptors are valid")
    }

    /// A cut, trivial with probability one tenth.
    pub fn cut_or_trivial(&mut self, group: &LexGroup) -> Cut {
        if group.rank() == 0 || self.rng.gen_ratio(1, 10) {
            if self.rng.gen_bool(0.5) {
                Cut::all_below(group)
            } else {
                Cut::all_above(group)
            }
        } else {
            self.cut(group)
        }
    }

    /// An element with support in `0..=max_index` and coefficients in the box.
    pub fn omega_element(&mut self, group: OmegaGroup, max_index: usize) -> OmegaElement {
        let mut entries = Vec::new();
        for i in 0..=max_index {
            if self.rng.gen_ratio(1, 2) {
                entries.push((i, self.scalar(group.factor())));
            }
        }
        group.element(entries).expect("sampled coefficients lie in the factor")
    }
}

/// Whether `y` and `y + g` fall on opposite sides of the cut.
pub fn separates(cut: &Cut, y: &GroupElement, g: &GroupElement) -> Result<bool> {
    let moved = y.checked_add(g)?;
    Ok(cut.member(y)? != cut.member(&moved)?)
}

/// Largest integer `m` with `m * h <= x`, for `h > 0`.
fn floor_quotient(x: &Scalar, h: &Scalar) -> BigInt {
    let guess = (x.approx() / h.approx()).floor();
    let mut m = BigInt::from(guess.to_i64().unwrap_or(0));
    let times = |m: &BigInt| h.scale(&BigRational::from_integer(m.clone()));
    while &times(&m) > x {
        m -= 1;
    }
    while &times(&(&m + 1)) <= x {
        m += 1;
    }
    m
}

/// Searches for `y` with `y` and `y + g` on opposite sides of the cut.
///
/// Candidates are the anchor of the cut padded with zeros, points next to a
/// gap anchor (rational grid approximations and multiples of `|g_k|`), `extra`
/// random elements, and all of these shifted by `-g`.
pub fn find_witness(
    cut: &Cut,
    g: &GroupElement,
    sampler: &mut Sampler,
    extra: usize,
) -> Result<Option<GroupElement>> {
    let group = cut.group().clone();
    let n = group.rank();
    let (theta, _) = cut.bound();
    let mut bases: Vec<GroupElement> = Vec::new();
    let pad = |mut coords: Vec<Scalar>| -> Option<GroupElement> {
        coords.resize(n, Scalar::zero());
        group.element(coords).ok()
    };
    if let Some(level) = cut.level() {
        let prefix = theta[..level - 1].to_vec();
        let last = theta[level - 1].clone();
        let mut lasts = vec![last.clone()];
        let factor = group.factor(level);
        if !contains(factor, &last) {
            for den in 1..=sampler.bound() {
                let d = BigRational::from_integer(BigInt::from(den));
                let scaled = last.scale(&d);
                for num in [scaled.floor(), scaled.ceil()] {
                    lasts.push(Scalar::rational(BigRational::new(num, BigInt::from(den))));
                }
            }
            let gk = g.coord(level).clone();
            if !gk.is_zero() {
                let h = if gk.sign() < 0 { -&gk } else { gk };
                let m = floor_quotient(&last, &h);
                for t in [m.clone(), m + 1] {
                    lasts.push(h.scale(&BigRational::from_integer(t)));
                }
            }
        }
        for l in lasts {
            let mut coords = prefix.clone();
            coords.push(l);
            bases.extend(pad(coords));
        }
    }
    for _ in 0..extra {
        bases.push(sampler.element(&group));
    }
    for base in bases {
        for y in [base.clone(), base.checked_sub(g)?] {
            if separates(cut, &y, g)? {
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

/// Outcome of comparing a claimed invariance level with the falsifier.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvarianceCheck {
    /// Samples `g ∉ C_k` for which no witness was found.
    pub outside_survivors: Vec<GroupElement>,
    /// Samples `g ∈ C_k` for which a witness was found.
    pub inside_witnesses: Vec<(GroupElement, GroupElement)>,
    /// Largest `ι(g)` over the sampled `g` with a witness; the falsifier's
    /// estimate of the invariance level.
    pub oracle_level: usize,
}

impl InvarianceCheck {
    pub fn agrees(&self) -> bool {
        self.outside_survivors.is_empty() && self.inside_witnesses.is_empty()
    }
}

/// Samples `samples` elements inside and outside `C_level` and runs the
/// falsifier on each.
pub fn check_invariance(
    cut: &Cut,
    level: usize,
    sampler: &mut Sampler,
    samples: usize,
    extra: usize,
) -> Result<InvarianceCheck> {
    let group = cut.group().clone();
    let mut out = InvarianceCheck::default();
    for _ in 0..samples {
        if let Some(g) = sampler.element_outside_subgroup(&group, level) {
            match find_witness(cut, &g, sampler, extra)? {
                Some(_) => out.oracle_level = out.oracle_level.max(g.iota().unwrap_or(0)),
                None => out.outside_survivors.push(g),
            }
        }
        if let Some(g) = sampler.element_of_subgroup(&group, level) {
            if let Some(y) = find_witness(cut, &g, sampler, extra)? {
                out.oracle_level = out.oracle_level.max(g.iota().unwrap_or(0));
                out.inside_witnesses.push((g, y));
            }
        }
    }
    Ok(out)
}

/// Sampled check of `σ + C_level ⊆ Λ_-`, using elements of `C_level` and large
/// multiples of them.
pub fn coset_inside(cut: &Cut, sigma: &GroupElement, level: usize, sampler: &mut Sampler, samples: usize) -> Result<bool> {
    let group = cut.group().clone();
    if level >= group.rank() {
        return Ok(cut.member(sigma)? == CutSide::MinusSide);
    }
    let big = sampler.bound().pow(3);
    for t in 0..samples {
        let mut g = sampler.element_of_subgroup(&group, level).expect("level below rank");
        if t % 2 == 0 {
            g = g.times(big);
        }
        for y in [sigma.checked_add(&g)?, sigma.checked_sub(&g)?] {
            if cut.member(&y)? == CutSide::PlusSide {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

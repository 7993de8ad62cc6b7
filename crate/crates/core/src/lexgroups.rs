//! Finite lexicographic products of rank-one groups.
//!
//! Factors are indexed `1..=n` from the most significant. The convex subgroup
//! of level `k` is `C_k = {x : x_1 = .. = x_k = 0}`; these `n + 1` subgroups are
//! all the convex subgroups, and `C_0..C_{n-1}` are the principal ones. The
//! skeleton index `i` corresponds to the principal subgroup `C_{i-1}`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::ordsets::FiniteChain;
use crate::scalars::{contains, divisible_hull_kind, scales_into, RankOneKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexGroup {
    factors: Vec<RankOneKind>,
}

impl LexGroup {
    pub fn new(factors: Vec<RankOneKind>) -> Result<LexGroup> {
        for f in &factors {
            f.validate()?;
        }
        Ok(LexGroup { factors })
    }

    pub fn trivial() -> LexGroup {
        LexGroup { factors: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[RankOneKind] {
        &self.factors
    }

    /// Factor at 1-based position `i`.
    pub fn factor(&self, i: usize) -> RankOneKind {
        self.factors[i - 1]
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::Arity {
                expected: self.rank(),
                found: coords.len(),
            });
        }
        for (i, (c, f)) in coords.iter().zip(&self.factors).enumerate() {
            if !contains(*f, c) {
                return Err(Error::NotInFactor {
                    index: i + 1,
                    value: c.to_string(),
                    factor: f.to_string(),
                });
            }
        }
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![Scalar::zero(); self.rank()],
        }
    }

    /// `e_i`: coordinate `i` (1-based) equal to one, the rest zero.
    pub fn unit(&self, i: usize) -> GroupElement {
        let mut x = self.zero();
        x.coords[i - 1] = Scalar::one();
        x
    }

    pub fn convex_subgroup(&self, level: usize) -> Result<ConvexSubgroup> {
        if level > self.rank() {
            return Err(Error::LevelOutOfRange {
                level,
                rank: self.rank(),
            });
        }
        Ok(ConvexSubgroup {
            group: self.clone(),
            level,
        })
    }

    /// `C_0 ⊋ C_1 ⊋ .. ⊋ C_n`.
    pub fn convex_subgroups(&self) -> Vec<ConvexSubgroup> {
        (0..=self.rank())
            .map(|level| ConvexSubgroup {
                group: self.clone(),
                level,
            })
            .collect()
    }

    pub fn principal_convex_subgroups(&self) -> Vec<ConvexSubgroup> {
        self.convex_subgroups()
            .into_iter()
            .filter(ConvexSubgroup::is_principal)
            .collect()
    }

    /// `Γ / C_k` with its projection.
    pub fn quotient(&self, c: &ConvexSubgroup) -> Result<(LexGroup, LexMorphism)> {
        self.check_subgroup(c)?;
        let q = LexGroup {
            factors: self.factors[..c.level].to_vec(),
        };
        Ok((
            q,
            LexMorphism::QuotientProjection {
                dom: self.clone(),
                level: c.level,
            },
        ))
    }

    /// `C_{k1} / C_{k2}`, the lex product of factors `k1+1..=k2`.
    pub fn slice(&self, k1: usize, k2: usize) -> Result<LexGroup> {
        if k1 > k2 || k2 > self.rank() {
            return Err(Error::Precondition(format!(
                "slice {k1}..{k2} of a rank {} group",
                self.rank()
            )));
        }
        Ok(LexGroup {
            factors: self.factors[k1..k2].to_vec(),
        })
    }

    /// The subgroup `C_k`, presented as a group, with its inclusion into `Γ`.
    pub fn subgroup(&self, c: &ConvexSubgroup) -> Result<(LexGroup, LexMorphism)> {
        self.check_subgroup(c)?;
        let sub = self.slice(c.level, self.rank())?;
        Ok((
            sub,
            LexMorphism::SubgroupInclusion {
                cod: self.clone(),
                level: c.level,
            },
        ))
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton {
            index: FiniteChain::new(self.rank()),
            factors: self.factors.clone(),
        }
    }

    pub fn divisible_hull(&self) -> (LexGroup, FactorwiseInjection) {
        let hull = LexGroup {
            factors: self.factors.iter().map(|&f| divisible_hull_kind(f)).collect(),
        };
        let m = FactorwiseInjection {
            dom: self.clone(),
            cod: hull.clone(),
            scales: vec![BigRational::one(); self.rank()],
        };
        (hull, m)
    }

    pub fn discreteness(&self) -> Discreteness {
        let all_z = self.factors.iter().all(|&f| f == RankOneKind::IntegersZ);
        let last_z = self.factors.last() == Some(&RankOneKind::IntegersZ);
        Discreteness {
            is_discrete: last_z,
            is_discretely_ordered: all_z,
            min_positive: last_z.then(|| self.unit(self.rank())),
        }
    }

    /// Whether `C_{level-1} / C_level` is discrete, i.e. factor `level` is `Z`.
    pub fn is_discrete_at(&self, level: usize) -> bool {
        level >= 1 && self.factor(level) == RankOneKind::IntegersZ
    }

    fn check_subgroup(&self, c: &ConvexSubgroup) -> Result<()> {
        if &c.group != self {
            return Err(Error::GroupMismatch(self.to_string(), c.group.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for LexGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lex(")?;
        for (i, k) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: LexGroup,
    coords: Vec<Scalar>,
}

impl GroupElement {
    pub fn group(&self) -> &LexGroup {
        &self.group
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar {
        &self.coords[i - 1]
    }

    pub fn prefix(&self, k: usize) -> &[Scalar] {
        &self.coords[..k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Archimedean class: the 1-based index of the first nonzero coordinate.
    pub fn iota(&self) -> Option<usize> {
        self.coords.iter().position(|c| !c.is_zero()).map(|i| i + 1)
    }

    /// The leading nonzero coordinate.
    pub fn initial_part(&self) -> Option<&Scalar> {
        self.iota().map(|i| self.coord(i))
    }

    pub fn sign(&self) -> i8 {
        self.initial_part().map_or(0, Scalar::sign)
    }

    pub fn abs(&self) -> GroupElement {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// A copy with every coordinate after position `k` set to zero.
    pub fn truncate(&self, k: usize) -> GroupElement {
        let mut x = self.clone();
        for c in x.coords.iter_mut().skip(k) {
            *c = Scalar::zero();
        }
        x
    }

    pub fn checked_add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.same_group(other)?;
        Ok(GroupElement {
            group: self.group.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.checked_add(&-other)
    }

    /// `n * self` for an integer `n`.
    pub fn times(&self, n: i64) -> GroupElement {
        let r = BigRational::from_integer(n.into());
        GroupElement {
            group: self.group.clone(),
            coords: self.coords.iter().map(|c| c.scale(&r)).collect(),
        }
    }

    pub fn lex_compare(&self, other: &GroupElement) -> Result<Ordering> {
        self.same_group(other)?;
        Ok(compare_coords(&self.coords, &other.coords))
    }

    /// `(Δ⁺_x, Δ⁻_x) = (C_{i-1}, C_i)` for `i = iota(x)`.
    pub fn principal_pair(&self) -> Result<(ConvexSubgroup, ConvexSubgroup)> {
        let i = self.iota().ok_or(Error::ZeroElement)?;
        Ok((
            ConvexSubgroup {
                group: self.group.clone(),
                level: i - 1,
            },
            ConvexSubgroup {
                group: self.group.clone(),
                level: i,
            },
        ))
    }

    /// Image in the real lex product `R^n`: the coordinates themselves, read as
    /// real numbers.
    pub fn hahn_embed(&self) -> Vec<Scalar> {
        self.coords.clone()
    }

    fn same_group(&self, other: &GroupElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        Ok(())
    }
}

/// Lexicographic comparison of coordinate sequences of equal length.
pub fn compare_coords(x: &[Scalar], y: &[Scalar]) -> Ordering {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.cmp(b))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

pub fn lex_compare(x: &GroupElement, y: &GroupElement) -> Result<Ordering> {
    x.lex_compare(y)
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_scalars(f, &self.coords)
    }
}

pub(crate) fn write_scalars(f: &mut fmt::Formatter<'_>, xs: &[Scalar]) -> fmt::Result {
    write!(f, "[")?;
    for (i, c) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, "]")
}

/// Panics on a group mismatch.
impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.checked_add(rhs).expect("adding elements of different groups")
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.checked_sub(rhs).expect("subtracting elements of different groups")
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// The convex subgroup `C_level`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConvexSubgroup {
    group: LexGroup,
    level: usize,
}

impl ConvexSubgroup {
    pub fn group(&self) -> &LexGroup {
        &self.group
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.group == self.group && x.coords[..self.level].iter().all(Scalar::is_zero)
    }

    /// `C_k ⊆ C_j` iff `k >= j`.
    pub fn is_subset(&self, other: &ConvexSubgroup) -> bool {
        self.level >= other.level
    }

    pub fn is_principal(&self) -> bool {
        self.level < self.group.rank()
    }

    /// The next smaller convex subgroup.
    pub fn immediate_predecessor(&self) -> Option<ConvexSubgroup> {
        (self.level < self.group.rank()).then(|| ConvexSubgroup {
            group: self.group.clone(),
            level: self.level + 1,
        })
    }

    /// The next larger convex subgroup.
    pub fn immediate_successor(&self) -> Option<ConvexSubgroup> {
        (self.level > 0).then(|| ConvexSubgroup {
            group: self.group.clone(),
            level: self.level - 1,
        })
    }
}

impl fmt::Display for ConvexSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C {}", self.level)
    }
}

/// Skeleton of a lex product: the index chain `1..=n` and the rank-one
/// quotients `C_{i-1} / C_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    pub index: FiniteChain,
    pub factors: Vec<RankOneKind>,
}

impl Skeleton {
    pub fn rank_one_quotient(&self, i: usize) -> LexGroup {
        LexGroup {
            factors: vec![self.factors[i - 1]],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discreteness {
    pub is_discrete: bool,
    pub is_discretely_ordered: bool,
    pub min_positive: Option<GroupElement>,
}

/// Injective morphism acting on coordinate `i` as multiplication by a positive
/// rational `scales[i]`, between lex products of equal rank. With all scales
/// equal to one this is a kind widening such as `Z -> Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorwiseInjection {
    dom: LexGroup,
    cod: LexGroup,
    scales: Vec<BigRational>,
}

impl FactorwiseInjection {
    pub fn new(dom: LexGroup, cod: LexGroup, scales: Vec<BigRational>) -> Result<Self> {
        if dom.rank() != cod.rank() || scales.len() != dom.rank() {
            return Err(Error::InvalidMorphism(format!(
                "{dom} -> {cod} with {} scales",
                scales.len()
            )));
        }
        for (i, r) in scales.iter().enumerate() {
            if !scales_into(dom.factors[i], cod.factors[i], r) {
                return Err(Error::InvalidMorphism(format!(
                    "multiplication by {r} does not map {} into {}",
                    dom.factors[i], cod.factors[i]
                )));
            }
        }
        Ok(FactorwiseInjection { dom, cod, scales })
    }

    pub fn widen(dom: LexGroup, cod: LexGroup) -> Result<Self> {
        let n = dom.rank();
        FactorwiseInjection::new(dom, cod, vec![BigRational::one(); n])
    }

    pub fn dom(&self) -> &LexGroup {
        &self.dom
    }

    pub fn cod(&self) -> &LexGroup {
        &self.cod
    }

    pub fn scales(&self) -> &[BigRational] {
        &self.scales
    }

    /// Scale at 1-based position `i`.
    pub fn scale(&self, i: usize) -> &BigRational {
        &self.scales[i - 1]
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group != self.dom {
            return Err(Error::GroupMismatch(self.dom.to_string(), x.group.to_string()));
        }
        Ok(GroupElement {
            group: self.cod.clone(),
            coords: self.map_coords(&x.coords),
        })
    }

    /// Applies the scales to a coordinate prefix.
    pub fn map_coords(&self, xs: &[Scalar]) -> Vec<Scalar> {
        xs.iter().zip(&self.scales).map(|(c, r)| c.scale(r)).collect()
    }

    /// Divides a coordinate prefix of the codomain by the scales; the result is
    /// a sequence of reals that need not lie in the domain's factors.
    pub fn unmap_coords(&self, ys: &[Scalar]) -> Vec<Scalar> {
        ys.iter()
            .zip(&self.scales)
            .map(|(c, r)| c.scale(&r.recip()))
            .collect()
    }

    /// `ε_φ(C_k)`: the convex subgroup of the codomain generated by `φ(C_k)`.
    pub fn epsilon_lower(&self, c: &ConvexSubgroup) -> Result<ConvexSubgroup> {
        if c.group != self.dom {
            return Err(Error::GroupMismatch(self.dom.to_string(), c.group.to_string()));
        }
        self.cod.convex_subgroup(c.level)
    }

    /// `ε^φ(C'_k) = C'_k ∩ Γ`.
    pub fn epsilon_upper(&self, c: &ConvexSubgroup) -> Result<ConvexSubgroup> {
        if c.group != self.cod {
            return Err(Error::GroupMismatch(self.cod.to_string(), c.group.to_string()));
        }
        self.dom.convex_subgroup(c.level)
    }

    /// Whether `ε^φ ∘ ε_φ` and `ε_φ ∘ ε^φ` are both identities.
    pub fn is_convex_dense(&self) -> bool {
        let there_and_back = self.dom.convex_subgroups().iter().all(|c| {
            self.epsilon_lower(c)
                .and_then(|d| self.epsilon_upper(&d))
                .map_or(false, |e| &e == c)
        });
        let back_and_there = self.cod.convex_subgroups().iter().all(|c| {
            self.epsilon_upper(c)
                .and_then(|d| self.epsilon_lower(&d))
                .map_or(false, |e| &e == c)
        });
        there_and_back && back_and_there
    }
}

/// The morphism shapes used by the cut calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LexMorphism {
    /// `Γ -> Γ / C_level`, keeping the first `level` coordinates.
    QuotientProjection { dom: LexGroup, level: usize },
    /// `C_level -> Γ`, padding with `level` leading zeros.
    SubgroupInclusion { cod: LexGroup, level: usize },
    Factorwise(FactorwiseInjection),
}

impl LexMorphism {
    pub fn dom(&self) -> LexGroup {
        match self {
            LexMorphism::QuotientProjection { dom, .. } => dom.clone(),
            LexMorphism::SubgroupInclusion { cod, level } => {
                LexGroup {
                    factors: cod.factors[*level..].to_vec(),
                }
            }
            LexMorphism::Factorwise(m) => m.dom.clone(),
        }
    }

    pub fn cod(&self) -> LexGroup {
        match self {
            LexMorphism::QuotientProjection { dom, level } => LexGroup {
                factors: dom.factors[..*level].to_vec(),
            },
            LexMorphism::SubgroupInclusion { cod, .. } => cod.clone(),
            LexMorphism::Factorwise(m) => m.cod.clone(),
        }
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        let dom = self.dom();
        if x.group != dom {
            return Err(Error::GroupMismatch(dom.to_string(), x.group.to_string()));
        }
        match self {
            LexMorphism::QuotientProjection { level, .. } => Ok(GroupElement {
                group: self.cod(),
                coords: x.coords[..*level].to_vec(),
            }),
            LexMorphism::SubgroupInclusion { cod, level } => {
                let mut coords = vec![Scalar::zero(); *level];
                coords.extend(x.coords.iter().cloned());
                Ok(GroupElement {
                    group: cod.clone(),
                    coords,
                })
            }
            LexMorphism::Factorwise(m) => m.apply(x),
        }
    }

    pub fn is_injective(&self) -> bool {
        match self {
            LexMorphism::QuotientProjection { dom, level } => *level == dom.rank(),
            _ => true,
        }
    }
}

/// Whether every scale is positive; used by callers that build scales from
/// user input before validation.
pub fn scales_are_positive(scales: &[BigRational]) -> bool {
    scales.iter().all(Signed::is_positive)
}

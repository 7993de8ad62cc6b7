//! Cut descriptors over finite-rank lex products.
//!
//! Every nontrivial cut of a finite lex product is one of
//!
//! * `below(ζ; C k)`: `Λ_- = {x : x[..k] <= ζ[..k]}`,
//! * `above(ζ; C k)`: `Λ_- = {x : x[..k] < ζ[..k]}`,
//! * `gap(p; k; δ)`: `Λ_- = {x : (x[..k-1], x_k) < (p, δ)}` with `δ` a real
//!   number outside a dense factor `k`.
//!
//! Descriptors are kept canonical so that equality of descriptors is equality
//! of cuts: anchors are zeroed beyond the level, and `above` over a `Z` factor
//! is stored as `below` at the predecessor coset.

mod bounds;
mod morphisms;
mod transport;

pub use bounds::IntervalBounds;

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::lexgroups::{compare_coords, write_scalars, ConvexSubgroup, GroupElement, LexGroup};
use crate::scalars::{contains, RankOneKind, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrincipalSide {
    Below,
    Above,
}

/// Side of a cut an element falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutSide {
    MinusSide,
    PlusSide,
}

impl fmt::Display for CutSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutSide::MinusSide => "minus",
            CutSide::PlusSide => "plus",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutType {
    Trivial,
    RelativelyPrincipalBelow,
    RelativelyPrincipalAbove,
    RelativeJump,
    Gapped,
    Tightened,
}

impl fmt::Display for CutType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CutType::Trivial => "trivial",
            CutType::RelativelyPrincipalBelow => "relatively_principal_below",
            CutType::RelativelyPrincipalAbove => "relatively_principal_above",
            CutType::RelativeJump => "relative_jump",
            CutType::Gapped => "gapped",
            CutType::Tightened => "tightened",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CutKind {
    /// `Λ_- = Γ`.
    AllBelow,
    /// `Λ_- = ∅`.
    AllAbove,
    Principal {
        side: PrincipalSide,
        anchor: GroupElement,
        level: usize,
    },
    Gap {
        prefix: Vec<Scalar>,
        level: usize,
        delta: Scalar,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    group: LexGroup,
    kind: CutKind,
}

impl Cut {
    pub fn all_below(group: &LexGroup) -> Cut {
        Cut {
            group: group.clone(),
            kind: CutKind::AllBelow,
        }
    }

    pub fn all_above(group: &LexGroup) -> Cut {
        Cut {
            group: group.clone(),
            kind: CutKind::AllAbove,
        }
    }

    /// `Λ^{≤ζ+C_k}`. `coords` is either the full anchor or its first `k`
    /// coordinates.
    pub fn below(group: &LexGroup, coords: Vec<Scalar>, level: usize) -> Result<Cut> {
        let anchor = principal_anchor(group, coords, level)?;
        Ok(Cut::principal(group, PrincipalSide::Below, anchor, level))
    }

    /// `Λ^{≥ζ+C_k}`, stored as `below(ζ - e_k)` when factor `k` is `Z`.
    pub fn above(group: &LexGroup, coords: Vec<Scalar>, level: usize) -> Result<Cut> {
        let anchor = principal_anchor(group, coords, level)?;
        Ok(Cut::principal(group, PrincipalSide::Above, anchor, level))
    }

    /// A strict gap constructor: factor `level` must be dense and `delta` must
    /// lie outside it. Inputs that describe a principal cut are rejected.
    pub fn gap(group: &LexGroup, prefix: Vec<Scalar>, level: usize, delta: Scalar) -> Result<Cut> {
        check_level(group, level)?;
        if prefix.len() != level - 1 {
            return Err(Error::Arity {
                expected: level - 1,
                found: prefix.len(),
            });
        }
        check_prefix(group, &prefix)?;
        let factor = group.factor(level);
        if factor == RankOneKind::IntegersZ {
            let mut theta = prefix.clone();
            theta.push(delta);
            let normal = Cut::from_bound(group, theta, false)?;
            return Err(Error::InvalidCut(format!(
                "factor {level} is discrete, so this gap normalizes to the principal cut {normal}; use below/above"
            )));
        }
        if contains(factor, &delta) {
            return Err(Error::InvalidCut(format!(
                "gap anchor {delta} lies in factor {level} ({factor}); this is a principal cut, use above"
            )));
        }
        Ok(Cut {
            group: group.clone(),
            kind: CutKind::Gap {
                prefix,
                level,
                delta,
            },
        })
    }

    /// The cut with `Λ_- = {x : x[..m] <= θ}` (`inclusive`) or
    /// `{x : x[..m] < θ}`, for a sequence `θ` of `m <= n` real numbers that need
    /// not lie in the factors. The result is brought to canonical form.
    pub fn from_bound(group: &LexGroup, theta: Vec<Scalar>, inclusive: bool) -> Result<Cut> {
        if theta.len() > group.rank() {
            return Err(Error::Arity {
                expected: group.rank(),
                found: theta.len(),
            });
        }
        let outside = theta
            .iter()
            .enumerate()
            .position(|(i, t)| !contains(group.factor(i + 1), t));
        match outside {
            Some(j) => {
                let level = j + 1;
                let mut prefix = theta[..j].to_vec();
                let t = theta[j].clone();
                if group.factor(level) == RankOneKind::IntegersZ {
                    prefix.push(Scalar::rational(BigRational::from_integer(t.floor())));
                    let anchor = principal_anchor(group, prefix, level)?;
                    Ok(Cut::principal(group, PrincipalSide::Below, anchor, level))
                } else {
                    Ok(Cut {
                        group: group.clone(),
                        kind: CutKind::Gap {
                            prefix,
                            level,
                            delta: t,
                        },
                    })
                }
            }
            None if theta.is_empty() => Ok(if inclusive {
                Cut::all_below(group)
            } else {
                Cut::all_above(group)
            }),
            None => {
                let level = theta.len();
                let anchor = principal_anchor(group, theta, level)?;
                let side = if inclusive {
                    PrincipalSide::Below
                } else {
                    PrincipalSide::Above
                };
                Ok(Cut::principal(group, side, anchor, level))
            }
        }
    }

    fn principal(group: &LexGroup, side: PrincipalSide, anchor: GroupElement, level: usize) -> Cut {
        let (side, anchor) = if side == PrincipalSide::Above && group.is_discrete_at(level) {
            (PrincipalSide::Below, &anchor - &group.unit(level))
        } else {
            (side, anchor)
        };
        Cut {
            group: group.clone(),
            kind: CutKind::Principal {
                side,
                anchor,
                level,
            },
        }
    }

    pub fn group(&self) -> &LexGroup {
        &self.group
    }

    pub fn kind(&self) -> &CutKind {
        &self.kind
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.kind, CutKind::AllBelow | CutKind::AllAbove)
    }

    /// The level `k` of a nontrivial descriptor.
    pub fn level(&self) -> Option<usize> {
        match &self.kind {
            CutKind::Principal { level, .. } | CutKind::Gap { level, .. } => Some(*level),
            _ => None,
        }
    }

    /// The bound `θ` and inclusiveness with `Λ_- = {x : x[..k] <= θ}` or
    /// `{x : x[..k] < θ}`. Trivial cuts have an empty bound.
    pub fn bound(&self) -> (Vec<Scalar>, bool) {
        match &self.kind {
            CutKind::AllBelow => (vec![], true),
            CutKind::AllAbove => (vec![], false),
            CutKind::Principal {
                side,
                anchor,
                level,
            } => (anchor.prefix(*level).to_vec(), *side == PrincipalSide::Below),
            CutKind::Gap { prefix, delta, .. } => {
                let mut theta = prefix.clone();
                theta.push(delta.clone());
                (theta, false)
            }
        }
    }

    pub fn member(&self, x: &GroupElement) -> Result<CutSide> {
        if x.group() != &self.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                x.group().to_string(),
            ));
        }
        Ok(self.member_coords(x.coords()))
    }

    /// Membership of a coordinate sequence of full length, whose entries are
    /// not required to lie in the factors.
    pub(crate) fn member_coords(&self, x: &[Scalar]) -> CutSide {
        let (theta, inclusive) = self.bound();
        let minus = match compare_coords(&x[..theta.len()], &theta) {
            Ordering::Less => true,
            Ordering::Equal => inclusive,
            Ordering::Greater => false,
        };
        if minus {
            CutSide::MinusSide
        } else {
            CutSide::PlusSide
        }
    }

    /// `Δ(Λ)`: `C_k` for a descriptor of level `k`, and `Γ = C_0` for the two
    /// trivial cuts.
    pub fn invariance(&self) -> ConvexSubgroup {
        let level = self.level().unwrap_or(0);
        self.group
            .convex_subgroup(level)
            .expect("descriptor level within rank")
    }

    pub fn classify(&self) -> CutType {
        match &self.kind {
            CutKind::AllBelow | CutKind::AllAbove => CutType::Trivial,
            CutKind::Principal { side, level, .. } => {
                if self.group.is_discrete_at(*level) {
                    CutType::RelativeJump
                } else if *side == PrincipalSide::Below {
                    CutType::RelativelyPrincipalBelow
                } else {
                    CutType::RelativelyPrincipalAbove
                }
            }
            CutKind::Gap { .. } => CutType::Gapped,
        }
    }

    /// `Λ + g`. Fails when a gap anchor and `g_k` lie in different quadratic
    /// fields, since the shifted anchor is then not representable.
    pub fn translate(&self, g: &GroupElement) -> Result<Cut> {
        if g.group() != &self.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                g.group().to_string(),
            ));
        }
        match &self.kind {
            CutKind::AllBelow | CutKind::AllAbove => Ok(self.clone()),
            CutKind::Principal {
                side,
                anchor,
                level,
            } => Ok(Cut {
                group: self.group.clone(),
                kind: CutKind::Principal {
                    side: *side,
                    anchor: (anchor + g).truncate(*level),
                    level: *level,
                },
            }),
            CutKind::Gap {
                prefix,
                level,
                delta,
            } => {
                let prefix = prefix.iter().zip(g.coords()).map(|(p, c)| p + c).collect();
                let delta = delta.checked_add(g.coord(*level))?;
                Ok(Cut {
                    group: self.group.clone(),
                    kind: CutKind::Gap {
                        prefix,
                        level: *level,
                        delta,
                    },
                })
            }
        }
    }

    /// The cut `-Λ = (-Λ_+, -Λ_-)`.
    pub fn negate(&self) -> Cut {
        let (theta, inclusive) = self.bound();
        let neg: Vec<Scalar> = theta.iter().map(|t| -t).collect();
        Cut::from_bound(&self.group, neg, !inclusive).expect("negated bound has valid length")
    }

    /// `Λ <= Λ'` iff `Λ_- ⊆ Λ'_-`.
    pub fn compare(&self, other: &Cut) -> Result<Ordering> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        Ok(compare_keys(&self.key(), &other.key()))
    }

    fn key(&self) -> CutKey {
        match &self.kind {
            CutKind::AllBelow => CutKey::Top,
            CutKind::AllAbove => CutKey::Bottom,
            _ => {
                let (theta, inclusive) = self.bound();
                let tie = match (&self.kind, inclusive) {
                    (CutKind::Gap { .. }, _) => 0,
                    (_, true) => 1,
                    (_, false) => -1,
                };
                CutKey::Bound(theta, tie)
            }
        }
    }
}

enum CutKey {
    Bottom,
    /// Bound coordinates and a tie rule: `1` keeps the whole coset of the bound
    /// on the minus side, `-1` puts it on the plus side, `0` marks a gap.
    Bound(Vec<Scalar>, i8),
    Top,
}

fn compare_keys(x: &CutKey, y: &CutKey) -> Ordering {
    use CutKey::*;
    match (x, y) {
        (Bottom, Bottom) | (Top, Top) => Ordering::Equal,
        (Bottom, _) | (_, Top) => Ordering::Less,
        (_, Bottom) | (Top, _) => Ordering::Greater,
        (Bound(a, s), Bound(b, t)) => {
            let m = a.len().min(b.len());
            match compare_coords(&a[..m], &b[..m]) {
                Ordering::Equal => {}
                o => return o,
            }
            match a.len().cmp(&b.len()) {
                Ordering::Equal => s.cmp(t),
                Ordering::Less => {
                    if *s > 0 {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
                Ordering::Greater => {
                    if *t > 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
            }
        }
    }
}

pub fn compare_cuts(c1: &Cut, c2: &Cut) -> Result<Ordering> {
    c1.compare(c2)
}

fn check_level(group: &LexGroup, level: usize) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidCut(
            "level 0 describes a trivial cut; use all_below or all_above".into(),
        ));
    }
    if level > group.rank() {
        return Err(Error::LevelOutOfRange {
            level,
            rank: group.rank(),
        });
    }
    Ok(())
}

fn check_prefix(group: &LexGroup, prefix: &[Scalar]) -> Result<()> {
    for (i, c) in prefix.iter().enumerate() {
        let f = group.factor(i + 1);
        if !contains(f, c) {
            return Err(Error::NotInFactor {
                index: i + 1,
                value: c.to_string(),
                factor: f.to_string(),
            });
        }
    }
    Ok(())
}

fn principal_anchor(group: &LexGroup, coords: Vec<Scalar>, level: usize) -> Result<GroupElement> {
    check_level(group, level)?;
    if coords.len() != level && coords.len() != group.rank() {
        return Err(Error::Arity {
            expected: level,
            found: coords.len(),
        });
    }
    let mut full: Vec<Scalar> = coords.into_iter().take(level).collect();
    check_prefix(group, &full)?;
    full.resize(group.rank(), Scalar::zero());
    group.element(full)
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            CutKind::AllBelow => write!(f, "all_below"),
            CutKind::AllAbove => write!(f, "all_above"),
            CutKind::Principal {
                side,
                anchor,
                level,
            } => {
                let name = match side {
                    PrincipalSide::Below => "below",
                    PrincipalSide::Above => "above",
                };
                write!(f, "{name}({anchor}; C {level})")
            }
            CutKind::Gap {
                prefix,
                level,
                delta,
            } => {
                write!(f, "gap(")?;
                write_scalars(f, prefix)?;
                write!(f, "; {level}; {delta})")
            }
        }
    }
}

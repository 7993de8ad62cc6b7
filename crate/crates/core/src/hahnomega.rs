//! Lexicographic sums indexed by ω over a fixed factor `Z` or `Q`.
//!
//! Elements are finitely supported; index 0 is the most significant. Cuts are
//! given by anchors in the full product: points, gaps at one index, and
//! eventually periodic streams. The latter have infinite support and produce
//! cuts whose invariance subgroup is zero, which is not an immediate
//! predecessor in the chain `Tail(0) ⊋ Tail(1) ⊋ ... ⊋ Zero`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::cuts::{Cut, CutSide, CutType};
use crate::error::{Error, Result};
use crate::lexgroups::{GroupElement, LexGroup};
use crate::scalars::{contains, RankOneKind, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OmegaGroup {
    factor: RankOneKind,
}

impl OmegaGroup {
    pub fn new(factor: RankOneKind) -> Result<OmegaGroup> {
        match factor {
            RankOneKind::IntegersZ | RankOneKind::RationalsQ => Ok(OmegaGroup { factor }),
            other => Err(Error::Unsupported(format!(
                "ω-sums are implemented over Z and Q, not {other}"
            ))),
        }
    }

    pub fn factor(&self) -> RankOneKind {
        self.factor
    }

    /// Builds an element from `(index, value)` pairs in any order. Zero values
    /// are dropped; repeated indices are rejected.
    pub fn element(&self, entries: Vec<(usize, Scalar)>) -> Result<OmegaElement> {
        let mut entries = entries;
        entries.sort_by_key(|(i, _)| *i);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Precondition(format!("index {} given twice", w[0].0)));
            }
        }
        for (i, v) in &entries {
            if !contains(self.factor, v) {
                return Err(Error::NotInFactor {
                    index: *i,
                    value: v.to_string(),
                    factor: self.factor.to_string(),
                });
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        Ok(OmegaElement {
            group: *self,
            support: entries,
        })
    }

    pub fn zero(&self) -> OmegaElement {
        OmegaElement {
            group: *self,
            support: vec![],
        }
    }

    pub fn unit(&self, i: usize) -> OmegaElement {
        OmegaElement {
            group: *self,
            support: vec![(i, Scalar::one())],
        }
    }

    /// The quotient by `Tail(n)`, a lex product of `n` copies of the factor.
    pub fn truncate(&self, n: usize) -> LexGroup {
        LexGroup::new(vec![self.factor; n]).expect("Z and Q are valid factors")
    }

    /// `Tail(i)` and `Zero`, in decreasing order, for `i < n`.
    pub fn convex_subgroups_up_to(&self, n: usize) -> Vec<OmegaConvexSubgroup> {
        (0..n).map(OmegaConvexSubgroup::Tail).collect()
    }
}

impl fmt::Display for OmegaGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "hahn_omega({})", self.factor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaElement {
    group: OmegaGroup,
    support: Vec<(usize, Scalar)>,
}

impl OmegaElement {
    pub fn group(&self) -> OmegaGroup {
        self.group
    }

    pub fn support(&self) -> &[(usize, Scalar)] {
        &self.support
    }

    pub fn coord(&self, i: usize) -> Scalar {
        self.support
            .binary_search_by_key(&i, |(j, _)| *j)
            .map(|p| self.support[p].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Least index of the support.
    pub fn iota(&self) -> Option<usize> {
        self.support.first().map(|(i, _)| *i)
    }

    /// Greatest index of the support.
    pub fn max_index(&self) -> Option<usize> {
        self.support.last().map(|(i, _)| *i)
    }

    pub fn sign(&self) -> i8 {
        self.support.first().map_or(0, |(_, v)| v.sign())
    }

    /// Largest absolute value of a coefficient's numerator or denominator.
    pub fn height(&self) -> BigInt {
        self.support
            .iter()
            .flat_map(|(_, v)| {
                let q = v.rational_part();
                [abs(q.numer()), abs(q.denom())]
            })
            .max()
            .unwrap_or_default()
    }

    pub fn checked_add(&self, other: &OmegaElement) -> Result<OmegaElement> {
        self.same_group(other)?;
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        let (mut a, mut b) = (self.support.iter().peekable(), other.support.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (Some(x), Some(y)) => match x.0.cmp(&y.0) {
                    Ordering::Less => {
                        out.push((*x).clone());
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((*y).clone());
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((x.0, &x.1 + &y.1));
                        a.next();
                        b.next();
                    }
                },
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        Ok(OmegaElement {
            group: self.group,
            support: out,
        })
    }

    pub fn checked_sub(&self, other: &OmegaElement) -> Result<OmegaElement> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> OmegaElement {
        OmegaElement {
            group: self.group,
            support: self.support.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    pub fn compare(&self, other: &OmegaElement) -> Result<Ordering> {
        Ok(self.checked_sub(other)?.sign().cmp(&0))
    }

    /// Image in the quotient by `Tail(n)`.
    pub fn truncate(&self, n: usize) -> GroupElement {
        let coords = (0..n).map(|i| self.coord(i)).collect();
        self.group
            .truncate(n)
            .element(coords)
            .expect("coordinates lie in the factor")
    }

    fn same_group(&self, other: &OmegaElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                other.group.to_string(),
            ));
        }
        Ok(())
    }
}

fn abs(x: &BigInt) -> BigInt {
    if x.sign() == num_bigint::Sign::Minus {
        -x
    } else {
        x.clone()
    }
}

pub fn omega_compare(x: &OmegaElement, y: &OmegaElement) -> Result<Ordering> {
    x.compare(y)
}

impl fmt::Display for OmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, v)) in self.support.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}:{v}")?;
        }
        write!(f, "}}")
    }
}

/// Convex subgroups of an ω-sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OmegaConvexSubgroup {
    /// Elements supported in `[i, ∞)`.
    Tail(usize),
    Zero,
}

impl OmegaConvexSubgroup {
    pub fn contains(&self, x: &OmegaElement) -> bool {
        match self {
            OmegaConvexSubgroup::Tail(i) => x.iota().map_or(true, |j| j >= *i),
            OmegaConvexSubgroup::Zero => x.is_zero(),
        }
    }

    pub fn is_subset(&self, other: &OmegaConvexSubgroup) -> bool {
        use OmegaConvexSubgroup::*;
        match (self, other) {
            (Zero, _) => true,
            (Tail(_), Zero) => false,
            (Tail(i), Tail(j)) => i >= j,
        }
    }

    /// The next smaller convex subgroup. `Zero` is the intersection of the
    /// tails and has none.
    pub fn immediate_predecessor(&self) -> Option<OmegaConvexSubgroup> {
        match self {
            OmegaConvexSubgroup::Tail(i) => Some(OmegaConvexSubgroup::Tail(i + 1)),
            OmegaConvexSubgroup::Zero => None,
        }
    }

    /// The next larger convex subgroup. `Zero` has none: every tail contains a
    /// smaller tail.
    pub fn immediate_successor(&self) -> Option<OmegaConvexSubgroup> {
        match self {
            OmegaConvexSubgroup::Tail(i) if *i > 0 => Some(OmegaConvexSubgroup::Tail(i - 1)),
            _ => None,
        }
    }

    /// Whether this subgroup is the immediate predecessor of another one.
    pub fn is_immediate_predecessor(&self) -> bool {
        self.immediate_successor().is_some()
    }
}

impl fmt::Display for OmegaConvexSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaConvexSubgroup::Tail(i) => write!(f, "tail({i})"),
            OmegaConvexSubgroup::Zero => write!(f, "zero"),
        }
    }
}

/// A cut of the index set ω.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IndexCut {
    /// `L^{≥i}`: lower part `{0..i-1}`.
    AtLeast(usize),
    /// `(ω, ∅)`.
    Top,
}

impl fmt::Display for IndexCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexCut::AtLeast(i) => write!(f, "at_least({i})"),
            IndexCut::Top => write!(f, "top"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OmegaAnchor {
    /// The cut `Γ_{≤x}`.
    Point(OmegaElement),
    /// `Λ_- = {x : (x_0..x_{i-1}, x_i) < (prefix, δ)}`.
    GapAt {
        prefix: OmegaElement,
        index: usize,
        delta: Scalar,
    },
    /// The full-product element `pre, period, period, ...`.
    Periodic {
        preperiod: Vec<Scalar>,
        period: Vec<Scalar>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaCut {
    group: OmegaGroup,
    anchor: OmegaAnchor,
}

impl OmegaCut {
    pub fn point(x: OmegaElement) -> OmegaCut {
        OmegaCut {
            group: x.group,
            anchor: OmegaAnchor::Point(x),
        }
    }

    pub fn gap_at(prefix: OmegaElement, index: usize, delta: Scalar) -> Result<OmegaCut> {
        let group = prefix.group;
        if group.factor == RankOneKind::IntegersZ {
            return Err(Error::InvalidCut(
                "gap_at needs a dense factor; over Z this is a point cut".into(),
            ));
        }
        if prefix.max_index().map_or(false, |m| m >= index) {
            return Err(Error::InvalidCut(format!(
                "gap_at prefix must be supported below index {index}"
            )));
        }
        if contains(group.factor, &delta) {
            return Err(Error::InvalidCut(format!(
                "gap anchor {delta} lies in the factor {}",
                group.factor
            )));
        }
        Ok(OmegaCut {
            group,
            anchor: OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            },
        })
    }

    pub fn periodic(group: OmegaGroup, preperiod: Vec<Scalar>, period: Vec<Scalar>) -> Result<OmegaCut> {
        for v in preperiod.iter().chain(&period) {
            if !contains(group.factor, v) {
                return Err(Error::NotInFactor {
                    index: 0,
                    value: v.to_string(),
                    factor: group.factor.to_string(),
                });
            }
        }
        match period.iter().find(|v| !v.is_zero()) {
            None => Err(Error::InvalidCut(
                "the period must have a nonzero entry; otherwise the anchor is a point".into(),
            )),
            Some(v) if v.sign() < 0 => Err(Error::InvalidCut(
                "the first nonzero period entry must be positive".into(),
            )),
            Some(_) => Ok(OmegaCut {
                group,
                anchor: OmegaAnchor::Periodic { preperiod, period },
            }),
        }
    }

    pub fn group(&self) -> OmegaGroup {
        self.group
    }

    pub fn anchor(&self) -> &OmegaAnchor {
        &self.anchor
    }

    /// Coordinate `j` of the anchor stream. For a gap this is `δ` at the gap
    /// index and zero after it.
    pub fn anchor_coord(&self, j: usize) -> Scalar {
        match &self.anchor {
            OmegaAnchor::Point(x) => x.coord(j),
            OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            } => match j.cmp(index) {
                Ordering::Less => prefix.coord(j),
                Ordering::Equal => delta.clone(),
                Ordering::Greater => Scalar::zero(),
            },
            OmegaAnchor::Periodic { preperiod, period } => {
                if j < preperiod.len() {
                    preperiod[j].clone()
                } else {
                    period[(j - preperiod.len()) % period.len()].clone()
                }
            }
        }
    }

    /// Number of leading anchor coordinates that decide comparison with `x`.
    fn scan_length(&self, x: &OmegaElement) -> usize {
        let past_support = x.max_index().map_or(0, |m| m + 1);
        match &self.anchor {
            OmegaAnchor::Point(p) => past_support.max(p.max_index().map_or(0, |m| m + 1)),
            OmegaAnchor::GapAt { index, .. } => index + 1,
            OmegaAnchor::Periodic { preperiod, period } => {
                past_support.max(preperiod.len()) + period.len()
            }
        }
    }

    pub fn member(&self, x: &OmegaElement) -> Result<CutSide> {
        if x.group != self.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                x.group.to_string(),
            ));
        }
        for j in 0..self.scan_length(x) {
            match x.coord(j).cmp(&self.anchor_coord(j)) {
                Ordering::Less => return Ok(CutSide::MinusSide),
                Ordering::Greater => return Ok(CutSide::PlusSide),
                Ordering::Equal => {}
            }
        }
        match self.anchor {
            OmegaAnchor::Point(_) => Ok(CutSide::MinusSide),
            _ => unreachable!("gap and periodic anchors differ from every element"),
        }
    }

    pub fn invariance(&self) -> OmegaConvexSubgroup {
        match &self.anchor {
            OmegaAnchor::GapAt { index, .. } => OmegaConvexSubgroup::Tail(index + 1),
            _ => OmegaConvexSubgroup::Zero,
        }
    }

    pub fn classify(&self) -> CutType {
        match &self.anchor {
            OmegaAnchor::Point(_) => CutType::RelativelyPrincipalBelow,
            OmegaAnchor::GapAt { .. } => CutType::Gapped,
            OmegaAnchor::Periodic { .. } => CutType::Tightened,
        }
    }

    /// The cut of ω attached to the invariance subgroup.
    pub fn index_cut(&self) -> IndexCut {
        match self.invariance() {
            OmegaConvexSubgroup::Tail(j) => IndexCut::AtLeast(j),
            OmegaConvexSubgroup::Zero => IndexCut::Top,
        }
    }

    pub fn translate(&self, g: &OmegaElement) -> Result<OmegaCut> {
        if g.group != self.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                g.group.to_string(),
            ));
        }
        let anchor = match &self.anchor {
            OmegaAnchor::Point(x) => OmegaAnchor::Point(x.checked_add(g)?),
            OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            } => {
                let head: Vec<(usize, Scalar)> =
                    g.support.iter().filter(|(i, _)| i < index).cloned().collect();
                let head = self.group.element(head)?;
                OmegaAnchor::GapAt {
                    prefix: prefix.checked_add(&head)?,
                    index: *index,
                    delta: delta.checked_add(&g.coord(*index))?,
                }
            }
            OmegaAnchor::Periodic { preperiod, period } => {
                let len = preperiod.len().max(g.max_index().map_or(0, |m| m + 1));
                let pre = (0..len)
                    .map(|j| self.anchor_coord(j).checked_add(&g.coord(j)))
                    .collect::<Result<Vec<_>>>()?;
                let shift = (len - preperiod.len()) % period.len();
                let mut period = period.clone();
                period.rotate_left(shift);
                OmegaAnchor::Periodic {
                    preperiod: pre,
                    period,
                }
            }
        };
        Ok(OmegaCut {
            group: self.group,
            anchor,
        })
    }

    /// Looks for `y` with `y ∈ Λ_-` and `y + g ∈ Λ_+`, or `y ∈ Λ_+` and
    /// `y + g ∈ Λ_-`, among elements with support indices and coefficient
    /// heights at most `bound`. Candidates are truncations of the anchor,
    /// starting at length `max(supp g) + 2`, rational approximations of a gap
    /// anchor, and their shifts by `-g`.
    pub fn witness_search(&self, g: &OmegaElement, bound: usize) -> Result<Option<OmegaElement>> {
        if g.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut bases = vec![];
        match &self.anchor {
            OmegaAnchor::Point(x) => bases.push(x.clone()),
            OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            } => {
                bases.push(prefix.clone());
                for den in 1..=bound.max(1) {
                    let den = BigInt::from(den);
                    let scaled = delta.scale(&BigRational::from_integer(den.clone()));
                    for num in [scaled.floor(), scaled.ceil()] {
                        let q = Scalar::rational(BigRational::new(num, den.clone()));
                        let mut entries = prefix.support.clone();
                        entries.push((*index, q));
                        bases.push(self.group.element(entries)?);
                    }
                }
            }
            OmegaAnchor::Periodic { .. } => {
                let start = g.max_index().map_or(0, |m| m + 2).min(bound + 2);
                for n in (start..=bound + 1).chain(0..start) {
                    let entries = (0..n).map(|j| (j, self.anchor_coord(j))).collect();
                    bases.push(self.group.element(entries)?);
                }
            }
        }
        let limit = BigInt::from(bound);
        for base in bases {
            for y in [base.clone(), base.checked_sub(g)?] {
                if y.max_index().map_or(false, |m| m > bound) || y.height() > limit {
                    continue;
                }
                let moved = y.checked_add(g)?;
                let (a, b) = (self.member(&y)?, self.member(&moved)?);
                if a != b {
                    return Ok(Some(y));
                }
            }
        }
        Ok(None)
    }

    /// Direct witness for `g ∉ Δ`: for `g > 0` an element `y ∈ Λ_-` with
    /// `y + g ∈ Λ_+`, and for `g < 0` one with `y ∈ Λ_+`, `y + g ∈ Λ_-`.
    /// For a periodic anchor `y` is the truncation of the anchor at the first
    /// index `N >= max(supp g) + 2` carrying a positive anchor coordinate.
    pub fn witness(&self, g: &OmegaElement) -> Result<Option<OmegaElement>> {
        if g.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.invariance().contains(g) {
            return Ok(None);
        }
        let base = match &self.anchor {
            OmegaAnchor::Point(x) => x.clone(),
            OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            } => {
                let mut entries = prefix.support.clone();
                let gi = g.coord(*index);
                let q = if g.iota() == Some(*index) {
                    gap_approximation(delta, &if gi.sign() < 0 { -gi } else { gi })
                } else {
                    Scalar::rational(BigRational::from_integer(delta.floor()))
                };
                entries.push((*index, q));
                self.group.element(entries)?
            }
            OmegaAnchor::Periodic { .. } => {
                let mut n = g.max_index().map_or(0, |m| m + 2);
                while self.anchor_coord(n).sign() <= 0 {
                    n += 1;
                }
                let entries = (0..n).map(|j| (j, self.anchor_coord(j))).collect();
                self.group.element(entries)?
            }
        };
        let y = if g.sign() > 0 {
            base
        } else {
            base.checked_sub(g)?
        };
        Ok(Some(y))
    }

    /// The cut of the rank-`n` truncation, for anchors living in the first
    /// `n` coordinates.
    pub fn truncate(&self, n: usize) -> Result<Cut> {
        let lex = self.group.truncate(n);
        match &self.anchor {
            OmegaAnchor::Point(x) if x.max_index().map_or(true, |m| m < n) && n > 0 => {
                Cut::below(&lex, x.truncate(n).coords().to_vec(), n)
            }
            OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            } if *index < n => Cut::gap(
                &lex,
                prefix.truncate(*index).coords().to_vec(),
                index + 1,
                delta.clone(),
            ),
            _ => Err(Error::Unsupported(format!(
                "{} has no description in rank {n}",
                self
            ))),
        }
    }
}

/// A rational `q < δ` with `q + g > δ`, for a rational `g > 0`.
fn gap_approximation(delta: &Scalar, g: &Scalar) -> Scalar {
    let mut den = BigInt::from(1);
    loop {
        let d = BigRational::from_integer(den.clone());
        let q = Scalar::rational(BigRational::new(delta.scale(&d).floor(), den.clone()));
        if &q + g > *delta {
            return q;
        }
        den *= 2;
    }
}

impl fmt::Display for OmegaCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.anchor {
            OmegaAnchor::Point(x) => write!(f, "point({x})"),
            OmegaAnchor::GapAt {
                prefix,
                index,
                delta,
            } => write!(f, "gap_at({prefix}; {index}; {delta})"),
            OmegaAnchor::Periodic { preperiod, period } => {
                write!(f, "periodic(")?;
                write_list(f, preperiod)?;
                write!(f, "; ")?;
                write_list(f, period)?;
                write!(f, ")")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[Scalar]) -> fmt::Result {
    write!(f, "[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, "]")
}

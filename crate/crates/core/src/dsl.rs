//! Text syntax for groups, scalars, elements, cuts, anchors, morphisms and
//! levels.
//!
//! ```text
//! group    := "lex(" factor { "," factor } ")" | "hahn_omega(" factor ")" | "lex()"
//! factor   := "Z" | "Q" | "Z[sqrt" INT "]" | "Q[sqrt" INT "]"
//! scalar   := rat [ ("+"|"-") rat "*sqrt(" INT ")" ]
//! rat      := ["-"] INT [ "/" INT ]
//! element  := "[" [ scalar { "," scalar } ] "]"
//! oelement := "{" [ INT ":" scalar { "," INT ":" scalar } ] "}"
//! cut      := "all_below" | "all_above"
//!           | ("below"|"above") "(" element ";" "C" INT ")"
//!           | "gap(" element ";" INT ";" scalar ")"
//! oanchor  := "point(" oelement ")" | "gap_at(" oelement ";" INT ";" scalar ")"
//!           | "periodic(" "[" scalars "]" ";" "[" scalars "]" ")"
//! morphism := "widen" | "scale(" rat { "," rat } ")"
//! level    := [ "C" ] INT
//! ```
//!
//! Whitespace is allowed between tokens. Malformed text is a [`SyntaxError`];
//! well-formed text denoting an invalid object is a domain [`Error`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cuts::Cut;
use crate::error::Error;
use crate::hahnomega::{OmegaCut, OmegaElement, OmegaGroup};
use crate::lexgroups::{FactorwiseInjection, GroupElement, LexGroup};
use crate::scalars::{RankOneKind, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    /// Byte offset into the parsed text.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DslError {
    Syntax(SyntaxError),
    Domain(Error),
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Syntax(e) => e.fmt(f),
            DslError::Domain(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for DslError {}

impl From<Error> for DslError {
    fn from(e: Error) -> Self {
        DslError::Domain(e)
    }
}

impl From<SyntaxError> for DslError {
    fn from(e: SyntaxError) -> Self {
        DslError::Syntax(e)
    }
}

pub type DslResult<T> = std::result::Result<T, DslError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    Lex(LexGroup),
    Omega(OmegaGroup),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Lex(g) => g.fmt(f),
            GroupExpr::Omega(g) => g.fmt(f),
        }
    }
}

/// A factorwise morphism out of a group, into its divisible hull.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MorphismSpec {
    Widen,
    Scale(Vec<BigRational>),
}

impl MorphismSpec {
    pub fn resolve(&self, dom: &LexGroup) -> Result<FactorwiseInjection, Error> {
        let (hull, _) = dom.divisible_hull();
        match self {
            MorphismSpec::Widen => FactorwiseInjection::widen(dom.clone(), hull),
            MorphismSpec::Scale(r) => FactorwiseInjection::new(dom.clone(), hull, r.clone()),
        }
    }
}

impl fmt::Display for MorphismSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismSpec::Widen => write!(f, "widen"),
            MorphismSpec::Scale(rs) => {
                write!(f, "scale(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(src: &'a str) -> Self {
        Reader { src, pos: 0 }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn unexpected(&mut self, start: usize, expected: &str) -> DslError {
        self.pos = start;
        self.skip_ws();
        let found = match self.rest().split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).next() {
            Some(w) if !w.is_empty() => format!("'{w}'"),
            _ => self.rest().chars().next().map_or("end of input".to_string(), |c| format!("'{c}'")),
        };
        DslError::Syntax(SyntaxError {
            position: self.pos,
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }


    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), SyntaxError> {
        if self.eat(token) {
            Ok(())
        } else {
            let found = self.rest().chars().next().map_or("end of input".to_string(), |c| format!("'{c}'"));
            self.error(format!("expected '{token}', found {found}"))
        }
    }

    /// Consumes an identifier and returns it.
    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += len;
        &rest[..len]
    }

    fn uint(&mut self) -> Result<BigInt, SyntaxError> {
        self.skip_ws();
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|(_, c)| !c.is_ascii_digit())
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return self.error("expected an integer");
        }
        self.pos += len;
        Ok(rest[..len].parse().expect("ascii digits"))
    }

    fn usize(&mut self) -> Result<usize, SyntaxError> {
        let start = self.pos;
        let n = self.uint()?;
        n.try_into().map_err(|_| SyntaxError {
            position: start,
            message: "integer too large".into(),
        })
    }

    fn u64(&mut self) -> Result<u64, SyntaxError> {
        let start = self.pos;
        let n = self.uint()?;
        n.try_into().map_err(|_| SyntaxError {
            position: start,
            message: "integer too large".into(),
        })
    }

    fn finish(&mut self) -> Result<(), SyntaxError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.error(format!("unexpected trailing input '{}'", self.rest()))
        }
    }

    fn rat(&mut self) -> DslResult<BigRational> {
        let negative = self.eat("-");
        let num = self.uint()?;
        let num = if negative { -num } else { num };
        if self.eat("/") {
            let at = self.pos;
            let den = self.uint()?;
            if den.is_zero() {
                return Err(DslError::Syntax(SyntaxError {
                    position: at,
                    message: "zero denominator".into(),
                }));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn scalar(&mut self) -> DslResult<Scalar> {
        let a = self.rat()?;
        let sign = if self.eat("+") {
            1
        } else {
            let save = self.pos;
            self.skip_ws();
            // A '-' here starts a radical term only when followed by a rational
            // and "*sqrt(".
            if self.rest().starts_with('-') && !self.rest().starts_with("->") {
                self.pos += 1;
                -1
            } else {
                self.pos = save;
                return Ok(Scalar::rational(a));
            }
        };
        let b = self.rat()?;
        self.expect("*")?;
        self.expect("sqrt")?;
        self.expect("(")?;
        let d = self.u64()?;
        self.expect(")")?;
        let b = if sign < 0 { -b } else { b };
        Ok(Scalar::new(a, b, d))
    }

    fn scalars(&mut self, open: &str, close: &str) -> DslResult<Vec<Scalar>> {
        self.expect(open)?;
        let mut out = vec![];
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.scalar()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn factor(&mut self) -> DslResult<RankOneKind> {
        let start = self.pos;
        let w = self.word();
        let base = match w {
            "Z" => RankOneKind::IntegersZ,
            "Q" => RankOneKind::RationalsQ,
            _ => return Err(self.unexpected(start, "a factor Z, Q, Z[sqrt D] or Q[sqrt D]")),
        };
        if self.eat("[") {
            self.expect("sqrt")?;
            let d = self.u64()?;
            self.expect("]")?;
            return Ok(match base {
                RankOneKind::IntegersZ => RankOneKind::quad_z(d)?,
                _ => RankOneKind::quad_q(d)?,
            });
        }
        Ok(base)
    }

    fn group(&mut self) -> DslResult<GroupExpr> {
        let start = self.pos;
        match self.word() {
            "lex" => {
                self.expect("(")?;
                let mut factors = vec![];
                if !self.eat(")") {
                    loop {
                        factors.push(self.factor()?);
                        if self.eat(")") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
                Ok(GroupExpr::Lex(LexGroup::new(factors)?))
            }
            "hahn_omega" => {
                self.expect("(")?;
                let f = self.factor()?;
                self.expect(")")?;
                Ok(GroupExpr::Omega(OmegaGroup::new(f)?))
            }
            _ => Err(self.unexpected(start, "lex(...) or hahn_omega(...)")),
        }
    }

    fn level(&mut self) -> DslResult<usize> {
        self.eat("C");
        Ok(self.usize()?)
    }

    fn cut(&mut self, group: &LexGroup) -> DslResult<Cut> {
        let start = self.pos;
        match self.word() {
            "all_below" => Ok(Cut::all_below(group)),
            "all_above" => Ok(Cut::all_above(group)),
            w @ ("below" | "above") => {
                self.expect("(")?;
                let coords = self.scalars("[", "]")?;
                self.expect(";")?;
                self.expect("C")?;
                let level = self.usize()?;
                self.expect(")")?;
                Ok(if w == "below" {
                    Cut::below(group, coords, level)?
                } else {
                    Cut::above(group, coords, level)?
                })
            }
            "gap" => {
                self.expect("(")?;
                let prefix = self.scalars("[", "]")?;
                self.expect(";")?;
                let level = self.usize()?;
                self.expect(";")?;
                let delta = self.scalar()?;
                self.expect(")")?;
                Ok(Cut::gap(group, prefix, level, delta)?)
            }
            _ => Err(self.unexpected(start, "all_below, all_above, below, above or gap")),
        }
    }

    fn oelement(&mut self, group: OmegaGroup) -> DslResult<OmegaElement> {
        self.expect("{")?;
        let mut entries = vec![];
        if !self.eat("}") {
            loop {
                let i = self.usize()?;
                self.expect(":")?;
                entries.push((i, self.scalar()?));
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(group.element(entries)?)
    }

    fn anchor(&mut self, group: OmegaGroup) -> DslResult<OmegaCut> {
        let start = self.pos;
        match self.word() {
            "point" => {
                self.expect("(")?;
                let x = self.oelement(group)?;
                self.expect(")")?;
                Ok(OmegaCut::point(x))
            }
            "gap_at" => {
                self.expect("(")?;
                let prefix = self.oelement(group)?;
                self.expect(";")?;
                let i = self.usize()?;
                self.expect(";")?;
                let delta = self.scalar()?;
                self.expect(")")?;
                Ok(OmegaCut::gap_at(prefix, i, delta)?)
            }
            "periodic" => {
                self.expect("(")?;
                let pre = self.scalars("[", "]")?;
                self.expect(";")?;
                let per = self.scalars("[", "]")?;
                self.expect(")")?;
                Ok(OmegaCut::periodic(group, pre, per)?)
            }
            _ => Err(self.unexpected(start, "point, gap_at or periodic")),
        }
    }

    fn morphism(&mut self) -> DslResult<MorphismSpec> {
        let start = self.pos;
        match self.word() {
            "widen" => Ok(MorphismSpec::Widen),
            "scale" => {
                self.expect("(")?;
                let mut rs = vec![self.rat()?];
                while self.eat(",") {
                    rs.push(self.rat()?);
                }
                self.expect(")")?;
                Ok(MorphismSpec::Scale(rs))
            }
            _ => Err(self.unexpected(start, "widen or scale(...)")),
        }
    }
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Reader) -> DslResult<T>) -> DslResult<T> {
    let mut r = Reader::new(src);
    let v = f(&mut r)?;
    r.finish()?;
    Ok(v)
}

pub fn parse_group(src: &str) -> DslResult<GroupExpr> {
    whole(src, |r| r.group())
}

pub fn parse_lex_group(src: &str) -> DslResult<LexGroup> {
    match parse_group(src)? {
        GroupExpr::Lex(g) => Ok(g),
        GroupExpr::Omega(g) => Err(Error::Unsupported(format!("{g} is not a finite lex product")).into()),
    }
}

pub fn parse_factor(src: &str) -> DslResult<RankOneKind> {
    whole(src, |r| r.factor())
}

pub fn parse_scalar(src: &str) -> DslResult<Scalar> {
    whole(src, |r| r.scalar())
}

pub fn parse_rational(src: &str) -> DslResult<BigRational> {
    whole(src, |r| r.rat())
}

pub fn parse_element(group: &LexGroup, src: &str) -> DslResult<GroupElement> {
    let coords = whole(src, |r| r.scalars("[", "]"))?;
    Ok(group.element(coords)?)
}

pub fn parse_cut(group: &LexGroup, src: &str) -> DslResult<Cut> {
    whole(src, |r| r.cut(group))
}

pub fn parse_omega_element(group: OmegaGroup, src: &str) -> DslResult<OmegaElement> {
    whole(src, |r| r.oelement(group))
}

pub fn parse_anchor(group: OmegaGroup, src: &str) -> DslResult<OmegaCut> {
    whole(src, |r| r.anchor(group))
}

pub fn parse_morphism(src: &str) -> DslResult<MorphismSpec> {
    whole(src, |r| r.morphism())
}

/// `C m` or `m`.
pub fn parse_level(src: &str) -> DslResult<usize> {
    whole(src, |r| r.level())
}

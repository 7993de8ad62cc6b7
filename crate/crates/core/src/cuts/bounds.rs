use super::{Cut, CutSide};
use crate::error::{Error, Result};
use crate::lexgroups::{ConvexSubgroup, GroupElement};

/// The convex subgroups bounding the symmetric interval `S_(Σ,σ)`, the
/// greatest symmetric interval contained in `Σ - σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalBounds {
    /// Union of the convex subgroups not containing `S`.
    pub psi_minus: ConvexSubgroup,
    /// Greatest convex subgroup contained in `S`.
    pub phi_minus: ConvexSubgroup,
    /// Smallest convex subgroup containing `S`.
    pub psi_plus: ConvexSubgroup,
    /// Intersection of the convex subgroups not contained in `S`.
    pub phi_plus: ConvexSubgroup,
    /// `Some(Δ)` when `S` is itself the convex subgroup `Δ`.
    pub symmetric_interval: Option<ConvexSubgroup>,
}

impl Cut {
    /// Bounds for the initial segment `Σ = Λ_-` at `σ ∈ Σ`.
    ///
    /// With `d` the first coordinate where `σ` leaves the bound of the cut,
    /// `S` contains `C_d` and elements outside it, so both cuts of the
    /// convex-subgroup chain sit between `C_d` and `C_{d-1}`. When `σ` agrees
    /// with the anchor of a `below` cut up to the level, `S = C_k`.
    pub fn interval_bounds(&self, sigma: &GroupElement) -> Result<IntervalBounds> {
        if self.is_trivial() {
            return Err(Error::Precondition(
                "interval bounds need a nontrivial cut".into(),
            ));
        }
        if self.member(sigma)? != CutSide::MinusSide {
            return Err(Error::Precondition(format!("{sigma} is not in Λ_-")));
        }
        let n = self.group.rank();
        let c = |level: usize| self.group.convex_subgroup(level).expect("level within rank");
        let (theta, _) = self.bound();
        let first_difference = sigma
            .coords()
            .iter()
            .zip(&theta)
            .position(|(s, t)| s != t)
            .map(|i| i + 1);
        Ok(match first_difference {
            None => {
                let k = theta.len();
                IntervalBounds {
                    psi_minus: c((k + 1).min(n)),
                    phi_minus: c(k),
                    psi_plus: c(k),
                    phi_plus: c(k - 1),
                    symmetric_interval: Some(c(k)),
                }
            }
            Some(d) => IntervalBounds {
                psi_minus: c(d),
                phi_minus: c(d),
                psi_plus: c(d - 1),
                phi_plus: c(d - 1),
                symmetric_interval: None,
            },
        })
    }

    /// Bounds for the final segment `Λ_+` at `ω ∈ Λ_+`, computed on the
    /// initial segment `-Λ_+` of the negated cut at `-ω`.
    pub fn interval_bounds_final(&self, omega: &GroupElement) -> Result<IntervalBounds> {
        if self.member(omega)? != CutSide::PlusSide {
            return Err(Error::Precondition(format!("{omega} is not in Λ_+")));
        }
        self.negate().interval_bounds(&-omega)
    }

    /// Membership of `ξ` in `S_(Σ,σ)`: `|ξ| + σ ∈ Σ`.
    pub fn symmetric_interval_contains(&self, sigma: &GroupElement, xi: &GroupElement) -> Result<bool> {
        let shifted = xi.abs().checked_add(sigma)?;
        Ok(self.member(&shifted)? == CutSide::MinusSide)
    }
}

use super::{Cut, CutKind, PrincipalSide};
use crate::error::{Error, Result};
use crate::lexgroups::FactorwiseInjection;
use crate::scalars::Scalar;

impl Cut {
    /// `φ_!(Λ_-)`: the smallest initial segment of the codomain containing
    /// `φ(Λ_-)`.
    pub fn push_lower(&self, m: &FactorwiseInjection) -> Result<Cut> {
        self.check_dom(m)?;
        let (theta, inclusive) = self.bound();
        Cut::from_bound(m.cod(), m.map_coords(&theta), inclusive)
    }

    /// `φ_*(Λ_-)`: the largest initial segment of the codomain whose preimage
    /// is `Λ_-`, i.e. the complement of the final segment generated by
    /// `φ(Λ_+)`.
    pub fn push_upper(&self, m: &FactorwiseInjection) -> Result<Cut> {
        self.check_dom(m)?;
        let (mut theta, inclusive) = self.bound();
        match &self.kind {
            CutKind::Principal {
                side: PrincipalSide::Below,
                level,
                ..
            } if self.group.is_discrete_at(*level) => {
                let last = theta.last_mut().expect("level >= 1");
                *last = &*last + &Scalar::one();
                Cut::from_bound(m.cod(), m.map_coords(&theta), false)
            }
            CutKind::Gap { .. } => Cut::from_bound(m.cod(), m.map_coords(&theta), true),
            _ => Cut::from_bound(m.cod(), m.map_coords(&theta), inclusive),
        }
    }

    /// `φ^*(Λ'_-) = φ^{-1}(Λ'_-)` for a cut of the codomain.
    pub fn pull(&self, m: &FactorwiseInjection) -> Result<Cut> {
        if &self.group != m.cod() {
            return Err(Error::GroupMismatch(
                m.cod().to_string(),
                self.group.to_string(),
            ));
        }
        let (theta, inclusive) = self.bound();
        Cut::from_bound(m.dom(), m.unmap_coords(&theta), inclusive)
    }

    fn check_dom(&self, m: &FactorwiseInjection) -> Result<()> {
        if &self.group != m.dom() {
            return Err(Error::GroupMismatch(
                m.dom().to_string(),
                self.group.to_string(),
            ));
        }
        Ok(())
    }
}

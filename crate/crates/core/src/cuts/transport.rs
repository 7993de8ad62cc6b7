use super::Cut;
use crate::error::{Error, Result};
use crate::lexgroups::{write_scalars, ConvexSubgroup, GroupElement};
use crate::scalars::Scalar;

struct Coset<'a>(&'a [Scalar]);

impl std::fmt::Display for Coset<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_scalars(f, self.0)
    }
}

impl Cut {
    /// Image of the cut in `Γ / C_m`. Requires `C_m ⊆ Δ(Λ)`, i.e. `m >= k`.
    pub fn quotient_image(&self, theta: &ConvexSubgroup) -> Result<Cut> {
        self.check_subgroup(theta)?;
        let m = theta.level();
        let (quotient, _) = self.group.quotient(theta)?;
        let (bound, inclusive) = self.bound();
        if bound.len() > m {
            let witness = Coset(&bound[..m]).to_string();
            return Err(Error::ImageNotACut(witness));
        }
        Cut::from_bound(&quotient, bound, inclusive)
    }

    /// The cut `(Λ_- - δ) ∩ C_m` of `C_m`, presented over factors `m+1..=n`.
    /// Trivial unless the offset agrees with the bound on the first `m`
    /// coordinates.
    pub fn trace_at(&self, theta: &ConvexSubgroup, offset: &GroupElement) -> Result<Cut> {
        self.check_subgroup(theta)?;
        if offset.group() != &self.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                offset.group().to_string(),
            ));
        }
        let m = theta.level();
        let (sub, _) = self.group.subgroup(theta)?;
        let (bound, inclusive) = self.bound();
        let off = offset.coords();
        let head = bound.len().min(m);
        match crate::lexgroups::compare_coords(&off[..head], &bound[..head]) {
            std::cmp::Ordering::Less => return Ok(Cut::all_below(&sub)),
            std::cmp::Ordering::Greater => return Ok(Cut::all_above(&sub)),
            std::cmp::Ordering::Equal => {}
        }
        if bound.len() <= m {
            return Cut::from_bound(&sub, vec![], inclusive);
        }
        let shifted = bound[m..]
            .iter()
            .zip(&off[m..])
            .map(|(b, o)| b.checked_sub(o))
            .collect::<Result<Vec<_>>>()?;
        Cut::from_bound(&sub, shifted, inclusive)
    }

    /// Trace on `C_m` for `m < k`, taking as offset the bound's first `m`
    /// coordinates. The result has level `k - m`.
    pub fn trace(&self, theta: &ConvexSubgroup) -> Result<Cut> {
        self.check_subgroup(theta)?;
        let m = theta.level();
        let k = self.level().ok_or_else(|| {
            Error::Precondition("the trace of a trivial cut is trivial".into())
        })?;
        if m >= k {
            return Err(Error::Precondition(format!(
                "trace on C {m} needs m < {k}; the invariance subgroup already contains it"
            )));
        }
        let (bound, _) = self.bound();
        let mut off: Vec<Scalar> = bound[..m].to_vec();
        off.resize(self.group.rank(), Scalar::zero());
        let offset = self.group.element(off)?;
        self.trace_at(theta, &offset)
    }

    /// Transport to `C_{m2} / C_{m1}` for `m2 < k <= m1`: trace on `C_{m2}`,
    /// then the image in the quotient by `C_{m1}`. The result lives over
    /// factors `m2+1..=m1` and has level `k - m2`.
    pub fn transport(&self, theta1: &ConvexSubgroup, theta2: &ConvexSubgroup) -> Result<Cut> {
        self.check_subgroup(theta1)?;
        self.check_subgroup(theta2)?;
        let (m1, m2) = (theta1.level(), theta2.level());
        let k = self.level().ok_or_else(|| {
            Error::Precondition("transport needs a nontrivial cut".into())
        })?;
        if !(m2 < k && k <= m1) {
            return Err(Error::Precondition(format!(
                "transport needs C {m1} ⊆ Δ = C {k} ⊊ C {m2}"
            )));
        }
        let traced = self.trace(theta2)?;
        let inner = traced.group.convex_subgroup(m1 - m2)?;
        traced.quotient_image(&inner)
    }

    fn check_subgroup(&self, theta: &ConvexSubgroup) -> Result<()> {
        if theta.group() != &self.group {
            return Err(Error::GroupMismatch(
                self.group.to_string(),
                theta.group().to_string(),
            ));
        }
        Ok(())
    }
}

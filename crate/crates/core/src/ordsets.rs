//! Initial segments, final segments and cuts of finite chains, and the three
//! functors induced by a monotone map: pullback, lower image and upper image.
//!
//! A finite chain of size `n` has elements `0..n`. An initial segment is
//! stored by its cutoff `c`: it is `{0, .., c-1}`, and the same value encodes
//! the cut whose lower part is that segment.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteChain {
    pub size: usize,
}

impl FiniteChain {
    pub fn new(size: usize) -> FiniteChain {
        FiniteChain { size }
    }

    pub fn segment(self, cutoff: usize) -> Result<Segment> {
        Segment::new(self, cutoff)
    }

    /// The `n + 1` segments in increasing order.
    pub fn all_segments(self) -> Vec<Segment> {
        (0..=self.size)
            .map(|cutoff| Segment { chain: self, cutoff })
            .collect()
    }

    /// `I_{<=i}` as a cut (the embedding `sigma^<=`).
    pub fn at_most(self, i: usize) -> Segment {
        assert!(i < self.size);
        Segment { chain: self, cutoff: i + 1 }
    }

    /// `I_{<i}` as a cut (the embedding `sigma^>=`).
    pub fn below(self, i: usize) -> Segment {
        assert!(i < self.size);
        Segment { chain: self, cutoff: i }
    }
}

pub fn all_segments(chain: FiniteChain) -> Vec<Segment> {
    chain.all_segments()
}

/// An initial segment `{0, .., cutoff-1}`, equivalently the cut
/// `({0..cutoff}, {cutoff..n})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub chain: FiniteChain,
    pub cutoff: usize,
}

impl Segment {
    pub fn new(chain: FiniteChain, cutoff: usize) -> Result<Segment> {
        if cutoff > chain.size {
            return Err(Error::Precondition(format!(
                "cutoff {cutoff} exceeds chain size {}",
                chain.size
            )));
        }
        Ok(Segment { chain, cutoff })
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.cutoff
    }

    pub fn is_subset(&self, other: &Segment) -> bool {
        self.cutoff <= other.cutoff
    }

    pub fn lower_part(&self) -> Vec<usize> {
        (0..self.cutoff).collect()
    }

    pub fn upper_part(&self) -> Vec<usize> {
        (self.cutoff..self.chain.size).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.cutoff == 0 || self.cutoff == self.chain.size
    }
}

/// A non-decreasing map between finite chains.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneMap {
    dom: FiniteChain,
    cod: FiniteChain,
    images: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(dom: FiniteChain, cod: FiniteChain, images: Vec<usize>) -> Result<MonotoneMap> {
        if images.len() != dom.size {
            return Err(Error::InvalidMap(format!(
                "{} images for a domain of size {}",
                images.len(),
                dom.size
            )));
        }
        if let Some(bad) = images.iter().find(|&&v| v >= cod.size) {
            return Err(Error::InvalidMap(format!(
                "image {bad} outside codomain of size {}",
                cod.size
            )));
        }
        if images.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidMap("images are not non-decreasing".into()));
        }
        Ok(MonotoneMap { dom, cod, images })
    }

    pub fn identity(chain: FiniteChain) -> MonotoneMap {
        MonotoneMap {
            dom: chain,
            cod: chain,
            images: (0..chain.size).collect(),
        }
    }

    /// Every monotone map `dom -> cod`, in lexicographic order of images.
    pub fn enumerate(dom: FiniteChain, cod: FiniteChain) -> Vec<MonotoneMap> {
        fn go(
            dom: FiniteChain,
            cod: FiniteChain,
            prefix: &mut Vec<usize>,
            out: &mut Vec<MonotoneMap>,
        ) {
            if prefix.len() == dom.size {
                out.push(MonotoneMap {
                    dom,
                    cod,
                    images: prefix.clone(),
                });
                return;
            }
            let start = prefix.last().copied().unwrap_or(0);
            for v in start..cod.size {
                prefix.push(v);
                go(dom, cod, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if dom.size > 0 && cod.size == 0 {
            return out;
        }
        go(dom, cod, &mut Vec::new(), &mut out);
        out
    }

    pub fn dom(&self) -> FiniteChain {
        self.dom
    }

    pub fn cod(&self) -> FiniteChain {
        self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn is_injective(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        for &v in &self.images {
            seen[v] = true;
        }
        seen.into_iter().all(|b| b)
    }

    fn check(&self, expected: FiniteChain, s: &Segment) -> Result<()> {
        if s.chain != expected {
            return Err(Error::ChainMismatch {
                expected: expected.size,
                found: s.chain.size,
            });
        }
        Ok(())
    }

    /// The preimage `u^{-1}(s)` of a segment of the codomain.
    pub fn pullback(&self, s: &Segment) -> Result<Segment> {
        self.check(self.cod, s)?;
        // monotone, so the preimage of an initial segment is a prefix
        let cutoff = self.images.iter().take_while(|&&v| v < s.cutoff).count();
        Ok(Segment {
            chain: self.dom,
            cutoff,
        })
    }

    /// Smallest initial segment of the codomain containing `u(s)`.
    pub fn lower_image(&self, s: &Segment) -> Result<Segment> {
        self.check(self.dom, s)?;
        let cutoff = match s.cutoff {
            0 => 0,
            c => self.images[c - 1] + 1,
        };
        Ok(Segment {
            chain: self.cod,
            cutoff,
        })
    }

    /// Intersection of `I_{<u(j)}` over the complement of `s`: the right adjoint
    /// of [`MonotoneMap::pullback`].
    pub fn upper_image(&self, s: &Segment) -> Result<Segment> {
        self.check(self.dom, s)?;
        let cutoff = self
            .images
            .get(s.cutoff)
            .copied()
            .unwrap_or(self.cod.size);
        Ok(Segment {
            chain: self.cod,
            cutoff,
        })
    }

    pub fn cut_images(&self, s: &Segment) -> Result<CutImages> {
        let lower = self.lower_image(s)?;
        let upper = self.upper_image(s)?;
        let c = s.cutoff;
        let overlap = if c > 0 && c < self.dom.size && self.images[c - 1] == self.images[c] {
            Some(self.images[c])
        } else {
            None
        };
        Ok(CutImages {
            lower,
            upper,
            overlap,
        })
    }
}

/// Both images of a cut under a monotone map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutImages {
    /// `u_!` of the cut.
    pub lower: Segment,
    /// `u_*` of the cut.
    pub upper: Segment,
    /// The element of `u(lower part) ∩ u(upper part)`, when there is one.
    pub overlap: Option<usize>,
}

/// `(sup of lower part, inf of upper part)`, each absent when the part is empty.
pub fn cut_bounds(s: &Segment) -> (Option<usize>, Option<usize>) {
    let minus = s.cutoff.checked_sub(1);
    let plus = (s.cutoff < s.chain.size).then_some(s.cutoff);
    (minus, plus)
}

/// Elements with an immediate predecessor.
pub fn successors(chain: FiniteChain) -> Vec<usize> {
    (1..chain.size).collect()
}

/// A chain `I` together with the map `i -> I_{<=i} ∩ Suc(I)` into the initial
/// segments of `Suc(I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reconstruction {
    pub chain: FiniteChain,
    /// `Suc(I) = {1, .., n-1}`, re-indexed as a chain of size `n - 1`.
    pub successor_chain: FiniteChain,
    /// `images[i]` is the segment assigned to `i`.
    pub images: Vec<Segment>,
}

impl Reconstruction {
    /// Whether the map is a bijection onto all segments of `Suc(I)` that is
    /// strictly increasing for inclusion.
    pub fn is_order_isomorphism(&self) -> bool {
        let targets = self.successor_chain.all_segments();
        if targets.len() != self.images.len() {
            return false;
        }
        let increasing = self
            .images
            .windows(2)
            .all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]);
        let onto = targets.iter().all(|t| self.images.contains(t));
        increasing && onto
    }
}

/// Builds the isomorphism `I ≅ IS(Suc(I))`. For `n = 0` the witness is
/// degenerate: `Suc` is empty and `IS(∅)` has one element, so no bijection
/// exists and the returned value reports `false` from
/// [`Reconstruction::is_order_isomorphism`].
pub fn reconstruct(chain: FiniteChain) -> Reconstruction {
    let successor_chain = FiniteChain::new(chain.size.saturating_sub(1));
    let succ = successors(chain);
    let images = (0..chain.size)
        .map(|i| {
            // I_{<=i} ∩ Suc(I) = {1..=i}, i.e. the first i elements of Suc(I)
            let cutoff = succ.iter().filter(|&&s| s <= i).count();
            Segment {
                chain: successor_chain,
                cutoff,
            }
        })
        .collect();
    Reconstruction {
        chain,
        successor_chain,
        images,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(dom: usize, cod: usize, images: &[usize]) -> MonotoneMap {
        MonotoneMap::new(FiniteChain::new(dom), FiniteChain::new(cod), images.to_vec()).unwrap()
    }

    #[test]
    fn segment_enumeration() {
        let cut: Vec<_> = FiniteChain::new(3).all_segments().iter().map(|s| s.cutoff).collect();
        assert_eq!(cut, vec![0, 1, 2, 3]);
        assert_eq!(FiniteChain::new(0).all_segments().len(), 1);
        let five = FiniteChain::new(5).all_segments();
        assert_eq!(five.len(), 6);
        assert!(five[0].is_trivial() && five[0].cutoff == 0);
        assert!(five[5].is_trivial() && five[5].cutoff == 5);
    }

    #[test]
    fn pullback_examples() {
        let u = map(2, 3, &[0, 2]);
        let s = FiniteChain::new(3).segment(2).unwrap();
        assert_eq!(u.pullback(&s).unwrap().cutoff, 1);

        let id = MonotoneMap::identity(FiniteChain::new(4));
        for s in FiniteChain::new(4).all_segments() {
            assert_eq!(id.pullback(&s).unwrap(), s);
        }

        let constant = map(4, 3, &[0, 0, 0, 0]);
        let s = FiniteChain::new(3).segment(1).unwrap();
        assert_eq!(constant.pullback(&s).unwrap().cutoff, 4);
    }

    #[test]
    fn image_examples() {
        let u = map(2, 3, &[0, 2]);
        let dom = FiniteChain::new(2);
        assert_eq!(u.lower_image(&dom.segment(1).unwrap()).unwrap().cutoff, 1);
        assert_eq!(u.lower_image(&dom.segment(0).unwrap()).unwrap().cutoff, 0);
        assert_eq!(u.upper_image(&dom.segment(1).unwrap()).unwrap().cutoff, 2);
        assert_eq!(u.upper_image(&dom.segment(2).unwrap()).unwrap().cutoff, 3);

        let v = map(2, 3, &[1, 1]);
        assert_eq!(v.lower_image(&dom.segment(2).unwrap()).unwrap().cutoff, 2);
    }

    #[test]
    fn surjective_cut_images() {
        let u = map(4, 2, &[0, 0, 1, 1]);
        let s = FiniteChain::new(4).segment(1).unwrap();
        let images = u.cut_images(&s).unwrap();
        assert_eq!(images.lower.cutoff, 1);
        assert_eq!(images.upper.cutoff, 0);
        assert_eq!(images.overlap, Some(0));

        let empty = FiniteChain::new(4).segment(0).unwrap();
        let images = u.cut_images(&empty).unwrap();
        assert_eq!((images.lower.cutoff, images.upper.cutoff), (0, 0));
    }

    #[test]
    fn bounds() {
        let c = FiniteChain::new(4);
        assert_eq!(cut_bounds(&c.segment(2).unwrap()), (Some(1), Some(2)));
        assert_eq!(cut_bounds(&c.segment(0).unwrap()), (None, Some(0)));
        assert_eq!(cut_bounds(&c.segment(4).unwrap()), (Some(3), None));
        assert_eq!(c.at_most(1).cutoff, 2);
        assert_eq!(c.below(1).cutoff, 1);
    }

    #[test]
    fn chain_mismatch_is_reported() {
        let u = map(2, 3, &[0, 2]);
        let wrong = FiniteChain::new(5).segment(1).unwrap();
        assert_eq!(
            u.pullback(&wrong),
            Err(Error::ChainMismatch { expected: 3, found: 5 })
        );
        assert!(u.lower_image(&wrong).is_err());
        assert!(MonotoneMap::new(FiniteChain::new(2), FiniteChain::new(3), vec![2, 1]).is_err());
        assert!(MonotoneMap::new(FiniteChain::new(2), FiniteChain::new(3), vec![0, 3]).is_err());
    }

    #[test]
    fn reconstruction_small_cases() {
        let r4 = reconstruct(FiniteChain::new(4));
        assert_eq!(r4.successor_chain.size, 3);
        let cutoffs: Vec<_> = r4.images.iter().map(|s| s.cutoff).collect();
        assert_eq!(cutoffs, vec![0, 1, 2, 3]);
        assert!(r4.is_order_isomorphism());

        let r1 = reconstruct(FiniteChain::new(1));
        assert_eq!(r1.successor_chain.size, 0);
        assert!(r1.is_order_isomorphism());

        assert!(reconstruct(FiniteChain::new(2)).is_order_isomorphism());
        assert!(!reconstruct(FiniteChain::new(0)).is_order_isomorphism());
    }

    #[test]
    fn enumeration_counts() {
        // non-decreasing maps m -> n: C(m + n - 1, m)
        assert_eq!(MonotoneMap::enumerate(FiniteChain::new(4), FiniteChain::new(4)).len(), 35);
        assert_eq!(MonotoneMap::enumerate(FiniteChain::new(0), FiniteChain::new(3)).len(), 1);
        assert_eq!(MonotoneMap::enumerate(FiniteChain::new(2), FiniteChain::new(0)).len(), 0);
    }
}

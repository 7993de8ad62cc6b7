mod common;

use common::*;
use ordcut::ordsets::{reconstruct, successors, FiniteChain, MonotoneMap};

fn all_maps(max: usize) -> Vec<MonotoneMap> {
    let mut out = vec![];
    for n in 0..=max {
        for m in 0..=max {
            out.extend(MonotoneMap::enumerate(FiniteChain::new(n), FiniteChain::new(m)));
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn enumeration_counts_monotone_maps() {
    // monotone maps [n] -> [m] are multisets of size n from m values
    for n in 0..=4 {
        for m in 1..=4 {
            let count = MonotoneMap::enumerate(FiniteChain::new(n), FiniteChain::new(m)).len();
            assert_eq!(count, binomial(n + m - 1, n), "{n} -> {m}");
        }
        let to_empty = MonotoneMap::enumerate(FiniteChain::new(n), FiniteChain::new(0)).len();
        assert_eq!(to_empty, usize::from(n == 0));
    }
}

#[test]
fn images_match_brute_force() {
    for u in all_maps(4) {
        for s in u.dom().all_segments() {
            assert_eq!(u.lower_image(&s).unwrap().cutoff, brute_lower(&u, &s), "{u:?} {s:?}");
            assert_eq!(u.upper_image(&s).unwrap().cutoff, brute_upper(&u, &s), "{u:?} {s:?}");
        }
        for t in u.cod().all_segments() {
            assert_eq!(u.pullback(&t).unwrap().cutoff, brute_pullback(&u, &t));
        }
    }
}

#[test]
fn adjunctions_units_and_counits() {
    for u in all_maps(4) {
        for s in u.dom().all_segments() {
            let lower = u.lower_image(&s).unwrap();
            let upper = u.upper_image(&s).unwrap();
            assert!(segment_subset(&s, &u.pullback(&lower).unwrap()));
            assert!(segment_subset(&u.pullback(&upper).unwrap(), &s));
            for t in u.cod().all_segments() {
                let back = u.pullback(&t).unwrap();
                assert_eq!(segment_subset(&lower, &t), segment_subset(&s, &back));
                assert_eq!(segment_subset(&back, &s), segment_subset(&t, &upper));
            }
        }
        for t in u.cod().all_segments() {
            let back = u.pullback(&t).unwrap();
            assert!(segment_subset(&u.lower_image(&back).unwrap(), &t));
            assert!(segment_subset(&t, &u.upper_image(&back).unwrap()));
        }
    }
}

#[test]
fn surjective_overlap_is_at_most_one_point() {
    for u in all_maps(4).into_iter().filter(|u| u.is_surjective()) {
        for s in u.dom().all_segments() {
            let overlap = brute_overlap(&u, &s);
            assert!(overlap <= 1);
            let images = u.cut_images(&s).unwrap();
            assert_eq!(images.overlap.is_some(), overlap == 1);
            assert!(segment_subset(&images.upper, &images.lower));
            assert_eq!(images.lower.cutoff - images.upper.cutoff, overlap);
        }
    }
}

#[test]
fn reconstruction_is_an_isomorphism() {
    for n in 1..=8 {
        let chain = FiniteChain::new(n);
        let rec = reconstruct(chain);
        assert!(rec.is_order_isomorphism(), "n = {n}");
        let succ = successors(chain);
        assert_eq!(succ.len(), n - 1);
        for (i, seg) in rec.images.iter().enumerate() {
            let expected = succ.iter().filter(|&&s| s <= i).count();
            assert_eq!(seg.cutoff, expected);
        }
    }
}

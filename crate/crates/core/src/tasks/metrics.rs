//! Ranking metrics for link prediction. `hits[i]` says whether the node at
//! rank `i + 1` is a hidden neighbor of the query.

use super::LinkRanking;

/// Fraction of hits among the first `k` ranks. Ranks past the end of the
/// list count as misses.
pub fn precision_at_k(hits: &[bool], k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    hits.iter().take(k).filter(|&&h| h).count() as f64 / k as f64
}

/// Mean of Precision@i over the ranks `i` that hold a hit; `None` without
/// any hit.
pub fn average_precision(hits: &[bool]) -> Option<f64> {
    let mut found = 0usize;
    let mut sum = 0.0;
    for (i, &h) in hits.iter().enumerate() {
        if h {
            found += 1;
            sum += found as f64 / (i + 1) as f64;
        }
    }
    (found > 0).then(|| sum / found as f64)
}

/// Mean of per-query average precision. Queries whose hidden neighbors
/// never show up in their candidate list contribute 0.
pub fn mean_average_precision(aps: &[f64]) -> f64 {
    if aps.is_empty() {
        0.0
    } else {
        aps.iter().sum::<f64>() / aps.len() as f64
    }
}

/// MAP over all queries of a ranking.
pub fn map_score(ranking: &LinkRanking) -> f64 {
    let aps: Vec<f64> = ranking
        .queries
        .iter()
        .map(|q| average_precision(&q.hits()).unwrap_or(0.0))
        .collect();
    mean_average_precision(&aps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn precision_examples() {
        assert_eq!(precision_at_k(&[true, true, true], 3), 1.0);
        assert_eq!(precision_at_k(&[false, false, false, true], 3), 0.0);
        assert_eq!(precision_at_k(&[true, false, true], 3), 2.0 / 3.0);
        assert_eq!(precision_at_k(&[true], 4), 0.25);
    }

    #[test]
    fn ap_examples() {
        assert_eq!(average_precision(&[true, false, false]), Some(1.0));
        for r in 1..20 {
            let mut hits = vec![false; 25];
            hits[r - 1] = true;
            assert_eq!(average_precision(&hits), Some(1.0 / r as f64));
        }
        let ap = average_precision(&[true, false, true, false]).unwrap();
        assert!((ap - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(average_precision(&[false, false]), None);
    }

    #[test]
    fn map_examples() {
        assert_eq!(mean_average_precision(&[1.0, 1.0, 1.0]), 1.0);
        assert_eq!(mean_average_precision(&[1.0, 0.5]), 0.75);
    }

    proptest! {
        #[test]
        fn ap_bounds_and_prefix(hits in proptest::collection::vec(any::<bool>(), 1..40)) {
            if let Some(ap) = average_precision(&hits) {
                prop_assert!((0.0..=1.0 + 1e-15).contains(&ap));
                let n = hits.iter().filter(|&&h| h).count();
                let prefix = hits.iter().take(n).all(|&h| h);
                prop_assert_eq!(prefix, (ap - 1.0).abs() < 1e-12);
            }
        }
    }
}

//! Shared-nothing index-range partitioning for the enumeration kernels.
//!
//! Every parallel result here is a sum or a minimum over per-range results,
//! so the merged value is identical for any worker count.

use std::ops::Range;

/// Split [0, total) into at most `workers` contiguous non-empty ranges.
pub fn split_ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    let workers = workers.max(1) as u64;
    if total == 0 {
        return Vec::new();
    }
    let chunks = workers.min(total);
    let base = total / chunks;
    let extra = total % chunks;
    let mut ranges = Vec::with_capacity(chunks as usize);
    let mut start = 0u64;
    for i in 0..chunks {
        let len = base + u64::from(i < extra);
        ranges.push(start..start + len);
        start += len;
    }
    ranges
}

/// Sum `count(range)` over a partition of [0, total).
pub fn sum_partitioned<F>(total: u64, workers: usize, count: F) -> u64
where
    F: Fn(Range<u64>) -> u64 + Sync,
{
    let ranges = split_ranges(total, workers);
    if ranges.len() <= 1 {
        return ranges.into_iter().map(&count).sum();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| count(r)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker")).sum()
    })
}

/// Find the item with the smallest enumeration index over a partition of
/// [0, total); `find(range)` returns the first hit inside its range.
pub fn first_partitioned<T, F>(total: u64, workers: usize, find: F) -> Option<(u64, T)>
where
    T: Send,
    F: Fn(Range<u64>) -> Option<(u64, T)> + Sync,
{
    let ranges = split_ranges(total, workers);
    if ranges.len() <= 1 {
        return ranges.into_iter().find_map(&find);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| find(r)))
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("worker"))
            .min_by_key(|(idx, _)| *idx)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_without_overlap() {
        for total in [0u64, 1, 7, 100] {
            for workers in [1usize, 2, 3, 8, 200] {
                let ranges = split_ranges(total, workers);
                let mut next = 0u64;
                for r in &ranges {
                    assert_eq!(r.start, next);
                    assert!(r.end > r.start);
                    next = r.end;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn partitioned_sum_matches_serial() {
        let count = |r: Range<u64>| r.filter(|i| i % 3 == 0).count() as u64;
        let serial = sum_partitioned(1000, 1, count);
        for workers in [2, 5, 8] {
            assert_eq!(sum_partitioned(1000, workers, count), serial);
        }
    }

    #[test]
    fn first_hit_is_globally_minimal() {
        let find = |r: Range<u64>| r.into_iter().find(|i| i % 97 == 3).map(|i| (i, i * 2));
        for workers in [1, 2, 8] {
            assert_eq!(first_partitioned(1000, workers, find), Some((3, 6)));
        }
    }
}

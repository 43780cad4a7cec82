use crate::group::HElem;

use super::PathError;

/// Segments in a shortest path from the origin to `(q, r)`.
pub fn dpath_min_length(q: i64, r: i64) -> i64 {
    (q + r).abs() + (q - r).abs()
}

/// Length of the shortest walk on the integer line from 0 that visits every
/// point of `points` and stops at `end`.
pub fn cover_cost(points: &[i64], end: i64) -> i64 {
    let m = points.iter().copied().chain([0, end]).min().expect("nonempty");
    let big = points.iter().copied().chain([0, end]).max().expect("nonempty");
    let low_first = -m + (big - m) + (big - end);
    let high_first = big + (big - m) + (end - m);
    low_first.min(high_first)
}

fn parts(g: &HElem) -> Result<(i64, i64), PathError> {
    if g.is_a() {
        return Err(PathError::ExcludedElement);
    }
    let (q, r) = (g.pos.0 as i64, g.pos.1 as i64);
    let w = cover_cost(&g.lamps.to_vec(), q + r);
    Ok((w, (q - r).abs()))
}

/// Word length over `C`: each move changes `q + r` and `q - r` by one each.
pub fn d_c_analytic(g: &HElem) -> Result<i64, PathError> {
    let (w, e) = parts(g)?;
    Ok(w.max(e))
}

/// Word length over `D`: half the segment count of the cheapest D-path.
pub fn d_d_analytic(g: &HElem) -> Result<i64, PathError> {
    let (w, e) = parts(g)?;
    debug_assert_eq!((w + e) % 2, 0);
    Ok((w + e) / 2)
}

#[cfg(test)]
mod tests {
    use std::collections::VecDeque;

    use rustc_hash::FxHashMap;

    use super::*;
    use crate::group::{special_h, Group, HGroup};
    use crate::lamp::LaurentPolyZ2;

    /// Breadth-first search over single segments in the `(d, e)` lattice.
    fn segment_search(target: (i64, i64), bound: i64) -> i64 {
        let mut dist = FxHashMap::default();
        dist.insert((0i64, 0i64), 0i64);
        let mut queue = VecDeque::from([(0i64, 0i64)]);
        while let Some((d, e)) = queue.pop_front() {
            let k = dist[&(d, e)];
            if (d, e) == target {
                return k;
            }
            for (dd, de) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let next = (d + dd, e + de);
                if next.0.abs() <= bound && next.1.abs() <= bound && !dist.contains_key(&next) {
                    dist.insert(next, k + 1);
                    queue.push_back(next);
                }
            }
        }
        unreachable!()
    }

    /// Brute-force cover cost by search over (position, visited mask).
    fn cover_oracle(points: &[i64], end: i64) -> i64 {
        let lo = points.iter().copied().chain([0, end]).min().unwrap() - 1;
        let hi = points.iter().copied().chain([0, end]).max().unwrap() + 1;
        let full = (1u32 << points.len()) - 1;
        let mask_at = |x: i64| {
            points
                .iter()
                .enumerate()
                .filter(|(_, &p)| p == x)
                .fold(0u32, |m, (i, _)| m | 1 << i)
        };
        let start = (0i64, mask_at(0));
        let mut dist = FxHashMap::default();
        dist.insert(start, 0i64);
        let mut queue = VecDeque::from([start]);
        while let Some((x, m)) = queue.pop_front() {
            let k = dist[&(x, m)];
            if x == end && m == full {
                return k;
            }
            for y in [x - 1, x + 1] {
                if y < lo || y > hi {
                    continue;
                }
                let state = (y, m | mask_at(y));
                if let std::collections::hash_map::Entry::Vacant(slot) = dist.entry(state) {
                    slot.insert(k + 1);
                    queue.push_back(state);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn min_length_examples() {
        assert_eq!(dpath_min_length(0, 0), 0);
        assert_eq!(dpath_min_length(3, 1), 6);
        for q in -6..=6 {
            for r in -6..=6 {
                assert_eq!(dpath_min_length(q, r), segment_search((q + r, q - r), 14));
            }
        }
    }

    #[test]
    fn cover_cost_matches_search() {
        let sets: &[&[i64]] = &[&[], &[3], &[-2], &[-2, 4], &[1, 2, 5], &[-5, -1, 3], &[0]];
        for points in sets {
            for end in -6..=6 {
                assert_eq!(cover_cost(points, end), cover_oracle(points, end), "{points:?} {end}");
            }
        }
    }

    #[test]
    fn analytic_examples() {
        let t3u = HGroup.eval(&"t^3u".parse().unwrap()).unwrap();
        assert_eq!(d_d_analytic(&t3u).unwrap(), 3);
        assert_eq!(d_c_analytic(&HElem::identity()).unwrap(), 0);
        assert_eq!(d_d_analytic(&HElem::identity()).unwrap(), 0);
        for n in 1..=50 {
            assert_eq!(d_c_analytic(&special_h(n).unwrap()).unwrap(), 4 * n);
        }
        let a = HElem::new(LaurentPolyZ2::one(), (0, 0));
        assert_eq!(d_c_analytic(&a), Err(PathError::ExcludedElement));
        assert_eq!(d_d_analytic(&a), Err(PathError::ExcludedElement));
    }
}

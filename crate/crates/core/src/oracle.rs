//! Reference computations that share no code with the engine.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

/// Values reachable as sums of exactly `k` terms from `±{n, n+1}`: the union
/// over the number `j` of positive terms of one integer interval each.
fn consecutive_sums(n: i64, k: i64) -> Vec<(i64, i64)> {
    (0..=k)
        .map(|j| (j * n - (k - j) * (n + 1), j * (n + 1) - (k - j) * n))
        .collect()
}

/// Word length of `x` in `Z` over `{n, n+1}`, `n >= 1`.
pub fn z_consecutive_distance(x: i64, n: i64) -> i64 {
    assert!(n >= 1);
    (0..)
        .find(|&k| consecutive_sums(n, k).iter().any(|&(lo, hi)| lo <= x && x <= hi))
        .expect("every integer is reachable")
}

/// Dead-end depth of `g` in `Z` over `{n, n+1}` by search over the
/// displacement length `j`.
pub fn z_consecutive_depth(g: i64, n: i64) -> i64 {
    let here = z_consecutive_distance(g, n);
    for j in 1.. {
        let reach = j * (n + 1);
        let found = (-reach..=reach)
            .filter(|&y| z_consecutive_distance(y, n) == j)
            .any(|y| z_consecutive_distance(g + y, n) > here);
        if found {
            return j;
        }
    }
    unreachable!()
}

/// Word length of `x` in `Z` over an arbitrary finite set, by breadth-first
/// search in a window large enough to contain some geodesic.
pub fn z_distance(x: i64, gens: &[i64]) -> Option<i64> {
    let big = gens.iter().map(|g| g.abs()).max()?;
    let bound = x.abs() + 2 * big * big + big;
    let mut dist = FxHashMap::default();
    dist.insert(0i64, 0i64);
    let mut queue = VecDeque::from([0i64]);
    while let Some(y) = queue.pop_front() {
        let k = dist[&y];
        if y == x {
            return Some(k);
        }
        for &g in gens {
            for z in [y + g, y - g] {
                if z.abs() <= bound && !dist.contains_key(&z) {
                    dist.insert(z, k + 1);
                    queue.push_back(z);
                }
            }
        }
    }
    None
}

/// Fewest unit steps in the `(q+r, q-r)` lattice from the origin to the
/// image of `(q, r)`, by breadth-first search.
pub fn dpath_search(q: i64, r: i64) -> i64 {
    let target = (q + r, q - r);
    let bound = target.0.abs().max(target.1.abs()) + 2;
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
    unreachable!("the target lies inside the window")
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    #[test]
    fn consecutive_examples() {
        assert_eq!(z_consecutive_distance(0, 2), 0);
        assert_eq!(z_consecutive_distance(1, 2), 2);
        assert_eq!(z_consecutive_depth(1, 2), 2);
        for n in 2..=12 {
            assert_eq!(z_consecutive_distance((n + 1) / 2, n), n);
        }
    }

    proptest! {
        #[test]
        fn interval_form_matches_search(x in -80i64..80, n in 1i64..7) {
            prop_assert_eq!(Some(z_consecutive_distance(x, n)), z_distance(x, &[n, n + 1]));
        }
    }

    #[test]
    fn dpath_search_examples() {
        assert_eq!(dpath_search(0, 0), 0);
        assert_eq!(dpath_search(1, 0), 2);
        assert_eq!(dpath_search(2, -2), 4);
    }
}

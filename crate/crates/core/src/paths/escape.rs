use serde::{Deserialize, Serialize};

use crate::engine::{Convention, DistMap};
use crate::group::{Group, Word};

use super::PathError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeMove {
    pub label: String,
    pub distance_before: u32,
    pub distance_after: u32,
}

/// A move `x ∈ {ut^-1, tu^-1}` with `d(1, x∘g) = d(1, g) + 1`, where `x∘g`
/// multiplies on the side given by the table's convention.
///
/// An element missing from the table is at distance `R + 1` when `g` lies
/// on the outer sphere, since one move changes distance by at most one.
pub fn escape_move<G: Group>(
    group: &G,
    g: &G::Elem,
    dm: &DistMap<G::Elem>,
) -> Result<EscapeMove, PathError> {
    let d = dm.get(g).ok_or_else(|| {
        PathError::BallTooSmall(format!("{} is beyond radius {}", group.serialize(g), dm.radius))
    })?;
    for label in ["ut^-1", "tu^-1"] {
        let x = group.eval(&label.parse::<Word>()?)?;
        let moved = match dm.convention {
            Convention::LeftMult => group.mul(&x, g),
            Convention::RightMult => group.mul(g, &x),
        };
        let after = match dm.get(&moved) {
            Some(k) => k,
            None if d == dm.radius => d + 1,
            None => unreachable!("ball tables are closed under single moves"),
        };
        if after == d + 1 {
            return Ok(EscapeMove {
                label: label.to_string(),
                distance_before: d,
                distance_after: after,
            });
        }
    }
    Err(PathError::NoEscape(group.serialize(g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{ball, Limits};
    use crate::group::{GenSet, HElem, HGroup};

    #[test]
    fn identity_and_a() {
        let dm = ball(&HGroup, &GenSet::d(), 3, Convention::LeftMult, &Limits::default()).unwrap();
        let m = escape_move(&HGroup, &HElem::identity(), &dm).unwrap();
        assert_eq!(m.distance_after, 1);
        let a = HGroup.eval(&"a".parse().unwrap()).unwrap();
        assert!(matches!(escape_move(&HGroup, &a, &dm), Err(PathError::NoEscape(_))));
        for (g, _) in dm.iter() {
            if !g.is_a() {
                escape_move(&HGroup, g, &dm).unwrap();
            }
        }
    }
}

//! The anchored-arc dendrite and its arc-shift self-map.
//!
//! The space is the unit baseline segment with a vertical arc of length
//! `1/n` attached at every anchor `a_k` (where `n = level_of(k)`); anchors
//! enumerate all odd dyadics level by level, so the arc attachment points
//! are dense in the baseline. The self-map fixes the baseline pointwise and
//! folds each arc: the lower half of arc `k` (below the midpoint `1/(2n)`)
//! maps onto the baseline between `a_k` and `a_{k+1}`, while the upper half
//! maps onto the next arc, scaled to its full length. Iterating therefore
//! shifts arc tips along the chain of successor tips while every baseline
//! point stays fixed, with all arithmetic exact.

use crate::rational;
use crate::spaces::{dendrite_anchor, level_of, DendritePoint};

/// The arc-shift self-map of the dendrite. Stateless; exists as a type so
/// callers can treat it uniformly with parametrised maps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct F0Map;

impl F0Map {
    /// Apply the map once. Exact; total on valid points.
    pub fn eval(&self, p: &DendritePoint) -> DendritePoint {
        match p {
            DendritePoint::Baseline(t) => DendritePoint::Baseline(t.clone()),
            DendritePoint::Arc { k, height } => {
                let n = level_of(*k) as i64;
                let half = rational::rat(1, 2 * n);
                if *height <= half {
                    // Lower half: slide along the baseline from a_k to a_{k+1}.
                    let ak = dendrite_anchor(*k);
                    let ak1 = dendrite_anchor(*k + 1);
                    let s = height / &half;
                    DendritePoint::Baseline(&ak + s * (ak1 - &ak))
                } else {
                    // Upper half: climb the next arc, rescaled to length 1/m.
                    let m = level_of(*k + 1) as i64;
                    let s = (height - &half) / &half;
                    let new_height = s * rational::rat(1, m);
                    DendritePoint::arc(*k + 1, new_height)
                        .expect("rescaled height stays within the next arc")
                }
            }
        }
    }

    /// Forward orbit `[p, f(p), ..., f^n(p)]`, exact at every step.
    pub fn orbit(&self, p: &DendritePoint, n: usize) -> Vec<DendritePoint> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(p.clone());
        for _ in 0..n {
            let next = self.eval(out.last().expect("orbit is nonempty"));
            out.push(next);
        }
        out
    }

    /// True iff the point is fixed, decided exactly.
    pub fn is_fixed(&self, p: &DendritePoint) -> bool {
        self.eval(p) == *p
    }
}

/// The far endpoint (tip) of arc `k`: height exactly `1/level_of(k)`.
pub fn arc_tip(k: u64) -> DendritePoint {
    let n = level_of(k) as i64;
    DendritePoint::arc(k, rational::rat(1, n)).expect("full arc height is always valid")
}

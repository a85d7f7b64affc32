//! The path-star family: a path on `n - g` vertices with `g` extra pendant
//! vertices attached to the far end of the path, under the canonical
//! labeling (spine `1..=n-g`, pendants `n-g+1..=n`).
//!
//! Closed forms for the three middle parts and for the center–core and
//! centroid–core distances hold for the family members with `n >= 5` and
//! `2 <= g <= n - 3`; those operations reject parameters outside that range
//! rather than extrapolating.

// the case splits stay in the literal shape of the closed formulas
#![allow(
    clippy::manual_is_multiple_of,
    clippy::manual_div_ceil,
    clippy::manual_range_contains,
    clippy::int_plus_one,
    clippy::implicit_saturating_sub
)]

use num_bigint::BigUint;
use num_traits::One;

use crate::count::Count;
use crate::error::{Error, Result};
use crate::tree::{MiddleKind, MiddleSet, Tree};

/// Input cap: `2^g` is exact big-integer arithmetic, but orders themselves
/// stay within `u32` range.
const MAX_ORDER: usize = 1 << 31;

/// The pair `(n, g)`: total vertex count and pendant count at the spine end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PathStarParams {
    n: usize,
    g: usize,
}

/// The threshold pendant count for order `n`: the smallest positive `g0`
/// with `2^g0 + g0 > n - 1`, which parameterizes the extremal family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaThreshold {
    pub n: usize,
    pub g0: usize,
}

/// `2^g + 1 > bound`, without overflow for any `g`.
fn pow2_plus_one_exceeds(g: usize, bound: usize) -> bool {
    if g >= 63 {
        return true;
    }
    (1u128 << g) + 1 > bound as u128
}

impl PathStarParams {
    /// Validates `n >= 2` and `1 <= g <= n - 1`.
    pub fn new(n: usize, g: usize) -> Result<Self> {
        if n < 2 || n > MAX_ORDER {
            return Err(Error::InvalidParams {
                reason: format!("order n={n} outside 2..=2^31"),
            });
        }
        if g == 0 || g > n - 1 {
            return Err(Error::InvalidParams {
                reason: format!("pendant count g={g} outside 1..={} for n={n}", n - 1),
            });
        }
        Ok(PathStarParams { n, g })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// Spine length `n - g`: the pendants attach at this vertex.
    pub fn spine_len(&self) -> usize {
        self.n - self.g
    }

    /// Whether the closed forms apply: `n >= 5` and `2 <= g <= n - 3`.
    pub fn in_gamma(&self) -> bool {
        self.n >= 5 && self.g >= 2 && self.g <= self.n - 3
    }

    fn require_gamma(&self) -> Result<()> {
        if !self.in_gamma() {
            return Err(Error::InvalidParams {
                reason: format!(
                    "closed forms need n >= 5 and 2 <= g <= n - 3; got n={}, g={}",
                    self.n, self.g
                ),
            });
        }
        Ok(())
    }

    /// Builds the tree: spine `1..=n-g` with consecutive edges, pendants
    /// `n-g+1..=n` all adjacent to `n-g`. Accepts the full parameter range.
    pub fn build(&self) -> Tree {
        let spine = self.spine_len();
        let mut edges = Vec::with_capacity(self.n - 1);
        for i in 1..spine {
            edges.push((i, i + 1));
        }
        for leaf in spine + 1..=self.n {
            edges.push((spine, leaf));
        }
        Tree::from_edge_list(self.n, &edges).expect("path-star parameters build a valid tree")
    }

    /// Exact subtree count of spine vertex `i`: `i(n-g-i) + i*2^g`.
    pub fn spine_subtree_count(&self, i: usize) -> Result<Count> {
        let spine = self.spine_len();
        if i == 0 || i > spine {
            return Err(Error::IndexOutOfRange { i, max: spine });
        }
        let i_big = BigUint::from(i);
        let through_end = &i_big * (BigUint::one() << self.g);
        Ok(BigUint::from(i * (spine - i)) + through_end)
    }

    /// Exact subtree count of any pendant attached at the spine end:
    /// `1 + (n-g)*2^(g-1)`.
    pub fn leaf_subtree_count(&self) -> Count {
        BigUint::one() + BigUint::from(self.spine_len()) * (BigUint::one() << (self.g - 1))
    }

    /// Closed-form subtree core. Lies at the attachment vertex once the
    /// pendant bundle dominates (`2^g + 1 > n - g`), otherwise in the spine
    /// interior at `(n - g + 2^g) / 2`, split by parity.
    pub fn subtree_core_closed(&self) -> Result<MiddleSet> {
        self.require_gamma()?;
        let spine = self.spine_len();
        let members = if pow2_plus_one_exceeds(self.g, spine) {
            vec![spine]
        } else {
            let p = 1usize << self.g; // fits: 2^g <= spine - 1 < n
            if spine % 2 == 0 {
                vec![(spine + p) / 2]
            } else {
                vec![(spine - 1 + p) / 2, (spine + 1 + p) / 2]
            }
        };
        Ok(MiddleSet::new(MiddleKind::SubtreeCore, members))
    }

    /// Closed-form center, determined by the spine length alone.
    pub fn center_closed(&self) -> Result<MiddleSet> {
        self.require_gamma()?;
        let spine = self.spine_len();
        let members = if spine % 2 == 0 {
            vec![(spine + 2) / 2]
        } else {
            vec![(spine + 1) / 2, (spine + 3) / 2]
        };
        Ok(MiddleSet::new(MiddleKind::Center, members))
    }

    /// Closed-form centroid: the middle of the whole order `n` while the
    /// pendant bundle is light, else the attachment vertex.
    pub fn centroid_closed(&self) -> Result<MiddleSet> {
        self.require_gamma()?;
        let members = if self.n % 2 == 1 {
            if self.g <= (self.n - 1) / 2 {
                vec![(self.n + 1) / 2]
            } else {
                vec![self.spine_len()]
            }
        } else if self.g <= self.n / 2 - 1 {
            vec![self.n / 2, self.n / 2 + 1]
        } else {
            vec![self.spine_len()]
        };
        Ok(MiddleSet::new(MiddleKind::Centroid, members))
    }

    /// Closed-form distance between center and subtree core.
    pub fn center_core_distance_closed(&self) -> Result<usize> {
        self.require_gamma()?;
        let spine = self.spine_len();
        let value = if pow2_plus_one_exceeds(self.g, spine) {
            if spine % 2 == 0 {
                (spine - 2) / 2
            } else {
                (spine - 3) / 2
            }
        } else {
            let half = 1usize << (self.g - 1);
            if spine % 2 == 0 {
                half - 1
            } else {
                half - 2
            }
        };
        Ok(value)
    }

    /// Closed-form distance between centroid and subtree core.
    pub fn centroid_core_distance_closed(&self) -> Result<usize> {
        self.require_gamma()?;
        let spine = self.spine_len();
        let value = if pow2_plus_one_exceeds(self.g, spine) {
            // both middles sit left of or at the attachment vertex
            if self.n % 2 == 1 {
                if self.g <= (self.n - 1) / 2 {
                    (self.n - 1) / 2 - self.g
                } else {
                    0
                }
            } else if self.g <= self.n / 2 - 1 {
                self.n / 2 - 1 - self.g
            } else {
                0
            }
        } else {
            // parity coupling of n and g keeps every numerator even and >= 0
            let p = 1i128 << self.g;
            let numer = if self.n % 2 == 1 {
                if spine % 2 == 0 {
                    p - self.g as i128 - 1
                } else {
                    p - self.g as i128 - 2
                }
            } else if spine % 2 == 0 {
                p - self.g as i128 - 2
            } else {
                p - self.g as i128 - 3
            };
            debug_assert!(numer >= 0 && numer % 2 == 0);
            (numer / 2) as usize
        };
        Ok(value)
    }

    /// True when every centroid vertex lies on some path between a center
    /// vertex and a subtree-core vertex. Holds for every family member with
    /// closed forms; computed directly on the built tree.
    pub fn centroid_between(&self) -> bool {
        crate::extremal::centroid_between(&self.build())
    }
}

/// The smallest positive `g0` with `2^g0 + g0 > n - 1`, by ascending scan.
pub fn gamma_threshold(n: usize) -> Result<GammaThreshold> {
    if n < 5 {
        return Err(Error::InvalidParams {
            reason: format!("threshold needs n >= 5, got {n}"),
        });
    }
    let target = (n - 1) as u128;
    let g0 = (1usize..)
        .find(|&g| (1u128 << g) + g as u128 > target)
        .unwrap();
    Ok(GammaThreshold { n, g0 })
}

/// Upper bound for the center–core distance over all trees of order `n`:
/// `floor((n - g0) / 2) - 1`.
pub fn center_core_distance_bound(n: usize) -> Result<usize> {
    let g0 = gamma_threshold(n)?.g0;
    Ok((n - g0) / 2 - 1)
}

/// Upper bound for the centroid–core distance over all trees of order `n`:
/// `floor((n - 1) / 2) - g0`.
pub fn centroid_core_distance_bound(n: usize) -> Result<usize> {
    let g0 = gamma_threshold(n)?.g0;
    let bound = (n - 1) / 2 - g0.min((n - 1) / 2);
    debug_assert!((n - 1) / 2 >= g0);
    Ok(bound)
}

//! Geometry of the parametrized configuration space: projection frames,
//! strata `A_{j,t}`, generalized orderings, and the clearance functions used
//! by the deformations.

mod clearance;
mod frame;
mod query;
mod strata;

use num_bigint::BigUint;

pub use clearance::{clearance_eta, min_gap, Side};
pub use frame::{make_frame, tangent_field, Frame, FrameMode};
pub use query::ConfigurationQuery;
pub use strata::{classify, orderings, side_orderings, OrderingPair, PatternKey, RegionLabel, Token};

pub(crate) use strata::Ranks;

/// Number of connected components of the generic stratum `A_{2n,m}`:
/// ordered pairs of orderings of `n + m` symbols that agree on the
/// obstacles, `((n+m)!)^2 / m!`.
pub fn component_count(n: u32, m: u32) -> BigUint {
    let factorial = |k: u32| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i);
    let f = factorial(n + m);
    &f * &f / factorial(m)
}

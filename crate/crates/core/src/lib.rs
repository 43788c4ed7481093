//! Motion planning for `n` point robots among `m` point obstacles in `R^d`.
//!
//! A query fixes start positions, goal positions and obstacle positions. The
//! planner projects everything onto a line, reads off the stratum `A_{j,t}`
//! the query lies in, and returns an exact piecewise path (segments and half
//! circles with rational time bounds) that keeps every robot away from the
//! others and from every obstacle. Queries in the same domain `W_c = ⋃ A_{j,t}`
//! (`c = j + t`) are handled by one continuous rule.
//!
//! ```
//! use parammp::{plan, PlanOptions, Point, Query};
//!
//! let q = Query::new(
//!     2,
//!     vec![Point::new(vec![0.0, 1.0])],
//!     vec![Point::new(vec![4.0, 1.0])],
//!     vec![Point::new(vec![2.0, 0.0])],
//! )
//! .unwrap();
//! let result = plan(&q, &PlanOptions::default()).unwrap();
//! assert_eq!(result.path.position(0, 1.0), q.goals()[0]);
//! assert!(parammp::certify_separation(&result.path, 64).pass);
//! ```

pub mod config_space;
pub mod deformation;
pub mod error;
pub mod io;
pub mod path;
pub mod planner;
pub mod point;
pub mod scalar;
pub mod verification;

pub use config_space::{
    classify, clearance_eta, component_count, make_frame, min_gap, orderings, ConfigurationQuery, Frame, FrameMode,
    OrderingPair, RegionLabel, Side, Token,
};
pub use deformation::{
    affine_section, compose_with_section, desingularization_step, desingularize, swap_case_a, swap_case_b,
    Deformation, Stage,
};
pub use error::{Error, Issue, Result};
pub use path::{PathSegment, PiecewisePath, SegmentKind, Snapshot, Time};
pub use planner::{generic_section, plan, transposition_sequence, PlanOptions, PlanResult, Planner, Swap};
pub use point::Point;
pub use scalar::{Field, Real};
pub use verification::{certify_separation, classify_oracle, evaluate_path, SeparationCertificate};

pub type Query = ConfigurationQuery<f64>;
pub type Path = PiecewisePath<f64>;
pub type Plan = PlanResult<f64>;
pub type Certificate = SeparationCertificate<f64>;

pub type Query32 = ConfigurationQuery<f32>;
pub type Path32 = PiecewisePath<f32>;
pub type Plan32 = PlanResult<f32>;

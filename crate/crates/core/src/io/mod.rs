//! JSON problem and plan documents, CSV sampling and SVG rendering.

mod plan;
mod problem;
mod svg;

pub use plan::{
    parse_plan, parse_plan_document, sample_csv, serialize_plan, ExactTime, FrameDocument, OrderingDocument,
    PlanDocument, SegmentDocument, DEFAULT_CSV_SAMPLES,
};
pub use problem::{
    parse_problem, serialize_problem, ProblemDocument, ProblemOptions, DEFAULT_SAMPLES_PER_SEGMENT, FORMAT_VERSION,
};
pub use svg::{drawing_coordinates, render_svg};

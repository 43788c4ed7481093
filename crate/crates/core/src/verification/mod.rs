//! Independent checks on planner output: separation certificates, partition
//! and continuity probes, random query generators and an exact classifier.

mod certificate;
mod oracle;
mod probes;
mod sampling;

pub use certificate::{certify_separation, sampled_min_distance, PairBound, PairKind, SeparationCertificate};
pub use oracle::{classify_oracle, random_rational_query, to_rational, Rational};
pub use probes::{check_partition, check_strata, continuity_probe, evaluate_path, PartitionReport};
pub use sampling::{random_query, seeded_rng, stratum_query, StratumSpec, DEFAULT_RANGE};

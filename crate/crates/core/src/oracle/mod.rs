//! Independent checks: brute-force searches, inequality slack, randomized
//! campaigns and amenability certificates.

mod amenability;
mod brute_force;
mod fuzz;
pub mod random;
mod slack;

pub use amenability::{amenability_check, extreme_defect, AmenabilityReport, AMENABILITY_TOL};
pub use brute_force::{brute_force_lambda, BruteForceOutcome, SearchBudget, MAX_OPERATOR_DIM};
pub use fuzz::{
    run_campaign, sampled_minimum, CampaignConfig, CampaignKind, CampaignSummary, FailureDump,
    TrialRecord, MAX_CAMPAIGN_DIM, ORTHOGONALITY_TOL, SLACK_TOL,
};
pub use slack::{markus_singular_slack, markus_slack, mirsky_slack, SlackReport};

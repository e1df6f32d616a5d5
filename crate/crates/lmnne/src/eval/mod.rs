//! Evaluation protocols: link prediction ranking (raw/filtered, overall
//! and per mapping category), triplet classification with per-relation
//! thresholds, and parameter complexity reporting.

pub mod classify;
pub mod complexity;
pub mod ranking;
pub mod report;

pub use classify::{
    make_tc_negatives, tc_classify, tc_evaluate, tc_threshold_search, GeneratedNegatives,
    PositionIndex, TcMetrics, TcThresholds,
};
pub use complexity::{complexity_table, param_complexity, ComplexityInput, ComplexityModel};
pub use ranking::{
    link_prediction_eval, rank_all, rank_triple, CategoryBreakdown, CategoryCell,
    LinkPredMetrics, RankContext, RankResult, Side,
};
pub use report::{ComplexityReport, LinkPredReport, StatsReport, TcReport};

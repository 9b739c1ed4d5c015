//! Plays and their values, the lifting history, and reference solvers used
//! to cross-check the lifting algorithms.

mod lhg;
mod odd_response;
mod oracle;
mod value;
mod zielonka;

pub use lhg::{check_cycle_decrease, check_snapshot_laws, record_lhg, LawViolation, LhNode, LiftHistory, NodeId, TraceRecord};
pub use odd_response::{
    all_transcripts, odd_response, transcript_meets_bound, OddResponse, OddResponseError, StateKey, Step, TermCond,
    Termination, Transcript,
};
pub use oracle::{brute_force_values, brute_force_values_bounded, OracleError, DEFAULT_VERTEX_BOUND, STRATEGY_BOUND};
pub use value::{finite_play_value, lasso_value, play_value, LassoPlay, PlayError};
pub use zielonka::zielonka;

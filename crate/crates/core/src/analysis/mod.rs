//! Gate-orphan detection, indication classification, cost metrics and report rendering.

mod cost;
mod indication;
mod orphans;
pub mod report;

pub use cost::{estimate_cost, CostReport, CostSource, GateCount};
pub use indication::{classify_indication, IndicationClass, IoClass, SubsetMode, Witness};
pub use orphans::{
    detect_orphans, orphan_summary, GateTransition, OrphanReport, OrphanTable, PhaseOrphans, DEFAULT_ANALYSIS_CAP,
};

use crate::sim::SimError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("n={n} exceeds the analysis cap of {cap}: exhaustive analysis enumerates 2^{n} = {rows} codewords")]
    CapExceeded { n: usize, cap: usize, rows: u64 },
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<(), AnalysisError> {
    if n > cap {
        return Err(AnalysisError::CapExceeded { n, cap, rows: 1u64 << n });
    }
    Ok(())
}

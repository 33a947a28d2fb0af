//! Dual-rail quasi-delay-insensitive combinational logic toolkit.
//!
//! Synthesizes a single-output Boolean function into a dual-rail C-element/OR
//! netlist by three routes:
//!
//! * **DIMS**: one C-element per minterm, OR-merged per output rail.
//! * **Factored DIMS**: a reconstruction of the "factorized DIMS" heuristic that
//!   shares OR gates across product terms. Functionally correct, but it leaves
//!   unacknowledged gate transitions (gate orphans).
//! * **Safe decomposition**: extracts literals shared by minterm pairs into a
//!   C-element that forks isochronously into one C-element per rail of the
//!   remaining variable. Orphan-free.
//!
//! Netlists are simulated under four-phase return-to-zero signalling with unit
//! gate delays ([`sim`]), and [`analysis`] detects gate orphans, classifies
//! input/output indication and reports synthesis cost.
//!
//! ```
//! use qdisynth::prelude::*;
//!
//! let and3 = BooleanFunction::and(3).unwrap();
//! let circuit = synth_safe(&and3, &SynthOptions::default()).unwrap().validate().unwrap();
//! let table = orphan_summary(&circuit, DEFAULT_ANALYSIS_CAP).unwrap();
//! assert_eq!(table.orphan_rows(Phase::Set), 0);
//! ```

pub mod analysis;
pub mod logic;
pub mod netlist;
pub mod sim;
pub mod synth;

pub mod prelude {
    pub use crate::analysis::{
        classify_indication, detect_orphans, estimate_cost, orphan_summary, CostReport, CostSource, IndicationClass,
        IoClass, OrphanReport, OrphanTable, SubsetMode, DEFAULT_ANALYSIS_CAP,
    };
    pub use crate::logic::{
        dual_rail_cover, eval_cover_pair, BooleanFunction, Codeword, CoverPair, DsopCover, FactoredExpr, ProductTerm,
        RailLiteral, Rails, VarSet,
    };
    pub use crate::netlist::{build_fixture, eval_netlist, Circuit, Fixture, GateKind, Netlist};
    pub use crate::sim::{apply_partial, simulate_transaction, Phase, PhaseTrace, Transaction};
    pub use crate::synth::{
        factored_to_netlist, fdims_factorize, safe_decompose, synth, synth_dims, synth_fdims, synth_safe, Method,
        SynthOptions,
    };
}

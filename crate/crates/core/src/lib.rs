//! Exact arithmetic for valued fields of positive characteristic and their
//! composed valuations.

pub mod detrand;
pub mod error;
pub mod field;
pub mod finite_field;
pub mod hahn;
pub mod oag;
pub mod perfect;
pub mod poly;
pub mod ratfun;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod valuation;
pub mod witt;

pub use detrand::DetRng;
pub use error::{Error, Result};
pub use field::{FieldElement, PerfectField, SquareTest};
pub use finite_field::{FFElt, FiniteField};
pub use hahn::{parse_hahn, Cutoff, HahnSeries};
pub use oag::groups::{GroupDesc, GroupElt, PointedGroup};
pub use oag::parse::parse_oag;
pub use oag::{ConvexSubgroup, OagElement};
pub use perfect::{PerfBase, PerfRatFn, TowerElt};
pub use poly::Poly;
pub use ratfun::RatFn;
pub use rational::{Int, Rat};
pub use report::{Claim, ClaimStatus, VerificationReport, REPORT_VERSION};
pub use scenario::{run_scenario, ScenarioParams, SCENARIO_IDS};
pub use valuation::quad::{omega_two, OmegaTwoClass, QuadCtx, QuadElt};
pub use valuation::towers::{BivariateTowers, HahnTowers};
pub use valuation::{
    check_distinguishing_witness, composed_group_shift_iso, pointed_divisibility_invariant,
    refute_distinguishing_sentence, ComposedValue, FineValuation, HahnCoarsening, ShiftIsoCheck,
    ValuationTower, VarAdic,
};
pub use witt::local::LocalWitt;
pub use witt::ramext::{RamExtCtx, RamExtElt};
pub use witt::{witt_polys, WittVec};

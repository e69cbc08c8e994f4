//! The cube-root tower A = A₀ ⊂ A₁ ⊂ A₂ ⊂ … over the twisted Fermat cubic,
//! graded valuations, low-valuation colon elements and the trace retraction.

pub mod bound;
pub mod colon;
pub mod level;
pub mod trace;
pub mod valuation;
pub mod verify;

pub use bound::{contradiction_bound, replay_bound, BoundReplay};
pub use colon::{colon_probe, cofactor_x1sq_y1sq_holds, witness_cofactors, z2_not_in_xy, ColonProbe};
pub use level::{build_level, Tower, TowerLevel};
pub use trace::{retract_to_base, retraction_properties, trace_retraction};
pub use valuation::{valuation, Valuation};
pub use verify::{decay_recurrence, level_checks, verify_level, IdentityCheck, LevelReport};

//! Anomaly pipelines: the 2d 4-cochain from truncations to a half plane, the
//! 1d 3-cochain from truncations to a half line, regauging of the 2d data,
//! and cochains attached to invariant product states.

mod classify;
mod one_d;
mod regauge;
mod spt;
mod two_d;

pub use classify::{identify_class, z2_characters, ClassMatch};
pub use one_d::{nayak_else_1d, Anomaly1dReport, TruncationData1d};
pub use regauge::{regauge_beta, regauge_rho, split_gamma};
pub use spt::{
    check_invariance, spt_relative_1d, spt_trivialize_2d, ProductState, ReferenceBasis, SptRelativeReport,
    SptTrivializeReport,
};
pub use two_d::{anomaly_2d, classify_tau, right_part, Anomaly2dReport, TruncationData2d};

use crate::circuits::CircuitAction;
use crate::error::{Error, Result};

/// Truncation pipelines need the window edge zone to absorb three ranges.
fn check_margin(action: &CircuitAction) -> Result<()> {
    let needed = 3 * action.range();
    if action.window.margin < needed {
        return Err(Error::InsufficientMargin { margin: action.window.margin, needed });
    }
    Ok(())
}

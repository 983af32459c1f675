use crate::error::{Error, Result};
use crate::lattice::{Region, Window};
use crate::symop::{Monomial, SymOp};

use super::circuit::Circuit;

/// A localized operator extracted from a window product, with the window-edge
/// debris that was cropped to obtain it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub op: SymOp,
    pub cropped: SymOp,
}

impl Collapse {
    /// Crops `product` to the region of interest. Monomials and flips lying
    /// entirely in the window edge zone are debris of the window truncation
    /// and are discarded; everything else must lie in `roi`. The constant
    /// term is dropped so the result is the canonical constant-free
    /// representative.
    pub fn localize(product: &SymOp, window: &Window, roi: &Region) -> Result<Collapse> {
        let mut op = SymOp::identity();
        let mut cropped = SymOp::identity();
        for m in product.poly.monomials() {
            if m.is_constant() {
                continue;
            }
            let gate = SymOp::diagonal([m.clone()]);
            if m.sites().iter().all(|s| window.in_edge_zone(s)) {
                cropped.poly.toggle(m.clone());
            } else if m.sites().iter().all(|s| roi.contains(s)) {
                op.poly.toggle(m.clone());
            } else {
                return Err(Error::NonCollapsing { content: gate.to_string() });
            }
        }
        for s in &product.flips {
            if window.in_edge_zone(s) {
                cropped.flips.insert(*s);
            } else if roi.contains(s) {
                op.flips.insert(*s);
            } else {
                return Err(Error::NonCollapsing { content: SymOp::x(*s).to_string() });
            }
        }
        debug_assert!(!op.poly.monomials().any(Monomial::is_constant));
        Ok(Collapse { op, cropped })
    }
}

/// Multiplies `c_1^{e_1} c_2^{e_2} ...` gate by gate (`e_i = -1` when the
/// flag is set) and localizes the result to `roi`.
pub fn product_collapse(parts: &[(&Circuit, bool)], roi: &Region) -> Result<Collapse> {
    let window = *parts.first().map(|(c, _)| c.window()).expect("at least one circuit");
    let mut acc = SymOp::identity();
    for (c, inverse) in parts {
        if *inverse {
            for g in c.inverse().gates() {
                acc.mul_assign(g);
            }
        } else {
            for g in c.gates() {
                acc.mul_assign(g);
            }
        }
    }
    Collapse::localize(&acc, &window, roi)
}

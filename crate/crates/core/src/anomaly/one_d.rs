use std::sync::Arc;

use serde::Serialize;

use crate::circuits::{product_collapse, Circuit, CircuitAction, Collapse};
use crate::error::{Error, Result};
use crate::groups::{Cochain, FiniteGroup, PhaseValue};
use crate::lattice::{Region, Window};
use crate::symop::SymOp;

/// Truncations of a chain action to the right half line and the
/// origin-local unitaries `nu(g,h)` with
/// `Ad nu(g,h) = rho(g) rho(h) rho(gh)^{-1}`.
#[derive(Clone, Debug)]
pub struct TruncationData1d {
    pub group: Arc<FiniteGroup>,
    pub window: Window,
    pub rho_tilde: Vec<Circuit>,
    pub nu: Vec<SymOp>,
    pub range: u32,
    pub log: Vec<String>,
}

impl TruncationData1d {
    pub fn disk(&self) -> Region {
        Region::origin_disk(2 * self.range + 1, 0)
    }

    pub fn build(action: &CircuitAction) -> Result<Self> {
        super::check_margin(action)?;
        let rho_tilde = action
            .circuits
            .iter()
            .map(|c| c.truncate(&Region::half_line_r(0)).instantiate())
            .collect::<Result<Vec<_>>>()?;
        let mut data = TruncationData1d {
            group: action.group.clone(),
            window: action.window,
            rho_tilde,
            nu: Vec::new(),
            range: action.range(),
            log: Vec::new(),
        };
        let g = data.group.clone();
        let disk = data.disk();
        for a in g.elements() {
            for b in g.elements() {
                let parts = [
                    (&data.rho_tilde[a], false),
                    (&data.rho_tilde[b], false),
                    (&data.rho_tilde[g.mul(a, b)], true),
                ];
                let Collapse { op, cropped } = product_collapse(&parts, &disk).map_err(|e| Error::Support {
                    what: format!("nu({},{})", g.name(a), g.name(b)),
                    detail: e.to_string(),
                })?;
                let n = cropped.poly.len() + cropped.flips.len();
                if n > 0 {
                    data.log.push(format!("nu({},{}): cropped {n} window-edge terms", g.name(a), g.name(b)));
                }
                data.nu.push(op);
            }
        }
        Ok(data)
    }

    pub fn nu(&self, g: usize, h: usize) -> &SymOp {
        &self.nu[g * self.group.order() + h]
    }

    /// `nu(g,h) nu(gh,k) nu(g,hk)^{-1} (rho(g) nu(h,k) rho(g)^{-1})^{-1}`,
    /// which must be a scalar.
    pub fn ell(&self, g: usize, h: usize, k: usize) -> Result<PhaseValue> {
        let grp = &self.group;
        let twisted = self.rho_tilde[g].conj(self.nu(h, k))?;
        let prod = self
            .nu(g, h)
            .mul(self.nu(grp.mul(g, h), k))
            .mul(&self.nu(g, grp.mul(h, k)).inv())
            .mul(&twisted.inv());
        prod.scalar_phase().ok_or_else(|| {
            Error::NotScalar(format!("ell({},{},{}) = {prod}", grp.name(g), grp.name(h), grp.name(k)))
        })
    }

    pub fn ell_cochain(&self) -> Result<Cochain> {
        let n = self.group.order();
        let mut values = Vec::with_capacity(n.pow(3));
        for i in 0..n.pow(3) {
            let t = self.group.tuple_at(i, 3);
            values.push(self.ell(t[0], t[1], t[2])?.in_modulus(2).expect("ell is a sign"));
        }
        Cochain::new(self.group.clone(), 3, 2, values)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Anomaly1dReport {
    #[serde(skip)]
    pub ell: Cochain,
    pub is_cocycle: bool,
    pub trivial: bool,
}

pub fn nayak_else_1d(action: &CircuitAction) -> Result<(TruncationData1d, Anomaly1dReport)> {
    if !action.is_1d() {
        return Err(Error::Support { what: "action".into(), detail: "the 1d pipeline needs a chain window".into() });
    }
    let data = TruncationData1d::build(action)?;
    let ell = data.ell_cochain()?;
    let is_cocycle = ell.is_cocycle();
    let trivial = ell.is_coboundary();
    Ok((data, Anomaly1dReport { ell, is_cocycle, trivial }))
}

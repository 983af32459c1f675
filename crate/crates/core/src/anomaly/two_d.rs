use std::sync::Arc;

use serde::Serialize;

use super::classify::{identify_class, ClassMatch};
use crate::circuits::{product_collapse, Circuit, CircuitAction, Collapse};
use crate::error::{Error, Result};
use crate::groups::{Cochain, FiniteGroup, PhaseValue};
use crate::lattice::{Region, Window};
use crate::pairing::{eta, LocalizedAutomorphism};
use crate::symop::SymOp;

/// Everything the 2d index needs: the truncations of the action to the upper
/// half plane, their failure `mu = alpha beta` to be a homomorphism, and the
/// origin-local unitaries `u`.
#[derive(Clone, Debug)]
pub struct TruncationData2d {
    pub group: Arc<FiniteGroup>,
    pub window: Window,
    pub rho_tilde: Vec<Circuit>,
    pub mu: Vec<SymOp>,
    pub alpha: Vec<SymOp>,
    pub beta: Vec<SymOp>,
    pub u: Vec<SymOp>,
    /// Range of the action; sets the strip and disk sizes used in
    /// localization.
    pub range: u32,
    /// Half-width of the strip around the boundary line holding `mu`.
    pub strip_width: u32,
    /// Radius of the disk around the origin holding `u`.
    pub disk_radius: u32,
    pub log: Vec<String>,
}

/// Right part of a boundary operator: the monomials and flips with every
/// site at `x >= 0`. Straddling content stays on the left.
pub fn right_part(op: &SymOp) -> SymOp {
    op.filter(|m| m.sites().iter().all(|s| s.x >= 0), |s| s.x >= 0)
}

impl TruncationData2d {
    pub fn idx2(&self, g: usize, h: usize) -> usize {
        g * self.group.order() + h
    }

    pub fn idx3(&self, g: usize, h: usize, k: usize) -> usize {
        (g * self.group.order() + h) * self.group.order() + k
    }

    pub fn mu(&self, g: usize, h: usize) -> &SymOp {
        &self.mu[self.idx2(g, h)]
    }

    pub fn alpha(&self, g: usize, h: usize) -> &SymOp {
        &self.alpha[self.idx2(g, h)]
    }

    pub fn beta(&self, g: usize, h: usize) -> &SymOp {
        &self.beta[self.idx2(g, h)]
    }

    pub fn u(&self, g: usize, h: usize, k: usize) -> &SymOp {
        &self.u[self.idx3(g, h, k)]
    }

    /// Strip around the boundary line that must contain every `mu`.
    pub fn strip(&self) -> Region {
        Region::boundary_line(self.strip_width)
    }

    /// Disk around the origin that must contain every `u`.
    pub fn disk(&self) -> Region {
        Region::origin_disk(self.disk_radius, 0)
    }

    /// Truncates the action to the upper half plane and extracts `mu`,
    /// `alpha`, `beta` and `u`.
    pub fn build(action: &CircuitAction) -> Result<Self> {
        super::check_margin(action)?;
        let window = action.window;
        let rho_tilde = action
            .circuits
            .iter()
            .map(|c| c.truncate(&Region::half_plane()).instantiate())
            .collect::<Result<Vec<_>>>()?;
        let mut data = TruncationData2d {
            group: action.group.clone(),
            window,
            rho_tilde,
            mu: Vec::new(),
            alpha: Vec::new(),
            beta: Vec::new(),
            u: Vec::new(),
            range: action.range(),
            strip_width: action.range().max(1),
            disk_radius: 2 * action.range() + 1,
            log: Vec::new(),
        };
        data.fill_mu()?;
        data.beta = data.mu.iter().map(right_part).collect();
        data.fill_alpha();
        data.fill_u()?;
        Ok(data)
    }

    fn fill_mu(&mut self) -> Result<()> {
        let g = self.group.clone();
        let strip = self.strip();
        self.mu.clear();
        for a in g.elements() {
            for b in g.elements() {
                let parts = [
                    (&self.rho_tilde[a], false),
                    (&self.rho_tilde[b], false),
                    (&self.rho_tilde[g.mul(a, b)], true),
                ];
                let Collapse { op, cropped } = product_collapse(&parts, &strip).map_err(|e| {
                    Error::Support { what: format!("mu({},{})", g.name(a), g.name(b)), detail: e.to_string() }
                })?;
                let n = cropped.poly.len() + cropped.flips.len();
                if n > 0 {
                    self.log.push(format!("mu({},{}): cropped {n} window-edge terms", g.name(a), g.name(b)));
                }
                self.mu.push(op);
            }
        }
        Ok(())
    }

    fn fill_alpha(&mut self) {
        self.alpha = self.mu.iter().zip(&self.beta).map(|(m, b)| m.mul(&b.inv())).collect();
    }

    /// `u(g,h,k)` from its defining product
    /// `beta(g,h) beta(gh,k) beta(g,hk)^{-1} rho(g) beta(h,k)^{-1} rho(g)^{-1}`,
    /// cropped to the origin disk.
    pub fn defining_u(&self, a: usize, b: usize, c: usize) -> Result<SymOp> {
        let g = &self.group;
        let twisted = self.rho_tilde[a].conj_unchecked(&self.beta(b, c).inv());
        let prod = self
            .beta(a, b)
            .mul(self.beta(g.mul(a, b), c))
            .mul(&self.beta(a, g.mul(b, c)).inv())
            .mul(&twisted);
        let Collapse { op, .. } = Collapse::localize(&prod, &self.window, &self.disk()).map_err(|e| {
            Error::Support { what: format!("u({},{},{})", g.name(a), g.name(b), g.name(c)), detail: e.to_string() }
        })?;
        Ok(op)
    }

    fn fill_u(&mut self) -> Result<()> {
        let g = self.group.clone();
        let n = g.order();
        self.u = (0..n * n * n)
            .map(|i| {
                let t = g.tuple_at(i, 3);
                self.defining_u(t[0], t[1], t[2])
            })
            .collect::<Result<_>>()?;
        Ok(())
    }

    /// Recomputes `alpha = mu beta^{-1}` after `beta` changed.
    pub(crate) fn refresh_alpha(&mut self) {
        self.fill_alpha();
    }

    pub(crate) fn refresh_mu(&mut self) -> Result<()> {
        self.fill_mu()
    }

    pub(crate) fn rho(&self, g: usize) -> &Circuit {
        &self.rho_tilde[g]
    }

    /// `rho(g) beta(h,k) rho(g)^{-1}` applied to a local operator.
    pub fn twisted_beta_apply(&self, g: usize, h: usize, k: usize, x: &SymOp) -> SymOp {
        let y = self.rho(g).inverse().conj_unchecked(x);
        self.rho(g).conj_unchecked(&y.conj(self.beta(h, k)))
    }

    /// The six factors of the 4-cochain at `(g,h,k,l)`, in order.
    pub fn tau_factors(&self, g: usize, h: usize, k: usize, l: usize) -> Result<[SymOp; 6]> {
        let grp = &self.group;
        let (gh, hk, kl) = (grp.mul(g, h), grp.mul(h, k), grp.mul(k, l));
        let f1 = self.u(g, h, k).clone();
        // rho(g) beta(h,k) rho(g)^{-1} applied to u(g,hk,l)
        let f2 = self.twisted_beta_apply(g, h, k, self.u(g, hk, l));
        let f3 = self.rho(g).conj_unchecked(self.u(h, k, l));
        // rho(g) rho(h) beta(k,l) rho(h)^{-1} rho(g)^{-1} applied to u(g,h,kl)^{-1}
        let f4 = {
            let x = self.u(g, h, kl).inv();
            let x = self.rho(h).inverse().conj_unchecked(&self.rho(g).inverse().conj_unchecked(&x));
            let x = x.conj(self.beta(k, l));
            self.rho(g).conj_unchecked(&self.rho(h).conj_unchecked(&x))
        };
        let f5 = {
            let second = self.rho(gh).conj_unchecked(self.beta(k, l)).conj(self.beta(g, h));
            let a = LocalizedAutomorphism::inner(self.alpha(g, h).clone(), Region::half_line_l(self.range + 1));
            let b = LocalizedAutomorphism::inner(second, Region::half_line_r(self.range + 1));
            eta(&a, &b, self.window)?
        };
        let f6 = self.u(gh, k, l).inv().conj(self.beta(g, h));
        Ok([f1, f2, f3, f4, f5, f6])
    }

    /// The 4-cochain value at `(g,h,k,l)`; the product of the six factors must
    /// be a scalar.
    pub fn tau4(&self, g: usize, h: usize, k: usize, l: usize) -> Result<PhaseValue> {
        let fs = self.tau_factors(g, h, k, l)?;
        let prod = SymOp::product(fs.iter());
        prod.scalar_phase().ok_or_else(|| {
            let n = &self.group;
            Error::NotScalar(format!(
                "tau({},{},{},{}) = {prod}",
                n.name(g),
                n.name(h),
                n.name(k),
                n.name(l)
            ))
        })
    }

    pub fn tau_cochain(&self) -> Result<Cochain> {
        let n = self.group.order();
        let mut values = Vec::with_capacity(n.pow(4));
        for i in 0..n.pow(4) {
            let t = self.group.tuple_at(i, 4);
            let p = self.tau4(t[0], t[1], t[2], t[3])?;
            values.push(p.in_modulus(2).expect("tau is a sign"));
        }
        Cochain::new(self.group.clone(), 4, 2, values)
    }

    pub fn mu_cochain_support(&self) -> Vec<(usize, usize)> {
        let n = self.group.order();
        (0..n * n).filter(|&i| !self.mu[i].is_identity()).map(|i| (i / n, i % n)).collect()
    }
}

/// Result of the 2d pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct Anomaly2dReport {
    #[serde(skip)]
    pub tau: Cochain,
    pub is_cocycle: bool,
    pub trivial: bool,
    pub matched_class: Option<String>,
}

pub fn anomaly_2d(action: &CircuitAction) -> Result<(TruncationData2d, Anomaly2dReport)> {
    let data = TruncationData2d::build(action)?;
    let tau = data.tau_cochain()?;
    let report = classify_tau(tau);
    Ok((data, report))
}

pub fn classify_tau(tau: Cochain) -> Anomaly2dReport {
    let is_cocycle = tau.is_cocycle();
    let ClassMatch { trivial, name } = identify_class(&tau);
    Anomaly2dReport { tau, is_cocycle, trivial, matched_class: name }
}

use serde::Serialize;

use super::one_d::TruncationData1d;
use super::two_d::TruncationData2d;
use crate::circuits::{Circuit, CircuitAction};
use crate::error::{Error, Result};
use crate::groups::Cochain;
use crate::lattice::{Site, Window};
use crate::symop::{Expectation, SymOp};

/// Per-site reference state of a product state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReferenceBasis {
    /// `|0>` on every site.
    Zero,
    /// `|+>` on every site.
    Plus,
}

/// A product state dressed by a circuit `W`: `omega(O) = omega_0(W O W^{-1})`.
#[derive(Clone, Debug)]
pub struct ProductState {
    pub reference: ReferenceBasis,
    pub dressing: Circuit,
}

impl ProductState {
    pub fn new(reference: ReferenceBasis, dressing: Circuit) -> Self {
        Self { reference, dressing }
    }

    pub fn undressed(reference: ReferenceBasis, window: Window) -> Self {
        Self::new(reference, Circuit::identity(window))
    }

    /// Cluster state: `|+>` dressed by CZ on every chain edge.
    pub fn cluster(window: Window) -> Self {
        let gates = window.sites().filter(|s| window.contains(&s.offset(1, 0))).map(|s| SymOp::cz(s, s.offset(1, 0)));
        Self::new(ReferenceBasis::Plus, Circuit::diagonal_layer(gates.collect(), window).expect("diagonal gates"))
    }

    /// `|+>` dressed by CZ around disjoint plaquettes with even lower-left
    /// corners. No plaquette straddles the line between `y = -1` and `y = 0`.
    pub fn plaquette(window: Window) -> Self {
        let mut gates = Vec::new();
        for k in window.sites().filter(|s| s.x.rem_euclid(2) == 0 && s.y.rem_euclid(2) == 0) {
            let (l, i, j) = (k.offset(1, 0), k.offset(0, 1), k.offset(1, 1));
            if [l, i, j].iter().all(|s| window.contains(s)) {
                gates.extend([SymOp::cz(k, l), SymOp::cz(l, j), SymOp::cz(j, i), SymOp::cz(i, k)]);
            }
        }
        Self::new(ReferenceBasis::Plus, Circuit::diagonal_layer(gates, window).expect("diagonal gates"))
    }

    pub fn window(&self) -> &Window {
        self.dressing.window()
    }

    pub fn expectation(&self, op: &SymOp) -> Expectation {
        let dressed = self.dressing.conj_unchecked(op);
        let plus = self.reference == ReferenceBasis::Plus;
        dressed.expectation(|_| plus)
    }

    /// Stabilizer `W^{-1} P_s W` of the state at `s`.
    pub fn stabilizer(&self, s: Site) -> SymOp {
        let p = match self.reference {
            ReferenceBasis::Zero => SymOp::z(s),
            ReferenceBasis::Plus => SymOp::x(s),
        };
        self.dressing.inverse().conj_unchecked(&p)
    }

    /// Sites whose stabilizers survive conjugation by a circuit of the given
    /// range without touching missing gates beyond the window.
    pub fn checkable_sites(&self, range: u32) -> Vec<Site> {
        let w = *self.window();
        let need = range + 2 * self.dressing.range();
        w.sites().filter(|s| w.edge_distance(s) > need).collect()
    }

    /// Whether `Ad_U` for the given circuit fixes the state on every
    /// checkable site; returns the first violated stabilizer otherwise.
    pub fn preserved_by(&self, c: &Circuit) -> std::result::Result<(), String> {
        self.preserved_by_op(|k| c.conj_unchecked(k), c.range())
    }

    fn preserved_by_op(&self, f: impl Fn(&SymOp) -> SymOp, range: u32) -> std::result::Result<(), String> {
        for s in self.checkable_sites(range) {
            let k = self.stabilizer(s);
            let e = self.expectation(&f(&k));
            if e != Expectation::Phase(false) {
                return Err(format!("stabilizer at {s} has expectation {e}"));
            }
        }
        Ok(())
    }
}

/// Checks `omega . rho(g) = omega` for every group element.
pub fn check_invariance(action: &CircuitAction, state: &ProductState) -> Result<()> {
    for (g, c) in action.circuits.iter().enumerate() {
        let inst = c.instantiate()?;
        state
            .preserved_by(&inst)
            .map_err(|e| Error::NotInvariant(format!("element {}: {e}", action.group.name(g))))?;
    }
    Ok(())
}

fn pauli_candidates(sites: &[Site]) -> Vec<SymOp> {
    let n = sites.len();
    let mut out: Vec<(u32, usize, SymOp)> = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let mut op = SymOp::identity();
        let mut weight = 0;
        let mut c = code;
        for s in sites {
            match c % 4 {
                1 => op = op.mul(&SymOp::z(*s)),
                2 => op = op.mul(&SymOp::x(*s)),
                3 => op = op.mul(&SymOp::z(*s)).mul(&SymOp::x(*s)),
                _ => {}
            }
            if c % 4 != 0 {
                weight += 1;
            }
            c /= 4;
        }
        out.push((weight, code, op));
    }
    out.sort_by_key(|(w, c, _)| (*w, *c));
    out.into_iter().map(|(_, _, op)| op).collect()
}

/// An origin-local Pauli correction `U` such that `Ad_U . rho` preserves the
/// state; the lowest-weight one in a fixed enumeration order.
fn correction(state: &ProductState, rho: &Circuit, radius: u32) -> Option<SymOp> {
    let sites: Vec<Site> = state.window().sites().filter(|s| s.norm() <= radius).collect();
    pauli_candidates(&sites).into_iter().find(|u| {
        state.preserved_by_op(|k| rho.conj_unchecked(k).conj(u), rho.range()).is_ok()
    })
}

/// 2-cochain `c(g,h) = omega(V(g,h))` with
/// `V(g,h) = U(g) rho(g)(U(h)) nu(g,h) U(gh)^{-1}`.
pub fn spt_cochain_1d(data: &TruncationData1d, state: &ProductState) -> Result<Cochain> {
    let grp = &data.group;
    // stabilizers touched by a correction on this disk must all be checkable
    let radius = 1 + data.range;
    let us: Vec<SymOp> = grp
        .elements()
        .map(|g| {
            correction(state, &data.rho_tilde[g], radius).ok_or_else(|| {
                Error::NotInvariant(format!("no origin correction makes rho({}) state-preserving", grp.name(g)))
            })
        })
        .collect::<Result<_>>()?;
    let mut values = Vec::new();
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            let v = us[g]
                .mul(&data.rho_tilde[g].conj_unchecked(&us[h]))
                .mul(data.nu(g, h))
                .mul(&us[gh].inv());
            match state.expectation(&v) {
                Expectation::Phase(neg) => values.push(u64::from(neg)),
                e => {
                    return Err(Error::NotInvariant(format!(
                        "omega(V({},{})) = {e} is not a phase",
                        grp.name(g),
                        grp.name(h)
                    )))
                }
            }
        }
    }
    Cochain::new(grp.clone(), 2, 2, values)
}

#[derive(Clone, Debug, Serialize)]
pub struct SptRelativeReport {
    #[serde(skip)]
    pub cochain: Cochain,
    pub is_cocycle: bool,
    pub trivial: bool,
}

/// Relative class `c_1 c_2^{-1}` of two invariant states of a chain action.
pub fn spt_relative_1d(action: &CircuitAction, s1: &ProductState, s2: &ProductState) -> Result<SptRelativeReport> {
    let (data, report) = super::one_d::nayak_else_1d(action)?;
    if !report.trivial {
        return Err(Error::NotInvariant("the action has a nontrivial 1d anomaly; no invariant product state".into()));
    }
    check_invariance(action, s1)?;
    check_invariance(action, s2)?;
    let c1 = spt_cochain_1d(&data, s1)?;
    let c2 = spt_cochain_1d(&data, s2)?;
    let cochain = c1.sub(&c2)?;
    Ok(SptRelativeReport { is_cocycle: cochain.is_cocycle(), trivial: cochain.is_coboundary(), cochain })
}

#[derive(Clone, Debug, Serialize)]
pub struct SptTrivializeReport {
    pub invariant: bool,
    pub message: String,
    #[serde(skip)]
    pub cochain: Option<Cochain>,
    pub delta_equals_tau: Option<bool>,
}

/// For a state invariant under a 2d action, the 3-cochain `c = omega(u)`,
/// compared against `tau` through its coboundary.
pub fn spt_trivialize_2d(
    action: &CircuitAction,
    data: &TruncationData2d,
    tau: &Cochain,
    state: &ProductState,
) -> Result<SptTrivializeReport> {
    if let Err(e) = check_invariance(action, state) {
        return Ok(SptTrivializeReport {
            invariant: false,
            message: format!("no invariant SRE state found: {e}"),
            cochain: None,
            delta_equals_tau: None,
        });
    }
    let grp = &data.group;
    for g in grp.elements() {
        state.preserved_by(&data.rho_tilde[g]).map_err(|e| {
            Error::NotInvariant(format!("truncation of {} does not preserve the state: {e}", grp.name(g)))
        })?;
    }
    for (i, b) in data.beta.iter().enumerate() {
        state
            .preserved_by(&Circuit::from_symop(b, data.window))
            .map_err(|e| Error::NotInvariant(format!("beta #{i} does not preserve the state: {e}")))?;
    }
    let n = grp.order();
    let mut values = Vec::with_capacity(n.pow(3));
    for (i, u) in data.u.iter().enumerate() {
        match state.expectation(u) {
            Expectation::Phase(neg) => values.push(u64::from(neg)),
            e => return Err(Error::NotInvariant(format!("omega(u) = {e} at tuple #{i}"))),
        }
    }
    let c = Cochain::new(grp.clone(), 3, 2, values)?;
    let delta = c.coboundary() == *tau;
    Ok(SptTrivializeReport {
        invariant: true,
        message: "invariant state found".into(),
        cochain: Some(c),
        delta_equals_tau: Some(delta),
    })
}

//! Weak morphisms from a group `G` into a crossed module, given by
//! `rho_t: G -> N` and `mu: G x G -> M` with
//! `rho_t(g) rho_t(h) rho_t(gh)^{-1} = bd mu(g,h)` and the cocycle condition
//! `mu(g,h) mu(gh,k) mu(g,hk)^{-1} (rho_t(g) . mu(h,k))^{-1} = 1`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Cochain, FiniteGroup, GroupHom};

use super::module::{CrossedModule, KernelIso};
use super::report::ValidationReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakMorphismData {
    pub g: Arc<FiniteGroup>,
    pub target: CrossedModule,
    pub rho_t: Vec<usize>,
    /// Row-major, `mu[g * |G| + h]`.
    pub mu: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeakMorphismReport {
    pub report: ValidationReport,
    /// Left-hand side of the cocycle condition as a `ker bd`-valued
    /// 3-cochain, when it lands in the kernel.
    #[serde(skip)]
    pub obstruction: Option<Cochain>,
    pub obstruction_trivial: Option<bool>,
}

impl WeakMorphismData {
    pub fn mu(&self, g: usize, h: usize) -> usize {
        self.mu[g * self.g.order() + h]
    }

    /// The data built from a homomorphism `rho: G -> coker bd`, a section
    /// and the smallest lifts of `nu`.
    pub fn from_section(g: Arc<FiniteGroup>, target: CrossedModule, rho: &GroupHom, sigma: &[usize]) -> Result<Self> {
        let rho_t: Vec<usize> = g.elements().map(|x| sigma[rho.apply(x)]).collect();
        let n = target.n.clone();
        let mut mu = Vec::with_capacity(g.order() * g.order());
        for a in g.elements() {
            for b in g.elements() {
                let nu = n.mul(n.mul(rho_t[a], rho_t[b]), n.inv(rho_t[g.mul(a, b)]));
                let pre = target.preimages(nu);
                mu.push(*pre.first().ok_or_else(|| Error::InvalidStructure("rho_t is not a lift of a homomorphism".into()))?);
            }
        }
        Ok(Self { g, target, rho_t, mu })
    }

    /// The homomorphism `G -> coker bd` induced by `rho_t`.
    pub fn induced(&self) -> Result<GroupHom> {
        let (q, proj) = self.target.coker()?;
        GroupHom::new(self.g.clone(), q, self.rho_t.iter().map(|&x| proj.apply(x)).collect())
    }

    /// `rho_t(1) = 1` and `mu` vanishes when an argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let (e, m) = (self.g.identity(), &self.target.m);
        self.rho_t[e] == self.target.n.identity()
            && self.g.elements().all(|x| self.mu(e, x) == m.identity() && self.mu(x, e) == m.identity())
    }

    fn cocycle_lhs(&self, a: usize, b: usize, c: usize) -> usize {
        let (g, m) = (&self.g, &self.target.m);
        m.mul(
            m.mul(self.mu(a, b), self.mu(g.mul(a, b), c)),
            m.mul(m.inv(self.mu(a, g.mul(b, c))), m.inv(self.target.act[self.rho_t[a]][self.mu(b, c)])),
        )
    }
}

/// Checks both defining equations exhaustively. With an identification of
/// the kernel, also reports the obstruction 3-cocycle and whether it is a
/// coboundary.
pub fn check_weak_morphism(d: &WeakMorphismData, iso: Option<&KernelIso>) -> Result<WeakMorphismReport> {
    let (g, t) = (&*d.g, &d.target);
    let (m, n) = (&*t.m, &*t.n);
    let ord = g.order();
    if d.rho_t.len() != ord || d.mu.len() != ord * ord || d.rho_t.iter().any(|&x| x >= n.order()) || d.mu.iter().any(|&x| x >= m.order()) {
        return Err(Error::InvalidStructure("weak morphism tables have the wrong shape".into()));
    }
    let mut report = ValidationReport::default();
    report.run("rho_t(g) rho_t(h) rho_t(gh)^-1 = bd mu(g,h)", &[ord, ord], |x| {
        n.mul(n.mul(d.rho_t[x[0]], d.rho_t[x[1]]), n.inv(d.rho_t[g.mul(x[0], x[1])])) == t.bd[d.mu(x[0], x[1])]
    });
    report.run("mu cocycle condition", &[ord, ord, ord], |x| d.cocycle_lhs(x[0], x[1], x[2]) == m.identity());
    let mut obstruction = None;
    if let (Some(iso), true) = (iso, report.checks[0].violations.is_empty()) {
        let mut values = Vec::with_capacity(ord * ord * ord);
        for i in 0..ord * ord * ord {
            let x = g.tuple_at(i, 3);
            match iso.value(d.cocycle_lhs(x[0], x[1], x[2])) {
                Some(v) => values.push(v),
                None => break,
            }
        }
        if values.len() == ord * ord * ord {
            obstruction = Some(Cochain::new(d.g.clone(), 3, iso.modulus, values)?);
        }
    }
    let obstruction_trivial = obstruction.as_ref().map(|c| c.is_coboundary());
    Ok(WeakMorphismReport { report, obstruction, obstruction_trivial })
}

/// `(rho_t, b . mu)` for a `ker bd`-valued 2-cocycle `b`.
pub fn twist(d: &WeakMorphismData, b: &Cochain, iso: &KernelIso) -> Result<WeakMorphismData> {
    if b.degree != 2 || *b.group != *d.g || b.modulus != iso.modulus {
        return Err(Error::CochainMismatch("twist needs a 2-cochain on G valued in ker bd".into()));
    }
    if !b.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    let m = &d.target.m;
    let ord = d.g.order();
    let mu = (0..ord * ord).map(|i| m.mul(iso.element(b.values()[i]), d.mu[i])).collect();
    Ok(WeakMorphismData { mu, ..d.clone() })
}

/// The extension `E = M x G` with
/// `(m0,g0)(m1,g1) = (m0 (rho_t(g0) . m1) mu(g0,g1), g0 g1)`; the pair
/// `(m, g)` has index `m * |G| + g`. The data must be normalized and valid.
pub fn extension_group(d: &WeakMorphismData) -> Result<FiniteGroup> {
    if !d.is_normalized() {
        return Err(Error::InvalidStructure("extension needs normalized data".into()));
    }
    let (g, m) = (&*d.g, &*d.target.m);
    let (og, om) = (g.order(), m.order());
    let table = (0..om * og)
        .map(|x| {
            let (m0, g0) = (x / og, x % og);
            (0..om * og)
                .map(|y| {
                    let (m1, g1) = (y / og, y % og);
                    let mm = m.mul(m.mul(m0, d.target.act[d.rho_t[g0]][m1]), d.mu(g0, g1));
                    mm * og + g.mul(g0, g1)
                })
                .collect()
        })
        .collect();
    let names = (0..om * og).map(|x| format!("({},{})", m.name(x / og), g.name(x % og))).collect();
    FiniteGroup::from_table(table, Some(names))
}

const SEARCH_LIMIT: u64 = 1 << 22;

/// Searches for an isomorphism `E -> E'` of extensions commuting with the
/// inclusions of `M`, the projections to `G` and the maps to `N`. Such a map
/// has the form `(m, g) -> (m a(g), g)` with `bd a(g) = rho_t(g) rho_t'(g)^{-1}`;
/// every such `a` is tried.
pub fn extensions_isomorphic(d1: &WeakMorphismData, d2: &WeakMorphismData) -> Result<bool> {
    if *d1.g != *d2.g || d1.target != d2.target {
        return Err(Error::InvalidStructure("weak morphisms with different source or target".into()));
    }
    let e1 = extension_group(d1)?;
    let e2 = extension_group(d2)?;
    let (g, t) = (&*d1.g, &d1.target);
    let (m, n) = (&*t.m, &*t.n);
    let og = g.order();
    let candidates: Vec<Vec<usize>> = g
        .elements()
        .map(|x| t.preimages(n.mul(d1.rho_t[x], n.inv(d2.rho_t[x]))))
        .collect();
    let count = candidates.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
    match count {
        Some(0) => return Ok(false),
        Some(c) if c <= SEARCH_LIMIT => {}
        _ => return Err(Error::InvalidStructure("extension isomorphism search space too large".into())),
    }
    let mut choice = vec![0usize; og];
    loop {
        let a: Vec<usize> = choice.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let psi = |x: usize| m.mul(x / og, a[x % og]) * og + x % og;
        let hom = e1.elements().all(|x| e1.elements().all(|y| psi(e1.mul(x, y)) == e2.mul(psi(x), psi(y))));
        if hom {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == og {
                return Ok(false);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

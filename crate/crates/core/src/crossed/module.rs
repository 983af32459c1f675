use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Cochain, FiniteGroup, GroupHom, GroupJson};

use super::report::ValidationReport;
use super::tables::*;

/// A crossed module `bd: M -> N` with a left action of `N` on `M`.
/// `act[n][m]` is `n . m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub m: Arc<FiniteGroup>,
    pub n: Arc<FiniteGroup>,
    pub bd: Vec<usize>,
    pub act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossedModuleJson {
    pub m: GroupJson,
    pub n: GroupJson,
    pub bd: Vec<usize>,
    pub act: Vec<Vec<usize>>,
}

impl CrossedModule {
    pub fn new(m: Arc<FiniteGroup>, n: Arc<FiniteGroup>, bd: Vec<usize>, act: Vec<Vec<usize>>) -> Self {
        Self { m, n, bd, act }
    }

    /// `bd` with `N` acting trivially on `M`.
    pub fn with_trivial_action(m: Arc<FiniteGroup>, n: Arc<FiniteGroup>, bd: Vec<usize>) -> Self {
        let act = vec![m.elements().collect(); n.order()];
        Self { m, n, bd, act }
    }

    /// `G -> G`, identity map, conjugation action.
    pub fn conjugation(g: Arc<FiniteGroup>) -> Self {
        let act = g.elements().map(|a| g.elements().map(|b| g.conj(a, b)).collect()).collect();
        Self { bd: g.elements().collect(), act, m: g.clone(), n: g }
    }

    /// A group viewed as a crossed module with trivial `M`.
    pub fn from_group(n: Arc<FiniteGroup>) -> Self {
        let m = Arc::new(FiniteGroup::trivial());
        Self::with_trivial_action(m, n.clone(), vec![n.identity()])
    }

    pub fn from_json(j: &CrossedModuleJson) -> Result<Self> {
        let cm = Self {
            m: Arc::new(FiniteGroup::from_json(&j.m)?),
            n: Arc::new(FiniteGroup::from_json(&j.n)?),
            bd: j.bd.clone(),
            act: j.act.clone(),
        };
        cm.check_shape()?;
        Ok(cm)
    }

    pub fn to_json(&self) -> CrossedModuleJson {
        CrossedModuleJson { m: self.m.to_json(), n: self.n.to_json(), bd: self.bd.clone(), act: self.act.clone() }
    }

    fn check_shape(&self) -> Result<()> {
        let mut r = ValidationReport::default();
        if check_map_shape(&mut r, "bd", &self.m, &self.n, &self.bd) && check_action_shape(&mut r, "action", &self.n, &self.m, &self.act) {
            Ok(())
        } else {
            Err(Error::InvalidStructure("crossed module tables have the wrong shape".into()))
        }
    }

    pub fn act(&self, n: usize, m: usize) -> usize {
        self.act[n][m]
    }

    pub fn kernel(&self) -> Vec<usize> {
        kernel(&self.m, &self.n, &self.bd)
    }

    pub fn image(&self) -> Vec<usize> {
        image(&self.bd)
    }

    /// `coker bd` with the projection from `N`.
    pub fn coker(&self) -> Result<(Arc<FiniteGroup>, GroupHom)> {
        self.n.quotient(&self.image())
    }

    /// Elements of `M` mapping to `n`, in increasing order.
    pub fn preimages(&self, n: usize) -> Vec<usize> {
        self.m.elements().filter(|&x| self.bd[x] == n).collect()
    }
}

/// Exhaustive check of the crossed module axioms.
pub fn validate_crossed_module(cm: &CrossedModule) -> ValidationReport {
    let mut r = ValidationReport::default();
    let (m, n) = (&*cm.m, &*cm.n);
    if !check_map_shape(&mut r, "bd", m, n, &cm.bd) | !check_action_shape(&mut r, "action", n, m, &cm.act) {
        return r;
    }
    check_hom(&mut r, "bd", m, n, &cm.bd);
    check_action(&mut r, "action of N on M", n, m, &cm.act);
    check_equivariance(&mut r, "bd", m, n, &cm.bd, &cm.act);
    check_peiffer(&mut r, "bd", m, &cm.bd, &cm.act);
    r
}

/// An explicit identification of `ker bd` with `Z/modulus`: `elements[k]` is
/// the kernel element standing for `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelIso {
    pub modulus: u64,
    pub elements: Vec<usize>,
}

impl KernelIso {
    /// Powers of `generator`, which must generate `ker bd`; the kernel must
    /// be central in `M` and fixed by `N`.
    pub fn from_generator(cm: &CrossedModule, generator: usize) -> Result<Self> {
        let ker = cm.kernel();
        if !ker.contains(&generator) {
            return Err(Error::InvalidStructure(format!("{} is not in ker bd", cm.m.name(generator))));
        }
        let mut elements = vec![cm.m.identity()];
        let mut x = generator;
        while x != cm.m.identity() {
            elements.push(x);
            x = cm.m.mul(x, generator);
        }
        if elements.len() != ker.len() {
            return Err(Error::InvalidStructure("ker bd is not generated by the given element".into()));
        }
        for &k in &ker {
            if cm.m.elements().any(|y| cm.m.mul(k, y) != cm.m.mul(y, k)) || cm.n.elements().any(|n| cm.act[n][k] != k) {
                return Err(Error::InvalidStructure("ker bd is not central with trivial action".into()));
            }
        }
        Ok(Self { modulus: elements.len() as u64, elements })
    }

    /// For a trivial kernel.
    pub fn trivial(cm: &CrossedModule) -> Result<Self> {
        Self::from_generator(cm, cm.m.identity())
    }

    pub fn value(&self, m: usize) -> Option<u64> {
        self.elements.iter().position(|&e| e == m).map(|k| k as u64)
    }

    pub fn element(&self, k: u64) -> usize {
        self.elements[(k % self.modulus) as usize]
    }
}

/// Checks that `sigma` is a set-theoretic section of `N -> coker bd`.
fn check_section(proj: &GroupHom, sigma: &[usize]) -> Result<()> {
    if sigma.len() != proj.target.order() || sigma.iter().enumerate().any(|(g, &s)| s >= proj.source.order() || proj.apply(s) != g) {
        return Err(Error::InvalidStructure("sigma is not a section of N -> coker bd".into()));
    }
    Ok(())
}

/// Every section of `N -> coker bd`, in lexicographic order.
pub fn all_sections(cm: &CrossedModule) -> Result<Vec<Vec<usize>>> {
    let (q, proj) = cm.coker()?;
    let fibres: Vec<Vec<usize>> = q.elements().map(|g| cm.n.elements().filter(|&x| proj.apply(x) == g).collect()).collect();
    let mut out = vec![Vec::new()];
    for fibre in &fibres {
        out = out
            .into_iter()
            .flat_map(|s: Vec<usize>| {
                fibre.iter().map(move |&x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Postnikov 3-cocycle on `coker bd` with values in `ker bd = Z/m`, using the
/// smallest preimage as the lift of `nu`.
pub fn postnikov3(cm: &CrossedModule, sigma: &[usize], iso: &KernelIso) -> Result<Cochain> {
    postnikov3_with_lift(cm, sigma, iso, |pre| pre[0])
}

/// As [`postnikov3`], with `lift` choosing among the preimages of each
/// `nu(g, h)`.
pub fn postnikov3_with_lift(
    cm: &CrossedModule,
    sigma: &[usize],
    iso: &KernelIso,
    mut lift: impl FnMut(&[usize]) -> usize,
) -> Result<Cochain> {
    let (q, proj) = cm.coker()?;
    check_section(&proj, sigma)?;
    let (m, n) = (&*cm.m, &*cm.n);
    let k = q.order();
    let mut nu_t = Vec::with_capacity(k * k);
    for a in q.elements() {
        for b in q.elements() {
            let nu = n.mul(n.mul(sigma[a], sigma[b]), n.inv(sigma[q.mul(a, b)]));
            let pre = cm.preimages(nu);
            if pre.is_empty() {
                return Err(Error::InvalidStructure("nu has no preimage under bd".into()));
            }
            nu_t.push(lift(&pre));
        }
    }
    let mut values = Vec::with_capacity(k * k * k);
    for t in 0..k * k * k {
        let (a, b, c) = (t / (k * k), (t / k) % k, t % k);
        let x = m.mul(
            m.mul(nu_t[a * k + b], nu_t[q.mul(a, b) * k + c]),
            m.mul(m.inv(nu_t[a * k + q.mul(b, c)]), m.inv(cm.act[sigma[a]][nu_t[b * k + c]])),
        );
        let v = iso
            .value(x)
            .ok_or_else(|| Error::InvalidStructure(format!("ell value {} is not in ker bd", m.name(x))))?;
        values.push(v);
    }
    let ell = Cochain::new(q, 3, iso.modulus, values)?;
    if !ell.is_cocycle() {
        return Err(Error::NotCocycle);
    }
    Ok(ell)
}

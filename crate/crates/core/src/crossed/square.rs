use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupHom, GroupJson};

use super::report::ValidationReport;
use super::tables::*;

/// A crossed square
///
/// ```text
///   L --f--> M
///   |g       |v
///   N --u--> P
/// ```
///
/// with `P` acting on `L`, `M`, `N` (`act_x[p][x]`) and the pairing
/// `eta: M x N -> L`, stored row-major as `eta[m * |N| + n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedSquare {
    pub l: Arc<FiniteGroup>,
    pub m: Arc<FiniteGroup>,
    pub n: Arc<FiniteGroup>,
    pub p: Arc<FiniteGroup>,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub v: Vec<usize>,
    pub u: Vec<usize>,
    pub act_l: Vec<Vec<usize>>,
    pub act_m: Vec<Vec<usize>>,
    pub act_n: Vec<Vec<usize>>,
    pub eta: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossedSquareJson {
    pub l: GroupJson,
    pub m: GroupJson,
    pub n: GroupJson,
    pub p: GroupJson,
    pub f: Vec<usize>,
    pub g: Vec<usize>,
    pub v: Vec<usize>,
    pub u: Vec<usize>,
    pub act_l: Vec<Vec<usize>>,
    pub act_m: Vec<Vec<usize>>,
    pub act_n: Vec<Vec<usize>>,
    pub eta: Vec<Vec<usize>>,
}

/// A 2-crossed module `L --delta--> K --bd--> P` with `P` acting on `L` and
/// `K` and the braiding `{k0, k1}` stored as `braid[k0 * |K| + k1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCrossedModule {
    pub l: Arc<FiniteGroup>,
    pub k: Arc<FiniteGroup>,
    pub p: Arc<FiniteGroup>,
    pub delta: Vec<usize>,
    pub bd: Vec<usize>,
    pub act_l: Vec<Vec<usize>>,
    pub act_k: Vec<Vec<usize>>,
    pub braid: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoCrossedModuleJson {
    pub l: GroupJson,
    pub k: GroupJson,
    pub p: GroupJson,
    pub delta: Vec<usize>,
    pub bd: Vec<usize>,
    pub act_l: Vec<Vec<usize>>,
    pub act_k: Vec<Vec<usize>>,
    pub braid: Vec<Vec<usize>>,
}

fn rows(flat: &[usize], width: usize) -> Vec<Vec<usize>> {
    flat.chunks(width.max(1)).map(<[usize]>::to_vec).collect()
}

fn flatten(rows: &[Vec<usize>], height: usize, width: usize) -> Result<Vec<usize>> {
    if rows.len() != height || rows.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidStructure("pairing table has the wrong shape".into()));
    }
    Ok(rows.concat())
}

fn group(j: &GroupJson) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::from_json(j)?))
}

impl CrossedSquare {
    pub fn eta(&self, m: usize, n: usize) -> usize {
        self.eta[m * self.n.order() + n]
    }

    /// The commutator square of two normal subgroups `M`, `N` of `P`:
    /// `L = M ∩ N`, inclusions, conjugation actions, `eta(m, n) = [m, n]`.
    pub fn commutator(p: &Arc<FiniteGroup>, m_elems: &[usize], n_elems: &[usize]) -> Result<Self> {
        if !p.is_normal(m_elems) || !p.is_normal(n_elems) {
            return Err(Error::InvalidStructure("commutator square needs normal subgroups".into()));
        }
        let l_elems: Vec<usize> = m_elems.iter().copied().filter(|x| n_elems.contains(x)).collect();
        let (l, il) = p.subgroup(&l_elems)?;
        let (m, im) = p.subgroup(m_elems)?;
        let (n, inn) = p.subgroup(n_elems)?;
        let index_in = |inc: &GroupHom, x: usize| inc.table().iter().position(|&y| y == x).expect("element of the subgroup");
        let act = |inc: &GroupHom| -> Vec<Vec<usize>> {
            p.elements().map(|q| inc.table().iter().map(|&x| index_in(inc, p.conj(q, x))).collect()).collect()
        };
        let f = il.table().iter().map(|&x| index_in(&im, x)).collect();
        let g = il.table().iter().map(|&x| index_in(&inn, x)).collect();
        let mut eta = Vec::with_capacity(m.order() * n.order());
        for &a in im.table() {
            for &b in inn.table() {
                eta.push(index_in(&il, p.commutator(a, b)));
            }
        }
        Ok(Self {
            act_l: act(&il),
            act_m: act(&im),
            act_n: act(&inn),
            f,
            g,
            v: im.table().to_vec(),
            u: inn.table().to_vec(),
            eta,
            l,
            m,
            n,
            p: p.clone(),
        })
    }

    pub fn trivial() -> Self {
        let t = Arc::new(FiniteGroup::trivial());
        Self {
            l: t.clone(),
            m: t.clone(),
            n: t.clone(),
            p: t,
            f: vec![0],
            g: vec![0],
            v: vec![0],
            u: vec![0],
            act_l: vec![vec![0]],
            act_m: vec![vec![0]],
            act_n: vec![vec![0]],
            eta: vec![0],
        }
    }

    pub fn from_json(j: &CrossedSquareJson) -> Result<Self> {
        let (l, m, n, p) = (group(&j.l)?, group(&j.m)?, group(&j.n)?, group(&j.p)?);
        let eta = flatten(&j.eta, m.order(), n.order())?;
        Ok(Self {
            f: j.f.clone(),
            g: j.g.clone(),
            v: j.v.clone(),
            u: j.u.clone(),
            act_l: j.act_l.clone(),
            act_m: j.act_m.clone(),
            act_n: j.act_n.clone(),
            eta,
            l,
            m,
            n,
            p,
        })
    }

    pub fn to_json(&self) -> CrossedSquareJson {
        CrossedSquareJson {
            l: self.l.to_json(),
            m: self.m.to_json(),
            n: self.n.to_json(),
            p: self.p.to_json(),
            f: self.f.clone(),
            g: self.g.clone(),
            v: self.v.clone(),
            u: self.u.clone(),
            act_l: self.act_l.clone(),
            act_m: self.act_m.clone(),
            act_n: self.act_n.clone(),
            eta: rows(&self.eta, self.n.order()),
        }
    }
}

/// Exhaustive check of the crossed square axioms: the maps, the commuting
/// square, the `P`-actions and equivariance, the four crossed modules into
/// `P`, and the seven pairing equations.
pub fn validate_crossed_square(cs: &CrossedSquare) -> ValidationReport {
    let mut r = ValidationReport::default();
    let (l, m, n, p) = (&*cs.l, &*cs.m, &*cs.n, &*cs.p);
    let shapes = [
        check_map_shape(&mut r, "f", l, m, &cs.f),
        check_map_shape(&mut r, "g", l, n, &cs.g),
        check_map_shape(&mut r, "v", m, p, &cs.v),
        check_map_shape(&mut r, "u", n, p, &cs.u),
        check_action_shape(&mut r, "action on L", p, l, &cs.act_l),
        check_action_shape(&mut r, "action on M", p, m, &cs.act_m),
        check_action_shape(&mut r, "action on N", p, n, &cs.act_n),
    ];
    let eta_ok = cs.eta.len() == m.order() * n.order() && cs.eta.iter().all(|&x| x < l.order());
    r.run("eta: table shape", &[1], |_| eta_ok);
    if !eta_ok || shapes.contains(&false) {
        return r;
    }
    check_hom(&mut r, "f", l, m, &cs.f);
    check_hom(&mut r, "g", l, n, &cs.g);
    check_hom(&mut r, "v", m, p, &cs.v);
    check_hom(&mut r, "u", n, p, &cs.u);
    r.run("square commutes: v f = u g", &[l.order()], |t| cs.v[cs.f[t[0]]] == cs.u[cs.g[t[0]]]);
    check_action(&mut r, "action on L", p, l, &cs.act_l);
    check_action(&mut r, "action on M", p, m, &cs.act_m);
    check_action(&mut r, "action on N", p, n, &cs.act_n);
    check_map_equivariant(&mut r, "f", p, l, &cs.f, &cs.act_l, &cs.act_m);
    check_map_equivariant(&mut r, "g", p, l, &cs.g, &cs.act_l, &cs.act_n);
    let vf: Vec<usize> = cs.f.iter().map(|&x| cs.v[x]).collect();
    let ug: Vec<usize> = cs.g.iter().map(|&x| cs.u[x]).collect();
    for (name, src, bd, act) in [("v", m, &cs.v, &cs.act_m), ("u", n, &cs.u, &cs.act_n), ("v f", l, &vf, &cs.act_l), ("u g", l, &ug, &cs.act_l)] {
        check_equivariance(&mut r, name, src, p, bd, act);
        check_peiffer(&mut r, name, src, bd, act);
    }
    let (via_n, via_m) = (|x: usize| cs.u[x], |x: usize| cs.v[x]);
    let (om, on, ol, op) = (m.order(), n.order(), l.order(), p.order());
    r.run("f eta(m,n) = m (n . m^-1)", &[om, on], |t| {
        cs.f[cs.eta(t[0], t[1])] == m.mul(t[0], cs.act_m[via_n(t[1])][m.inv(t[0])])
    });
    r.run("g eta(m,n) = (m . n) n^-1", &[om, on], |t| {
        cs.g[cs.eta(t[0], t[1])] == n.mul(cs.act_n[via_m(t[0])][t[1]], n.inv(t[1]))
    });
    r.run("eta(f l, n) = l (n . l^-1)", &[ol, on], |t| {
        cs.eta(cs.f[t[0]], t[1]) == l.mul(t[0], cs.act_l[via_n(t[1])][l.inv(t[0])])
    });
    r.run("eta(m, g l) = (m . l) l^-1", &[om, ol], |t| {
        cs.eta(t[0], cs.g[t[1]]) == l.mul(cs.act_l[via_m(t[0])][t[1]], l.inv(t[1]))
    });
    r.run("eta(m m', n) = (m . eta(m',n)) eta(m,n)", &[om, om, on], |t| {
        cs.eta(m.mul(t[0], t[1]), t[2]) == l.mul(cs.act_l[via_m(t[0])][cs.eta(t[1], t[2])], cs.eta(t[0], t[2]))
    });
    r.run("eta(m, n n') = eta(m,n) (n . eta(m,n'))", &[om, on, on], |t| {
        cs.eta(t[0], n.mul(t[1], t[2])) == l.mul(cs.eta(t[0], t[1]), cs.act_l[via_n(t[1])][cs.eta(t[0], t[2])])
    });
    r.run("eta(p . m, p . n) = p . eta(m,n)", &[op, om, on], |t| {
        cs.eta(cs.act_m[t[0]][t[1]], cs.act_n[t[0]][t[2]]) == cs.act_l[t[0]][cs.eta(t[1], t[2])]
    });
    r
}

impl TwoCrossedModule {
    pub fn braid(&self, a: usize, b: usize) -> usize {
        self.braid[a * self.k.order() + b]
    }

    pub fn from_json(j: &TwoCrossedModuleJson) -> Result<Self> {
        let (l, k, p) = (group(&j.l)?, group(&j.k)?, group(&j.p)?);
        let braid = flatten(&j.braid, k.order(), k.order())?;
        Ok(Self {
            delta: j.delta.clone(),
            bd: j.bd.clone(),
            act_l: j.act_l.clone(),
            act_k: j.act_k.clone(),
            braid,
            l,
            k,
            p,
        })
    }

    pub fn to_json(&self) -> TwoCrossedModuleJson {
        TwoCrossedModuleJson {
            l: self.l.to_json(),
            k: self.k.to_json(),
            p: self.p.to_json(),
            delta: self.delta.clone(),
            bd: self.bd.clone(),
            act_l: self.act_l.clone(),
            act_k: self.act_k.clone(),
            braid: rows(&self.braid, self.k.order()),
        }
    }
}

/// The 2-crossed module `L -> M ⋊ N -> P` of a crossed square. `N` acts on
/// `M` through `u`; the pair `(m, n)` has index `m * |N| + n`.
/// `delta l = (f(l)^-1, g(l))`, `bd (m, n) = v(m) u(n)` and
/// `{(m0,n0), (m1,n1)} = eta(m0, n0 n1 n0^-1)^-1`.
pub fn to_two_crossed_module(cs: &CrossedSquare) -> Result<TwoCrossedModule> {
    let rep = validate_crossed_square(cs);
    if !rep.is_valid() {
        return Err(Error::InvalidStructure(format!("crossed square fails: {}", rep.failed_axioms().join("; "))));
    }
    let (l, m, n, p) = (&*cs.l, &*cs.m, &*cs.n, &*cs.p);
    let on = n.order();
    let ok = m.order() * on;
    let split = |x: usize| (x / on, x % on);
    let table = (0..ok)
        .map(|a| {
            let (m0, n0) = split(a);
            (0..ok)
                .map(|b| {
                    let (m1, n1) = split(b);
                    m.mul(m0, cs.act_m[cs.u[n0]][m1]) * on + n.mul(n0, n1)
                })
                .collect()
        })
        .collect();
    let names = (0..ok).map(|x| format!("({},{})", m.name(x / on), n.name(x % on))).collect();
    let k = Arc::new(FiniteGroup::from_table(table, Some(names))?);
    let delta = l.elements().map(|x| m.inv(cs.f[x]) * on + cs.g[x]).collect();
    let bd = (0..ok).map(|x| p.mul(cs.v[x / on], cs.u[x % on])).collect();
    let act_k = p
        .elements()
        .map(|q| (0..ok).map(|x| cs.act_m[q][x / on] * on + cs.act_n[q][x % on]).collect())
        .collect();
    let mut braid = Vec::with_capacity(ok * ok);
    for a in 0..ok {
        for b in 0..ok {
            let ((m0, n0), (_, n1)) = (split(a), split(b));
            braid.push(l.inv(cs.eta(m0, n.conj(n0, n1))));
        }
    }
    Ok(TwoCrossedModule { l: cs.l.clone(), k, p: cs.p.clone(), delta, bd, act_l: cs.act_l.clone(), act_k, braid })
}

/// Exhaustive check of the 2-crossed module axioms.
pub fn validate_two_crossed_module(t: &TwoCrossedModule) -> ValidationReport {
    let mut r = ValidationReport::default();
    let (l, k, p) = (&*t.l, &*t.k, &*t.p);
    let shapes = [
        check_map_shape(&mut r, "delta", l, k, &t.delta),
        check_map_shape(&mut r, "bd", k, p, &t.bd),
        check_action_shape(&mut r, "action on L", p, l, &t.act_l),
        check_action_shape(&mut r, "action on K", p, k, &t.act_k),
    ];
    let braid_ok = t.braid.len() == k.order() * k.order() && t.braid.iter().all(|&x| x < l.order());
    r.run("braiding: table shape", &[1], |_| braid_ok);
    if !braid_ok || shapes.contains(&false) {
        return r;
    }
    check_hom(&mut r, "delta", l, k, &t.delta);
    check_hom(&mut r, "bd", k, p, &t.bd);
    r.run("bd delta = 1", &[l.order()], |x| t.bd[t.delta[x[0]]] == p.identity());
    let im_delta = image(&t.delta);
    let im_bd = image(&t.bd);
    r.run("image of delta is normal", &[1], |_| k.is_normal(&im_delta));
    r.run("image of bd is normal", &[1], |_| p.is_normal(&im_bd));
    check_action(&mut r, "action on L", p, l, &t.act_l);
    check_action(&mut r, "action on K", p, k, &t.act_k);
    check_map_equivariant(&mut r, "delta", p, l, &t.delta, &t.act_l, &t.act_k);
    check_equivariance(&mut r, "bd", k, p, &t.bd, &t.act_k);
    let (ol, ok, op) = (l.order(), k.order(), p.order());
    let b = |x: usize, y: usize| t.braid(x, y);
    let act_k = |x: usize, y: usize| t.act_k[t.bd[x]][y];
    r.run("delta{k0,k1} = k0 k1 k0^-1 (bd k0 . k1^-1)", &[ok, ok], |x| {
        t.delta[b(x[0], x[1])] == k.mul(k.conj(x[0], x[1]), act_k(x[0], k.inv(x[1])))
    });
    r.run("{delta l0, delta l1} = [l0, l1]", &[ol, ol], |x| b(t.delta[x[0]], t.delta[x[1]]) == l.commutator(x[0], x[1]));
    r.run("{delta l, k}{k, delta l} = l (bd k . l^-1)", &[ol, ok], |x| {
        let dl = t.delta[x[0]];
        l.mul(b(dl, x[1]), b(x[1], dl)) == l.mul(x[0], t.act_l[t.bd[x[1]]][l.inv(x[0])])
    });
    r.run("{k0, k1 k2} = {k0,k1}{k0,k2}{delta{k0,k2}^-1, bd k0 . k1}", &[ok, ok, ok], |x| {
        let last = b(k.inv(t.delta[b(x[0], x[2])]), act_k(x[0], x[1]));
        b(x[0], k.mul(x[1], x[2])) == l.mul(l.mul(b(x[0], x[1]), b(x[0], x[2])), last)
    });
    r.run("{k0 k1, k2} = {k0, k1 k2 k1^-1} (bd k0 . {k1,k2})", &[ok, ok, ok], |x| {
        b(k.mul(x[0], x[1]), x[2]) == l.mul(b(x[0], k.conj(x[1], x[2])), t.act_l[t.bd[x[0]]][b(x[1], x[2])])
    });
    r.run("p . {k0,k1} = {p . k0, p . k1}", &[op, ok, ok], |x| {
        t.act_l[x[0]][b(x[1], x[2])] == b(t.act_k[x[0]][x[1]], t.act_k[x[0]][x[2]])
    });
    r
}

/// `pi_1 = coker bd`, `pi_2 = ker bd / im delta`, `pi_3 = ker delta`, with
/// the maps exhibiting them.
#[derive(Clone, Debug)]
pub struct HomotopyGroups {
    pub pi1: Arc<FiniteGroup>,
    /// `P -> pi_1`.
    pub pi1_proj: GroupHom,
    pub pi2: Arc<FiniteGroup>,
    /// `ker bd -> K`.
    pub ker_bd: GroupHom,
    /// `ker bd -> pi_2`.
    pub pi2_proj: GroupHom,
    pub pi3: Arc<FiniteGroup>,
    /// `pi_3 -> L`.
    pub pi3_inc: GroupHom,
}

impl HomotopyGroups {
    pub fn orders(&self) -> (usize, usize, usize) {
        (self.pi1.order(), self.pi2.order(), self.pi3.order())
    }
}

pub fn homotopy_groups(t: &TwoCrossedModule) -> Result<HomotopyGroups> {
    let (pi1, pi1_proj) = t.p.quotient(&image(&t.bd))?;
    let (ker, ker_bd) = t.k.subgroup(&kernel(&t.k, &t.p, &t.bd))?;
    let im_delta: Vec<usize> = image(&t.delta)
        .into_iter()
        .map(|x| {
            ker_bd
                .table()
                .iter()
                .position(|&y| y == x)
                .ok_or_else(|| Error::InvalidStructure("im delta is not inside ker bd".into()))
        })
        .collect::<Result<_>>()?;
    let (pi2, pi2_proj) = ker.quotient(&im_delta)?;
    let (pi3, pi3_inc) = t.l.subgroup(&kernel(&t.l, &t.k, &t.delta))?;
    Ok(HomotopyGroups { pi1, pi1_proj, pi2, ker_bd, pi2_proj, pi3, pi3_inc })
}

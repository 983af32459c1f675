//! The commutator pairing `eta(alpha, beta)` of a left-localized and a
//! right-localized automorphism: the canonical unitary whose adjoint action is
//! the group commutator `alpha beta alpha^{-1} beta^{-1}`.
//!
//! For a single-layer right circuit `B`, `eta_R(A, B) = A(B_r) B_r^{-1}` where
//! `B_r` keeps the gates inside the ball of radius `r` around the origin; the
//! value is constant once `r` exceeds the ranges involved. Multi-layer
//! circuits go through `eta_R(A, B B') = eta_R(A, B) . B(eta_R(A, B'))`, and
//! symmetrically `eta_L(A A', B) = A(eta_L(A', B)) . eta_L(A, B)` with
//! `eta_L(A, B) = A_r B(A_r^{-1})` for a single layer.

use rand::Rng;

use crate::circuits::Circuit;
use crate::error::{Error, Result};
use crate::lattice::{Region, Site, Window};
use crate::symop::SymOp;

#[derive(Clone, Debug)]
pub enum AutRepr {
    Circuit(Circuit),
    /// `Ad_u` for a finitely supported unitary `u`.
    Inner(SymOp),
}

/// An automorphism together with the region it is localized in.
#[derive(Clone, Debug)]
pub struct LocalizedAutomorphism {
    pub repr: AutRepr,
    pub region: Region,
}

impl LocalizedAutomorphism {
    pub fn circuit(c: Circuit, region: Region) -> Self {
        Self { repr: AutRepr::Circuit(c), region }
    }

    pub fn inner(u: SymOp, region: Region) -> Self {
        Self { repr: AutRepr::Inner(u), region }
    }

    pub fn identity(window: Window) -> Self {
        Self::circuit(Circuit::identity(window), Region::full())
    }

    /// Circuit form; an inner automorphism becomes the circuit of its unitary
    /// (up to a scalar, which does not affect the action).
    pub fn as_circuit(&self, window: Window) -> Circuit {
        match &self.repr {
            AutRepr::Circuit(c) => c.clone(),
            AutRepr::Inner(u) => Circuit::from_symop(u, window),
        }
    }

    pub fn range(&self) -> u32 {
        match &self.repr {
            AutRepr::Circuit(c) => c.range(),
            AutRepr::Inner(u) => Circuit::symop_range(u),
        }
    }

    /// Image of a local operator.
    pub fn apply(&self, a: &SymOp) -> SymOp {
        match &self.repr {
            AutRepr::Circuit(c) => c.conj_unchecked(a),
            AutRepr::Inner(u) => a.conj(u),
        }
    }

    pub fn inverse(&self) -> Self {
        let repr = match &self.repr {
            AutRepr::Circuit(c) => AutRepr::Circuit(c.inverse()),
            AutRepr::Inner(u) => AutRepr::Inner(u.inv()),
        };
        Self { repr, region: self.region.clone() }
    }

    /// The composite `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self, window: Window) -> Self {
        let repr = match (&self.repr, &other.repr) {
            (AutRepr::Inner(u), AutRepr::Inner(v)) => AutRepr::Inner(u.mul(v)),
            _ => AutRepr::Circuit(Circuit::concat(&[&self.as_circuit(window), &other.as_circuit(window)])),
        };
        let region = if self.region == other.region { self.region.clone() } else { Region::full() };
        Self { repr, region }
    }

    /// `gamma . self . gamma^{-1}`, computed gate by gate.
    pub fn conjugated_by(&self, gamma: &LocalizedAutomorphism) -> Self {
        let repr = match &self.repr {
            AutRepr::Inner(u) => AutRepr::Inner(gamma.apply(u)),
            AutRepr::Circuit(c) => AutRepr::Circuit(c.map_gates(|g| gamma.apply(g))),
        };
        Self { repr, region: self.region.clone() }
    }
}

fn ball(c: &[SymOp], r: u32) -> SymOp {
    let mut acc = SymOp::identity();
    for g in c {
        if g.support().iter().all(|s| s.norm() <= r) {
            acc.mul_assign(g);
        }
    }
    acc
}

fn stabilization_radius(a: &LocalizedAutomorphism, b: &LocalizedAutomorphism) -> u32 {
    a.range() + b.range() + a.region.thickening + b.region.thickening + 1
}

fn layer_unitary(layer: &[SymOp]) -> SymOp {
    SymOp::product(layer)
}

/// Right-layer definition. `b` is taken in circuit form.
pub fn eta_r(a: &LocalizedAutomorphism, b: &LocalizedAutomorphism, window: Window) -> Result<SymOp> {
    let r0 = stabilization_radius(a, b);
    let bc = b.as_circuit(window);
    let single = |layer: &[SymOp], r: u32| {
        let br = ball(layer, r);
        a.apply(&br).mul(&br.inv())
    };
    let mut e = SymOp::identity();
    for layer in bc.layers().iter().rev() {
        let (x, y) = (single(layer, r0), single(layer, r0 + 2));
        if x != y {
            return Err(Error::NoStabilization(r0, r0 + 2));
        }
        e = x.mul(&e.conj(&layer_unitary(layer)));
    }
    Ok(e)
}

/// Left-layer definition. `a` is taken in circuit form.
pub fn eta_l(a: &LocalizedAutomorphism, b: &LocalizedAutomorphism, window: Window) -> Result<SymOp> {
    let r0 = stabilization_radius(a, b);
    let ac = a.as_circuit(window);
    let single = |layer: &[SymOp], r: u32| {
        let ar = ball(layer, r);
        ar.mul(&b.apply(&ar.inv()))
    };
    let mut e = SymOp::identity();
    for layer in ac.layers().iter().rev() {
        let (x, y) = (single(layer, r0), single(layer, r0 + 2));
        if x != y {
            return Err(Error::NoStabilization(r0, r0 + 2));
        }
        e = e.conj(&layer_unitary(layer)).mul(&x);
    }
    Ok(e)
}

/// `eta(a, b)` computed along every available route; the routes must agree
/// exactly.
pub fn eta(a: &LocalizedAutomorphism, b: &LocalizedAutomorphism, window: Window) -> Result<SymOp> {
    let mut routes: Vec<(&str, SymOp)> = vec![("eta_R", eta_r(a, b, window)?), ("eta_L", eta_l(a, b, window)?)];
    if let AutRepr::Inner(u) = &a.repr {
        routes.push(("u b(u^-1)", u.mul(&b.apply(&u.inv()))));
    }
    if let AutRepr::Inner(v) = &b.repr {
        routes.push(("a(v) v^-1", a.apply(v).mul(&v.inv())));
    }
    if let (AutRepr::Inner(u), AutRepr::Inner(v)) = (&a.repr, &b.repr) {
        routes.push(("[u,v]", u.commutator(v)));
    }
    let (name0, first) = &routes[0];
    for (name, val) in &routes[1..] {
        if val != first {
            return Err(Error::RouteDisagreement(format!("{name0} = {first}, {name} = {val}")));
        }
    }
    Ok(routes.swap_remove(0).1)
}

/// Inner `eta(Ad_u, Ad_v)`, the group commutator.
pub fn eta_inner(u: &SymOp, v: &SymOp) -> SymOp {
    u.commutator(v)
}

/// A random gate from `{X, Z, CZ, CCZ}` anchored at `s`, spreading towards
/// the side given by `dir` (`-1` left, `+1` right).
fn random_gate<R: Rng>(rng: &mut R, s: Site, dir: i32, one_d: bool) -> SymOp {
    let step = |rng: &mut R| {
        if one_d || rng.gen_bool(0.5) {
            s.offset(dir, 0)
        } else {
            s.offset(0, if rng.gen_bool(0.5) { 1 } else { -1 })
        }
    };
    match rng.gen_range(0..4) {
        0 => SymOp::x(s),
        1 => SymOp::z(s),
        2 => SymOp::cz(s, step(rng)),
        _ => {
            let t = step(rng);
            let u = if one_d { s.offset(2 * dir, 0) } else { t.offset(0, 1).max(s.offset(dir, 1)) };
            if u == s || u == t {
                SymOp::cz(s, t)
            } else {
                SymOp::ccz(s, t, u)
            }
        }
    }
}

/// Random localized circuit near the origin on the side `dir`: one to three
/// layers of disjoint random gates, sometimes followed by a layer reaching
/// to the window edge.
pub fn random_localized<R: Rng>(rng: &mut R, window: Window, dir: i32) -> LocalizedAutomorphism {
    let one_d = window.is_1d();
    let region = if dir < 0 { Region::half_line_l(2) } else { Region::half_line_r(2) };
    let mut layers = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let mut used = std::collections::BTreeSet::new();
        let mut layer = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let x = dir * rng.gen_range(0..=2);
            let y = if one_d { 0 } else { rng.gen_range(-1..=1) };
            let g = random_gate(rng, Site::new(x, y), dir, one_d);
            let sup = g.support();
            if sup.iter().all(|s| region.contains(s) && window.contains(s)) && sup.is_disjoint(&used) {
                used.extend(sup);
                layer.push(g);
            }
        }
        layers.push(layer);
    }
    if rng.gen_bool(0.3) {
        // a string reaching the window edge
        let y = if one_d { 0 } else { rng.gen_range(-1..=1) };
        let mut layer = Vec::new();
        let sites: Vec<Site> = window
            .sites()
            .filter(|s| s.y == y && (if dir < 0 { s.x <= 0 } else { s.x >= 0 }))
            .collect();
        let diag = rng.gen_bool(0.5);
        for (i, s) in sites.iter().enumerate() {
            if diag {
                if i % 2 == 0 && i + 1 < sites.len() {
                    layer.push(SymOp::cz(*s, sites[i + 1]));
                }
            } else {
                layer.push(SymOp::x(*s));
            }
        }
        layers.push(layer);
    }
    let c = Circuit::new(layers, window).expect("random layers are disjoint");
    LocalizedAutomorphism::circuit(c, region)
}

/// Random finitely supported unitary near the origin.
pub fn random_local_op<R: Rng>(rng: &mut R, window: Window) -> SymOp {
    let one_d = window.is_1d();
    let mut u = SymOp::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let x = rng.gen_range(-1..=1);
        let y = if one_d { 0 } else { rng.gen_range(-1..=1) };
        let dir = if rng.gen_bool(0.5) { 1 } else { -1 };
        u = u.mul(&random_gate(rng, Site::new(x, y), dir, one_d));
    }
    if rng.gen_bool(0.5) {
        u = u.mul(&SymOp::minus_one());
    }
    u
}

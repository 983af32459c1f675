use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::rule::{GatePattern, GateRule, ProceduralCircuit};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupJson};
use crate::lattice::{Region, Site, Window};
use crate::symop::SymOp;

pub const BUILTIN_ACTIONS: &[&str] =
    &["ccz_x_2d", "levin_gu_1d", "onsite_x_2d", "onsite_x_even_odd_1d", "trivial_z2_2d"];

/// A finite group acting by circuits: one procedural circuit per element.
#[derive(Clone, Debug)]
pub struct CircuitAction {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub circuits: Vec<ProceduralCircuit>,
    pub window: Window,
}

/// Config form of an action. Elements that are not listed get the circuit of
/// a shortest word in the listed ones.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ActionConfig {
    pub group: GroupJson,
    pub generators: Vec<ElementCircuit>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementCircuit {
    pub element: String,
    pub layers: Vec<GateRule>,
}

fn z2xz2() -> Arc<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2);
    Arc::new(z2.product(&z2))
}

fn rule(pattern: GatePattern) -> GateRule {
    GateRule::new(pattern, Region::full())
}

/// A builtin action configured on `window`.
pub fn builtin_action(name: &str, window: Window) -> Result<CircuitAction> {
    let circ = |rules: Vec<GateRule>| ProceduralCircuit::new(rules, window);
    let (group, circuits) = match name {
        // element (g1, g2) acts by U1^g1 U2^g2: CCZ on all triangles, X everywhere
        "ccz_x_2d" => {
            let g = z2xz2();
            let circuits = (0..4)
                .map(|e| {
                    let mut rules = Vec::new();
                    if e / 2 == 1 {
                        rules.push(rule(GatePattern::CczTriangles));
                    }
                    if e % 2 == 1 {
                        rules.push(rule(GatePattern::XOnSites));
                    }
                    circ(rules)
                })
                .collect();
            (g, circuits)
        }
        "levin_gu_1d" => (
            Arc::new(FiniteGroup::cyclic(2)),
            vec![circ(vec![]), circ(vec![rule(GatePattern::XOnSites), rule(GatePattern::CzChainEdges)])],
        ),
        "onsite_x_2d" => {
            (Arc::new(FiniteGroup::cyclic(2)), vec![circ(vec![]), circ(vec![rule(GatePattern::XOnSites)])])
        }
        // (a, b) acts by X on even sites if a, X on odd sites if b
        "onsite_x_even_odd_1d" => {
            let g = z2xz2();
            let parity_x = |p: i32| {
                let gates = window.sites().filter(|s| s.x.rem_euclid(2) == p).map(SymOp::x).collect();
                rule(GatePattern::Explicit(gates))
            };
            let circuits = (0..4)
                .map(|e| {
                    let mut rules = Vec::new();
                    if e / 2 == 1 {
                        rules.push(parity_x(0));
                    }
                    if e % 2 == 1 {
                        rules.push(parity_x(1));
                    }
                    circ(rules)
                })
                .collect();
            (g, circuits)
        }
        "trivial_z2_2d" => (Arc::new(FiniteGroup::cyclic(2)), vec![circ(vec![]), circ(vec![])]),
        other => return Err(Error::UnknownAction(other.to_string())),
    };
    Ok(CircuitAction { name: name.to_string(), group, circuits, window })
}

impl CircuitAction {
    pub fn from_config(name: &str, cfg: &ActionConfig, window: Window) -> Result<CircuitAction> {
        let group = Arc::new(FiniteGroup::from_json(&cfg.group)?);
        let mut assigned: Vec<Option<ProceduralCircuit>> = vec![None; group.order()];
        assigned[group.identity()] = Some(ProceduralCircuit::identity(window));
        let mut gens = Vec::new();
        for ec in &cfg.generators {
            let e = group
                .find(&ec.element)
                .or_else(|| ec.element.parse::<usize>().ok().filter(|&i| i < group.order()))
                .ok_or_else(|| Error::Parse(format!("unknown element {:?}", ec.element)))?;
            let c = ProceduralCircuit::new(ec.layers.clone(), window);
            c.check()?;
            assigned[e] = Some(c.clone());
            gens.push((e, c));
        }
        // breadth-first words in the listed elements
        let mut queue: VecDeque<usize> = assigned.iter().enumerate().filter(|(_, c)| c.is_some()).map(|(i, _)| i).collect();
        while let Some(a) = queue.pop_front() {
            for (g, cg) in &gens {
                let b = group.mul(a, *g);
                if assigned[b].is_none() {
                    let c = assigned[a].as_ref().expect("assigned").then(cg);
                    assigned[b] = Some(c);
                    queue.push_back(b);
                }
            }
        }
        let circuits = assigned
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| Error::InvalidGroup(format!("element {} not generated", group.name(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        let action = CircuitAction { name: name.to_string(), group, circuits, window };
        action.check_homomorphism()?;
        Ok(action)
    }

    pub fn circuit(&self, g: usize) -> &ProceduralCircuit {
        &self.circuits[g]
    }

    pub fn range(&self) -> u32 {
        self.circuits.iter().map(ProceduralCircuit::range).max().unwrap_or(0)
    }

    pub fn is_1d(&self) -> bool {
        self.window.is_1d()
    }

    /// Checks that `g -> circuit(g)` is a homomorphism into automorphisms on
    /// single-site `X` and `Z` observables near the origin, and that the
    /// identity acts trivially.
    pub fn check_homomorphism(&self) -> Result<()> {
        let g = &self.group;
        let inst: Vec<Circuit> = self.circuits.iter().map(|c| c.instantiate()).collect::<Result<_>>()?;
        if !inst[g.identity()].to_symop().is_scalar() {
            return Err(Error::NotHomomorphism("identity element acts nontrivially".into()));
        }
        let samples: Vec<Site> = self
            .window
            .sites()
            .filter(|s| s.norm() <= 1)
            .collect();
        for a in g.elements() {
            for b in g.elements() {
                let ab = inst[g.mul(a, b)].inverse();
                let prod = Circuit::concat(&[&inst[a], &inst[b], &ab]);
                for s in &samples {
                    for obs in [SymOp::x(*s), SymOp::z(*s)] {
                        let img = prod.conj(&obs)?;
                        if img != obs {
                            return Err(Error::NotHomomorphism(format!(
                                "rho({})rho({})rho({})^-1 maps {obs} to {img}",
                                g.name(a),
                                g.name(b),
                                g.name(g.mul(a, b))
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

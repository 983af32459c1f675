use serde::{Deserialize, Serialize};

use super::circuit::{greedy_layers, layers_range, Circuit};
use crate::error::{Error, Result};
use crate::lattice::{Region, Site, Window};
use crate::symop::SymOp;

/// What a rule places on every admissible site, edge, triangle or list entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pattern", content = "gates", rename_all = "snake_case")]
pub enum GatePattern {
    XOnSites,
    ZOnSites,
    /// Two CCZ gates per unit square: with `k` the lower-left corner, `l`
    /// lower-right, `i` upper-left and `j` upper-right, the triangles `ijk`
    /// and `jkl`.
    CczTriangles,
    /// CZ on every horizontal edge `((x,y),(x+1,y))`.
    CzHorizontalEdges,
    /// CZ on the edges of the chain `y = 0`.
    CzChainEdges,
    /// A literal gate list, multiplied in order.
    Explicit(Vec<SymOp>),
}

/// A gate pattern restricted to a region. A generated gate is kept when all of
/// its sites lie in `region`, in every filter, and in the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateRule {
    #[serde(flatten)]
    pub pattern: GatePattern,
    #[serde(default = "Region::full")]
    pub region: Region,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub filters: Vec<Region>,
}

impl GateRule {
    pub fn new(pattern: GatePattern, region: Region) -> Self {
        Self { pattern, region, filters: Vec::new() }
    }

    fn keeps(&self, sites: &[Site], window: &Window) -> bool {
        sites.iter().all(|s| {
            window.contains(s) && self.region.contains(s) && self.filters.iter().all(|f| f.contains(s))
        })
    }

    /// Largest L-infinity diameter of a generated gate. The procedural
    /// patterns are commuting families, so this bounds the spread of the whole
    /// rule.
    pub fn range(&self) -> u32 {
        match &self.pattern {
            GatePattern::XOnSites | GatePattern::ZOnSites => 0,
            GatePattern::CczTriangles | GatePattern::CzHorizontalEdges | GatePattern::CzChainEdges => 1,
            GatePattern::Explicit(gates) => layers_range(&greedy_layers(gates.iter().cloned())),
        }
    }

    /// Gates as ordered sublayers, each a set of pairwise disjoint gates.
    pub fn instantiate(&self, window: &Window) -> Vec<Vec<SymOp>> {
        let mut classes: Vec<Vec<SymOp>> = Vec::new();
        let mut put = |class: usize, gate: SymOp| {
            if classes.len() <= class {
                classes.resize(class + 1, Vec::new());
            }
            classes[class].push(gate);
        };
        let parity = |v: i32| v.rem_euclid(2) as usize;
        match &self.pattern {
            GatePattern::XOnSites | GatePattern::ZOnSites => {
                for s in window.sites() {
                    if self.keeps(&[s], window) {
                        let g = if matches!(self.pattern, GatePattern::XOnSites) { SymOp::x(s) } else { SymOp::z(s) };
                        put(0, g);
                    }
                }
            }
            GatePattern::CczTriangles => {
                for k in window.sites() {
                    let (l, i, j) = (k.offset(1, 0), k.offset(0, 1), k.offset(1, 1));
                    let class = 4 * parity(k.x) + 2 * parity(k.y);
                    if self.keeps(&[i, j, k], window) {
                        put(class, SymOp::ccz(i, j, k));
                    }
                    if self.keeps(&[j, k, l], window) {
                        put(class + 1, SymOp::ccz(j, k, l));
                    }
                }
            }
            GatePattern::CzHorizontalEdges | GatePattern::CzChainEdges => {
                let chain = matches!(self.pattern, GatePattern::CzChainEdges);
                for a in window.sites() {
                    if chain && a.y != 0 {
                        continue;
                    }
                    let b = a.offset(1, 0);
                    if self.keeps(&[a, b], window) {
                        put(parity(a.x), SymOp::cz(a, b));
                    }
                }
            }
            GatePattern::Explicit(gates) => {
                let kept = gates.iter().filter(|g| {
                    let sup: Vec<Site> = g.support().into_iter().collect();
                    self.keeps(&sup, window)
                });
                return greedy_layers(kept.cloned());
            }
        }
        classes.into_iter().filter(|l| !l.is_empty()).collect()
    }
}

/// An ordered list of gate rules on a window. The represented unitary is
/// `R_1 R_2 ... R_n`, so conjugation applies the last rule first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProceduralCircuit {
    pub rules: Vec<GateRule>,
    pub window: Window,
}

impl ProceduralCircuit {
    pub fn new(rules: Vec<GateRule>, window: Window) -> Self {
        Self { rules, window }
    }

    pub fn identity(window: Window) -> Self {
        Self::new(Vec::new(), window)
    }

    pub fn range(&self) -> u32 {
        self.rules.iter().map(GateRule::range).sum()
    }

    /// Keeps exactly the gates whose support lies in `gamma`.
    pub fn truncate(&self, gamma: &Region) -> ProceduralCircuit {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.filters.push(gamma.clone());
                r
            })
            .collect();
        Self::new(rules, self.window)
    }

    /// Rule-by-rule concatenation; the unitary is `self * other`.
    pub fn then(&self, other: &ProceduralCircuit) -> ProceduralCircuit {
        let mut rules = self.rules.clone();
        rules.extend(other.rules.iter().cloned());
        Self::new(rules, self.window)
    }

    pub fn instantiate(&self) -> Result<Circuit> {
        let mut layers = Vec::new();
        for rule in &self.rules {
            layers.extend(rule.instantiate(&self.window));
        }
        let c = Circuit::new(layers, self.window)?;
        // procedural rules are commuting families whose spread is the rule
        // range, not the sum over their sublayers
        Ok(c.with_range(self.range()))
    }

    /// Sites of all gates, checked against the window; used to validate rule
    /// sets read from configuration.
    pub fn check(&self) -> Result<()> {
        for rule in &self.rules {
            if let GatePattern::Explicit(gates) = &rule.pattern {
                for g in gates {
                    if let Some(s) = g.support().into_iter().find(|s| !self.window.contains(s)) {
                        return Err(Error::WindowOverflow(s));
                    }
                }
            }
        }
        self.instantiate().map(|_| ())
    }
}

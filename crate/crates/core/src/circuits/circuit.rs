use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::lattice::{Site, Window};
use crate::symop::SymOp;

/// Splits an ordered gate list into sublayers of pairwise disjoint gates
/// without changing the product: a new sublayer starts whenever a gate
/// overlaps the current one.
pub(crate) fn greedy_layers(gates: impl IntoIterator<Item = SymOp>) -> Vec<Vec<SymOp>> {
    let mut used: BTreeSet<Site> = BTreeSet::new();
    let mut layers: Vec<Vec<SymOp>> = vec![Vec::new()];
    for g in gates {
        let sup = g.support();
        if sup.iter().any(|s| used.contains(s)) {
            layers.push(Vec::new());
            used.clear();
        }
        used.extend(sup);
        layers.last_mut().expect("nonempty").push(g);
    }
    layers.retain(|l| !l.is_empty());
    layers
}

pub(crate) fn diameter(sites: &BTreeSet<Site>) -> u32 {
    let mut d = 0;
    for a in sites {
        for b in sites {
            d = d.max(a.linf(b));
        }
    }
    d
}

pub(crate) fn layers_range(layers: &[Vec<SymOp>]) -> u32 {
    layers.iter().map(|l| l.iter().map(|g| diameter(&g.support())).max().unwrap_or(0)).sum()
}

/// A materialized circuit: layers of mutually commuting gates, applied as the
/// unitary `L_1 L_2 ... L_n`.
#[derive(Clone, Debug)]
pub struct Circuit {
    layers: Vec<Vec<SymOp>>,
    window: Window,
    range: u32,
    index: Vec<HashMap<Site, Vec<usize>>>,
}

impl Circuit {
    /// Layers whose gates must have pairwise disjoint supports inside the
    /// window.
    pub fn new(layers: Vec<Vec<SymOp>>, window: Window) -> Result<Self> {
        for (li, layer) in layers.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for g in layer {
                for s in g.support() {
                    if !window.contains(&s) {
                        return Err(Error::WindowOverflow(s));
                    }
                    if !seen.insert(s) {
                        return Err(Error::LayerOverlap { layer: li, site: s });
                    }
                }
            }
        }
        Ok(Self::commuting(layers, window))
    }

    /// Layers whose gates commute but may overlap. The caller vouches for
    /// commutativity.
    pub(crate) fn commuting(layers: Vec<Vec<SymOp>>, window: Window) -> Self {
        let layers: Vec<Vec<SymOp>> = layers.into_iter().filter(|l| !l.is_empty()).collect();
        let range = layers_range(&layers);
        let index = layers
            .iter()
            .map(|layer| {
                let mut m: HashMap<Site, Vec<usize>> = HashMap::new();
                for (gi, g) in layer.iter().enumerate() {
                    for s in g.support() {
                        m.entry(s).or_default().push(gi);
                    }
                }
                m
            })
            .collect();
        Self { layers, window, range, index }
    }

    pub(crate) fn with_range(mut self, range: u32) -> Self {
        self.range = range;
        self
    }

    /// One layer of diagonal gates, which always commute.
    pub fn diagonal_layer(gates: Vec<SymOp>, window: Window) -> Result<Self> {
        for g in &gates {
            if !g.is_diagonal() {
                return Err(Error::Support { what: "gate".into(), detail: format!("{g} is not diagonal") });
            }
            if let Some(s) = g.support().into_iter().find(|s| !window.contains(s)) {
                return Err(Error::WindowOverflow(s));
            }
        }
        Ok(Self::commuting(vec![gates], window))
    }

    pub fn identity(window: Window) -> Self {
        Self::commuting(Vec::new(), window)
    }

    /// An ordered gate list, regrouped into disjoint sublayers.
    pub fn from_gate_list(gates: Vec<SymOp>, window: Window) -> Result<Self> {
        Self::new(greedy_layers(gates), window)
    }

    /// A circuit with the same adjoint action as `op`: one layer of diagonal
    /// monomial gates followed by one layer of flips. The constant term is a
    /// scalar and is dropped.
    pub fn from_symop(op: &SymOp, window: Window) -> Self {
        let diag: Vec<SymOp> = op
            .poly
            .monomials()
            .filter(|m| !m.is_constant())
            .map(|m| SymOp::diagonal([m.clone()]))
            .collect();
        let flips: Vec<SymOp> = op.flips.iter().map(|s| SymOp::x(*s)).collect();
        Self::commuting(vec![diag, flips], window)
    }

    /// Range of the circuit built by `from_symop`.
    pub fn symop_range(op: &SymOp) -> u32 {
        op.poly.monomials().map(|m| diameter(&m.sites().iter().copied().collect())).max().unwrap_or(0)
    }

    pub fn layers(&self) -> &[Vec<SymOp>] {
        &self.layers
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// Bound on how far conjugation can spread an operator's support.
    pub fn range(&self) -> u32 {
        self.range
    }

    pub fn gates(&self) -> impl Iterator<Item = &SymOp> {
        self.layers.iter().flatten()
    }

    pub fn num_gates(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn support(&self) -> BTreeSet<Site> {
        self.gates().flat_map(|g| g.support()).collect()
    }

    pub fn inverse(&self) -> Circuit {
        let layers = self.layers.iter().rev().map(|l| l.iter().map(SymOp::inv).collect()).collect();
        Self::commuting(layers, self.window).with_range(self.range)
    }

    /// The circuit for the unitary `c_1 c_2 ... c_k`.
    pub fn concat(parts: &[&Circuit]) -> Circuit {
        let window = parts.first().map(|c| c.window).expect("at least one circuit");
        let layers = parts.iter().flat_map(|c| c.layers.iter().cloned()).collect();
        let range = parts.iter().map(|c| c.range).sum();
        Self::commuting(layers, window).with_range(range)
    }

    /// Keeps the gates selected by `keep`; the range bound is retained.
    pub fn filter_gates(&self, keep: impl Fn(&SymOp) -> bool) -> Circuit {
        let layers = self.layers.iter().map(|l| l.iter().filter(|g| keep(g)).cloned().collect()).collect();
        Self::commuting(layers, self.window).with_range(self.range)
    }

    /// Replaces every gate by its image under `f`, an automorphism, so the
    /// layers stay commuting. The range is recomputed from the new gates.
    pub fn map_gates(&self, f: impl Fn(&SymOp) -> SymOp) -> Circuit {
        let layers = self.layers.iter().map(|l| l.iter().map(&f).collect()).collect();
        Self::commuting(layers, self.window)
    }

    /// The whole unitary as one operator.
    pub fn to_symop(&self) -> SymOp {
        let mut acc = SymOp::identity();
        for g in self.gates() {
            acc.mul_assign(g);
        }
        acc
    }

    /// `U a U^{-1}` for the circuit unitary `U`. Fails when `a` comes within
    /// the circuit range of the window edge, where missing gates would
    /// corrupt the result.
    pub fn conj(&self, a: &SymOp) -> Result<SymOp> {
        for s in a.support() {
            if !self.window.contains(&s) || self.window.edge_distance(&s) <= self.range {
                return Err(Error::MarginViolation(s));
            }
        }
        Ok(self.conj_unchecked(a))
    }

    /// Conjugation without the margin check, for operators whose content near
    /// the window edge is cropped afterwards.
    pub(crate) fn conj_unchecked(&self, a: &SymOp) -> SymOp {
        let mut cur = a.clone();
        for (layer, index) in self.layers.iter().zip(&self.index).rev() {
            let mut hit = BTreeSet::new();
            for s in cur.support() {
                if let Some(gs) = index.get(&s) {
                    hit.extend(gs.iter().copied());
                }
            }
            for gi in hit {
                cur = cur.conj(&layer[gi]);
            }
        }
        cur
    }

    /// Gate-wise image of `other` under conjugation by this circuit; a
    /// circuit for `U other U^{-1}`.
    pub fn conj_circuit(&self, other: &Circuit) -> Circuit {
        other.map_gates(|g| self.conj_unchecked(g))
    }
}

//! Single-entry mutations of structure tables, for exercising the validators.

use rand::seq::SliceRandom;
use rand::Rng;

use super::module::{validate_crossed_module, CrossedModule};
use super::report::ValidationReport;
use super::square::{validate_crossed_square, validate_two_crossed_module, CrossedSquare, TwoCrossedModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Module(CrossedModule),
    Square(CrossedSquare),
    TwoModule(TwoCrossedModule),
}

/// Where a mutation landed: table name, flat entry index, old and new value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub table: &'static str,
    pub entry: usize,
    pub old: usize,
    pub new: usize,
}

struct Slot<'a> {
    name: &'static str,
    bound: usize,
    entries: Vec<&'a mut usize>,
}

fn flat<'a>(name: &'static str, bound: usize, v: &'a mut [usize]) -> Slot<'a> {
    Slot { name, bound, entries: v.iter_mut().collect() }
}

fn nested<'a>(name: &'static str, bound: usize, v: &'a mut [Vec<usize>]) -> Slot<'a> {
    Slot { name, bound, entries: v.iter_mut().flat_map(|r| r.iter_mut()).collect() }
}

impl Structure {
    pub fn validate(&self) -> ValidationReport {
        match self {
            Structure::Module(c) => validate_crossed_module(c),
            Structure::Square(c) => validate_crossed_square(c),
            Structure::TwoModule(c) => validate_two_crossed_module(c),
        }
    }

    fn slots(&mut self) -> Vec<Slot<'_>> {
        match self {
            Structure::Module(c) => {
                let (om, on) = (c.m.order(), c.n.order());
                vec![flat("bd", on, &mut c.bd), nested("act", om, &mut c.act)]
            }
            Structure::Square(c) => {
                let (ol, om, on, op) = (c.l.order(), c.m.order(), c.n.order(), c.p.order());
                vec![
                    flat("f", om, &mut c.f),
                    flat("g", on, &mut c.g),
                    flat("v", op, &mut c.v),
                    flat("u", op, &mut c.u),
                    nested("act_l", ol, &mut c.act_l),
                    nested("act_m", om, &mut c.act_m),
                    nested("act_n", on, &mut c.act_n),
                    flat("eta", ol, &mut c.eta),
                ]
            }
            Structure::TwoModule(c) => {
                let (ol, ok, op) = (c.l.order(), c.k.order(), c.p.order());
                vec![
                    flat("delta", ok, &mut c.delta),
                    flat("bd", op, &mut c.bd),
                    nested("act_l", ol, &mut c.act_l),
                    nested("act_k", ok, &mut c.act_k),
                    flat("braid", ol, &mut c.braid),
                ]
            }
        }
    }

    /// Changes one table entry to a different in-range value. The table is
    /// chosen uniformly among those admitting a change, then the entry.
    /// Returns `None` when no table can be changed.
    pub fn mutate<R: Rng>(&self, rng: &mut R) -> Option<(Structure, Mutation)> {
        let mut out = self.clone();
        let mut slots: Vec<Slot<'_>> = out.slots().into_iter().filter(|s| s.bound > 1 && !s.entries.is_empty()).collect();
        let slot = slots.choose_mut(rng)?;
        let entry = rng.gen_range(0..slot.entries.len());
        let old = *slot.entries[entry];
        let mut new = rng.gen_range(0..slot.bound - 1);
        if new >= old {
            new += 1;
        }
        *slot.entries[entry] = new;
        let m = Mutation { table: slot.name, entry, old, new };
        drop(slots);
        Some((out, m))
    }
}

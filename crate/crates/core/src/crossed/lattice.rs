//! Lattice instances: a finite crossed module sampled from the truncation
//! data of a chain action, crossed squares of operator groups, and pointwise
//! verification of the crossed square of left/right localized automorphisms.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::anomaly::{TruncationData1d, TruncationData2d};
use crate::circuits::{builtin_action, Circuit};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupHom};
use crate::lattice::{Region, Site, Window};
use crate::pairing::{eta, random_local_op, random_localized, LocalizedAutomorphism};
use crate::symop::SymOp;

use super::module::{CrossedModule, KernelIso};
use super::square::CrossedSquare;

const MAX_ORDER: usize = 4096;

/// Closure of `gens` under `mul`, failing when the products are not
/// consistent with a finite group structure on the equivalence classes.
fn close<T, F>(gens: &[T], id: T, mul: F) -> Result<(FiniteGroup, Vec<T>)>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elems = vec![id];
    let mut index: HashMap<T, usize> = HashMap::from([(elems[0].clone(), 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = mul(&elems[i], g);
            if !index.contains_key(&y) {
                if elems.len() == MAX_ORDER {
                    return Err(Error::InvalidStructure(format!("generated group exceeds {MAX_ORDER} elements")));
                }
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let mut table = Vec::with_capacity(elems.len());
    for a in &elems {
        let row = elems
            .iter()
            .map(|b| index.get(&mul(a, b)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidStructure("products leave the generated set".into()))?;
        table.push(row);
    }
    Ok((FiniteGroup::from_table(table, None)?, elems))
}

/// An operator identified by its action on the Pauli generators at a fixed
/// set of sites.
#[derive(Clone, Debug)]
struct Germ {
    op: SymOp,
    key: Vec<SymOp>,
}

impl Germ {
    fn new(op: SymOp, sites: &[Site]) -> Self {
        let key = sites
            .iter()
            .flat_map(|&s| [SymOp::x(s), SymOp::z(s)])
            .map(|o| o.conj(&op))
            .collect();
        Self { op, key }
    }
}

impl PartialEq for Germ {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Germ {}

impl Hash for Germ {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

/// The crossed module of a chain action at finite scale, with the section
/// given by the truncations and the induced map from the symmetry group.
#[derive(Clone, Debug)]
pub struct LatticeCrossedModule {
    pub module: CrossedModule,
    pub sigma: Vec<usize>,
    pub iso: KernelIso,
    /// `G -> coker bd`, `g -> [rho_t(g)]`.
    pub rho: GroupHom,
    /// Concrete operators for the elements of `M`.
    pub m_ops: Vec<SymOp>,
}

/// `M` is generated by `-1` and the `nu(g,h)`, closed under conjugation by
/// the truncations; `N` is generated by the truncations and `M`, with
/// operators compared through their action on the sites at least
/// `margin + 2 range` from the window edge.
pub fn lattice_crossed_module_1d(data: &TruncationData1d) -> Result<LatticeCrossedModule> {
    let w = data.window;
    let depth = w.margin + 2 * data.range.max(1);
    let key_sites: Vec<Site> = w.sites().filter(|s| w.edge_distance(s) >= depth).collect();
    let rho_ops: Vec<SymOp> = data.rho_tilde.iter().map(Circuit::to_symop).collect();

    let mut m_gens: Vec<SymOp> = vec![SymOp::minus_one()];
    m_gens.extend(data.nu.iter().filter(|o| !o.is_identity()).cloned());
    let (m_group, m_ops) = loop {
        let (grp, ops) = close(&m_gens, SymOp::identity(), |a, b| a.mul(b))?;
        let fresh: Vec<SymOp> = ops
            .iter()
            .flat_map(|m| rho_ops.iter().map(move |r| m.conj(r)))
            .filter(|c| !ops.contains(c))
            .collect();
        if fresh.is_empty() {
            break (grp, ops);
        }
        m_gens.push(fresh[0].clone());
    };
    let m_index: HashMap<&SymOp, usize> = m_ops.iter().enumerate().map(|(i, o)| (o, i)).collect();

    let mut n_gens: Vec<Germ> = rho_ops.iter().map(|o| Germ::new(o.clone(), &key_sites)).collect();
    n_gens.extend(m_gens.iter().map(|o| Germ::new(o.clone(), &key_sites)));
    let id = Germ::new(SymOp::identity(), &key_sites);
    let (n_group, n_ops) = close(&n_gens, id, |a, b| Germ::new(a.op.mul(&b.op), &key_sites))?;
    let n_index: HashMap<&Germ, usize> = n_ops.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let n_of = |op: &SymOp| {
        n_index
            .get(&Germ::new(op.clone(), &key_sites))
            .copied()
            .ok_or_else(|| Error::InvalidStructure(format!("{op} is not in the generated N")))
    };

    let bd = m_ops.iter().map(&n_of).collect::<Result<Vec<_>>>()?;
    let mut act = Vec::with_capacity(n_ops.len());
    for n in &n_ops {
        let row = m_ops
            .iter()
            .map(|m| {
                let c = m.conj(&n.op);
                m_index.get(&c).copied().ok_or_else(|| Error::InvalidStructure(format!("{c} is not in M")))
            })
            .collect::<Result<Vec<_>>>()?;
        act.push(row);
    }
    let module = CrossedModule::new(Arc::new(m_group), Arc::new(n_group), bd, act);
    let (q, proj) = module.coker()?;
    let rho_n = rho_ops.iter().map(&n_of).collect::<Result<Vec<_>>>()?;
    let rho = GroupHom::new(data.group.clone(), q.clone(), rho_n.iter().map(|&x| proj.apply(x)).collect())?;
    let mut sigma = vec![usize::MAX; q.order()];
    for g in data.group.elements() {
        let c = rho.apply(g);
        if sigma[c] == usize::MAX {
            sigma[c] = rho_n[g];
        }
    }
    if sigma.contains(&usize::MAX) {
        return Err(Error::InvalidStructure("the truncations do not reach every class of coker bd".into()));
    }
    let iso = KernelIso::from_generator(&module, m_index[&SymOp::minus_one()])?;
    Ok(LatticeCrossedModule { module, sigma, iso, rho, m_ops })
}

/// A crossed square of operator groups. `M`, `N` and `P` are generated by
/// `left`, `right` and `left ∪ right` modulo scalars, with `P` acting by
/// conjugation; `L` is generated by `local` and `-1`, and
/// `eta(m, n) = [m, n]` computed on representatives. The commutators must
/// land in `L`.
pub fn operator_square(left: &[SymOp], right: &[SymOp], local: &[SymOp]) -> Result<CrossedSquare> {
    let modsc = |a: &SymOp, b: &SymOp| a.mul(b).without_constant();
    let strip = |v: &[SymOp]| v.iter().map(SymOp::without_constant).collect::<Vec<_>>();
    let (m, m_ops) = close(&strip(left), SymOp::identity(), modsc)?;
    let (n, n_ops) = close(&strip(right), SymOp::identity(), modsc)?;
    let both: Vec<SymOp> = strip(left).into_iter().chain(strip(right)).collect();
    let (p, p_ops) = close(&both, SymOp::identity(), modsc)?;
    let mut l_gens = vec![SymOp::minus_one()];
    l_gens.extend(local.iter().cloned());
    let (l, l_ops) = close(&l_gens, SymOp::identity(), |a, b| a.mul(b))?;
    let find = |ops: &[SymOp], x: &SymOp, what: &str| {
        ops.iter().position(|o| o == x).ok_or_else(|| Error::InvalidStructure(format!("{x} is not in {what}")))
    };
    let map = |src: &[SymOp], dst: &[SymOp], what: &str| -> Result<Vec<usize>> {
        src.iter().map(|x| find(dst, &x.without_constant(), what)).collect()
    };
    let act = |ops: &[SymOp], exact: bool, what: &str| -> Result<Vec<Vec<usize>>> {
        p_ops
            .iter()
            .map(|q| {
                ops.iter()
                    .map(|x| {
                        let c = x.conj(q);
                        find(ops, &if exact { c } else { c.without_constant() }, what)
                    })
                    .collect()
            })
            .collect()
    };
    let mut eta = Vec::with_capacity(m_ops.len() * n_ops.len());
    for a in &m_ops {
        for b in &n_ops {
            eta.push(find(&l_ops, &a.commutator(b), "L")?);
        }
    }
    Ok(CrossedSquare {
        f: map(&l_ops, &m_ops, "M")?,
        g: map(&l_ops, &n_ops, "N")?,
        v: map(&m_ops, &p_ops, "P")?,
        u: map(&n_ops, &p_ops, "P")?,
        act_l: act(&l_ops, true, "L")?,
        act_m: act(&m_ops, false, "M")?,
        act_n: act(&n_ops, false, "N")?,
        eta,
        l: Arc::new(l),
        m: Arc::new(m),
        n: Arc::new(n),
        p: Arc::new(p),
    })
}

/// Paulis on sites `-1, 0` (left) and `0, 1` (right) of a chain, with `L`
/// the signed Paulis at site `0`.
pub fn pauli_square() -> Result<CrossedSquare> {
    let s = |x| Site::new(x, 0);
    let paulis = |xs: &[i32]| xs.iter().flat_map(|&x| [SymOp::x(s(x)), SymOp::z(s(x))]).collect::<Vec<_>>();
    operator_square(&paulis(&[-1, 0]), &paulis(&[0, 1]), &paulis(&[0]))
}

/// Pass and failure counts for one crossed square equation.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EquationTally {
    pub equation: String,
    pub passed: usize,
    pub failed: usize,
    /// Samples where a pairing could not be evaluated.
    pub errors: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeSquareReport {
    pub seed: u64,
    pub samples: usize,
    pub equations: Vec<EquationTally>,
}

impl LatticeSquareReport {
    pub fn all_passed(&self) -> bool {
        self.equations.iter().all(|e| e.failed == 0 && e.errors == 0)
    }
}

struct Tally(Vec<EquationTally>);

impl Tally {
    fn record(&mut self, name: &str, outcome: Result<bool>, context: impl FnOnce() -> String) {
        let t = match self.0.iter_mut().position(|e| e.equation == name) {
            Some(i) => &mut self.0[i],
            None => {
                self.0.push(EquationTally { equation: name.into(), ..Default::default() });
                self.0.last_mut().expect("just pushed")
            }
        };
        match outcome {
            Ok(true) => t.passed += 1,
            Ok(false) => {
                t.failed += 1;
                t.first_failure.get_or_insert_with(context);
            }
            Err(e) => {
                t.errors += 1;
                t.first_failure.get_or_insert_with(|| format!("{}: {e}", context()));
            }
        }
    }
}

/// Observables on which automorphisms are compared.
fn probes(window: Window) -> Vec<SymOp> {
    window
        .sites()
        .filter(|s| s.norm() <= 2)
        .flat_map(|s| [SymOp::x(s), SymOp::z(s)])
        .collect()
}

fn same_action(probes: &[SymOp], a: impl Fn(&SymOp) -> SymOp, b: impl Fn(&SymOp) -> SymOp) -> bool {
    probes.iter().all(|o| a(o) == b(o))
}

/// A circuit along the boundary: a left and a right localized circuit,
/// sometimes followed by a layer of `X` on the whole boundary row.
fn random_strip<R: Rng>(rng: &mut R, window: Window) -> LocalizedAutomorphism {
    let a = random_localized(rng, window, -1);
    let b = random_localized(rng, window, 1);
    let mut c = Circuit::concat(&[&a.as_circuit(window), &b.as_circuit(window)]);
    if rng.gen_bool(0.3) {
        let row = Circuit::new(vec![window.sites().filter(|s| s.y == 0).map(SymOp::x).collect()], window)
            .expect("single-site gates are disjoint");
        c = Circuit::concat(&[&c, &row]);
    }
    LocalizedAutomorphism::circuit(c, Region::boundary_line(2))
}

fn conj_by(x: &LocalizedAutomorphism, p: &LocalizedAutomorphism) -> LocalizedAutomorphism {
    let mut y = x.conjugated_by(p);
    y.region = x.region.thickened(p.range());
    y
}

/// Samples for the pairing equations: left/right localized circuits, local
/// unitaries and boundary circuits.
pub struct SquareSample {
    pub m: LocalizedAutomorphism,
    pub m2: LocalizedAutomorphism,
    pub n: LocalizedAutomorphism,
    pub n2: LocalizedAutomorphism,
    pub l: SymOp,
    pub p: LocalizedAutomorphism,
}

impl SquareSample {
    pub fn random<R: Rng>(rng: &mut R, window: Window) -> Self {
        Self {
            m: random_localized(rng, window, -1),
            m2: random_localized(rng, window, -1),
            n: random_localized(rng, window, 1),
            n2: random_localized(rng, window, 1),
            l: random_local_op(rng, window),
            p: random_strip(rng, window),
        }
    }
}

/// Checks every crossed square equation on one sample.
fn check_sample(s: &SquareSample, window: Window, probes: &[SymOp], tally: &mut Tally, label: &str) {
    let ctx = || label.to_string();
    let (m, m2, n, n2, l, p) = (&s.m, &s.m2, &s.n, &s.n2, &s.l, &s.p);
    let e_mn = eta(m, n, window);
    tally.record("eta_L = eta_R", e_mn.as_ref().map(|_| true).map_err(Clone::clone), ctx);
    let Ok(e) = e_mn else { return };
    let (mi, ni) = (m.inverse(), n.inverse());
    let comm = |o: &SymOp| m.apply(&n.apply(&mi.apply(&ni.apply(o))));
    tally.record(
        "f eta(m,n) = m (n . m^-1)",
        Ok(same_action(probes, |o| o.conj(&e), |o| m.apply(&conj_by(&mi, n).apply(o)))),
        ctx,
    );
    tally.record(
        "g eta(m,n) = (m . n) n^-1",
        Ok(same_action(probes, |o| o.conj(&e), |o| conj_by(n, m).apply(&ni.apply(o)))),
        ctx,
    );
    tally.record("Ad eta(m,n) = [m, n]", Ok(same_action(probes, |o| o.conj(&e), comm)), ctx);
    let fl = LocalizedAutomorphism::inner(l.clone(), Region::origin_disk(2, 0));
    tally.record(
        "eta(f l, n) = l (n . l^-1)",
        eta(&fl, n, window).map(|x| x == l.mul(&n.apply(&l.inv()))),
        ctx,
    );
    tally.record(
        "eta(m, g l) = (m . l) l^-1",
        eta(m, &fl, window).map(|x| x == m.apply(l).mul(&l.inv())),
        ctx,
    );
    let mm2 = m.compose(m2, window);
    let mm2 = LocalizedAutomorphism { region: Region::half_line_l(2), ..mm2 };
    tally.record(
        "eta(m m', n) = (m . eta(m',n)) eta(m,n)",
        eta(&mm2, n, window).and_then(|lhs| Ok(lhs == m.apply(&eta(m2, n, window)?).mul(&e))),
        ctx,
    );
    let nn2 = n.compose(n2, window);
    let nn2 = LocalizedAutomorphism { region: Region::half_line_r(2), ..nn2 };
    tally.record(
        "eta(m, n n') = eta(m,n) (n . eta(m,n'))",
        eta(m, &nn2, window).and_then(|lhs| Ok(lhs == e.mul(&n.apply(&eta(m, n2, window)?)))),
        ctx,
    );
    tally.record(
        "eta(p . m, p . n) = p . eta(m,n)",
        eta(&conj_by(m, p), &conj_by(n, p), window).map(|lhs| lhs == p.apply(&e)),
        ctx,
    );
    let pl = p.apply(l);
    let pi = p.inverse();
    tally.record(
        "f(p . l) = p . f(l)",
        Ok(same_action(probes, |o| o.conj(&pl), |o| p.apply(&pi.apply(o).conj(l)))),
        ctx,
    );
}

/// Draws `samples` random elements and checks each crossed square equation
/// pointwise. Also includes the `alpha(g,h)`, `beta(k,l)` of the `ccz_x_2d`
/// action as left/right elements when the window is two-dimensional.
pub fn verify_lattice_square(window: Window, samples: usize, seed: u64) -> Result<LatticeSquareReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = probes(window);
    let mut tally = Tally(Vec::new());
    for i in 0..samples {
        let s = SquareSample::random(&mut rng, window);
        check_sample(&s, window, &probes, &mut tally, &format!("sample {i}"));
    }
    if !window.is_1d() {
        let action = builtin_action("ccz_x_2d", window)?;
        let data = TruncationData2d::build(&action)?;
        let grp = data.group.clone();
        let pairs: Vec<(usize, usize)> = grp.elements().flat_map(|a| grp.elements().map(move |b| (a, b))).collect();
        let region_l = Region::half_line_l(data.range + 1);
        let region_r = Region::half_line_r(data.range + 1);
        for (i, &(g, h)) in pairs.iter().enumerate() {
            let (k, l) = pairs[(i * 7 + 3) % pairs.len()];
            let mut s = SquareSample::random(&mut rng, window);
            s.m = LocalizedAutomorphism::inner(data.alpha(g, h).clone(), region_l.clone());
            s.n = LocalizedAutomorphism::inner(data.beta(k, l).clone(), region_r.clone());
            check_sample(&s, window, &probes, &mut tally, &format!("alpha({g},{h}), beta({k},{l})"));
        }
    }
    Ok(LatticeSquareReport { seed, samples, equations: tally.0 })
}

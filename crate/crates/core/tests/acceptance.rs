//! Acceptance suite. Prints one line per criterion and exits nonzero when any
//! criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use anomalion::anomaly::{
    anomaly_2d, nayak_else_1d, regauge_beta, regauge_rho, spt_relative_1d, spt_trivialize_2d, ProductState,
    ReferenceBasis, TruncationData1d, TruncationData2d,
};
use anomalion::circuits::builtin_action;
use anomalion::crossed::fixtures::{crossed_modules, crossed_squares};
use anomalion::crossed::mutation::Structure;
use anomalion::crossed::{
    all_sections, postnikov3, to_two_crossed_module, validate_crossed_module, validate_crossed_square,
    validate_two_crossed_module, verify_lattice_square, KernelIso,
};
use anomalion::groups::SolveOptions;
use anomalion::pairing::random_local_op;
use anomalion::{Cochain, FiniteGroup, Site, SymOp, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::axioms;
use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(t < limit, || format!("{what} took {t:.2?}, limit {limit:.0?}"))
}

fn klein() -> Arc<FiniteGroup> {
    let z2 = FiniteGroup::cyclic(2);
    Arc::new(z2.product(&z2))
}

/// Element `(g1, g2)` of `Z2 x Z2` has index `2 g1 + g2`.
fn g1(e: usize) -> u64 {
    (e / 2) as u64
}

fn g2(e: usize) -> u64 {
    (e % 2) as u64
}

fn expected_tau() -> Cochain {
    Cochain::from_fn(klein(), 4, 2, |t| g2(t[0]) * g2(t[1]) * g2(t[2]) * g1(t[3]))
}

fn ccz_data(width: u32, margin: u32) -> Result<TruncationData2d, String> {
    let w = Window::square(width, width, margin).map_err(|e| e.to_string())?;
    let a = builtin_action("ccz_x_2d", w).map_err(|e| e.to_string())?;
    TruncationData2d::build(&a).map_err(|e| e.to_string())
}

/// CZ on every boundary-row edge that is not entirely inside the window edge
/// zone.
fn boundary_cz_string(w: &Window) -> SymOp {
    let mut out = SymOp::identity();
    for s in w.sites().filter(|s| s.y == 0) {
        let t = s.offset(1, 0);
        if w.contains(&t) && !(w.in_edge_zone(&s) && w.in_edge_zone(&t)) {
            out = out.mul(&SymOp::cz(s, t));
        }
    }
    out
}

fn end_to_end() -> Outcome {
    let t0 = Instant::now();
    let data = ccz_data(12, 3)?;
    let tau = data.tau_cochain().map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed();
    let string = boundary_cz_string(&data.window);
    let origin = SymOp::z(Site::new(0, 0));
    let mut mu_bad = Vec::new();
    for g in 0..4 {
        for h in 0..4 {
            let want = if g2(g) * g1(h) == 1 { string.clone() } else { SymOp::identity() };
            if *data.mu(g, h) != want {
                mu_bad.push(format!("mu({g},{h}) = {}", data.mu(g, h)));
            }
        }
    }
    let mut u_bad = Vec::new();
    for g in 0..4 {
        for h in 0..4 {
            for k in 0..4 {
                let want = if g2(g) * g2(h) * g1(k) == 1 { origin.clone() } else { SymOp::identity() };
                if *data.u(g, h, k) != want {
                    u_bad.push(format!("u({g},{h},{k}) = {}", data.u(g, h, k)));
                }
            }
        }
    }
    let tau_ok = tau == expected_tau();
    within(elapsed, Duration::from_secs(10), "pipeline")?;
    ensure(mu_bad.is_empty() && u_bad.is_empty() && tau_ok, || {
        format!(
            "mu mismatches {} (first: {}), u mismatches {}, tau matches: {tau_ok}",
            mu_bad.len(),
            mu_bad.first().map(String::as_str).unwrap_or("-"),
            u_bad.len()
        )
    })?;
    Ok(format!("mu, u and 256 tau entries match in {elapsed:.2?}"))
}

fn tau_closed() -> Outcome {
    let tau = ccz_data(12, 3)?.tau_cochain().map_err(|e| e.to_string())?;
    let d = tau.coboundary();
    ensure(d.values().len() == 1024, || format!("coboundary has {} entries", d.values().len()))?;
    let bad = d.values().iter().filter(|&&v| v != 0).count();
    ensure(bad == 0, || format!("{bad} of 1024 coboundary entries are nontrivial"))?;
    Ok("coboundary trivial on 1024 tuples".into())
}

fn class_identified() -> Outcome {
    let tau = ccz_data(12, 3)?.tau_cochain().map_err(|e| e.to_string())?;
    let t0 = Instant::now();
    let solved = tau.coboundary_solve(SolveOptions::default());
    let bbba = expected_tau();
    let cohom = tau.cohomologous(&bbba).map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed();
    ensure(solved.is_none(), || "tau is a coboundary".into())?;
    ensure(cohom, || "tau is not cohomologous to b cup b cup b cup a".into())?;
    within(elapsed, Duration::from_secs(1), "class identification")?;
    Ok(format!("nontrivial, cohomologous to b cup b cup b cup a ({elapsed:.2?})"))
}

fn eta_identities() -> Outcome {
    let w = Window::square(12, 12, 3).map_err(|e| e.to_string())?;
    let rep = verify_lattice_square(w, 100, 2024).map_err(|e| e.to_string())?;
    ensure(rep.samples >= 100, || format!("only {} samples", rep.samples))?;
    ensure(rep.equations.iter().any(|e| e.equation.contains("eta_L")), || "eta_L = eta_R not tallied".into())?;
    if let Some(bad) = rep.equations.iter().find(|e| e.failed + e.errors > 0) {
        return Err(format!(
            "{}: {} failed, {} errors, first {:?}",
            bad.equation, bad.failed, bad.errors, bad.first_failure
        ));
    }
    let checks: usize = rep.equations.iter().map(|e| e.passed).sum();
    Ok(format!("{} samples, {} equations, {checks} checks, zero failures", rep.samples, rep.equations.len()))
}

fn gauge_invariance() -> Outcome {
    let data = ccz_data(12, 3)?;
    let tau = data.tau_cochain().map_err(|e| e.to_string())?;
    let w = data.window;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for trial in 0..20 {
        let v: Vec<SymOp> = (0..16).map(|_| random_local_op(&mut rng, w)).collect();
        let t = regauge_beta(&data, &v).and_then(|d| d.tau_cochain()).map_err(|e| format!("beta #{trial}: {e}"))?;
        ensure(t == tau, || format!("regauge_beta #{trial} changed tau"))?;
    }
    for trial in 0..20 {
        let gamma: Vec<SymOp> = (0..4)
            .map(|_| random_local_op(&mut rng, w).filter(|m| m.sites().iter().all(|s| s.y.abs() <= 1), |s| s.y.abs() <= 1))
            .collect();
        let t = regauge_rho(&data, &gamma).and_then(|d| d.tau_cochain()).map_err(|e| format!("rho #{trial}: {e}"))?;
        ensure(t == tau, || format!("regauge_rho #{trial} changed tau"))?;
    }
    Ok("20 + 20 regaugings leave tau bit-identical".into())
}

fn levin_gu(n: u32, margin: u32) -> Result<TruncationData1d, String> {
    let w = Window::chain(n, margin).map_err(|e| e.to_string())?;
    let a = builtin_action("levin_gu_1d", w).map_err(|e| e.to_string())?;
    nayak_else_1d(&a).map(|(d, _)| d).map_err(|e| e.to_string())
}

fn window_stability() -> Outcome {
    let small = ccz_data(12, 3)?;
    let large = ccz_data(16, 5)?;
    let ts = small.tau_cochain().map_err(|e| e.to_string())?;
    let tl = large.tau_cochain().map_err(|e| e.to_string())?;
    ensure(ts == tl, || "tau differs".into())?;
    ensure(small.mu == large.mu, || "mu differs".into())?;
    ensure(small.u == large.u, || "u differs".into())?;
    let ls = levin_gu(12, 3)?.ell_cochain().map_err(|e| e.to_string())?;
    let ll = levin_gu(16, 5)?.ell_cochain().map_err(|e| e.to_string())?;
    ensure(ls == ll, || "1d cochain differs".into())?;
    Ok("tau, mu, u and the 1d cochain agree for margins 3 and 5".into())
}

/// `ell` for the chain action from dense matrices on 12 sites: truncated
/// circuits built gate by gate, `nu = T_g T_h T_gh^{-1}`, split at a cut
/// away from the origin, and the left factors combined.
fn dense_levin_gu_ell() -> Vec<u64> {
    let sites = chain_sites(-6, 5);
    let n = sites.len();
    let right: Vec<Site> = sites.iter().copied().filter(|s| s.x >= 0).collect();
    let mut gates: Vec<SymOp> = right.iter().map(|&s| SymOp::x(s)).collect();
    gates.extend(right.windows(2).map(|p| SymOp::cz(p[0], p[1])));
    let t = [Dense::identity(n), dense_circuit(&gates, &sites)];
    let cut = 10;
    let lefts: Vec<Dense> = (0..4)
        .map(|i| {
            let (a, b) = (i / 2, i % 2);
            let nu = t[a].matmul(&t[b]).matmul(&t[(a + b) % 2].transpose());
            let (l, _) = split_tensor(&nu, cut).expect("nu factorizes across the cut");
            extend_left(&l, n)
        })
        .collect();
    let left = |a: usize, b: usize| &lefts[2 * a + b];
    let mut out = Vec::new();
    for (g, tg) in t.iter().enumerate() {
        for h in 0..2 {
            for k in 0..2 {
                let twisted = tg.matmul(left(h, k)).matmul(&tg.transpose());
                let prod = left(g, h)
                    .matmul(left((g + h) % 2, k))
                    .matmul(&left(g, (h + k) % 2).transpose())
                    .matmul(&twisted.transpose());
                let c = prod.scalar().expect("ell is a scalar");
                out.push(u64::from(c == -1));
            }
        }
    }
    out
}

fn one_d_anomaly() -> Outcome {
    let ell = levin_gu(12, 3)?.ell_cochain().map_err(|e| e.to_string())?;
    ensure(ell.value(&[1, 1, 1]) == 1, || "ell(1,1,1) is not -1".into())?;
    let with_identity = (0..8).filter(|&i| i != 7).all(|i| ell.values()[i] == 0);
    ensure(with_identity, || format!("identity-containing entries not all 1: {:?}", ell.values()))?;
    ensure(ell.coboundary_solve(SolveOptions::default()).is_none(), || "class is trivial".into())?;
    let dense = dense_levin_gu_ell();
    ensure(ell.values() == dense.as_slice(), || format!("dense oracle {:?} vs {:?}", dense, ell.values()))?;
    Ok("ell(1,1,1) = -1, nontrivial over Z2, dense 12-site oracle agrees".into())
}

fn validators() -> Outcome {
    let modules = crossed_modules();
    for (name, cm) in modules.iter().filter(|(n, _)| *n == "trivial" || n.starts_with("conjugation")) {
        let r = validate_crossed_module(cm);
        ensure(r.is_valid(), || format!("{name} rejected: {:?}", r.failed_axioms()))?;
    }
    let mut pool: Vec<Structure> = modules.into_iter().map(|(_, c)| Structure::Module(c)).collect();
    for (name, cs) in crossed_squares() {
        ensure(validate_crossed_square(&cs).is_valid(), || format!("square {name} rejected"))?;
        let t = to_two_crossed_module(&cs).map_err(|e| format!("{name}: {e}"))?;
        let r = validate_two_crossed_module(&t);
        ensure(r.is_valid(), || format!("converted {name} rejected: {:?}", r.failed_axioms()))?;
        pool.push(Structure::Square(cs));
        pool.push(Structure::TwoModule(t));
    }
    let oracle = |s: &Structure| match s {
        Structure::Module(c) => axioms::module_ok(c),
        Structure::Square(c) => axioms::square_ok(c),
        Structure::TwoModule(c) => axioms::two_module_ok(c),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let (mut invalid, mut detected, mut equivalent, mut disagreements) = (0, 0, 0, Vec::new());
    while invalid < 50 {
        let base = &pool[rng.gen_range(0..pool.len())];
        let Some((mutant, m)) = base.mutate(&mut rng) else { continue };
        let valid = mutant.validate().is_valid();
        if oracle(&mutant) {
            equivalent += 1;
            if !valid {
                disagreements.push(format!("{} #{} {}->{}: oracle accepts, validator rejects", m.table, m.entry, m.old, m.new));
            }
            continue;
        }
        invalid += 1;
        if !valid {
            detected += 1;
        } else {
            disagreements.push(format!("{} #{} {}->{}: missed", m.table, m.entry, m.old, m.new));
        }
    }
    ensure(disagreements.is_empty(), || format!("{detected}/50 detected; {}", disagreements.join("; ")))?;
    Ok(format!("fixtures pass, 50/50 invalid mutants detected ({equivalent} still-valid mutants set aside)"))
}

fn section_independence() -> Outcome {
    let mut checked = 0;
    for (name, cm) in crossed_modules().into_iter().filter(|(_, c)| c.n.order() <= 16) {
        let ker = cm.kernel();
        let Some(iso) = ker.iter().find_map(|&k| KernelIso::from_generator(&cm, k).ok()) else {
            return Err(format!("{name}: no cyclic central kernel generator"));
        };
        let sections = all_sections(&cm).map_err(|e| format!("{name}: {e}"))?;
        let first = postnikov3(&cm, &sections[0], &iso).map_err(|e| format!("{name}: {e}"))?;
        for s in &sections[1..] {
            let c = postnikov3(&cm, s, &iso).map_err(|e| format!("{name}: {e}"))?;
            ensure(c.cohomologous(&first).map_err(|e| e.to_string())?, || format!("{name}: section {s:?} disagrees"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} section pairs agree"))
}

/// Operators on a 2 x 5 patch: single gates and seeded random products.
fn patch_operators() -> (Vec<Site>, Vec<SymOp>) {
    let sites: Vec<Site> = (0..2).flat_map(|y| (0..5).map(move |x| Site::new(x, y))).collect();
    let s = |x: i32, y: i32| Site::new(x, y);
    let mut ops = vec![
        SymOp::identity(),
        SymOp::minus_one(),
        SymOp::x(s(0, 0)),
        SymOp::z(s(2, 1)),
        SymOp::cz(s(1, 0), s(2, 0)),
        SymOp::ccz(s(1, 0), s(2, 0), s(1, 1)),
        SymOp::xs(sites.iter().copied()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    while ops.len() < 20 {
        let mut op = SymOp::identity();
        for _ in 0..rng.gen_range(2..7) {
            let pick = |rng: &mut ChaCha8Rng| sites[rng.gen_range(0..sites.len())];
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let gate = match rng.gen_range(0..4) {
                0 => SymOp::x(a),
                1 => SymOp::z(a),
                2 if a != b => SymOp::cz(a, b),
                3 if a != b && b != c && a != c => SymOp::ccz(a, b, c),
                _ => SymOp::minus_one(),
            };
            op = op.mul(&gate);
        }
        ops.push(op);
    }
    (sites, ops)
}

fn dense_faithfulness() -> Outcome {
    let t0 = Instant::now();
    let (sites, ops) = patch_operators();
    let dense: Vec<Dense> = ops.iter().map(|o| dense_circuit(std::slice::from_ref(o), &sites)).collect();
    for (i, a) in ops.iter().enumerate() {
        ensure(dense_of(a, &sites) == dense[i], || format!("matrix of {a} disagrees with its gate form"))?;
        ensure(dense_of(&a.inv(), &sites) == dense[i].transpose(), || format!("inverse of {a}"))?;
        for (j, b) in ops.iter().enumerate() {
            let prod = dense[i].matmul(&dense[j]);
            ensure(dense_of(&a.mul(b), &sites) == prod, || format!("product {a} * {b}"))?;
            let conj = dense[j].matmul(&dense[i]).matmul(&dense[j].transpose());
            ensure(dense_of(&a.conj(b), &sites) == conj, || format!("conjugate of {a} by {b}"))?;
        }
    }
    let elapsed = t0.elapsed();
    within(elapsed, Duration::from_secs(30), "dense comparison")?;
    Ok(format!("{} operators on {} sites, all products and conjugates exact ({elapsed:.2?})", ops.len(), sites.len()))
}

fn spt_checks() -> Outcome {
    let w = Window::square(12, 12, 3).map_err(|e| e.to_string())?;
    let onsite = builtin_action("onsite_x_2d", w).map_err(|e| e.to_string())?;
    let (data, rep) = anomaly_2d(&onsite).map_err(|e| e.to_string())?;
    ensure(rep.tau.is_zero(), || "onsite tau is not identically 1".into())?;
    let r = spt_trivialize_2d(&onsite, &data, &rep.tau, &ProductState::undressed(ReferenceBasis::Plus, w))
        .map_err(|e| e.to_string())?;
    ensure(r.invariant && r.delta_equals_tau == Some(true), || format!("onsite: {}", r.message))?;

    let ccz = builtin_action("ccz_x_2d", w).map_err(|e| e.to_string())?;
    let (cdata, crep) = anomaly_2d(&ccz).map_err(|e| e.to_string())?;
    for st in [
        ProductState::undressed(ReferenceBasis::Plus, w),
        ProductState::undressed(ReferenceBasis::Zero, w),
        ProductState::plaquette(w),
    ] {
        let r = spt_trivialize_2d(&ccz, &cdata, &crep.tau, &st).map_err(|e| e.to_string())?;
        ensure(!r.invariant, || "ccz_x_2d reported an invariant product state".into())?;
    }

    let chain = Window::chain(12, 3).map_err(|e| e.to_string())?;
    let eo = builtin_action("onsite_x_even_odd_1d", chain).map_err(|e| e.to_string())?;
    let rel = spt_relative_1d(&eo, &ProductState::cluster(chain), &ProductState::undressed(ReferenceBasis::Plus, chain))
        .map_err(|e| e.to_string())?;
    ensure(rel.is_cocycle && !rel.trivial, || "relative class is trivial".into())?;
    // string of X on even sites 4, 6; ends on sites 2, 3 and 7, 8; charge under X on odd sites
    let odd: usize = (0..12).filter(|i| i % 2 == 1).map(|i| 1 << i).sum();
    let string = (1 << 4) | (1 << 6);
    let cluster = string_order_charge(&cluster_state(12), string, [2, 3], [7, 8], odd);
    let product = string_order_charge(&plus_state(12), string, [2, 3], [7, 8], odd);
    ensure(cluster.len() == 1 && product.len() == 1 && cluster != product, || {
        format!("dense string order charges: cluster {cluster:?}, product {product:?}")
    })?;
    Ok(format!("onsite delta c = tau, ccz has no invariant state, 1d relative class nontrivial (charges {cluster:?} vs {product:?})"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("end-to-end mu, u, tau for ccz_x_2d", end_to_end),
        ("tau is closed", tau_closed),
        ("class of tau", class_identified),
        ("eta identity suite", eta_identities),
        ("gauge invariance of tau", gauge_invariance),
        ("window stability", window_stability),
        ("1d anomaly of levin_gu_1d", one_d_anomaly),
        ("crossed structure validators", validators),
        ("Postnikov section independence", section_independence),
        ("dense faithfulness", dense_faithfulness),
        ("SPT checks", spt_checks),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = t0.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{took:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

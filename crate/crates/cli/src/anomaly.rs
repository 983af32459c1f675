use std::path::{Path, PathBuf};

use anomalion::anomaly::{
    anomaly_2d, identify_class, nayak_else_1d, regauge_beta, regauge_rho, spt_relative_1d, spt_trivialize_2d,
    ProductState, ReferenceBasis, TruncationData1d, TruncationData2d,
};
use anomalion::circuits::{builtin_action, ActionConfig, CircuitAction};
use anomalion::pairing::random_local_op;
use anomalion::{Cochain, FiniteGroup, Site, SymOp, Window};
use anyhow::Result;
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{config, ConfigError, Report};

#[derive(Args, Debug)]
pub struct ActionArgs {
    /// Builtin action name or path to a JSON action config.
    #[arg(long)]
    pub action: String,
    /// Window size, `WxH` or `N` for a chain.
    #[arg(long)]
    pub window: String,
    /// Width of the window edge zone; at least three times the action range.
    #[arg(long, default_value_t = 3)]
    pub margin: u32,
    /// Where to write the JSON report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Seed for every sampled quantity.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct AnomalyArgs {
    #[command(flatten)]
    pub common: ActionArgs,
    /// Number of random regaugings to check the cochain against.
    #[arg(long, default_value_t = 0)]
    pub check_gauge: usize,
    /// Rerun on a window grown by two sites with margin grown by two and
    /// compare.
    #[arg(long)]
    pub check_window: bool,
}

pub fn load_action(spec: &str, window: Window) -> Result<CircuitAction> {
    let path = Path::new(spec);
    let action = if path.is_file() {
        let text = config(std::fs::read_to_string(path), "reading action config")?;
        let cfg: ActionConfig = config(serde_json::from_str(&text), "parsing action config")?;
        let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("config");
        config(CircuitAction::from_config(name, &cfg, window), "action config")?
    } else {
        config(builtin_action(spec, window), "action")?
    };
    let needed = 3 * action.range();
    if window.margin < needed {
        return Err(ConfigError(format!("margin {} is below {needed}, three times the action range", window.margin)).into());
    }
    Ok(action)
}

fn setup(args: &ActionArgs, want_1d: Option<bool>) -> Result<(Window, CircuitAction)> {
    let window = config(Window::parse_dims(&args.window, args.margin), "window")?;
    if let Some(one_d) = want_1d {
        if window.is_1d() != one_d {
            let need = if one_d { "a chain window `N`" } else { "a 2d window `WxH`" };
            return Err(ConfigError(format!("this command needs {need}")).into());
        }
    }
    let action = load_action(&args.action, window)?;
    Ok((window, action))
}

fn header(r: &mut Report, args: &ActionArgs, window: Window, action: &CircuitAction) {
    r.set("action", action.name.clone());
    r.set("window", json!({"dims": args.window, "margin": window.margin}));
    r.set("seed", args.seed);
    r.set("group", json!({"order": action.group.order(), "elements": action.group.names()}));
    r.set("range", action.range());
}

fn cochain_json(c: &Cochain) -> Value {
    serde_json::to_value(c.to_json()).expect("cochain serializes")
}

fn ops_json(group: &FiniteGroup, ops: &[SymOp], arity: usize) -> Value {
    let entries: Vec<Value> = ops
        .iter()
        .enumerate()
        .map(|(i, op)| {
            let args: Vec<&str> = group.tuple_at(i, arity).into_iter().map(|g| group.name(g)).collect();
            json!({"args": args, "op": op.to_string()})
        })
        .collect();
    Value::Array(entries)
}

fn class_json(c: &Cochain) -> Value {
    let m = identify_class(c);
    json!({"trivial": m.trivial, "matched": m.name})
}

fn describe(trivial: bool, class: Option<&str>) -> String {
    match (trivial, class) {
        (true, _) => "trivial".into(),
        (false, Some(n)) => format!("nontrivial, {n}"),
        (false, None) => "nontrivial".into(),
    }
}

pub fn anomaly2d(args: &AnomalyArgs) -> Result<bool> {
    let c = &args.common;
    let (window, action) = setup(c, Some(false))?;
    let mut r = Report::new("anomaly2d");
    header(&mut r, c, window, &action);
    let (data, rep) = anomaly_2d(&action)?;
    println!("tau: {}", describe(rep.trivial, rep.matched_class.as_deref()));
    r.set("tau", cochain_json(&rep.tau));
    r.set("class", class_json(&rep.tau));
    r.set("mu", ops_json(&data.group, &data.mu, 2));
    r.set("u", ops_json(&data.group, &data.u, 3));
    r.set("cropped_debris", data.log.clone());
    r.set(
        "skipped",
        json!(["first obstruction (rational index of the symmetry): identically trivial for finite-depth circuits, not computed"]),
    );
    r.assert("tau is a 4-cocycle", rep.is_cocycle, "");
    if args.check_gauge > 0 {
        let (ok, detail) = gauge_2d(&data, &rep.tau, args.check_gauge, c.seed)?;
        r.assert("tau unchanged under random regaugings", ok, detail);
        r.set("gauge_checks", args.check_gauge);
    }
    if args.check_window {
        let grown = window.grown(2)?;
        let big = TruncationData2d::build(&load_action(&c.action, grown)?)?;
        let same = big.tau_cochain()? == rep.tau && big.mu == data.mu && big.u == data.u;
        r.assert("tau, mu and u unchanged on the grown window", same, format!("margin {} vs {}", window.margin, grown.margin));
    }
    r.finish(c.report.as_deref())
}

/// `n` regaugings of each kind; returns whether all left tau unchanged.
fn gauge_2d(data: &TruncationData2d, tau: &Cochain, n: usize, seed: u64) -> Result<(bool, String)> {
    let w = data.window;
    let k = data.group.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for i in 0..n {
        let v: Vec<SymOp> = (0..k * k).map(|_| random_local_op(&mut rng, w)).collect();
        if regauge_beta(data, &v)?.tau_cochain()? != *tau {
            bad.push(format!("beta #{i}"));
        }
    }
    for i in 0..n {
        // gamma near the boundary line
        let gamma: Vec<SymOp> = (0..k)
            .map(|_| random_local_op(&mut rng, w).filter(|m| m.sites().iter().all(|s| s.y.abs() <= 1), |s| s.y.abs() <= 1))
            .collect();
        if regauge_rho(data, &gamma)?.tau_cochain()? != *tau {
            bad.push(format!("rho #{i}"));
        }
    }
    let detail = if bad.is_empty() { format!("{n} + {n} regaugings") } else { format!("changed by {}", bad.join(", ")) };
    Ok((bad.is_empty(), detail))
}

/// Rescaling `nu` by random signs `psi` must shift `ell` by `d psi`.
fn gauge_1d(data: &TruncationData1d, ell: &Cochain, n: usize, seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = data.group.order();
    let mut bad = Vec::new();
    for i in 0..n {
        let psi: Vec<u64> = (0..k * k).map(|_| u64::from(rng.gen_bool(0.5))).collect();
        let psi = Cochain::new(data.group.clone(), 2, 2, psi)?;
        let mut d = data.clone();
        for (j, &s) in psi.values().iter().enumerate() {
            if s == 1 {
                d.nu[j] = d.nu[j].mul(&SymOp::minus_one());
            }
        }
        if d.ell_cochain()? != ell.add(&psi.coboundary())? {
            bad.push(format!("#{i}"));
        }
    }
    let detail = if bad.is_empty() { format!("{n} sign rescalings") } else { format!("mismatch at {}", bad.join(", ")) };
    Ok((bad.is_empty(), detail))
}

pub fn anomaly1d(args: &AnomalyArgs) -> Result<bool> {
    let c = &args.common;
    let (window, action) = setup(c, Some(true))?;
    let mut r = Report::new("anomaly1d");
    header(&mut r, c, window, &action);
    let (data, rep) = nayak_else_1d(&action)?;
    let class = identify_class(&rep.ell);
    println!("ell: {}", describe(rep.trivial, class.name.as_deref()));
    r.set("ell", cochain_json(&rep.ell));
    r.set("class", class_json(&rep.ell));
    r.set("nu", ops_json(&data.group, &data.nu, 2));
    r.set("cropped_debris", data.log.clone());
    r.assert("ell is a 3-cocycle", rep.is_cocycle, "");
    if args.check_gauge > 0 {
        let (ok, detail) = gauge_1d(&data, &rep.ell, args.check_gauge, c.seed)?;
        r.assert("rescaling nu shifts ell by a coboundary", ok, detail);
        r.set("gauge_checks", args.check_gauge);
    }
    if args.check_window {
        let grown = window.grown(2)?;
        let (_, big) = nayak_else_1d(&load_action(&c.action, grown)?)?;
        r.assert("ell unchanged on the grown window", big.ell == rep.ell, format!("margin {} vs {}", window.margin, grown.margin));
    }
    r.finish(c.report.as_deref())
}

#[derive(Args, Debug)]
pub struct SptArgs {
    #[command(flatten)]
    pub common: ActionArgs,
    /// Invariant product state: plus, zero, cluster or plaquette.
    #[arg(long, default_value = "plus")]
    pub state: String,
    /// Second state for the relative class of a chain action.
    #[arg(long, default_value = "plus")]
    pub against: String,
}

fn state(name: &str, window: Window) -> Result<ProductState> {
    Ok(match name {
        "plus" => ProductState::undressed(ReferenceBasis::Plus, window),
        "zero" => ProductState::undressed(ReferenceBasis::Zero, window),
        "cluster" => ProductState::cluster(window),
        "plaquette" => ProductState::plaquette(window),
        other => return Err(ConfigError(format!("unknown state {other:?}")).into()),
    })
}

pub fn spt(args: &SptArgs) -> Result<bool> {
    let c = &args.common;
    let (window, action) = setup(c, None)?;
    let s1 = state(&args.state, window)?;
    let mut r = Report::new("spt");
    header(&mut r, c, window, &action);
    r.set("state", args.state.clone());
    if window.is_1d() {
        let s2 = state(&args.against, window)?;
        r.set("against", args.against.clone());
        let rel = spt_relative_1d(&action, &s1, &s2)?;
        println!("relative class: {}", describe(rel.trivial, None));
        r.set("cochain", cochain_json(&rel.cochain));
        r.set("trivial", rel.trivial);
        r.assert("relative cochain is a 2-cocycle", rel.is_cocycle, "");
    } else {
        let (data, rep) = anomaly_2d(&action)?;
        let t = spt_trivialize_2d(&action, &data, &rep.tau, &s1)?;
        println!("{}", t.message);
        r.set("invariant", t.invariant);
        r.set("message", t.message.clone());
        r.set("tau", cochain_json(&rep.tau));
        if let Some(cc) = &t.cochain {
            r.set("cochain", cochain_json(cc));
        }
        if let Some(ok) = t.delta_equals_tau {
            r.assert("coboundary of omega(u) equals tau", ok, "");
        }
    }
    r.finish(c.report.as_deref())
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long, default_value = "12x12")]
    pub window: String,
    #[arg(long, default_value_t = 3)]
    pub margin: u32,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// CZ on the boundary row, on every edge not lying in the window edge zone.
fn boundary_cz_string(w: Window) -> SymOp {
    w.sites()
        .filter(|s| s.y == 0)
        .map(|s| (s, s.offset(1, 0)))
        .filter(|(a, b)| w.contains(b) && !(w.in_edge_zone(a) && w.in_edge_zone(b)))
        .fold(SymOp::identity(), |acc, (a, b)| acc.mul(&SymOp::cz(a, b)))
}

pub fn reproduce_ccz(args: &ReproduceArgs) -> Result<bool> {
    let window = config(Window::parse_dims(&args.window, args.margin), "window")?;
    if window.is_1d() {
        return Err(ConfigError("reproduce-ccz needs a 2d window".into()).into());
    }
    let action = load_action("ccz_x_2d", window)?;
    let mut r = Report::new("reproduce-ccz");
    r.set("action", "ccz_x_2d");
    r.set("window", json!({"dims": args.window, "margin": window.margin}));
    let (data, rep) = anomaly_2d(&action)?;
    let g = &data.group;
    // element index 2 g1 + g2
    let (g1, g2) = (|t: usize| t / 2, |t: usize| t % 2);
    let expected = Cochain::from_fn(g.clone(), 4, 2, |t| (g2(t[0]) * g2(t[1]) * g2(t[2]) * g1(t[3])) as u64);
    let mismatches = g.elements().len().pow(4) - expected.values().iter().zip(rep.tau.values()).filter(|(a, b)| a == b).count();
    r.assert("tau = (-1)^(g2 h2 k2 l1) on all 256 tuples", mismatches == 0, format!("{mismatches} mismatches"));
    r.assert("tau is a 4-cocycle", rep.is_cocycle, "");
    let class = rep.matched_class.clone();
    r.assert("class is b⌣b⌣b⌣a", !rep.trivial && class.as_deref() == Some("b⌣b⌣b⌣a"), describe(rep.trivial, class.as_deref()));
    let z0 = SymOp::z(Site::new(0, 0));
    let u_ok = (0..64).all(|i| {
        let t = g.tuple_at(i, 3);
        let want = if g2(t[0]) * g2(t[1]) * g1(t[2]) == 1 { z0.clone() } else { SymOp::identity() };
        data.u[i] == want
    });
    r.assert("u(g,h,k) = Z at the origin exactly when g2 h2 k1 = 1", u_ok, "");
    let support_ok = (0..16).all(|i| data.mu[i].is_identity() != (g2(i / 4) * g1(i % 4) == 1));
    r.assert("mu(g,h) is nontrivial exactly when g2 h1 = 1", support_ok, "");
    // recorded, not asserted: the computed mu also carries a Z string on the boundary row
    let bare = boundary_cz_string(window);
    let extra: Vec<SymOp> = (0..16).filter(|&i| !data.mu[i].is_identity()).map(|i| data.mu[i].mul(&bare.inv())).collect();
    let quotients: Vec<String> = extra.iter().map(SymOp::to_string).collect();
    r.set("mu_vs_bare_cz_string", json!({"equal": extra.iter().all(SymOp::is_identity), "quotients": quotients}));
    r.set("tau", cochain_json(&rep.tau));
    r.set("mu", ops_json(g, &data.mu, 2));
    r.set("u", ops_json(g, &data.u, 3));
    r.set("cropped_debris", data.log.clone());
    r.finish(args.report.as_deref())
}

use std::path::PathBuf;

use anomalion::crossed::{
    all_sections, homotopy_groups, postnikov3, to_two_crossed_module, validate_crossed_module, validate_crossed_square,
    validate_two_crossed_module, verify_lattice_square, CrossedModule, CrossedModuleJson, CrossedSquare,
    CrossedSquareJson, HomotopyGroups, KernelIso, TwoCrossedModule, TwoCrossedModuleJson, ValidationReport,
};
use anomalion::{FiniteGroup, Window};
use anyhow::Result;
use clap::{Args, Subcommand};
use serde_json::{json, Value};

use crate::report::{config, ConfigError, Report};

#[derive(Args, Debug)]
pub struct EtaArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value = "12x12")]
    pub window: String,
    #[arg(long, default_value_t = 3)]
    pub margin: u32,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// The pairing identities, keyed by the crossed square equation that
/// carries each one.
const SUITES: [(&str, &str); 6] = [
    ("Ad eta(a,b) = [a,b]", "Ad eta(m,n) = [m, n]"),
    ("eta(a, b b') = eta(a,b) b(eta(a,b'))", "eta(m, n n') = eta(m,n) (n . eta(m,n'))"),
    ("eta(a a', b) = a(eta(a',b)) eta(a,b)", "eta(m m', n) = (m . eta(m',n)) eta(m,n)"),
    ("eta(Ad u, b) = u b(u^-1)", "eta(f l, n) = l (n . l^-1)"),
    ("eta(a, Ad u) = a(u) u^-1", "eta(m, g l) = (m . l) l^-1"),
    ("eta(c a c^-1, c b c^-1) = c(eta(a,b))", "eta(p . m, p . n) = p . eta(m,n)"),
];

pub fn eta_check(args: &EtaArgs) -> Result<bool> {
    let window = config(Window::parse_dims(&args.window, args.margin), "window")?;
    let rep = verify_lattice_square(window, args.samples, args.seed)?;
    let mut r = Report::new("eta-check");
    r.set("seed", args.seed);
    r.set("samples", args.samples);
    r.set("window", json!({"dims": args.window, "margin": window.margin}));
    let tally = |name: &str| rep.equations.iter().find(|e| e.equation == name);
    let mut suites = Vec::new();
    let mut passing = 0;
    for (label, eq) in SUITES {
        let (ok, detail, entry) = match tally(eq) {
            Some(t) => {
                let ok = t.failed == 0 && t.errors == 0 && t.passed > 0;
                let entry = json!({"identity": label, "passed": t.passed, "failed": t.failed, "errors": t.errors, "counterexample": t.first_failure});
                (ok, format!("{} passed, {} failed, {} errors", t.passed, t.failed, t.errors), entry)
            }
            None => (false, "not evaluated".into(), json!({"identity": label, "passed": 0})),
        };
        passing += usize::from(ok);
        r.assert(label, ok, detail);
        suites.push(entry);
    }
    if let Some(t) = tally("eta_L = eta_R") {
        r.assert("eta_L = eta_R", t.errors == 0 && t.failed == 0, format!("{} pairs", t.passed));
    }
    println!("{passing}/{} identity suites pass", SUITES.len());
    r.set("suites", Value::Array(suites));
    r.set("equations", serde_json::to_value(&rep.equations)?);
    r.finish(args.report.as_deref())
}

#[derive(Subcommand, Debug)]
pub enum CrossedCommand {
    /// Check every axiom of a crossed module, crossed square or 2-crossed
    /// module table.
    Validate(TableArgs),
    /// Convert a crossed square to its 2-crossed module.
    Convert {
        #[command(flatten)]
        table: TableArgs,
        /// Where to write the 2-crossed module table.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Postnikov 3-cocycle of a crossed module with cyclic central kernel.
    Postnikov {
        #[command(flatten)]
        table: TableArgs,
        /// Kernel element generating `ker bd`; found automatically if absent.
        #[arg(long)]
        generator: Option<usize>,
        /// Index of the section of `N -> coker bd`, in lexicographic order.
        #[arg(long, default_value_t = 0)]
        section: usize,
    },
    /// Homotopy groups of a 2-crossed module or crossed square.
    Homotopy(TableArgs),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// JSON table; the kind is read off its fields.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

enum Table {
    Module(CrossedModule),
    Square(CrossedSquare),
    TwoModule(TwoCrossedModule),
}

impl Table {
    fn kind(&self) -> &'static str {
        match self {
            Table::Module(_) => "crossed_module",
            Table::Square(_) => "crossed_square",
            Table::TwoModule(_) => "two_crossed_module",
        }
    }
}

fn load(args: &TableArgs) -> Result<Table> {
    let text = config(std::fs::read_to_string(&args.input), "reading table")?;
    let v: Value = config(serde_json::from_str(&text), "parsing table")?;
    let has = |k: &str| v.get(k).is_some();
    Ok(if has("braid") {
        let j: TwoCrossedModuleJson = config(serde_json::from_value(v), "2-crossed module table")?;
        Table::TwoModule(config(TwoCrossedModule::from_json(&j), "2-crossed module table")?)
    } else if has("eta") {
        let j: CrossedSquareJson = config(serde_json::from_value(v), "crossed square table")?;
        Table::Square(config(CrossedSquare::from_json(&j), "crossed square table")?)
    } else {
        let j: CrossedModuleJson = config(serde_json::from_value(v), "crossed module table")?;
        Table::Module(config(CrossedModule::from_json(&j), "crossed module table")?)
    })
}

fn log_validation(r: &mut Report, v: &ValidationReport) {
    for c in &v.checks {
        let first = c.violations.first().map(|t| format!(", first at {t:?}")).unwrap_or_default();
        r.assert(&c.axiom, c.violations.is_empty(), format!("{} tuples, {} violations{first}", c.checked, c.violations.len()));
    }
}

fn group_json(g: &FiniteGroup) -> Value {
    json!({"order": g.order(), "elements": g.names()})
}

fn homotopy_json(h: &HomotopyGroups) -> Value {
    json!({
        "pi1": group_json(&h.pi1),
        "pi2": group_json(&h.pi2),
        "pi3": group_json(&h.pi3),
    })
}

pub fn crossed(cmd: &CrossedCommand) -> Result<bool> {
    match cmd {
        CrossedCommand::Validate(args) => {
            let t = load(args)?;
            let mut r = Report::new("crossed validate");
            r.set("kind", t.kind());
            let v = match &t {
                Table::Module(c) => validate_crossed_module(c),
                Table::Square(c) => validate_crossed_square(c),
                Table::TwoModule(c) => validate_two_crossed_module(c),
            };
            log_validation(&mut r, &v);
            r.finish(args.report.as_deref())
        }
        CrossedCommand::Convert { table, output } => {
            let Table::Square(cs) = load(table)? else {
                return Err(ConfigError("convert needs a crossed square".into()).into());
            };
            let mut r = Report::new("crossed convert");
            let v = validate_crossed_square(&cs);
            r.assert("input is a crossed square", v.is_valid(), v.failed_axioms().join("; "));
            if v.is_valid() {
                let t = to_two_crossed_module(&cs)?;
                let out = validate_two_crossed_module(&t);
                r.assert("output is a 2-crossed module", out.is_valid(), out.failed_axioms().join("; "));
                let j = serde_json::to_value(t.to_json())?;
                if let Some(p) = output {
                    std::fs::write(p, serde_json::to_string_pretty(&j)? + "\n")?;
                    println!("2-crossed module written to {}", p.display());
                }
                r.set("two_crossed_module", j);
            }
            r.finish(table.report.as_deref())
        }
        CrossedCommand::Postnikov { table, generator, section } => {
            let Table::Module(cm) = load(table)? else {
                return Err(ConfigError("postnikov needs a crossed module".into()).into());
            };
            let mut r = Report::new("crossed postnikov");
            let v = validate_crossed_module(&cm);
            r.assert("input is a crossed module", v.is_valid(), v.failed_axioms().join("; "));
            if !v.is_valid() {
                return r.finish(table.report.as_deref());
            }
            let iso = match generator {
                Some(k) => config(KernelIso::from_generator(&cm, *k), "kernel generator")?,
                None => cm
                    .kernel()
                    .into_iter()
                    .find_map(|k| KernelIso::from_generator(&cm, k).ok())
                    .ok_or_else(|| ConfigError("ker bd is not cyclic, central and fixed by N".into()))?,
            };
            let sections = all_sections(&cm)?;
            let sigma = sections
                .get(*section)
                .ok_or_else(|| ConfigError(format!("section {section} out of range ({} sections)", sections.len())))?;
            let ell = postnikov3(&cm, sigma, &iso)?;
            let (q, _) = cm.coker()?;
            let trivial = ell.is_coboundary();
            println!("Postnikov class: {}", if trivial { "trivial" } else { "nontrivial" });
            r.set("coker", group_json(&q));
            r.set("kernel", json!({"modulus": iso.modulus, "elements": iso.elements.iter().map(|&k| cm.m.name(k)).collect::<Vec<_>>()}));
            r.set("section", json!(sigma.iter().map(|&n| cm.n.name(n)).collect::<Vec<_>>()));
            r.set("cochain", serde_json::to_value(ell.to_json())?);
            r.set("trivial", trivial);
            r.assert("Postnikov cochain is a 3-cocycle", ell.is_cocycle(), "");
            r.finish(table.report.as_deref())
        }
        CrossedCommand::Homotopy(args) => {
            let t = match load(args)? {
                Table::TwoModule(t) => t,
                Table::Square(cs) => config(to_two_crossed_module(&cs), "crossed square")?,
                Table::Module(_) => return Err(ConfigError("homotopy needs a 2-crossed module or crossed square".into()).into()),
            };
            let mut r = Report::new("crossed homotopy");
            let v = validate_two_crossed_module(&t);
            r.assert("input is a 2-crossed module", v.is_valid(), v.failed_axioms().join("; "));
            let h = homotopy_groups(&t)?;
            let (a, b, c) = h.orders();
            println!("|pi1| = {a}, |pi2| = {b}, |pi3| = {c}");
            r.set("homotopy", homotopy_json(&h));
            r.finish(args.report.as_deref())
        }
    }
}

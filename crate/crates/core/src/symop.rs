//! Exact algebra of unitaries `D_f X_S`: a diagonal `(-1)^{f(a)}` for a
//! multilinear polynomial `f` over F2, followed by bit flips on `S`.
//!
//! `(D_f X_S)|a> = (-1)^{f(a ^ S)} |a ^ S>`. The empty monomial is the
//! constant 1, i.e. the scalar `-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::groups::PhaseValue;
use crate::lattice::Site;

/// Default maximal monomial degree (CCZ).
pub const DEFAULT_MAX_DEGREE: usize = 3;

/// A product of distinct site variables, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Site>);

impl Monomial {
    pub fn new(sites: impl IntoIterator<Item = Site>) -> Self {
        let mut v: Vec<Site> = sites.into_iter().collect();
        v.sort_unstable();
        let n = v.len();
        v.dedup();
        assert_eq!(n, v.len(), "repeated site in a monomial");
        Self(v)
    }

    pub fn constant() -> Self {
        Self(Vec::new())
    }

    pub fn sites(&self) -> &[Site] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, a: impl Fn(&Site) -> bool) -> bool {
        self.0.iter().all(a)
    }
}

/// F2-linear combination of monomials (set semantics).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PhasePoly(BTreeSet<Monomial>);

impl PhasePoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `m` over F2; a second insertion cancels the first.
    pub fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add(&mut self, other: &PhasePoly) {
        for m in &other.0 {
            self.toggle(m.clone());
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_constant(&self) -> bool {
        self.0.contains(&Monomial::constant())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval(&self, a: impl Fn(&Site) -> bool) -> bool {
        self.0.iter().filter(|m| m.eval(&a)).count() % 2 == 1
    }

    /// `f(a ^ S)` re-expanded: each variable in `S` becomes `a_i + 1`.
    pub fn shifted(&self, flips: &BTreeSet<Site>) -> PhasePoly {
        if flips.is_empty() {
            return self.clone();
        }
        let mut out = PhasePoly::new();
        for m in &self.0 {
            let (hit, keep): (Vec<Site>, Vec<Site>) = m.0.iter().partition(|s| flips.contains(s));
            for mask in 0u32..(1 << hit.len()) {
                let mut sites = keep.clone();
                sites.extend(hit.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| *s));
                out.toggle(Monomial::new(sites));
            }
        }
        out
    }
}

impl FromIterator<Monomial> for PhasePoly {
    fn from_iter<T: IntoIterator<Item = Monomial>>(iter: T) -> Self {
        let mut p = PhasePoly::new();
        for m in iter {
            p.toggle(m);
        }
        p
    }
}

/// The unitary `D_poly X_flips`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymOp {
    pub poly: PhasePoly,
    pub flips: BTreeSet<Site>,
}

/// Expectation value in a product state of Z- and X-basis qubits. The value
/// is always a dyadic rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Zero,
    /// `-1` when the flag is set, `+1` otherwise.
    Phase(bool),
    /// `num / 2^den_log2`, strictly between -1 and 1 and nonzero.
    Fraction { num: i64, den_log2: u32 },
}

impl Expectation {
    fn from_dyadic(num: i64, den_log2: u32) -> Self {
        if num == 0 {
            return Expectation::Zero;
        }
        let (mut n, mut d) = (num, den_log2);
        while d > 0 && n % 2 == 0 {
            n /= 2;
            d -= 1;
        }
        match (n, d) {
            (1, 0) => Expectation::Phase(false),
            (-1, 0) => Expectation::Phase(true),
            _ => Expectation::Fraction { num: n, den_log2: d },
        }
    }

    fn as_dyadic(&self) -> (i64, u32) {
        match *self {
            Expectation::Zero => (0, 0),
            Expectation::Phase(neg) => (if neg { -1 } else { 1 }, 0),
            Expectation::Fraction { num, den_log2 } => (num, den_log2),
        }
    }

    fn mul(&self, other: &Expectation) -> Expectation {
        let (a, da) = self.as_dyadic();
        let (b, db) = other.as_dyadic();
        Expectation::from_dyadic(a * b, da + db)
    }

    pub fn as_phase(&self) -> Option<PhaseValue> {
        match self {
            Expectation::Phase(neg) => Some(PhaseValue::sign(*neg)),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (n, d) = self.as_dyadic();
        n as f64 / (1u64 << d) as f64
    }
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expectation::Zero => write!(f, "0"),
            Expectation::Phase(false) => write!(f, "1"),
            Expectation::Phase(true) => write!(f, "-1"),
            Expectation::Fraction { num, den_log2 } => write!(f, "{num}/{}", 1u64 << den_log2),
        }
    }
}

impl SymOp {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn minus_one() -> Self {
        Self::diagonal([Monomial::constant()])
    }

    /// The scalar `+1` or `-1`.
    pub fn sign(negative: bool) -> Self {
        if negative {
            Self::minus_one()
        } else {
            Self::identity()
        }
    }

    pub fn diagonal(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        Self { poly: monomials.into_iter().collect(), flips: BTreeSet::new() }
    }

    pub fn from_parts(poly: PhasePoly, flips: BTreeSet<Site>) -> Self {
        Self { poly, flips }
    }

    pub fn x(s: Site) -> Self {
        Self::xs([s])
    }

    pub fn xs(sites: impl IntoIterator<Item = Site>) -> Self {
        let mut flips = BTreeSet::new();
        for s in sites {
            if !flips.remove(&s) {
                flips.insert(s);
            }
        }
        Self { poly: PhasePoly::new(), flips }
    }

    pub fn z(s: Site) -> Self {
        Self::diagonal([Monomial::new([s])])
    }

    pub fn zs(sites: impl IntoIterator<Item = Site>) -> Self {
        Self::diagonal(sites.into_iter().map(|s| Monomial::new([s])))
    }

    pub fn cz(a: Site, b: Site) -> Self {
        Self::diagonal([Monomial::new([a, b])])
    }

    pub fn ccz(a: Site, b: Site, c: Site) -> Self {
        Self::diagonal([Monomial::new([a, b, c])])
    }

    pub fn is_identity(&self) -> bool {
        self.poly.is_empty() && self.flips.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.flips.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn check_degree(&self, max: usize) -> Result<()> {
        if self.degree() > max {
            return Err(Error::Support {
                what: "degree".into(),
                detail: format!("degree {} exceeds {max}", self.degree()),
            });
        }
        Ok(())
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &SymOp) -> SymOp {
        let mut out = self.clone();
        out.mul_assign(other);
        out
    }

    /// `self = self * other` without copying `self`.
    pub fn mul_assign(&mut self, other: &SymOp) {
        let shifted = other.poly.shifted(&self.flips);
        self.poly.add(&shifted);
        for s in &other.flips {
            if !self.flips.remove(s) {
                self.flips.insert(*s);
            }
        }
    }

    pub fn inv(&self) -> SymOp {
        SymOp { poly: self.poly.shifted(&self.flips), flips: self.flips.clone() }
    }

    /// `by * self * by^{-1}`
    pub fn conj(&self, by: &SymOp) -> SymOp {
        by.mul(self).mul(&by.inv())
    }

    /// `self * other * self^{-1} * other^{-1}`
    pub fn commutator(&self, other: &SymOp) -> SymOp {
        self.mul(other).mul(&self.inv()).mul(&other.inv())
    }

    pub fn product<'a>(ops: impl IntoIterator<Item = &'a SymOp>) -> SymOp {
        ops.into_iter().fold(SymOp::identity(), |acc, op| acc.mul(op))
    }

    pub fn support(&self) -> BTreeSet<Site> {
        let mut s: BTreeSet<Site> = self.flips.clone();
        for m in self.poly.monomials() {
            s.extend(m.sites().iter().copied());
        }
        s
    }

    pub fn is_scalar(&self) -> bool {
        self.flips.is_empty() && self.poly.monomials().all(Monomial::is_constant)
    }

    pub fn scalar_phase(&self) -> Option<PhaseValue> {
        self.is_scalar().then(|| PhaseValue::sign(self.poly.has_constant()))
    }

    /// Same operator with the constant term removed.
    pub fn without_constant(&self) -> SymOp {
        let mut out = self.clone();
        if out.poly.has_constant() {
            out.poly.toggle(Monomial::constant());
        }
        out
    }

    /// Keeps the monomials and flips selected by the predicates. Not a
    /// homomorphism; used for cropping products into canonical form.
    pub fn filter(&self, keep_mono: impl Fn(&Monomial) -> bool, keep_flip: impl Fn(&Site) -> bool) -> SymOp {
        SymOp {
            poly: self.poly.monomials().filter(|m| keep_mono(m)).cloned().collect(),
            flips: self.flips.iter().filter(|s| keep_flip(s)).copied().collect(),
        }
    }

    /// Applies the operator to a computational basis state given as its set of
    /// 1-sites; returns the sign and the image.
    pub fn apply_basis(&self, ones: &BTreeSet<Site>) -> (bool, BTreeSet<Site>) {
        let image: BTreeSet<Site> = ones.symmetric_difference(&self.flips).copied().collect();
        (self.poly.eval(|s| image.contains(s)), image)
    }

    /// Expectation in the product state with `|+>` on sites where `plus`
    /// holds and `|0>` elsewhere.
    pub fn expectation(&self, plus: impl Fn(&Site) -> bool) -> Expectation {
        if self.flips.iter().any(|s| !plus(s)) {
            return Expectation::Zero;
        }
        // X acts trivially on |+>; Z-basis variables are pinned to 0
        let restricted: Vec<&Monomial> =
            self.poly.monomials().filter(|m| m.sites().iter().all(&plus)).collect();
        let mut sign = false;
        let mut comps: Vec<(BTreeSet<Site>, Vec<&Monomial>)> = Vec::new();
        for m in restricted {
            if m.is_constant() {
                sign = !sign;
                continue;
            }
            let mut vars: BTreeSet<Site> = m.sites().iter().copied().collect();
            let mut monos = vec![m];
            let mut i = 0;
            while i < comps.len() {
                if comps[i].0.iter().any(|s| vars.contains(s)) {
                    let (v, ms) = comps.swap_remove(i);
                    vars.extend(v);
                    monos.extend(ms);
                } else {
                    i += 1;
                }
            }
            comps.push((vars, monos));
        }
        let mut acc = Expectation::Phase(sign);
        for (vars, monos) in comps {
            let vars: Vec<Site> = vars.into_iter().collect();
            assert!(vars.len() <= 30, "expectation over a {}-variable cluster", vars.len());
            let mut total: i64 = 0;
            for mask in 0u64..(1 << vars.len()) {
                let val = |s: &Site| {
                    let i = vars.binary_search(s).expect("variable in cluster");
                    mask >> i & 1 == 1
                };
                let odd = monos.iter().filter(|m| m.eval(val)).count() % 2 == 1;
                total += if odd { -1 } else { 1 };
            }
            acc = acc.mul(&Expectation::from_dyadic(total, vars.len() as u32));
            if acc == Expectation::Zero {
                break;
            }
        }
        acc
    }

    /// Expectation in `|0...0>`: zero if anything is flipped, else the sign of
    /// the constant term.
    pub fn expectation_zero_state(&self) -> Expectation {
        self.expectation(|_| false)
    }
}

impl serde::Serialize for SymOp {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SymOp {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn fmt_sites(sites: &[Site]) -> String {
    sites.iter().map(Site::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for SymOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for m in self.poly.monomials() {
            let s = m.sites();
            parts.push(match s.len() {
                0 => "-1".to_string(),
                1 => format!("Z{}", s[0]),
                2 => format!("CZ({})", fmt_sites(s)),
                3 => format!("CCZ({})", fmt_sites(s)),
                d => format!("C{}Z({})", d - 1, fmt_sites(s)),
            });
        }
        for s in &self.flips {
            parts.push(format!("X{s}"));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" * "))
        }
    }
}

fn parse_site_list(inner: &str) -> Result<Vec<Site>> {
    let inner = inner.trim();
    if !inner.starts_with('(') {
        return Ok(vec![format!("({inner})").parse()?]);
    }
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let close = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed site in {inner:?}")))?;
        out.push(rest[..=close].parse()?);
        rest = rest[close + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    Ok(out)
}

impl FromStr for SymOp {
    type Err = Error;

    /// Parses a `*`-separated product of `1`, `-1`, `X(x,y)`, `Z(x,y)`,
    /// `CZ((..),(..))`, `CCZ(..)` and `C<k>Z(..)` factors, multiplied left to
    /// right.
    fn from_str(s: &str) -> Result<Self> {
        let mut acc = SymOp::identity();
        for tok in s.split('*').map(str::trim) {
            let factor = match tok {
                "1" => SymOp::identity(),
                "-1" => SymOp::minus_one(),
                _ => {
                    let open = tok.find('(').ok_or_else(|| Error::Parse(format!("factor {tok:?}")))?;
                    let (name, args) = tok.split_at(open);
                    let inner = args
                        .strip_prefix('(')
                        .and_then(|a| a.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("factor {tok:?}")))?;
                    let sites = parse_site_list(inner)?;
                    let want = match name {
                        "X" | "Z" => 1,
                        "CZ" => 2,
                        "CCZ" => 3,
                        _ => name
                            .strip_prefix('C')
                            .and_then(|r| r.strip_suffix('Z'))
                            .and_then(|k| k.parse::<usize>().ok())
                            .map(|k| k + 1)
                            .ok_or_else(|| Error::Parse(format!("unknown gate {name:?}")))?,
                    };
                    if sites.len() != want {
                        return Err(Error::Parse(format!("{name} takes {want} sites in {tok:?}")));
                    }
                    let distinct: BTreeSet<_> = sites.iter().collect();
                    if distinct.len() != sites.len() {
                        return Err(Error::Parse(format!("repeated site in {tok:?}")));
                    }
                    if name == "X" {
                        SymOp::x(sites[0])
                    } else {
                        SymOp::diagonal([Monomial::new(sites)])
                    }
                }
            };
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }
}

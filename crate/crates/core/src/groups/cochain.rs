use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::group::{FiniteGroup, GroupHom};
use super::zmod::solve_mod;
use crate::error::{Error, Result};

/// The root of unity `exp(2 pi i num / modulus)`. Equality compares the
/// reduced fractions, so `1/2 == 2/4`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PhaseValue {
    pub num: u64,
    pub modulus: u64,
}

impl PhaseValue {
    pub fn new(num: u64, modulus: u64) -> Self {
        assert!(modulus > 0);
        Self { num: num % modulus, modulus }
    }

    pub fn one() -> Self {
        Self::new(0, 1)
    }

    /// `+1` or `-1`.
    pub fn sign(negative: bool) -> Self {
        Self::new(u64::from(negative), 2)
    }

    pub fn is_one(&self) -> bool {
        self.num.is_multiple_of(self.modulus)
    }

    pub fn reduced(&self) -> (u64, u64) {
        let g = gcd(self.num, self.modulus);
        (self.num / g, self.modulus / g)
    }

    pub fn mul(&self, other: &PhaseValue) -> PhaseValue {
        let l = self.modulus / gcd(self.modulus, other.modulus) * other.modulus;
        PhaseValue::new(self.num * (l / self.modulus) + other.num * (l / other.modulus), l)
    }

    pub fn inv(&self) -> PhaseValue {
        PhaseValue::new(self.modulus - self.num % self.modulus, self.modulus)
    }

    /// Value in `Z/modulus`, if the phase is a `modulus`-th root of unity.
    pub fn in_modulus(&self, modulus: u64) -> Option<u64> {
        let (n, d) = self.reduced();
        modulus.is_multiple_of(d).then(|| n * (modulus / d))
    }
}

impl PartialEq for PhaseValue {
    fn eq(&self, other: &Self) -> bool {
        self.reduced() == other.reduced()
    }
}

impl Eq for PhaseValue {}

impl fmt::Display for PhaseValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        if n == 0 {
            write!(f, "1")
        } else if d == 2 {
            write!(f, "-1")
        } else {
            write!(f, "exp(2pi i {n}/{d})")
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// A `Z/modulus`-valued cochain on a finite group with trivial action.
/// Values are stored row-major, first argument most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub group: Arc<FiniteGroup>,
    pub degree: usize,
    pub modulus: u64,
    values: Vec<u64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SolveOptions {
    /// Require the primitive to vanish whenever an argument is the identity.
    pub normalized: bool,
}

/// On-disk cochain format; keys are comma-separated element indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CochainJson {
    pub degree: usize,
    pub modulus: u64,
    pub values: BTreeMap<String, u64>,
}

impl Cochain {
    pub fn new(group: Arc<FiniteGroup>, degree: usize, modulus: u64, values: Vec<u64>) -> Result<Self> {
        let len = group.order().pow(degree as u32);
        if values.len() != len || modulus == 0 {
            return Err(Error::CochainMismatch(format!(
                "expected {len} values mod a positive modulus, got {} mod {modulus}",
                values.len()
            )));
        }
        let values = values.into_iter().map(|v| v % modulus).collect();
        Ok(Self { group, degree, modulus, values })
    }

    pub fn zero(group: Arc<FiniteGroup>, degree: usize, modulus: u64) -> Self {
        let len = group.order().pow(degree as u32);
        Self { group, degree, modulus, values: vec![0; len] }
    }

    pub fn from_fn<F>(group: Arc<FiniteGroup>, degree: usize, modulus: u64, f: F) -> Self
    where
        F: Fn(&[usize]) -> u64,
    {
        let len = group.order().pow(degree as u32);
        let values = (0..len).map(|i| f(&group.tuple_at(i, degree)) % modulus).collect();
        Self { group, degree, modulus, values }
    }

    pub fn value(&self, args: &[usize]) -> u64 {
        assert_eq!(args.len(), self.degree);
        self.values[self.group.tuple_index(args)]
    }

    pub fn set(&mut self, args: &[usize], v: u64) {
        let i = self.group.tuple_index(args);
        self.values[i] = v % self.modulus;
    }

    pub fn phase(&self, args: &[usize]) -> PhaseValue {
        PhaseValue::new(self.value(args), self.modulus)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || self.modulus != other.modulus || *self.group != *other.group {
            return Err(Error::CochainMismatch("degree, modulus or group differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        let m = self.modulus;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % m).collect();
        Ok(Cochain { values, ..self.clone() })
    }

    pub fn neg(&self) -> Cochain {
        let m = self.modulus;
        Cochain { values: self.values.iter().map(|&a| (m - a) % m).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Cochain {
        let m = self.modulus;
        Cochain {
            values: self.values.iter().map(|&a| ((a as u128 * k as u128) % m as u128) as u64).collect(),
            ..self.clone()
        }
    }

    /// Reinterprets the values in `Z/new` through the inclusion
    /// `Z/m -> Z/new`, `1 -> new/m`. Requires `m | new`.
    pub fn with_modulus(&self, new: u64) -> Result<Cochain> {
        if !new.is_multiple_of(self.modulus) {
            return Err(Error::CochainMismatch(format!("{} does not divide {new}", self.modulus)));
        }
        let k = new / self.modulus;
        Ok(Cochain {
            modulus: new,
            values: self.values.iter().map(|&a| a * k).collect(),
            ..self.clone()
        })
    }

    /// Coboundary with trivial coefficients.
    pub fn coboundary(&self) -> Cochain {
        let n = self.degree;
        let g = &self.group;
        let m = self.modulus;
        Cochain::from_fn(g.clone(), n + 1, m, |args| {
            let mut acc = self.value(&args[1..]) as i128;
            let mut buf = Vec::with_capacity(n);
            for i in 1..=n {
                buf.clear();
                buf.extend_from_slice(&args[..i - 1]);
                buf.push(g.mul(args[i - 1], args[i]));
                buf.extend_from_slice(&args[i + 1..]);
                let v = self.value(&buf) as i128;
                acc += if i % 2 == 1 { -v } else { v };
            }
            let last = self.value(&args[..n]) as i128;
            acc += if (n + 1) % 2 == 1 { -last } else { last };
            acc.rem_euclid(m as i128) as u64
        })
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    pub fn is_normalized(&self) -> bool {
        let e = self.group.identity();
        (0..self.values.len()).all(|i| {
            let t = self.group.tuple_at(i, self.degree);
            !t.contains(&e) || self.values[i] == 0
        })
    }

    /// A cochain `b` of one degree lower with `coboundary(b) == self`, if any.
    pub fn coboundary_solve(&self, opts: SolveOptions) -> Option<Cochain> {
        if self.degree == 0 {
            return self.is_zero().then(|| self.clone());
        }
        let g = &self.group;
        let d = self.degree - 1;
        let unknowns = g.order().pow(d as u32);
        let m = self.modulus;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (idx, &target) in self.values.iter().enumerate() {
            let mut row = vec![0u64; unknowns];
            let args = g.tuple_at(idx, self.degree);
            let basis_eval = |k: usize| -> u64 {
                // coefficient of unknown k in (delta b)(args)
                let mut c: i128 = 0;
                let n = d;
                if g.tuple_index(&args[1..]) == k {
                    c += 1;
                }
                for i in 1..=n {
                    let mut buf: Vec<usize> = args[..i - 1].to_vec();
                    buf.push(g.mul(args[i - 1], args[i]));
                    buf.extend_from_slice(&args[i + 1..]);
                    if g.tuple_index(&buf) == k {
                        c += if i % 2 == 1 { -1 } else { 1 };
                    }
                }
                if g.tuple_index(&args[..n]) == k {
                    c += if (n + 1) % 2 == 1 { -1 } else { 1 };
                }
                c.rem_euclid(m as i128) as u64
            };
            // only a handful of unknowns appear in each equation
            let mut touched: Vec<usize> = vec![g.tuple_index(&args[1..]), g.tuple_index(&args[..d])];
            for i in 1..=d {
                let mut buf: Vec<usize> = args[..i - 1].to_vec();
                buf.push(g.mul(args[i - 1], args[i]));
                buf.extend_from_slice(&args[i + 1..]);
                touched.push(g.tuple_index(&buf));
            }
            touched.sort_unstable();
            touched.dedup();
            for k in touched {
                row[k] = basis_eval(k);
            }
            if row.iter().any(|&c| c != 0) || target != 0 {
                rows.push(row);
                rhs.push(target);
            }
        }
        if opts.normalized {
            let e = g.identity();
            for k in 0..unknowns {
                if g.tuple_at(k, d).contains(&e) {
                    let mut row = vec![0u64; unknowns];
                    row[k] = 1;
                    rows.push(row);
                    rhs.push(0);
                }
            }
        }
        let x = if rows.is_empty() { vec![0; unknowns] } else { solve_mod(&rows, &rhs, m)? };
        let b = Cochain::new(g.clone(), d, m, x).expect("solution has the right shape");
        assert_eq!(b.coboundary(), *self, "solver returned a non-primitive");
        Some(b)
    }

    pub fn is_coboundary(&self) -> bool {
        self.coboundary_solve(SolveOptions::default()).is_some()
    }

    pub fn cohomologous(&self, other: &Cochain) -> Result<bool> {
        Ok(self.sub(other)?.is_coboundary())
    }

    /// Pulls back along `hom: H -> G`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<Cochain> {
        if *hom.target != *self.group {
            return Err(Error::CochainMismatch("pullback along a map into another group".into()));
        }
        Ok(Cochain::from_fn(hom.source.clone(), self.degree, self.modulus, |args| {
            let mapped: Vec<usize> = args.iter().map(|&a| hom.apply(a)).collect();
            self.value(&mapped)
        }))
    }

    pub fn to_json(&self) -> CochainJson {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let key = self
                    .group
                    .tuple_at(i, self.degree)
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                (key, v)
            })
            .collect();
        CochainJson { degree: self.degree, modulus: self.modulus, values }
    }

    pub fn from_json(group: Arc<FiniteGroup>, json: &CochainJson) -> Result<Cochain> {
        let mut c = Cochain::zero(group.clone(), json.degree, json.modulus);
        let expected = c.values.len();
        if json.values.len() != expected {
            return Err(Error::CochainMismatch(format!(
                "expected {expected} entries, got {}",
                json.values.len()
            )));
        }
        for (key, &v) in &json.values {
            let args: Vec<usize> = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| s.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Parse(format!("cochain key {key:?}: {e}")))?
            };
            if args.len() != json.degree || args.iter().any(|&a| a >= group.order()) {
                return Err(Error::Parse(format!("bad cochain key {key:?}")));
            }
            c.set(&args, v);
        }
        Ok(c)
    }
}

/// Cup product of 1-cochains: `(a_1 ∪ ... ∪ a_n)(g_1..g_n) = a_1(g_1) ... a_n(g_n)`.
pub fn cup_1cocycles(parts: &[Cochain]) -> Result<Cochain> {
    let first = parts.first().ok_or_else(|| Error::CochainMismatch("empty cup product".into()))?;
    for p in parts {
        if p.degree != 1 || p.modulus != first.modulus || *p.group != *first.group {
            return Err(Error::CochainMismatch("cup factors must be 1-cochains on one group".into()));
        }
    }
    let m = first.modulus;
    Ok(Cochain::from_fn(first.group.clone(), parts.len(), m, |args| {
        parts.iter().zip(args).fold(1u64, |acc, (p, &g)| (acc * p.value(&[g])) % m)
    }))
}

//! Dense reference implementations used as oracles by the integration tests.
#![allow(dead_code)]

pub mod axioms;

use std::collections::BTreeSet;

use anomalion::{Site, SymOp};

/// A real `2^n x 2^n` matrix over the listed sites; bit `i` of a basis index
/// is the value at `sites[i]`. Entries of every operator we build are in
/// `{-1, 0, 1}`, which the arithmetic checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub dim: usize,
    pub data: Vec<i8>,
}

impl Dense {
    pub fn identity(n: usize) -> Self {
        let dim = 1 << n;
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1;
        }
        Self { dim, data }
    }

    pub fn at(&self, r: usize, c: usize) -> i8 {
        self.data[r * self.dim + c]
    }

    pub fn matmul(&self, other: &Dense) -> Dense {
        let d = self.dim;
        assert_eq!(d, other.dim);
        let mut acc = vec![0i32; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k] as i32;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                let out = &mut acc[i * d..(i + 1) * d];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b as i32;
                }
            }
        }
        let data = acc.into_iter().map(|x| i8::try_from(x).expect("entry out of range")).collect();
        Dense { dim: d, data }
    }

    pub fn transpose(&self) -> Dense {
        let d = self.dim;
        let mut data = vec![0; d * d];
        for i in 0..d {
            for j in 0..d {
                data[j * d + i] = self.data[i * d + j];
            }
        }
        Dense { dim: d, data }
    }

    /// `self` is `c * identity`; returns `c`.
    pub fn scalar(&self) -> Option<i8> {
        let c = self.at(0, 0);
        let id = Dense::identity(self.dim.trailing_zeros() as usize);
        (self.data.iter().zip(&id.data).all(|(&a, &b)| a == c * b)).then_some(c)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d).map(|i| (0..d).map(|j| self.data[i * d + j] as f64 * v[j]).sum()).collect()
    }
}

fn bit(a: usize, i: usize) -> bool {
    (a >> i) & 1 == 1
}

fn position(sites: &[Site], s: &Site) -> usize {
    sites.iter().position(|t| t == s).unwrap_or_else(|| panic!("site {s} outside the oracle register"))
}

/// Matrix of `D_f X_S` straight from the definition:
/// `|a> -> (-1)^{f(a xor S)} |a xor S>`.
pub fn dense_of(op: &SymOp, sites: &[Site]) -> Dense {
    let n = sites.len();
    let dim = 1 << n;
    let flip: usize = op.flips.iter().map(|s| 1 << position(sites, s)).sum();
    let monos: Vec<Vec<usize>> = op
        .poly
        .monomials()
        .map(|m| m.sites().iter().map(|s| position(sites, s)).collect())
        .collect();
    let mut data = vec![0i8; dim * dim];
    for a in 0..dim {
        let b = a ^ flip;
        let parity = monos.iter().filter(|m| m.iter().all(|&i| bit(b, i))).count() % 2;
        data[b * dim + a] = if parity == 1 { -1 } else { 1 };
    }
    Dense { dim, data }
}

/// Elementary gates built independently of the operator algebra.
pub fn dense_x(n: usize, i: usize) -> Dense {
    let dim = 1 << n;
    let mut data = vec![0; dim * dim];
    for a in 0..dim {
        data[(a ^ (1 << i)) * dim + a] = 1;
    }
    Dense { dim, data }
}

pub fn dense_controlled_z(n: usize, qubits: &[usize]) -> Dense {
    let dim = 1 << n;
    let mut data = vec![0; dim * dim];
    for a in 0..dim {
        data[a * dim + a] = if qubits.iter().all(|&q| bit(a, q)) { -1 } else { 1 };
    }
    Dense { dim, data }
}

/// Dense matrix of a gate given as one of `X`, `Z`, `CZ`, `CCZ` (possibly
/// with a sign), by recognising its shape.
pub fn dense_gate(g: &SymOp, sites: &[Site]) -> Dense {
    let n = sites.len();
    let mut acc = Dense::identity(n);
    for s in &g.flips {
        acc = dense_x(n, position(sites, s)).matmul(&acc);
    }
    for m in g.poly.monomials() {
        let qs: Vec<usize> = m.sites().iter().map(|s| position(sites, s)).collect();
        let d = if qs.is_empty() {
            let mut neg = Dense::identity(n);
            neg.data.iter_mut().for_each(|x| *x = -*x);
            neg
        } else {
            dense_controlled_z(n, &qs)
        };
        acc = d.matmul(&acc);
    }
    acc
}

/// Product of gates, applied in list order (first gate acts first), built
/// column by column by running each basis state through the gates.
pub fn dense_circuit(gates: &[SymOp], sites: &[Site]) -> Dense {
    let n = sites.len();
    let dim = 1 << n;
    let compiled: Vec<(usize, Vec<Vec<usize>>)> = gates
        .iter()
        .map(|g| {
            let flip = g.flips.iter().map(|s| 1 << position(sites, s)).sum();
            let monos = g.poly.monomials().map(|m| m.sites().iter().map(|s| position(sites, s)).collect()).collect();
            (flip, monos)
        })
        .collect();
    let mut data = vec![0i8; dim * dim];
    for a in 0..dim {
        let (mut b, mut sign) = (a, 1i8);
        for (flip, monos) in &compiled {
            b ^= flip;
            for m in monos {
                if m.iter().all(|&i| bit(b, i)) {
                    sign = -sign;
                }
            }
        }
        data[b * dim + a] = sign;
    }
    Dense { dim, data }
}

pub fn chain_sites(x_min: i32, x_max: i32) -> Vec<Site> {
    (x_min..=x_max).map(|x| Site::new(x, 0)).collect()
}

/// Real state vectors on a chain.
pub fn plus_state(n: usize) -> Vec<f64> {
    let dim = 1 << n;
    vec![1.0 / (dim as f64).sqrt(); dim]
}

/// `prod CZ(i, i+1) |+>^n` on an open chain.
pub fn cluster_state(n: usize) -> Vec<f64> {
    let mut v = plus_state(n);
    for (a, amp) in v.iter_mut().enumerate() {
        let edges = (0..n - 1).filter(|&i| bit(a, i) && bit(a, i + 1)).count();
        if edges % 2 == 1 {
            *amp = -*amp;
        }
    }
    v
}

/// `<v| P |v>` for a Pauli string given by its X and Z bit masks
/// (`X` applied first, then `Z`).
pub fn pauli_expectation(v: &[f64], xmask: usize, zmask: usize) -> f64 {
    v.iter()
        .enumerate()
        .map(|(a, &amp)| {
            let b = a ^ xmask;
            let sign = if (b & zmask).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            v[b] * sign * amp
        })
        .sum()
}

/// String-order selection rule: among end operators on the two sites left
/// of a segment, find those giving a nonzero string order for the symmetry
/// `string_mask` (with matching right end operators) and return the charge
/// of the left end under the symmetry `other_mask`, as `+1` or `-1`.
/// Sites are numbered `0..n` along the chain.
pub fn string_order_charge(v: &[f64], string_mask: usize, left: [usize; 2], right: [usize; 2], other_mask: usize) -> BTreeSet<i32> {
    let paulis = |sites: [usize; 2]| {
        let mut out = Vec::new();
        for code in 0..16usize {
            let mut xm = 0;
            let mut zm = 0;
            for (k, &s) in sites.iter().enumerate() {
                let c = (code >> (2 * k)) & 3;
                if c & 1 == 1 {
                    xm |= 1 << s;
                }
                if c & 2 == 2 {
                    zm |= 1 << s;
                }
            }
            out.push((xm, zm));
        }
        out
    };
    let mut charges = BTreeSet::new();
    for &(lx, lz) in &paulis(left) {
        for &(rx, rz) in &paulis(right) {
            let e = pauli_expectation(v, string_mask ^ lx ^ rx, lz ^ rz);
            if e.abs() > 0.5 {
                // X-type symmetry commutes with the end operator unless it
                // hits an odd number of its Z factors
                let anti = (lz & other_mask).count_ones() % 2 == 1;
                charges.insert(if anti { -1 } else { 1 });
            }
        }
    }
    charges
}

/// Splits `op` on `n` qubits as `a (x) b` across the cut after qubit `cut`
/// (qubits `0..cut` in `a`), normalized so that `a` has a `+1` in column 0.
pub fn split_tensor(op: &Dense, cut: usize) -> Option<(Dense, Dense)> {
    let d = op.dim;
    let da = 1 << cut;
    let db = d / da;
    // index = a_bits | (b_bits << cut)
    let idx = |a: usize, b: usize| a | (b << cut);
    let r0 = (0..d).find(|&r| op.at(r, 0) != 0)?;
    let (ra0, rb0) = (r0 % da, r0 / da);
    let s = op.at(r0, 0);
    let mut a = vec![0i8; da * da];
    for r in 0..da {
        for c in 0..da {
            a[r * da + c] = op.at(idx(r, rb0), idx(c, 0)) * s;
        }
    }
    let mut b = vec![0i8; db * db];
    for r in 0..db {
        for c in 0..db {
            b[r * db + c] = op.at(idx(ra0, r), idx(0, c));
        }
    }
    let a = Dense { dim: da, data: a };
    let b = Dense { dim: db, data: b };
    for r in 0..d {
        for c in 0..d {
            if op.at(r, c) != a.at(r % da, c % da) * b.at(r / da, c / da) {
                return None;
            }
        }
    }
    Some((a, b))
}

/// `a (x) identity` on `n` qubits.
pub fn extend_left(a: &Dense, n: usize) -> Dense {
    let d = 1 << n;
    let da = a.dim;
    let mut data = vec![0i8; d * d];
    for r in 0..d {
        for c in 0..d {
            if r / da == c / da {
                data[r * d + c] = a.at(r % da, c % da);
            }
        }
    }
    Dense { dim: d, data }
}

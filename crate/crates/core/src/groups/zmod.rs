//! Linear systems over `Z/m`. Each prime-power factor is handled by Smith-style
//! elimination with pivots of minimal p-adic valuation, then the solutions are
//! glued with the Chinese remainder theorem.

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn submod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn valuation(x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let (mut x, mut v) = (x, 0);
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

fn solve_prime_power(a: &[Vec<u64>], b: &[u64], p: u64, q: u64) -> Option<Vec<u64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut mat: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|&x| x % q).collect()).collect();
    let mut rhs: Vec<u64> = b.iter().map(|&x| x % q).collect();
    // x = V y, columns of V track the column operations
    let mut v: Vec<Vec<u64>> = (0..cols).map(|i| (0..cols).map(|j| u64::from(i == j)).collect()).collect();
    let mut pivots: Vec<u64> = Vec::new();
    let mut r = 0;
    while r < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'scan: for (i, row) in mat.iter().enumerate().skip(r) {
            for (j, &x) in row.iter().enumerate().skip(r) {
                if let Some(val) = valuation(x, p) {
                    if best.is_none_or(|(bv, _, _)| val < bv) {
                        best = Some((val, i, j));
                        if val == 0 {
                            break 'scan;
                        }
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        mat.swap(r, pi);
        rhs.swap(r, pi);
        if pj != r {
            for row in mat.iter_mut() {
                row.swap(r, pj);
            }
            for row in v.iter_mut() {
                row.swap(r, pj);
            }
        }
        let pv = p.pow(val);
        let unit = mat[r][r] / pv;
        let uinv = inverse_mod(unit, q).expect("pivot cofactor is a unit");
        for x in mat[r].iter_mut() {
            *x = mulmod(*x, uinv, q);
        }
        rhs[r] = mulmod(rhs[r], uinv, q);
        let pivot = mat[r].clone();
        for i in r + 1..rows {
            let c = mat[i][r] / pv;
            if c == 0 {
                continue;
            }
            for (x, &p) in mat[i][r..].iter_mut().zip(&pivot[r..]) {
                *x = submod(*x, mulmod(c, p, q), q);
            }
            rhs[i] = submod(rhs[i], mulmod(c, rhs[r], q), q);
        }
        for j in r + 1..cols {
            let c = mat[r][j] / pv;
            if c == 0 {
                continue;
            }
            mat[r][j] = 0;
            for row in v.iter_mut() {
                let t = mulmod(c, row[r], q);
                row[j] = submod(row[j], t, q);
            }
        }
        pivots.push(pv);
        r += 1;
    }
    if rhs[r..].iter().any(|&x| x != 0) {
        return None;
    }
    let mut y = vec![0u64; cols];
    for (i, &pv) in pivots.iter().enumerate() {
        if !rhs[i].is_multiple_of(pv) {
            return None;
        }
        y[i] = rhs[i] / pv;
    }
    let x = (0..cols)
        .map(|i| (0..cols).fold(0, |acc, j| (acc + mulmod(v[i][j], y[j], q)) % q))
        .collect();
    Some(x)
}

/// Solves `A x = b` over `Z/m`; free variables are set to zero. Returns
/// `None` when the system is inconsistent.
pub fn solve_mod(a: &[Vec<u64>], b: &[u64], m: u64) -> Option<Vec<u64>> {
    assert_eq!(a.len(), b.len());
    let cols = a.first().map_or(0, Vec::len);
    let mut x = vec![0u64; cols];
    let mut modulus = 1u64;
    for (p, k) in factor(m) {
        let q = p.pow(k);
        let xq = solve_prime_power(a, b, p, q)?;
        // combine x mod `modulus` with xq mod q
        let inv = inverse_mod(modulus % q, q).unwrap_or(0);
        for (xi, &yi) in x.iter_mut().zip(&xq) {
            let t = mulmod(submod(yi, *xi % q, q), inv, q);
            *xi += modulus * t;
        }
        modulus *= q;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &[Vec<u64>], x: &[u64], b: &[u64], m: u64) {
        for (row, &bi) in a.iter().zip(b) {
            let lhs = row.iter().zip(x).fold(0, |acc, (&r, &xi)| (acc + mulmod(r, xi, m)) % m);
            assert_eq!(lhs, bi % m);
        }
    }

    #[test]
    fn solves_over_prime_power_with_non_unit_pivots() {
        let a = vec![vec![2, 4], vec![6, 0]];
        let b = vec![6, 2];
        let x = solve_mod(&a, &b, 8).unwrap();
        check(&a, &x, &b, 8);
        assert!(solve_mod(&[vec![2]], &[1], 8).is_none());
    }

    #[test]
    fn solves_over_composite_modulus() {
        let a = vec![vec![3, 1, 0], vec![0, 2, 5], vec![1, 1, 1]];
        let b = vec![4, 7, 11];
        let x = solve_mod(&a, &b, 12).unwrap();
        check(&a, &x, &b, 12);
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![1, 1], vec![1, 1]];
        assert!(solve_mod(&a, &[0, 1], 6).is_none());
    }
}

use std::sync::Arc;

use crate::groups::{cup_1cocycles, Cochain, FiniteGroup};

/// Homomorphisms `G -> Z2`, as 1-cochains, reduced to a basis. Basis vectors
/// are chosen in lexicographic order of their value tables, so for `Z2 x Z2`
/// with elements `(g1,g2)` the basis is `a = g1`, `b = g2`.
pub fn z2_characters(group: &Arc<FiniteGroup>) -> Vec<Cochain> {
    let n = group.order();
    let mut homs: Vec<Vec<u64>> = Vec::new();
    // a homomorphism to Z2 is determined by its kernel, an index-2 subgroup
    if n <= 20 {
        for mask in 1u64..(1 << n) {
            let f = |a: usize| mask >> a & 1;
            if f(group.identity()) != 0 {
                continue;
            }
            if group.elements().all(|a| group.elements().all(|b| f(group.mul(a, b)) == (f(a) + f(b)) % 2)) {
                homs.push((0..n).map(f).collect());
            }
        }
    }
    homs.sort();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    for h in homs {
        // independence over F2 by brute-force span check (basis is tiny)
        let k = basis.len();
        let in_span = (0..1u32 << k).any(|sel| {
            let mut v = vec![0u64; n];
            for (i, b) in basis.iter().enumerate() {
                if sel >> i & 1 == 1 {
                    for (x, y) in v.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            v == h
        });
        if !in_span {
            basis.push(h);
        }
    }
    basis
        .into_iter()
        .map(|v| Cochain::new(group.clone(), 1, 2, v).expect("character table"))
        .collect()
}

fn letter(i: usize) -> char {
    (b'a' + i as u8) as char
}

pub struct ClassMatch {
    pub trivial: bool,
    pub name: Option<String>,
}

/// Identifies a `Z2`-valued cocycle with a cup product of characters, when
/// one matches. Exact equality is preferred over cohomology.
pub fn identify_class(c: &Cochain) -> ClassMatch {
    let trivial = c.is_coboundary();
    if trivial || c.modulus != 2 || c.degree == 0 {
        return ClassMatch { trivial, name: None };
    }
    let chars = z2_characters(&c.group);
    let k = chars.len();
    if k == 0 {
        return ClassMatch { trivial, name: None };
    }
    let words: Vec<Vec<usize>> = (0..k.pow(c.degree as u32))
        .map(|mut w| {
            let mut v = vec![0; c.degree];
            for slot in v.iter_mut().rev() {
                *slot = w % k;
                w /= k;
            }
            v
        })
        .collect();
    let product = |w: &[usize]| {
        let parts: Vec<Cochain> = w.iter().map(|&i| chars[i].clone()).collect();
        cup_1cocycles(&parts).expect("compatible characters")
    };
    let name = |w: &[usize]| w.iter().map(|&i| letter(i).to_string()).collect::<Vec<_>>().join("⌣");
    if let Some(w) = words.iter().find(|w| product(w) == *c) {
        return ClassMatch { trivial, name: Some(name(w)) };
    }
    let found = words
        .iter()
        .find(|w| c.cohomologous(&product(w)).unwrap_or(false))
        .map(|w| name(w));
    ClassMatch { trivial, name: found }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_characters() {
        let z2 = FiniteGroup::cyclic(2);
        let g = Arc::new(z2.product(&z2));
        let ch = z2_characters(&g);
        assert_eq!(ch.len(), 2);
        assert_eq!(ch[0].values(), &[0, 0, 1, 1]);
        assert_eq!(ch[1].values(), &[0, 1, 0, 1]);
    }

    #[test]
    fn identifies_bbba() {
        let z2 = FiniteGroup::cyclic(2);
        let g = Arc::new(z2.product(&z2));
        let tau = Cochain::from_fn(g, 4, 2, |t| ((t[0] % 2) * (t[1] % 2) * (t[2] % 2) * (t[3] / 2)) as u64);
        let m = identify_class(&tau);
        assert!(!m.trivial);
        assert_eq!(m.name.as_deref(), Some("b⌣b⌣b⌣a"));
    }
}

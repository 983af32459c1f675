//! Brute-force axiom oracles for crossed structures, written against the raw
//! tables without the library validators. Crossed modules are checked through
//! the associated cat^1-group on `M x| N`: the target map must be a
//! homomorphism and the kernels of source and target must commute.

use anomalion::crossed::{CrossedModule, CrossedSquare, TwoCrossedModule};
use anomalion::FiniteGroup;

fn is_hom(src: &FiniteGroup, tgt: &FiniteGroup, map: &[usize]) -> bool {
    map.len() == src.order()
        && map.iter().all(|&x| x < tgt.order())
        && src.elements().all(|a| src.elements().all(|b| map[src.mul(a, b)] == tgt.mul(map[a], map[b])))
}

/// `act` is a left action by automorphisms.
fn acts_by_automorphisms(acting: &FiniteGroup, on: &FiniteGroup, act: &[Vec<usize>]) -> bool {
    if act.len() != acting.order() || act.iter().any(|r| r.len() != on.order() || r.iter().any(|&x| x >= on.order())) {
        return false;
    }
    let autos = act.iter().all(|r| {
        let mut seen = vec![false; on.order()];
        r.iter().for_each(|&x| seen[x] = true);
        seen.iter().all(|&b| b) && on.elements().all(|a| on.elements().all(|b| r[on.mul(a, b)] == on.mul(r[a], r[b])))
    });
    let composes = acting.elements().all(|g| {
        acting.elements().all(|h| on.elements().all(|x| act[acting.mul(g, h)][x] == act[g][act[h][x]]))
    });
    autos && composes && on.elements().all(|x| act[acting.identity()][x] == x)
}

pub fn crossed_module_ok(src: &FiniteGroup, tgt: &FiniteGroup, bd: &[usize], act: &[Vec<usize>]) -> bool {
    if !is_hom(src, tgt, bd) || !acts_by_automorphisms(tgt, src, act) {
        return false;
    }
    let mul = |x: (usize, usize), y: (usize, usize)| (src.mul(x.0, act[x.1][y.0]), tgt.mul(x.1, y.1));
    let target = |x: (usize, usize)| tgt.mul(bd[x.0], x.1);
    let all: Vec<(usize, usize)> = src.elements().flat_map(|m| tgt.elements().map(move |n| (m, n))).collect();
    let target_hom = all.iter().all(|&x| all.iter().all(|&y| target(mul(x, y)) == tgt.mul(target(x), target(y))));
    let ker_s: Vec<(usize, usize)> = src.elements().map(|m| (m, tgt.identity())).collect();
    let ker_t: Vec<(usize, usize)> = src.elements().map(|m| (m, tgt.inv(bd[m]))).collect();
    target_hom && ker_s.iter().all(|&x| ker_t.iter().all(|&y| mul(x, y) == mul(y, x)))
}

pub fn module_ok(c: &CrossedModule) -> bool {
    crossed_module_ok(&c.m, &c.n, &c.bd, &c.act)
}

fn equivariant(p: &FiniteGroup, src: &FiniteGroup, f: &[usize], a_src: &[Vec<usize>], a_tgt: &[Vec<usize>]) -> bool {
    p.elements().all(|q| src.elements().all(|x| f[a_src[q][x]] == a_tgt[q][f[x]]))
}

pub fn square_ok(c: &CrossedSquare) -> bool {
    let (l, m, n, p) = (&*c.l, &*c.m, &*c.n, &*c.p);
    if !(is_hom(l, m, &c.f) && is_hom(l, n, &c.g) && is_hom(m, p, &c.v) && is_hom(n, p, &c.u)) {
        return false;
    }
    if c.eta.len() != m.order() * n.order() || c.eta.iter().any(|&x| x >= l.order()) {
        return false;
    }
    if !(acts_by_automorphisms(p, l, &c.act_l) && acts_by_automorphisms(p, m, &c.act_m) && acts_by_automorphisms(p, n, &c.act_n)) {
        return false;
    }
    let vf: Vec<usize> = c.f.iter().map(|&x| c.v[x]).collect();
    let ug: Vec<usize> = c.g.iter().map(|&x| c.u[x]).collect();
    if vf != ug
        || !equivariant(p, l, &c.f, &c.act_l, &c.act_m)
        || !equivariant(p, l, &c.g, &c.act_l, &c.act_n)
        || !crossed_module_ok(m, p, &c.v, &c.act_m)
        || !crossed_module_ok(n, p, &c.u, &c.act_n)
        || !crossed_module_ok(l, p, &vf, &c.act_l)
    {
        return false;
    }
    let h = |x: usize, y: usize| c.eta[x * n.order() + y];
    // M and N act on everything through P
    let on_m = |q: usize, x: usize| c.act_m[q][x];
    let on_n = |q: usize, x: usize| c.act_n[q][x];
    let on_l = |q: usize, x: usize| c.act_l[q][x];
    for x in m.elements() {
        for y in n.elements() {
            let e = h(x, y);
            if c.f[e] != m.mul(x, on_m(c.u[y], m.inv(x))) || c.g[e] != n.mul(on_n(c.v[x], y), n.inv(y)) {
                return false;
            }
            for q in p.elements() {
                if h(on_m(q, x), on_n(q, y)) != on_l(q, e) {
                    return false;
                }
            }
            for x2 in m.elements() {
                if h(m.mul(x, x2), y) != l.mul(on_l(c.v[x], h(x2, y)), e) {
                    return false;
                }
            }
            for y2 in n.elements() {
                if h(x, n.mul(y, y2)) != l.mul(e, on_l(c.u[y], h(x, y2))) {
                    return false;
                }
            }
        }
    }
    l.elements().all(|z| {
        n.elements().all(|y| h(c.f[z], y) == l.mul(z, on_l(c.u[y], l.inv(z))))
            && m.elements().all(|x| h(x, c.g[z]) == l.mul(on_l(c.v[x], z), l.inv(z)))
    })
}

pub fn two_module_ok(t: &TwoCrossedModule) -> bool {
    let (l, k, p) = (&*t.l, &*t.k, &*t.p);
    if !(is_hom(l, k, &t.delta) && is_hom(k, p, &t.bd)) || t.braid.len() != k.order() * k.order() || t.braid.iter().any(|&x| x >= l.order()) {
        return false;
    }
    if !(acts_by_automorphisms(p, l, &t.act_l) && acts_by_automorphisms(p, k, &t.act_k)) {
        return false;
    }
    if l.elements().any(|z| t.bd[t.delta[z]] != p.identity()) {
        return false;
    }
    let normal = |g: &FiniteGroup, sub: &[usize]| g.elements().all(|a| sub.iter().all(|&s| sub.contains(&g.mul(g.mul(a, s), g.inv(a)))));
    let im_d: Vec<usize> = t.delta.clone();
    let im_b: Vec<usize> = t.bd.clone();
    if !normal(k, &im_d) || !normal(p, &im_b) {
        return false;
    }
    if !equivariant(p, l, &t.delta, &t.act_l, &t.act_k) || !p.elements().all(|q| k.elements().all(|x| t.bd[t.act_k[q][x]] == p.mul(p.mul(q, t.bd[x]), p.inv(q)))) {
        return false;
    }
    let b = |x: usize, y: usize| t.braid[x * k.order() + y];
    let ak = |x: usize, y: usize| t.act_k[t.bd[x]][y];
    let al = |x: usize, z: usize| t.act_l[t.bd[x]][z];
    let conj = |g: &FiniteGroup, a: usize, x: usize| g.mul(g.mul(a, x), g.inv(a));
    for x in k.elements() {
        for y in k.elements() {
            if t.delta[b(x, y)] != k.mul(conj(k, x, y), ak(x, k.inv(y))) {
                return false;
            }
            for q in p.elements() {
                if t.act_l[q][b(x, y)] != b(t.act_k[q][x], t.act_k[q][y]) {
                    return false;
                }
            }
            for w in k.elements() {
                let last = b(k.inv(t.delta[b(x, w)]), ak(x, y));
                if b(x, k.mul(y, w)) != l.mul(l.mul(b(x, y), b(x, w)), last) {
                    return false;
                }
                if b(k.mul(x, y), w) != l.mul(b(x, conj(k, y, w)), al(x, b(y, w))) {
                    return false;
                }
            }
        }
    }
    let comm = |a: usize, c: usize| l.mul(l.mul(a, c), l.inv(l.mul(c, a)));
    l.elements().all(|z0| {
        l.elements().all(|z1| b(t.delta[z0], t.delta[z1]) == comm(z0, z1))
            && k.elements().all(|x| {
                let dl = t.delta[z0];
                l.mul(b(dl, x), b(x, dl)) == l.mul(z0, al(x, l.inv(z0)))
            })
    })
}

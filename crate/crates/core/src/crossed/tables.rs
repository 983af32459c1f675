//! Axiom checks on raw structure tables, shared by the validators.

use crate::groups::FiniteGroup;

use super::report::ValidationReport;

/// Shape check for a map table; records a failure and returns false on
/// mismatch.
pub(crate) fn check_map_shape(r: &mut ValidationReport, name: &str, src: &FiniteGroup, tgt: &FiniteGroup, map: &[usize]) -> bool {
    let ok = map.len() == src.order() && map.iter().all(|&x| x < tgt.order());
    r.run(&format!("{name}: table shape"), &[1], |_| ok);
    ok
}

pub(crate) fn check_action_shape(r: &mut ValidationReport, name: &str, acting: &FiniteGroup, on: &FiniteGroup, act: &[Vec<usize>]) -> bool {
    let ok = act.len() == acting.order() && act.iter().all(|row| row.len() == on.order() && row.iter().all(|&x| x < on.order()));
    r.run(&format!("{name}: table shape"), &[1], |_| ok);
    ok
}

pub(crate) fn check_hom(r: &mut ValidationReport, name: &str, src: &FiniteGroup, tgt: &FiniteGroup, map: &[usize]) {
    r.run(&format!("{name} is a homomorphism"), &[src.order(), src.order()], |t| {
        map[src.mul(t[0], t[1])] == tgt.mul(map[t[0]], map[t[1]])
    });
}

/// `act[g][x]` is a left action of `acting` on `on` by automorphisms.
pub(crate) fn check_action(r: &mut ValidationReport, name: &str, acting: &FiniteGroup, on: &FiniteGroup, act: &[Vec<usize>]) {
    let e = acting.identity();
    r.run(&format!("{name}: identity acts trivially"), &[on.order()], |t| act[e][t[0]] == t[0]);
    r.run(&format!("{name}: compatible with products"), &[acting.order(), acting.order(), on.order()], |t| {
        act[acting.mul(t[0], t[1])][t[2]] == act[t[0]][act[t[1]][t[2]]]
    });
    r.run(&format!("{name}: acts by homomorphisms"), &[acting.order(), on.order(), on.order()], |t| {
        act[t[0]][on.mul(t[1], t[2])] == on.mul(act[t[0]][t[1]], act[t[0]][t[2]])
    });
}

/// `bd(g . x) = g bd(x) g^{-1}` for an action of the target on the source.
pub(crate) fn check_equivariance(r: &mut ValidationReport, name: &str, src: &FiniteGroup, tgt: &FiniteGroup, bd: &[usize], act: &[Vec<usize>]) {
    r.run(&format!("{name}: equivariance"), &[tgt.order(), src.order()], |t| {
        bd[act[t[0]][t[1]]] == tgt.conj(t[0], bd[t[1]])
    });
}

/// `bd(x0) . x1 = x0 x1 x0^{-1}`.
pub(crate) fn check_peiffer(r: &mut ValidationReport, name: &str, src: &FiniteGroup, bd: &[usize], act: &[Vec<usize>]) {
    r.run(&format!("{name}: Peiffer identity"), &[src.order(), src.order()], |t| {
        act[bd[t[0]]][t[1]] == src.conj(t[0], t[1])
    });
}

/// `f(p . x) = p . f(x)` for maps between groups carrying actions of `p`.
pub(crate) fn check_map_equivariant(
    r: &mut ValidationReport,
    name: &str,
    p: &FiniteGroup,
    src: &FiniteGroup,
    f: &[usize],
    act_src: &[Vec<usize>],
    act_tgt: &[Vec<usize>],
) {
    r.run(&format!("{name} is equivariant"), &[p.order(), src.order()], |t| f[act_src[t[0]][t[1]]] == act_tgt[t[0]][f[t[1]]]);
}

/// Image of a map table as a sorted element list.
pub(crate) fn image(map: &[usize]) -> Vec<usize> {
    let mut v = map.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub(crate) fn kernel(src: &FiniteGroup, tgt: &FiniteGroup, map: &[usize]) -> Vec<usize> {
    src.elements().filter(|&x| map[x] == tgt.identity()).collect()
}

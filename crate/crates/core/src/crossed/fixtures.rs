//! Small crossed modules and crossed squares used by tests, benches and the
//! command line tool.

use std::sync::Arc;

use crate::groups::FiniteGroup;

use super::module::CrossedModule;
use super::square::CrossedSquare;

fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
    Arc::new(g)
}

/// Closure of a set of elements under multiplication.
pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut elems = vec![g.identity()];
    let mut i = 0;
    while i < elems.len() {
        for &s in gens {
            let y = g.mul(elems[i], s);
            if !elems.contains(&y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    elems.sort_unstable();
    elems
}

pub fn derived_subgroup(g: &FiniteGroup) -> Vec<usize> {
    let comms: Vec<usize> = g.elements().flat_map(|a| g.elements().map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
    generated(g, &comms)
}

pub fn center(g: &FiniteGroup) -> Vec<usize> {
    g.elements().filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a))).collect()
}

/// Inclusion of a normal subgroup with the conjugation action.
pub fn normal_inclusion(n: &Arc<FiniteGroup>, elems: &[usize]) -> CrossedModule {
    let (m, inc) = n.subgroup(elems).expect("subgroup");
    let pos = |x: usize| inc.table().iter().position(|&y| y == x).expect("normal subgroup");
    let act = n.elements().map(|a| inc.table().iter().map(|&x| pos(n.conj(a, x))).collect()).collect();
    CrossedModule::new(m, n.clone(), inc.table().to_vec(), act)
}

/// `Z/4` onto the center of the dihedral group of order 8, trivial action.
/// Its Postnikov class is nontrivial.
pub fn z4_onto_center_d4() -> CrossedModule {
    let n = arc(FiniteGroup::dihedral(4));
    let c = *center(&n).iter().find(|&&x| x != n.identity()).expect("D4 has a center of order 2");
    let bd = (0..4).map(|k| if k % 2 == 0 { n.identity() } else { c }).collect();
    CrossedModule::with_trivial_action(arc(FiniteGroup::cyclic(4)), n, bd)
}

/// Named crossed modules, all with `|N| <= 16`.
pub fn crossed_modules() -> Vec<(&'static str, CrossedModule)> {
    let z2 = arc(FiniteGroup::cyclic(2));
    let z4 = arc(FiniteGroup::cyclic(4));
    let z8 = arc(FiniteGroup::cyclic(8));
    let s3 = arc(FiniteGroup::symmetric(3));
    let d4 = arc(FiniteGroup::dihedral(4));
    let z2z4 = arc(z2.product(&z4));
    let a3 = derived_subgroup(&s3);
    let klein = {
        let c = *center(&d4).iter().find(|&&x| x != d4.identity()).expect("center of order 2");
        let s = d4.elements().find(|&x| generated(&d4, &[x]).len() == 2 && x != c).expect("reflection");
        generated(&d4, &[c, s])
    };
    vec![
        ("trivial", CrossedModule::from_group(arc(FiniteGroup::trivial()))),
        ("group_z2xz2", CrossedModule::from_group(arc(z2.product(&z2)))),
        ("conjugation_s3", CrossedModule::conjugation(s3.clone())),
        ("conjugation_d4", CrossedModule::conjugation(d4.clone())),
        ("z2_into_z4", CrossedModule::with_trivial_action(z2.clone(), z4.clone(), vec![0, 2])),
        ("z2_zero_z2", CrossedModule::with_trivial_action(z2.clone(), z2.clone(), vec![0, 0])),
        ("z4_double_z4", CrossedModule::with_trivial_action(z4.clone(), z4.clone(), (0..4).map(|k| 2 * k % 4).collect())),
        ("z8_double_z8", CrossedModule::with_trivial_action(z8.clone(), z8.clone(), (0..8).map(|k| 2 * k % 8).collect())),
        ("z4_double_z2xz4", CrossedModule::with_trivial_action(z4.clone(), z2z4.clone(), (0..4).map(|k| 2 * k % 4).collect())),
        ("a3_into_s3", normal_inclusion(&s3, &a3)),
        ("klein_into_d4", normal_inclusion(&d4, &klein)),
        ("z4_onto_center_d4", z4_onto_center_d4()),
    ]
}

/// `L = Z/2`, `M = N = Z/2 x Z/2`, trivial `P`, `eta` the symplectic form.
pub fn symplectic_square() -> CrossedSquare {
    let z2 = arc(FiniteGroup::cyclic(2));
    let k = arc(z2.product(&z2));
    let t = arc(FiniteGroup::trivial());
    let form = |a: usize, b: usize| ((a >> 1) * (b & 1) + (a & 1) * (b >> 1)) % 2;
    CrossedSquare {
        f: vec![0, 0],
        g: vec![0, 0],
        v: vec![0; 4],
        u: vec![0; 4],
        act_l: vec![vec![0, 1]],
        act_m: vec![(0..4).collect()],
        act_n: vec![(0..4).collect()],
        eta: (0..16).map(|i| form(i / 4, i % 4)).collect(),
        l: z2,
        m: k.clone(),
        n: k,
        p: t,
    }
}

/// Named crossed squares.
pub fn crossed_squares() -> Vec<(&'static str, CrossedSquare)> {
    let s3 = arc(FiniteGroup::symmetric(3));
    let d4 = arc(FiniteGroup::dihedral(4));
    let s4 = arc(FiniteGroup::symmetric(4));
    let all = |g: &FiniteGroup| g.elements().collect::<Vec<_>>();
    let a3 = derived_subgroup(&s3);
    let a4 = derived_subgroup(&s4);
    let v4 = {
        let (a4g, inc) = s4.subgroup(&a4).expect("A4");
        derived_subgroup(&a4g).into_iter().map(|x| inc.apply(x)).collect::<Vec<_>>()
    };
    let rot = generated(&d4, &[d4.elements().find(|&x| generated(&d4, &[x]).len() == 4).expect("rotation")]);
    vec![
        ("trivial", CrossedSquare::trivial()),
        ("symplectic", symplectic_square()),
        ("commutator_s3_a3", CrossedSquare::commutator(&s3, &all(&s3), &a3).expect("normal")),
        ("commutator_d4", CrossedSquare::commutator(&d4, &all(&d4), &all(&d4)).expect("normal")),
        ("commutator_d4_rot_d4", CrossedSquare::commutator(&d4, &rot, &all(&d4)).expect("normal")),
        ("commutator_s4_a4_v4", CrossedSquare::commutator(&s4, &a4, &v4).expect("normal")),
    ]
}

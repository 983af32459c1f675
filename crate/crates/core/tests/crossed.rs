mod common;

use std::sync::Arc;

use anomalion::anomaly::{nayak_else_1d, TruncationData1d};
use anomalion::circuits::builtin_action;
use anomalion::crossed::fixtures::{crossed_modules, crossed_squares, symplectic_square, z4_onto_center_d4};
use anomalion::crossed::{
    all_sections, check_weak_morphism, extensions_isomorphic, homotopy_groups, lattice_crossed_module_1d, pauli_square,
    postnikov3, postnikov3_with_lift, to_two_crossed_module, twist, validate_crossed_module, validate_crossed_square,
    validate_two_crossed_module, CrossedModule, CrossedModuleJson, CrossedSquare, CrossedSquareJson, KernelIso,
    TwoCrossedModule, TwoCrossedModuleJson, WeakMorphismData,
};
use anomalion::{Cochain, Error, FiniteGroup, GroupHom, Window};
use common::axioms;

fn module(name: &str) -> CrossedModule {
    crossed_modules().into_iter().find(|(n, _)| *n == name).unwrap().1
}

#[test]
fn fixtures_pass_validators_and_oracle() {
    for (name, cm) in crossed_modules() {
        assert!(validate_crossed_module(&cm).is_valid(), "{name}");
        assert!(axioms::module_ok(&cm), "{name}");
    }
    for (name, cs) in crossed_squares() {
        assert!(validate_crossed_square(&cs).is_valid(), "{name}");
        assert!(axioms::square_ok(&cs), "{name}");
        let t = to_two_crossed_module(&cs).unwrap();
        assert!(validate_two_crossed_module(&t).is_valid(), "{name}");
        assert!(axioms::two_module_ok(&t), "{name}");
    }
}

#[test]
fn broken_boundary_is_located() {
    let mut cm = module("z2_into_z4");
    cm.bd[1] = 1;
    let r = validate_crossed_module(&cm);
    let c = r.check("bd is a homomorphism").unwrap();
    assert_eq!(c.violations, vec![vec![1, 1]]);
    assert!(!axioms::module_ok(&cm));
}

#[test]
fn broken_eta_entry_is_located() {
    let mut cs = symplectic_square();
    assert_eq!(cs.eta(1, 2), 1);
    cs.eta[4 + 2] = 0;
    let r = validate_crossed_square(&cs);
    assert!(!r.is_valid());
    let c = r.check("eta(m m', n) = (m . eta(m',n)) eta(m,n)").unwrap();
    assert!(!c.violations.is_empty() && c.violations.iter().all(|v| v[2] == 2));
    assert!(to_two_crossed_module(&cs).is_err());
}

#[test]
fn broken_braid_entry_is_located() {
    let mut t = to_two_crossed_module(&symplectic_square()).unwrap();
    t.braid[1] = 1 - t.braid[1];
    let r = validate_two_crossed_module(&t);
    assert!(!r.is_valid());
    assert!(r.num_violations() > 0);
    assert!(!axioms::two_module_ok(&t));
}

#[test]
fn trivial_square_converts_to_trivial_two_module() {
    let t = to_two_crossed_module(&CrossedSquare::trivial()).unwrap();
    assert_eq!((t.l.order(), t.k.order(), t.p.order()), (1, 1, 1));
    assert_eq!(homotopy_groups(&t).unwrap().orders(), (1, 1, 1));
}

#[test]
fn symplectic_braiding_is_bilinear() {
    let t = to_two_crossed_module(&symplectic_square()).unwrap();
    let (k, l) = (&*t.k, &*t.l);
    for a in k.elements() {
        for b in k.elements() {
            for c in k.elements() {
                assert_eq!(t.braid(k.mul(a, b), c), l.mul(t.braid(a, c), t.braid(b, c)));
                assert_eq!(t.braid(a, k.mul(b, c)), l.mul(t.braid(a, b), t.braid(a, c)));
            }
        }
    }
    assert!(k.elements().any(|a| k.elements().any(|b| t.braid(a, b) != l.identity())));
    assert_eq!(homotopy_groups(&t).unwrap().orders(), (1, 16, 2));
}

#[test]
fn identity_boundary_has_trivial_homotopy() {
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let one = Arc::new(FiniteGroup::trivial());
    let t = TwoCrossedModule {
        l: one,
        k: z2.clone(),
        p: z2,
        delta: vec![0],
        bd: vec![0, 1],
        act_l: vec![vec![0], vec![0]],
        act_k: vec![vec![0, 1], vec![0, 1]],
        braid: vec![0; 4],
    };
    assert!(validate_two_crossed_module(&t).is_valid());
    assert_eq!(homotopy_groups(&t).unwrap().orders(), (1, 1, 1));
}

#[test]
fn pauli_square_has_pi3_of_order_two() {
    let cs = pauli_square().unwrap();
    assert!(axioms::square_ok(&cs));
    let h = homotopy_groups(&to_two_crossed_module(&cs).unwrap()).unwrap();
    assert_eq!(h.pi3.order(), 2);
    assert_eq!(h.pi2.order(), 1);
}

#[test]
fn postnikov_classes_of_fixtures() {
    let split = module("z2_zero_z2");
    let iso = KernelIso::from_generator(&split, 1).unwrap();
    let sigma = &all_sections(&split).unwrap()[0];
    assert!(postnikov3(&split, sigma, &iso).unwrap().is_zero());

    let z2z4 = module("z2_into_z4");
    let iso = KernelIso::trivial(&z2z4).unwrap();
    for s in all_sections(&z2z4).unwrap() {
        assert!(postnikov3(&z2z4, &s, &iso).unwrap().is_coboundary());
    }

    let cm = z4_onto_center_d4();
    let gen = cm.kernel().into_iter().find(|&k| KernelIso::from_generator(&cm, k).is_ok_and(|i| i.modulus == 2)).unwrap();
    let iso = KernelIso::from_generator(&cm, gen).unwrap();
    let sections = all_sections(&cm).unwrap();
    let ell = postnikov3(&cm, &sections[0], &iso).unwrap();
    assert!(ell.is_cocycle() && !ell.is_coboundary());
    // the last preimage instead of the first
    let other = postnikov3_with_lift(&cm, &sections[sections.len() - 1], &iso, |pre| pre[pre.len() - 1]).unwrap();
    assert!(other.cohomologous(&ell).unwrap());
}

#[test]
fn kernel_iso_rejects_non_kernel_and_non_generators() {
    let cm = module("z4_double_z4");
    // ker = {0, 2}
    assert!(KernelIso::from_generator(&cm, 1).is_err());
    assert!(KernelIso::from_generator(&cm, 0).is_err());
    let iso = KernelIso::from_generator(&cm, 2).unwrap();
    assert_eq!((iso.modulus, iso.value(2), iso.element(3)), (2, Some(1), 2));
}

fn levin_gu_module() -> (TruncationData1d, anomalion::crossed::LatticeCrossedModule) {
    let w = Window::chain(12, 3).unwrap();
    let (data, _) = nayak_else_1d(&builtin_action("levin_gu_1d", w).unwrap()).unwrap();
    let lcm = lattice_crossed_module_1d(&data).unwrap();
    (data, lcm)
}

#[test]
fn lattice_crossed_module_pulls_back_to_the_chain_index() {
    let (data, lcm) = levin_gu_module();
    assert!(axioms::module_ok(&lcm.module));
    let ell = postnikov3(&lcm.module, &lcm.sigma, &lcm.iso).unwrap();
    let pulled = ell.pullback(&lcm.rho).unwrap();
    let chain = data.ell_cochain().unwrap();
    assert!(pulled.cohomologous(&chain).unwrap());
    assert!(!pulled.is_coboundary());
}

#[test]
fn weak_morphism_obstruction_is_the_pulled_back_class() {
    let (_, lcm) = levin_gu_module();
    let g = lcm.rho.source.clone();
    let d = WeakMorphismData::from_section(g, lcm.module.clone(), &lcm.rho, &lcm.sigma).unwrap();
    let rep = check_weak_morphism(&d, Some(&lcm.iso)).unwrap();
    assert!(!rep.report.is_valid());
    let ob = rep.obstruction.unwrap();
    let ell = postnikov3(&lcm.module, &lcm.sigma, &lcm.iso).unwrap();
    assert_eq!(ob, ell.pullback(&lcm.rho).unwrap());
    assert_eq!(rep.obstruction_trivial, Some(false));
}

/// Reduction mod 2 from `Z/4` into the cokernel of the zero map
/// `Z/2 -> Z/2`, with its weak morphism data.
fn z4_mod_two() -> (WeakMorphismData, KernelIso) {
    let cm = module("z2_zero_z2");
    let iso = KernelIso::from_generator(&cm, 1).unwrap();
    let (q, proj) = cm.coker().unwrap();
    let g = Arc::new(FiniteGroup::cyclic(4));
    let rho = GroupHom::new(g.clone(), q, (0..4).map(|k| proj.apply(k % 2)).collect()).unwrap();
    let sigma = &all_sections(&cm).unwrap()[0];
    (WeakMorphismData::from_section(g, cm, &rho, sigma).unwrap(), iso)
}

#[test]
fn homomorphism_lift_is_a_valid_weak_morphism() {
    let (d, iso) = z4_mod_two();
    assert!(d.is_normalized());
    let rep = check_weak_morphism(&d, Some(&iso)).unwrap();
    assert!(rep.report.is_valid());
    assert_eq!(rep.obstruction_trivial, Some(true));
    assert_eq!(d.induced().unwrap().table(), &[0, 1, 0, 1]);

    let mut bad = d.clone();
    bad.mu[5] = 1 - bad.mu[5];
    assert!(!check_weak_morphism(&bad, None).unwrap().report.is_valid());
}

#[test]
fn twisting_by_coboundaries_and_classes() {
    let (d, iso) = z4_mod_two();
    let g = d.g.clone();
    let c = Cochain::from_fn(g.clone(), 1, 2, |t| u64::from(t[0] == 1));
    let cob = c.coboundary();
    assert!(!cob.is_zero());
    let t1 = twist(&d, &cob, &iso).unwrap();
    assert!(check_weak_morphism(&t1, None).unwrap().report.is_valid());
    assert!(extensions_isomorphic(&d, &t1).unwrap());

    let carry = Cochain::from_fn(g.clone(), 2, 2, |t| u64::from(t[0] + t[1] >= 4));
    assert!(carry.is_cocycle() && !carry.is_coboundary());
    let t2 = twist(&d, &carry, &iso).unwrap();
    assert!(check_weak_morphism(&t2, None).unwrap().report.is_valid());
    assert!(!extensions_isomorphic(&d, &t2).unwrap());

    let mut lone = Cochain::zero(g, 2, 2);
    lone.set(&[1, 2], 1);
    assert!(!lone.is_cocycle());
    assert!(matches!(twist(&d, &lone, &iso), Err(Error::NotCocycle)));
}

#[test]
fn json_round_trips() {
    for (_, cm) in crossed_modules() {
        let j: CrossedModuleJson = serde_json::from_str(&serde_json::to_string(&cm.to_json()).unwrap()).unwrap();
        assert_eq!(CrossedModule::from_json(&j).unwrap(), cm);
    }
    for (_, cs) in crossed_squares() {
        let j: CrossedSquareJson = serde_json::from_str(&serde_json::to_string(&cs.to_json()).unwrap()).unwrap();
        assert_eq!(CrossedSquare::from_json(&j).unwrap(), cs);
        let t = to_two_crossed_module(&cs).unwrap();
        let j: TwoCrossedModuleJson = serde_json::from_str(&serde_json::to_string(&t.to_json()).unwrap()).unwrap();
        assert_eq!(TwoCrossedModule::from_json(&j).unwrap(), t);
    }
}

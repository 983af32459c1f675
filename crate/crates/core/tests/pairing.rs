use anomalion::circuits::Circuit;
use anomalion::pairing::{eta, eta_inner, eta_l, eta_r, random_local_op, random_localized, LocalizedAutomorphism};
use anomalion::{Region, Site, SymOp, Window};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn square() -> Window {
    Window::square(10, 10, 2).unwrap()
}

fn s(x: i32, y: i32) -> Site {
    Site::new(x, y)
}

fn left(layers: Vec<Vec<SymOp>>, w: Window) -> LocalizedAutomorphism {
    LocalizedAutomorphism::circuit(Circuit::new(layers, w).unwrap(), Region::half_line_l(2))
}

fn right(layers: Vec<Vec<SymOp>>, w: Window) -> LocalizedAutomorphism {
    LocalizedAutomorphism::circuit(Circuit::new(layers, w).unwrap(), Region::half_line_r(2))
}

/// Observables near the origin.
fn probes(w: Window) -> Vec<SymOp> {
    w.sites().filter(|t| t.norm() <= 4).flat_map(|t| [SymOp::x(t), SymOp::z(t)]).collect()
}

/// `a b a^-1 b^-1` applied to `p`.
fn commutator_apply(a: &LocalizedAutomorphism, b: &LocalizedAutomorphism, p: &SymOp) -> SymOp {
    a.apply(&b.apply(&a.inverse().apply(&b.inverse().apply(p))))
}

#[test]
fn identity_pairs_trivially() {
    let w = square();
    let a = left(vec![vec![SymOp::cz(s(-1, 0), s(0, 0)), SymOp::x(s(-2, 1))]], w);
    let b = right(vec![vec![SymOp::x(s(0, 0))], vec![SymOp::cz(s(0, 0), s(1, 0))]], w);
    let id = LocalizedAutomorphism::identity(w);
    assert!(eta(&id, &b, w).unwrap().is_identity());
    assert!(eta(&a, &id, w).unwrap().is_identity());
}

#[test]
fn cz_against_x_gives_z() {
    let w = square();
    let a = left(vec![vec![SymOp::cz(s(-1, 0), s(0, 0))]], w);
    let b = right(vec![vec![SymOp::x(s(0, 0))]], w);
    assert_eq!(eta(&a, &b, w).unwrap(), SymOp::z(s(-1, 0)));
}

#[test]
fn diagonal_circuits_pair_to_identity() {
    let w = square();
    let a = left(vec![vec![SymOp::cz(s(-1, 0), s(0, 0)), SymOp::z(s(-2, 0))], vec![SymOp::ccz(s(-1, 0), s(0, 0), s(0, 1))]], w);
    let b = right(vec![vec![SymOp::cz(s(0, 0), s(1, 0))], vec![SymOp::z(s(0, 0))]], w);
    assert!(eta(&a, &b, w).unwrap().is_identity());
}

#[test]
fn inner_routes() {
    let w = square();
    let u = SymOp::x(s(0, 0)).mul(&SymOp::z(s(-1, 0)));
    let v = SymOp::z(s(0, 0)).mul(&SymOp::x(s(1, 0)));
    let (au, av) = (LocalizedAutomorphism::inner(u.clone(), Region::half_line_l(2)), LocalizedAutomorphism::inner(v.clone(), Region::half_line_r(2)));
    assert_eq!(eta(&au, &av, w).unwrap(), eta_inner(&u, &v));
    assert_eq!(eta_inner(&u, &v), SymOp::minus_one());

    let alpha = left(vec![vec![SymOp::cz(s(-1, 0), s(0, 0))], vec![SymOp::x(s(-1, 0))]], w);
    assert_eq!(eta(&alpha, &av, w).unwrap(), alpha.apply(&v).mul(&v.inv()));
    let beta = right(vec![vec![SymOp::cz(s(0, 0), s(1, 0))], vec![SymOp::x(s(1, 0))]], w);
    assert_eq!(eta(&au, &beta, w).unwrap(), u.mul(&beta.apply(&u.inv())));
}

fn check_pair(w: Window, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_localized(&mut rng, w, -1);
    let b = random_localized(&mut rng, w, 1);
    let (r, l) = (eta_r(&a, &b, w).unwrap(), eta_l(&a, &b, w).unwrap());
    prop_assert_eq!(&r, &l);
    let e = eta(&a, &b, w).unwrap();
    for p in probes(w) {
        prop_assert_eq!(commutator_apply(&a, &b, &p), p.conj(&e), "probe {}", p);
    }
    // an inner factor on the left
    let u = random_local_op(&mut rng, w);
    let au = LocalizedAutomorphism::inner(u.clone(), Region::half_line_l(2));
    prop_assert_eq!(eta(&au, &b, w).unwrap(), u.mul(&b.apply(&u.inv())));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn routes_agree_and_implement_the_commutator_2d(seed in any::<u64>()) {
        check_pair(square(), seed)?;
    }

    #[test]
    fn routes_agree_and_implement_the_commutator_1d(seed in any::<u64>()) {
        check_pair(Window::chain(14, 2).unwrap(), seed)?;
    }
}

use std::sync::Arc;

use thetakit::cohomology::Cocycle1;
use thetakit::finmod::{
    standard_gram, BilinearForm, FiniteAbelianGroup, FiniteGroup, GammaModule, MuN, SymplecticPairing,
};
use thetakit::heisenberg::{
    check_split, enumerate_g1, sp_group, twist_action, variant_group, CentralExtension, GammaHeisenberg,
    HeisenbergGroup, KMatrix, YuIsomorphism,
};
use thetakit::Error;

#[test]
fn orders_match_n_to_the_2g_plus_1() {
    for (n, g) in [(2, 1), (3, 1), (4, 1), (5, 1), (2, 2), (3, 2)] {
        let h = HeisenbergGroup::standard(n, g).unwrap();
        assert_eq!(h.ext().order(), (n as usize).pow(2 * g as u32 + 1));
        assert_eq!(h.expected_order(), h.ext().order());
    }
    // mixed type (2 | 4): n · Π d_i² with n the exponent
    let h = HeisenbergGroup::new(&[2, 4]).unwrap();
    assert_eq!(h.ext().order(), 4 * 4 * 16);
}

#[test]
fn law_on_pure_points() {
    let h = HeisenbergGroup::standard(3, 1).unwrap();
    let a = h.element(0, &[2], &[0]);
    let b = h.element(0, &[0], &[2]);
    // ℓ(x) = 2·2 = 1 mod 3
    assert_eq!(h.mul(a, b), h.element(1, &[2], &[2]));
    assert_eq!(h.parts(h.mul(a, b)), (1, vec![2], vec![2]));
    for x in h.ext().elements() {
        assert_eq!(h.mul(0, x), x);
        assert_eq!(h.mul(x, h.inv(x)), 0);
        assert_eq!(h.mul(h.inv(x), x), 0);
    }
}

#[test]
fn inverse_formula() {
    let h = HeisenbergGroup::standard(4, 1).unwrap();
    let ext = h.ext();
    let k = h.quotient_group();
    for a in ext.elements() {
        let (alpha, p) = ext.parts(a);
        let neg = k.neg(p);
        let expected = ext.element((8 - alpha - h.f(p, neg)) % 4, neg);
        assert_eq!(h.inv(a), expected);
    }
}

#[test]
fn associativity_exhaustive_small() {
    for (n, g) in [(2, 1), (3, 1), (2, 2)] {
        let ext = HeisenbergGroup::standard(n, g).unwrap().ext().clone();
        for a in ext.elements() {
            for b in ext.elements() {
                let ab = ext.mul(a, b);
                for c in ext.elements() {
                    assert_eq!(ext.mul(ab, c), ext.mul(a, ext.mul(b, c)));
                }
            }
        }
    }
}

#[test]
fn commutator_pairing_matches_lifts_n3_g2() {
    let h = HeisenbergGroup::standard(3, 2).unwrap();
    let ext = h.ext();
    let k = h.quotient_group();
    assert_eq!(k.order(), 81);
    for p in k.elements() {
        for q in k.elements() {
            let e = h.commutator_pairing(p, q);
            for (a1, a2) in [(0, 0), (1, 2), (2, 1)] {
                assert_eq!(ext.lift_commutator(p, q, a1, a2), Some(e));
            }
        }
        assert_eq!(h.commutator_pairing(p, p), 0);
    }
}

#[test]
fn commutator_pairing_is_standard_symplectic() {
    for (n, g) in [(2, 1), (3, 1), (5, 2)] {
        let h = HeisenbergGroup::standard(n, g).unwrap();
        assert!(h.is_standard_pairing());
        let k = h.quotient_group();
        for i in 0..g {
            for j in 0..g {
                let e = h.commutator_pairing(k.basis(i), k.basis(g + j));
                assert_eq!(e, u32::from(i == j));
            }
        }
        assert!(h.symplectic().unwrap().form().is_nondegenerate());
    }
}

#[test]
fn centers() {
    for (n, expected) in [(2u32, 2usize), (3, 3), (4, 4)] {
        let h = HeisenbergGroup::standard(n, 1).unwrap();
        let z = h.center();
        assert_eq!(z.len(), expected);
        assert!(z.iter().all(|&a| h.ext().project(a) == 0));
    }
}

#[test]
fn degenerate_pairing_enlarges_center() {
    // e vanishes on the second coordinate pair, so those lifts are central
    let k = FiniteAbelianGroup::homogeneous(3, 4).unwrap();
    let mut gram = vec![0; 16];
    gram[2] = 1;
    gram[8] = 2;
    let form = BilinearForm::new(k.clone(), 3, gram).unwrap();
    let one = Arc::new(FiniteGroup::cyclic(1));
    let e = SymplecticPairing::new(
        GammaModule::trivial(one.clone(), k),
        MuN::trivial(one.clone(), 3).unwrap(),
        form.clone(),
        false,
    )
    .unwrap();
    assert!(!form.is_nondegenerate());
    let ext = variant_group(&e).unwrap();
    assert!(ext.center().len() > 3);
    assert_eq!(ext.center().len(), 3 * form.radical().len());
    // nondegenerate forms give exactly μ_n
    let good = HeisenbergGroup::standard(3, 2).unwrap();
    assert!(good.symplectic().unwrap().form().is_nondegenerate());
    assert_eq!(good.center().len(), 3);
}

#[test]
fn variant_group_rejects_even_modulus() {
    let h = HeisenbergGroup::standard(2, 1).unwrap();
    let e = h.symplectic().unwrap();
    assert_eq!(variant_group(&e).unwrap_err(), Error::EvenModulus(2));
    assert_eq!(YuIsomorphism::new(&h).unwrap_err(), Error::EvenModulus(2));
}

#[test]
fn sp_acts_on_variant_group() {
    let h = HeisenbergGroup::standard(3, 1).unwrap();
    let v = variant_group(&h.symplectic().unwrap()).unwrap();
    let k = v.quotient_group().clone();
    let sp = sp_group(1, 3).unwrap();
    assert_eq!(sp.len(), 24);
    for m in &sp {
        let perm: Vec<usize> = v
            .elements()
            .map(|a| {
                let (alpha, p) = v.parts(a);
                v.element(alpha, m.apply(&k, p))
            })
            .collect();
        assert!(v.is_automorphism(&perm));
    }
    let id = KMatrix::identity(2);
    assert!(v.elements().all(|a| {
        let (alpha, p) = v.parts(a);
        v.element(alpha, id.apply(&k, p)) == a
    }));
}

#[test]
fn sp_group_orders() {
    assert_eq!(sp_group(1, 2).unwrap().len(), 6);
    assert_eq!(sp_group(1, 3).unwrap().len(), 24);
    assert_eq!(sp_group(1, 4).unwrap().len(), 48);
    assert_eq!(sp_group(1, 5).unwrap().len(), 120);
    assert_eq!(sp_group(2, 2).unwrap().len(), 720);
    for (g, n) in [(1, 2), (1, 3), (2, 2)] {
        assert!(sp_group(g, n).unwrap().contains(&KMatrix::identity(2 * g)));
    }
}

fn yu_checks(n: u32, g: usize) {
    let h = HeisenbergGroup::standard(n, g).unwrap();
    let phi = YuIsomorphism::new(&h).unwrap();
    assert!(phi.is_homomorphism(), "n={n} g={g}");
    assert!(phi.is_bijective());
    assert!(phi.is_trivial_on_center());
    assert!(phi.is_trivial_on_quotient());
}

#[test]
fn yu_isomorphism_small() {
    for (n, g) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)] {
        yu_checks(n, g);
    }
}

#[test]
fn yu_isomorphism_n7_g2() {
    yu_checks(7, 2);
}

#[test]
fn yu_sign_is_stable() {
    for n in [3, 5, 7] {
        assert_eq!(YuIsomorphism::new(&HeisenbergGroup::standard(n, 1).unwrap()).unwrap().sign(), 1);
    }
}

#[test]
fn g1_at_n2_g1_is_dihedral_of_order_8() {
    let h = HeisenbergGroup::standard(2, 1).unwrap();
    let g1 = enumerate_g1(&h).unwrap();
    let s = g1.summary();
    assert_eq!(s.g1_order, 8);
    assert_eq!(s.g2_order, 4);
    assert_eq!(s.quotient_image_order, 2);
    let grp = g1.as_group(h.ext()).unwrap();
    assert!(!grp.is_abelian());
    let involutions = grp.elements().filter(|&a| grp.element_order(a) == 2).count();
    assert_eq!(involutions, 5, "D8 has five involutions, Q8 has one");
}

#[test]
fn g1_at_n3_g1_splits() {
    let h = HeisenbergGroup::standard(3, 1).unwrap();
    let g1 = enumerate_g1(&h).unwrap();
    let s = g1.summary();
    assert_eq!(s.g2_order, 9);
    assert_eq!(s.g1_order, 9 * 24);
    assert_eq!(s.quotient_image_order, 24);
    let sp = sp_group(1, 3).unwrap();
    assert_eq!(g1.quotient_image, sp);
    let report = check_split(&h, &g1, &sp).unwrap();
    assert!(report.holds(), "{report:?}");
}

#[test]
fn g1_at_n4_g1() {
    let h = HeisenbergGroup::standard(4, 1).unwrap();
    let g1 = enumerate_g1(&h).unwrap();
    assert_eq!(g1.summary().g2_order, 16);
    assert_eq!(g1.summary().g1_order % 16, 0);
}

#[test]
fn g1_at_n2_g2_runs() {
    let h = HeisenbergGroup::standard(2, 2).unwrap();
    let g1 = enumerate_g1(&h).unwrap();
    let s = g1.summary();
    assert_eq!(s.g2_order, 16);
    assert_eq!(s.g1_order, s.g2_order * s.quotient_image_order);
    assert!(720 % s.quotient_image_order == 0);
}

#[test]
fn g1_guard_rejects_n3_g2() {
    let h = HeisenbergGroup::standard(3, 2).unwrap();
    match enumerate_g1(&h) {
        Err(Error::GuardExceeded { guard, .. }) => assert_eq!(guard, "enumerate_g1"),
        Err(e) => panic!("unexpected error {e}"),
        Ok(_) => assert!(thetakit::guard::limit() > thetakit::guard::DEFAULT_LIMIT),
    }
}

fn trivial_data(n: u32, gamma: Arc<FiniteGroup>) -> GammaHeisenberg {
    let h = GammaModule::trivial(gamma.clone(), FiniteAbelianGroup::new(&[n]).unwrap());
    GammaHeisenberg::new(Arc::new(h), MuN::trivial(gamma, n).unwrap()).unwrap()
}

#[test]
fn untwisted_action_is_identity_for_trivial_gamma_action() {
    let data = trivial_data(3, Arc::new(FiniteGroup::cyclic(2)));
    let chi = Cocycle1::zero(Arc::new(data.k_dual().module.clone()));
    let s = vec![KMatrix::identity(2); 2];
    let act = twist_action(&data, &chi, &s).unwrap();
    for sigma in 0..2 {
        assert!(act.perm(sigma).iter().enumerate().all(|(i, &x)| i == x));
    }
}

#[test]
fn twisted_actions_preserve_the_law() {
    let gamma = Arc::new(FiniteGroup::cyclic(2));
    let data = trivial_data(3, gamma.clone());
    let kd = Arc::new(data.k_dual().module.clone());
    let k = data.ext().quotient_group().clone();
    let neg = KMatrix::negation(&k);
    // S: the generator acts by -I; χ: any homomorphism Z/2 -> K* killed by 2 is zero,
    // so twist by S alone, then by S with a coboundary shift
    let s = vec![KMatrix::identity(2), neg];
    let zero = Cocycle1::zero(kd.clone());
    let act = twist_action(&data, &zero, &s).unwrap();
    assert!(act.preserves_law());
    assert_eq!(act.fixed_central().len(), 3);
    for m in kd.module().elements() {
        let chi = Cocycle1::coboundary(kd.clone(), m);
        let act = twist_action(&data, &chi, &[KMatrix::identity(2), KMatrix::identity(2)]).unwrap();
        assert!(act.preserves_law());
        assert_eq!(act.fixed_central().len(), 3);
    }
}

#[test]
fn twist_with_nontrivial_character_cocycle_over_c3() {
    let gamma = Arc::new(FiniteGroup::cyclic(3));
    let data = trivial_data(3, gamma);
    let kd = Arc::new(data.k_dual().module.clone());
    // homomorphisms Z/3 -> K* are cocycles for the trivial action
    let chi = Cocycle1::new(kd.clone(), vec![0, 1, 2]).unwrap();
    let s = vec![KMatrix::identity(2); 3];
    let act = twist_action(&data, &chi, &s).unwrap();
    assert!(act.preserves_law());
    assert!(act.perm(1).iter().enumerate().any(|(i, &x)| i != x));
}

#[test]
fn twist_rejects_broken_cocycle_condition() {
    let gamma = Arc::new(FiniteGroup::cyclic(3));
    let data = trivial_data(3, gamma);
    let kd = Arc::new(data.k_dual().module.clone());
    let chi = Cocycle1::zero(kd);
    let k = data.ext().quotient_group().clone();
    // -I at a generator of order 3 cannot come from a homomorphism
    let s = vec![KMatrix::identity(2), KMatrix::negation(&k), KMatrix::identity(2)];
    assert!(matches!(twist_action(&data, &chi, &s), Err(Error::NotACocycle(_))));
}

#[test]
fn standard_gram_agrees_with_heisenberg() {
    let h = HeisenbergGroup::standard(5, 2).unwrap();
    assert_eq!(h.ext().commutator_form().gram(), standard_gram(2, 5).as_slice());
    let ext = CentralExtension::new(h.ext().commutator_form());
    assert_eq!(ext.order(), h.ext().order());
}

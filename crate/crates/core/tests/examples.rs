//! Worked examples across the public API, with expected values recomputed
//! by hand or through the test oracle.

mod common;

use common::{qpoly_of, Group, QPoly};
use soergel_core::bsmod::{BSElement, BSMorphism, Context};
use soergel_core::hecke::{graded_rank, tau_pairing, verify_z_decomposition};
use soergel_core::lightleaves::{build_tree, graded_census, hom_basis, light_leaves};
use soergel_core::{CoxeterMatrix, CoxeterSystem, HeckeElement, LaurentPoly, Order, Polynomial, Scalar, Word};

fn w(v: &[usize]) -> Word {
    Word::from(v)
}

fn a2() -> Context {
    Context::new(CoxeterMatrix::dihedral(Order::Finite(3)).unwrap())
}

fn x(s: usize) -> Polynomial {
    Polynomial::var(s)
}

fn half(p: &Polynomial) -> Polynomial {
    p.scale(&Scalar::new(1, 2))
}

#[test]
fn word_problem_examples() {
    let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(Order::Finite(3)).unwrap());
    assert_eq!(sys.length(&[]), 0);
    assert_eq!(sys.length(&[0, 0]), 0);
    assert_eq!(sys.length(&[0, 1, 0]), 3);
    assert!(sys.descends_right(&[0], 0));
    assert!(!sys.descends_right(&[], 0));
    assert!(sys.descends_right(&[0, 1], 1));
    assert_eq!(*sys.braid_closure(&w(&[0, 1, 0])), vec![w(&[0, 1, 0]), w(&[1, 0, 1])]);
    assert_eq!(*sys.braid_closure(&w(&[])), vec![w(&[])]);
    assert_eq!(sys.canonical(&[1, 0, 1]), w(&[0, 1, 0]));
    let c = sys.canonical(&[1, 0, 1, 1, 0]);
    assert_eq!(sys.canonical(&c), c);
    let a1a1 = CoxeterSystem::new(CoxeterMatrix::dihedral(Order::Finite(2)).unwrap());
    assert_eq!(*a1a1.braid_closure(&w(&[0, 1])), vec![w(&[0, 1]), w(&[1, 0])]);
}

#[test]
fn lengths_agree_with_a_faithful_representation() {
    for m in [2u32, 3, 4, 6] {
        let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(Order::Finite(m)).unwrap());
        let group = Group::dihedral(m as i64);
        for word in common::words(2, 7) {
            assert_eq!(sys.length(&word), group.len(&group.element(&word)), "m={m} {word}");
            assert_eq!(
                sys.equal(&word, &[]),
                group.element(&word) == group.identity,
                "m={m} {word}"
            );
        }
    }
}

#[test]
fn reflection_action_and_splitting() {
    let ctx = a2();
    let cr = ctx.realization();
    assert_eq!(cr.act(&[0], &x(0)), x(0).neg());
    assert_eq!(cr.act(&[0], &x(1)), x(1).add(&x(0)));
    let p = x(0).mul(&x(1)).add(&x(1).pow(3));
    assert_eq!(cr.act(&[0, 0], &p), p);

    assert!(cr.p_s(0, &x(0)).is_zero());
    assert_eq!(cr.p_s(0, &x(0).pow(2)), x(0).pow(2));
    assert_eq!(cr.p_s(0, &x(1)), x(1).add(&half(&x(0))));
    assert_eq!(cr.i_s(0, &x(0)), x(0));
    assert!(cr.i_s(0, &Polynomial::one()).is_zero());
    let xsxt = x(0).mul(&x(1));
    assert_eq!(cr.i_s(0, &xsxt), xsxt.add(&half(&x(0).pow(2))));
    assert_eq!(cr.iprime_s(0, &x(0)).unwrap(), Polynomial::one());
    assert!(cr.iprime_s(0, &Polynomial::one()).unwrap().is_zero());
    assert_eq!(cr.iprime_s(0, &x(1)).unwrap(), Polynomial::constant(Scalar::new(-1, 2)));
    for q in [x(0), x(0).pow(2), x(1), xsxt.clone()] {
        let (inv, quo) = cr.decompose(0, &q).unwrap();
        assert_eq!(inv.add(&x(0).mul(&quo)), q);
    }
    assert_eq!(cr.decompose(0, &Polynomial::zero()).unwrap(), (Polynomial::zero(), Polynomial::zero()));
    assert_eq!(cr.decompose(0, &x(0).pow(3)).unwrap(), (Polynomial::zero(), x(0).pow(2)));
}

#[test]
fn hecke_examples() {
    let sys = CoxeterSystem::new(CoxeterMatrix::dihedral(Order::Finite(3)).unwrap());
    let ts = HeckeElement::basis(&sys, &[0]);
    assert_eq!(HeckeElement::one().mul(&sys, &ts), ts);
    let sq = ts.mul(&sys, &ts);
    assert_eq!(sq.coefficient(&w(&[])), LaurentPoly::q());
    assert_eq!(sq.coefficient(&w(&[0])), LaurentPoly::from_q_coeffs(&[(1, 1), (0, -1)]));
    let srs = HeckeElement::basis(&sys, &[0, 1]).mul(&sys, &ts);
    assert_eq!(srs, HeckeElement::basis(&sys, &[0, 1, 0]));

    let one_plus = HeckeElement::product_one_plus(&sys, &[0, 0]);
    let one_q = LaurentPoly::from_q_coeffs(&[(0, 1), (1, 1)]);
    assert_eq!(one_plus.coefficient(&w(&[])), one_q);
    assert_eq!(one_plus.coefficient(&w(&[0])), one_q);
    assert_eq!(HeckeElement::product_one_plus(&sys, &[]), HeckeElement::one());

    // τ(1+T_s)(1+T_r)(1+T_s)(1+T_r) recomputed in the oracle.
    let oracle = Group::dihedral(3).tau_of_product(&[0, 1, 0, 1]);
    assert_eq!(oracle, QPoly::from([(0, 1), (1, 2)]));
    assert_eq!(qpoly_of(&HeckeElement::product_one_plus(&sys, &[0, 1, 0, 1]).tau()), oracle);
    assert_eq!(HeckeElement::one().tau(), LaurentPoly::one());
    assert!(ts.tau().is_zero());

    assert_eq!(tau_pairing(&sys, &[0], &[0]), LaurentPoly::q());
    assert_eq!(tau_pairing(&sys, &[], &[]), LaurentPoly::one());
    assert!(tau_pairing(&sys, &[0, 1], &[1, 0]).is_zero());
    let w0 = HeckeElement::basis(&sys, &[0, 1, 0]);
    assert_eq!(w0.mul(&sys, &w0).tau(), LaurentPoly::q_pow(3));

    let one = num_bigint::BigInt::from(1);
    assert_eq!(graded_rank(&sys, &[]).unwrap(), vec![(0, one.clone())]);
    assert_eq!(graded_rank(&sys, &[0]).unwrap(), vec![(0, one.clone())]);
    assert_eq!(graded_rank(&sys, &[0, 1, 0, 1]).unwrap(), vec![(0, one), (1, num_bigint::BigInt::from(2))]);
}

#[test]
fn z_expansion_examples() {
    for m in [2u32, 3, 4, 6] {
        let r = verify_z_decomposition(Order::Finite(m), 1).unwrap();
        assert_eq!(r.coefficients[3], LaurentPoly::one());
    }
    let r = verify_z_decomposition(Order::Finite(3), 2).unwrap();
    assert_eq!(r.tau_z[11], LaurentPoly::q_pow(3));
    assert!(r.tau_z[5].is_zero());
}

#[test]
fn normal_forms() {
    let ctx = a2();
    assert_eq!(BSElement::normal_element(&w(&[])), BSElement::from_polynomial(Polynomial::one()));
    let e = BSElement::normal_element(&w(&[0, 1]));
    assert_eq!(e.degree(), Some(4));
    assert!(e.is_normalsup());
    assert!(e.left_mul(&x(0)).is_superior());

    let n = BSElement::normalize(&ctx, &w(&[]), &[vec![x(0)]]).unwrap();
    assert_eq!(n, BSElement::from_polynomial(x(0)));
    let n = BSElement::normalize(&ctx, &w(&[0]), &[vec![Polynomial::one(), x(0).pow(2)]]).unwrap();
    assert_eq!(n, BSElement::basis(w(&[0]), 0, x(0).pow(2)));
    // 1 ⊗ x_t = (x_t + x_s/2)·(1 ⊗ 1) − 1/2·(1 ⊗ x_s)
    let n = BSElement::normalize(&ctx, &w(&[0]), &[vec![Polynomial::one(), x(1)]]).unwrap();
    let expected = BSElement::basis(w(&[0]), 0, x(1).add(&half(&x(0))))
        .add(&BSElement::basis(w(&[0]), 1, Polynomial::constant(Scalar::new(-1, 2))));
    assert_eq!(n, expected);

    let one = BSElement::basis(w(&[0]), 0, Polynomial::one());
    assert_eq!(one.right_mul(&ctx, &x(0)), BSElement::basis(w(&[0]), 1, Polynomial::one()));
    let xs = BSElement::basis(w(&[0]), 1, Polynomial::one());
    assert_eq!(xs.right_mul(&ctx, &x(0)), BSElement::basis(w(&[0]), 0, x(0).pow(2)));
    assert!(xs.sub(&xs).is_zero());
}

#[test]
fn morphism_examples() {
    let ctx = a2();
    let e = |word: &[usize], mask: u64| BSElement::basis(w(word), mask, Polynomial::one());
    assert_eq!(BSMorphism::m_s(0).apply(&e(&[0], 1)).unwrap(), BSElement::from_polynomial(x(0)));
    assert_eq!(BSMorphism::m_s(0).apply(&e(&[0], 0)).unwrap(), BSElement::from_polynomial(Polynomial::one()));
    assert_eq!(BSMorphism::i_s0(0).apply(&e(&[0, 0], 0b01)).unwrap(), BSElement::from_polynomial(Polynomial::one()));
    assert!(BSMorphism::i_s0(0).apply(&e(&[0, 0], 0)).unwrap().is_zero());
    assert_eq!(BSMorphism::i_s1(0).apply(&e(&[0, 0], 0b11)).unwrap(), e(&[0], 1));

    let t = BSMorphism::m_s(0).tensor_id(&ctx, &w(&[]), &w(&[1]));
    assert_eq!(t.degree(), 0);
    assert_eq!(t.apply(&e(&[0, 1], 0b11)).unwrap(), BSElement::basis(w(&[1]), 1, x(0)));
    let chain = BSMorphism::m_s(0).compose(&BSMorphism::i_s1(0)).unwrap();
    assert_eq!(chain.apply(&e(&[0, 0], 0b11)).unwrap(), BSElement::from_polynomial(x(0)));

    let solved = ctx.solve_hom_degree(&w(&[0]), &w(&[]), 0);
    assert_eq!(solved.len(), 1);
    assert!(ctx.solve_hom_degree(&w(&[0]), &w(&[]), -2).is_empty());
    assert_eq!(ctx.solve_hom_degree(&w(&[]), &w(&[]), 0), vec![BSMorphism::identity(&w(&[]))]);

    let c2 = Context::new(CoxeterMatrix::dihedral(Order::Finite(2)).unwrap());
    let f = c2.solve_braid(0, 1).unwrap();
    assert_eq!(f.apply(&e(&[0, 1], 0)).unwrap(), e(&[1, 0], 0));

    // 𝔉(m_s) sends 1 to x_s ⊗ 1 + 1 ⊗ x_s
    let fm = BSMorphism::m_s(0).adjoint_f(&ctx).unwrap();
    let expected = BSElement::basis(w(&[0]), 0, x(0)).add(&e(&[0], 1));
    assert_eq!(fm.apply(&BSElement::from_polynomial(Polynomial::one())).unwrap(), expected);
}

#[test]
fn braid_composites() {
    let ctx = a2();
    let ends_in_s = ctx.braid_composite(&w(&[1, 0]), 0).unwrap();
    assert!(ends_in_s.path.is_empty());
    assert_eq!(*ends_in_s.morphism, BSMorphism::identity(&w(&[1, 0])));
    let single = ctx.braid_composite(&w(&[0, 1, 0]), 1).unwrap();
    assert_eq!(single.path.len(), 1);
    assert_eq!(*single.morphism, *ctx.solve_braid(0, 1).unwrap());
    let img = single.morphism.apply(&BSElement::normal_element(&w(&[0, 1, 0]))).unwrap();
    assert!(img.is_normalsup());
}

#[test]
fn tree_examples() {
    let ctx = a2();
    assert_eq!(build_tree(&ctx, &w(&[0, 1, 0, 1])).unwrap().len(), 16);
    let a1 = build_tree(&ctx, &w(&[0])).unwrap();
    assert_eq!(*a1[0].morphism, BSMorphism::m_s(0));
    assert_eq!(*a1[1].morphism, BSMorphism::identity(&w(&[0])));
    assert_eq!(light_leaves(&ctx, &w(&[])).unwrap().len(), 1);
    let one = light_leaves(&ctx, &w(&[0])).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].weight(), 0);

    let census = graded_census(&ctx, &w(&[0])).unwrap();
    assert_eq!(census.get(&w(&[])), Some(&LaurentPoly::one()));
    assert_eq!(census.get(&w(&[0])), Some(&LaurentPoly::one()));
    let census = graded_census(&ctx, &w(&[0, 1, 0, 1])).unwrap();
    assert_eq!(census[&w(&[])], LaurentPoly::from_q_coeffs(&[(0, 1), (1, 2)]));
    let total: i64 = census
        .values()
        .flat_map(|p| p.q_coefficients().unwrap().into_values())
        .map(|c| i64::try_from(c).unwrap())
        .sum();
    assert_eq!(total, 16);
}

#[test]
fn hom_basis_examples() {
    let ctx = a2();
    let basis = hom_basis(&ctx, &w(&[0]), &w(&[0])).unwrap();
    let mut weights: Vec<usize> = basis.iter().map(|b| b.weight).collect();
    weights.sort();
    assert_eq!(weights, vec![0, 1]);
    assert!(basis.iter().all(|b| b.morphism.validate(&ctx).passed()));
    let leaves = light_leaves(&ctx, &w(&[0, 1, 0, 1])).unwrap();
    let plain = hom_basis(&ctx, &w(&[0, 1, 0, 1]), &w(&[])).unwrap();
    for (b, l) in plain.iter().zip(&leaves) {
        assert_eq!(b.morphism, *l.morphism);
    }
}

//! Property tests for the algebraic invariants of the scalar domains, Jordan
//! subspaces, pseudo-quadratic spaces and rank one solvers.

use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cubic_core::field::{Fe, PrimeField};
use cubic_core::formspaces::ExtendedSpace;
use cubic_core::groupcore::Engine;
use cubic_core::jordanalg::{classify_commutative, hua_closure_check, is_ample, is_division_jordan, is_jordan_closed, Ambient, InvolutorySet, JordanSubspace};
use cubic_core::reconstruct::Reference;
use cubic_core::scalars::{domain_make, fixed_set_basis, DomainSpec, Involution, InvolutionSpec, ScalarDomain};
use cubic_core::scenarios::{build_instance, catalog_get, Instance};

fn catalog_domains() -> Vec<ScalarDomain> {
    [
        DomainSpec::PrimeField(5),
        DomainSpec::PrimeField(2),
        DomainSpec::FiniteField { p: 2, modulus: vec![1, 1, 1] },
        DomainSpec::FiniteField { p: 3, modulus: vec![1, 0, 1] },
        DomainSpec::Quaternion { a: (-1, 1), b: (-1, 1) },
    ]
    .iter()
    .map(|s| domain_make(s).unwrap())
    .collect()
}

fn hamilton() -> ScalarDomain {
    domain_make(&DomainSpec::Quaternion { a: (-1, 1), b: (-1, 1) }).unwrap()
}

fn catalog_involutions() -> Vec<(ScalarDomain, Involution)> {
    let f4 = domain_make(&DomainSpec::FiniteField { p: 2, modulus: vec![1, 1, 1] }).unwrap();
    let f9 = domain_make(&DomainSpec::FiniteField { p: 3, modulus: vec![1, 0, 1] }).unwrap();
    let h = hamilton();
    let i = h.alg().from_ints(&[0, 1, 0, 0]);
    vec![
        (f4.clone(), Involution::build(&f4, &InvolutionSpec::FrobeniusPower(2)).unwrap()),
        (f9.clone(), Involution::build(&f9, &InvolutionSpec::FrobeniusPower(3)).unwrap()),
        (h.clone(), Involution::build(&h, &InvolutionSpec::QuaternionStandard).unwrap()),
        (h.clone(), Involution::build(&h, &InvolutionSpec::QuaternionTwisted(i)).unwrap()),
    ]
}

fn instance(name: &str) -> Instance {
    build_instance(&catalog_get(name).unwrap()).unwrap()
}

fn quat_instance() -> &'static (Instance, ExtendedSpace) {
    static QUAT: OnceLock<(Instance, ExtendedSpace)> = OnceLock::new();
    QUAT.get_or_init(|| {
        let inst = instance("su-quat-q");
        let Reference::Extended(ext) = inst.reference.clone() else { panic!("su-quat-q has an extended reference") };
        (inst, ext)
    })
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn domain_ring_axioms(a in coeffs(4), b in coeffs(4), c in coeffs(4)) {
        for d in catalog_domains() {
            let alg = d.alg();
            let n = alg.dim();
            let (x, y, z) = (alg.from_ints(&a[..n]), alg.from_ints(&b[..n]), alg.from_ints(&c[..n]));
            prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
            prop_assert_eq!(alg.mul(&x, &alg.add(&y, &z)), alg.add(&alg.mul(&x, &y), &alg.mul(&x, &z)));
            if !alg.is_zero(&x) {
                let xi = alg.inverse(&x).expect("nonzero elements of a division ring are units");
                prop_assert_eq!(alg.mul(&x, &xi), alg.one());
            }
        }
    }

    #[test]
    fn involutions_are_involutory_anti_automorphisms(a in coeffs(4), b in coeffs(4)) {
        for (d, inv) in catalog_involutions() {
            let alg = d.alg();
            let n = alg.dim();
            let (x, y) = (alg.from_ints(&a[..n]), alg.from_ints(&b[..n]));
            let xy = alg.mul(&x, &y);
            prop_assert_eq!(inv.apply(&inv.apply(&xy)), xy.clone());
            prop_assert_eq!(inv.apply(&xy), alg.mul(&inv.apply(&y), &inv.apply(&x)));
        }
    }

    #[test]
    fn hamilton_norm_is_anisotropic(a in coeffs(4)) {
        let h = hamilton();
        let x = h.alg().from_ints(&a);
        let expected: i64 = a.iter().map(|c| c * c).sum();
        prop_assert_eq!(h.norm(&x), PrimeField::Q.int(expected));
        prop_assert_eq!(h.norm(&x).is_zero(), h.alg().is_zero(&x));
    }

    #[test]
    fn root_elements_preserve_pi(seed in any::<u64>(), z in coeffs(12)) {
        let (inst, ext) = quat_instance();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ext.field();
        let zv: Vec<Fe> = z.iter().map(|&c| f.int(c)).collect();
        for fam in [&inst.pair.a, &inst.pair.b] {
            let g = fam.matrix(&fam.random_param(&mut rng, 3));
            let diff = ext.alg().sub(&ext.pi(&g.vec_mul(&zv)), &ext.pi(&zv));
            prop_assert!(ext.base.set.in_k0(&diff), "π(zg) - π(z) = {} is not in K0", ext.alg().pretty(&diff));
        }
    }

    #[test]
    fn transvection_composition_law(seed in any::<u64>()) {
        let (inst, ext) = quat_instance();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alg = ext.alg();
        let p = inst.pair.a.random_param(&mut rng, 3);
        let q = inst.pair.a.random_param(&mut rng, 3);
        let ((v, t), (w, u)) = (ext.param_parts(&p), ext.param_parts(&q));
        let vw: Vec<_> = v.iter().zip(&w).map(|(a, b)| alg.add(a, b)).collect();
        let tu = alg.add(&alg.add(&t, &u), &ext.base.sesq(&v, &w));
        prop_assert!(ext.valid(&vw, &tu));
        prop_assert_eq!(ext.alpha_unchecked(&v, &t).mul(&ext.alpha_unchecked(&w, &u)), ext.alpha_unchecked(&vw, &tu));
    }

    #[test]
    fn partner_of_partner_is_the_element(seed in any::<u64>()) {
        let (inst, _) = quat_instance();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = inst.pair.a.matrix(&inst.pair.a.random_param(&mut rng, 2));
        prop_assume!(!a.is_identity());
        let eng = Engine::new(inst.pair.clone());
        let b = eng.find_b(&a).unwrap();
        prop_assert!(inst.pair.b.contains(&b.mat));
        prop_assert_eq!(eng.find_a(&b.mat).unwrap().mat, a);
    }
}

#[test]
fn hamilton_norm_has_a_positive_definite_certificate() {
    assert!(hamilton().norm_certificate().is_ok());
}

#[test]
fn catalog_jordan_subspaces_pass_closure_division_and_hua() {
    let mut js = vec![JordanSubspace::new(Ambient::Domain(domain_make(&DomainSpec::PrimeField(5)).unwrap()), vec![vec![PrimeField::Fp(5).one()]])];
    for (d, inv) in catalog_involutions() {
        let basis = fixed_set_basis(&d, &inv).basis().to_vec();
        js.push(JordanSubspace::new(Ambient::Domain(d), basis));
    }
    for j in &js {
        let sample: Vec<_> = j.basis.clone();
        assert!(is_jordan_closed(j).is_ok());
        assert!(hua_closure_check(j).is_ok());
        assert!(is_division_jordan(j, &sample).holds);
        assert!(classify_commutative(j).agrees());
    }
}

#[test]
fn catalog_involutory_sets_are_ample_and_contain_traces() {
    for (d, inv) in catalog_involutions() {
        let basis = fixed_set_basis(&d, &inv).basis().to_vec();
        let alg = d.alg().clone();
        let set = InvolutorySet::new(d, basis, inv);
        assert!(is_ample(&set).is_ok());
        for x in alg.basis_all() {
            assert!(set.in_k0(&alg.add(&x, &set.star(&x))));
        }
    }
}

#[test]
fn orthogonal_root_group_is_elementary_abelian() {
    let inst = instance("orth-f2");
    let elems = inst.pair.a.elements().unwrap();
    for (_, x) in elems {
        assert!(x.mul(x).is_identity());
        for (_, y) in elems {
            assert_eq!(x.mul(y), y.mul(x));
        }
    }
}

//! Identities for `ρ(h_a)`, `f` and the Hua maps, checked on `A` and on pairs.

use crate::check::{ensure, CheckRecord, Mode};
use crate::linalg::Mat;

use super::abar::half_root;
use super::rings::Rings;
use super::Core;

/// Pairs of nontrivial elements: all when there are at most `cap`, otherwise
/// `cap` of them chosen by `pick`.
pub fn pair_list(elems: &[Mat], cap: usize, finite: bool, mut pick: impl FnMut(usize) -> usize) -> (Vec<(Mat, Mat)>, Mode) {
    let total = elems.len() * elems.len();
    if finite && total <= cap.max(4096) {
        let v: Vec<(Mat, Mat)> = elems.iter().flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone()))).collect();
        return (v, Mode::Exhaustive);
    }
    let v: Vec<(Mat, Mat)> = (0..cap.min(total)).map(|_| (elems[pick(elems.len())].clone(), elems[pick(elems.len())].clone())).collect();
    let n = v.len();
    (v, Mode::Sampled(n))
}

pub fn rho_checks(core: &Core) -> Result<Vec<CheckRecord>, String> {
    let f = core.field();
    let mut out = Vec::new();
    let (elems, mode) = core.a_elements();

    let r = (|| {
        for n in -2..=4i64 {
            let en = core.e.pow(n).ok_or("singular")?;
            let x = core.rho_h(&en)?;
            ensure(x == core.id_k().scale(&f.int(n)), || format!("ρ(h_{n}) = {} is not {n}", x.to_text()))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("rho.h-n-is-n", Mode::Exhaustive, r));

    let r = (|| {
        let m2 = core.mu.mul(&core.mu);
        let x = core.rho(&m2)?;
        ensure(x == core.id_k().neg(), || format!("ρ(μ²) = {}", x.to_text()))?;
        let h = core.h(&core.e.inverse().expect("invertible"))?;
        ensure(h == m2, || "h_(e⁻¹) != μ²".into())
    })();
    out.push(CheckRecord::from_result("rho.mu-squared", Mode::Exhaustive, r));

    let a0s = core.a0.nontrivial_sample();
    let a0_mode = Mode::for_count(core.a0.elements.is_some(), a0s.len());
    let cva = core.eng.cva.basis().to_vec();
    let r = (|| {
        for a in &a0s {
            let h = core.h(a)?;
            for c in &cva {
                let lhs = h.vec_mul(c);
                let rhs = a.minus_identity().vec_mul(&core.mu.vec_mul(c));
                ensure(lhs == rhs, || format!("vh_a != [vμ,a] for a = {a}"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("rho.a0-formula", a0_mode.clone(), r));

    let r = (|| {
        for a in &a0s {
            for b in a0s.iter().take(8) {
                let lhs = core.rho_h(&a.mul(b))?;
                ensure(lhs == core.rho_h(a)?.add(&core.rho_h(b)?), || format!("ρ(h_ab) != ρ(h_a)+ρ(h_b) for a = {a}, b = {b}"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("rho.additive-on-a0", a0_mode, r));

    let r = (|| {
        for a in &elems {
            let (Some(h), Some(b)) = (core.defined(core.h(a))?, core.defined(core.partner(a))?) else { continue };
            let bi = b.inverse().expect("invertible");
            for c in &cva {
                let vm = core.mu.vec_mul(c);
                let x1 = a.minus_identity().vec_mul(&vm);
                let x2 = bi.minus_identity().vec_mul(&x1);
                let rhs: Vec<_> = vm.iter().zip(&x1).zip(&x2).map(|((p, q), r)| &(p + q) + r).collect();
                ensure(h.vec_mul(c) == rhs, || format!("vh_a != vμ + [vμ,a] + [vμ,a,b(a)⁻¹] for a = {a}"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("rho.hua-expansion", mode, r));
    Ok(out)
}

/// Checks of `f` and the Hua maps that do not need `*`.
pub fn f_checks(core: &Core, rings: &Rings, pairs: &[(Mat, Mat)], pmode: &Mode) -> Result<Vec<CheckRecord>, String> {
    let f = core.field();
    let mut out = Vec::new();
    let (elems, mode) = core.a_elements();
    let gens = core.eng.a().generator_mats();

    let r = (|| {
        for a in &elems {
            for b in elems.iter().take(12) {
                for g in &gens {
                    let lhs = core.f(a, &b.mul(g))?;
                    ensure(lhs == core.f(a, b)?.add(&core.f(a, g)?), || format!("f(a,bg) != f(a,b)+f(a,g) for a = {a}, b = {b}"))?;
                    let lhs = core.f(&b.mul(g), a)?;
                    ensure(lhs == core.f(b, a)?.add(&core.f(g, a)?), || format!("f(bg,a) != f(b,a)+f(g,a) for a = {a}, b = {b}"))?;
                }
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.biadditive", mode.clone(), r));

    let hs: Vec<Mat> = elems.iter().take(6).filter_map(|a| core.h(a).ok()).collect();
    let r = (|| {
        for h in &hs {
            let hi = h.inverse().expect("invertible");
            let left = core.rho(&core.mu.mul(&hi).mul(&core.mu_inv))?;
            let right = core.rho(h)?;
            for (a, b) in pairs.iter().take(24) {
                let lhs = core.f(&a.conj(h), &b.conj(h))?;
                ensure(lhs == left.mul(&core.f(a, b)?).mul(&right), || format!("f(a^h,b^h) != ρ(μh⁻¹μ⁻¹)f(a,b)ρ(h) for a = {a}, b = {b}"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.equivariant", Mode::for_count(core.is_finite(), hs.len() * pairs.len().min(24)), r));

    let r = (|| {
        let caq = core.eng.centralizer_of_quotient().map_err(|e| e.to_string())?;
        let cva_c = core.eng.centralizer_of_va().map_err(|e| e.to_string())?;
        for a in &elems {
            for b in &elems {
                if caq.contains(a) {
                    ensure(core.f(a, b)?.is_zero(), || format!("f(a,b) != 0 for a ∈ C_A(V/C_V(A)), a = {a}"))?;
                }
                if cva_c.contains(b) {
                    ensure(core.f(a, b)?.is_zero(), || format!("f(a,b) != 0 for b ∈ C_A([V,A]), b = {b}"))?;
                }
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.kernels", mode.clone(), r));

    let r = (|| {
        for (a, b) in pairs {
            let c = Core::commutator(a, b);
            let (Some(x),) = (core.defined(core.rho_h(&c))?,) else { continue };
            ensure(core.f(a, b)?.sub(&core.f(b, a)?) == x, || format!("f(a,b) - f(b,a) != ρ(h_[a,b]) for a = {a}, b = {b}"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.commutator", pmode.clone(), r));

    let r = (|| {
        for a in &elems {
            let (Some(x), Some(y)) = (core.defined(core.rho_h(&a.mul(a)))?, core.defined(core.rho_h(a))?) else { continue };
            ensure(x == y.scale(&f.int(2)).add(&core.f(a, a)?), || format!("ρ(h_(a²)) != 2ρ(h_a) + f(a,a) for a = {a}"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.square", mode.clone(), r));

    let r = (|| {
        for (a, b) in pairs {
            let (Some(x), Some(y), Some(z)) = (core.defined(core.rho_h(&a.mul(b)))?, core.defined(core.rho_h(a))?, core.defined(core.rho_h(b))?) else { continue };
            ensure(x == y.add(&z).add(&core.f(a, b)?), || format!("ρ(h_ab) != ρ(h_a)+ρ(h_b)+f(a,b) for a = {a}, b = {b}"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.hua-difference", pmode.clone(), r));

    let r = (|| {
        for (a, b) in pairs {
            ensure(rings.s.contains(&core.f(a, b)?), || format!("f(a,b) is not in S for a = {a}, b = {b}"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("f.values-in-s", rings.s_mode.clone(), r));

    if f.characteristic() == 2 {
        out.push(CheckRecord::skip("f.diagonal-twice-h", "hypothesis unmet: characteristic 2"));
    } else {
        let r = (|| {
            for a in &core.eng.a().generator_mats() {
                let b = half_root(core, a)?;
                ensure(core.f(a, a)? == core.rho_h(&b)?.scale(&f.int(2)), || format!("f(a,a) != 2ρ(h_b) for a = {a}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("f.diagonal-twice-h", Mode::Exhaustive, r));
    }
    Ok(out)
}

/// Hua map identities.
pub fn hua_checks(core: &Core, rings: &Rings) -> Result<Vec<CheckRecord>, String> {
    let mut out = Vec::new();
    let (elems, mode) = core.a_elements();

    let r = (|| {
        for a in &elems {
            let ai = a.inverse().expect("invertible");
            let (Some(h), Some(x)) = (core.defined(core.h(a))?, core.defined(core.rho_h(&ai))?) else { continue };
            let y = core.rho(&core.minus_mu(&h))?;
            ensure(y == x.neg(), || format!("ρ(h_a^(-μ)) != -ρ(h_(a⁻¹)) for a = {a}"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("hua.minus-mu-inverse", mode.clone(), r));

    let hs: Vec<Mat> = elems.iter().take(5).filter_map(|a| core.h(a).ok()).collect();
    let r = (|| {
        for h in &hs {
            let hm = core.minus_mu(h);
            for a in &elems {
                let (Some(x),) = (core.defined(core.h(&a.conj(h)))?,) else { continue };
                let (Some(ha),) = (core.defined(core.h(a))?,) else { continue };
                ensure(x == hm.mul(&ha).mul(h), || format!("h_(a^h) != h^(-μ)h_a h for a = {a}"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("hua.conjugate-formula", Mode::for_count(core.is_finite(), hs.len() * elems.len()), r));

    let r = (|| {
        for a in &elems {
            let (Some(h),) = (core.defined(core.h(a))?,) else { continue };
            let x = core.rho(&core.minus_mu(&h).mul(&h))?;
            ensure(rings.r.contains(&x), || format!("ρ(h^(-μ)h) is not in R for h = h_a, a = {a}"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("hua.minus-mu-product-in-r", mode, r));
    Ok(out)
}

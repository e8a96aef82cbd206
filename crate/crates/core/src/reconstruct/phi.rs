//! `Φ(v,a) = [vμ,a] - vh_a` and the submodules `X(W) = W + Wμ + Φ(W,A)`.

use crate::check::{ensure, CheckRecord, Mode};
use crate::field::{Fe, PrimeField};
use crate::groupcore::{commutator_space, RankOnePair};
use crate::linalg::{left_kernel, lin_comb, vec_add, vec_is_zero, vec_text, Mat, Subspace};

use super::abar::Abar;
use super::rings::Rings;
use super::Core;

/// Elements spanning `A` additively for `Φ(v,·)`: span set plus the sample.
fn a_span(core: &Core) -> Vec<Mat> {
    let mut v = core.eng.a().span_mats();
    v.extend(core.a_elements().0);
    v.retain(|m| !m.is_identity());
    v
}

/// `span Φ(W,A)` for `W` given in module coordinates.
pub fn phi_span(core: &Core, w: &Subspace) -> Result<Subspace, String> {
    let mut vecs = Vec::new();
    for a in a_span(core) {
        for b in w.basis() {
            if let Some(p) = core.defined(core.phi(b, &a))? {
                vecs.push(p);
            }
        }
    }
    Ok(Subspace::span(core.field(), core.n(), vecs))
}

pub fn phi_checks(core: &Core, rings: &Rings, abar: &Abar) -> Result<Vec<CheckRecord>, String> {
    let f = core.field();
    let mut out = Vec::new();
    let (elems, mode) = core.a_elements();
    let cva: Vec<Vec<Fe>> = core.eng.cva.basis().to_vec();

    let r = (|| {
        for a in &elems {
            for c in &cva {
                let Some(p) = core.defined(core.phi(c, a))? else { continue };
                ensure(core.cvg0.contains(&p), || format!("Φ(v,a) = {} is not in C_V(G0) for a = {a}", vec_text(&p)))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("phi.in-cvg0", mode.clone(), r));

    let r = (|| {
        for a in &elems {
            for b in elems.iter().take(8) {
                for c in &cva {
                    let (Some(x), Some(y), Some(z)) = (core.defined(core.phi(c, a))?, core.defined(core.phi(c, b))?, core.defined(core.phi(c, &a.mul(b)))?) else { continue };
                    ensure(z == vec_add(&x, &y), || format!("Φ(v,ab) != Φ(v,a)+Φ(v,b) for a = {a}, b = {b}"))?;
                }
            }
            if cva.len() >= 2 {
                let s = vec_add(&cva[0], &cva[1]);
                let (Some(x), Some(y), Some(z)) = (core.defined(core.phi(&cva[0], a))?, core.defined(core.phi(&cva[1], a))?, core.defined(core.phi(&s, a))?) else { continue };
                ensure(z == vec_add(&x, &y), || format!("Φ(v+w,a) != Φ(v,a)+Φ(w,a) for a = {a}"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("phi.biadditive", mode.clone(), r));

    let hs: Vec<Mat> = core.a0.nontrivial_sample().into_iter().take(8).map(|a| core.h(&a)).collect::<Result<_, _>>()?;
    let r = (|| {
        for h in &hs {
            let twist = core.minus_mu(h);
            for a in &elems {
                for c in &cva {
                    let (Some(x), Some(y)) = (core.defined(core.phi(&h.vec_mul(c), a))?, core.defined(core.phi(c, &a.conj(&twist)))?) else { continue };
                    ensure(x == y, || format!("Φ(vh,a) != Φ(v,a^(h^(-μ))) for a = {a}, h = {h}"))?;
                }
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("phi.hua-twist", Mode::for_count(core.is_finite(), hs.len() * elems.len()), r));

    let r = (|| {
        let caq = core.eng.centralizer_of_quotient().map_err(|e| e.to_string())?;
        'elems: for a in &elems {
            let mut zero = true;
            for c in &cva {
                let Some(p) = core.defined(core.phi(c, a))? else { continue 'elems };
                zero &= vec_is_zero(&p);
            }
            ensure(zero == caq.contains(a), || format!("Φ(·,a) = 0 is {zero} but a ∈ C_A(V/C_V(A)) is {} for a = {a}", !zero))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("phi.right-kernel", mode.clone(), r));

    let kills_a0 = (|| -> Result<bool, String> {
        for a in &core.a0.basis {
            for c in &cva {
                if !vec_is_zero(&core.phi(c, a)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })()?;

    if kills_a0 {
        let r = (|| {
            for (l, rm) in rings.r.basis.iter().enumerate() {
                let rs = rings.star(&f.unit_vector(rings.r.dim(), l));
                for (i, c) in cva.iter().enumerate() {
                    let vr = core.cva_vec(&rm.vec_mul(&f.unit_vector(core.k, i)));
                    for a in &elems {
                        let x = abar.of(core, a)?;
                        let moved = abar.lift(core, &abar.scale(core, &x, &rs));
                        let (Some(p), Some(q)) = (core.defined(core.phi(&vr, a))?, core.defined(core.phi(c, &moved))?) else { continue };
                        ensure(p == q, || format!("Φ(v·r,ā) != Φ(v,ā·r*) for r = b{}, a = {a}", l + 1))?;
                    }
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("phi.semilinear", mode.clone(), r));
    } else {
        out.push(CheckRecord::skip("phi.semilinear", "hypothesis unmet: Φ does not vanish on A0"));
    }

    out.push(isomorphism_check(core, rings, abar, kills_a0)?);

    if rings.r_equals_s() && !core.eng.a_is_abelian() {
        let span = a_span(core);
        let rows: Vec<Vec<Fe>> = cva
            .iter()
            .map(|c| {
                let mut row = Vec::new();
                for a in &span {
                    row.extend(core.phi(c, a)?);
                }
                Ok(row)
            })
            .collect::<Result<_, String>>()?;
        let ker = left_kernel(&Mat::from_rows(f, core.n() * span.len(), rows));
        out.push(CheckRecord::from_result(
            "phi.nondegenerate",
            Mode::for_count(core.is_finite(), span.len()),
            ensure(ker.is_empty(), || format!("Φ(v,·) = 0 for v with coordinates {}", vec_text(&ker[0]))),
        ));
    } else {
        out.push(CheckRecord::skip("phi.nondegenerate", "hypothesis unmet: R != S or A is abelian"));
    }
    Ok(out)
}

fn isomorphism_check(core: &Core, rings: &Rings, abar: &Abar, kills_a0: bool) -> Result<CheckRecord, String> {
    let f = core.field();
    if !kills_a0 || abar.dim == 0 {
        return Ok(CheckRecord::skip("phi.isomorphism", "hypothesis unmet: Φ does not vanish on A0"));
    }
    let v = core.eng.cva.basis()[0].clone();
    let v_line = Subspace::span(f, core.k, rings.r.basis.iter().map(|m| m.vec_mul(&f.unit_vector(core.k, 0))).collect());
    let rows = (0..abar.dim).map(|i| core.phi(&v, &abar.lift(core, &f.unit_vector(abar.dim, i)))).collect::<Result<Vec<_>, _>>()?;
    let p = Mat::from_rows(f, core.n(), rows.clone());
    let image = Subspace::span(f, core.n(), rows);
    let full = phi_span(core, &core.eng.cva)?;
    let injective = p.rank() == abar.dim;
    let onto = image == full;
    if v_line.dim() == core.k {
        Ok(CheckRecord::from_result(
            "phi.isomorphism",
            Mode::Exhaustive,
            ensure(injective && onto, || format!("Φ(v,·) injective: {injective}, image = Φ(V,A): {onto}")),
        ))
    } else {
        Ok(CheckRecord::pass_with(
            "phi.isomorphism",
            Mode::Exhaustive,
            format!("hypothesis C_V(A) = vR unmet (dim vR = {}, dim C_V(A) = {}): Φ(v,·) injective: {injective}, image = Φ(V,A): {onto}", v_line.dim(), core.k),
        ))
    }
}

/// `X(W)` and its three summands, all in module coordinates.
#[derive(Clone, Debug)]
pub struct XW {
    pub w: Subspace,
    pub wmu: Subspace,
    pub phi_w: Subspace,
    pub x: Subspace,
}

impl XW {
    pub fn build(core: &Core, w: &Subspace) -> Result<XW, String> {
        let wmu = w.image(&core.mu);
        let phi_w = phi_span(core, w)?;
        let x = w.sum(&wmu).sum(&phi_w);
        Ok(XW { w: w.clone(), wmu, phi_w, x })
    }
}

/// `W ⊆ C_V(A)` from coordinates in the echelon basis of `C_V(A)`.
fn module_subspace(core: &Core, w: &Subspace) -> Subspace {
    Subspace::span(core.field(), core.n(), w.basis().iter().map(|c| core.cva_vec(c)).collect())
}

/// Nonzero vectors of `w`: all when finite, otherwise basis vectors and pair sums.
fn nonzero_vectors(w: &Subspace) -> (Vec<Vec<Fe>>, bool) {
    if let Some(all) = w.elements().filter(|e| e.len() <= 4096) {
        return (all.into_iter().filter(|v| !vec_is_zero(v)).collect(), true);
    }
    let b = w.basis();
    let mut out = b.to_vec();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            out.push(vec_add(&b[i], &b[j]));
        }
    }
    out.push(lin_comb(w.field(), w.ambient(), &(1..=b.len()).map(|i| w.field().int(i as i64)).collect::<Vec<_>>(), b));
    out.retain(|v| !vec_is_zero(v));
    (out, false)
}

/// Every nonzero vector of `w` generates `w` under `gens`.
fn irreducible(w: &Subspace, gens: &[Mat]) -> bool {
    if w.is_zero() {
        return false;
    }
    nonzero_vectors(w).0.iter().all(|v| Subspace::span(w.field(), w.ambient(), vec![v.clone()]).closure_under(gens) == *w)
}

/// `X(W)` is `G`-irreducible iff every nonzero `w ∈ W` generates it, since
/// each nonzero submodule meets `C_V(A)`, hence `W`, nontrivially.
fn x_irreducible(core: &Core, xw: &XW) -> bool {
    let gens = core.eng.pair.generator_mats();
    !xw.w.is_zero() && nonzero_vectors(&xw.w).0.iter().all(|v| Subspace::span(core.field(), core.n(), vec![v.clone()]).closure_under(&gens) == xw.x)
}

/// Simple `H`-submodules of `C_V(A)` reachable as cyclic submodules, greedily
/// assembled into a direct sum.
fn socle_decomposition(core: &Core, h_gens: &[Mat]) -> (Vec<Subspace>, Subspace) {
    let f = core.field();
    let full = Subspace::full(f, core.k);
    let mut parts: Vec<Subspace> = Vec::new();
    let mut sum = Subspace::zero(f, core.k);
    for v in nonzero_vectors(&full).0 {
        if sum == full {
            break;
        }
        let m = Subspace::span(f, core.k, vec![v]).closure_under(h_gens);
        let simple = minimal_in(&m, h_gens);
        if simple.intersect(&sum).is_zero() {
            sum = sum.sum(&simple);
            parts.push(simple);
        }
    }
    (parts, sum)
}

/// A simple submodule inside the cyclic module `m`.
fn minimal_in(m: &Subspace, gens: &[Mat]) -> Subspace {
    let mut cur = m.clone();
    'outer: loop {
        for v in nonzero_vectors(&cur).0 {
            let c = Subspace::span(cur.field(), cur.ambient(), vec![v]).closure_under(gens);
            if c.dim() < cur.dim() {
                cur = c;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Matrices of `gens` on `x` in the echelon basis of `x`.
pub fn restrict(x: &Subspace, gens: &[Mat]) -> Vec<Mat> {
    gens.iter()
        .map(|g| Mat::from_rows(x.field(), x.dim(), x.basis().iter().map(|b| x.coords(&g.vec_mul(b)).expect("invariant subspace")).collect()))
        .collect()
}

/// An invertible `T` with `G_X·T = T·G_Y` for every generator pair, if one is found.
pub fn isomorphic_modules(field: PrimeField, gx: &[Mat], gy: &[Mat]) -> Option<Mat> {
    let d = gx.first()?.rows();
    if gx.len() != gy.len() || gy.iter().any(|m| m.rows() != d) {
        return None;
    }
    let nvars = d * d;
    let rows: Vec<Vec<Fe>> = (0..nvars)
        .map(|var| {
            let (a, b) = (var / d, var % d);
            let mut row = Vec::with_capacity(gx.len() * nvars);
            for (x, y) in gx.iter().zip(gy) {
                for i in 0..d {
                    for j in 0..d {
                        let mut c = field.zero();
                        if b == j {
                            c += x.get(i, a);
                        }
                        if i == a {
                            c -= y.get(b, j);
                        }
                        row.push(c);
                    }
                }
            }
            row
        })
        .collect();
    let ker = left_kernel(&Mat::from_rows(field, gx.len() * nvars, rows));
    let hom = Subspace::span(field, nvars, ker);
    let (cands, _) = nonzero_vectors(&hom);
    cands.into_iter().map(|t| Mat::from_flat(field, d, d, t)).find(|t| t.inverse().is_some())
}

/// Checks of the `X(W)` calculus on `W = C_V(A)`, `W = 0` and each simple summand.
pub fn xw_checks(core: &Core, rings: &Rings, base: Option<&RankOnePair>) -> Result<(Vec<CheckRecord>, Vec<String>), String> {
    let f = core.field();
    let mut out = Vec::new();
    let mut notes = Vec::new();
    let gens = core.eng.pair.generator_mats();
    let a_gens = core.eng.a().generator_mats();
    let h_gens = rings.s.gens.clone();
    let (parts, socle) = socle_decomposition(core, &h_gens);
    let finite = core.is_finite();

    let mut tests: Vec<(String, Subspace)> = vec![("C_V(A)".into(), core.eng.cva.clone()), ("0".into(), Subspace::zero(f, core.n()))];
    for (i, p) in parts.iter().enumerate() {
        if p.dim() < core.k {
            tests.push((format!("W{}", i + 1), module_subspace(core, p)));
        }
    }
    let xs: Vec<(String, XW)> = tests.iter().map(|(l, w)| Ok((l.clone(), XW::build(core, w)?))).collect::<Result<_, String>>()?;
    let cvb = &core.eng.cvb;

    let r = (|| {
        for (l, xw) in &xs {
            for g in &gens {
                ensure(xw.x.is_invariant_under(g), || format!("X({l}) is not G-invariant"))?;
            }
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("xw.invariant", Mode::Exhaustive, r));

    let r = (|| {
        for (l, xw) in &xs {
            ensure(xw.x.intersect(&core.eng.cva) == xw.w, || format!("X({l}) ∩ C_V(A) != W"))?;
            ensure(xw.x.intersect(cvb) == xw.wmu, || format!("X({l}) ∩ C_V(B) != Wμ"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("xw.intersections", Mode::Exhaustive, r));

    let r = (|| {
        for (l, xw) in &xs {
            let comm = commutator_space(&xw.x, &a_gens);
            ensure(comm == xw.w.sum(&xw.phi_w), || format!("[X({l}),A] != W + Φ(W,A)"))?;
            ensure(xw.x.intersect(&core.cvg0) == xw.phi_w, || format!("X({l}) ∩ C_V(G0) != Φ(W,A)"))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("xw.commutator", Mode::Exhaustive, r));

    let r = (|| {
        for (l, xw) in &xs {
            let total = xw.w.dim() + xw.wmu.dim() + xw.phi_w.dim();
            ensure(total == xw.x.dim(), || format!("X({l}): dim W + dim Wμ + dim Φ(W,A) = {total} but dim X = {}", xw.x.dim()))?;
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("xw.direct", Mode::Exhaustive, r));

    let mode = Mode::for_count(finite, xs.len());
    let r = (|| {
        for (l, xw) in xs.iter().filter(|(_, x)| !x.w.is_zero()) {
            let wc = Subspace::span(f, core.k, xw.w.basis().iter().map(|v| core.eng.cva.coords(v).expect("W ⊆ C_V(A)")).collect());
            let hi = irreducible(&wc, &h_gens);
            let gi = x_irreducible(core, xw);
            ensure(hi == gi, || format!("W = {l}: H-irreducible {hi}, X(W) G-irreducible {gi}"))?;
            notes.push(format!("X({l}): dim {}, irreducible: {gi}", xw.x.dim()));
        }
        Ok(())
    })();
    out.push(CheckRecord::from_result("xw.irreducible-transfer", mode.clone(), r));

    let complete = socle.dim() == core.k;
    let summands: Vec<XW> = parts.iter().map(|p| XW::build(core, &module_subspace(core, p))).collect::<Result<_, _>>()?;
    let r = (|| {
        if complete {
            let mut sum = Subspace::zero(f, core.n());
            let mut dims = 0;
            for (i, s) in summands.iter().enumerate() {
                ensure(x_irreducible(core, s), || format!("X(W{}) is not irreducible", i + 1))?;
                sum = sum.sum(&s.x);
                dims += s.x.dim();
            }
            ensure(sum.dim() == core.n() && dims == core.n(), || format!("⊕X(Wi) has dimension {} (sum of dimensions {dims}) in dimension {}", sum.dim(), core.n()))?;
            Ok(format!("C_V(A) and V completely reducible: {} summands", summands.len()))
        } else {
            let mut sum = Subspace::zero(f, core.n());
            for s in &summands {
                sum = sum.sum(&s.x);
            }
            ensure(sum.dim() < core.n(), || "C_V(A) is not completely reducible but V is covered by the X(Wi)".into())?;
            Ok(format!("C_V(A) is not completely reducible (socle dimension {} of {})", socle.dim(), core.k))
        }
    })();
    out.push(CheckRecord::from_info("xw.complete-reducibility", mode, r));

    match base {
        Some(base) if complete => {
            let gy = base.generator_mats();
            let r = (|| {
                ensure(summands.len() >= 2, || format!("{} summand(s)", summands.len()))?;
                for (i, s) in summands.iter().enumerate() {
                    let gx = restrict(&s.x, &gens);
                    ensure(isomorphic_modules(f, &gx, &gy).is_some(), || format!("X(W{}) is not isomorphic to the base module", i + 1))?;
                }
                Ok(format!("{} summands, each isomorphic to the base module", summands.len()))
            })();
            out.push(CheckRecord::from_info("xw.summands-isomorphic", Mode::Exhaustive, r));
        }
        Some(_) => out.push(CheckRecord::fail("xw.summands-isomorphic", Mode::Exhaustive, "C_V(A) is not completely reducible".into())),
        None => out.push(CheckRecord::skip("xw.summands-isomorphic", "hypothesis unmet: no base module")),
    }
    Ok((out, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isomorphic_modules_finds_a_conjugator() {
        let f = PrimeField::Fp(3);
        let g = Mat::from_ints(f, &[&[1, 1], &[0, 1]]);
        let t = Mat::from_ints(f, &[&[1, 2], &[1, 0]]);
        let h = t.inverse().unwrap().mul(&g).mul(&t);
        let found = isomorphic_modules(f, &[g.clone()], &[h.clone()]).unwrap();
        assert_eq!(g.mul(&found), found.mul(&h));
        let other = Mat::identity(f, 2);
        assert!(isomorphic_modules(f, &[g], &[other]).is_none());
    }

    #[test]
    fn irreducibility_by_cyclic_generation() {
        let f = PrimeField::Fp(2);
        let rot = Mat::from_ints(f, &[&[0, 1], &[1, 1]]);
        assert!(irreducible(&Subspace::full(f, 2), &[rot]));
        let shear = Mat::from_ints(f, &[&[1, 0], &[1, 1]]);
        assert!(!irreducible(&Subspace::full(f, 2), &[shear]));
    }
}

//! `Ā = A/A₀` modelled as `U/U₀` on the linear parameter, with the right
//! `R`-action `ā·ρ(h) = (a^h)‾`.

use crate::check::{ensure, CheckRecord, Mode};
use crate::field::Fe;
use crate::linalg::{lin_comb, vec_add, vec_scale, vec_text, Mat, Subspace};

use super::rings::Rings;
use super::Core;

#[derive(Clone, Debug)]
pub struct Abar {
    pub u0: Subspace,
    pub dim: usize,
    comp: Vec<Vec<Fe>>,
    /// `Act(b_l)` for the recorded `R` basis.
    pub basis_acts: Vec<Mat>,
    /// `Act(h_(a_i))` for the `A₀` basis.
    pub gen_acts: Vec<Mat>,
}

impl Abar {
    pub fn new(core: &Core, rings: &Rings) -> Result<Abar, String> {
        let fam = core.eng.a();
        let f = core.field();
        let u0 = Subspace::span(f, fam.du(), core.a0.basis_params.iter().map(|p| p.u.clone()).collect());
        let comp = u0.complement_basis();
        let dim = comp.len();
        let mut me = Abar { u0, dim, comp, basis_acts: vec![], gen_acts: vec![] };
        me.gen_acts = rings.a0_basis.iter().map(|a| me.act(core, &core.h(a)?)).collect::<Result<Vec<_>, _>>()?;
        me.basis_acts = rings.r.words.iter().map(|w| rings.r.word_product(w, &me.gen_acts, false)).collect();
        Ok(me)
    }

    pub fn of(&self, core: &Core, a: &Mat) -> Result<Vec<Fe>, String> {
        let p = core.eng.a().member(a).ok_or("element is not in A")?;
        Ok(self.u0.quotient_coords(&p.u))
    }

    /// A representative `a ∈ A` of `x ∈ Ā`.
    pub fn lift(&self, core: &Core, x: &[Fe]) -> Mat {
        let fam = core.eng.a();
        let f = core.field();
        let u = lin_comb(f, fam.du(), x, &self.comp);
        fam.matrix(&fam.param(u, &f.zeros(fam.dc())))
    }

    /// Matrix of `ā ↦ (a^h)‾` on `Ā` for `h` normalizing `A`.
    pub fn act(&self, core: &Core, h: &Mat) -> Result<Mat, String> {
        let f = core.field();
        let rows = (0..self.dim).map(|i| self.of(core, &self.lift(core, &f.unit_vector(self.dim, i)).conj(h))).collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_rows(f, self.dim, rows))
    }

    /// `Act(r)` for `r ∈ R` in recorded coordinates.
    pub fn act_r(&self, core: &Core, r: &[Fe]) -> Mat {
        let f = core.field();
        let mut m = Mat::zeros(f, self.dim, self.dim);
        for (c, b) in r.iter().zip(&self.basis_acts) {
            if !c.is_zero() {
                m = m.add(&b.scale(c));
            }
        }
        m
    }

    /// `x·r`.
    pub fn scale(&self, core: &Core, x: &[Fe], r: &[Fe]) -> Vec<Fe> {
        self.act_r(core, r).vec_mul(x)
    }

    /// Unit vectors, pair sums and a few integer combinations; all of `Ā` when finite and at most 256.
    pub fn sample(&self, core: &Core) -> (Vec<Vec<Fe>>, Mode) {
        let f = core.field();
        if let Some(all) = f.all_vectors(self.dim).filter(|v| v.len() <= 256) {
            return (all, Mode::Exhaustive);
        }
        let mut out: Vec<Vec<Fe>> = (0..self.dim).map(|i| f.unit_vector(self.dim, i)).collect();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.push(vec_add(&f.unit_vector(self.dim, i), &vec_scale(&f.unit_vector(self.dim, j), &f.int(-2))));
            }
        }
        out.push((0..self.dim).map(|i| f.int(i as i64 + 1)).collect());
        let n = out.len();
        (out, Mode::Sampled(n))
    }

    pub fn checks(&self, core: &Core, rings: &Rings) -> Result<Vec<CheckRecord>, String> {
        let f = core.field();
        let mut out = Vec::new();
        let (elems, mode) = core.a_elements();

        let r = (|| {
            let mut kernel_hits = 0usize;
            for a in &elems {
                let x = self.of(core, a)?;
                let zero = x.iter().all(Fe::is_zero);
                ensure(zero == core.a0.contains(a), || format!("abar(a) = {} but a ∈ A0 is {} for a = {a}", vec_text(&x), core.a0.contains(a)))?;
                kernel_hits += zero as usize;
                for b in elems.iter().take(8) {
                    let y = self.of(core, b)?;
                    ensure(self.of(core, &a.mul(b))? == vec_add(&x, &y), || format!("abar(ab) != abar(a)+abar(b) for a = {a}, b = {b}"))?;
                }
            }
            for i in 0..self.dim {
                let e = f.unit_vector(self.dim, i);
                ensure(self.of(core, &self.lift(core, &e))? == e, || format!("lift of unit vector {} does not project back", i + 1))?;
            }
            Ok(format!("dim Ā = {}, {} sampled elements in A0", self.dim, kernel_hits))
        })();
        out.push(CheckRecord::from_info("abar.quotient-model", mode.clone(), r));

        let r = (|| {
            for rel in &rings.r.relations {
                let lhs = self.basis_acts[rel.left].mul(&self.gen_acts[rel.gen]);
                ensure(lhs == self.act_r(core, &rel.coeffs), || format!("Act(b{})Act(g{}) differs from the expansion in R", rel.left + 1, rel.gen + 1))?;
            }
            for rel in rings.j_relations() {
                let mut m = Mat::zeros(f, self.dim, self.dim);
                for (c, a) in rel.iter().zip(&self.gen_acts) {
                    m = m.add(&a.scale(c));
                }
                ensure(m.is_zero(), || format!("linear relation {} among ρ(h_a) is not respected on Ā", vec_text(&rel)))?;
            }
            for a in core.a0.nontrivial_sample() {
                let direct = self.act(core, &core.h(&a)?)?;
                let c = rings.r.coords(&core.rho_h(&a)?).ok_or("ρ(h_a) is not in R")?;
                ensure(direct == self.act_r(core, &c), || format!("conjugation by h_a and the expansion of ρ(h_a) act differently for a = {a}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("abar.well-defined", Mode::for_count(core.is_finite(), rings.r.relations.len()), r));

        let r = (|| {
            let d = rings.r.dim();
            ensure(self.act_r(core, &rings.r_alg.one()).is_identity(), || "ā·1 != ā".into())?;
            for i in 0..d {
                for j in 0..d {
                    let prod = rings.r_alg.mul(&rings.r_alg.basis(i), &rings.r_alg.basis(j));
                    ensure(self.act_r(core, &prod) == self.basis_acts[i].mul(&self.basis_acts[j]), || format!("ā·(b{}b{}) != (ā·b{})·b{}", i + 1, j + 1, i + 1, j + 1))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("abar.module-axioms", Mode::Exhaustive, r));

        let r = (|| {
            let p = f.characteristic() as i64;
            for n in (2..=5i64).filter(|n| p == 0 || n % p != 0).take(2) {
                let en = core.e.pow(n).ok_or("singular")?;
                let act = self.act(core, &core.h(&en)?)?;
                ensure(act == Mat::identity(f, self.dim).scale(&f.int(n)), || format!("ā·ρ(h_{n}) != {n}ā"))?;
                let c = rings.r.coords(&core.rho_h(&en)?).ok_or("ρ(h_n) is not in R")?;
                ensure(c == rings.r_alg.scalar(&f.int(n)), || format!("ρ(h_{n}) != {n}·1 in R"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("abar.integer-scalars", Mode::Exhaustive, r));

        if f.characteristic() == 2 {
            out.push(CheckRecord::skip("abar.divisibility", "hypothesis unmet: characteristic 2"));
        } else {
            let (xs, m) = self.sample(core);
            let r = (|| {
                let mut n = 0;
                for x in xs.iter().filter(|x| x.iter().any(|c| !c.is_zero())) {
                    let a = self.lift(core, x);
                    let b = half_root(core, &a)?;
                    n += 1;
                    ensure(self.of(core, &b)? == *x, || format!("b̄ != ā for a = {a}"))?;
                    let b2 = b.mul(&b);
                    let h2 = core.h(&core.e.pow(2).expect("invertible"))?;
                    ensure(b2 == b.conj(&h2), || format!("b² != b^(h_2) for a = {a}"))?;
                }
                Ok(format!("{n} elements halved"))
            })();
            out.push(CheckRecord::from_info("abar.divisibility", m, r));
        }
        Ok(out)
    }
}

/// `b = a·y` with `bⁿ = b^(h_n)` for `n = 2`, from `x = a^(h_2)a⁻² ∈ A₀`.
pub fn half_root(core: &Core, a: &Mat) -> Result<Mat, String> {
    let f = core.field();
    let h2 = core.h(&core.e.pow(2).ok_or("singular")?)?;
    let ai = a.inverse().ok_or("singular")?;
    let x = a.conj(&h2).mul(&ai).mul(&ai);
    ensure(core.a0.contains(&x), || format!("a^(h_2)a⁻² is not in A0 for a = {a}"))?;
    let half = f.frac(1, 2);
    let y = Mat::identity(f, core.n()).sub(&x.minus_identity().scale(&half));
    Ok(a.mul(&y))
}

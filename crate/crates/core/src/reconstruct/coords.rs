//! Coordinates `V = R ⊕ Ā ⊕ R` via `(r,ā,s) = vr + Φ(v,ā) + vsμ`, the
//! reconstructed pseudo-quadratic space over `(R, J, *)`, and the
//! identification of `R` with the scalar domain of a reference instance.

use rand::Rng;

use crate::check::{ensure, CheckRecord, Mode};
use crate::field::Fe;
use crate::formspaces::{unflatten, Anisotropy, ExtendedSpace, KVec, PseudoQuadraticSpace};
use crate::jordanalg::{is_division_jordan, Ambient, DivisionMode, InvolutorySet, JordanSubspace};
use crate::linalg::{solve_left, vec_add, Mat, Subspace};
use crate::scalars::{Elem, ScalarDomain};

use super::abar::Abar;
use super::rings::Rings;
use super::Core;

/// `ψ: R → K` sending `ρ(h_a)` for `a ∈ A₀` to the parameter `t` of `a`,
/// extended multiplicatively along recorded words.
#[derive(Clone, Debug)]
pub struct Identification {
    pub images: Vec<Elem>,
    /// The words were multiplied in reversed order to obtain a homomorphism.
    pub reversed: bool,
    pub domain: ScalarDomain,
    pub reference: InvolutorySet,
    matrix: Mat,
}

impl Identification {
    pub fn build(core: &Core, rings: &Rings, reference: &ExtendedSpace) -> Result<Identification, String> {
        let alg = reference.alg();
        let ts: Vec<Elem> = core.a0.basis_params.iter().map(|p| reference.param_parts(p).1).collect();
        let img = |rev: bool| -> Vec<Elem> {
            rings
                .r
                .words
                .iter()
                .map(|w| {
                    let mut acc = alg.one();
                    let it: Box<dyn Iterator<Item = &usize>> = if rev { Box::new(w.iter().rev()) } else { Box::new(w.iter()) };
                    for &i in it {
                        acc = alg.mul(&acc, &ts[i]);
                    }
                    acc
                })
                .collect()
        };
        let f = core.field();
        for reversed in [false, true] {
            let images = img(reversed);
            let matrix = Mat::from_rows(f, alg.dim(), images.clone());
            let me = Identification { images, reversed, domain: reference.base.set.domain.clone(), reference: reference.base.set.clone(), matrix };
            if me.is_hom(rings) {
                return Ok(me);
            }
        }
        Err("neither word order gives a ring homomorphism R → K".into())
    }

    pub fn apply(&self, x: &[Fe]) -> Elem {
        self.matrix.vec_mul(x)
    }

    fn is_hom(&self, rings: &Rings) -> bool {
        let d = rings.r.dim();
        let alg = self.domain.alg();
        (0..d).all(|i| (0..d).all(|j| self.apply(&rings.r_alg.mul(&rings.r_alg.basis(i), &rings.r_alg.basis(j))) == alg.mul(&self.images[i], &self.images[j])))
    }

    pub fn bijective(&self) -> bool {
        self.matrix.is_square() && self.matrix.rank() == self.matrix.rows()
    }

    pub fn checks(&self, rings: &Rings) -> Vec<CheckRecord> {
        let alg = self.domain.alg();
        let hom = self.is_hom(rings);
        let bij = self.bijective();
        let r = if hom && bij {
            Ok(format!("R ≅ {} (dim {}), words {} order", self.domain, rings.r.dim(), if self.reversed { "in reversed" } else { "in recorded" }))
        } else {
            Err(format!("homomorphism: {hom}, bijective: {bij}"))
        };
        let id = CheckRecord::from_info("quaternion.identification", Mode::Exhaustive, r);
        let d = rings.r.dim();
        let r = (|| {
            for i in 0..d {
                let e = rings.r_alg.basis(i);
                let lhs = self.apply(&rings.star(&e));
                let rhs = self.reference.star(&self.apply(&e));
                ensure(lhs == rhs, || format!("ψ(b{}*) = {} but ψ(b{})* = {}", i + 1, alg.pretty(&lhs), i + 1, alg.pretty(&rhs)))?;
            }
            Ok(())
        })();
        vec![id, CheckRecord::from_result("star.matches-instance", Mode::Exhaustive, r)]
    }

    /// `jordan.division` on `ψ(J)` inside the reference domain.
    pub fn division_record(&self, rings: &Rings) -> CheckRecord {
        let jb: Vec<Elem> = rings.set.k0.basis().iter().map(|x| self.apply(x)).collect();
        let j = JordanSubspace::new(Ambient::Domain(self.domain.clone()), jb.clone());
        let alg = self.domain.alg();
        let mut sample = jb.clone();
        for i in 0..jb.len() {
            for k in i + 1..jb.len() {
                sample.push(alg.add(&jb[i], &jb[k]));
                sample.push(alg.sub(&jb[i], &alg.scale(&jb[k], &self.domain.field().int(3))));
            }
        }
        let v = is_division_jordan(&j, &sample);
        let (mode, info) = match &v.mode {
            DivisionMode::Exhaustive(_) => (Mode::Exhaustive, None),
            DivisionMode::Certified { certificate, sampled } => (Mode::Sampled(*sampled), Some(format!("certified on ψ(J): {certificate}"))),
            DivisionMode::Sampled(n) => (Mode::Sampled(*n), None),
        };
        if v.holds {
            CheckRecord::from_info("jordan.division", mode, Ok(info.unwrap_or_else(|| "every sampled nonzero element is invertible in J".into())))
        } else {
            CheckRecord::fail("jordan.division", mode, v.witness.unwrap_or_default())
        }
    }

    /// The reconstructed space transported to the reference domain.
    pub fn transport(&self, rings: &Rings, space: &PseudoQuadraticSpace) -> Result<PseudoQuadraticSpace, String> {
        let k0: Vec<Elem> = rings.set.k0.basis().iter().map(|x| self.apply(x)).collect();
        let set = InvolutorySet::new(self.domain.clone(), k0, self.reference.inv.clone());
        let pi = space.pi_diag().iter().map(|x| self.apply(x)).collect();
        let gram = space.gram().iter().map(|r| r.iter().map(|x| self.apply(x)).collect()).collect();
        PseudoQuadraticSpace::new(set, pi, gram).map_err(|e| e.to_string())
    }
}

/// Coordinates for the noncommutative branch with `dim_R C_V(A) = 1`.
pub struct Coordinates {
    /// `R`-basis `ā₁..ā_m` of `Ā`.
    pub xbasis: Vec<Vec<Fe>>,
    pub space: PseudoQuadraticSpace,
    pub ext: ExtendedSpace,
    m_mat: Mat,
    m_inv: Mat,
    p_mat: Mat,
    p_inv: Mat,
    /// Rows `ā_i·b_l` for solving `ā = Σ ā_i·x_i`.
    solve: Mat,
    dr: usize,
    da: usize,
}

impl Coordinates {
    pub fn build(core: &Core, rings: &Rings, abar: &Abar) -> Result<Coordinates, String> {
        let f = core.field();
        let dr = rings.r.dim();
        let k = core.k;
        let v_line = Subspace::span(f, k, rings.r.basis.iter().map(|m| m.vec_mul(&f.unit_vector(k, 0))).collect());
        if v_line.dim() != k {
            return Err(format!("dim_R C_V(A) != 1: vR has dimension {} in C_V(A) of dimension {k}", v_line.dim()));
        }
        let mut xbasis: Vec<Vec<Fe>> = Vec::new();
        let mut span = Subspace::zero(f, abar.dim);
        for i in 0..abar.dim {
            let e = f.unit_vector(abar.dim, i);
            if span.contains(&e) {
                continue;
            }
            let orbit: Vec<Vec<Fe>> = abar.basis_acts.iter().map(|m| m.vec_mul(&e)).collect();
            let next = span.sum(&Subspace::span(f, abar.dim, orbit));
            if next.dim() != span.dim() + dr {
                return Err(format!("Ā is not free over R at generator {}", i + 1));
            }
            span = next;
            xbasis.push(e);
        }
        let solve_rows: Vec<Vec<Fe>> = xbasis.iter().flat_map(|x| abar.basis_acts.iter().map(move |b| b.vec_mul(x))).collect();
        let solve = Mat::from_rows(f, abar.dim, solve_rows);

        let lifts: Vec<Mat> = xbasis.iter().map(|x| abar.lift(core, x)).collect();
        let rc = |mat: &Mat, what: &str| rings.r.coords(mat).ok_or_else(|| format!("{what} is not in R"));
        let mut pi_diag = Vec::new();
        for a in &lifts {
            let mut p = rc(&core.rho_h(a)?, "ρ(h_a)")?;
            if f.characteristic() != 2 {
                let half = f.frac(1, 2);
                p = rings.r_alg.scale(&rings.r_alg.sub(&p, &rings.star(&p)), &half);
            }
            pi_diag.push(p);
        }
        let gram = lifts.iter().map(|a| lifts.iter().map(|b| rc(&core.f(a, b)?, "f(a,b)")).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
        let space = PseudoQuadraticSpace::new(rings.set.clone(), pi_diag, gram).map_err(|e| e.to_string())?;
        let ext = ExtendedSpace { base: space.clone(), anisotropy: Anisotropy::Sampled { sampled: 0 } };
        if ext.n() != core.n() {
            return Err(format!("(m+2)·dim R = {} but dim V = {}", ext.n(), core.n()));
        }
        let da = abar.dim;
        let mut me = Coordinates { xbasis, space, ext, m_mat: Mat::identity(f, 1), m_inv: Mat::identity(f, 1), p_mat: Mat::identity(f, 1), p_inv: Mat::identity(f, 1), solve, dr, da };

        let v0r = |c: &[Fe]| core.cva_vec(&rings.r.element(c).vec_mul(&f.unit_vector(k, 0)));
        let n = core.n();
        let mut mrows = Vec::with_capacity(n);
        for l in 0..n {
            let (r, x, s) = me.ext.split(&f.unit_vector(n, l));
            let a = me.abar_of_x(core, abar, &x);
            let phi = core.phi(&core.eng.cva.basis()[0], &abar.lift(core, &a))?;
            let mut v = vec_add(&v0r(&rings.star(&r)), &phi);
            v = vec_add(&v, &core.mu.vec_mul(&v0r(&rings.star(&s))));
            mrows.push(v);
        }
        me.m_mat = Mat::from_rows(f, n, mrows);
        me.m_inv = me.m_mat.inverse().ok_or("the coordinate map (r,x,s) ↦ V is singular")?;

        let mut prows = Vec::with_capacity(n);
        for l in 0..dr {
            prows.push(v0r(&f.unit_vector(dr, l)));
        }
        for i in 0..da {
            prows.push(core.phi(&core.eng.cva.basis()[0], &abar.lift(core, &f.unit_vector(da, i)))?);
        }
        for l in 0..dr {
            prows.push(core.mu.vec_mul(&v0r(&f.unit_vector(dr, l))));
        }
        me.p_mat = Mat::from_rows(f, n, prows);
        me.p_inv = me.p_mat.inverse().unwrap_or_else(|| Mat::zeros(f, n, n));
        Ok(me)
    }

    pub fn m(&self) -> usize {
        self.xbasis.len()
    }

    /// `Σ ā_i·x_i`.
    pub fn abar_of_x(&self, core: &Core, abar: &Abar, x: &[Elem]) -> Vec<Fe> {
        let f = core.field();
        let mut acc = f.zeros(abar.dim);
        for (xi, ai) in x.iter().zip(&self.xbasis) {
            acc = vec_add(&acc, &abar.scale(core, ai, xi));
        }
        acc
    }

    /// `x` with `ā = Σ ā_i·x_i`.
    pub fn x_of(&self, a: &[Fe]) -> Option<KVec> {
        let (c, _) = solve_left(&self.solve, a)?;
        Some(unflatten(&c, self.dr))
    }

    /// Matrix of `g` in the extended coordinates.
    pub fn ext_matrix(&self, g: &Mat) -> Mat {
        self.m_mat.mul(g).mul(&self.m_inv)
    }

    fn p_matrix(&self, g: &Mat) -> Mat {
        self.p_mat.mul(g).mul(&self.p_inv)
    }

    /// Matrix of a map given in `(r, ā, s)` coordinates.
    fn block(&self, core: &Core, map: impl Fn(&Vec<Fe>, &Vec<Fe>, &Vec<Fe>) -> (Vec<Fe>, Vec<Fe>, Vec<Fe>)) -> Mat {
        let f = core.field();
        let n = 2 * self.dr + self.da;
        let rows = (0..n)
            .map(|l| {
                let z = f.unit_vector(n, l);
                let (r, a, s) = (z[..self.dr].to_vec(), z[self.dr..self.dr + self.da].to_vec(), z[self.dr + self.da..].to_vec());
                let (r2, a2, s2) = map(&r, &a, &s);
                let mut v = r2;
                v.extend(a2);
                v.extend(s2);
                v
            })
            .collect();
        Mat::from_rows(f, n, rows)
    }

    pub fn checks<R: Rng>(&self, core: &Core, rings: &Rings, abar: &Abar, ident: Option<&Identification>, pairs: &[(Mat, Mat)], pmode: &Mode, rng: &mut R, samples: usize) -> Result<Vec<CheckRecord>, String> {
        let f = core.field();
        let ra = &rings.r_alg;
        let mut out = Vec::new();
        let (elems, mode) = core.a_elements();
        let rc = |mat: &Mat| rings.r.coords(mat).ok_or_else(|| format!("{} is not in R", mat.to_text()));
        let pi = |a: &Mat| -> Result<Elem, String> { rc(&core.rho_h(a)?) };
        let in_j = |x: &Elem| rings.set.in_k0(x);
        let a0s: Vec<Mat> = core.a0.nontrivial_sample().into_iter().take(6).collect();

        let r = (|| {
            for a in &a0s {
                for b in &elems {
                    let d = ra.sub(&pi(&a.mul(b))?, &pi(b)?);
                    ensure(in_j(&d), || format!("π(ab) - π(b) ∉ J for a ∈ A0 = {a}, b = {b}"))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("pi-abar.well-defined", mode.clone(), r));

        let rs: Vec<Elem> = (0..self.dr).map(|i| ra.basis(i)).chain([ra.add(&ra.basis(0), &ra.basis(self.dr - 1))]).collect();
        let r = (|| {
            for b in elems.iter().take(12) {
                let x = abar.of(core, b)?;
                let pb = pi(b)?;
                for r in &rs {
                    let lhs = pi(&abar.lift(core, &abar.scale(core, &x, r)))?;
                    let rhs = ra.mul3(&rings.star(r), &pb, r);
                    ensure(in_j(&ra.sub(&lhs, &rhs)), || format!("π(b̄·r) ≢ r*π(b̄)r mod J for b = {b}, r = {}", ra.pretty(r)))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("pi-abar.scalar", Mode::for_count(core.is_finite(), rs.len() * elems.len().min(12)), r));

        let r = (|| {
            for (b, c) in pairs {
                let s = abar.lift(core, &vec_add(&abar.of(core, b)?, &abar.of(core, c)?));
                let lhs = pi(&s)?;
                let rhs = ra.add(&ra.add(&pi(b)?, &pi(c)?), &rc(&core.f(b, c)?)?);
                ensure(in_j(&ra.sub(&lhs, &rhs)), || format!("π(b̄+c̄) ≢ π(b̄)+π(c̄)+f(b̄,c̄) mod J for b = {b}, c = {c}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("pi-abar.additive", pmode.clone(), r));

        out.push(self.anisotropy_record(core, rings, ident, &elems, rng, samples.max(50))?);

        if f.characteristic() != 2 {
            let r = (|| {
                for a in &elems {
                    let x = pi(a)?;
                    let herm = rings.star(&x) == x;
                    ensure(herm == core.a0.contains(a), || format!("ρ(h_a) hermitian is {herm}, a ∈ A0 is {} for a = {a}", !herm))?;
                }
                Ok(())
            })();
            out.push(CheckRecord::from_result("pi-abar.hermitian-iff-a0", mode.clone(), r));
        } else {
            out.push(CheckRecord::skip("pi-abar.hermitian-iff-a0", "hypothesis unmet: characteristic 2"));
        }

        let r = (|| {
            for b in &elems {
                let x = pi(b)?;
                ensure(rc(&core.f(b, b)?)? == ra.sub(&x, &rings.star(&x)), || format!("f(b̄,b̄) != ρ(h_b) - ρ(h_b)* for b = {b}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("pi-abar.diagonal", mode.clone(), r));

        let r = (|| {
            for (a, b) in pairs {
                let x = rc(&core.f(a, b)?)?;
                let y = rc(&core.f(b, a)?)?;
                ensure(y == ra.neg(&rings.star(&x)), || format!("f(b,a) != -f(a,b)* for a = {a}, b = {b}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("f.skew-hermitian", pmode.clone(), r));

        let r = (|| {
            for (a, b) in pairs.iter().take(8) {
                let (x, y) = (abar.of(core, a)?, abar.of(core, b)?);
                let base = rc(&core.f(&abar.lift(core, &x), &abar.lift(core, &y))?)?;
                for r in &rs {
                    for s in &rs {
                        let lhs = rc(&core.f(&abar.lift(core, &abar.scale(core, &x, r)), &abar.lift(core, &abar.scale(core, &y, s)))?)?;
                        ensure(lhs == ra.mul3(&rings.star(r), &base, s), || format!("f(ā·r,b̄·s) != r*f(ā,b̄)s for a = {a}, b = {b}"))?;
                    }
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("f.sesquilinear", Mode::for_count(core.is_finite(), pairs.len().min(8) * rs.len() * rs.len()), r));

        let n = core.n();
        out.push(CheckRecord::from_result("coords.unique", Mode::Exhaustive, ensure(self.p_mat.rank() == n && 2 * self.dr + self.da == n, || format!("(r,ā,s) ↦ vr + Φ(v,ā) + vsμ has rank {} on dimension {n}", self.p_mat.rank()))));
        let unique = self.p_mat.rank() == n;

        if unique {
            let mu_block = self.block(core, |r, a, s| (ra.neg(s), a.clone(), r.clone()));
            out.push(CheckRecord::from_result("coords.mu", Mode::Exhaustive, ensure(self.p_matrix(&core.mu) == mu_block, || "(r,ā,s)μ != (-s,ā,r)".into())));

            let r = (|| {
                for b in &elems {
                    let bb = abar.of(core, b)?;
                    let hb = pi(b)?;
                    let fcols: Vec<Elem> = (0..self.da).map(|i| rc(&core.f(&abar.lift(core, &f.unit_vector(self.da, i)), &abar.lift(core, &bb))?)).collect::<Result<_, _>>()?;
                    let expected = self.block(core, |r, a, s| {
                        let mut r2 = ra.add(r, &ra.mul(s, &hb));
                        for (c, fc) in a.iter().zip(&fcols) {
                            r2 = ra.add(&r2, &ra.scale(fc, c));
                        }
                        let a2 = vec_add(a, &abar.scale(core, &bb, &rings.star(s)));
                        (r2, a2, s.clone())
                    });
                    ensure(self.p_matrix(b) == expected, || format!("(r,ā,s)b != (r+f(ā,b̄)+sρ(h_b), ā+b̄·s*, s) for b = {b}"))?;
                }
                Ok(())
            })();
            out.push(CheckRecord::from_result("coords.root-action", mode.clone(), r));

            let r = (|| {
                let mut gs = core.eng.pair.generator_mats();
                gs.push(core.mu.clone());
                for l in 0..self.dr {
                    let lam = ra.basis(l);
                    let ls = rings.star(&lam);
                    let c = self.block(core, |r, a, s| (ra.mul(&ls, r), abar.scale(core, a, &lam), ra.mul(&ls, s)));
                    for g in &gs {
                        let gp = self.p_matrix(g);
                        ensure(gp.mul(&c) == c.mul(&gp), || format!("∘b{} does not commute with {g}", l + 1))?;
                    }
                }
                Ok(())
            })();
            out.push(CheckRecord::from_result("coords.scalar-commutes", Mode::Exhaustive, r));
        } else {
            for id in ["coords.mu", "coords.root-action", "coords.scalar-commutes"] {
                out.push(CheckRecord::skip(id, "hypothesis unmet: coordinates are not unique"));
            }
        }

        let om = self.ext.omega();
        let r = (|| {
            for a in &elems {
                let x = self.x_of(&abar.of(core, a)?).ok_or("ā is not in the R-span of the basis")?;
                let t = pi(a)?;
                ensure(self.ext.valid(&x, &t), || format!("π̄(x(ā)) - ρ(h_a) ∉ J for a = {a}"))?;
                ensure(self.ext_matrix(a) == self.ext.alpha_unchecked(&x, &t), || format!("a != α(x(ā), ρ(h_a)) for a = {a}"))?;
            }
            Ok(format!("{} elements identified; m = {}", elems.len(), self.m()))
        })();
        out.push(CheckRecord::from_info("su.alpha-identification", mode.clone(), r));

        let r = (|| {
            ensure(self.ext_matrix(&core.mu) == om, || "μ != ω in the extended coordinates".into())?;
            for a in &elems {
                let x = self.x_of(&abar.of(core, a)?).ok_or("ā is not in the R-span of the basis")?;
                let t = pi(a)?;
                ensure(self.ext_matrix(&a.conj(&core.mu)) == self.ext.beta_unchecked(&t, &x), || format!("a^μ != β(ρ(h_a), x(ā)) for a = {a}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("su.beta-identification", mode.clone(), r));

        let r = (|| {
            let mut gs = core.eng.pair.generator_mats();
            gs.push(core.mu.clone());
            for g in &gs {
                self.ext.preserves_pi(&self.ext_matrix(g))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("pi-v.preserved", Mode::Exhaustive, r));

        let r = (|| {
            let pair = self.ext.root_families().map_err(|e| e.to_string())?;
            let recs = self.ext.law_checks(&pair, rng, samples);
            for rec in &recs {
                ensure(!rec.failed(), || format!("{}: {}", rec.id, rec.witness.clone().unwrap_or_default()))?;
            }
            Ok(format!("{} transvection and form identities hold on the rebuilt space", recs.len()))
        })();
        out.push(CheckRecord::from_info("roundtrip.transvection-law", Mode::for_count(core.is_finite(), samples), r));

        match self.ext.isotropic_lines() {
            Some(lc) => out.push(CheckRecord::from_info(
                "witt.index-one",
                Mode::Exhaustive,
                match lc.mismatch {
                    None => Ok(format!("{} isotropic one-spaces among {}", lc.isotropic, lc.lines)),
                    Some(w) => Err(w),
                },
            )),
            None => {
                let r = self.ext.witt_sample(rng, samples);
                let n = *r.as_ref().unwrap_or(&0);
                out.push(CheckRecord::from_info("witt.index-one", Mode::Sampled(n), r.map(|n| format!("isotropic lines are (1,0,0)K and (r,x,1)K with r + π̄(x) ∈ J on {n} vectors"))));
            }
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn anisotropy_record<R: Rng>(&self, core: &Core, rings: &Rings, ident: Option<&Identification>, elems: &[Mat], rng: &mut R, samples: usize) -> Result<CheckRecord, String> {
        for a in elems {
            let x = rings.r.coords(&core.rho_h(a)?).ok_or("ρ(h_a) is not in R")?;
            if rings.set.in_k0(&x) != core.a0.contains(a) {
                return Ok(CheckRecord::fail("pi-abar.anisotropic", Mode::Sampled(elems.len()), format!("ρ(h_a) ∈ J is {} but a ∈ A0 is {} for a = {a}", rings.set.in_k0(&x), core.a0.contains(a))));
            }
        }
        let sample: Vec<KVec> = (0..samples).map(|_| self.space.random_vec(rng, 4)).collect();
        let direct = match self.space.is_anisotropic(&sample) {
            Ok(a) => a,
            Err(e) => return Ok(CheckRecord::fail("pi-abar.anisotropic", Mode::Sampled(samples), e.to_string())),
        };
        let mut info = format!("{}; ρ(h_a) ∈ J iff a ∈ A0 on {} elements", direct.describe(), elems.len());
        let mut mode = direct.mode();
        if let Some(id) = ident {
            let t = match id.transport(rings, &self.space) {
                Ok(t) => t,
                Err(e) => return Ok(CheckRecord::fail("pi-abar.anisotropic", mode, format!("transport to the reference domain failed: {e}"))),
            };
            let ts: Vec<KVec> = sample.iter().map(|x| x.iter().map(|e| id.apply(e)).collect()).collect();
            match t.is_anisotropic(&ts) {
                Ok(a @ Anisotropy::Certified { .. }) => {
                    info = format!("{info}; transported along ψ: {}", a.describe());
                    mode = a.mode();
                }
                Ok(a) => info = format!("{info}; transported along ψ without certificate: {}", a.describe()),
                Err(e) => return Ok(CheckRecord::fail("pi-abar.anisotropic", mode, format!("transported form: {e}"))),
            }
        }
        Ok(CheckRecord::pass_with("pi-abar.anisotropic", mode, info))
    }
}

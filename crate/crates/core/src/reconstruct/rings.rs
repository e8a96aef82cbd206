//! The rings `R ⊆ S ⊆ End(C_V(A))` generated by `J` and `ρ(H)`, and the
//! involution `*` on `R` extended along recorded expansions.

use crate::check::{ensure, CheckRecord, Mode};
use crate::field::{Fe, PrimeField};
use crate::jordanalg::{classify_commutative, ideal_lemma_check, is_ample, is_division_jordan, is_jordan_closed, Ambient, Classification, InvolutorySet, JordanSubspace, MatrixRing};
use crate::linalg::{left_kernel, lin_comb, solve_left, Mat, Subspace};
use crate::scalars::{fixed_set_basis, Algebra, DomainKind, Elem, Involution, InvolutionSpec, ScalarDomain};

use super::Core;

/// `basis[left]·gens[gen] = Σ coeffs[l]·basis[l]`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub left: usize,
    pub gen: usize,
    pub coeffs: Vec<Fe>,
}

/// Span of all words in the generators, with one recorded word per basis element.
#[derive(Clone, Debug)]
pub struct Closure {
    field: PrimeField,
    k: usize,
    pub gens: Vec<Mat>,
    pub basis: Vec<Mat>,
    pub words: Vec<Vec<usize>>,
    pub relations: Vec<Relation>,
    pub space: Subspace,
    /// Longest recorded word.
    pub rounds: usize,
    flat: Mat,
}

/// Breadth-first closure of `{1}` under right multiplication by `gens`.
pub fn closure(field: PrimeField, k: usize, gens: &[Mat]) -> Closure {
    let mut basis = vec![Mat::identity(field, k)];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut rels: Vec<(usize, usize, Vec<Fe>)> = Vec::new();
    let mut j = 0;
    while j < basis.len() {
        for (i, g) in gens.iter().enumerate() {
            let p = basis[j].mul(g);
            let flat = Mat::from_rows(field, k * k, basis.iter().map(|b| b.flat().to_vec()).collect());
            match solve_left(&flat, p.flat()) {
                Some((c, _)) => rels.push((j, i, c)),
                None => {
                    let mut w = words[j].clone();
                    w.push(i);
                    basis.push(p);
                    words.push(w);
                    let mut c = field.zeros(basis.len());
                    c[basis.len() - 1] = field.one();
                    rels.push((j, i, c));
                }
            }
        }
        j += 1;
    }
    let d = basis.len();
    let relations = rels
        .into_iter()
        .map(|(left, gen, mut coeffs)| {
            coeffs.resize(d, field.zero());
            Relation { left, gen, coeffs }
        })
        .collect();
    let flat = Mat::from_rows(field, k * k, basis.iter().map(|b| b.flat().to_vec()).collect());
    let space = Subspace::span(field, k * k, basis.iter().map(|b| b.flat().to_vec()).collect());
    let rounds = words.iter().map(Vec::len).max().unwrap_or(0);
    Closure { field, k, gens: gens.to_vec(), basis, words, relations, space, rounds, flat }
}

impl Closure {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates in the recorded basis.
    pub fn coords(&self, m: &Mat) -> Option<Elem> {
        solve_left(&self.flat, m.flat()).map(|(c, _)| c)
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.space.contains(m.flat())
    }

    pub fn element(&self, c: &[Fe]) -> Mat {
        let v = lin_comb(self.field, self.k * self.k, c, &self.basis.iter().map(|b| b.flat().to_vec()).collect::<Vec<_>>());
        Mat::from_flat(self.field, self.k, self.k, v)
    }

    /// Product of `mats` along `word`, optionally reversed.
    pub fn word_product(&self, word: &[usize], mats: &[Mat], reversed: bool) -> Mat {
        let n = mats.first().map_or(self.k, Mat::rows);
        let mut out = Mat::identity(self.field, n);
        let it: Box<dyn Iterator<Item = &usize>> = if reversed { Box::new(word.iter().rev()) } else { Box::new(word.iter()) };
        for &i in it {
            out = out.mul(&mats[i]);
        }
        out
    }

    pub fn describe_word(&self, j: usize) -> String {
        if self.words[j].is_empty() {
            return "1".into();
        }
        self.words[j].iter().map(|i| format!("g{}", i + 1)).collect::<Vec<_>>().join("·")
    }
}

/// `J`, `R`, `S` and `*` for one module.
pub struct Rings {
    /// A₀ basis elements `a_i` and their images `ρ(h_(a_i))`.
    pub a0_basis: Vec<Mat>,
    pub j_gens: Vec<Mat>,
    pub j: JordanSubspace,
    pub r: Closure,
    pub s: Closure,
    pub s_mode: Mode,
    pub r_alg: Algebra,
    pub s_alg: Option<Algebra>,
    /// `(R, J, *)` in the coordinates of the recorded `R` basis.
    pub set: InvolutorySet,
    pub classification: Classification,
}

impl Rings {
    pub fn build(core: &Core) -> Result<Rings, String> {
        let (f, k) = (core.field(), core.k);
        let a0_basis = core.a0.basis.clone();
        let j_gens = a0_basis.iter().map(|a| core.rho_h(a)).collect::<Result<Vec<_>, _>>()?;
        let ring = MatrixRing::new(f, k);
        let jspace = Subspace::span(f, k * k, j_gens.iter().map(|m| m.flat().to_vec()).collect());
        let j = JordanSubspace::new(Ambient::Matrices(ring), jspace.basis().to_vec());
        let r = closure(f, k, &j_gens);

        let (elems, mode) = core.a_elements();
        let mut s_gens = vec![core.id_k()];
        for a in &elems {
            if let Some(m) = core.defined(core.rho_h(a))? {
                if !s_gens.contains(&m) {
                    s_gens.push(m);
                }
            }
        }
        let s_mode = match mode {
            Mode::Exhaustive if core.rank_one => Mode::Exhaustive,
            _ => Mode::Sampled(s_gens.len()),
        };
        let s = closure(f, k, &s_gens);
        let r_alg = Algebra::from_matrix_basis(f, &r.basis).ok_or("R basis does not span a ring")?;
        let s_alg = Algebra::from_matrix_basis(f, &s.basis);

        let star_rows = (0..r.dim())
            .map(|l| {
                let p = r.word_product(&r.words[l], &j_gens, true);
                r.coords(&p).ok_or_else(|| format!("reversed word {} leaves R", r.describe_word(l)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let star = Mat::from_rows(f, r.dim(), star_rows);
        let j_coords = j.basis.iter().map(|b| r.coords(&Mat::from_flat(f, k, k, b.clone())).ok_or("J is not inside R")).collect::<Result<Vec<_>, _>>()?;
        let domain = ScalarDomain::from_algebra(DomainKind::Restriction { dim: r.dim() }, r_alg.clone());
        let set = InvolutorySet::new(domain, j_coords, Involution::from_matrix(InvolutionSpec::Reconstructed, star));
        let classification = classify_commutative(&j);
        Ok(Rings { a0_basis, j_gens, j, r, s, s_mode, r_alg, s_alg, set, classification })
    }

    pub fn star(&self, x: &[Fe]) -> Elem {
        self.set.star(x)
    }

    /// `r*` for a matrix `r ∈ R`.
    pub fn star_mat(&self, m: &Mat) -> Option<Mat> {
        let c = self.r.coords(m)?;
        Some(self.r.element(&self.star(&c)))
    }

    pub fn r_equals_s(&self) -> bool {
        self.r.space == self.s.space
    }

    pub fn j_elem(&self, m: &Mat) -> Elem {
        m.flat().to_vec()
    }

    /// `R = J` as subspaces.
    pub fn r_equals_j(&self) -> bool {
        self.r.space == self.j.space
    }

    /// Nonzero elements of `R` (all when finite) failing to be units in `R`.
    fn non_units(&self, sample: &[Elem]) -> Option<String> {
        let elems = self.r.space.elements().map(|v| v.into_iter().filter(|x| x.iter().any(|c| !c.is_zero())).collect::<Vec<_>>());
        let k = self.r.k;
        let f = self.r.field;
        let list: Vec<Mat> = match elems {
            Some(v) => v.into_iter().map(|x| Mat::from_flat(f, k, k, x)).collect(),
            None => sample.iter().map(|c| self.r.element(c)).filter(|m| !m.is_zero()).collect(),
        };
        for m in &list {
            match m.inverse() {
                None => return Some(format!("{} is not invertible", m.to_text())),
                Some(i) if !self.r.contains(&i) => return Some(format!("inverse of {} is not in R", m.to_text())),
                _ => {}
            }
        }
        None
    }

    fn r_sample(&self) -> Vec<Elem> {
        let f = self.r.field;
        let d = self.r.dim();
        let mut out: Vec<Elem> = (0..d).map(|i| f.unit_vector(d, i)).collect();
        for i in 0..d {
            for j in i + 1..d {
                let mut v = f.unit_vector(d, i);
                v[j] = f.int(2);
                out.push(v);
                let mut w = f.unit_vector(d, i);
                w[j] = -f.one();
                out.push(w);
            }
        }
        out.push((0..d).map(|i| f.int(i as i64 + 1)).collect());
        out
    }

    /// Jordan, ring and involution checks for this module.
    pub fn checks(&self, core: &Core, quat_division: Option<CheckRecord>) -> Result<Vec<CheckRecord>, String> {
        let mut out = Vec::new();
        let f = core.field();
        let finite = core.is_finite();

        let a0s = core.a0.nontrivial_sample();
        let a0_mode = Mode::for_count(core.a0.elements.is_some(), a0s.len());
        let mut r = Ok(());
        let mut values: Vec<Mat> = Vec::new();
        for a in &a0s {
            let m = core.rho_h(a)?;
            if !self.j.contains(m.flat()) {
                r = Err(format!("ρ(h_a) = {} is not in span J for a = {a}", m.to_text()));
                break;
            }
            if !values.contains(&m) {
                values.push(m);
            }
        }
        if r.is_ok() {
            if let Some(total) = self.j.space.elements().map(|e| e.len()) {
                r = ensure(values.len() + 1 == total, || format!("{} distinct nonzero values ρ(h_a) but |span J| = {total}", values.len()));
            }
        }
        out.push(CheckRecord::from_info("jordan.j-is-span", a0_mode, r.map(|_| format!("dim J = {}", self.j.dim()))));

        out.push(CheckRecord::from_result("jordan.closed", Mode::Exhaustive, is_jordan_closed(&self.j).map_err(|w| w.to_string())));

        let division = quat_division.unwrap_or_else(|| {
            let sample: Vec<Elem> = self.j_sample(f);
            let v = is_division_jordan(&self.j, &sample);
            let mode = match &v.mode {
                crate::jordanalg::DivisionMode::Exhaustive(_) => Mode::Exhaustive,
                crate::jordanalg::DivisionMode::Certified { sampled, .. } | crate::jordanalg::DivisionMode::Sampled(sampled) => Mode::Sampled(*sampled),
            };
            CheckRecord::from_result("jordan.division", mode, if v.holds { Ok(()) } else { Err(v.witness.unwrap_or_default()) })
        });
        out.push(division);

        let c = &self.classification;
        let info = if c.commutative {
            "J is commutative".to_string()
        } else {
            let (a, b, ab, ba) = c.pair_evidence.clone().expect("evidence");
            format!("J is noncommutative: ab = {ab}, ba = {ba} for a = {a}, b = {b}")
        };
        out.push(CheckRecord::from_info(
            "jordan.classify",
            Mode::Exhaustive,
            if c.agrees() { Ok(info) } else { Err(format!("basis and Q-operator criteria disagree: {}", c.q_evidence.clone().unwrap_or_default())) },
        ));

        let r = (|| {
            ensure(self.r.contains(&core.id_k()), || "1 is not in R".into())?;
            for g in &self.j_gens {
                ensure(self.r.contains(g), || format!("J generator {} is not in R", g.to_text()))?;
                ensure(self.s.contains(g), || format!("J generator {} is not in S", g.to_text()))?;
            }
            for b in &self.r.basis {
                ensure(self.s.contains(b), || format!("R element {} is not in S", b.to_text()))?;
                for g in &self.r.basis {
                    ensure(self.r.contains(&b.mul(g)), || "R is not closed under one more multiplication round".into())?;
                }
            }
            Ok(format!(
                "dim J = {}, dim R = {} ({} rounds), dim S = {} ({} rounds, {} generators)",
                self.j.dim(),
                self.r.dim(),
                self.r.rounds,
                self.s.dim(),
                self.s.rounds,
                self.s.gens.len()
            ))
        })();
        out.push(CheckRecord::from_info("ring.closures", self.s_mode.clone(), r));

        if c.commutative {
            let info = if self.r_equals_s() { "R = S".to_string() } else { format!("J commutative: R ≠ S (dim R = {}, dim S = {})", self.r.dim(), self.s.dim()) };
            out.push(CheckRecord::from_info("ring.r-equals-s", self.s_mode.clone(), Ok(info)));
        } else {
            out.push(CheckRecord::from_result(
                "ring.r-equals-s",
                self.s_mode.clone(),
                ensure(self.r_equals_s(), || format!("dim R = {}, dim S = {}", self.r.dim(), self.s.dim())),
            ));
        }

        let sample = self.r_sample();
        let rmode = Mode::for_count(finite, sample.len());
        let non_unit = self.non_units(&sample);
        if f.characteristic() != 2 {
            out.push(CheckRecord::from_result("ring.skewfield", rmode.clone(), non_unit.clone().map_or(Ok(()), Err)));
        } else {
            let info = match &non_unit {
                None => "R is a skewfield".to_string(),
                Some(w) => format!("characteristic 2: R is not a skewfield ({w})"),
            };
            out.push(CheckRecord::from_info("ring.skewfield", rmode.clone(), Ok(info)));
        }

        let (elems, amode) = core.a_elements();
        let r = (|| {
            let mut tested = 0;
            for b in &elems {
                let Some(x) = core.defined(core.rho_h(b))? else { continue };
                for y in [x.clone(), x.add(&core.id_k())] {
                    let Some(yi) = y.inverse() else { continue };
                    tested += 1;
                    for g in &self.r.basis {
                        ensure(self.r.contains(&yi.mul(g).mul(&y)), || format!("{} does not normalize R", y.to_text()))?;
                    }
                }
            }
            Ok(format!("{tested} units checked"))
        })();
        out.push(CheckRecord::from_info("ring.hua-normalizes-r", amode.clone(), r));

        match &self.s_alg {
            Some(s_alg) => {
                let r_basis: Vec<Elem> = self.r.basis.iter().map(|m| self.s.coords(m).expect("R ⊆ S")).collect();
                let r = (|| {
                    let mut n = 0;
                    for b in &elems {
                        let Some(x) = core.defined(core.rho_h(b))? else { continue };
                        let xs = self.s.coords(&x).ok_or("ρ(h_b) is not in S")?;
                        let v = ideal_lemma_check(s_alg, &r_basis, &xs);
                        n += 1;
                        if !v.lemma_holds() {
                            if let crate::jordanalg::IdealVerdict::HypothesisFails(_) = v {
                                continue;
                            }
                            return Err(format!("x = ρ(h_b) for b = {b}: {v:?}"));
                        }
                    }
                    Ok(format!("{n} elements x = ρ(h_b) tested"))
                })();
                out.push(CheckRecord::from_info("ring.ideal-lemma", amode.clone(), r));
            }
            None => out.push(CheckRecord::fail("ring.ideal-lemma", Mode::Exhaustive, "S basis does not span a ring".into())),
        }

        if self.r_equals_j() {
            out.push(CheckRecord::from_result(
                "ring.j-equals-r-commutative",
                Mode::Exhaustive,
                ensure(self.r_alg.is_commutative() && non_unit.is_none(), || "R = J but R is not a commutative skewfield".into()),
            ));
        } else {
            out.push(CheckRecord::skip("ring.j-equals-r-commutative", "hypothesis unmet: R != J"));
        }

        if core.eng.a_is_abelian() {
            let r = (|| {
                ensure(f.characteristic() == 2, || format!("characteristic is {}", f.characteristic()))?;
                ensure(self.r_alg.is_commutative(), || "R is not commutative".into())?;
                ensure(non_unit.is_none(), || format!("R has a nonzero non-unit: {}", non_unit.clone().unwrap_or_default()))?;
                Ok(())
            })();
            out.push(CheckRecord::from_result("ring.abelian-field", rmode.clone(), r));
        } else {
            out.push(CheckRecord::skip("ring.abelian-field", "hypothesis unmet: A is not abelian"));
        }

        out.push(self.centralizer_equalities(core, non_unit.is_none()));

        out.extend(self.star_checks(core, c.commutative)?);
        Ok(out)
    }

    fn j_sample(&self, f: PrimeField) -> Vec<Elem> {
        let mut out = self.j.basis.clone();
        let alg = self.j.alg();
        for i in 0..self.j.basis.len() {
            for j in i + 1..self.j.basis.len() {
                out.push(alg.add(&self.j.basis[i], &self.j.basis[j]));
                out.push(alg.sub(&self.j.basis[i], &alg.scale(&self.j.basis[j], &f.int(2))));
            }
        }
        out
    }

    fn centralizer_equalities(&self, core: &Core, r_division: bool) -> CheckRecord {
        let f = core.field();
        let hyp = f.characteristic() != 2 || !(self.r_alg.is_commutative() && r_division);
        let r = (|| {
            let cva = core.eng.centralizer_of_va().map_err(|e| e.to_string())?;
            let caq = core.eng.centralizer_of_quotient().map_err(|e| e.to_string())?;
            let eq1 = cva.same_as(&core.a0);
            let eq2 = caq.same_as(&core.a0);
            if hyp {
                ensure(eq1 && eq2, || format!("C_A([V,A]) = A0: {eq1}, C_A(V/C_V(A)) = A0: {eq2}"))?;
                Ok("C_A([V,A]) = A0 = C_A(V/C_V(A))".to_string())
            } else {
                Ok(format!("hypothesis unmet (R is a commutative field of characteristic 2): C_A([V,A]) = A0: {eq1}, C_A(V/C_V(A)) = A0: {eq2}"))
            }
        })();
        CheckRecord::from_info("a0.centralizer-equalities", Mode::for_count(core.is_finite(), core.a0.basis.len()), r)
    }

    fn star_checks(&self, core: &Core, commutative: bool) -> Result<Vec<CheckRecord>, String> {
        let mut out = Vec::new();
        let f = core.field();
        let r = (|| {
            for rel in &self.r.relations {
                let lhs = self.r.coords(&self.j_gens[rel.gen].mul(&self.r.element(&self.star(&self.r.f_unit(rel.left))))).ok_or("g·b* leaves R")?;
                let rhs = self.star(&rel.coeffs);
                ensure(lhs == rhs, || {
                    format!("(b{}·g{})* != g{}·b{}* along the expansion {}·g{}", rel.left + 1, rel.gen + 1, rel.gen + 1, rel.left + 1, self.r.describe_word(rel.left), rel.gen + 1)
                })?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("star.well-defined", Mode::Exhaustive, r));

        let inv = &self.set.inv;
        let mm = inv.matrix();
        out.push(CheckRecord::from_result(
            "star.involutory",
            Mode::Exhaustive,
            ensure(mm.mul(mm).is_identity() && inv.apply(&self.r_alg.one()) == self.r_alg.one(), || "** != 1 or 1* != 1".into()),
        ));
        out.push(CheckRecord::from_result("star.anti-automorphism", Mode::Exhaustive, inv.verify(&self.r_alg)));

        let a0s = core.a0.nontrivial_sample();
        let a0_mode = Mode::for_count(core.a0.elements.is_some(), a0s.len());
        let r = (|| {
            for a in &a0s {
                let x = core.rho_h(a)?;
                let y = core.rho(&core.minus_mu(&core.h(a)?))?;
                ensure(x == y, || format!("ρ(h_a^(-μ)) != ρ(h_a) for a = {a}"))?;
                let xs = self.star_mat(&x).ok_or("ρ(h_a) is not in R")?;
                ensure(xs == x, || format!("ρ(h_a)* != ρ(h_a) for a = {a}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("star.fixes-j", a0_mode, r));

        if commutative {
            out.push(CheckRecord::skip("star.hua-compatible", "branch: commutative"));
            out.push(CheckRecord::skip("star.j-hermitian", "branch: commutative"));
        } else {
            let (elems, mode) = core.a_elements();
            let r = (|| {
                for b in &elems {
                    let Some(h) = core.defined(core.h(b))? else { continue };
                    let x = core.rho(&h)?;
                    let y = core.rho(&core.minus_mu(&h))?;
                    let xs = self.star_mat(&x).ok_or_else(|| format!("ρ(h_b) is not in R for b = {b}"))?;
                    ensure(xs == y, || format!("ρ(h^(-μ)) != ρ(h)* for h = h_b, b = {b}"))?;
                }
                Ok(())
            })();
            out.push(CheckRecord::from_result("star.hua-compatible", mode, r));
            if f.characteristic() != 2 {
                let h = fixed_set_basis(&self.set.domain, inv);
                out.push(CheckRecord::from_result(
                    "star.j-hermitian",
                    Mode::Exhaustive,
                    ensure(h == self.set.k0, || format!("dim H(R,*) = {}, dim J = {}", h.dim(), self.set.k0.dim())),
                ));
            } else {
                out.push(CheckRecord::skip("star.j-hermitian", "hypothesis unmet: characteristic 2"));
            }
        }

        if f.characteristic() == 2 && !core.eng.a_is_abelian() {
            out.push(CheckRecord::from_result("star.j-ample", Mode::Exhaustive, is_ample(&self.set).map_err(|w| w.to_string())));
        } else {
            out.push(CheckRecord::skip("star.j-ample", "hypothesis unmet: characteristic is not 2 or A is abelian"));
        }
        Ok(out)
    }

    /// Linear relations among the `J` generators, as coefficient vectors.
    pub fn j_relations(&self) -> Vec<Vec<Fe>> {
        let f = self.r.field;
        let k = self.r.k;
        if self.j_gens.is_empty() {
            return vec![];
        }
        left_kernel(&Mat::from_rows(f, k * k, self.j_gens.iter().map(|m| m.flat().to_vec()).collect()))
    }
}

impl Closure {
    fn f_unit(&self, i: usize) -> Elem {
        self.field.unit_vector(self.dim(), i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_complex_unit() {
        let f = PrimeField::Q;
        let i = Mat::from_ints(f, &[&[0, 1], &[-1, 0]]);
        let c = closure(f, 2, &[i.clone()]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.words, vec![vec![], vec![0]]);
        let rel = c.relations.iter().find(|r| r.left == 1).unwrap();
        assert_eq!(rel.coeffs, vec![f.int(-1), f.int(0)]);
        assert_eq!(c.element(&rel.coeffs), i.mul(&i));
    }

    #[test]
    fn closure_of_two_quaternion_units_is_four_dimensional() {
        let f = PrimeField::Q;
        let alg = Algebra::quaternion(&f.int(-1), &f.int(-1));
        let j = alg.right_mul_matrix(&alg.basis(2));
        let k = alg.right_mul_matrix(&alg.basis(3));
        let c = closure(f, 4, &[Mat::identity(f, 4), j, k]);
        assert_eq!(c.dim(), 4);
        assert_eq!(c.rounds, 2);
    }
}

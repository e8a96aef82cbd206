//! Instance constructors: pseudo-quadratic spaces and their Witt index one
//! extensions `V = K ⊕ V̄ ⊕ K` with transvection root groups, orthogonal
//! spaces with defect, and the unipotent pair of `SL₂(J,R)`.
//!
//! Vectors over `K` are stored as lists of scalar coordinate vectors; the
//! group matrices act on the flattened prime-field coordinates.

use rand::Rng;
use thiserror::Error;

use crate::check::{ensure, CheckRecord, Mode};
use crate::field::{Fe, PrimeField};
use crate::groupcore::{small_fe, GroupError, Param, QuadMap, RankOnePair, RootFamily};
use crate::jordanalg::{InvolutorySet, JordanSubspace};
use crate::linalg::{left_kernel, vec_add, vec_is_zero, Mat, Subspace};
use crate::scalars::{Algebra, Elem, ScalarDomain};

/// A vector over the scalar domain.
pub type KVec = Vec<Elem>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("Gram matrix is not skew-hermitian: f(e{i},e{j})* != -f(e{j},e{i})")]
    NotSkewHermitian { i: usize, j: usize },
    #[error("f(e{i},e{i}) = {found} but π(e{i}) - π(e{i})* = {expected}")]
    DiagonalMismatch { i: usize, found: String, expected: String },
    #[error("isotropic: π({x}) = {value} lies in K0")]
    Isotropic { x: String, value: String },
    #[error("quadratic form is isotropic: q({x}) = 0")]
    QIsotropic { x: String },
    #[error("no defect vector with unit value: q vanishes at {x} in Def(q)")]
    NoUnitDefect { x: String },
    #[error("scalar domain must be commutative")]
    NotCommutative,
    #[error("parameter violates π(v) - t ∈ K0: {0}")]
    Constraint(String),
    #[error("bad dimensions: {0}")]
    Shape(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

pub fn flatten(x: &[Elem]) -> Vec<Fe> {
    x.iter().flat_map(|e| e.iter().cloned()).collect()
}

pub fn unflatten(v: &[Fe], d: usize) -> KVec {
    v.chunks(d).map(<[Fe]>::to_vec).collect()
}

pub fn kvec_text(alg: &Algebra, x: &[Elem]) -> String {
    let parts: Vec<String> = x.iter().map(|e| alg.pretty(e)).collect();
    format!("[{}]", parts.join(", "))
}

/// How anisotropy was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Anisotropy {
    Exhaustive { checked: usize },
    Certified { certificate: String, sampled: usize },
    Sampled { sampled: usize },
}

impl Anisotropy {
    pub fn mode(&self) -> Mode {
        match self {
            Anisotropy::Exhaustive { .. } => Mode::Exhaustive,
            Anisotropy::Certified { sampled, .. } | Anisotropy::Sampled { sampled } => Mode::Sampled(*sampled),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Anisotropy::Exhaustive { checked } => format!("anisotropic: {checked} nonzero vectors checked"),
            Anisotropy::Certified { certificate, sampled } => format!("anisotropic by certificate ({certificate}); {sampled} vectors sampled"),
            Anisotropy::Sampled { sampled } => format!("anisotropic on {sampled} sampled vectors"),
        }
    }
}

/// `(K, K₀, *)` with a pseudo-quadratic form `π̄` on `V̄ = K^m` and its
/// skew-hermitian form `f̄`, sesquilinear as `f̄(xλ, yκ) = λ* f̄(x,y) κ`.
#[derive(Clone, Debug)]
pub struct PseudoQuadraticSpace {
    pub set: InvolutorySet,
    pi_diag: Vec<Elem>,
    gram: Vec<Vec<Elem>>,
}

impl PseudoQuadraticSpace {
    pub fn new(set: InvolutorySet, pi_diag: Vec<Elem>, gram: Vec<Vec<Elem>>) -> Result<PseudoQuadraticSpace, FormError> {
        let m = pi_diag.len();
        if gram.len() != m || gram.iter().any(|r| r.len() != m) {
            return Err(FormError::Shape(format!("Gram matrix must be {m}x{m}")));
        }
        let alg = set.alg();
        for i in 0..m {
            for j in 0..m {
                if set.star(&gram[i][j]) != alg.neg(&gram[j][i]) {
                    return Err(FormError::NotSkewHermitian { i: i + 1, j: j + 1 });
                }
            }
            let expected = alg.sub(&pi_diag[i], &set.star(&pi_diag[i]));
            if gram[i][i] != expected {
                return Err(FormError::DiagonalMismatch { i: i + 1, found: alg.pretty(&gram[i][i]), expected: alg.pretty(&expected) });
            }
        }
        Ok(PseudoQuadraticSpace { set, pi_diag, gram })
    }

    pub fn m(&self) -> usize {
        self.pi_diag.len()
    }
    pub fn alg(&self) -> &Algebra {
        self.set.alg()
    }
    pub fn field(&self) -> PrimeField {
        self.set.domain.field()
    }
    pub fn d(&self) -> usize {
        self.alg().dim()
    }
    pub fn pi_diag(&self) -> &[Elem] {
        &self.pi_diag
    }
    pub fn gram(&self) -> &[Vec<Elem>] {
        &self.gram
    }
    pub fn k0(&self) -> &Subspace {
        &self.set.k0
    }

    pub fn zero_vec(&self) -> KVec {
        vec![self.alg().zero(); self.m()]
    }

    /// `f̄(x,y) = Σ xᵢ* f̄ᵢⱼ yⱼ`.
    pub fn sesq(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let alg = self.alg();
        let mut acc = alg.zero();
        for (i, xi) in x.iter().enumerate() {
            if alg.is_zero(xi) {
                continue;
            }
            let xs = self.set.star(xi);
            for (j, yj) in y.iter().enumerate() {
                if !alg.is_zero(yj) {
                    acc = alg.add(&acc, &alg.mul3(&xs, &self.gram[i][j], yj));
                }
            }
        }
        acc
    }

    /// Representative of `π̄(x)` from the left-to-right expansion
    /// `π̄(w + eᵢxᵢ) = π̄(w) + xᵢ*π̄ᵢxᵢ + f̄(w, eᵢxᵢ)`.
    pub fn pi_raw(&self, x: &[Elem]) -> Elem {
        let alg = self.alg();
        let mut acc = alg.zero();
        for i in 0..x.len() {
            if alg.is_zero(&x[i]) {
                continue;
            }
            let xs = self.set.star(&x[i]);
            acc = alg.add(&acc, &alg.mul3(&xs, &self.pi_diag[i], &x[i]));
            for j in 0..i {
                if !alg.is_zero(&x[j]) {
                    acc = alg.add(&acc, &alg.mul3(&self.set.star(&x[j]), &self.gram[j][i], &x[i]));
                }
            }
        }
        acc
    }

    /// The same expansion taken from the last coordinate to the first.
    pub fn pi_raw_reversed(&self, x: &[Elem]) -> Elem {
        let alg = self.alg();
        let mut acc = alg.zero();
        for i in (0..x.len()).rev() {
            if alg.is_zero(&x[i]) {
                continue;
            }
            let xs = self.set.star(&x[i]);
            acc = alg.add(&acc, &alg.mul3(&xs, &self.pi_diag[i], &x[i]));
            for j in i + 1..x.len() {
                if !alg.is_zero(&x[j]) {
                    acc = alg.add(&acc, &alg.mul3(&self.set.star(&x[j]), &self.gram[j][i], &x[i]));
                }
            }
        }
        acc
    }

    /// Canonical representative of `π̄(x) + K₀`.
    pub fn pq_eval(&self, x: &[Elem]) -> Elem {
        self.set.reduce(&self.pi_raw(x))
    }

    pub fn vectors(&self) -> Option<Vec<KVec>> {
        let all = self.field().all_vectors(self.m() * self.d())?;
        Some(all.into_iter().map(|mut v| {
            v.reverse();
            unflatten(&v, self.d())
        }).collect())
    }

    pub fn random_vec<R: Rng>(&self, rng: &mut R, bound: i64) -> KVec {
        (0..self.m()).map(|_| (0..self.d()).map(|_| small_fe(rng, self.field(), bound)).collect()).collect()
    }

    /// Both expansion orders give the same coset on `xs`.
    pub fn order_self_test(&self, xs: &[KVec]) -> Result<(), String> {
        for x in xs {
            let a = self.set.reduce(&self.pi_raw(x));
            let b = self.set.reduce(&self.pi_raw_reversed(x));
            ensure(a == b, || format!("orders disagree at {}: {} vs {}", kvec_text(self.alg(), x), self.alg().pretty(&a), self.alg().pretty(&b)))?;
        }
        Ok(())
    }

    /// Radical of `f̄` as a prime-field subspace of `V̄`.
    pub fn radical(&self) -> Subspace {
        let (f, m, d) = (self.field(), self.m(), self.d());
        if m == 0 {
            return Subspace::zero(f, 0);
        }
        let rows: Vec<Vec<Fe>> = (0..m * d)
            .map(|l| {
                let x = unflatten(&f.unit_vector(m * d, l), d);
                (0..m)
                    .flat_map(|j| {
                        let mut e = self.zero_vec();
                        e[j] = self.alg().one();
                        self.sesq(&x, &e)
                    })
                    .collect()
            })
            .collect();
        Subspace::span(f, m * d, left_kernel(&Mat::from_rows(f, m * d, rows)))
    }

    /// Finite domains: exhaustive. One-dimensional quaternion spaces with a
    /// skew value: structural certificate. Otherwise the sample only.
    pub fn is_anisotropic(&self, sample: &[KVec]) -> Result<Anisotropy, FormError> {
        let test = |xs: &[KVec]| -> Result<usize, FormError> {
            let mut n = 0;
            for x in xs.iter().filter(|x| x.iter().any(|e| !vec_is_zero(e))) {
                n += 1;
                let v = self.pi_raw(x);
                if self.set.in_k0(&v) {
                    return Err(FormError::Isotropic { x: kvec_text(self.alg(), x), value: self.alg().pretty(&v) });
                }
            }
            Ok(n)
        };
        if let Some(all) = self.vectors() {
            return Ok(Anisotropy::Exhaustive { checked: test(&all)? });
        }
        let sampled = test(sample)?;
        if let Some(c) = self.skew_certificate() {
            return Ok(Anisotropy::Certified { certificate: c, sampled });
        }
        Ok(Anisotropy::Sampled { sampled })
    }

    fn skew_certificate(&self) -> Option<String> {
        let d = &self.set.domain;
        if !d.is_quaternion() || self.m() != 1 {
            return None;
        }
        let alg = self.alg();
        let c = &self.pi_diag[0];
        if alg.is_zero(c) || self.set.star(c) != alg.neg(c) {
            return None;
        }
        let plus = self.set.inv.matrix().add(&Mat::identity(d.field(), d.dim()));
        let skew = Subspace::span(d.field(), d.dim(), left_kernel(&plus));
        if !skew.intersect(&self.set.k0).is_zero() {
            return None;
        }
        d.norm_certificate().ok()?;
        Some(format!(
            "values x*({})x are skew, Skew ∩ K0 = 0, and the norm form is positive definite",
            alg.pretty(c)
        ))
    }
}

/// `V = K ⊕ V̄ ⊕ K` with `π(r,x,s) = s*r + π̄(x) + K₀`.
#[derive(Clone, Debug)]
pub struct ExtendedSpace {
    pub base: PseudoQuadraticSpace,
    pub anisotropy: Anisotropy,
}

/// Isotropic one-spaces of a finite extended space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineCount {
    pub lines: usize,
    pub isotropic: usize,
    pub mismatch: Option<String>,
}

pub fn extend_witt1(space: PseudoQuadraticSpace, sample: &[KVec]) -> Result<ExtendedSpace, FormError> {
    let anisotropy = space.is_anisotropic(sample)?;
    Ok(ExtendedSpace { base: space, anisotropy })
}

impl ExtendedSpace {
    pub fn alg(&self) -> &Algebra {
        self.base.alg()
    }
    pub fn field(&self) -> PrimeField {
        self.base.field()
    }
    pub fn d(&self) -> usize {
        self.base.d()
    }
    pub fn m(&self) -> usize {
        self.base.m()
    }
    /// Prime-field dimension of `V`.
    pub fn n(&self) -> usize {
        (self.m() + 2) * self.d()
    }

    pub fn split(&self, z: &[Fe]) -> (Elem, KVec, Elem) {
        let d = self.d();
        let r = z[..d].to_vec();
        let x = unflatten(&z[d..z.len() - d], d);
        let s = z[z.len() - d..].to_vec();
        (r, x, s)
    }

    pub fn join(&self, r: &[Fe], x: &[Elem], s: &[Fe]) -> Vec<Fe> {
        let mut v = r.to_vec();
        v.extend(flatten(x));
        v.extend(s.iter().cloned());
        v
    }

    /// Canonical representative of `π(z)`.
    pub fn pi(&self, z: &[Fe]) -> Elem {
        let (r, x, s) = self.split(z);
        let alg = self.alg();
        let v = alg.add(&alg.mul(&self.base.set.star(&s), &r), &self.base.pi_raw(&x));
        self.base.set.reduce(&v)
    }

    /// `g((r,x,s),(t,y,u)) = u*r - t*s + f̄(x,y)`.
    pub fn g(&self, z: &[Fe], w: &[Fe]) -> Elem {
        let (r, x, s) = self.split(z);
        let (t, y, u) = self.split(w);
        let alg = self.alg();
        let st = &self.base.set;
        let a = alg.sub(&alg.mul(&st.star(&u), &r), &alg.mul(&st.star(&t), &s));
        alg.add(&a, &self.base.sesq(&x, &y))
    }

    /// Matrix of a map given on `(r, x, s)`: rows are images of basis vectors.
    pub fn matrix_of(&self, f: impl Fn(&Elem, &KVec, &Elem) -> (Elem, KVec, Elem)) -> Mat {
        let n = self.n();
        let fld = self.field();
        let rows = (0..n)
            .map(|i| {
                let (r, x, s) = self.split(&fld.unit_vector(n, i));
                let (a, b, c) = f(&r, &x, &s);
                self.join(&a, &b, &c)
            })
            .collect();
        Mat::from_rows(fld, n, rows)
    }

    pub fn valid(&self, v: &[Elem], t: &[Fe]) -> bool {
        self.base.set.in_k0(&self.alg().sub(&self.base.pi_raw(v), t))
    }

    /// `α_(v,t): (r,x,s) ↦ (r - f̄(v,x) + t*s, x + vs, s)` without the constraint.
    pub fn alpha_unchecked(&self, v: &[Elem], t: &[Fe]) -> Mat {
        let alg = self.alg().clone();
        let ts = self.base.set.star(t);
        self.matrix_of(|r, x, s| {
            let r2 = alg.add(&alg.sub(r, &self.base.sesq(v, x)), &alg.mul(&ts, s));
            let x2 = x.iter().zip(v).map(|(xi, vi)| alg.add(xi, &alg.mul(vi, s))).collect();
            (r2, x2, s.clone())
        })
    }

    /// `β_(t,v): (r,x,s) ↦ (r, x - vr, s - f̄(v,x) - t*r)` without the constraint.
    pub fn beta_unchecked(&self, t: &[Fe], v: &[Elem]) -> Mat {
        let alg = self.alg().clone();
        let ts = self.base.set.star(t);
        self.matrix_of(|r, x, s| {
            let x2 = x.iter().zip(v).map(|(xi, vi)| alg.sub(xi, &alg.mul(vi, r))).collect();
            let s2 = alg.sub(&alg.sub(s, &self.base.sesq(v, x)), &alg.mul(&ts, r));
            (r.clone(), x2, s2)
        })
    }

    pub fn alpha(&self, v: &[Elem], t: &[Fe]) -> Result<Mat, FormError> {
        if !self.valid(v, t) {
            return Err(FormError::Constraint(format!("v = {}, t = {}", kvec_text(self.alg(), v), self.alg().pretty(t))));
        }
        Ok(self.alpha_unchecked(v, t))
    }

    pub fn beta(&self, t: &[Fe], v: &[Elem]) -> Result<Mat, FormError> {
        if !self.valid(v, t) {
            return Err(FormError::Constraint(format!("v = {}, t = {}", kvec_text(self.alg(), v), self.alg().pretty(t))));
        }
        Ok(self.beta_unchecked(t, v))
    }

    /// `ω: (r,x,s) ↦ (-s, x, r)`.
    pub fn omega(&self) -> Mat {
        let alg = self.alg().clone();
        self.matrix_of(|r, x, s| (alg.neg(s), x.clone(), r.clone()))
    }

    fn family(&self, name: &str, alpha_side: bool) -> Result<RootFamily, FormError> {
        let (f, m, d) = (self.field(), self.m(), self.d());
        let alg = self.alg();
        let zero_v = self.base.zero_vec();
        let n_of = |v: &KVec, t: &Elem| {
            let g = if alpha_side { self.alpha_unchecked(v, t) } else { self.beta_unchecked(t, v) };
            g.minus_identity()
        };
        let u_mats = (0..m * d).map(|l| n_of(&unflatten(&f.unit_vector(m * d, l), d), &alg.zero())).collect();
        let c_mats = (0..d).map(|j| n_of(&zero_v, &alg.basis(j))).collect();
        let theta = QuadMap::from_fn(f, m * d, d, |u| self.base.pi_raw(&unflatten(u, d)));
        Ok(RootFamily::new(name, f, self.n(), u_mats, c_mats, theta, self.base.k0().clone())?)
    }

    /// `A = {α_(v,t)}` and `B = {β_(t,v)}` with parameters `u = v`, `c = t`.
    pub fn root_families(&self) -> Result<RankOnePair, FormError> {
        Ok(RankOnePair { a: self.family("A", true)?, b: self.family("B", false)? })
    }

    pub fn param_parts(&self, p: &Param) -> (KVec, Elem) {
        (unflatten(&p.u, self.d()), p.c.clone())
    }

    /// `C_V(A) = {(r, v, 0) : v ∈ rad f̄}`.
    pub fn predicted_cva(&self) -> Subspace {
        let (f, n, d) = (self.field(), self.n(), self.d());
        let mut vecs: Vec<Vec<Fe>> = (0..d).map(|i| f.unit_vector(n, i)).collect();
        for b in self.base.radical().basis() {
            let mut v = f.zeros(d);
            v.extend(b.iter().cloned());
            v.extend(f.zeros(d));
            vecs.push(v);
        }
        Subspace::span(f, n, vecs)
    }

    /// Every `π(zg) = π(z)` for basis vectors and their pairwise sums.
    pub fn preserves_pi(&self, g: &Mat) -> Result<(), String> {
        let (f, n) = (self.field(), self.n());
        let basis: Vec<Vec<Fe>> = (0..n).map(|i| f.unit_vector(n, i)).collect();
        let mut zs = basis.clone();
        for i in 0..n {
            for j in i + 1..n {
                zs.push(vec_add(&basis[i], &basis[j]));
            }
        }
        for z in &zs {
            let a = self.pi(z);
            let b = self.pi(&g.vec_mul(z));
            ensure(a == b, || format!("π(z) = {} but π(zg) = {} at z = {}", self.alg().pretty(&a), self.alg().pretty(&b), crate::linalg::vec_text(z)))?;
        }
        Ok(())
    }

    /// `(1,0,0)K` and `(r,x,1)K` with `r + π̄(x) ∈ K₀`.
    pub fn predicted_isotropic(&self, z: &[Fe]) -> bool {
        let (r, x, s) = self.split(z);
        let alg = self.alg();
        if alg.is_zero(&s) {
            return x.iter().all(|e| alg.is_zero(e)) && !alg.is_zero(&r);
        }
        let si = alg.inverse(&s).expect("division ring");
        let r1 = alg.mul(&r, &si);
        let x1: KVec = x.iter().map(|e| alg.mul(e, &si)).collect();
        self.base.set.in_k0(&alg.add(&r1, &self.base.pi_raw(&x1)))
    }

    /// Enumerates all one-spaces over a finite commutative `K`.
    pub fn isotropic_lines(&self) -> Option<LineCount> {
        let alg = self.alg();
        let k = self.m() + 2;
        let vecs = self.field().all_vectors(self.n())?;
        let mut lines = 0;
        let mut iso = 0;
        let mut mismatch = None;
        for z in vecs {
            let kz = unflatten(&z, self.d());
            let Some(last) = kz.iter().rposition(|e| !alg.is_zero(e)) else { continue };
            if !alg.is_zero(&alg.sub(&kz[last], &alg.one())) || kz.len() != k {
                continue;
            }
            lines += 1;
            let actual = vec_is_zero(&self.pi(&z));
            if actual {
                iso += 1;
            }
            if actual != self.predicted_isotropic(&z) && mismatch.is_none() {
                mismatch = Some(format!("line {} isotropic = {actual}", kvec_text(alg, &kz)));
            }
        }
        Some(LineCount { lines, isotropic: iso, mismatch })
    }

    /// Sampled form of the line characterization: random vectors, constructed
    /// isotropic vectors `(k - π̄(x), x, 1)λ`, and `(r, x, 0)`.
    pub fn witt_sample<R: Rng>(&self, rng: &mut R, n: usize) -> Result<usize, String> {
        let alg = self.alg();
        let f = self.field();
        let d = self.d();
        let rand_k = |rng: &mut R| -> Elem { (0..d).map(|_| small_fe(rng, f, 3)).collect() };
        let mut count = 0;
        let mut check = |z: Vec<Fe>, expect: Option<bool>| -> Result<(), String> {
            if vec_is_zero(&z) {
                return Ok(());
            }
            count += 1;
            let actual = vec_is_zero(&self.pi(&z));
            let predicted = self.predicted_isotropic(&z);
            ensure(actual == predicted && expect.is_none_or(|e| e == actual), || {
                format!("z = {}: isotropic {actual}, predicted {predicted}", crate::linalg::vec_text(&z))
            })
        };
        for _ in 0..n {
            let x = self.base.random_vec(rng, 3);
            let r = rand_k(rng);
            let s = rand_k(rng);
            check(self.join(&r, &x, &s), None)?;
            let kc: Vec<Fe> = (0..self.base.k0().dim()).map(|_| small_fe(rng, f, 3)).collect();
            let k0 = self.base.k0().from_coords(&kc);
            let r = alg.sub(&k0, &self.base.pi_raw(&x));
            let mut lam = rand_k(rng);
            if alg.is_zero(&lam) {
                lam = alg.one();
            }
            let scaled: KVec = x.iter().map(|e| alg.mul(e, &lam)).collect();
            check(self.join(&alg.mul(&r, &lam), &scaled, &lam), Some(true))?;
            if x.iter().any(|e| !alg.is_zero(e)) {
                check(self.join(&rand_k(rng), &x, &alg.zero()), Some(false))?;
            }
        }
        check(self.join(&alg.one(), &self.base.zero_vec(), &alg.zero()), Some(true))?;
        Ok(count)
    }

    /// Form and transvection identities of the extended space.
    pub fn law_checks<R: Rng>(&self, pair: &RankOnePair, rng: &mut R, samples: usize) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let (f, n) = (self.field(), self.n());
        let alg = self.alg();
        let finite = f.is_finite();

        let r = (|| {
            for i in 0..n {
                for j in 0..n {
                    let (z, w) = (f.unit_vector(n, i), f.unit_vector(n, j));
                    let lhs = self.base.set.star(&self.g(&z, &w));
                    ensure(lhs == alg.neg(&self.g(&w, &z)), || format!("g(e{},e{})* != -g(e{},e{})", i + 1, j + 1, j + 1, i + 1))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("form.gram-skew-hermitian", Mode::Exhaustive, r));

        let xs: Vec<KVec> = match self.base.vectors() {
            Some(v) => v,
            None => (0..samples).map(|_| self.base.random_vec(rng, 4)).collect(),
        };
        out.push(CheckRecord::from_result("form.pi-order-independent", Mode::for_count(finite, xs.len()), self.base.order_self_test(&xs)));

        let params = pair.a.span_params();
        let r = (|| {
            for p in &params {
                for q in &params {
                    let (v, t) = self.param_parts(p);
                    let (w, u) = self.param_parts(q);
                    let lhs = self.alpha_unchecked(&v, &t).mul(&self.alpha_unchecked(&w, &u));
                    let vw: KVec = v.iter().zip(&w).map(|(a, b)| alg.add(a, b)).collect();
                    let tu = alg.add(&alg.add(&t, &u), &self.base.sesq(&v, &w));
                    ensure(lhs == self.alpha_unchecked(&vw, &tu), || format!("α{p}·α{q} != α(v+w, t+u+f(v,w))"))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("transvection.composition", Mode::Exhaustive, r));

        let r = (|| {
            for g in pair.a.span_mats().iter().chain(&pair.b.span_mats()) {
                self.preserves_pi(g)?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("transvection.preserves-form", Mode::Exhaustive, r));

        let om = self.omega();
        let omi = om.inverse().expect("invertible");
        let r = (|| {
            for p in &params {
                let (v, t) = self.param_parts(p);
                let lhs = self.beta_unchecked(&t, &v);
                ensure(lhs == omi.mul(&self.alpha_unchecked(&v, &t)).mul(&om), || format!("β != ω⁻¹αω at {p}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("transvection.beta-conjugate", Mode::Exhaustive, r));

        match self.isotropic_lines() {
            Some(lc) => out.push(CheckRecord::from_info(
                "form.isotropic-lines",
                Mode::Exhaustive,
                match lc.mismatch {
                    None => Ok(format!("{} isotropic one-spaces among {}", lc.isotropic, lc.lines)),
                    Some(w) => Err(w),
                },
            )),
            None => {
                let r = self.witt_sample(rng, samples);
                let n = *r.as_ref().unwrap_or(&0);
                out.push(CheckRecord::from_info("form.isotropic-lines", Mode::Sampled(n), r.map(|n| format!("{n} vectors checked"))));
            }
        }
        out
    }
}

/// Quadratic space `(K, L₀, q)` over a commutative `K`, `q(v) = Σ_{i≤j} cᵢⱼ vᵢvⱼ`.
#[derive(Clone, Debug)]
pub struct OrthogonalSpace {
    pub domain: ScalarDomain,
    l: usize,
    coeffs: Vec<Vec<Elem>>,
    /// `Def(q)`, a prime-field subspace of `L₀`.
    pub def: Subspace,
    /// `K₀ = q(Def(q))` after normalization.
    pub k0: Subspace,
    /// Defect vector with `q(e) = 1` after normalization.
    pub e: Vec<Fe>,
    /// A nonzero `v` with `q(v) = 0`, if one exists.
    pub isotropy: Option<Vec<Fe>>,
}

impl OrthogonalSpace {
    /// Builds the space, normalizes `q` by `q(e)⁻¹`, and computes `Def(q)` and `K₀`.
    pub fn new(domain: ScalarDomain, coeffs: Vec<Vec<Elem>>) -> Result<OrthogonalSpace, FormError> {
        let alg = domain.alg().clone();
        if !alg.is_commutative() {
            return Err(FormError::NotCommutative);
        }
        let l = coeffs.len();
        if coeffs.iter().any(|r| r.len() != l) {
            return Err(FormError::Shape(format!("q coefficients must be {l}x{l}")));
        }
        let f = domain.field();
        let d = domain.dim();
        let mut sp = OrthogonalSpace {
            domain,
            l,
            coeffs,
            def: Subspace::zero(f, l * d),
            k0: Subspace::zero(f, d),
            e: Vec::new(),
            isotropy: None,
        };
        let rows: Vec<Vec<Fe>> = (0..l * d)
            .map(|i| {
                let v = f.unit_vector(l * d, i);
                (0..l).flat_map(|j| sp.polar(&v, &f.unit_vector(l * d, j * d))).collect()
            })
            .collect();
        sp.def = Subspace::span(f, l * d, left_kernel(&Mat::from_rows(f, l * d, rows)));

        let iso = |sp: &OrthogonalSpace, space: &Subspace| -> Option<Vec<Fe>> {
            space.elements()?.into_iter().find(|v| !vec_is_zero(v) && vec_is_zero(&sp.q(v)))
        };
        if let Some(w) = iso(&sp, &sp.def) {
            return Err(FormError::NoUnitDefect { x: crate::linalg::vec_text(&w) });
        }
        let full = Subspace::full(f, l * d);
        sp.isotropy = iso(&sp, &full);
        if sp.def.is_zero() {
            if let Some(w) = &sp.isotropy {
                return Err(FormError::QIsotropic { x: crate::linalg::vec_text(w) });
            }
            sp.k0 = Subspace::zero(f, d);
            return Ok(sp);
        }
        let e = sp.def.basis()[0].clone();
        let qe = sp.q(&e);
        let inv = alg.inverse(&qe).ok_or_else(|| FormError::NoUnitDefect { x: crate::linalg::vec_text(&e) })?;
        for row in sp.coeffs.iter_mut() {
            for c in row.iter_mut() {
                *c = alg.mul(c, &inv);
            }
        }
        sp.e = e;
        let mut vals = Vec::new();
        for b in sp.def.basis() {
            let qb = sp.q(b);
            for a in alg.basis_all() {
                vals.push(alg.mul(&alg.mul(&a, &a), &qb));
            }
        }
        sp.k0 = Subspace::span(f, d, vals);
        Ok(sp)
    }

    pub fn alg(&self) -> &Algebra {
        self.domain.alg()
    }
    pub fn field(&self) -> PrimeField {
        self.domain.field()
    }
    pub fn d(&self) -> usize {
        self.domain.dim()
    }
    pub fn l(&self) -> usize {
        self.l
    }
    /// Prime-field dimension of `L̄₀ = L₀/Def(q)`.
    pub fn lbar_dim(&self) -> usize {
        self.l * self.d() - self.def.dim()
    }
    /// Prime-field dimension of `V = K ⊕ L̄₀ ⊕ K`.
    pub fn n(&self) -> usize {
        2 * self.d() + self.lbar_dim()
    }

    /// `q(v)` for `v` in flattened coordinates of `L₀`.
    pub fn q(&self, v: &[Fe]) -> Elem {
        let alg = self.alg();
        let x = unflatten(v, self.d());
        let mut acc = alg.zero();
        for i in 0..self.l {
            for j in i..self.l {
                if !alg.is_zero(&x[i]) && !alg.is_zero(&x[j]) {
                    acc = alg.add(&acc, &alg.mul3(&self.coeffs[i][j], &x[i], &x[j]));
                }
            }
        }
        acc
    }

    /// `f(v,w) = q(v+w) - q(v) - q(w)`.
    pub fn polar(&self, v: &[Fe], w: &[Fe]) -> Elem {
        let alg = self.alg();
        alg.sub(&alg.sub(&self.q(&vec_add(v, w)), &self.q(v)), &self.q(w))
    }

    /// `Q` takes values in `K/K₀` when `Def(q) ≠ 0`, otherwise in `K`.
    pub fn q_target(&self) -> &'static str {
        if self.def.is_zero() {
            "K"
        } else {
            "K/K0"
        }
    }

    pub fn project(&self, v: &[Fe]) -> Vec<Fe> {
        self.def.quotient_coords(v)
    }

    pub fn lift(&self, wbar: &[Fe]) -> Vec<Fe> {
        crate::linalg::lin_comb(self.field(), self.l * self.d(), wbar, &self.def.complement_basis())
    }

    /// `v̄·λ` on `L̄₀`.
    fn lbar_scale(&self, wbar: &[Fe], lam: &[Fe]) -> Vec<Fe> {
        let alg = self.alg();
        let x = unflatten(&self.lift(wbar), self.d());
        let y: KVec = x.iter().map(|e| alg.mul(e, lam)).collect();
        self.project(&flatten(&y))
    }

    fn split(&self, z: &[Fe]) -> (Elem, Vec<Fe>, Elem) {
        let d = self.d();
        (z[..d].to_vec(), z[d..z.len() - d].to_vec(), z[z.len() - d..].to_vec())
    }

    fn join(&self, x: &[Fe], w: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let mut v = x.to_vec();
        v.extend(w.iter().cloned());
        v.extend(y.iter().cloned());
        v
    }

    fn matrix_of(&self, f: impl Fn(&Elem, &Vec<Fe>, &Elem) -> (Elem, Vec<Fe>, Elem)) -> Mat {
        let n = self.n();
        let fld = self.field();
        let rows = (0..n)
            .map(|i| {
                let (x, w, y) = self.split(&fld.unit_vector(n, i));
                let (a, b, c) = f(&x, &w, &y);
                self.join(&a, &b, &c)
            })
            .collect();
        Mat::from_rows(fld, n, rows)
    }

    /// `Q(x, w̄, y) = xy ± q(w)` reduced modulo `K₀`.
    pub fn big_q(&self, z: &[Fe]) -> Elem {
        let alg = self.alg();
        let (x, w, y) = self.split(z);
        let qw = self.q(&self.lift(&w));
        let xy = alg.mul(&x, &y);
        let v = if self.def.is_zero() { alg.sub(&xy, &qw) } else { alg.add(&xy, &qw) };
        self.k0.reduce(&v)
    }

    /// Linear part of `α_v` and the `x·c` part carrying `q(v)`.
    fn alpha_parts(&self, v: &[Fe], c: &[Fe]) -> Mat {
        let alg = self.alg().clone();
        let vbar = self.project(v);
        self.matrix_of(|x, w, y| {
            let w2 = vec_add(w, &self.lbar_scale(&vbar, x));
            let y2 = alg.add(&alg.add(y, &self.polar(&self.lift(w), v)), &alg.mul(x, c));
            (x.clone(), w2, y2)
        })
    }

    fn beta_parts(&self, v: &[Fe], c: &[Fe]) -> Mat {
        let alg = self.alg().clone();
        let vbar = self.project(v);
        self.matrix_of(|x, w, y| {
            let x2 = alg.add(&alg.add(x, &self.polar(&self.lift(w), v)), &alg.mul(c, y));
            let w2 = vec_add(w, &self.lbar_scale(&vbar, y));
            (x2, w2, y.clone())
        })
    }

    /// `α_v: (x,w̄,y) ↦ (x, w̄ + v̄x, y + f(w̄,v̄) + xq(v))`.
    pub fn alpha(&self, v: &[Fe]) -> Mat {
        self.alpha_parts(v, &self.q(v))
    }

    /// `β_v: (x,w̄,y) ↦ (x + f(w̄,v̄) + q(v)y, w̄ + v̄y, y)`.
    pub fn beta(&self, v: &[Fe]) -> Mat {
        self.beta_parts(v, &self.q(v))
    }

    /// Root groups with parameters `u = v ∈ L₀`, `c = q(v)`.
    pub fn root_families(&self) -> Result<RankOnePair, FormError> {
        let (f, l, d) = (self.field(), self.l, self.d());
        let alg = self.alg();
        let zc = alg.zero();
        let zv = f.zeros(l * d);
        let theta = QuadMap::from_fn(f, l * d, d, |v| self.q(v));
        let build = |name: &str, parts: &dyn Fn(&[Fe], &[Fe]) -> Mat| -> Result<RootFamily, FormError> {
            let u = (0..l * d).map(|i| parts(&f.unit_vector(l * d, i), &zc).minus_identity()).collect();
            let c = (0..d).map(|j| parts(&zv, &alg.basis(j)).minus_identity()).collect();
            Ok(RootFamily::new(name, f, self.n(), u, c, theta.clone(), Subspace::zero(f, d))?)
        };
        Ok(RankOnePair {
            a: build("A", &|v, c| self.alpha_parts(v, c))?,
            b: build("B", &|v, c| self.beta_parts(v, c))?,
        })
    }

    pub fn vectors(&self) -> Option<Vec<Vec<Fe>>> {
        self.field().all_vectors(self.l * self.d())
    }

    /// Elements of `A` indexed by `v ∈ L₀`, deduplicated.
    pub fn alpha_elements(&self) -> Option<Vec<(Vec<Fe>, Mat)>> {
        let mut out: Vec<(Vec<Fe>, Mat)> = Vec::new();
        for v in self.vectors()? {
            let m = self.alpha(&v);
            if !out.iter().any(|(_, x)| *x == m) {
                out.push((v, m));
            }
        }
        Some(out)
    }

    /// Form and group-law identities of the orthogonal instance.
    pub fn law_checks(&self, pair: &RankOnePair) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let (f, n) = (self.field(), self.n());
        let vs = self.vectors();
        let mode = Mode::for_count(vs.is_some(), 0);
        let vs = vs.unwrap_or_else(|| (0..self.l * self.d()).map(|i| f.unit_vector(self.l * self.d(), i)).collect());
        let r = (|| {
            for v in &vs {
                for w in &vs {
                    let lhs = self.alpha(v).mul(&self.alpha(w));
                    ensure(lhs == self.alpha(&vec_add(v, w)), || {
                        format!("α_v α_w != α_(v+w) at v = {}, w = {}", crate::linalg::vec_text(v), crate::linalg::vec_text(w))
                    })?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("orth.alpha-additive", mode.clone(), r));

        let basis: Vec<Vec<Fe>> = (0..n).map(|i| f.unit_vector(n, i)).collect();
        let mut zs = basis.clone();
        for i in 0..n {
            for j in i + 1..n {
                zs.push(vec_add(&basis[i], &basis[j]));
            }
        }
        let r = (|| {
            for g in pair.a.span_mats().iter().chain(&pair.b.span_mats()) {
                for z in &zs {
                    ensure(self.big_q(z) == self.big_q(&g.vec_mul(z)), || format!("Q not preserved at z = {}", crate::linalg::vec_text(z)))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_info("orth.preserves-form", Mode::Exhaustive, r.map(|_| format!("Q takes values in {}", self.q_target()))));
        out
    }
}

/// `A = {(x,y) ↦ (x + y·a, y)}`, `B = {(x,y) ↦ (x, x·b + y)}` for `a, b ∈ J`
/// acting on `V = R²`; parameters are coordinates in the basis of `J`.
pub fn sl2jr_build(j: &JordanSubspace) -> Result<RankOnePair, FormError> {
    let alg = j.alg();
    let f = alg.field();
    let d = alg.dim();
    let n = 2 * d;
    let k = j.basis.len();
    let mat = |lower: bool, a: &Elem| {
        let rows = (0..n)
            .map(|i| {
                let z = f.unit_vector(n, i);
                let (x, y) = (z[..d].to_vec(), z[d..].to_vec());
                let (x2, y2) = if lower { (alg.mul(&y, a), alg.zero()) } else { (alg.zero(), alg.mul(&x, a)) };
                let mut v = x2;
                v.extend(y2);
                v
            })
            .collect();
        Mat::from_rows(f, n, rows)
    };
    let fam = |name: &str, lower: bool| -> Result<RootFamily, FormError> {
        let u = j.basis.iter().map(|b| mat(lower, b)).collect();
        Ok(RootFamily::new(name, f, n, u, vec![], QuadMap::zero(f, k, 0), Subspace::zero(f, 0))?)
    };
    Ok(RankOnePair { a: fam("A", true)?, b: fam("B", false)? })
}

/// `V ⊕ V` with both root groups acting diagonally.
pub fn doubled(pair: &RankOnePair) -> Result<RankOnePair, FormError> {
    let dbl = |fam: &RootFamily| -> Result<RootFamily, FormError> {
        let d = |ms: &[Mat]| ms.iter().map(|m| Mat::block_diag(&[m.clone(), m.clone()])).collect();
        let theta = QuadMap::from_fn(fam.field(), fam.du(), fam.dc(), |u| fam.theta(u));
        let mut out = RootFamily::new(&fam.name, fam.field(), 2 * fam.n(), d(fam.u_mats()), d(fam.c_mats()), theta, fam.c0().clone())?;
        out.sample = fam.sample.clone();
        Ok(out)
    };
    Ok(RankOnePair { a: dbl(&pair.a)?, b: dbl(&pair.b)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupcore::{cubic_verify, Engine};
    use crate::jordanalg::{Ambient, InvolutorySet};
    use crate::scalars::{domain_make, fixed_set_basis, DomainSpec, Involution, InvolutionSpec};

    fn su3_f4() -> ExtendedSpace {
        let d = domain_make(&DomainSpec::FiniteField { p: 2, modulus: vec![1, 1, 1] }).unwrap();
        let inv = Involution::build(&d, &InvolutionSpec::FrobeniusPower(2)).unwrap();
        let k0 = fixed_set_basis(&d, &inv).basis().to_vec();
        let alg = d.alg().clone();
        let set = InvolutorySet::new(d, k0, inv);
        let w = alg.from_ints(&[0, 1]);
        let space = PseudoQuadraticSpace::new(set, vec![w], vec![vec![alg.one()]]).unwrap();
        extend_witt1(space, &[]).unwrap()
    }

    #[test]
    fn f4_pi_values_and_anisotropy() {
        let ext = su3_f4();
        let alg = ext.alg().clone();
        assert_eq!(ext.base.pq_eval(&[alg.one()]), alg.from_ints(&[0, 1]));
        assert_eq!(ext.base.pq_eval(&[alg.zero()]), alg.zero());
        assert_eq!(ext.anisotropy, Anisotropy::Exhaustive { checked: 3 });
    }

    #[test]
    fn norm_form_is_isotropic_control() {
        let d = domain_make(&DomainSpec::FiniteField { p: 2, modulus: vec![1, 1, 1] }).unwrap();
        let inv = Involution::build(&d, &InvolutionSpec::FrobeniusPower(2)).unwrap();
        let k0 = fixed_set_basis(&d, &inv).basis().to_vec();
        let alg = d.alg().clone();
        let set = InvolutorySet::new(d, k0, inv);
        let space = PseudoQuadraticSpace::new(set, vec![alg.one()], vec![vec![alg.zero()]]).unwrap();
        match extend_witt1(space, &[]) {
            Err(FormError::Isotropic { x, .. }) => assert_eq!(x, "[1]"),
            other => panic!("expected isotropic, got {other:?}"),
        }
    }

    #[test]
    fn f4_isotropic_line_count_matches_enumeration() {
        let ext = su3_f4();
        let lc = ext.isotropic_lines().unwrap();
        assert_eq!(lc.lines, 21);
        assert_eq!(lc.mismatch, None);
        // s = 1: r ∈ π̄(x) + F₂ for each of 4 values of x, plus the point (1,0,0).
        assert_eq!(lc.isotropic, 9);
    }

    #[test]
    fn f4_transvections_form_rank_one_pair() {
        let ext = su3_f4();
        let pair = ext.root_families().unwrap();
        assert_eq!(pair.a.order(), Some(8));
        assert_eq!(cubic_verify(&pair).label(), "cubic");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for rec in ext.law_checks(&pair, &mut rng, 5) {
            assert!(rec.passed(), "{rec:?}");
        }
        let eng = Engine::new(pair);
        assert_eq!(eng.cva, ext.predicted_cva());
        // The Moufang set on 9 points is sharply 2-transitive, so G itself is not special.
        let special = eng.a().nontrivial_sample().0.iter().all(|(_, a)| {
            let b = eng.find_b(a).unwrap();
            let bi = eng.find_b(&a.inverse().unwrap()).unwrap();
            b.mat.inverse().unwrap() == bi.mat
        });
        assert!(!special);
        let a0 = eng.a0().unwrap();
        let b0 = eng.b0().unwrap();
        for a in a0.nontrivial_sample() {
            let b = eng.find_b(&a).unwrap().mat;
            assert!(b0.contains(&b));
            assert_eq!(eng.find_b(&a.inverse().unwrap()).unwrap().mat, b.inverse().unwrap());
        }
        assert_eq!(eng.a0().unwrap().order(), Some(2));
    }

    use rand::SeedableRng;

    fn orth_f2() -> OrthogonalSpace {
        let d = domain_make(&DomainSpec::PrimeField(2)).unwrap();
        let alg = d.alg().clone();
        let c = |x: i64| alg.from_ints(&[x]);
        let coeffs = vec![vec![c(1), c(1), c(0)], vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)]];
        OrthogonalSpace::new(d, coeffs).unwrap()
    }

    #[test]
    fn orth_defect_and_group() {
        let sp = orth_f2();
        let f = PrimeField::Fp(2);
        assert_eq!(sp.def.basis(), &[vec![f.zero(), f.zero(), f.one()]]);
        assert_eq!(sp.k0.dim(), 1);
        assert_eq!(sp.n(), 4);
        assert_eq!(sp.q_target(), "K/K0");
        assert!(sp.isotropy.is_some());
        let pair = sp.root_families().unwrap();
        assert_eq!(pair.a.order(), Some(8));
        for (_, m) in pair.a.elements().unwrap() {
            assert!(m.mul(m).is_identity());
        }
        for rec in sp.law_checks(&pair) {
            assert!(rec.passed(), "{rec:?}");
        }
        assert_eq!(cubic_verify(&pair).label(), "cubic");
        let eng = Engine::new(pair);
        for (v, a) in sp.alpha_elements().unwrap() {
            if a.is_identity() {
                continue;
            }
            assert_eq!(eng.find_b(&a).is_ok(), !vec_is_zero(&sp.q(&v)), "v = {v:?}");
        }
        assert_eq!(eng.a0().unwrap().order(), Some(2));
    }

    #[test]
    fn sl2_over_hamilton_quaternions() {
        let d = domain_make(&DomainSpec::Quaternion { a: (-1, 1), b: (-1, 1) }).unwrap();
        let alg = d.alg().clone();
        let j = JordanSubspace::new(Ambient::Domain(d), vec![alg.from_ints(&[1, 0, 0, 0]), alg.from_ints(&[0, 0, 1, 0]), alg.from_ints(&[0, 0, 0, 1])]);
        let pair = sl2jr_build(&j).unwrap();
        assert_eq!(cubic_verify(&pair).label(), "quadratic");
        let eng = Engine::new(pair);
        for p in [[1, 0, 0], [0, 1, 2], [3, -1, 1]] {
            let par = Param { u: p.iter().map(|&x| PrimeField::Q.int(x)).collect(), c: vec![] };
            let a = eng.a().matrix(&par);
            let b = eng.find_b(&a).unwrap();
            assert_eq!(eng.find_a(&b.mat).unwrap().mat, a);
        }
    }
}

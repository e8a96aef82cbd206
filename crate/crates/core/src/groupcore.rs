//! Group-action engine: parametrized root groups acting on the right of a
//! module over a prime field, commutator calculus on subspaces, and the rank
//! one machinery `b(a)`, `μ_a`, `h_a`, `A₀`.

use std::collections::HashSet;
use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::check::{ensure, CheckRecord, Mode};
use crate::field::{Fe, PrimeField};
use crate::linalg::{left_kernel, solve_left, vec_add, vec_is_zero, vec_text, Mat, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("b(a) is undefined for the identity")]
    Identity,
    #[error("no partner element: {0}")]
    NoPartner(String),
    #[error("partner is not unique: {0} candidates pass")]
    NonUnique(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("element is not in root group {0}")]
    NotMember(String),
}

/// Root group parameter: `u` is the linear part, `c` the central part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Param {
    pub u: Vec<Fe>,
    pub c: Vec<Fe>,
}

impl Param {
    pub fn flat(&self) -> Vec<Fe> {
        let mut v = self.u.clone();
        v.extend(self.c.iter().cloned());
        v
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u={}, c={})", vec_text(&self.u), vec_text(&self.c))
    }
}

/// A homogeneous quadratic map `F^du → F^dc` stored by its values on basis
/// vectors and its polar values on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadMap {
    field: PrimeField,
    du: usize,
    dc: usize,
    diag: Vec<Vec<Fe>>,
    polar: Vec<Vec<Vec<Fe>>>,
}

impl QuadMap {
    pub fn zero(field: PrimeField, du: usize, dc: usize) -> QuadMap {
        QuadMap::from_fn(field, du, dc, |_| field.zeros(dc))
    }

    /// Interpolates a map known to be homogeneous quadratic.
    pub fn from_fn(field: PrimeField, du: usize, dc: usize, f: impl Fn(&[Fe]) -> Vec<Fe>) -> QuadMap {
        let e = |i: usize| field.unit_vector(du, i);
        let diag: Vec<Vec<Fe>> = (0..du).map(|i| f(&e(i))).collect();
        let polar = (0..du)
            .map(|a| {
                (0..du)
                    .map(|b| {
                        if b <= a {
                            return field.zeros(dc);
                        }
                        let s = f(&vec_add(&e(a), &e(b)));
                        s.iter().zip(&diag[a]).zip(&diag[b]).map(|((x, y), z)| x - y - z).collect()
                    })
                    .collect()
            })
            .collect();
        QuadMap { field, du, dc, diag, polar }
    }

    pub fn eval(&self, x: &[Fe]) -> Vec<Fe> {
        let mut out = self.field.zeros(self.dc);
        for a in 0..self.du {
            if x[a].is_zero() {
                continue;
            }
            let sq = &x[a] * &x[a];
            for (o, d) in out.iter_mut().zip(&self.diag[a]) {
                *o = &*o + &(&sq * d);
            }
            for b in a + 1..self.du {
                if x[b].is_zero() {
                    continue;
                }
                let xy = &x[a] * &x[b];
                for (o, d) in out.iter_mut().zip(&self.polar[a][b]) {
                    *o = &*o + &(&xy * d);
                }
            }
        }
        out
    }
}

/// `{ I + Σ uᵢUᵢ + Σ cⱼCⱼ : c - θ(u) ∈ C₀ }` acting on the right of `F^n`.
#[derive(Clone, Debug)]
pub struct RootFamily {
    pub name: String,
    field: PrimeField,
    n: usize,
    u_mats: Vec<Mat>,
    c_mats: Vec<Mat>,
    theta: QuadMap,
    c0: Subspace,
    flat: Mat,
    elements: Option<Vec<(Param, Mat)>>,
    pub sample: Vec<Param>,
}

const ENUMERATION_LIMIT: u64 = 1 << 14;

impl RootFamily {
    pub fn new(name: &str, field: PrimeField, n: usize, u_mats: Vec<Mat>, c_mats: Vec<Mat>, theta: QuadMap, c0: Subspace) -> Result<RootFamily, GroupError> {
        let rows: Vec<Vec<Fe>> = u_mats.iter().chain(&c_mats).map(|m| m.flat().to_vec()).collect();
        let flat = Mat::from_rows(field, n * n, rows);
        let mut fam = RootFamily { name: name.into(), field, n, u_mats, c_mats, theta, c0, flat, elements: None, sample: Vec::new() };
        match field {
            PrimeField::Fp(p) => {
                let count = (p as u64).checked_pow((fam.du() + fam.c0.dim()) as u32);
                if count.is_some_and(|c| c <= ENUMERATION_LIMIT) {
                    fam.elements = Some(fam.enumerate());
                }
            }
            PrimeField::Q => {
                if fam.flat.rank() < fam.du() + fam.dc() {
                    return Err(GroupError::Unsupported(format!("parametrization of {name} over Q is not injective")));
                }
            }
        }
        Ok(fam)
    }

    fn enumerate(&self) -> Vec<(Param, Mat)> {
        let us = self.field.all_vectors(self.du()).expect("finite");
        let ks = self.c0.elements().expect("finite");
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for u in &us {
            for k in &ks {
                let p = self.param(u.clone(), k);
                let m = self.matrix(&p);
                if seen.insert(m.clone()) {
                    out.push((p, m));
                }
            }
        }
        out
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn du(&self) -> usize {
        self.u_mats.len()
    }
    pub fn dc(&self) -> usize {
        self.c_mats.len()
    }
    pub fn c0(&self) -> &Subspace {
        &self.c0
    }
    pub fn theta(&self, u: &[Fe]) -> Vec<Fe> {
        self.theta.eval(u)
    }
    pub fn u_mats(&self) -> &[Mat] {
        &self.u_mats
    }
    pub fn c_mats(&self) -> &[Mat] {
        &self.c_mats
    }
    pub fn is_finite(&self) -> bool {
        self.elements.is_some()
    }
    pub fn elements(&self) -> Option<&[(Param, Mat)]> {
        self.elements.as_deref()
    }
    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    /// `(u, θ(u) + k)`.
    pub fn param(&self, u: Vec<Fe>, k: &[Fe]) -> Param {
        let c = vec_add(&self.theta.eval(&u), k);
        Param { u, c }
    }

    pub fn identity_param(&self) -> Param {
        Param { u: self.field.zeros(self.du()), c: self.field.zeros(self.dc()) }
    }

    pub fn is_valid(&self, p: &Param) -> bool {
        let t = self.theta.eval(&p.u);
        let d: Vec<Fe> = p.c.iter().zip(&t).map(|(a, b)| a - b).collect();
        self.c0.contains(&d)
    }

    /// `Σ uᵢUᵢ + Σ cⱼCⱼ`, the nilpotent part of the element.
    pub fn nil_part(&self, p: &Param) -> Mat {
        let mut m = Mat::zeros(self.field, self.n, self.n);
        for (x, u) in p.u.iter().zip(&self.u_mats).chain(p.c.iter().zip(&self.c_mats)) {
            if !x.is_zero() {
                m = m.add(&u.scale(x));
            }
        }
        m
    }

    pub fn matrix(&self, p: &Param) -> Mat {
        Mat::identity(self.field, self.n).add(&self.nil_part(p))
    }

    /// Generators `(eᵢ, θ(eᵢ))` followed by `(0, k)` for a basis of `C₀`.
    pub fn generators(&self) -> Vec<Param> {
        let z = self.field.zeros(self.dc());
        let mut out: Vec<Param> = (0..self.du()).map(|i| self.param(self.field.unit_vector(self.du(), i), &z)).collect();
        for k in self.c0.basis() {
            out.push(Param { u: self.field.zeros(self.du()), c: k.clone() });
        }
        out
    }

    /// Elements whose nilpotent parts span the span of all nilpotent parts.
    pub fn span_params(&self) -> Vec<Param> {
        let du = self.du();
        let z = self.field.zeros(self.dc());
        let e = |i: usize| self.field.unit_vector(du, i);
        let two = self.field.int(2);
        let mut out = Vec::new();
        for i in 0..du {
            out.push(self.param(e(i), &z));
            if !two.is_zero() {
                out.push(self.param(e(i).iter().map(|x| x * &two).collect(), &z));
            }
        }
        for i in 0..du {
            for j in i + 1..du {
                out.push(self.param(vec_add(&e(i), &e(j)), &z));
            }
        }
        for k in self.c0.basis() {
            out.push(Param { u: self.field.zeros(du), c: k.clone() });
        }
        out
    }

    pub fn span_mats(&self) -> Vec<Mat> {
        self.span_params().iter().map(|p| self.matrix(p)).collect()
    }

    pub fn generator_mats(&self) -> Vec<Mat> {
        self.generators().iter().map(|p| self.matrix(p)).collect()
    }

    /// Every element when finite, otherwise generators plus the sample.
    pub fn check_set(&self) -> (Vec<Mat>, Mode) {
        match &self.elements {
            Some(e) => (e.iter().map(|(_, m)| m.clone()).collect(), Mode::Exhaustive),
            None => {
                let mut v: Vec<Mat> = self.span_params().iter().chain(&self.sample).map(|p| self.matrix(p)).collect();
                v.dedup();
                let n = v.len();
                (v, Mode::Sampled(n))
            }
        }
    }

    /// Nontrivial elements: all of them when finite, otherwise the sample and span set.
    pub fn nontrivial_sample(&self) -> (Vec<(Param, Mat)>, Mode) {
        match &self.elements {
            Some(e) => (e.iter().filter(|(_, m)| !m.is_identity()).cloned().collect(), Mode::Exhaustive),
            None => {
                let v: Vec<(Param, Mat)> = self
                    .span_params()
                    .into_iter()
                    .chain(self.sample.iter().cloned())
                    .map(|p| {
                        let m = self.matrix(&p);
                        (p, m)
                    })
                    .filter(|(_, m)| !m.is_identity())
                    .collect();
                let n = v.len();
                (v, Mode::Sampled(n))
            }
        }
    }

    /// Parameters of `g` if it lies in the family.
    pub fn member(&self, g: &Mat) -> Option<Param> {
        if g.rows() != self.n || g.cols() != self.n {
            return None;
        }
        let target = g.minus_identity();
        let (x, ker) = solve_left(&self.flat, target.flat())?;
        let split = |v: &[Fe]| Param { u: v[..self.du()].to_vec(), c: v[self.du()..].to_vec() };
        if ker.is_empty() {
            let p = split(&x);
            return self.is_valid(&p).then_some(p);
        }
        let coeffs = self.field.all_vectors(ker.len())?;
        coeffs.iter().find_map(|t| {
            let v = vec_add(&x, &crate::linalg::lin_comb(self.field, x.len(), t, &ker));
            let p = split(&v);
            self.is_valid(&p).then_some(p)
        })
    }

    pub fn contains(&self, g: &Mat) -> bool {
        self.member(g).is_some()
    }

    /// Random valid parameter with small rational entries (uniform when finite).
    pub fn random_param<R: Rng>(&self, rng: &mut R, bound: i64) -> Param {
        let u: Vec<Fe> = (0..self.du()).map(|_| small_fe(rng, self.field, bound)).collect();
        let coeffs: Vec<Fe> = (0..self.c0.dim()).map(|_| small_fe(rng, self.field, bound)).collect();
        let k = self.c0.from_coords(&coeffs);
        self.param(u, &k)
    }

    /// Parameter-space kernel of a linear condition on nilpotent parts.
    fn condition_kernel(&self, cond: &dyn Fn(&Mat) -> Vec<Fe>) -> Subspace {
        let rows: Vec<Vec<Fe>> = self.u_mats.iter().chain(&self.c_mats).map(cond).collect();
        let d = self.du() + self.dc();
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 {
            return Subspace::full(self.field, d);
        }
        Subspace::span(self.field, d, left_kernel(&Mat::from_rows(self.field, width, rows)))
    }

    /// `{ g : cond(g - 1) = 0 }` for a condition linear in the nilpotent part.
    pub fn subgroup_where(&self, cond: &dyn Fn(&Mat) -> Vec<Fe>) -> Result<Subgroup, GroupError> {
        if let Some(el) = &self.elements {
            let elems: Vec<(Param, Mat)> =
                el.iter().filter(|(_, m)| vec_is_zero(&cond(&m.minus_identity()))).cloned().collect();
            return Ok(Subgroup::finite(self.field, self.n, elems));
        }
        let lam = self.condition_kernel(cond);
        let du = self.du();
        if lam.basis().iter().any(|v| !vec_is_zero(&v[..du])) {
            return Err(GroupError::Unsupported("condition leaves linear parameters free over Q".into()));
        }
        let lc = Subspace::span(self.field, self.dc(), lam.basis().iter().map(|v| v[du..].to_vec()).collect());
        let kc = self.c0.intersect(&lc);
        let params: Vec<Param> =
            kc.basis().iter().map(|k| Param { u: self.field.zeros(du), c: k.clone() }).collect();
        let mats = params.iter().map(|p| self.matrix(p)).collect();
        Ok(Subgroup::linear(self.field, self.n, params, mats))
    }
}

pub fn small_fe<R: Rng>(rng: &mut R, field: PrimeField, bound: i64) -> Fe {
    match field {
        PrimeField::Fp(p) => field.int(rng.gen_range(0..p as i64)),
        PrimeField::Q => field.int(rng.gen_range(-bound..=bound)),
    }
}

/// A subgroup of a root group: an explicit finite list, or over `Q` the
/// additive group `{ I + Σ λᵢNᵢ }` on a basis of nilpotent parts.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub elements: Option<Vec<(Param, Mat)>>,
    pub basis_params: Vec<Param>,
    pub basis: Vec<Mat>,
    /// Span of `g - 1` over the subgroup, flattened.
    pub nspace: Subspace,
}

impl Subgroup {
    fn finite(field: PrimeField, n: usize, elems: Vec<(Param, Mat)>) -> Subgroup {
        let nspace = Subspace::span(field, n * n, elems.iter().map(|(_, m)| m.minus_identity().flat().to_vec()).collect());
        let mut basis_params = Vec::new();
        let mut basis = Vec::new();
        let mut acc = Subspace::zero(field, n * n);
        for (p, m) in &elems {
            let v = m.minus_identity().flat().to_vec();
            if !acc.contains(&v) {
                acc = acc.sum(&Subspace::span(field, n * n, vec![v]));
                basis_params.push(p.clone());
                basis.push(m.clone());
            }
        }
        Subgroup { elements: Some(elems), basis_params, basis, nspace }
    }

    fn linear(field: PrimeField, n: usize, basis_params: Vec<Param>, basis: Vec<Mat>) -> Subgroup {
        let nspace = Subspace::span(field, n * n, basis.iter().map(|m| m.minus_identity().flat().to_vec()).collect());
        Subgroup { elements: None, basis_params, basis, nspace }
    }

    pub fn is_trivial(&self) -> bool {
        self.nspace.is_zero()
    }

    pub fn order(&self) -> Option<usize> {
        self.elements.as_ref().map(Vec::len)
    }

    pub fn contains(&self, g: &Mat) -> bool {
        match &self.elements {
            Some(e) => e.iter().any(|(_, m)| m == g),
            None => self.nspace.contains(g.minus_identity().flat()),
        }
    }

    /// Same elements (finite) or same nilpotent span (linear).
    pub fn same_as(&self, o: &Subgroup) -> bool {
        match (&self.elements, &o.elements) {
            (Some(a), Some(b)) => {
                let sa: HashSet<&Mat> = a.iter().map(|(_, m)| m).collect();
                let sb: HashSet<&Mat> = b.iter().map(|(_, m)| m).collect();
                sa == sb
            }
            _ => self.nspace == o.nspace,
        }
    }

    /// Nontrivial elements: all when finite, else basis elements and small combinations.
    pub fn nontrivial_sample(&self) -> Vec<Mat> {
        match &self.elements {
            Some(e) => e.iter().filter(|(_, m)| !m.is_identity()).map(|(_, m)| m.clone()).collect(),
            None => {
                let mut out = self.basis.clone();
                for i in 0..self.basis.len() {
                    for j in i + 1..self.basis.len() {
                        out.push(self.basis[i].mul(&self.basis[j]));
                    }
                }
                out
            }
        }
    }
}

/// The two root groups `A` and `B` on a common module.
#[derive(Clone, Debug)]
pub struct RankOnePair {
    pub a: RootFamily,
    pub b: RootFamily,
}

impl RankOnePair {
    pub fn field(&self) -> PrimeField {
        self.a.field()
    }
    pub fn n(&self) -> usize {
        self.a.n()
    }
    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    /// Generators of `A` then of `B`, with display names.
    pub fn named_generators(&self) -> Vec<(String, Mat)> {
        let mut out = Vec::new();
        for (i, m) in self.a.generator_mats().into_iter().enumerate() {
            out.push((format!("a{}", i + 1), m));
        }
        for (i, m) in self.b.generator_mats().into_iter().enumerate() {
            out.push((format!("b{}", i + 1), m));
        }
        out
    }

    pub fn generator_mats(&self) -> Vec<Mat> {
        self.named_generators().into_iter().map(|(_, m)| m).collect()
    }
}

/// `span{ w(g-1) : w ∈ W, g ∈ S }`.
pub fn commutator_space(w: &Subspace, s: &[Mat]) -> Subspace {
    let f = w.field();
    let mut vecs = Vec::new();
    for g in s {
        let x = g.minus_identity();
        for b in w.basis() {
            vecs.push(x.vec_mul(b));
        }
    }
    Subspace::span(f, w.ambient(), vecs)
}

/// `[W,G]` for a `G`-invariant `W`: the `G`-closure of the commutators with generators.
pub fn commutator_with_group(w: &Subspace, gens: &[Mat]) -> Subspace {
    commutator_space(w, gens).closure_under(gens)
}

/// `∩ ker(g - 1)`.
pub fn fixed_space(field: PrimeField, n: usize, s: &[Mat]) -> Subspace {
    if s.is_empty() {
        return Subspace::full(field, n);
    }
    let rows: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut r = Vec::with_capacity(n * s.len());
            for g in s {
                let x = g.minus_identity();
                r.extend(x.row(i).iter().cloned());
            }
            r
        })
        .collect();
    Subspace::span(field, n, left_kernel(&Mat::from_rows(field, n * s.len(), rows)))
}

/// `{ v : v(g-1) ∈ U for all g ∈ S }`.
pub fn centralizer_quotient(field: PrimeField, n: usize, s: &[Mat], u: &Subspace) -> Subspace {
    let q = n - u.dim();
    if s.is_empty() || q == 0 {
        return Subspace::full(field, n);
    }
    let rows: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut r = Vec::with_capacity(q * s.len());
            for g in s {
                let x = g.minus_identity();
                r.extend(u.quotient_coords(x.row(i)));
            }
            r
        })
        .collect();
    Subspace::span(field, n, left_kernel(&Mat::from_rows(field, q * s.len(), rows)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionDegree {
    Trivial,
    Quadratic { witness: String },
    Cubic { witness: String },
    Higher { witness: String },
}

impl ActionDegree {
    pub fn label(&self) -> &'static str {
        match self {
            ActionDegree::Trivial => "trivial",
            ActionDegree::Quadratic { .. } => "quadratic",
            ActionDegree::Cubic { .. } => "cubic",
            ActionDegree::Higher { .. } => "higher",
        }
    }
}

/// Searches `v(g₁-1)…(g_k-1) ≠ 0` over basis vectors and generators.
fn word_witness(n: usize, field: PrimeField, gens: &[(String, Mat)], k: usize) -> Option<String> {
    let nil: Vec<(String, Mat)> = gens.iter().map(|(s, g)| (s.clone(), g.minus_identity())).collect();
    fn rec(v: &[Fe], nil: &[(String, Mat)], k: usize, word: &mut Vec<String>) -> Option<Vec<Fe>> {
        if k == 0 {
            return (!vec_is_zero(v)).then(|| v.to_vec());
        }
        for (s, x) in nil {
            let w = x.vec_mul(v);
            if vec_is_zero(&w) {
                continue;
            }
            word.push(s.clone());
            if let Some(r) = rec(&w, nil, k - 1, word) {
                return Some(r);
            }
            word.pop();
        }
        None
    }
    for i in 0..n {
        let e = field.unit_vector(n, i);
        let mut word = Vec::new();
        if let Some(r) = rec(&e, &nil, k, &mut word) {
            let w: Vec<String> = word.iter().map(|s| format!("({s}-1)")).collect();
            return Some(format!("e{}{} = {}", i + 1, w.join(""), vec_text(&r)));
        }
    }
    None
}

/// Verdict on `[V,A,A,A] = 0`, `[V,B,B,B] = 0` with a nonvanishing word in `G`.
pub fn cubic_verify(pair: &RankOnePair) -> ActionDegree {
    let (f, n) = (pair.field(), pair.n());
    let v = Subspace::full(f, n);
    let chain = |fam: &RootFamily| {
        let s = fam.span_mats();
        let v1 = commutator_space(&v, &s);
        let v2 = commutator_space(&v1, &s);
        let v3 = commutator_space(&v2, &s);
        (v1, v2, v3)
    };
    let (a1, a2, a3) = chain(&pair.a);
    let (b1, b2, b3) = chain(&pair.b);
    let gens = pair.named_generators();
    if a1.is_zero() && b1.is_zero() {
        return ActionDegree::Trivial;
    }
    if !a3.is_zero() || !b3.is_zero() {
        let w = word_witness(n, f, &gens, 3).unwrap_or_default();
        return ActionDegree::Higher { witness: format!("[V,A,A,A] or [V,B,B,B] nonzero; {w}") };
    }
    if a2.is_zero() && b2.is_zero() {
        let w = word_witness(n, f, &gens, 2).unwrap_or_else(|| "no nonzero word of length 2".into());
        return ActionDegree::Quadratic { witness: w };
    }
    match word_witness(n, f, &gens, 3) {
        Some(w) => ActionDegree::Cubic { witness: w },
        None => ActionDegree::Quadratic { witness: "[V,G,G,G] = 0 on generators".into() },
    }
}

/// Partner element with the mode of its conjugation post-check.
#[derive(Clone, Debug)]
pub struct Partner {
    pub param: Param,
    pub mat: Mat,
    pub mode: Mode,
}

/// Cached subspaces and the partner solver for a rank one pair.
#[derive(Clone, Debug)]
pub struct Engine {
    pub pair: RankOnePair,
    pub cva: Subspace,
    pub cvb: Subspace,
    pub va: Subspace,
    pub vb: Subspace,
    a_check: (Vec<Mat>, Mode),
    b_check: (Vec<Mat>, Mode),
}

impl Engine {
    pub fn new(pair: RankOnePair) -> Engine {
        let (f, n) = (pair.field(), pair.n());
        let sa = pair.a.span_mats();
        let sb = pair.b.span_mats();
        let v = Subspace::full(f, n);
        let cva = fixed_space(f, n, &sa);
        let cvb = fixed_space(f, n, &sb);
        let va = commutator_space(&v, &sa);
        let vb = commutator_space(&v, &sb);
        let a_check = pair.a.check_set();
        let b_check = pair.b.check_set();
        Engine { pair, cva, cvb, va, vb, a_check, b_check }
    }

    pub fn field(&self) -> PrimeField {
        self.pair.field()
    }
    pub fn n(&self) -> usize {
        self.pair.n()
    }
    pub fn a(&self) -> &RootFamily {
        &self.pair.a
    }
    pub fn b(&self) -> &RootFamily {
        &self.pair.b
    }
    pub fn a_check(&self) -> &(Vec<Mat>, Mode) {
        &self.a_check
    }
    pub fn b_check(&self) -> &(Vec<Mat>, Mode) {
        &self.b_check
    }

    /// `b(a)`: the element of `B` with `A^{b} = B^{a}`.
    pub fn find_b(&self, a: &Mat) -> Result<Partner, GroupError> {
        self.solve_partner(a, true)
    }

    /// `a(b)`: the element of `A` with `B^{a} = A^{b}`.
    pub fn find_a(&self, b: &Mat) -> Result<Partner, GroupError> {
        self.solve_partner(b, false)
    }

    fn solve_partner(&self, x: &Mat, x_in_a: bool) -> Result<Partner, GroupError> {
        if x.is_identity() {
            return Err(GroupError::Identity);
        }
        let (xf, yf, cvx, cvy) =
            if x_in_a { (&self.pair.a, &self.pair.b, &self.cva, &self.cvb) } else { (&self.pair.b, &self.pair.a, &self.cvb, &self.cva) };
        if !xf.contains(x) {
            return Err(GroupError::NotMember(xf.name.clone()));
        }
        let f = self.field();
        let p = cvy.image(x);
        let mats: Vec<&Mat> = yf.u_mats.iter().chain(&yf.c_mats).collect();
        let rows: Vec<Vec<Fe>> = mats
            .iter()
            .map(|m| cvx.basis().iter().flat_map(|c| p.quotient_coords(&m.vec_mul(c))).collect())
            .collect();
        let rhs: Vec<Fe> = cvx.basis().iter().flat_map(|c| p.quotient_coords(c).into_iter().map(|t| -t)).collect();
        let d = mats.len();
        let split = |v: &[Fe]| Param { u: v[..yf.du()].to_vec(), c: v[yf.du()..].to_vec() };
        let candidates: Vec<Param> = if rhs.is_empty() {
            return Err(GroupError::NoPartner("C_V(B)·a is the whole module".into()));
        } else {
            let sys = Mat::from_rows(f, rhs.len(), rows);
            let Some((x0, ker)) = solve_left(&sys, &rhs) else {
                return Err(GroupError::NoPartner(format!("no element of {} maps C_V({}) onto C_V({})·x", yf.name, xf.name, yf.name)));
            };
            if ker.is_empty() {
                vec![split(&x0)]
            } else if f.is_finite() {
                f.all_vectors(ker.len())
                    .expect("finite")
                    .iter()
                    .map(|t| split(&vec_add(&x0, &crate::linalg::lin_comb(f, d, t, &ker))))
                    .collect()
            } else {
                return Err(GroupError::Unsupported("partner parameters are not unique over Q".into()));
            }
        };
        let mut found: Vec<(Param, Mat)> = Vec::new();
        let mut mode = Mode::Exhaustive;
        for q in candidates.into_iter().filter(|q| yf.is_valid(q)) {
            let y = yf.matrix(&q);
            if found.iter().any(|(_, m)| *m == y) {
                continue;
            }
            if let Ok(m) = self.conjugation_matches(x, &y, x_in_a) {
                mode = m;
                found.push((q, y));
            }
        }
        match found.len() {
            0 => Err(GroupError::NoPartner("no candidate passes the conjugation check".into())),
            1 => {
                let (param, mat) = found.pop().expect("one");
                Ok(Partner { param, mat, mode })
            }
            k => Err(GroupError::NonUnique(k)),
        }
    }

    /// `X^y = Y^x` by membership in both directions.
    fn conjugation_matches(&self, x: &Mat, y: &Mat, x_in_a: bool) -> Result<Mode, String> {
        let (xf, yf, xc, yc) = if x_in_a {
            (&self.pair.a, &self.pair.b, &self.a_check, &self.b_check)
        } else {
            (&self.pair.b, &self.pair.a, &self.b_check, &self.a_check)
        };
        let xi = x.inverse().ok_or("singular")?;
        let yi = y.inverse().ok_or("singular")?;
        let (l, r) = (x.mul(&yi), y.mul(&xi));
        for g in &xc.0 {
            if !yf.contains(&l.mul(g).mul(&r)) {
                return Err(format!("{}^y is not inside {}^x", xf.name, yf.name));
            }
        }
        for g in &yc.0 {
            if !xf.contains(&r.mul(g).mul(&l)) {
                return Err(format!("{}^x is not inside {}^y", yf.name, xf.name));
            }
        }
        Ok(match (&xc.1, &yc.1) {
            (Mode::Exhaustive, Mode::Exhaustive) => Mode::Exhaustive,
            _ => Mode::Sampled(xc.0.len() + yc.0.len()),
        })
    }

    /// `μ_a = b(a⁻¹)·a·b(a)⁻¹`.
    pub fn mu_of(&self, a: &Mat) -> Result<Mat, GroupError> {
        let ai = a.inverse().expect("invertible");
        let b1 = self.find_b(&ai)?;
        let b2 = self.find_b(a)?;
        Ok(b1.mat.mul(a).mul(&b2.mat.inverse().expect("invertible")))
    }

    /// `A^m = B` and `B^m = A`.
    pub fn swaps(&self, m: &Mat) -> Result<(), String> {
        let mi = m.inverse().ok_or("singular")?;
        let conj = |g: &Mat| mi.mul(g).mul(m);
        let back = |g: &Mat| m.mul(g).mul(&mi);
        for g in &self.a_check.0 {
            ensure(self.pair.b.contains(&conj(g)), || format!("A^μ ⊄ B at {g}"))?;
            ensure(self.pair.b.contains(&back(g)), || format!("B ⊄ A^μ at {g}"))?;
        }
        for g in &self.b_check.0 {
            ensure(self.pair.a.contains(&conj(g)), || format!("B^μ ⊄ A at {g}"))?;
            ensure(self.pair.a.contains(&back(g)), || format!("A ⊄ B^μ at {g}"))?;
        }
        Ok(())
    }

    /// `h` normalizes both root groups.
    pub fn normalizes(&self, h: &Mat) -> Result<(), String> {
        let hi = h.inverse().ok_or("singular")?;
        for g in &self.a_check.0 {
            ensure(self.pair.a.contains(&hi.mul(g).mul(h)), || format!("A^h ⊄ A at {g}"))?;
        }
        for g in &self.b_check.0 {
            ensure(self.pair.b.contains(&hi.mul(g).mul(h)), || format!("B^h ⊄ B at {g}"))?;
        }
        Ok(())
    }

    /// Linear conditions `[V,X]·N = 0` and `V·N ⊆ C_V(X)` on nilpotent parts.
    fn special_conditions<'a>(&'a self, vx: &'a Subspace, cvx: &'a Subspace) -> impl Fn(&Mat) -> Vec<Fe> + 'a {
        let n = self.n();
        let f = self.field();
        move |m: &Mat| {
            let mut out = Vec::new();
            for w in vx.basis() {
                out.extend(m.vec_mul(w));
            }
            for i in 0..n {
                out.extend(cvx.quotient_coords(m.row(i)));
            }
            let _ = f;
            out
        }
    }

    /// `A₀ = C_A([V,A]) ∩ C_A(V/C_V(A))`.
    pub fn a0(&self) -> Result<Subgroup, GroupError> {
        self.pair.a.subgroup_where(&self.special_conditions(&self.va, &self.cva))
    }

    /// `B₀ = C_B([V,B]) ∩ C_B(V/C_V(B))`.
    pub fn b0(&self) -> Result<Subgroup, GroupError> {
        self.pair.b.subgroup_where(&self.special_conditions(&self.vb, &self.cvb))
    }

    /// `C_A([V,A])`.
    pub fn centralizer_of_va(&self) -> Result<Subgroup, GroupError> {
        let va = &self.va;
        self.pair.a.subgroup_where(&|m: &Mat| va.basis().iter().flat_map(|w| m.vec_mul(w)).collect())
    }

    /// `C_A(V/C_V(A))`.
    pub fn centralizer_of_quotient(&self) -> Result<Subgroup, GroupError> {
        let cva = &self.cva;
        let n = self.n();
        self.pair.a.subgroup_where(&|m: &Mat| (0..n).flat_map(|i| cva.quotient_coords(m.row(i))).collect())
    }

    /// `A` is abelian on generators.
    pub fn a_is_abelian(&self) -> bool {
        let g = self.pair.a.generator_mats();
        g.iter().all(|x| g.iter().all(|y| x.mul(y) == y.mul(x)))
    }

    /// Reference element `e ∈ A₀#`: in characteristic 2 with `A` nonabelian the
    /// square of the first generator with nontrivial square, otherwise the
    /// first basis element of `A₀`.
    pub fn reference_element(&self, a0: &Subgroup) -> Result<Mat, String> {
        if self.field().characteristic() == 2 && !self.a_is_abelian() {
            for g in self.pair.a.generator_mats() {
                let sq = g.mul(&g);
                if !sq.is_identity() {
                    return if a0.contains(&sq) { Ok(sq) } else { Err(format!("a² = {sq} is not in A0")) };
                }
            }
        }
        a0.basis.first().cloned().ok_or_else(|| "A0 is trivial".into())
    }

    /// `C_V(G₀)` from bases of `A₀` and `B₀`.
    pub fn cv_g0(&self, a0: &Subgroup, b0: &Subgroup) -> Subspace {
        let mut s = a0.basis.clone();
        s.extend(b0.basis.iter().cloned());
        fixed_space(self.field(), self.n(), &s)
    }

    /// Subspace identities relating `C_V(A)`, `[V,A]`, `[V,B]`, `A₀` and `C_V(G₀)`.
    pub fn decomposition_checks(&self, a0: &Subgroup, b0: &Subgroup) -> Vec<CheckRecord> {
        let (f, n) = (self.field(), self.n());
        let v = Subspace::full(f, n);
        let cvg0 = self.cv_g0(a0, b0);
        let a0s = a0.nontrivial_sample();
        let a0_mode = Mode::for_count(a0.elements.is_some(), a0s.len());
        let mut out = Vec::new();

        let sum = self.cva.sum(&self.vb);
        let inter = self.cva.intersect(&self.vb);
        out.push(CheckRecord::from_result(
            "decomp.va-complement",
            Mode::Exhaustive,
            ensure(sum.dim() == n && inter.is_zero(), || {
                format!("dim C_V(A) = {}, dim [V,B] = {}, dim sum = {}, dim intersection = {}", self.cva.dim(), self.vb.dim(), sum.dim(), inter.dim())
            }),
        ));

        let va0 = commutator_space(&v, &a0.basis);
        let r = ensure(va0 == self.cva, || format!("dim [V,A0] = {} but dim C_V(A) = {}", va0.dim(), self.cva.dim())).and_then(|_| {
            for a in &a0s {
                let va = commutator_space(&v, std::slice::from_ref(a));
                ensure(va == self.cva, || format!("[V,a] != C_V(A) for a = {a}"))?;
            }
            Ok(())
        });
        out.push(CheckRecord::from_result("decomp.cva-is-va0", a0_mode.clone(), r));

        let r = (|| {
            for a in &a0s {
                let c = fixed_space(f, n, std::slice::from_ref(a));
                ensure(c == self.va, || format!("C_V(a) != [V,A] for a = {a}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("decomp.va-is-centralizer", a0_mode, r));

        let vaa = commutator_space(&self.va, &self.pair.a.span_mats());
        if self.a_is_abelian() {
            out.push(CheckRecord::from_info(
                "decomp.cva-is-vaa",
                Mode::Exhaustive,
                if self.cva.contains_space(&vaa) {
                    Ok(format!("A abelian: containment [V,A,A] ⊆ C_V(A) only (dims {} ⊆ {})", vaa.dim(), self.cva.dim()))
                } else {
                    Err("[V,A,A] is not inside C_V(A)".into())
                },
            ));
        } else {
            out.push(CheckRecord::from_result(
                "decomp.cva-is-vaa",
                Mode::Exhaustive,
                ensure(vaa == self.cva, || format!("dim [V,A,A] = {}, dim C_V(A) = {}", vaa.dim(), self.cva.dim())),
            ));
        }

        let ab = self.va.intersect(&self.vb);
        out.push(CheckRecord::from_result(
            "decomp.intersection-is-cvg0",
            Mode::Exhaustive,
            ensure(ab == cvg0, || format!("dim [V,A]∩[V,B] = {}, dim C_V(G0) = {}", ab.dim(), cvg0.dim())),
        ));

        let s = self.cva.sum(&cvg0);
        out.push(CheckRecord::from_result(
            "decomp.va-splits",
            Mode::Exhaustive,
            ensure(s == self.va && self.cva.intersect(&cvg0).is_zero(), || {
                format!("C_V(A) + C_V(G0) has dim {} against dim [V,A] = {}", s.dim(), self.va.dim())
            }),
        ));
        out
    }

    /// `{1} ∪ b(C#)` is closed under multiplication for `C = C_A(v)` and for
    /// `C = C_A(V/(W + C_V(A)))`.
    pub fn root_subgroup_checks(&self, v: &[Fe], w: &Subspace) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let n = self.n();
        let (elems, mode) = self.pair.a.check_set();
        let fixes_v = |g: &Mat| g.vec_mul(v) == v;
        let cav: Vec<Mat> = elems.iter().filter(|g| fixes_v(g)).cloned().collect();
        out.push(CheckRecord::from_result("root-subgroup.centralizer-of-vector", mode.clone(), self.partner_image_closed(&cav, &fixes_v)));
        let u = w.sum(&self.cva);
        let below = |g: &Mat| {
            let x = g.minus_identity();
            (0..n).all(|i| u.contains(x.row(i)))
        };
        let caq: Vec<Mat> = elems.iter().filter(|g| below(g)).cloned().collect();
        out.push(CheckRecord::from_result("root-subgroup.quotient-centralizer", mode, self.partner_image_closed(&caq, &below)));
        out
    }

    /// Partner, `μ` and specialness checks that need `b(a)` for every `a ∈ A#`.
    pub fn rank_one_checks(&self) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let (elems, mode) = self.pair.a.nontrivial_sample();
        let r = (|| {
            for (p, a) in &elems {
                let b = self.find_b(a).map_err(|e| format!("b(a) for a = {p}: {e}"))?;
                let back = self.find_a(&b.mat).map_err(|e| format!("a(b(a)) for a = {p}: {e}"))?;
                ensure(back.mat == *a, || format!("a(b(a)) != a at a = {p}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("rank-one.partners", mode.clone(), r));

        let r = (|| {
            for (p, a) in &elems {
                let m = self.mu_of(a).map_err(|e| format!("μ_a for a = {p}: {e}"))?;
                self.swaps(&m).map_err(|e| format!("μ_a for a = {p}: {e}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("rank-one.mu-swaps", mode.clone(), r));

        out.push(self.mu_unique_check(&elems));

        let mut witness = None;
        for (p, a) in &elems {
            let (Ok(b), Ok(bi)) = (self.find_b(a), self.find_b(&a.inverse().expect("invertible"))) else { continue };
            if b.mat.inverse().expect("invertible") != bi.mat {
                witness = Some(format!("b(a⁻¹) != b(a)⁻¹ at a = {p}"));
                break;
            }
        }
        let info = match witness {
            None => "G is special".to_string(),
            Some(w) => format!("G is not special: {w}"),
        };
        out.push(CheckRecord::from_info("rank-one.special", mode, Ok(info)));
        out
    }

    /// `μ_a` is the only element of `B a B` swapping `A` and `B`.
    fn mu_unique_check(&self, elems: &[(Param, Mat)]) -> CheckRecord {
        const SCAN_LIMIT: usize = 32;
        let (bs, bmode): (Vec<Mat>, Mode) = match self.pair.b.elements() {
            Some(e) if e.len() <= SCAN_LIMIT => (e.iter().map(|(_, m)| m.clone()).collect(), Mode::Exhaustive),
            Some(_) => return CheckRecord::skip("rank-one.mu-unique", format!("hypothesis unmet: |B| exceeds the scan limit {SCAN_LIMIT}")),
            None => {
                let v: Vec<Mat> = self.b_check.0.iter().take(6).cloned().collect();
                let n = v.len();
                (v, Mode::Sampled(n))
            }
        };
        let sample: Vec<&(Param, Mat)> = elems.iter().take(3).collect();
        let r = (|| {
            for (p, a) in &sample {
                let mu = self.mu_of(a).map_err(|e| format!("μ_a for a = {p}: {e}"))?;
                for x in &bs {
                    for y in &bs {
                        let m = x.mul(a).mul(y);
                        if m != mu && self.swaps(&m).is_ok() {
                            return Err(format!("second swapping element in BaB at a = {p}: {m}"));
                        }
                    }
                }
            }
            Ok(())
        })();
        let mode = match bmode {
            Mode::Exhaustive if self.pair.a.is_finite() && elems.len() <= 3 => Mode::Exhaustive,
            _ => Mode::Sampled(sample.len() * bs.len() * bs.len()),
        };
        CheckRecord::from_result("rank-one.mu-unique", mode, r)
    }

    /// Identities of `A₀` and `B₀` that only need partners inside `A₀`.
    pub fn a0_checks(&self, a0: &Subgroup, b0: &Subgroup) -> Vec<CheckRecord> {
        let mut out = Vec::new();
        let (f, n) = (self.field(), self.n());
        let a0s = a0.nontrivial_sample();
        let a0_mode = Mode::for_count(a0.elements.is_some(), a0s.len());
        let r = (|| {
            ensure(!a0s.is_empty(), || "A0 is trivial".into())?;
            for a in &a0s {
                let b = self.find_b(a).map_err(|e| format!("b(a) for a = {a}: {e}"))?;
                ensure(b0.contains(&b.mat), || format!("b(a) not in B0 for a = {a}"))?;
                let bi = self.find_b(&a.inverse().expect("invertible")).map_err(|e| e.to_string())?;
                ensure(bi.mat == b.mat.inverse().expect("invertible"), || format!("b(a⁻¹) != b(a)⁻¹ for a = {a}"))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("rank-one.a0-special", a0_mode.clone(), r));

        let (elems, mode) = self.a_check.clone();
        let gens = self.pair.a.generator_mats();
        let r = (|| {
            for x in &elems {
                for y in &gens {
                    let c = x.inverse().expect("invertible").mul(&y.inverse().expect("invertible")).mul(x).mul(y);
                    ensure(a0.contains(&c), || format!("commutator [{x}, {y}] is not in A0"))?;
                }
            }
            for z in &a0.basis {
                for y in &gens {
                    ensure(z.mul(y) == y.mul(z), || format!("A0 element {z} does not commute with {y}"))?;
                }
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("rank-one.a0-bounds", mode.clone(), r));

        let v = Subspace::full(f, n);
        let r = (|| {
            for (name, s) in [("A0", &a0.basis), ("B0", &b0.basis)] {
                let w = commutator_space(&commutator_space(&v, s), s);
                ensure(w.is_zero(), || format!("[V,{name},{name}] has dimension {}", w.dim()))?;
            }
            Ok(())
        })();
        out.push(CheckRecord::from_result("rank-one.a0-quadratic", Mode::Exhaustive, r));

        let r = match f {
            PrimeField::Fp(p) => (|| {
                for a in &a0s {
                    ensure(a.pow(p as i64).is_some_and(|m| m.is_identity()), || format!("a^{p} != 1 for a = {a} in A0"))?;
                }
                for x in &elems {
                    let xp = x.pow(p as i64).expect("invertible");
                    ensure(a0.contains(&xp), || format!("a^{p} is not in A0 for a = {x}"))?;
                }
                Ok(format!("A0 and A/A0 are elementary abelian {p}-groups"))
            })(),
            PrimeField::Q => (|| {
                for x in elems.iter().filter(|x| !x.is_identity()) {
                    for k in 1..=4 {
                        ensure(!x.pow(k).expect("invertible").is_identity(), || format!("a^{k} = 1 for a = {x}"))?;
                    }
                }
                Ok("A is torsion-free".to_string())
            })(),
        };
        out.push(CheckRecord::from_info("rank-one.characteristic", mode.clone(), r));

        if self.a_is_abelian() && !a0.is_trivial() {
            let r = (|| {
                ensure(f.characteristic() == 2, || format!("characteristic is {}", f.characteristic()))?;
                for x in &elems {
                    ensure(x.mul(x).is_identity(), || format!("a² != 1 for a = {x}"))?;
                }
                Ok(())
            })();
            out.push(CheckRecord::from_result("rank-one.abelian-exponent", mode, r));
        } else {
            out.push(CheckRecord::skip("rank-one.abelian-exponent", "hypothesis unmet: A is not abelian"));
        }
        out
    }

    /// `b(x)b(y)` is `1` or `b(z)` for some `z ∈ C`; over infinite `A` on the first
    /// eight elements of `C`.
    fn partner_image_closed(&self, c: &[Mat], in_c: &dyn Fn(&Mat) -> bool) -> Result<(), String> {
        let limit = if self.pair.is_finite() { usize::MAX } else { 8 };
        let mut img: Vec<Mat> = Vec::new();
        for a in c.iter().filter(|a| !a.is_identity()).take(limit) {
            let b = self.find_b(a).map_err(|e| format!("b({a}) failed: {e}"))?;
            if !img.contains(&b.mat) {
                img.push(b.mat);
            }
        }
        let set: HashSet<&Mat> = img.iter().collect();
        for x in &img {
            for y in &img {
                let p = x.mul(y);
                if p.is_identity() || set.contains(&p) {
                    continue;
                }
                let z = self.find_a(&p).map_err(|e| format!("product {p} of b-images has no partner: {e}"))?;
                ensure(in_c(&z.mat), || format!("b-image of order {} not closed: product {p} is b(z) for z = {} outside C", img.len(), z.mat))?;
            }
        }
        Ok(())
    }
}

impl RankOnePair {
    pub fn describe_sizes(&self) -> String {
        match (self.a.order(), self.b.order()) {
            (Some(x), Some(y)) => format!("|A| = {x}, |B| = {y}"),
            _ => format!("A, B parametrized by {} + {} coordinates over Q", self.a.du(), self.a.dc()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// SL₂(F₅) on F₅²: `A` lower, `B` upper unipotent.
    fn sl2(p: u32) -> RankOnePair {
        let f = PrimeField::Fp(p);
        let ua = Mat::from_ints(f, &[&[0, 0], &[1, 0]]);
        let ub = Mat::from_ints(f, &[&[0, 1], &[0, 0]]);
        let fam = |name: &str, m: Mat| RootFamily::new(name, f, 2, vec![m], vec![], QuadMap::zero(f, 1, 0), Subspace::zero(f, 0)).unwrap();
        RankOnePair { a: fam("A", ua), b: fam("B", ub) }
    }

    #[test]
    fn quadmap_interpolates() {
        let f = PrimeField::Fp(2);
        let q = |x: &[Fe]| vec![&(&(&x[0] * &x[0]) + &(&x[0] * &x[1])) + &(&(&x[1] * &x[1]) + &(&x[2] * &x[2]))];
        let m = QuadMap::from_fn(f, 3, 1, q);
        for v in f.all_vectors(3).unwrap() {
            assert_eq!(m.eval(&v), q(&v));
        }
    }

    #[test]
    fn sl2_is_quadratic_with_partners() {
        let pair = sl2(5);
        assert_eq!(cubic_verify(&pair).label(), "quadratic");
        let eng = Engine::new(pair);
        assert_eq!(eng.a().order(), Some(5));
        let (elems, _) = eng.a().nontrivial_sample();
        assert_eq!(elems.len(), 4);
        for (_, a) in &elems {
            let b = eng.find_b(a).unwrap();
            assert_eq!(eng.find_a(&b.mat).unwrap().mat, *a);
            let mu = eng.mu_of(a).unwrap();
            assert!(eng.swaps(&mu).is_ok());
        }
        assert_eq!(eng.find_b(&Mat::identity(PrimeField::Fp(5), 2)).unwrap_err(), GroupError::Identity);
    }

    #[test]
    fn fixed_and_commutator_spaces() {
        let pair = sl2(5);
        let f = PrimeField::Fp(5);
        let v = Subspace::full(f, 2);
        let a = pair.a.span_mats();
        let va = commutator_space(&v, &a);
        assert_eq!(va.basis(), &[vec![f.one(), f.zero()]]);
        assert_eq!(fixed_space(f, 2, &a), va);
        assert_eq!(fixed_space(f, 2, &[Mat::identity(f, 2)]).dim(), 2);
        assert!(commutator_space(&v, &[Mat::identity(f, 2)]).is_zero());
        assert_eq!(centralizer_quotient(f, 2, &a, &va).dim(), 2);
    }
}

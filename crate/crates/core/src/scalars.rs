//! Scalar domains: prime fields, finite extension fields, rational quaternion
//! algebras, and involutions on them.
//!
//! Every domain is a finite-dimensional associative algebra over its prime
//! field, stored through structure constants. Elements are coordinate vectors
//! in the algebra basis.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Fe, PrimeField};
use crate::linalg::{left_kernel, lin_comb, solve_left, vec_is_zero, Mat, Subspace};

pub type Elem = Vec<Fe>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("reducible modulus {modulus}: divisible by {factor}")]
    Reducible { modulus: String, factor: String },
    #[error("modulus must be monic of degree at least 1")]
    BadModulus,
    #[error("quaternion constants ({a},{b}) give zero divisors: norm form is isotropic, witness {witness}")]
    NotDivision { a: String, b: String, witness: String },
    #[error("involution {involution} is incompatible with domain {domain}")]
    Incompatible { involution: String, domain: String },
    #[error("{0} is not an involutory anti-automorphism")]
    NotInvolution(String),
    #[error("domain axiom fails: {0}")]
    Axiom(String),
}

/// A finite-dimensional associative unital algebra over a prime field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: PrimeField,
    names: Vec<String>,
    table: Vec<Vec<Elem>>,
    one: Elem,
}

impl Algebra {
    pub fn new(field: PrimeField, names: Vec<String>, table: Vec<Vec<Elem>>, one: Elem) -> Algebra {
        let d = names.len();
        assert_eq!(table.len(), d);
        assert!(table.iter().all(|r| r.len() == d && r.iter().all(|e| e.len() == d)));
        Algebra { field, names, table, one }
    }

    pub fn prime(field: PrimeField) -> Algebra {
        Algebra::new(field, vec!["1".into()], vec![vec![vec![field.one()]]], vec![field.one()])
    }

    /// `F[x]/(m)` for a monic `m` given by coefficients from low to high degree.
    pub fn poly_quotient(field: PrimeField, modulus: &[Fe]) -> Result<Algebra, ScalarError> {
        let k = modulus.len().checked_sub(1).ok_or(ScalarError::BadModulus)?;
        if k == 0 || !modulus[k].is_one() {
            return Err(ScalarError::BadModulus);
        }
        let names = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let table = (0..k)
            .map(|i| (0..k).map(|j| poly_mod(&monomial(field, i + j), modulus, k)).collect())
            .collect();
        Ok(Algebra::new(field, names, table, field.unit_vector(k, 0)))
    }

    /// Quaternion algebra `(a,b)` on the basis `1, i, j, k` with `i² = a`, `j² = b`, `ij = -ji = k`.
    pub fn quaternion(a: &Fe, b: &Fe) -> Algebra {
        let f = a.field();
        let z = f.zero();
        let o = f.one();
        let e = |c0: Fe, c1: Fe, c2: Fe, c3: Fe| vec![c0, c1, c2, c3];
        let ab = a * b;
        let table = vec![
            vec![e(o.clone(), z.clone(), z.clone(), z.clone()), e(z.clone(), o.clone(), z.clone(), z.clone()), e(z.clone(), z.clone(), o.clone(), z.clone()), e(z.clone(), z.clone(), z.clone(), o.clone())],
            vec![e(z.clone(), o.clone(), z.clone(), z.clone()), e(a.clone(), z.clone(), z.clone(), z.clone()), e(z.clone(), z.clone(), z.clone(), o.clone()), e(z.clone(), z.clone(), a.clone(), z.clone())],
            vec![e(z.clone(), z.clone(), o.clone(), z.clone()), e(z.clone(), z.clone(), z.clone(), -&o), e(b.clone(), z.clone(), z.clone(), z.clone()), e(z.clone(), -b, z.clone(), z.clone())],
            vec![e(z.clone(), z.clone(), z.clone(), o.clone()), e(z.clone(), z.clone(), -a, z.clone()), e(z.clone(), b.clone(), z.clone(), z.clone()), e(-&ab, z.clone(), z.clone(), z.clone())],
        ];
        let names = ["1", "i", "j", "k"].iter().map(|s| s.to_string()).collect();
        Algebra::new(f, names, table, f.unit_vector(4, 0))
    }

    /// All `n×n` matrices, basis `E_ij` in row-major order.
    pub fn matrix_ring(field: PrimeField, n: usize) -> Algebra {
        let d = n * n;
        let mut table = vec![vec![field.zeros(d); d]; d];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                if j == k {
                    cell[i * n + l] = field.one();
                }
            }
        }
        let names = (0..d).map(|a| format!("E{}{}", a / n + 1, a % n + 1)).collect();
        let one = Mat::identity(field, n).flat().to_vec();
        Algebra::new(field, names, table, one)
    }

    /// The algebra spanned by independent matrices closed under multiplication.
    /// Returns `None` when the span is not closed or lacks the identity.
    pub fn from_matrix_basis(field: PrimeField, mats: &[Mat]) -> Option<Algebra> {
        let n = mats.first()?.rows();
        let flat: Vec<Elem> = mats.iter().map(|m| m.flat().to_vec()).collect();
        let basis = Mat::from_rows(field, n * n, flat);
        let coords = |m: &Mat| -> Option<Elem> {
            let (x, k) = solve_left(&basis, m.flat())?;
            k.is_empty().then_some(x)
        };
        let one = coords(&Mat::identity(field, n))?;
        let mut table = Vec::with_capacity(mats.len());
        for a in mats {
            let mut row = Vec::with_capacity(mats.len());
            for b in mats {
                row.push(coords(&a.mul(b))?);
            }
            table.push(row);
        }
        let names = (0..mats.len()).map(|i| format!("z{i}")).collect();
        Some(Algebra::new(field, names, table, one))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn zero(&self) -> Elem {
        self.field.zeros(self.dim())
    }
    pub fn one(&self) -> Elem {
        self.one.clone()
    }
    pub fn basis(&self, i: usize) -> Elem {
        self.field.unit_vector(self.dim(), i)
    }
    pub fn basis_all(&self) -> Vec<Elem> {
        (0..self.dim()).map(|i| self.basis(i)).collect()
    }
    pub fn from_ints(&self, c: &[i64]) -> Elem {
        assert_eq!(c.len(), self.dim());
        c.iter().map(|&x| self.field.int(x)).collect()
    }
    pub fn scalar(&self, c: &Fe) -> Elem {
        self.one.iter().map(|x| x * c).collect()
    }
    pub fn is_zero(&self, a: &[Fe]) -> bool {
        vec_is_zero(a)
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }
    pub fn sub(&self, a: &[Fe], b: &[Fe]) -> Elem {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }
    pub fn neg(&self, a: &[Fe]) -> Elem {
        a.iter().map(|x| -x).collect()
    }
    pub fn scale(&self, a: &[Fe], c: &Fe) -> Elem {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> Elem {
        let d = self.dim();
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), d);
        out
    }

    pub fn mul3(&self, a: &[Fe], b: &[Fe], c: &[Fe]) -> Elem {
        self.mul(&self.mul(a, b), c)
    }

    /// Matrix of `x ↦ x·a` acting on the right of coordinate rows.
    pub fn right_mul_matrix(&self, a: &[Fe]) -> Mat {
        Mat::from_rows(self.field, self.dim(), (0..self.dim()).map(|i| self.mul(&self.basis(i), a)).collect())
    }

    /// Matrix of `x ↦ a·x` acting on the right of coordinate rows.
    pub fn left_mul_matrix(&self, a: &[Fe]) -> Mat {
        Mat::from_rows(self.field, self.dim(), (0..self.dim()).map(|i| self.mul(a, &self.basis(i))).collect())
    }

    /// Two-sided inverse, if it exists.
    pub fn inverse(&self, a: &[Fe]) -> Option<Elem> {
        let (x, _) = solve_left(&self.right_mul_matrix(a), &self.one)?;
        (self.mul(a, &x) == self.one).then_some(x)
    }

    pub fn pow(&self, a: &[Fe], n: u64) -> Elem {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Every element (finite prime field only).
    pub fn elements(&self) -> Option<Vec<Elem>> {
        self.field.all_vectors(self.dim())
    }

    pub fn is_commutative(&self) -> bool {
        let b = self.basis_all();
        b.iter().all(|x| b.iter().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Associativity, unit laws and (for finite algebras) inverses of every
    /// nonzero element. Distributivity holds by the bilinear construction.
    pub fn check_axioms(&self, require_division: bool) -> Result<(), ScalarError> {
        let b = self.basis_all();
        for x in &b {
            if self.mul(&self.one, x) != *x || self.mul(x, &self.one) != *x {
                return Err(ScalarError::Axiom(format!("1 is not a unit for {}", self.format(x))));
            }
            for y in &b {
                for z in &b {
                    if self.mul(&self.mul(x, y), z) != self.mul(x, &self.mul(y, z)) {
                        return Err(ScalarError::Axiom(format!(
                            "(xy)z != x(yz) for x={}, y={}, z={}",
                            self.format(x),
                            self.format(y),
                            self.format(z)
                        )));
                    }
                }
            }
        }
        if require_division {
            let sample = self.elements().unwrap_or_else(|| self.spanning_sample());
            for x in sample.iter().filter(|x| !vec_is_zero(x)) {
                if self.inverse(x).is_none() {
                    return Err(ScalarError::Axiom(format!("{} has no inverse", self.format(x))));
                }
            }
        }
        Ok(())
    }

    /// Basis vectors and their pairwise sums.
    pub fn spanning_sample(&self) -> Vec<Elem> {
        let b = self.basis_all();
        let mut out = b.clone();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                out.push(self.add(&b[i], &b[j]));
            }
        }
        out
    }

    /// Tuple rendering `(c0,c1,...)`, the format used by scenario files.
    pub fn format(&self, a: &[Fe]) -> String {
        let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Rendering in basis names, e.g. `1+2i-k`.
    pub fn pretty(&self, a: &[Fe]) -> String {
        let mut s = String::new();
        for (c, name) in a.iter().zip(&self.names) {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let term = if name == "1" {
                cs.clone()
            } else if c.is_one() {
                name.clone()
            } else if cs == "-1" {
                format!("-{name}")
            } else {
                format!("{cs}{name}")
            };
            if !s.is_empty() && !term.starts_with('-') {
                s.push('+');
            }
            s.push_str(&term);
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

fn monomial(field: PrimeField, deg: usize) -> Vec<Fe> {
    let mut v = field.zeros(deg + 1);
    v[deg] = field.one();
    v
}

/// Remainder of `a` modulo the monic `m` of degree `k`, padded to length `k`.
fn poly_mod(a: &[Fe], m: &[Fe], k: usize) -> Vec<Fe> {
    let mut r = a.to_vec();
    while r.len() > k {
        let lead = r.pop().expect("nonempty");
        if !lead.is_zero() {
            let shift = r.len() - k;
            for (i, c) in m[..k].iter().enumerate() {
                r[shift + i] = &r[shift + i] - &(&lead * c);
            }
        }
    }
    r.resize(k, a.first().map_or(PrimeField::Q, Fe::field).zero());
    r
}

fn poly_text(c: &[Fe]) -> String {
    let mut terms = Vec::new();
    for (i, x) in c.iter().enumerate().rev() {
        if x.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        let t = if i == 0 {
            x.to_string()
        } else if x.is_one() {
            mono
        } else {
            format!("{x}{mono}")
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Finds a monic factor of degree `1..=k/2`, if any.
fn find_factor(field: PrimeField, m: &[Fe]) -> Option<Vec<Fe>> {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        for low in field.all_vectors(d)? {
            let mut g = low;
            g.push(field.one());
            if poly_mod(m, &g, d).iter().all(Fe::is_zero) {
                return Some(g);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DomainKind {
    FiniteField { p: u32, k: usize, modulus: Vec<i64> },
    Rationals,
    Quaternion { a: String, b: String },
    /// A ring of endomorphisms given by a matrix basis.
    Restriction { dim: usize },
}

/// A verified division ring together with its description.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarDomain {
    kind: DomainKind,
    alg: Algebra,
}

/// Description accepted by [`domain_make`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    PrimeField(u32),
    FiniteField { p: u32, modulus: Vec<i64> },
    Rationals,
    Quaternion { a: (i64, i64), b: (i64, i64) },
}

pub fn domain_make(spec: &DomainSpec) -> Result<ScalarDomain, ScalarError> {
    match spec {
        DomainSpec::PrimeField(p) => {
            let f = PrimeField::Fp(*p);
            let alg = Algebra::prime(f);
            Ok(ScalarDomain { kind: DomainKind::FiniteField { p: *p, k: 1, modulus: vec![0, 1] }, alg })
        }
        DomainSpec::FiniteField { p, modulus } => {
            let f = PrimeField::Fp(*p);
            let m: Vec<Fe> = modulus.iter().map(|&c| f.int(c)).collect();
            if m.len() < 2 || !m.last().is_some_and(Fe::is_one) {
                return Err(ScalarError::BadModulus);
            }
            if let Some(g) = find_factor(f, &m) {
                return Err(ScalarError::Reducible { modulus: poly_text(&m), factor: poly_text(&g) });
            }
            let alg = Algebra::poly_quotient(f, &m)?;
            alg.check_axioms(true)?;
            let modulus = m.iter().map(|x| x.to_ratio().0.try_into().expect("small")).collect();
            Ok(ScalarDomain { kind: DomainKind::FiniteField { p: *p, k: m.len() - 1, modulus }, alg })
        }
        DomainSpec::Rationals => Ok(ScalarDomain { kind: DomainKind::Rationals, alg: Algebra::prime(PrimeField::Q) }),
        DomainSpec::Quaternion { a, b } => {
            let q = PrimeField::Q;
            let (a, b) = (q.frac(a.0, a.1), q.frac(b.0, b.1));
            if a.is_zero() || b.is_zero() {
                return Err(ScalarError::NotDivision { a: a.to_string(), b: b.to_string(), witness: "0".into() });
            }
            let alg = Algebra::quaternion(&a, &b);
            let dom = ScalarDomain { kind: DomainKind::Quaternion { a: a.to_string(), b: b.to_string() }, alg };
            if let Err(w) = dom.norm_certificate() {
                return Err(ScalarError::NotDivision { a: a.to_string(), b: b.to_string(), witness: w });
            }
            dom.alg.check_axioms(true)?;
            Ok(dom)
        }
    }
}

impl ScalarDomain {
    pub fn from_algebra(kind: DomainKind, alg: Algebra) -> ScalarDomain {
        ScalarDomain { kind, alg }
    }
    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }
    pub fn alg(&self) -> &Algebra {
        &self.alg
    }
    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }
    pub fn characteristic(&self) -> u32 {
        self.field().characteristic()
    }
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }
    pub fn is_quaternion(&self) -> bool {
        matches!(self.kind, DomainKind::Quaternion { .. })
    }

    /// Order of a finite domain.
    pub fn order(&self) -> Option<u64> {
        match self.field() {
            PrimeField::Fp(p) => Some((p as u64).pow(self.dim() as u32)),
            PrimeField::Q => None,
        }
    }

    /// Standard involution `σ` of a quaternion algebra.
    pub fn sigma(&self, x: &[Fe]) -> Elem {
        vec![x[0].clone(), -&x[1], -&x[2], -&x[3]]
    }

    pub fn norm(&self, x: &[Fe]) -> Fe {
        self.alg.mul(x, &self.sigma(x))[0].clone()
    }

    /// Gram matrix of the quaternion norm form; positive leading minors
    /// certify anisotropy. On failure returns the first bad minor.
    pub fn norm_certificate(&self) -> Result<Mat, String> {
        let f = self.field();
        let b = self.alg.basis_all();
        let two = f.int(2);
        let mut g = Mat::zeros(f, 4, 4);
        for i in 0..4 {
            for j in 0..4 {
                let s = self.alg.add(&b[i], &b[j]);
                let v = (self.norm(&s) - self.norm(&b[i]) - self.norm(&b[j])) / two.clone();
                g.set(i, j, v);
            }
        }
        for k in 1..=4 {
            let sub = Mat::from_rows(f, k, (0..k).map(|i| g.row(i)[..k].to_vec()).collect());
            let det = sub.determinant();
            let (n, _) = det.to_ratio();
            if n <= 0.into() {
                return Err(format!("leading minor {k} of the norm Gram matrix is {det}"));
            }
        }
        Ok(g)
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            DomainKind::FiniteField { p, k, modulus } if *k > 1 => {
                let m: Vec<Fe> = modulus.iter().map(|&c| PrimeField::Fp(*p).int(c)).collect();
                format!("F_{}^{} = F_{}[x]/({})", p, k, p, poly_text(&m))
            }
            DomainKind::FiniteField { p, .. } => format!("F_{p}"),
            DomainKind::Rationals => "Q".into(),
            DomainKind::Quaternion { a, b } => format!("quaternions ({a},{b}) over Q"),
            DomainKind::Restriction { dim } => format!("endomorphism ring of dimension {dim} over {}", self.field()),
        }
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionSpec {
    Identity,
    FrobeniusPower(u32),
    QuaternionStandard,
    /// `r ↦ -u·σ(r)·u` for a pure quaternion `u` with `u² = -1`.
    QuaternionTwisted(Elem),
    /// Recovered from group data rather than declared.
    Reconstructed,
}

impl fmt::Display for InvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionSpec::Identity => write!(f, "identity"),
            InvolutionSpec::FrobeniusPower(q) => write!(f, "frobenius-power({q})"),
            InvolutionSpec::QuaternionStandard => write!(f, "quaternion-standard"),
            InvolutionSpec::QuaternionTwisted(u) => {
                let parts: Vec<String> = u.iter().map(|x| x.to_string()).collect();
                write!(f, "quaternion-twisted({})", parts.join(","))
            }
            InvolutionSpec::Reconstructed => write!(f, "reconstructed"),
        }
    }
}

/// An involution materialized as a prime-field-linear map on coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    spec: InvolutionSpec,
    mat: Mat,
}

impl Involution {
    pub fn build(d: &ScalarDomain, spec: &InvolutionSpec) -> Result<Involution, ScalarError> {
        let alg = d.alg();
        let incompatible = || ScalarError::Incompatible { involution: spec.to_string(), domain: d.describe() };
        let images: Vec<Elem> = match spec {
            InvolutionSpec::Identity => {
                if !alg.is_commutative() {
                    return Err(incompatible());
                }
                alg.basis_all()
            }
            InvolutionSpec::FrobeniusPower(q) => {
                let DomainKind::FiniteField { p, .. } = d.kind() else { return Err(incompatible()) };
                if !is_power_of(*q, *p) {
                    return Err(incompatible());
                }
                alg.basis_all().iter().map(|b| alg.pow(b, *q as u64)).collect()
            }
            InvolutionSpec::QuaternionStandard => {
                if !d.is_quaternion() {
                    return Err(incompatible());
                }
                alg.basis_all().iter().map(|b| d.sigma(b)).collect()
            }
            InvolutionSpec::QuaternionTwisted(u) => {
                if !d.is_quaternion() || u.len() != 4 || !u[0].is_zero() {
                    return Err(incompatible());
                }
                if alg.mul(u, u) != alg.neg(&alg.one()) {
                    return Err(incompatible());
                }
                alg.basis_all().iter().map(|b| alg.neg(&alg.mul3(u, &d.sigma(b), u))).collect()
            }
            InvolutionSpec::Reconstructed => return Err(incompatible()),
        };
        let inv = Involution { spec: spec.clone(), mat: Mat::from_rows(d.field(), d.dim(), images) };
        inv.verify(alg).map_err(|_| ScalarError::NotInvolution(spec.to_string()))?;
        Ok(inv)
    }

    /// An involution given directly by its coordinate matrix.
    pub fn from_matrix(spec: InvolutionSpec, mat: Mat) -> Involution {
        Involution { spec, mat }
    }

    pub fn spec(&self) -> &InvolutionSpec {
        &self.spec
    }
    pub fn matrix(&self) -> &Mat {
        &self.mat
    }

    pub fn apply(&self, x: &[Fe]) -> Elem {
        self.mat.vec_mul(x)
    }

    /// `x** = x` and `(xy)* = y*x*` on all basis vectors and pairs.
    pub fn verify(&self, alg: &Algebra) -> Result<(), String> {
        if !self.mat.mul(&self.mat).is_identity() {
            return Err("applying twice is not the identity".into());
        }
        if self.apply(&alg.one()) != alg.one() {
            return Err("1* != 1".into());
        }
        let b = alg.basis_all();
        for x in &b {
            for y in &b {
                let lhs = self.apply(&alg.mul(x, y));
                let rhs = alg.mul(&self.apply(y), &self.apply(x));
                if lhs != rhs {
                    return Err(format!("(xy)* != y*x* for x={}, y={}", alg.pretty(x), alg.pretty(y)));
                }
            }
        }
        Ok(())
    }
}

fn is_power_of(q: u32, p: u32) -> bool {
    let mut x = 1u64;
    while x < q as u64 {
        x *= p as u64;
    }
    x == q as u64 && q > 1
}

/// `x*` for `x` in `d`.
pub fn involution_apply(d: &ScalarDomain, spec: &InvolutionSpec, x: &[Fe]) -> Result<Elem, ScalarError> {
    Ok(Involution::build(d, spec)?.apply(x))
}

/// Prime-field basis of the fixed set `H(K,*)`.
pub fn fixed_set_basis(d: &ScalarDomain, inv: &Involution) -> Subspace {
    let m = inv.matrix().minus_identity();
    Subspace::span(d.field(), d.dim(), left_kernel(&m))
}

/// `Σ c_i b_i` in the algebra.
pub fn combine(alg: &Algebra, coeffs: &[Fe], elems: &[Elem]) -> Elem {
    lin_comb(alg.field(), alg.dim(), coeffs, elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> ScalarDomain {
        domain_make(&DomainSpec::FiniteField { p: 2, modulus: vec![1, 1, 1] }).unwrap()
    }

    fn hamilton() -> ScalarDomain {
        domain_make(&DomainSpec::Quaternion { a: (-1, 1), b: (-1, 1) }).unwrap()
    }

    #[test]
    fn f4_omega_squared() {
        let d = f4();
        let w = d.alg().basis(1);
        assert_eq!(d.alg().mul(&w, &w), d.alg().from_ints(&[1, 1]));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let err = domain_make(&DomainSpec::FiniteField { p: 2, modulus: vec![1, 0, 1] }).unwrap_err();
        assert!(matches!(err, ScalarError::Reducible { .. }), "{err}");
    }

    #[test]
    fn hamilton_norm() {
        let d = hamilton();
        let x = d.alg().from_ints(&[1, 1, 1, 1]);
        assert_eq!(d.norm(&x), PrimeField::Q.int(4));
        assert!(d.norm_certificate().is_ok());
        let split = domain_make(&DomainSpec::Quaternion { a: (1, 1), b: (-1, 1) });
        assert!(matches!(split, Err(ScalarError::NotDivision { .. })));
    }

    #[test]
    fn quaternion_table() {
        let d = hamilton();
        let a = d.alg();
        let (i, j, k) = (a.basis(1), a.basis(2), a.basis(3));
        assert_eq!(a.mul(&i, &j), k);
        assert_eq!(a.mul(&j, &k), i);
        assert_eq!(a.mul(&k, &j), a.neg(&i));
        assert_eq!(a.mul(&k, &k), a.neg(&a.one()));
        assert!(a.check_axioms(true).is_ok());
    }

    #[test]
    fn twisted_involution_fixes_j_and_k() {
        let d = hamilton();
        let a = d.alg();
        let spec = InvolutionSpec::QuaternionTwisted(a.basis(1));
        let inv = Involution::build(&d, &spec).unwrap();
        assert_eq!(inv.apply(&a.basis(1)), a.neg(&a.basis(1)));
        assert_eq!(inv.apply(&a.basis(2)), a.basis(2));
        assert_eq!(inv.apply(&a.basis(3)), a.basis(3));
        let h = fixed_set_basis(&d, &inv);
        assert_eq!(h.dim(), 3);
        assert!(h.contains(&a.one()) && h.contains(&a.basis(2)) && h.contains(&a.basis(3)));
        let std = Involution::build(&d, &InvolutionSpec::QuaternionStandard).unwrap();
        assert_eq!(fixed_set_basis(&d, &std).dim(), 1);
    }

    #[test]
    fn frobenius_on_f4() {
        let d = f4();
        let inv = Involution::build(&d, &InvolutionSpec::FrobeniusPower(2)).unwrap();
        let w = d.alg().basis(1);
        assert_eq!(inv.apply(&w), d.alg().mul(&w, &w));
        let h = fixed_set_basis(&d, &inv);
        assert_eq!(h.basis(), &[d.alg().one()]);
    }

    #[test]
    fn incompatible_involutions() {
        let d = f4();
        assert!(matches!(
            Involution::build(&d, &InvolutionSpec::QuaternionStandard),
            Err(ScalarError::Incompatible { .. })
        ));
        let q = hamilton();
        assert!(Involution::build(&q, &InvolutionSpec::Identity).is_err());
    }

    #[test]
    fn matrix_ring_is_associative() {
        let m = Algebra::matrix_ring(PrimeField::Fp(3), 2);
        assert!(m.check_axioms(false).is_ok());
        assert!(!m.is_commutative());
    }
}

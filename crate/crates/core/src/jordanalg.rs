//! Special quadratic Jordan algebras inside associative algebras: Q-operators,
//! closure and division checks, involutory sets, commutativity criteria and
//! the ring lemma on `I_{x+1} = R ∩ (x+1)R`.

use std::fmt;

use crate::field::Fe;
use crate::linalg::{Mat, Subspace};
use crate::scalars::{fixed_set_basis, Algebra, Elem, Involution, ScalarDomain};

/// All `n×n` matrices over a prime field, as an algebra with basis `E_ij`.
#[derive(Clone, Debug)]
pub struct MatrixRing {
    n: usize,
    alg: Algebra,
}

impl MatrixRing {
    pub fn new(field: crate::field::PrimeField, n: usize) -> MatrixRing {
        assert!(n >= 1);
        MatrixRing { n, alg: Algebra::matrix_ring(field, n) }
    }
    pub fn size(&self) -> usize {
        self.n
    }
    pub fn alg(&self) -> &Algebra {
        &self.alg
    }
    pub fn embed(&self, m: &Mat) -> Elem {
        assert_eq!((m.rows(), m.cols()), (self.n, self.n));
        m.flat().to_vec()
    }
    pub fn to_mat(&self, e: &[Fe]) -> Mat {
        Mat::from_flat(self.alg.field(), self.n, self.n, e.to_vec())
    }
}

/// The associative ring a Jordan subspace lives in.
#[derive(Clone, Debug)]
pub enum Ambient {
    Domain(ScalarDomain),
    Matrices(MatrixRing),
}

impl Ambient {
    pub fn alg(&self) -> &Algebra {
        match self {
            Ambient::Domain(d) => d.alg(),
            Ambient::Matrices(m) => m.alg(),
        }
    }

    pub fn render(&self, e: &[Fe]) -> String {
        match self {
            Ambient::Domain(d) => d.alg().pretty(e),
            Ambient::Matrices(m) => m.to_mat(e).to_text(),
        }
    }
}

/// An additive subgroup `J` of an associative ring, given by a prime-field basis.
#[derive(Clone, Debug)]
pub struct JordanSubspace {
    pub ambient: Ambient,
    pub space: Subspace,
    pub basis: Vec<Elem>,
    pub contains_identity: bool,
}

impl JordanSubspace {
    /// `basis` is kept in the given order for diagnostics; it must be independent.
    pub fn new(ambient: Ambient, basis: Vec<Elem>) -> JordanSubspace {
        let alg = ambient.alg();
        let space = Subspace::span(alg.field(), alg.dim(), basis.clone());
        assert_eq!(space.dim(), basis.len(), "Jordan basis is not independent");
        let contains_identity = space.contains(&alg.one());
        JordanSubspace { ambient, space, basis, contains_identity }
    }

    pub fn alg(&self) -> &Algebra {
        self.ambient.alg()
    }

    pub fn contains(&self, x: &[Fe]) -> bool {
        self.space.contains(x)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// `Q_a(b) = aba`.
pub fn q_operator(alg: &Algebra, a: &[Fe], b: &[Fe]) -> Elem {
    alg.mul3(a, b, a)
}

/// `Q_{a,b}(c) = Q_{a+b}(c) - Q_a(c) - Q_b(c) = acb + bca`.
pub fn q_bilinear(alg: &Algebra, a: &[Fe], b: &[Fe], c: &[Fe]) -> Elem {
    alg.add(&alg.mul3(a, c, b), &alg.mul3(b, c, a))
}

/// `Q_a(b)` escaping `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureWitness {
    pub a: String,
    pub b: String,
    pub value: String,
    pub polar_with: Option<String>,
}

impl fmt::Display for ClosureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.polar_with {
            None => write!(f, "Q_{}({}) = {} is not in J", self.a, self.b, self.value),
            Some(c) => write!(f, "Q_{{{},{}}}({}) = {} is not in J", self.a, c, self.b, self.value),
        }
    }
}

/// Closure `J·Q_a ⊆ J`, reduced to `Q_{e_i}(e_j)` and `Q_{e_i,e_k}(e_j)` on basis vectors.
pub fn is_jordan_closed(j: &JordanSubspace) -> Result<(), ClosureWitness> {
    let alg = j.alg();
    let r = |e: &[Fe]| j.ambient.render(e);
    for a in &j.basis {
        for b in &j.basis {
            let v = q_operator(alg, a, b);
            if !j.contains(&v) {
                return Err(ClosureWitness { a: r(a), b: r(b), value: r(&v), polar_with: None });
            }
        }
    }
    for (ia, a) in j.basis.iter().enumerate() {
        for c in &j.basis[ia + 1..] {
            for b in &j.basis {
                let v = q_bilinear(alg, a, c, b);
                if !j.contains(&v) {
                    return Err(ClosureWitness { a: r(a), b: r(b), value: r(&v), polar_with: Some(r(c)) });
                }
            }
        }
    }
    Ok(())
}

/// `bab ∈ J` for basis pairs; a failure reports the same triple as [`is_jordan_closed`].
pub fn hua_closure_check(j: &JordanSubspace) -> Result<(), ClosureWitness> {
    let alg = j.alg();
    let r = |e: &[Fe]| j.ambient.render(e);
    for b in &j.basis {
        for a in &j.basis {
            let v = alg.mul3(b, a, b);
            if !j.contains(&v) {
                return Err(ClosureWitness { a: r(b), b: r(a), value: r(&v), polar_with: None });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionMode {
    Exhaustive(usize),
    /// Structural certificate plus the number of sampled elements.
    Certified { certificate: String, sampled: usize },
    Sampled(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionVerdict {
    pub holds: bool,
    pub mode: DivisionMode,
    pub witness: Option<String>,
}

/// Every nonzero element of `J` is invertible with inverse in `J`.
///
/// Finite base: exhaustive. Otherwise `sample` is tested and, inside a
/// quaternion domain, `σ(J) ⊆ J` together with a positive definite norm form
/// certifies the claim for all of `J` since `r⁻¹ = σ(r)/N(r)`.
pub fn is_division_jordan(j: &JordanSubspace, sample: &[Elem]) -> DivisionVerdict {
    let alg = j.alg();
    let test = |x: &Elem| -> Option<String> {
        if alg.is_zero(x) {
            return None;
        }
        match alg.inverse(x) {
            None => Some(format!("{} is not invertible", j.ambient.render(x))),
            Some(y) if !j.contains(&y) => {
                Some(format!("inverse of {} is {}, not in J", j.ambient.render(x), j.ambient.render(&y)))
            }
            Some(_) => None,
        }
    };
    if let Some(elems) = j.space.elements() {
        let n = elems.len();
        let witness = elems.iter().find_map(test);
        return DivisionVerdict { holds: witness.is_none(), mode: DivisionMode::Exhaustive(n), witness };
    }
    let witness = sample.iter().find_map(test);
    if let Ambient::Domain(d) = &j.ambient {
        if d.is_quaternion() {
            let stable = j.basis.iter().all(|b| j.contains(&d.sigma(b)));
            let cert = d.norm_certificate();
            let certificate = match (&cert, stable) {
                (Ok(_), true) => "norm form positive definite and J stable under the standard involution".to_string(),
                (Err(e), _) => e.clone(),
                (Ok(_), false) => "J is not stable under the standard involution".to_string(),
            };
            let ok = cert.is_ok() && stable;
            return DivisionVerdict {
                holds: witness.is_none() && ok,
                mode: DivisionMode::Certified { certificate, sampled: sample.len() },
                witness: witness.or((!ok).then(|| "certificate unavailable".to_string())),
            };
        }
    }
    DivisionVerdict { holds: witness.is_none(), mode: DivisionMode::Sampled(sample.len()), witness }
}

/// `(K, K₀, *)` with `K₀` an additive subgroup of `K`.
#[derive(Clone, Debug)]
pub struct InvolutorySet {
    pub domain: ScalarDomain,
    pub k0: Subspace,
    pub inv: Involution,
}

impl InvolutorySet {
    pub fn new(domain: ScalarDomain, k0_basis: Vec<Elem>, inv: Involution) -> InvolutorySet {
        let k0 = Subspace::span(domain.field(), domain.dim(), k0_basis);
        InvolutorySet { domain, k0, inv }
    }

    pub fn alg(&self) -> &Algebra {
        self.domain.alg()
    }

    pub fn star(&self, x: &[Fe]) -> Elem {
        self.inv.apply(x)
    }

    /// Canonical representative of `x + K₀`.
    pub fn reduce(&self, x: &[Fe]) -> Elem {
        self.k0.reduce(x)
    }

    pub fn in_k0(&self, x: &[Fe]) -> bool {
        self.k0.contains(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleWitness {
    pub reason: String,
    pub x: Option<String>,
}

impl fmt::Display for AmpleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.x {
            Some(x) => write!(f, "x = {x}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

/// `1 ∈ K₀`, `K₀ ⊆ H(K,*)`, `x*K₀x ⊆ K₀` and `x + x* ∈ K₀`.
///
/// The quadratic condition is checked on basis vectors and their pairwise sums,
/// which covers the polar terms.
pub fn is_ample(s: &InvolutorySet) -> Result<(), AmpleWitness> {
    let alg = s.alg();
    let p = |x: &[Fe]| alg.pretty(x);
    if !s.in_k0(&alg.one()) {
        return Err(AmpleWitness { reason: "1 is not in K0".into(), x: None });
    }
    let h = fixed_set_basis(&s.domain, &s.inv);
    if let Some(k) = s.k0.basis().iter().find(|k| !h.contains(k)) {
        return Err(AmpleWitness { reason: format!("K0 element {} is not fixed by *", p(k)), x: None });
    }
    let check = |x: &Elem, trace: bool| -> Result<(), AmpleWitness> {
        let xs = s.star(x);
        for k in s.k0.basis() {
            let v = alg.mul3(&xs, k, x);
            if !s.in_k0(&v) {
                return Err(AmpleWitness {
                    reason: format!("x*·{}·x = {} is not in K0", p(k), p(&v)),
                    x: Some(p(x)),
                });
            }
        }
        if trace {
            let t = alg.add(x, &xs);
            if !s.in_k0(&t) {
                return Err(AmpleWitness { reason: format!("trace x + x* = {} is not in K0", p(&t)), x: Some(p(x)) });
            }
        }
        Ok(())
    };
    let b = alg.basis_all();
    for x in &b {
        check(x, true)?;
    }
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            check(&alg.add(&b[i], &b[j]), false)?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub commutative: bool,
    /// First non-commuting basis pair `(a, b, ab, ba)`.
    pub pair_evidence: Option<(String, String, String, String)>,
    pub q_commutative: bool,
    /// First pair of non-commuting Q-operators and the element separating them.
    pub q_evidence: Option<String>,
}

impl Classification {
    pub fn agrees(&self) -> bool {
        self.commutative == self.q_commutative
    }
}

/// Commutativity by basis pairs, cross-checked by commutation of the
/// Q-operators restricted to `J`.
///
/// Basis Q-operators alone can commute in a noncommutative `J`, so the
/// operator set also includes `Q_{e_i+e_j}`.
pub fn classify_commutative(j: &JordanSubspace) -> Classification {
    let alg = j.alg();
    let r = |e: &[Fe]| j.ambient.render(e);
    let mut pair_evidence = None;
    'outer: for (ia, a) in j.basis.iter().enumerate() {
        for b in &j.basis[ia + 1..] {
            let (ab, ba) = (alg.mul(a, b), alg.mul(b, a));
            if ab != ba {
                pair_evidence = Some((r(a), r(b), r(&ab), r(&ba)));
                break 'outer;
            }
        }
    }
    let mut ops: Vec<Elem> = j.basis.clone();
    for ia in 0..j.basis.len() {
        for ib in ia + 1..j.basis.len() {
            ops.push(alg.add(&j.basis[ia], &j.basis[ib]));
        }
    }
    let mut q_evidence = None;
    'q: for (ia, a) in ops.iter().enumerate() {
        for b in &ops[ia + 1..] {
            for c in &j.basis {
                let ab = q_operator(alg, a, &q_operator(alg, b, c));
                let ba = q_operator(alg, b, &q_operator(alg, a, c));
                if ab != ba {
                    q_evidence = Some(format!(
                        "Q_({})Q_({}) and Q_({})Q_({}) differ on {}: {} vs {}",
                        r(a),
                        r(b),
                        r(b),
                        r(a),
                        r(c),
                        r(&ab),
                        r(&ba)
                    ));
                    break 'q;
                }
            }
        }
    }
    Classification {
        commutative: pair_evidence.is_none(),
        pair_evidence,
        q_commutative: q_evidence.is_none(),
        q_evidence,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealVerdict {
    HypothesisFails(String),
    /// `(x+1)⁻¹ ∈ R`.
    InverseInR(String),
    /// `I_{x+1}` is a proper two-sided ideal containing every `x⁻¹ux - u`.
    ProperIdeal { dim: usize },
    LemmaFails(String),
}

impl IdealVerdict {
    pub fn lemma_holds(&self) -> bool {
        matches!(self, IdealVerdict::InverseInR(_) | IdealVerdict::ProperIdeal { .. })
    }
}

/// Dichotomy for a subring `R` of `S` normalized by units `x` and `x+1`.
pub fn ideal_lemma_check(s: &Algebra, r_basis: &[Elem], x: &[Fe]) -> IdealVerdict {
    let p = |e: &[Fe]| s.pretty(e);
    let r = Subspace::span(s.field(), s.dim(), r_basis.to_vec());
    let x1 = s.add(x, &s.one());
    let Some(xi) = s.inverse(x) else { return IdealVerdict::HypothesisFails(format!("x = {} is not a unit", p(x))) };
    let Some(x1i) = s.inverse(&x1) else {
        return IdealVerdict::HypothesisFails(format!("x+1 = {} is not a unit", p(&x1)));
    };
    for (u, ui) in [(x, &xi), (&x1[..], &x1i)] {
        for b in r.basis() {
            if !r.contains(&s.mul3(ui, b, u)) {
                return IdealVerdict::HypothesisFails(format!("{} does not normalize R", p(u)));
            }
        }
    }
    if r.contains(&x1i) {
        return IdealVerdict::InverseInR(p(&x1i));
    }
    let shifted = Subspace::span(s.field(), s.dim(), r.basis().iter().map(|b| s.mul(&x1, b)).collect());
    let ideal = r.intersect(&shifted);
    if ideal.contains(&s.one()) {
        return IdealVerdict::LemmaFails("I_{x+1} contains 1".into());
    }
    for a in ideal.basis() {
        for b in r.basis() {
            if !ideal.contains(&s.mul(a, b)) || !ideal.contains(&s.mul(b, a)) {
                return IdealVerdict::LemmaFails(format!("I_{{x+1}} is not an ideal: {} times {}", p(a), p(b)));
            }
        }
    }
    for u in r.basis() {
        let d = s.sub(&s.mul3(&xi, u, x), u);
        if !ideal.contains(&d) {
            return IdealVerdict::LemmaFails(format!("x⁻¹ux - u = {} is not in I_{{x+1}}", p(&d)));
        }
    }
    IdealVerdict::ProperIdeal { dim: ideal.dim() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::scalars::{domain_make, DomainSpec, InvolutionSpec};

    fn f4() -> ScalarDomain {
        domain_make(&DomainSpec::FiniteField { p: 2, modulus: vec![1, 1, 1] }).unwrap()
    }
    fn ham() -> ScalarDomain {
        domain_make(&DomainSpec::Quaternion { a: (-1, 1), b: (-1, 1) }).unwrap()
    }
    fn ham_j() -> JordanSubspace {
        let d = ham();
        let b = vec![d.alg().basis(0), d.alg().basis(2), d.alg().basis(3)];
        JordanSubspace::new(Ambient::Domain(d), b)
    }

    /// `span{I, C}` for the companion matrix `C` of `x³` over `F₃`.
    fn nilpotent_span() -> JordanSubspace {
        let f = PrimeField::Fp(3);
        let ring = MatrixRing::new(f, 3);
        let c = Mat::from_ints(f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let b = vec![ring.embed(&Mat::identity(f, 3)), ring.embed(&c)];
        JordanSubspace::new(Ambient::Matrices(ring), b)
    }

    #[test]
    fn q_operator_examples() {
        let d = ham();
        let a = d.alg();
        assert_eq!(q_operator(a, &a.one(), &a.basis(3)), a.basis(3));
        assert_eq!(q_operator(a, &a.basis(2), &a.basis(3)), a.basis(3));
        let f = f4();
        let w = f.alg().basis(1);
        assert_eq!(q_operator(f.alg(), &w, &f.alg().one()), f.alg().mul(&w, &w));
    }

    #[test]
    fn closure_and_division() {
        let d = f4();
        let j = JordanSubspace::new(Ambient::Domain(d.clone()), vec![d.alg().one()]);
        assert!(is_jordan_closed(&j).is_ok());
        assert!(is_division_jordan(&j, &[]).holds);
        let hj = ham_j();
        assert!(is_jordan_closed(&hj).is_ok());
        assert!(hua_closure_check(&hj).is_ok());
        let v = is_division_jordan(&hj, &hj.basis.clone());
        assert!(v.holds, "{v:?}");
        assert!(matches!(v.mode, DivisionMode::Certified { .. }));
    }

    #[test]
    fn nilpotent_span_fails_with_witness() {
        let j = nilpotent_span();
        let w = is_jordan_closed(&j).unwrap_err();
        assert_eq!(w.a, "[[0,1,0],[0,0,1],[0,0,0]]");
        assert_eq!(w.b, "[[1,0,0],[0,1,0],[0,0,1]]");
        assert_eq!(w.value, "[[0,0,1],[0,0,0],[0,0,0]]");
        assert_eq!(hua_closure_check(&j).unwrap_err(), w);
        assert!(!is_division_jordan(&j, &[]).holds);
    }

    #[test]
    fn ampleness() {
        let d = f4();
        let inv = Involution::build(&d, &InvolutionSpec::FrobeniusPower(2)).unwrap();
        assert!(is_ample(&InvolutorySet::new(d.clone(), vec![d.alg().one()], inv)).is_ok());
        let h = ham();
        let a = h.alg().clone();
        let tw = Involution::build(&h, &InvolutionSpec::QuaternionTwisted(a.basis(1))).unwrap();
        let full = InvolutorySet::new(h.clone(), vec![a.one(), a.basis(2), a.basis(3)], tw.clone());
        assert!(is_ample(&full).is_ok());
        let small = InvolutorySet::new(h, vec![a.one()], tw);
        let w = is_ample(&small).unwrap_err();
        assert_eq!(w.x.as_deref(), Some("j"));
        assert!(w.reason.contains("trace"), "{w}");
    }

    #[test]
    fn commutativity_criteria() {
        let hj = ham_j();
        let c = classify_commutative(&hj);
        assert!(!c.commutative && c.agrees());
        let (a, b, ab, ba) = c.pair_evidence.unwrap();
        assert_eq!((a.as_str(), b.as_str(), ab.as_str(), ba.as_str()), ("j", "k", "i", "-i"));
        let d = f4();
        let one = JordanSubspace::new(Ambient::Domain(d.clone()), vec![d.alg().one()]);
        assert!(classify_commutative(&one).commutative);
    }

    #[test]
    fn ideal_lemma_examples() {
        let d = f4();
        let a = d.alg();
        let v = ideal_lemma_check(a, &[a.one()], &a.basis(1));
        assert_eq!(v, IdealVerdict::ProperIdeal { dim: 0 });
        let v = ideal_lemma_check(a, &a.basis_all(), &a.basis(1));
        assert!(matches!(v, IdealVerdict::InverseInR(_)));
        let m = MatrixRing::new(PrimeField::Fp(3), 2);
        let diag = |x: i64, y: i64| m.embed(&Mat::from_ints(PrimeField::Fp(3), &[&[x, 0], &[0, y]]));
        let v = ideal_lemma_check(m.alg(), &[diag(1, 0), diag(0, 1)], &diag(1, 2));
        assert!(matches!(v, IdealVerdict::HypothesisFails(_)), "{v:?}");
    }
}

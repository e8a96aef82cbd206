//! Scenario files, the built-in catalog, and report rendering.

mod parse;
mod report;

use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::check::{CheckRecord, Mode};
use crate::formspaces::{doubled, extend_witt1, sl2jr_build, OrthogonalSpace, PseudoQuadraticSpace};
use crate::groupcore::RankOnePair;
use crate::jordanalg::{is_ample, is_jordan_closed, Ambient, InvolutorySet, JordanSubspace, MatrixRing};
use crate::reconstruct::{self, Options, Reference};
use crate::scalars::{domain_make, fixed_set_basis, Involution, InvolutionSpec, ScalarDomain, ScalarError};

pub use parse::{parse, DomainBlock, InstanceBlock, InvolutionBlock, Sampling, Scenario, Value, MIN_PAIRS, MIN_SAMPLES};
pub use report::{emit_report, Format, Report, Totals};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScenarioError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("missing block [{0}]")]
    MissingBlock(String),
    #[error("domain: {0}")]
    Domain(#[from] ScalarError),
    #[error("instance: {0}")]
    Construct(String),
    #[error("unknown scenario {0:?}; try `catalog`")]
    Unknown(String),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

const CATALOG: &[(&str, &str)] = &[
    ("sl2-f5-quadratic", include_str!("../../catalog/sl2-f5-quadratic.scn")),
    ("su3-f4", include_str!("../../catalog/su3-f4.scn")),
    ("su3-f9", include_str!("../../catalog/su3-f9.scn")),
    ("orth-f2", include_str!("../../catalog/orth-f2.scn")),
    ("su-quat-q", include_str!("../../catalog/su-quat-q.scn")),
    ("doubled-su3-f4", include_str!("../../catalog/doubled-su3-f4.scn")),
];

/// The built-in scenarios, in catalog order.
pub fn catalog_list() -> Vec<Scenario> {
    CATALOG.iter().map(|(name, text)| parse(text).unwrap_or_else(|e| panic!("built-in scenario {name}: {e}"))).collect()
}

pub fn catalog_source(name: &str) -> Option<&'static str> {
    CATALOG.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn catalog_get(name: &str) -> Result<Scenario, ScenarioError> {
    parse(catalog_source(name).ok_or_else(|| ScenarioError::Unknown(name.to_string()))?)
}

/// A catalog name or a path to a scenario file.
pub fn load(arg: &str) -> Result<Scenario, ScenarioError> {
    if let Some(text) = catalog_source(arg) {
        return parse(text);
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(ScenarioError::Unknown(arg.to_string()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| ScenarioError::Io { path: arg.to_string(), msg: e.to_string() })?;
    parse(&text)
}

/// Every id a report can contain: instance checks and reconstruction checks.
pub fn known_ids() -> Vec<&'static str> {
    crate::catalog_checks::CHECKS.iter().map(|d| d.id).collect()
}

fn pattern_matches(pat: &str, id: &str) -> bool {
    match pat.strip_suffix('*') {
        _ if pat == "all" => true,
        Some(prefix) => id.starts_with(prefix),
        None => id == pat,
    }
}

pub fn pattern_known(pat: &str) -> bool {
    pat == "all" || known_ids().iter().any(|id| pattern_matches(pat, id))
}

pub fn selected(patterns: &[String], id: &str) -> bool {
    patterns.iter().any(|p| pattern_matches(p, id))
}

/// A constructed instance with the checks made while building it.
pub struct Instance {
    pub pair: RankOnePair,
    pub reference: Reference,
    pub records: Vec<CheckRecord>,
    pub domain: String,
    pub involution: Option<String>,
    pub description: String,
}

fn construct(e: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Construct(e.to_string())
}

fn scalar_domain(sc: &Scenario) -> Result<ScalarDomain, ScenarioError> {
    match &sc.domain {
        DomainBlock::Scalars(spec) => Ok(domain_make(spec)?),
        DomainBlock::Matrices { .. } => Err(construct("a division ring domain is required")),
    }
}

fn involution(d: &ScalarDomain, block: &InvolutionBlock) -> Result<Involution, ScenarioError> {
    let spec = match block {
        InvolutionBlock::Identity => InvolutionSpec::Identity,
        InvolutionBlock::FrobeniusPower(q) => InvolutionSpec::FrobeniusPower(*q),
        InvolutionBlock::QuaternionStandard => InvolutionSpec::QuaternionStandard,
        InvolutionBlock::QuaternionTwisted(u) => InvolutionSpec::QuaternionTwisted(u.elem(d.alg())?),
    };
    Ok(Involution::build(d, &spec)?)
}

fn add_samples(pair: &mut RankOnePair, s: &Sampling, rng: &mut ChaCha8Rng) {
    if pair.is_finite() {
        return;
    }
    for fam in [&mut pair.a, &mut pair.b] {
        let sample = (0..s.params).map(|_| fam.random_param(rng, s.bound)).collect();
        fam.sample = sample;
    }
}

pub fn build_instance(sc: &Scenario) -> Result<Instance, ScenarioError> {
    let mut rng = ChaCha8Rng::seed_from_u64(sc.sampling.seed);
    let mut records = Vec::new();
    let (mut pair, reference, domain, inv_text, description) = match &sc.instance {
        InstanceBlock::Sl2jr { jordan } => {
            let ambient = match &sc.domain {
                DomainBlock::Matrices { p, size } => Ambient::Matrices(MatrixRing::new(crate::field::PrimeField::Fp(*p), *size)),
                DomainBlock::Scalars(_) => Ambient::Domain(scalar_domain(sc)?),
            };
            let domain = match &ambient {
                Ambient::Domain(d) => d.describe(),
                Ambient::Matrices(m) => format!("{}x{} matrices over {}", m.size(), m.size(), m.alg().field()),
            };
            let basis = jordan.elems(ambient.alg())?;
            let j = JordanSubspace::new(ambient, basis);
            if j.dim() == 0 {
                return Err(construct("J must be nonzero"));
            }
            is_jordan_closed(&j).map_err(|w| construct(format!("J is not Jordan closed: {w}")))?;
            records.push(CheckRecord::pass_with("instance.jordan-closed", Mode::Exhaustive, format!("dim J = {}", j.dim())));
            let pair = sl2jr_build(&j).map_err(construct)?;
            (pair, Reference::None, domain, None, format!("sl2jr, dim J = {}", j.dim()))
        }
        InstanceBlock::Pseudoquadratic { k0, pi, gram } => {
            let d = scalar_domain(sc)?;
            let inv = involution(&d, sc.involution.as_ref().expect("checked by the parser"))?;
            let inv_text = inv.spec().to_string();
            let k0_basis = match k0 {
                None => fixed_set_basis(&d, &inv).basis().to_vec(),
                Some(v) => v.elems(d.alg())?,
            };
            let alg = d.alg().clone();
            let domain = d.describe();
            let set = InvolutorySet::new(d, k0_basis, inv);
            is_ample(&set).map_err(|w| construct(format!("(K, K0, *) is not an involutory set: {w}")))?;
            records.push(CheckRecord::pass_with("instance.involutory-set", Mode::Exhaustive, format!("dim K0 = {}", set.k0.dim())));
            let pi_diag = pi.elems(&alg)?;
            let g = gram.matrix(&alg)?;
            let m = pi_diag.len();
            let space = PseudoQuadraticSpace::new(set, pi_diag, g).map_err(construct)?;
            let sample: Vec<_> = (0..sc.sampling.samples).map(|_| space.random_vec(&mut rng, sc.sampling.bound)).collect();
            let ext = extend_witt1(space, &sample).map_err(construct)?;
            records.push(CheckRecord::pass_with("instance.anisotropy", ext.anisotropy.mode(), ext.anisotropy.describe()));
            let mut pair = ext.root_families().map_err(construct)?;
            add_samples(&mut pair, &sc.sampling, &mut rng);
            records.extend(ext.law_checks(&pair, &mut rng, sc.sampling.samples));
            (pair, Reference::Extended(ext), domain, Some(inv_text), format!("pseudoquadratic, m = {m}"))
        }
        InstanceBlock::OrthogonalChar2 { q } => {
            let d = scalar_domain(sc)?;
            if d.characteristic() != 2 {
                return Err(construct(format!("orthogonal-char2 needs characteristic 2, {} has characteristic {}", d.describe(), d.characteristic())));
            }
            let domain = d.describe();
            let coeffs = q.matrix(d.alg())?;
            let sp = OrthogonalSpace::new(d, coeffs).map_err(construct)?;
            let pair = sp.root_families().map_err(construct)?;
            records.extend(sp.law_checks(&pair));
            let desc = format!("orthogonal-char2, dim L0 = {}, dim Def(q) = {}", sp.l(), sp.def.dim());
            (pair, Reference::Orthogonal(sp), domain, None, desc)
        }
    };
    records.insert(0, CheckRecord::pass_with("instance.domain", Mode::Exhaustive, domain.clone()));
    if let Some(t) = &inv_text {
        records.insert(1, CheckRecord::pass_with("instance.involution", Mode::Exhaustive, t.clone()));
    }
    let (reference, description) = if sc.copies == 2 {
        let base = pair.clone();
        pair = doubled(&base).map_err(construct)?;
        (Reference::Base(base), format!("{description}, two diagonal copies"))
    } else {
        (reference, description)
    };
    Ok(Instance { pair, reference, records, domain, involution: inv_text, description })
}

/// Builds the instance, runs the reconstruction and assembles the report.
pub fn run_scenario(sc: &Scenario) -> Result<Report, ScenarioError> {
    let inst = build_instance(sc)?;
    let opts = Options { samples: sc.sampling.samples, pairs: sc.sampling.pairs, seed: sc.sampling.seed };
    let rec = reconstruct::run(&inst.pair, &inst.reference, &opts);
    let checks: Vec<CheckRecord> = inst.records.into_iter().chain(rec.records).filter(|r| selected(&sc.checks, &r.id)).collect();
    Ok(Report::new(sc, inst.domain, inst.involution, inst.description, rec.summary, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_the_six_builtins() {
        let names: Vec<String> = catalog_list().into_iter().map(|s| s.name).collect();
        assert_eq!(names, ["sl2-f5-quadratic", "su3-f4", "su3-f9", "orth-f2", "su-quat-q", "doubled-su3-f4"]);
    }

    #[test]
    fn patterns() {
        assert!(pattern_matches("all", "f.square"));
        assert!(pattern_matches("f.*", "f.square"));
        assert!(!pattern_matches("f.*", "form.isotropic-lines"));
        assert!(pattern_matches("f.square", "f.square"));
        assert!(!pattern_matches("f.squar", "f.square"));
    }

    #[test]
    fn orth_f2_defect_is_the_third_axis() {
        let inst = build_instance(&catalog_get("orth-f2").unwrap()).unwrap();
        let Reference::Orthogonal(sp) = inst.reference else { panic!("expected an orthogonal reference") };
        let f = crate::field::PrimeField::Fp(2);
        assert_eq!(sp.def.basis(), &[vec![f.zero(), f.zero(), f.one()]]);
    }

    #[test]
    fn quaternion_k0_is_span_of_one_j_k() {
        let sc = catalog_get("su-quat-q").unwrap();
        let inst = build_instance(&sc).unwrap();
        let Reference::Extended(ext) = inst.reference else { panic!("expected an extended reference") };
        let alg = ext.alg().clone();
        let want = crate::linalg::Subspace::span(alg.field(), 4, vec![alg.basis(0), alg.basis(2), alg.basis(3)]);
        assert_eq!(ext.base.k0(), &want);
        assert!(matches!(ext.anisotropy, crate::formspaces::Anisotropy::Certified { .. }));
    }
}

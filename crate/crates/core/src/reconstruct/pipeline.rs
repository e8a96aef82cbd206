//! End-to-end reconstruction: degree verdict, normal form, `A₀`, `ρ`, `f`,
//! `J ⊆ R ⊆ S`, `*`, `Ā`, `Φ`, `X(W)` and, on the noncommutative branch, the
//! coordinates and the round trip against the rebuilt extended space.

use std::collections::{BTreeMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::check::{ensure, CheckRecord, Mode};
use crate::formspaces::{ExtendedSpace, OrthogonalSpace};
use crate::groupcore::{commutator_space, cubic_verify, ActionDegree, Engine, RankOnePair};
use crate::linalg::{Mat, Subspace};

use super::abar::Abar;
use super::coords::{Coordinates, Identification};
use super::identities::{f_checks, hua_checks, pair_list, rho_checks};
use super::normal::{induce_pair, reduce_to_normal_form};
use super::phi::{phi_checks, xw_checks};
use super::rings::Rings;
use super::Core;

#[derive(Clone, Debug)]
pub struct Options {
    /// Random vectors for sampled form checks.
    pub samples: usize,
    /// Pairs `(a,b)` for pairwise identities when not exhaustive.
    pub pairs: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Options {
        Options { samples: 50, pairs: 24, seed: 0 }
    }
}

/// What the module was built from, for checks that compare against it.
#[derive(Clone, Debug)]
pub enum Reference {
    None,
    Extended(ExtendedSpace),
    Orthogonal(OrthogonalSpace),
    /// The base module of a doubled instance.
    Base(RankOnePair),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Quadratic,
    Commutative,
    Noncommutative,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub action: String,
    pub normal_form: Option<String>,
    pub branch: Option<Branch>,
    pub dims: BTreeMap<String, u64>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Reconstruction {
    pub fn record(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }
}

const ACTION: &[&str] = &["action.degree", "action.nilpotency", "normal-form", "a0.reference"];
const DECOMP: &[&str] = &[
    "decomp.va-complement",
    "decomp.cva-is-va0",
    "decomp.va-is-centralizer",
    "decomp.cva-is-vaa",
    "decomp.intersection-is-cvg0",
    "decomp.va-splits",
    "root-subgroup.centralizer-of-vector",
    "root-subgroup.quotient-centralizer",
];
const RANK_ONE: &[&str] = &["rank-one.partners", "rank-one.mu-swaps", "rank-one.mu-unique", "rank-one.special"];
const A0: &[&str] = &["rank-one.a0-special", "rank-one.a0-bounds", "rank-one.a0-quadratic", "rank-one.characteristic", "rank-one.abelian-exponent"];
const ORTH: &[&str] = &["orth.rank-one-partner", "orth.a0-closed-form"];
const RHO: &[&str] = &["rho.h-n-is-n", "rho.mu-squared", "rho.a0-formula", "rho.additive-on-a0", "rho.hua-expansion"];
const F: &[&str] = &["f.biadditive", "f.equivariant", "f.kernels", "f.commutator", "f.square", "f.hua-difference", "f.values-in-s", "f.diagonal-twice-h"];
const RINGS: &[&str] = &[
    "jordan.j-is-span",
    "jordan.closed",
    "jordan.division",
    "jordan.classify",
    "ring.closures",
    "ring.r-equals-s",
    "ring.skewfield",
    "ring.hua-normalizes-r",
    "ring.ideal-lemma",
    "ring.j-equals-r-commutative",
    "ring.abelian-field",
    "a0.centralizer-equalities",
    "star.well-defined",
    "star.involutory",
    "star.anti-automorphism",
    "star.fixes-j",
    "star.hua-compatible",
    "star.j-hermitian",
    "star.j-ample",
];
const HUA: &[&str] = &["hua.minus-mu-inverse", "hua.conjugate-formula", "hua.minus-mu-product-in-r"];
const ABAR: &[&str] = &["abar.quotient-model", "abar.well-defined", "abar.module-axioms", "abar.integer-scalars", "abar.divisibility"];
const PHI: &[&str] = &["phi.in-cvg0", "phi.biadditive", "phi.hua-twist", "phi.right-kernel", "phi.semilinear", "phi.isomorphism", "phi.nondegenerate"];
const XW: &[&str] = &["xw.invariant", "xw.intersections", "xw.commutator", "xw.direct", "xw.irreducible-transfer", "xw.complete-reducibility", "xw.summands-isomorphic"];
const COORDS: &[&str] = &[
    "pi-abar.well-defined",
    "pi-abar.scalar",
    "pi-abar.additive",
    "pi-abar.anisotropic",
    "pi-abar.hermitian-iff-a0",
    "pi-abar.diagonal",
    "f.skew-hermitian",
    "f.sesquilinear",
    "coords.unique",
    "coords.mu",
    "coords.root-action",
    "coords.scalar-commutes",
    "su.alpha-identification",
    "su.beta-identification",
    "pi-v.preserved",
    "roundtrip.transvection-law",
    "witt.index-one",
];
const IDENT: &[&str] = &["quaternion.identification", "star.matches-instance"];

/// Every check id the reconstruction can emit, in report order.
pub fn all_ids() -> Vec<&'static str> {
    [ACTION, DECOMP, RANK_ONE, A0, ORTH, RHO, F, RINGS, HUA, ABAR, PHI, XW, COORDS, IDENT].concat()
}

struct Out {
    records: Vec<CheckRecord>,
}

impl Out {
    fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    /// Records of one stage; a stage error fails every id of the stage.
    fn stage(&mut self, ids: &[&str], r: Result<Vec<CheckRecord>, String>) {
        match r {
            Ok(recs) => {
                let got: HashSet<String> = recs.iter().map(|r| r.id.clone()).collect();
                self.records.extend(recs);
                for id in ids.iter().filter(|id| !got.contains(**id)) {
                    self.records.push(CheckRecord::skip(id, "not applicable"));
                }
            }
            Err(e) => {
                for id in ids {
                    self.records.push(CheckRecord::fail(id, Mode::Exhaustive, format!("stage error: {e}")));
                }
            }
        }
    }

    fn skip(&mut self, ids: &[&str], reason: &str) {
        let have: HashSet<String> = self.records.iter().map(|r| r.id.clone()).collect();
        for id in ids.iter().filter(|id| !have.contains(**id)) {
            self.records.push(CheckRecord::skip(id, reason));
        }
    }

    fn skip_rest(&mut self, reason: &str) {
        self.skip(&all_ids(), reason);
    }
}

/// `[V,X,…,X] = 0` with `len` commutators, for both root groups.
fn nilpotency(pair: &RankOnePair, len: usize) -> Result<(), String> {
    let (f, n) = (pair.field(), pair.n());
    for (name, fam) in [("A", &pair.a), ("B", &pair.b)] {
        let s = fam.span_mats();
        let mut w = Subspace::full(f, n);
        for _ in 0..len {
            w = commutator_space(&w, &s);
        }
        ensure(w.is_zero(), || format!("[V{}] has dimension {}", format!(",{name}").repeat(len), w.dim()))?;
    }
    Ok(())
}

pub fn run(pair: &RankOnePair, reference: &Reference, opts: &Options) -> Reconstruction {
    let mut out = Out { records: Vec::new() };
    let mut summary = Summary::default();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let deg = cubic_verify(pair);
    summary.action = deg.label().to_string();
    let witness = match &deg {
        ActionDegree::Trivial => "A and B act trivially".to_string(),
        ActionDegree::Quadratic { witness } | ActionDegree::Cubic { witness } | ActionDegree::Higher { witness } => witness.clone(),
    };
    out.push(CheckRecord::pass_with("action.degree", Mode::Exhaustive, format!("{}: {witness}", deg.label())));
    match deg {
        ActionDegree::Quadratic { .. } => {
            out.push(CheckRecord::from_result("action.nilpotency", Mode::Exhaustive, nilpotency(pair, 2)));
            let eng = Engine::new(pair.clone());
            out.stage(RANK_ONE, Ok(eng.rank_one_checks()));
            summary.branch = Some(Branch::Quadratic);
            summary.dims.insert("n".into(), pair.n() as u64);
            if let Some(o) = pair.a.order() {
                summary.dims.insert("|A|".into(), o as u64);
            }
            out.skip_rest("hypothesis unmet: action is quadratic");
            return Reconstruction { records: out.records, summary };
        }
        ActionDegree::Cubic { .. } => out.push(CheckRecord::from_result("action.nilpotency", Mode::Exhaustive, nilpotency(pair, 3))),
        _ => {
            out.push(CheckRecord::fail("action.nilpotency", Mode::Exhaustive, witness));
            out.skip_rest("hypothesis unmet: action is not cubic");
            return Reconstruction { records: out.records, summary };
        }
    }

    let nf = reduce_to_normal_form(pair);
    let work = if nf.is_identity() {
        let s = "already normal: [V,G] = V and C_V(G) = 0".to_string();
        out.push(CheckRecord::pass_with("normal-form", Mode::Exhaustive, s.clone()));
        summary.normal_form = Some(s);
        pair.clone()
    } else {
        match induce_pair(pair, &nf.w, &nf.z) {
            Ok(p) => {
                let s = format!("reduced from dimension {} to {} ({} commutator steps, {} centralizer steps)", pair.n(), nf.dim(), nf.w_steps, nf.z_steps);
                out.push(CheckRecord::pass_with("normal-form", Mode::Exhaustive, s.clone()));
                summary.normal_form = Some(s);
                p
            }
            Err(e) => {
                out.push(CheckRecord::fail("normal-form", Mode::Exhaustive, e.to_string()));
                out.skip_rest("hypothesis unmet: no normal form");
                return Reconstruction { records: out.records, summary };
            }
        }
    };
    let reference = if nf.is_identity() { reference.clone() } else { Reference::None };

    let eng = Engine::new(work.clone());
    let core = match Core::new(eng) {
        Ok(c) => c,
        Err(e) => {
            out.push(CheckRecord::fail("a0.reference", Mode::Exhaustive, e.to_string()));
            out.skip_rest("hypothesis unmet: A0, e or μ unavailable");
            return Reconstruction { records: out.records, summary };
        }
    };
    out.push(CheckRecord::pass_with("a0.reference", Mode::Exhaustive, format!("e = {}; dim C_V(A) = {}", core.e, core.k)));
    summary.dims.insert("n".into(), core.n() as u64);
    summary.dims.insert("dim C_V(A)".into(), core.k as u64);
    if let Some(o) = core.eng.a().order() {
        summary.dims.insert("|A|".into(), o as u64);
    }
    if let Some(o) = core.a0.order() {
        summary.dims.insert("|A0|".into(), o as u64);
    }
    summary.dims.insert("dim A0".into(), core.a0.basis.len() as u64);

    let mut decomp = core.eng.decomposition_checks(&core.a0, &core.b0);
    let v = core.cvg0.basis().first().cloned().unwrap_or_else(|| core.field().zeros(core.n()));
    if core.rank_one {
        decomp.extend(core.eng.root_subgroup_checks(&v, &core.cvg0));
    } else {
        decomp.push(CheckRecord::skip("root-subgroup.centralizer-of-vector", "hypothesis unmet: not a rank one group"));
        decomp.push(CheckRecord::skip("root-subgroup.quotient-centralizer", "hypothesis unmet: not a rank one group"));
    }
    out.stage(DECOMP, Ok(decomp));

    if core.rank_one {
        out.stage(RANK_ONE, Ok(core.eng.rank_one_checks()));
    } else {
        out.skip(RANK_ONE, "hypothesis unmet: not a rank one group");
        summary.notes.push("some nontrivial elements of A have no partner".into());
    }
    out.stage(A0, Ok(core.eng.a0_checks(&core.a0, &core.b0)));
    match &reference {
        Reference::Orthogonal(o) => out.stage(ORTH, orth_checks(&core, o)),
        _ => out.skip(ORTH, "hypothesis unmet: not an orthogonal instance"),
    }

    let (elems, _) = core.a_elements();
    let (pairs, pmode) = pair_list(&elems, opts.pairs, core.is_finite(), |n| rng.gen_range(0..n));

    out.stage(RHO, rho_checks(&core));

    let rings = match Rings::build(&core) {
        Ok(r) => r,
        Err(e) => {
            out.stage(F, Err(e.clone()));
            out.stage(RINGS, Err(e));
            out.skip_rest("hypothesis unmet: rings unavailable");
            return Reconstruction { records: out.records, summary };
        }
    };
    let branch = if rings.classification.commutative { Branch::Commutative } else { Branch::Noncommutative };
    summary.branch = Some(branch);
    summary.dims.insert("dim J".into(), rings.j.dim() as u64);
    summary.dims.insert("dim R".into(), rings.r.dim() as u64);
    summary.dims.insert("dim S".into(), rings.s.dim() as u64);

    out.stage(F, f_checks(&core, &rings, &pairs, &pmode));

    let ident = match (&reference, branch) {
        (Reference::Extended(ext), Branch::Noncommutative) => Some(Identification::build(&core, &rings, ext)),
        _ => None,
    };
    let division = match &ident {
        Some(Ok(id)) if !core.is_finite() => Some(id.division_record(&rings)),
        _ => None,
    };
    out.stage(RINGS, rings.checks(&core, division));
    out.stage(HUA, hua_checks(&core, &rings));

    let abar = match Abar::new(&core, &rings) {
        Ok(a) => a,
        Err(e) => {
            out.stage(ABAR, Err(e));
            out.skip_rest("hypothesis unmet: Ā unavailable");
            return Reconstruction { records: out.records, summary };
        }
    };
    summary.dims.insert("dim Ā".into(), abar.dim as u64);
    out.stage(ABAR, abar.checks(&core, &rings));
    out.stage(PHI, phi_checks(&core, &rings, &abar));
    let base = match &reference {
        Reference::Base(b) => Some(b),
        _ => None,
    };
    match xw_checks(&core, &rings, base) {
        Ok((recs, notes)) => {
            out.stage(XW, Ok(recs));
            summary.notes.extend(notes);
        }
        Err(e) => out.stage(XW, Err(e)),
    }

    match branch {
        Branch::Commutative => {
            out.skip(COORDS, "branch: commutative");
            out.skip(IDENT, "branch: commutative");
        }
        _ => {
            match Coordinates::build(&core, &rings, &abar) {
                Ok(c) => {
                    summary.dims.insert("m".into(), c.m() as u64);
                    let id = ident.as_ref().and_then(|r| r.as_ref().ok());
                    out.stage(COORDS, c.checks(&core, &rings, &abar, id, &pairs, &pmode, &mut rng, opts.samples));
                }
                Err(e) => {
                    out.push(CheckRecord::fail("coords.unique", Mode::Exhaustive, e));
                    out.skip(COORDS, "hypothesis unmet: coordinates unavailable");
                }
            }
            match ident {
                Some(Ok(id)) => out.stage(IDENT, Ok(id.checks(&rings))),
                Some(Err(e)) => out.stage(IDENT, Err(e)),
                None => out.skip(IDENT, "hypothesis unmet: no reference instance"),
            }
        }
    }
    out.skip_rest("not applicable");
    Reconstruction { records: out.records, summary }
}

fn orth_checks(core: &Core, o: &OrthogonalSpace) -> Result<Vec<CheckRecord>, String> {
    let mut out = Vec::new();
    let vs = o.vectors().ok_or("orthogonal checks need a finite instance")?;
    let r = (|| {
        let mut with = 0;
        for v in &vs {
            let a = o.alpha(v);
            if a.is_identity() {
                continue;
            }
            let has = core.partner(&a).is_ok();
            let qv = o.q(v);
            let nonzero = qv.iter().any(|c| !c.is_zero());
            ensure(has == nonzero, || format!("b(α_v) exists is {has} but q(v) = {} for v = {}", o.alg().pretty(&qv), crate::linalg::vec_text(v)))?;
            with += has as usize;
        }
        Ok(format!("{with} of {} nontrivial α_v have a partner, exactly those with q(v) != 0", vs.len() - 1))
    })();
    out.push(CheckRecord::from_info("orth.rank-one-partner", Mode::Exhaustive, r));

    let r = (|| {
        let def = o.def.elements().ok_or("Def(q) is infinite")?;
        let expect: HashSet<Mat> = def.iter().map(|v| o.alpha(v)).collect();
        let got: HashSet<Mat> = core.a0.elements.as_ref().ok_or("A0 is not enumerated")?.iter().map(|(_, m)| m.clone()).collect();
        ensure(expect == got, || format!("|{{α_v : v ∈ Def(q)}}| = {}, |A0| = {}", expect.len(), got.len()))?;
        Ok(format!("A0 = {{α_v : v ∈ Def(q)}}, order {}", got.len()))
    })();
    out.push(CheckRecord::from_info("orth.a0-closed-form", Mode::Exhaustive, r));
    Ok(out)
}

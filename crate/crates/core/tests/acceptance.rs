//! Acceptance criteria 1 to 7. Prints one line per criterion with its runtime
//! and exits nonzero if any criterion fails.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubic_core::check::{CheckRecord, Mode};
use cubic_core::groupcore::Engine;
use cubic_core::linalg::Mat;
use cubic_core::reconstruct::Branch;
use cubic_core::scalars::ScalarError;
use cubic_core::scenarios::{build_instance, catalog_get, catalog_list, parse, run_scenario, Report, ScenarioError};

type Outcome = Result<String, String>;

struct Runs {
    reports: HashMap<String, (Report, Duration)>,
}

impl Runs {
    fn get(&mut self, name: &str) -> Result<(Report, Duration), String> {
        if let Some(r) = self.reports.get(name) {
            return Ok(r.clone());
        }
        let sc = catalog_get(name).map_err(|e| e.to_string())?;
        let t = Instant::now();
        let rep = run_scenario(&sc).map_err(|e| format!("{name}: {e}"))?;
        let out = (rep, t.elapsed());
        self.reports.insert(name.to_string(), out.clone());
        Ok(out)
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rec<'a>(rep: &'a Report, id: &str) -> Result<&'a CheckRecord, String> {
    rep.record(id).ok_or_else(|| format!("{}: {id} missing from the report", rep.scenario))
}

fn passes<'a>(rep: &'a Report, id: &str) -> Result<&'a CheckRecord, String> {
    let r = rec(rep, id)?;
    check(r.passed(), || format!("{}: {id} is {:?} ({})", rep.scenario, r.status, r.witness.clone().unwrap_or_default()))?;
    Ok(r)
}

fn passes_exhaustively(rep: &Report, id: &str) -> Result<(), String> {
    let r = passes(rep, id)?;
    check(r.mode == Mode::Exhaustive, || format!("{}: {id} is {:?}, not exhaustive", rep.scenario, r.mode))
}

fn sampled_at_least(r: &CheckRecord, n: usize) -> Result<(), String> {
    match r.mode {
        Mode::Exhaustive => Ok(()),
        Mode::Sampled(k) => check(k >= n, || format!("{}: sampled N={k} < {n}", r.id)),
    }
}

fn dim(rep: &Report, key: &str) -> Result<u64, String> {
    rep.summary.dims.get(key).copied().ok_or_else(|| format!("{}: dimension {key} missing", rep.scenario))
}

fn within(t: Duration, limit: Duration) -> Result<(), String> {
    check(t < limit, || format!("runtime {t:.2?} exceeds {limit:?}"))
}

/// Closure of `gens` under multiplication, by breadth-first search.
fn closure(gens: &[Mat]) -> Vec<Mat> {
    let n = gens[0].rows();
    let id = Mat::identity(gens[0].field(), n);
    let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let x = out[i].mul(g);
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
        i += 1;
    }
    out
}

fn conj(x: &Mat, g: &Mat) -> Mat {
    g.inverse().expect("invertible").mul(x).mul(g)
}

fn criterion_1(runs: &mut Runs) -> Outcome {
    let (rep, t) = runs.get("sl2-f5-quadratic")?;
    check(rep.summary.action == "quadratic", || format!("verdict {}", rep.summary.action))?;
    passes_exhaustively(&rep, "action.nilpotency")?;
    passes_exhaustively(&rep, "rank-one.partners")?;

    let inst = build_instance(&catalog_get("sl2-f5-quadratic").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let a = closure(&inst.pair.a.generator_mats());
    let b = closure(&inst.pair.b.generator_mats());
    for x in &a {
        for y in &a {
            check(x.minus_identity().mul(&y.minus_identity()).is_zero(), || "[V,A,A] != 0".into())?;
        }
    }
    let eng = Engine::new(inst.pair.clone());
    let nontrivial: Vec<&Mat> = a.iter().filter(|x| !x.is_identity()).collect();
    check(nontrivial.len() == 4, || format!("|A#| = {}", nontrivial.len()))?;
    for x in &nontrivial {
        let p = eng.find_b(x).map_err(|e| format!("find_b: {e}"))?;
        let lhs: HashSet<Mat> = a.iter().map(|y| conj(y, &p.mat)).collect();
        let rhs: HashSet<Mat> = b.iter().map(|y| conj(y, x)).collect();
        check(lhs == rhs, || format!("A^b(a) != B^a for a = {x}"))?;
    }
    within(t, Duration::from_secs(1))?;
    Ok(format!("quadratic; b(a) verified for 4 elements in {t:.2?}"))
}

fn criterion_2(runs: &mut Runs) -> Outcome {
    let (rep, t) = runs.get("su3-f4")?;
    check(rep.summary.action == "cubic", || format!("verdict {}", rep.summary.action))?;

    let inst = build_instance(&catalog_get("su3-f4").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let a = closure(&inst.pair.a.generator_mats());
    let (f, n) = (inst.pair.field(), inst.pair.n());
    let vectors = f.all_vectors(n).ok_or("V is infinite")?;
    let cva: HashSet<Vec<_>> = vectors.iter().filter(|v| a.iter().all(|g| g.vec_mul(v) == **v)).cloned().collect();
    let va_rows: Vec<Vec<_>> = a.iter().flat_map(|g| g.minus_identity().row_vecs()).collect();
    let a0: Vec<&Mat> = a
        .iter()
        .filter(|z| va_rows.iter().all(|r| z.vec_mul(r) == *r))
        .filter(|z| z.minus_identity().row_vecs().iter().all(|r| cva.contains(r)))
        .collect();
    check(a.len() == 8, || format!("|A| = {} by closure", a.len()))?;
    check(a0.len() == 2, || format!("|A0| = {} by enumeration", a0.len()))?;
    check(dim(&rep, "|A|")? == 8 && dim(&rep, "|A0|")? == 2, || "reported |A| or |A0| differs from the enumeration".into())?;

    let ids = [
        "decomp.va-complement",
        "decomp.cva-is-va0",
        "decomp.va-is-centralizer",
        "decomp.cva-is-vaa",
        "decomp.intersection-is-cvg0",
        "decomp.va-splits",
        "rank-one.a0-special",
        "rank-one.a0-bounds",
        "rank-one.a0-quadratic",
        "rank-one.characteristic",
        "rho.h-n-is-n",
        "rho.mu-squared",
        "rho.a0-formula",
        "rho.additive-on-a0",
        "rho.hua-expansion",
        "f.biadditive",
        "f.equivariant",
        "f.commutator",
        "f.square",
        "f.hua-difference",
        "jordan.j-is-span",
        "jordan.closed",
        "ring.closures",
        "abar.quotient-model",
        "abar.well-defined",
        "abar.module-axioms",
        "abar.integer-scalars",
    ];
    for id in ids {
        passes_exhaustively(&rep, id)?;
    }
    check(rep.summary.branch == Some(Branch::Commutative), || format!("branch {:?}", rep.summary.branch))?;
    check(dim(&rep, "dim J")? == 1, || "dim J != 1".into())?;
    within(t, Duration::from_secs(5))?;
    Ok(format!("cubic, |A| = 8, |A0| = 2, {} checks exhaustive, commutative with dim J = 1 in {t:.2?}", ids.len()))
}

fn criterion_3(runs: &mut Runs) -> Outcome {
    let (rep, t) = runs.get("orth-f2")?;
    let inst = build_instance(&catalog_get("orth-f2").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let a = closure(&inst.pair.a.generator_mats());
    for x in &a {
        check(x.mul(x).is_identity(), || format!("a² != 1 for a = {x}"))?;
        for y in &a {
            check(x.mul(y) == y.mul(x), || "A is not abelian".into())?;
        }
    }
    passes(&rep, "rank-one.abelian-exponent")?;

    // q(x,y,z) = x² + xy + y² + z² over F_2; Def(q) is the radical of its polar form.
    let q = |v: [u8; 3]| (v[0] * v[0] + v[0] * v[1] + v[1] * v[1] + v[2] * v[2]) % 2;
    let all: Vec<[u8; 3]> = (0..8u8).map(|i| [i & 1, (i >> 1) & 1, (i >> 2) & 1]).collect();
    let add = |u: [u8; 3], v: [u8; 3]| [(u[0] + v[0]) % 2, (u[1] + v[1]) % 2, (u[2] + v[2]) % 2];
    let def: Vec<[u8; 3]> = all.iter().copied().filter(|&u| all.iter().all(|&v| (q(add(u, v)) + q(u) + q(v)) % 2 == 0)).collect();
    check(def == vec![[0, 0, 0], [0, 0, 1]], || format!("Def(q) = {def:?}"))?;
    check(dim(&rep, "|A0|")? == def.len() as u64, || format!("|A0| != |Def(q)| = {}", def.len()))?;
    passes(&rep, "orth.a0-closed-form")?;

    check(rep.summary.branch == Some(Branch::Commutative), || format!("branch {:?}", rep.summary.branch))?;
    passes(&rep, "ring.abelian-field")?;
    let sk = passes(&rep, "ring.skewfield")?;
    check(sk.witness.as_deref() == Some("R is a skewfield"), || format!("ring.skewfield: {:?}", sk.witness))?;
    within(t, Duration::from_secs(5))?;
    Ok(format!("A abelian of exponent 2, A0 = {{α_v : v ∈ Def(q)}} of order 2, R a field of characteristic 2 in {t:.2?}"))
}

fn criterion_4(runs: &mut Runs) -> Outcome {
    let (rep, t) = runs.get("su-quat-q")?;
    let c = passes(&rep, "jordan.classify")?;
    check(c.witness.as_deref().is_some_and(|w| w.starts_with("J is noncommutative")), || "J is not classified noncommutative".into())?;
    check(rep.summary.branch == Some(Branch::Noncommutative), || format!("branch {:?}", rep.summary.branch))?;
    passes(&rep, "ring.r-equals-s")?;
    check(dim(&rep, "dim R")? == 4 && dim(&rep, "dim S")? == 4, || "dim R or dim S is not 4".into())?;
    passes_exhaustively(&rep, "quaternion.identification")?;
    passes_exhaustively(&rep, "star.involutory")?;
    passes_exhaustively(&rep, "star.anti-automorphism")?;
    sampled_at_least(passes(&rep, "f.skew-hermitian")?, 20)?;
    let an = passes(&rep, "pi-abar.anisotropic")?;
    sampled_at_least(an, 50)?;
    check(an.witness.as_deref().is_some_and(|w| w.contains("by certificate")), || "π_Ā anisotropy has no certificate".into())?;
    passes(&rep, "roundtrip.transvection-law")?;
    passes(&rep, "su.alpha-identification")?;
    passes(&rep, "witt.index-one")?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("noncommutative, R = S ≅ quaternions, π_Ā certified, SU(π) identified, Witt index 1 in {t:.2?}"))
}

fn criterion_5(runs: &mut Runs) -> Outcome {
    let (rep, t) = runs.get("doubled-su3-f4")?;
    let base = build_instance(&catalog_get("su3-f4").map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let n = dim(&rep, "n")?;
    check(n == 2 * base.pair.n() as u64, || format!("n = {n} is not twice {}", base.pair.n()))?;
    let proper = format!("dim {}, irreducible: true", base.pair.n());
    check(rep.summary.notes.iter().any(|s| s.starts_with("X(W") && s.ends_with(&proper)), || format!("no proper irreducible X(W): {:?}", rep.summary.notes))?;
    for id in ["xw.invariant", "xw.intersections", "xw.commutator", "xw.direct", "xw.irreducible-transfer"] {
        passes_exhaustively(&rep, id)?;
    }
    let cr = passes(&rep, "xw.complete-reducibility")?;
    check(cr.witness.as_deref().is_some_and(|w| w.ends_with("2 summands")), || format!("decomposition: {:?}", cr.witness))?;
    passes(&rep, "xw.summands-isomorphic")?;
    within(t, Duration::from_secs(10))?;
    Ok(format!("X(W) of dimension {} irreducible, (a) to (f) exact, 2 summands isomorphic to su3-f4 in {t:.2?}", base.pair.n()))
}

fn criterion_6(runs: &mut Runs) -> Outcome {
    let ids = ["rho.h-n-is-n", "rho.mu-squared", "f.commutator", "f.hua-difference", "phi.hua-twist", "hua.conjugate-formula"];
    let mut applied = 0;
    for sc in catalog_list() {
        let (rep, _) = runs.get(&sc.name)?;
        for id in ids {
            let r = rec(&rep, id)?;
            if rep.summary.action == "cubic" {
                passes(&rep, id)?;
                applied += 1;
            } else {
                check(r.skipped(), || format!("{}: {id} should be skipped on a non-cubic action", rep.scenario))?;
            }
        }
    }
    Ok(format!("{} identities hold on every cubic catalog instance ({applied} records)", ids.len()))
}

fn criterion_7(_: &mut Runs) -> Outcome {
    let run = |text: &str| run_scenario(&parse(text).map_err(|e| e.to_string())?).map(|_| ()).map_err(|e| e.to_string());
    let reducible = parse(include_str!("data/reducible-modulus.scn")).map_err(|e| e.to_string())?;
    match run_scenario(&reducible) {
        Err(ScenarioError::Domain(ScalarError::Reducible { factor, .. })) => check(factor == "x+1", || format!("factor {factor}"))?,
        other => return Err(format!("reducible modulus gave {:?}", other.map(|r| r.totals))),
    }
    let iso = run(include_str!("data/isotropic-pi.scn"));
    check(iso.as_ref().is_err_and(|e| e.contains("isotropic") && e.contains("lies in K0")), || format!("isotropic π̄ gave {iso:?}"))?;
    let jc = run(include_str!("data/span-one-x.scn"));
    check(jc.as_ref().is_err_and(|e| e.contains("not Jordan closed") && e.contains("is not in J")), || format!("span{{1,x}} gave {jc:?}"))?;
    Ok("reducible modulus, isotropic π̄ and span{1,x} are rejected with witnesses".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Runs) -> Outcome); 7] = [
        ("baseline sl2-f5-quadratic", criterion_1),
        ("su3-f4 commutative branch", criterion_2),
        ("orth-f2 abelian root groups", criterion_3),
        ("su-quat-q noncommutative branch", criterion_4),
        ("doubled-su3-f4 decomposition", criterion_5),
        ("cross-identities", criterion_6),
        ("negative controls", criterion_7),
    ];
    let mut runs = Runs { reports: HashMap::new() };
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f(&mut runs);
        let dt = t.elapsed();
        match r {
            Ok(info) => println!("criterion {} PASS  {name} [{dt:.2?}]: {info}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL  {name} [{dt:.2?}]: {e}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Line-oriented scenario files with named blocks.
//!
//! ```text
//! [scenario]
//! name = su3-f4
//! [domain]
//! kind = finite-field
//! p = 2
//! modulus = 1 1 1
//! ```
//!
//! Scalars are integers or `n/d`; elements of a domain of dimension `d` are
//! tuples `(c1,...,cd)` in the domain basis, or a bare scalar for a multiple
//! of `1`. Lists are whitespace separated, matrix rows are separated by `;`.

use std::collections::BTreeMap;

use crate::field::{Fe, PrimeField};
use crate::scalars::{Algebra, DomainSpec, Elem};

use super::ScenarioError;

/// A raw value with the line it came from; parsed once the domain is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub line: usize,
    pub text: String,
}

impl Value {
    fn err(&self, msg: impl Into<String>) -> ScenarioError {
        ScenarioError::Parse { line: self.line, msg: msg.into() }
    }

    fn int<T: std::str::FromStr>(&self, what: &str) -> Result<T, ScenarioError> {
        self.text.trim().parse().map_err(|_| self.err(format!("{what} must be an integer, got {:?}", self.text)))
    }

    fn ints(&self, what: &str) -> Result<Vec<i64>, ScenarioError> {
        self.text.split_whitespace().map(|t| t.parse().map_err(|_| self.err(format!("{what}: {t:?} is not an integer")))).collect()
    }

    fn ratio(&self, what: &str) -> Result<(i64, i64), ScenarioError> {
        parse_ratio(self.text.trim()).ok_or_else(|| self.err(format!("{what} must be n or n/d, got {:?}", self.text)))
    }

    /// A whitespace separated list of elements.
    pub fn elems(&self, alg: &Algebra) -> Result<Vec<Elem>, ScenarioError> {
        tokens(&self.text).map_err(|m| self.err(m))?.iter().map(|t| parse_elem(alg, t).map_err(|m| self.err(m))).collect()
    }

    /// Rows of elements separated by `;`.
    pub fn matrix(&self, alg: &Algebra) -> Result<Vec<Vec<Elem>>, ScenarioError> {
        self.text
            .split(';')
            .map(|row| Value { line: self.line, text: row.to_string() }.elems(alg))
            .collect()
    }

    pub fn elem(&self, alg: &Algebra) -> Result<Elem, ScenarioError> {
        let mut v = self.elems(alg)?;
        if v.len() != 1 {
            return Err(self.err(format!("expected one element, got {}", v.len())));
        }
        Ok(v.remove(0))
    }
}

fn parse_ratio(t: &str) -> Option<(i64, i64)> {
    match t.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.parse().ok()?;
            (d != 0).then_some((n.parse().ok()?, d))
        }
        None => Some((t.parse().ok()?, 1)),
    }
}

fn scalar(f: PrimeField, t: &str) -> Result<Fe, String> {
    let (n, d) = parse_ratio(t).ok_or_else(|| format!("{t:?} is not an exact scalar"))?;
    if f.int(d).is_zero() {
        return Err(format!("denominator {d} vanishes in {f}"));
    }
    Ok(f.frac(n, d))
}

fn tokens(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for ch in s.chars() {
        match ch {
            '(' => {
                if depth > 0 {
                    return Err("nested parentheses".into());
                }
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err("unbalanced ')'".into());
                }
                depth -= 1;
                cur.push(ch);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced '('".into());
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_elem(alg: &Algebra, t: &str) -> Result<Elem, String> {
    let f = alg.field();
    match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) => {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != alg.dim() {
                return Err(format!("element {t} has {} coordinates, the domain has dimension {}", parts.len(), alg.dim()));
            }
            parts.iter().map(|p| scalar(f, p)).collect()
        }
        None => Ok(alg.scalar(&scalar(f, t)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainBlock {
    Scalars(DomainSpec),
    /// `n×n` matrices over `F_p`; a ring, not a domain, so only for `sl2jr`.
    Matrices { p: u32, size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvolutionBlock {
    Identity,
    FrobeniusPower(u32),
    QuaternionStandard,
    QuaternionTwisted(Value),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceBlock {
    Sl2jr { jordan: Value },
    /// `k0 = None` means the fixed set of the involution.
    Pseudoquadratic { k0: Option<Value>, pi: Value, gram: Value },
    OrthogonalChar2 { q: Value },
}

impl InstanceBlock {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceBlock::Sl2jr { .. } => "sl2jr",
            InstanceBlock::Pseudoquadratic { .. } => "pseudoquadratic",
            InstanceBlock::OrthogonalChar2 { .. } => "orthogonal-char2",
        }
    }
}

pub const MIN_SAMPLES: usize = 50;
pub const MIN_PAIRS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sampling {
    /// Vectors for sampled form checks.
    pub samples: usize,
    /// Pairs for pairwise identities.
    pub pairs: usize,
    /// Extra random root group parameters over infinite domains.
    pub params: usize,
    /// Bound on the numerators of random scalars.
    pub bound: i64,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Sampling {
        Sampling { samples: MIN_SAMPLES, pairs: 24, params: 4, bound: 2, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub domain: DomainBlock,
    pub involution: Option<InvolutionBlock>,
    pub instance: InstanceBlock,
    /// Number of diagonal copies of the module (1 or 2).
    pub copies: usize,
    pub sampling: Sampling,
    /// Check selection patterns; `all`, an id, or a prefix ending in `*`.
    pub checks: Vec<String>,
}

struct Block {
    name: String,
    line: usize,
    entries: BTreeMap<String, Value>,
}

impl Block {
    fn take(&mut self, key: &str) -> Option<Value> {
        self.entries.remove(key)
    }

    fn req(&mut self, key: &str) -> Result<Value, ScenarioError> {
        self.take(key).ok_or_else(|| ScenarioError::Parse { line: self.line, msg: format!("[{}] is missing `{key}`", self.name) })
    }

    fn finish(self) -> Result<(), ScenarioError> {
        match self.entries.into_iter().min_by_key(|(_, v)| v.line) {
            Some((k, v)) => Err(v.err(format!("unknown key `{k}` in [{}]", self.name))),
            None => Ok(()),
        }
    }
}

const BLOCKS: &[&str] = &["scenario", "domain", "involution", "instance", "sampling", "checks"];

fn split_blocks(text: &str) -> Result<BTreeMap<String, Block>, ScenarioError> {
    let mut blocks: BTreeMap<String, Block> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        let perr = |msg: String| ScenarioError::Parse { line, msg };
        if let Some(name) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !BLOCKS.contains(&name.as_str()) {
                return Err(perr(format!("unknown block [{name}]")));
            }
            if blocks.contains_key(&name) {
                return Err(perr(format!("duplicate block [{name}]")));
            }
            blocks.insert(name.clone(), Block { name: name.clone(), line, entries: BTreeMap::new() });
            current = Some(name);
            continue;
        }
        let Some((k, v)) = s.split_once('=') else {
            return Err(perr(format!("expected `key = value` or `[block]`, got {s:?}")));
        };
        let Some(b) = current.as_ref().and_then(|c| blocks.get_mut(c)) else {
            return Err(perr("entry outside of any block".into()));
        };
        let key = k.trim().to_string();
        if b.entries.contains_key(&key) {
            return Err(perr(format!("duplicate key `{key}` in [{}]", b.name)));
        }
        b.entries.insert(key, Value { line, text: v.trim().to_string() });
    }
    Ok(blocks)
}

pub fn parse(text: &str) -> Result<Scenario, ScenarioError> {
    let mut blocks = split_blocks(text)?;
    let need = |blocks: &mut BTreeMap<String, Block>, name: &str| blocks.remove(name).ok_or_else(|| ScenarioError::MissingBlock(name.to_string()));

    let mut sc = need(&mut blocks, "scenario")?;
    let name = sc.req("name")?.text;
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
        return Err(ScenarioError::Parse { line: sc.line, msg: format!("scenario name {name:?} must be alphanumeric with '-' or '_'") });
    }
    let description = sc.take("description").map(|v| v.text).unwrap_or_default();
    sc.finish()?;

    let mut db = need(&mut blocks, "domain")?;
    let kind = db.req("kind")?;
    let domain = match kind.text.as_str() {
        "prime-field" => DomainBlock::Scalars(DomainSpec::PrimeField(prime(&db.req("p")?)?)),
        "finite-field" => {
            let p = prime(&db.req("p")?)?;
            let m = db.req("modulus")?;
            let modulus = m.ints("modulus")?;
            if modulus.len() < 2 {
                return Err(m.err("modulus needs at least two coefficients (constant term first)"));
            }
            let lead = modulus[modulus.len() - 1];
            if lead.rem_euclid(p as i64) != 1 {
                return Err(m.err(format!("modulus must be monic: leading coefficient {lead} is not 1 mod {p}")));
            }
            DomainBlock::Scalars(DomainSpec::FiniteField { p, modulus })
        }
        "rationals" => DomainBlock::Scalars(DomainSpec::Rationals),
        "quaternion" => DomainBlock::Scalars(DomainSpec::Quaternion { a: db.req("a")?.ratio("a")?, b: db.req("b")?.ratio("b")? }),
        "matrices" => {
            let p = prime(&db.req("p")?)?;
            let size = db.req("size")?;
            let n: usize = size.int("size")?;
            if n == 0 {
                return Err(size.err("size must be positive"));
            }
            DomainBlock::Matrices { p, size: n }
        }
        other => return Err(kind.err(format!("unknown domain kind {other:?}"))),
    };
    db.finish()?;

    let involution = match blocks.remove("involution") {
        None => None,
        Some(mut ib) => {
            let kind = ib.req("kind")?;
            let inv = match kind.text.as_str() {
                "identity" => InvolutionBlock::Identity,
                "frobenius-power" => InvolutionBlock::FrobeniusPower(ib.req("q")?.int("q")?),
                "quaternion-standard" => InvolutionBlock::QuaternionStandard,
                "quaternion-twisted" => InvolutionBlock::QuaternionTwisted(ib.req("u")?),
                other => return Err(kind.err(format!("unknown involution kind {other:?}"))),
            };
            ib.finish()?;
            Some(inv)
        }
    };

    let mut inst = need(&mut blocks, "instance")?;
    let kind = inst.req("kind")?;
    let instance = match kind.text.as_str() {
        "sl2jr" => InstanceBlock::Sl2jr { jordan: inst.req("jordan")? },
        "pseudoquadratic" => {
            let k0 = inst.req("k0")?;
            let k0 = (k0.text != "fixed").then_some(k0);
            InstanceBlock::Pseudoquadratic { k0, pi: inst.req("pi")?, gram: inst.req("gram")? }
        }
        "orthogonal-char2" => InstanceBlock::OrthogonalChar2 { q: inst.req("q")? },
        other => return Err(kind.err(format!("unknown instance kind {other:?}"))),
    };
    let copies = match inst.take("copies") {
        None => 1,
        Some(v) => match v.int::<usize>("copies")? {
            c @ (1 | 2) => c,
            c => return Err(v.err(format!("copies must be 1 or 2, got {c}"))),
        },
    };
    inst.finish()?;
    match (&instance, &involution, &domain) {
        (InstanceBlock::Pseudoquadratic { .. }, None, _) => {
            return Err(ScenarioError::Parse { line: kind.line, msg: "pseudoquadratic instance needs an [involution] block".into() })
        }
        (InstanceBlock::Sl2jr { .. } | InstanceBlock::OrthogonalChar2 { .. }, Some(_), _) => {
            return Err(ScenarioError::Parse { line: kind.line, msg: format!("{} instance takes no [involution] block", instance.kind()) })
        }
        (InstanceBlock::Pseudoquadratic { .. } | InstanceBlock::OrthogonalChar2 { .. }, _, DomainBlock::Matrices { .. }) => {
            return Err(ScenarioError::Parse { line: kind.line, msg: format!("{} instance needs a division ring domain", instance.kind()) })
        }
        _ => {}
    }

    let mut sampling = Sampling::default();
    if let Some(mut sb) = blocks.remove("sampling") {
        if let Some(v) = sb.take("samples") {
            sampling.samples = v.int("samples")?;
            if sampling.samples < MIN_SAMPLES {
                return Err(v.err(format!("samples must be at least {MIN_SAMPLES}")));
            }
        }
        if let Some(v) = sb.take("pairs") {
            sampling.pairs = v.int("pairs")?;
            if sampling.pairs < MIN_PAIRS {
                return Err(v.err(format!("pairs must be at least {MIN_PAIRS}")));
            }
        }
        if let Some(v) = sb.take("params") {
            sampling.params = v.int("params")?;
        }
        if let Some(v) = sb.take("bound") {
            sampling.bound = v.int("bound")?;
            if sampling.bound < 1 {
                return Err(v.err("bound must be positive"));
            }
        }
        if let Some(v) = sb.take("seed") {
            sampling.seed = v.int("seed")?;
        }
        sb.finish()?;
    }

    let checks = match blocks.remove("checks") {
        None => vec!["all".to_string()],
        Some(mut cb) => {
            let v = cb.req("enable")?;
            let pats: Vec<String> = v.text.split([',', ' ']).map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
            if let Some(bad) = pats.iter().find(|p| !super::pattern_known(p)) {
                return Err(v.err(format!("check pattern {bad:?} matches no known check")));
            }
            cb.finish()?;
            pats
        }
    };

    Ok(Scenario { name, description, domain, involution, instance, copies, sampling, checks })
}

fn prime(v: &Value) -> Result<u32, ScenarioError> {
    let p: u32 = v.int("p")?;
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(v.err(format!("p = {p} is not prime")));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "[scenario]\nname = t\n[domain]\nkind = prime-field\np = 5\n[instance]\nkind = sl2jr\njordan = 1\n";

    #[test]
    fn minimal_file_parses_with_defaults() {
        let sc = parse(MINIMAL).unwrap();
        assert_eq!(sc.name, "t");
        assert_eq!(sc.domain, DomainBlock::Scalars(DomainSpec::PrimeField(5)));
        assert_eq!(sc.sampling, Sampling::default());
        assert_eq!(sc.checks, vec!["all"]);
        assert_eq!(sc.copies, 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = MINIMAL.replace("p = 5", "p = 6");
        assert!(matches!(parse(&bad), Err(ScenarioError::Parse { line: 5, .. })));
        let bad = format!("{MINIMAL}colour = red\n");
        assert!(matches!(parse(&bad), Err(ScenarioError::Parse { line: 9, .. })));
        let bad = MINIMAL.replace("[instance]", "[instance]\n[instance]");
        assert!(matches!(parse(&bad), Err(ScenarioError::Parse { line: 7, .. })));
        assert!(matches!(parse("[scenario]\nname = t\n"), Err(ScenarioError::MissingBlock(b)) if b == "domain"));
    }

    #[test]
    fn malformed_modulus_is_a_parse_error() {
        let f = "[scenario]\nname = t\n[domain]\nkind = finite-field\np = 2\nmodulus = 1 x 1\n[instance]\nkind = sl2jr\njordan = 1\n";
        let e = parse(f).unwrap_err();
        assert!(matches!(e, ScenarioError::Parse { line: 6, .. }), "{e}");
        let f = f.replace("1 x 1", "1 1 0");
        assert!(matches!(parse(&f), Err(ScenarioError::Parse { line: 6, .. })));
    }

    #[test]
    fn sample_minimums_are_enforced() {
        let f = format!("{MINIMAL}[sampling]\nsamples = 10\n");
        assert!(matches!(parse(&f), Err(ScenarioError::Parse { line: 10, .. })));
    }

    #[test]
    fn element_syntax() {
        let alg = Algebra::quaternion(&PrimeField::Q.int(-1), &PrimeField::Q.int(-1));
        let v = Value { line: 1, text: "(0,1/2,0,0) 3".into() };
        let q = PrimeField::Q;
        assert_eq!(v.elems(&alg).unwrap(), vec![vec![q.zero(), q.frac(1, 2), q.zero(), q.zero()], alg.scalar(&q.int(3))]);
        let m = Value { line: 1, text: "1 0; 0 1".into() };
        assert_eq!(m.matrix(&alg).unwrap().len(), 2);
        assert!(Value { line: 4, text: "(1,2)".into() }.elems(&alg).is_err());
    }
}

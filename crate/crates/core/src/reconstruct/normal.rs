//! Reduction to a module with `[V,G] = V` and `C_V(G) = 0`.

use crate::field::Fe;
use crate::groupcore::{centralizer_quotient, commutator_with_group, GroupError, QuadMap, RankOnePair, RootFamily};
use crate::linalg::{solve_left, Mat, Subspace};

/// `W = ∩ Vᵢ` with `V_{i+1} = [Vᵢ,G]` and the ascending centralizer series
/// `Z` of `W`; the reduced module is `W/Z`.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub w: Subspace,
    pub z: Subspace,
    pub w_steps: usize,
    pub z_steps: usize,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.w.dim() == self.w.ambient() && self.z.is_zero()
    }

    pub fn dim(&self) -> usize {
        self.w.dim() - self.z.dim()
    }
}

pub fn reduce_to_normal_form(pair: &RankOnePair) -> NormalForm {
    let (f, n) = (pair.field(), pair.n());
    let gens = pair.generator_mats();
    let mut w = Subspace::full(f, n);
    let mut w_steps = 0;
    loop {
        let next = commutator_with_group(&w, &gens);
        if next == w {
            break;
        }
        w = next;
        w_steps += 1;
    }
    let mut z = Subspace::zero(f, n);
    let mut z_steps = 0;
    loop {
        let next = centralizer_quotient(f, n, &gens, &z).intersect(&w);
        if next == z {
            break;
        }
        z = next;
        z_steps += 1;
    }
    NormalForm { w, z, w_steps, z_steps }
}

/// Induced root families on `W/Z`, using a complement of `Z` in `W` as basis.
pub fn induce_pair(pair: &RankOnePair, w: &Subspace, z: &Subspace) -> Result<RankOnePair, GroupError> {
    let f = pair.field();
    let q: Vec<Vec<Fe>> = complement_in(w, z);
    let m = q.len();
    let mut rows = q.clone();
    rows.extend(z.basis().iter().cloned());
    let basis = Mat::from_rows(f, pair.n(), rows);
    let induce = |x: &Mat| -> Result<Mat, GroupError> {
        let out = q
            .iter()
            .map(|v| {
                let (c, _) = solve_left(&basis, &x.vec_mul(v)).ok_or_else(|| GroupError::Unsupported("W is not invariant".into()))?;
                Ok(c[..m].to_vec())
            })
            .collect::<Result<Vec<_>, GroupError>>()?;
        Ok(Mat::from_rows(f, m, out))
    };
    let fam = |x: &RootFamily| -> Result<RootFamily, GroupError> {
        let u = x.u_mats().iter().map(&induce).collect::<Result<Vec<_>, _>>()?;
        let c = x.c_mats().iter().map(&induce).collect::<Result<Vec<_>, _>>()?;
        let theta = QuadMap::from_fn(f, x.du(), x.dc(), |v| x.theta(v));
        let mut out = RootFamily::new(&x.name, f, m, u, c, theta, x.c0().clone())?;
        out.sample = x.sample.clone();
        Ok(out)
    };
    Ok(RankOnePair { a: fam(&pair.a)?, b: fam(&pair.b)? })
}

/// Vectors of `w` completing a basis of `z` to one of `w`.
fn complement_in(w: &Subspace, z: &Subspace) -> Vec<Vec<Fe>> {
    let mut acc = z.clone();
    let mut out = Vec::new();
    for b in w.basis() {
        if !acc.contains(b) {
            acc = acc.sum(&Subspace::span(w.field(), w.ambient(), vec![b.clone()]));
            out.push(b.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn sl2_plus_trivial() -> RankOnePair {
        let f = PrimeField::Fp(5);
        let ua = Mat::from_ints(f, &[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        let ub = Mat::from_ints(f, &[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let fam = |name: &str, m: Mat| RootFamily::new(name, f, 3, vec![m], vec![], QuadMap::zero(f, 1, 0), Subspace::zero(f, 0)).unwrap();
        RankOnePair { a: fam("A", ua), b: fam("B", ub) }
    }

    #[test]
    fn trivial_summand_is_stripped() {
        let pair = sl2_plus_trivial();
        let nf = reduce_to_normal_form(&pair);
        assert_eq!(nf.w.dim(), 2);
        assert!(nf.z.is_zero());
        assert_eq!(nf.w_steps, 1);
        let red = induce_pair(&pair, &nf.w, &nf.z).unwrap();
        assert_eq!(red.n(), 2);
        let again = reduce_to_normal_form(&red);
        assert!(again.is_identity());
    }
}

//! Reconstruction of `J`, `R`, `S`, `*`, `f`, `Φ` and the pseudo-quadratic
//! forms on `Ā` and `V` from a rank one group acting cubically on a module.
//!
//! Notation: `e ∈ A₀#` is the reference element, `μ = μ_(e⁻¹)`,
//! `h_a = μ·μ_a` with `h_1 = 0` on the level of `ρ`, and `ρ(g)` is the matrix
//! of `g` restricted to `C_V(A)` in the echelon basis of `C_V(A)`.

mod abar;
mod coords;
mod identities;
mod normal;
mod phi;
mod pipeline;
mod rings;

use std::cell::RefCell;
use std::collections::HashMap;

use thiserror::Error;

use crate::field::{Fe, PrimeField};
use crate::groupcore::{Engine, GroupError, Subgroup};
use crate::linalg::{vec_sub, Mat, Subspace};

pub use abar::Abar;
pub use coords::{Coordinates, Identification};
pub use normal::{induce_pair, reduce_to_normal_form, NormalForm};
pub use phi::{isomorphic_modules, XW};
pub use pipeline::{all_ids, run, Branch, Options, Reconstruction, Reference, Summary};
pub use rings::{closure, Closure, Relation, Rings};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReconstructError {
    #[error("action is {0}, not cubic")]
    NotCubic(String),
    #[error("A0 is unavailable: {0}")]
    A0(String),
    #[error("no reference element: {0}")]
    Reference(String),
    #[error("μ = μ_(e⁻¹) is unavailable: {0}")]
    Mu(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Engine state shared by all stages: `A₀`, `B₀`, `C_V(G₀)`, `e`, `μ` and
/// caches for partners and `μ_a`.
pub struct Core {
    pub eng: Engine,
    pub a0: Subgroup,
    pub b0: Subgroup,
    pub cvg0: Subspace,
    pub e: Mat,
    pub mu: Mat,
    pub mu_inv: Mat,
    /// `dim C_V(A)` over the prime field.
    pub k: usize,
    /// Every nontrivial `a ∈ A` has a partner (exhaustive when finite).
    pub rank_one: bool,
    partners: RefCell<HashMap<Mat, Result<Mat, String>>>,
}

impl Core {
    pub fn new(eng: Engine) -> Result<Core, ReconstructError> {
        let a0 = eng.a0().map_err(|e| ReconstructError::A0(e.to_string()))?;
        let b0 = eng.b0().map_err(|e| ReconstructError::A0(e.to_string()))?;
        if a0.is_trivial() {
            return Err(ReconstructError::A0("A0 is trivial".into()));
        }
        let e = eng.reference_element(&a0).map_err(ReconstructError::Reference)?;
        let cvg0 = eng.cv_g0(&a0, &b0);
        let k = eng.cva.dim();
        let n = eng.n();
        let field = eng.field();
        let mut core = Core {
            eng,
            a0,
            b0,
            cvg0,
            e: e.clone(),
            mu: Mat::identity(field, n),
            mu_inv: Mat::identity(field, n),
            k,
            rank_one: true,
            partners: RefCell::new(HashMap::new()),
        };
        let ei = e.inverse().expect("invertible");
        let mu = core.mu_a(&ei).map_err(ReconstructError::Mu)?;
        core.mu_inv = mu.inverse().expect("invertible");
        core.mu = mu;
        if let Some(el) = core.eng.a().elements() {
            let el: Vec<Mat> = el.iter().map(|(_, m)| m.clone()).filter(|m| !m.is_identity()).collect();
            core.rank_one = el.iter().all(|a| core.partner(a).is_ok());
        }
        debug_assert_eq!(core.mu.rows(), n);
        Ok(core)
    }

    pub fn field(&self) -> PrimeField {
        self.eng.field()
    }
    pub fn n(&self) -> usize {
        self.eng.n()
    }
    pub fn id_k(&self) -> Mat {
        Mat::identity(self.field(), self.k)
    }
    pub fn zero_k(&self) -> Mat {
        Mat::zeros(self.field(), self.k, self.k)
    }
    pub fn is_finite(&self) -> bool {
        self.field().is_finite()
    }

    /// `b(a)`, cached.
    pub fn partner(&self, a: &Mat) -> Result<Mat, String> {
        if let Some(r) = self.partners.borrow().get(a) {
            return r.clone();
        }
        let r = self.eng.find_b(a).map(|p| p.mat).map_err(|e| e.to_string());
        self.partners.borrow_mut().insert(a.clone(), r.clone());
        r
    }

    /// `μ_a = b(a⁻¹)·a·b(a)⁻¹`.
    pub fn mu_a(&self, a: &Mat) -> Result<Mat, String> {
        let ai = a.inverse().ok_or("singular")?;
        let b1 = self.partner(&ai)?;
        let b2 = self.partner(a)?;
        Ok(b1.mul(a).mul(&b2.inverse().expect("invertible")))
    }

    /// `h_a = μ·μ_a` for `a ≠ 1`.
    pub fn h(&self, a: &Mat) -> Result<Mat, String> {
        if a.is_identity() {
            return Err("h_1 is not a group element".into());
        }
        Ok(self.mu.mul(&self.mu_a(a)?))
    }

    /// `h^{-μ} = μ⁻¹h⁻¹μ`.
    pub fn minus_mu(&self, h: &Mat) -> Mat {
        self.mu_inv.mul(&h.inverse().expect("invertible")).mul(&self.mu)
    }

    /// Restriction of `g` to `C_V(A)`; fails when `g` does not stabilize it.
    pub fn rho(&self, g: &Mat) -> Result<Mat, String> {
        let rows = self
            .eng
            .cva
            .basis()
            .iter()
            .enumerate()
            .map(|(i, c)| self.eng.cva.coords(&g.vec_mul(c)).ok_or_else(|| format!("image of basis vector {} of C_V(A) leaves C_V(A)", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_rows(self.field(), self.k, rows))
    }

    /// `ρ(h_a)`, with `ρ(h_1) = 0`.
    pub fn rho_h(&self, a: &Mat) -> Result<Mat, String> {
        if a.is_identity() {
            return Ok(self.zero_k());
        }
        self.rho(&self.h(a)?)
    }

    /// `f(a,b) = (v ↦ vμ(a-1)(b-1))` on `C_V(A)`.
    pub fn f(&self, a: &Mat, b: &Mat) -> Result<Mat, String> {
        let (na, nb) = (a.minus_identity(), b.minus_identity());
        let rows = self
            .eng
            .cva
            .basis()
            .iter()
            .map(|c| {
                let w = nb.vec_mul(&na.vec_mul(&self.mu.vec_mul(c)));
                self.eng.cva.coords(&w).ok_or_else(|| "[vμ,a,b] leaves C_V(A)".to_string())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_rows(self.field(), self.k, rows))
    }

    /// `Φ(v,a) = [vμ,a] - vh_a` for `v ∈ C_V(A)` given in module coordinates.
    pub fn phi(&self, v: &[Fe], a: &Mat) -> Result<Vec<Fe>, String> {
        if a.is_identity() {
            return Ok(self.field().zeros(self.n()));
        }
        let vm = self.mu.vec_mul(v);
        let comm = a.minus_identity().vec_mul(&vm);
        Ok(vec_sub(&comm, &self.h(a)?.vec_mul(v)))
    }

    /// Module vector of `C_V(A)` with the given coordinates.
    pub fn cva_vec(&self, c: &[Fe]) -> Vec<Fe> {
        self.eng.cva.from_coords(c)
    }

    /// Outside a rank one group partner failures mark a value as undefined.
    pub fn defined<T>(&self, r: Result<T, String>) -> Result<Option<T>, String> {
        match r {
            Ok(x) => Ok(Some(x)),
            Err(_) if !self.rank_one => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Nontrivial elements of `A` used for universal claims, with their mode.
    pub fn a_elements(&self) -> (Vec<Mat>, crate::check::Mode) {
        let (v, mode) = self.eng.a().nontrivial_sample();
        (v.into_iter().map(|(_, m)| m).collect(), mode)
    }

    /// `[a,b] = a⁻¹b⁻¹ab`.
    pub fn commutator(a: &Mat, b: &Mat) -> Mat {
        a.inverse().expect("invertible").mul(&b.inverse().expect("invertible")).mul(a).mul(b)
    }
}

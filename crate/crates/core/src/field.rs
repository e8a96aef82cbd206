//! Prime-field scalars: `F_p` for small primes and the rationals.
//!
//! Every module, ring and group in this crate is ultimately a finite-dimensional
//! vector space over one of these fields, so all exact linear algebra runs on [`Fe`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// The prime field underlying a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PrimeField {
    Fp(u32),
    Q,
}

impl PrimeField {
    pub fn zero(self) -> Fe {
        match self {
            PrimeField::Fp(p) => Fe::Fp { v: 0, p },
            PrimeField::Q => Fe::Q(BigRational::zero()),
        }
    }

    pub fn one(self) -> Fe {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Fe {
        match self {
            PrimeField::Fp(p) => Fe::Fp { v: n.rem_euclid(p as i64) as u32, p },
            PrimeField::Q => Fe::Q(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num/den`; `den` must be nonzero in the field.
    pub fn frac(self, num: i64, den: i64) -> Fe {
        self.int(num) / self.int(den)
    }

    pub fn characteristic(self) -> u32 {
        match self {
            PrimeField::Fp(p) => p,
            PrimeField::Q => 0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, PrimeField::Fp(_))
    }

    /// All field elements in increasing representative order (finite fields only).
    pub fn elements(self) -> Option<Vec<Fe>> {
        match self {
            PrimeField::Fp(p) => Some((0..p).map(|v| Fe::Fp { v, p }).collect()),
            PrimeField::Q => None,
        }
    }

    pub fn zeros(self, n: usize) -> Vec<Fe> {
        vec![self.zero(); n]
    }

    pub fn unit_vector(self, n: usize, i: usize) -> Vec<Fe> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    /// Every vector of `F^n`, in lexicographic order with the last coordinate fastest.
    pub fn all_vectors(self, n: usize) -> Option<Vec<Vec<Fe>>> {
        let elems = self.elements()?;
        let mut out = vec![Vec::with_capacity(n)];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * elems.len());
            for prefix in &out {
                for e in &elems {
                    let mut v = prefix.clone();
                    v.push(e.clone());
                    next.push(v);
                }
            }
            out = next;
        }
        Some(out)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeField::Fp(p) => write!(f, "F{p}"),
            PrimeField::Q => write!(f, "Q"),
        }
    }
}

/// An element of a prime field. Mixing elements of different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Fe {
    Fp { v: u32, p: u32 },
    Q(BigRational),
}

impl Fe {
    pub fn field(&self) -> PrimeField {
        match self {
            Fe::Fp { p, .. } => PrimeField::Fp(*p),
            Fe::Q(_) => PrimeField::Q,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Fe::Fp { v, .. } => *v == 0,
            Fe::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Fe::Fp { v, .. } => *v == 1,
            Fe::Q(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Fe> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Fe::Fp { v, p } => Fe::Fp { v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, p: *p },
            Fe::Q(q) => Fe::Q(q.recip()),
        })
    }

    /// Integer pair `(numerator, denominator)` of the canonical representative.
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Fe::Fp { v, .. } => (BigInt::from(*v), BigInt::one()),
            Fe::Q(q) => (q.numer().clone(), q.denom().clone()),
        }
    }

    /// Height used to keep sampled rationals small: max of |num| and den.
    pub fn height(&self) -> u64 {
        match self {
            Fe::Fp { v, .. } => *v as u64,
            Fe::Q(q) => {
                let n = q.numer().abs().to_u64().unwrap_or(u64::MAX);
                let d = q.denom().to_u64().unwrap_or(u64::MAX);
                n.max(d)
            }
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fe::Fp { v, .. } => write!(f, "{v}"),
            Fe::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

fn mismatch(a: &Fe, b: &Fe) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        match (self, o) {
            (Fe::Fp { v: a, p }, Fe::Fp { v: b, p: q }) if p == q => Fe::Fp { v: ((*a as u64 + *b as u64) % *p as u64) as u32, p: *p },
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a + b),
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Sub<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        match (self, o) {
            (Fe::Fp { v: a, p }, Fe::Fp { v: b, p: q }) if p == q => {
                Fe::Fp { v: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, p: *p }
            }
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a - b),
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Mul<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        match (self, o) {
            (Fe::Fp { v: a, p }, Fe::Fp { v: b, p: q }) if p == q => Fe::Fp { v: ((*a as u64 * *b as u64) % *p as u64) as u32, p: *p },
            (Fe::Q(a), Fe::Q(b)) => Fe::Q(a * b),
            _ => mismatch(self, o),
        }
    }
}

impl<'a> Div<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn div(self, o: &Fe) -> Fe {
        let inv = o.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        match self {
            Fe::Fp { v, p } => Fe::Fp { v: (*p - *v) % *p, p: *p },
            Fe::Q(a) => Fe::Q(-a),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: Fe) -> Fe {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Fe> for Fe {
            type Output = Fe;
            fn $m(self, o: &Fe) -> Fe {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, o: &Fe) {
        *self = &*self + o;
    }
}

impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, o: &Fe) {
        *self = &*self - o;
    }
}

impl MulAssign<&Fe> for Fe {
    fn mul_assign(&mut self, o: &Fe) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic_wraps() {
        let f = PrimeField::Fp(5);
        assert_eq!(f.int(3) + f.int(4), f.int(2));
        assert_eq!(f.int(2) * f.int(3), f.one());
        assert_eq!(f.int(2).inv().unwrap(), f.int(3));
        assert_eq!(-f.int(1), f.int(4));
        assert_eq!(f.int(-1), f.int(4));
    }

    #[test]
    fn rationals_reduce() {
        let q = PrimeField::Q;
        let x = q.frac(2, 4);
        assert_eq!(x, q.frac(1, 2));
        assert_eq!(format!("{}", q.frac(-6, 4)), "-3/2");
        assert_eq!(x.clone() + x, q.one());
    }

    #[test]
    fn enumerates_vectors() {
        let all = PrimeField::Fp(3).all_vectors(2).unwrap();
        assert_eq!(all.len(), 9);
        assert!(PrimeField::Q.all_vectors(1).is_none());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = PrimeField::Fp(2).one() + PrimeField::Q.one();
    }
}

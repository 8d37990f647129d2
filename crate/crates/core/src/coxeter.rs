//! Finiteness of Coxeter parabolic subgroups via the cosine Gram matrix.
//!
//! Entries −cos(π/m) for m ∈ {2, 3, 4, 6, ∞} live in Q(√2, √3); we do exact
//! Gaussian elimination there and test that every pivot is positive.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{param, Result};

/// Coxeter matrix entry for m = ∞.
pub const INFINITY: u32 = 0;

/// a + b√2 with rational a, b.
#[derive(Clone, Debug, PartialEq)]
struct Q2 {
    a: BigRational,
    b: BigRational,
}

impl Q2 {
    fn rat(a: BigRational) -> Self {
        Q2 { a, b: BigRational::zero() }
    }
    fn zero() -> Self {
        Q2::rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sb == 0 || sa == sb {
            return if sa != 0 { sa } else { sb };
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with 2b²
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * BigRational::from_integer(2.into());
        sa * sign(&(lhs - rhs))
    }
    fn inv(&self) -> Q2 {
        let n = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(2.into());
        Q2 { a: &self.a / &n, b: -(&self.b / &n) }
    }
}

fn sign(x: &BigRational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &Q2 {
    type Output = Q2;
    fn add(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}
impl Sub for &Q2 {
    type Output = Q2;
    fn sub(self, o: &Q2) -> Q2 {
        Q2 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}
impl Mul for &Q2 {
    type Output = Q2;
    fn mul(self, o: &Q2) -> Q2 {
        let two = BigRational::from_integer(2.into());
        Q2 { a: &self.a * &o.a + &self.b * &o.b * two, b: &self.a * &o.b + &self.b * &o.a }
    }
}
impl Neg for &Q2 {
    type Output = Q2;
    fn neg(self) -> Q2 {
        Q2 { a: -&self.a, b: -&self.b }
    }
}

/// u + v√3 with u, v ∈ Q(√2).
#[derive(Clone, Debug, PartialEq)]
struct Q23 {
    u: Q2,
    v: Q2,
}

impl Q23 {
    fn zero() -> Self {
        Q23 { u: Q2::zero(), v: Q2::zero() }
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn signum(&self) -> i32 {
        let su = self.u.signum();
        let sv = self.v.signum();
        if sv == 0 || su == sv {
            return if su != 0 { su } else { sv };
        }
        if su == 0 {
            return sv;
        }
        let three = Q2::rat(BigRational::from_integer(3.into()));
        let d = &(&self.u * &self.u) - &(&(&self.v * &self.v) * &three);
        su * d.signum()
    }
    fn mul(&self, o: &Q23) -> Q23 {
        let three = Q2::rat(BigRational::from_integer(3.into()));
        Q23 {
            u: &(&self.u * &o.u) + &(&(&self.v * &o.v) * &three),
            v: &(&self.u * &o.v) + &(&self.v * &o.u),
        }
    }
    fn sub(&self, o: &Q23) -> Q23 {
        Q23 { u: &self.u - &o.u, v: &self.v - &o.v }
    }
    fn inv(&self) -> Q23 {
        let three = Q2::rat(BigRational::from_integer(3.into()));
        let n = (&(&self.u * &self.u) - &(&(&self.v * &self.v) * &three)).inv();
        Q23 { u: &self.u * &n, v: &(-&self.v) * &n }
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// −cos(π/m).
fn neg_cos(m: u32) -> Result<Q23> {
    let z = BigRational::zero;
    Ok(match m {
        1 => Q23 { u: Q2::rat(BigRational::one()), v: Q2::zero() },
        2 => Q23::zero(),
        3 => Q23 { u: Q2::rat(rat(-1, 2)), v: Q2::zero() },
        4 => Q23 { u: Q2 { a: z(), b: rat(-1, 2) }, v: Q2::zero() },
        6 => Q23 { u: Q2::zero(), v: Q2::rat(rat(-1, 2)) },
        INFINITY => Q23 { u: Q2::rat(rat(-1, 1)), v: Q2::zero() },
        _ => return param(format!("unsupported Coxeter entry m = {m}")),
    })
}

/// True iff the entry is one we can handle.
pub fn supported_entry(m: u32) -> bool {
    matches!(m, 1 | 2 | 3 | 4 | 6 | INFINITY)
}

/// Whether the parabolic subgroup generated by `subset` is finite.
pub fn is_finite_parabolic(coxeter: &[Vec<u32>], subset: &[usize]) -> Result<bool> {
    let n = subset.len();
    let mut g: Vec<Vec<Q23>> = Vec::with_capacity(n);
    for &i in subset {
        let mut row = Vec::with_capacity(n);
        for &j in subset {
            row.push(neg_cos(if i == j { 1 } else { coxeter[i][j] })?);
        }
        g.push(row);
    }
    for k in 0..n {
        if g[k][k].signum() <= 0 {
            return Ok(false);
        }
        let inv = g[k][k].inv();
        for i in k + 1..n {
            if g[i][k].is_zero() {
                continue;
            }
            let factor = g[i][k].mul(&inv);
            for j in k..n {
                let t = factor.mul(&g[k][j]);
                g[i][j] = g[i][j].sub(&t);
            }
        }
    }
    Ok(true)
}

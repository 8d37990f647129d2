//! Finite fields F_{p^k} in a power basis.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 8;

/// Default offset for the irreducible-polynomial search.
pub const DEFAULT_SEED: u64 = 0;

/// Coordinates in the power basis 1, x, ..., x^{k-1}. Entries past k are zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement {
    coeffs: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn coeffs(&self, k: usize) -> &[u32] {
        &self.coeffs[..k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.coeffs.iter().rposition(|&c| c != 0).unwrap_or(0);
        write!(f, "{:?}", &self.coeffs[..=last])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub k: usize,
    pub min_poly: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    k: usize,
    min_poly: Vec<u32>,
    order: u64,
    generator: FieldElement,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.min_poly == other.min_poly
    }
}
impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Returns (p, f) with q = p^f, or None if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    let ps = prime_divisors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut f = 0;
    let mut r = q;
    while r > 1 {
        r /= p;
        f += 1;
    }
    Some((p as u32, f))
}

/// Smallest field of characteristic p containing the m-th roots of unity.
pub fn make_field(p: u32, m: u64) -> Result<FiniteField> {
    make_field_seeded(p, m, DEFAULT_SEED)
}

pub fn make_field_seeded(p: u32, m: u64, seed: u64) -> Result<FiniteField> {
    if !is_prime(p as u64) {
        return param(format!("{p} is not prime"));
    }
    if m == 0 || m.is_multiple_of(p as u64) {
        return param(format!("p = {p} divides m = {m}"));
    }
    let mut k = 1;
    let mut pk = p as u64 % m;
    while pk != 1 % m {
        k += 1;
        if k > MAX_DEGREE {
            return param(format!("roots of unity of order {m} need degree > {MAX_DEGREE}"));
        }
        pk = pk * p as u64 % m;
    }
    FiniteField::with_degree(p, k, seed)
}

// Polynomials over F_p as little-endian coefficient vectors.
fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, f, p)
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut r = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod(&r, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

fn poly_sub_x(a: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    if r.len() < 2 {
        r.resize(2, 0);
    }
    r[1] = (r[1] + p - 1) % p;
    poly_trim(&mut r);
    r
}

/// Rabin's irreducibility test for a monic polynomial of degree k.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if (0..p).any(|a| {
        let mut v = 0;
        for &c in f.iter().rev() {
            v = (v * a + c) % p;
        }
        v == 0
    }) {
        return false;
    }
    let x = vec![0, 1];
    // x^{p^j} mod f for every j ≤ k
    let mut frob = vec![x.clone()];
    for j in 1..=k {
        let prev = frob[j - 1].clone();
        frob.push(poly_powmod(&prev, p, f, p));
    }
    if !poly_sub_x(&frob[k], p).is_empty() {
        return false;
    }
    for r in prime_divisors(k as u64) {
        let h = poly_sub_x(&frob[k / r as usize], p);
        if poly_gcd(f, &h, p).len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    /// F_{p^k} with the first irreducible polynomial found from `seed` onwards.
    pub fn with_degree(p: u32, k: usize, seed: u64) -> Result<FiniteField> {
        if !is_prime(p as u64) {
            return param(format!("{p} is not prime"));
        }
        if k == 0 || k > MAX_DEGREE {
            return param(format!("unsupported extension degree {k}"));
        }
        let order = (p as u64).checked_pow(k as u32).filter(|&o| o < (1 << 40));
        let Some(order) = order else {
            return param(format!("field of order {p}^{k} is too large"));
        };
        let min_poly = if k == 1 {
            vec![0, 1]
        } else {
            let pp = p as u64;
            let mut found = None;
            for i in 0..order {
                let idx = (seed.wrapping_add(i)) % order;
                let mut f: Vec<u64> = (0..k)
                    .scan(idx, |rest, _| {
                        let c = *rest % pp;
                        *rest /= pp;
                        Some(c)
                    })
                    .collect();
                f.push(1);
                if f[0] != 0 && is_irreducible(&f, pp) {
                    found = Some(f.iter().map(|&c| c as u32).collect::<Vec<_>>());
                    break;
                }
            }
            found.expect("irreducible polynomials exist in every degree")
        };
        Self::from_min_poly(p, min_poly)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<FiniteField> {
        if d.min_poly.len() != d.k + 1 {
            return param("min_poly must have k + 1 coefficients");
        }
        Self::from_min_poly(d.p, d.min_poly.clone())
    }

    fn from_min_poly(p: u32, min_poly: Vec<u32>) -> Result<FiniteField> {
        if !is_prime(p as u64) {
            return param(format!("{p} is not prime"));
        }
        let k = min_poly.len().saturating_sub(1);
        if k == 0 || k > MAX_DEGREE {
            return param(format!("unsupported extension degree {k}"));
        }
        if min_poly[k] != 1 || min_poly.iter().any(|&c| c >= p) {
            return param("min_poly must be monic with entries in [0, p)");
        }
        let f64s: Vec<u64> = min_poly.iter().map(|&c| c as u64).collect();
        if !is_irreducible(&f64s, p as u64) {
            return param("min_poly is reducible");
        }
        let order = (p as u64).pow(k as u32);
        let mut field = FiniteField { p, k, min_poly, order, generator: FieldElement::default() };
        let primes = prime_divisors(order - 1);
        let generator = (1..order)
            .map(|i| field.element_from_index(i))
            .find(|&g| primes.iter().all(|&l| field.pow(g, (order - 1) / l) != field.one()))
            .expect("multiplicative group is cyclic");
        field.generator = generator;
        Ok(field)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p, k: self.k, min_poly: self.min_poly.clone() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn min_poly(&self) -> &[u32] {
        &self.min_poly
    }

    /// Number of elements p^k.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        let mut e = FieldElement::default();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.k {
            return param(format!("field element has {} coefficients, expected {}", coeffs.len(), self.k));
        }
        let mut e = FieldElement::default();
        for (i, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return param(format!("coefficient {c} out of range for p = {}", self.p));
            }
            e.coeffs[i] = c;
        }
        Ok(e)
    }

    /// Base-p digits of `idx` as coordinates.
    pub fn element_from_index(&self, mut idx: u64) -> FieldElement {
        let mut e = FieldElement::default();
        for i in 0..self.k {
            e.coeffs[i] = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        e
    }

    pub fn index_of(&self, e: FieldElement) -> u64 {
        e.coeffs[..self.k].iter().rev().fold(0, |acc, &c| acc * self.p as u64 + c as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.element_from_index(i))
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let mut r = a;
        for i in 0..self.k {
            r.coeffs[i] = (a.coeffs[i] + b.coeffs[i]) % self.p;
        }
        r
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let mut r = a;
        for i in 0..self.k {
            r.coeffs[i] = (self.p - a.coeffs[i]) % self.p;
        }
        r
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        if self.k == 1 {
            let mut r = FieldElement::default();
            r.coeffs[0] = ((a.coeffs[0] as u64 * b.coeffs[0] as u64) % p) as u32;
            return r;
        }
        let k = self.k;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            if a.coeffs[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + a.coeffs[i] as u64 * b.coeffs[j] as u64) % p;
            }
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..k {
                let m = self.min_poly[i] as u64;
                prod[d - k + i] = (prod[d - k + i] + (p - c) * m) % p;
            }
            prod[d] = 0;
        }
        let mut r = FieldElement::default();
        for i in 0..k {
            r.coeffs[i] = prod[i] as u32;
        }
        r
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Power with a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_signed(&self, a: FieldElement, e: i64) -> FieldElement {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a).expect("nonzero base"), e.unsigned_abs())
        }
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            None
        } else {
            Some(self.pow(a, self.order - 2))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElement) -> u64 {
        let mut n = self.order - 1;
        for l in prime_divisors(self.order - 1) {
            while n.is_multiple_of(l) && self.pow(a, n / l) == self.one() {
                n /= l;
            }
        }
        n
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Element of exact multiplicative order m.
    pub fn root_of_unity(&self, m: u64) -> Result<FieldElement> {
        if m == 0 || !(self.order - 1).is_multiple_of(m) {
            return param(format!("{m} does not divide {}", self.order - 1));
        }
        Ok(self.pow(self.generator, (self.order - 1) / m))
    }

    /// A field embedding self -> target, given by the image of the power-basis root.
    pub fn embed_into(&self, target: &FiniteField) -> Result<FieldEmbedding> {
        if target.p != self.p || !target.k.is_multiple_of(self.k) {
            return param("target field does not contain this field");
        }
        let h = target.pow(target.generator, (target.order - 1) / (self.order - 1));
        let eval = |x: FieldElement| {
            let mut v = target.zero();
            for &c in self.min_poly.iter().rev() {
                v = target.add(target.mul(v, x), target.from_int(c as i64));
            }
            v
        };
        let mut x = target.one();
        let mut candidates = vec![target.zero()];
        for _ in 0..self.order - 1 {
            candidates.push(x);
            x = target.mul(x, h);
        }
        let root = candidates.into_iter().find(|&x| eval(x).is_zero()).expect("subfield contains a root");
        Ok(FieldEmbedding { source: self.clone(), target: target.clone(), root })
    }
}

#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FiniteField,
    target: FiniteField,
    root: FieldElement,
}

impl FieldEmbedding {
    pub fn target(&self) -> &FiniteField {
        &self.target
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        let t = &self.target;
        let mut v = t.zero();
        for &c in a.coeffs(self.source.k).iter().rev() {
            v = t.add(t.mul(v, self.root), t.from_int(c as i64));
        }
        v
    }
}

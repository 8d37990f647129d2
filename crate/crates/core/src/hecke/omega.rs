//! Arithmetic in Ω(1), stored as z · ω_1^{e_1} ⋯ ω_r^{e_r} with z ∈ Z_κ.

use super::data::{GenericHeckeData, ZkElem};

/// Normal form z·ω^e; torsion exponents lie in [0, d).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaElem {
    pub z: ZkElem,
    pub e: Vec<i64>,
}

impl GenericHeckeData {
    pub fn omega_identity(&self) -> OmegaElem {
        OmegaElem { z: self.zk.identity(), e: vec![0; self.nomega()] }
    }

    pub fn omega_from_z(&self, z: ZkElem) -> OmegaElem {
        OmegaElem { z, e: vec![0; self.nomega()] }
    }

    /// ω^e with the Z_κ part trivial in the chosen normal form.
    pub fn omega_from_exps(&self, e: &[i64]) -> OmegaElem {
        let mut g = self.omega_identity();
        for (j, &x) in e.iter().enumerate() {
            for _ in 0..x.unsigned_abs() {
                self.mul_letter(&mut g, j, x > 0);
            }
        }
        g
    }

    /// Conjugation by ω_j^{±1} on Z_κ.
    pub fn conj_letter(&self, j: usize, positive: bool, z: &[i64]) -> ZkElem {
        let o = &self.omega[j];
        self.zk.apply(if positive { &o.auto } else { &o.auto_inv }, z)
    }

    /// Conjugation t ↦ ω^e t ω^{-e} for ω^e = ω_1^{e_1} ⋯ ω_r^{e_r}.
    pub fn conj_exps(&self, e: &[i64], z: &[i64]) -> ZkElem {
        let mut t = z.to_vec();
        for (j, &x) in e.iter().enumerate().rev() {
            for _ in 0..x.unsigned_abs() {
                t = self.conj_letter(j, x > 0, &t);
            }
        }
        t
    }

    /// α_g(t) = g t g⁻¹.
    pub fn omega_conj(&self, g: &OmegaElem, t: &[i64]) -> ZkElem {
        self.conj_exps(&g.e, t)
    }

    fn mul_z_into(&self, g: &mut OmegaElem, u: &[i64]) {
        let moved = self.conj_exps(&g.e, u);
        g.z = self.zk.add(&g.z, &moved);
    }

    /// Append ω_k^{±1} where k is at least every index with nonzero exponent.
    fn append_tail_letter(&self, t: &mut OmegaElem, k: usize, positive: bool) {
        t.e[k] += if positive { 1 } else { -1 };
        self.wrap_torsion(t, k);
    }

    /// Bring e_k back into [0, d_k) using ω_k^{d_k} = P_k, assuming no letters right of k.
    fn wrap_torsion(&self, t: &mut OmegaElem, k: usize) {
        let o = &self.omega[k];
        let Some(d) = o.order else { return };
        let d = d as i64;
        if t.e[k] >= d {
            t.e[k] -= d;
            let prefix: Vec<i64> = t.e.iter().enumerate().map(|(i, &x)| if i < k { x } else { 0 }).collect();
            let moved = self.conj_exps(&prefix, &o.power);
            t.z = self.zk.add(&t.z, &moved);
        } else if t.e[k] < 0 {
            t.e[k] += d;
            let prefix: Vec<i64> = t.e.iter().enumerate().map(|(i, &x)| if i < k { x } else { 0 }).collect();
            let moved = self.conj_exps(&prefix, &self.zk.neg(&o.power));
            t.z = self.zk.add(&t.z, &moved);
        }
    }

    /// Right multiplication by ω_i^{±1}.
    pub fn mul_letter(&self, g: &mut OmegaElem, i: usize, positive: bool) {
        let r = self.nomega();
        // conjugate the tail ω_{>i} by ω_i^{∓1}: Y' = ω_i^{-σ} Y ω_i^{σ}
        let mut tail = self.omega_identity();
        for k in i + 1..r {
            let ek = g.e[k];
            for _ in 0..ek.unsigned_abs() {
                let u = if positive {
                    // ω_i⁻¹ ω_k ω_i = α_i⁻¹([ω_k, ω_i]) ω_k
                    self.conj_letter(i, false, &self.omega[k].commutators[i])
                } else {
                    // ω_i ω_k ω_i⁻¹ = [ω_i, ω_k] ω_k
                    self.omega[i].commutators[k].clone()
                };
                if ek > 0 {
                    self.mul_z_into(&mut tail, &u);
                    self.append_tail_letter(&mut tail, k, true);
                } else {
                    self.append_tail_letter(&mut tail, k, false);
                    self.mul_z_into(&mut tail, &self.zk.neg(&u));
                }
            }
        }
        let mut head = OmegaElem { z: g.z.clone(), e: g.e.clone() };
        for k in i + 1..r {
            head.e[k] = 0;
        }
        head.e[i] += if positive { 1 } else { -1 };
        self.wrap_torsion(&mut head, i);
        self.mul_z_into(&mut head, &tail.z);
        for k in i + 1..r {
            head.e[k] = tail.e[k];
        }
        *g = head;
    }

    pub fn omega_mul(&self, a: &OmegaElem, b: &OmegaElem) -> OmegaElem {
        let mut g = a.clone();
        self.mul_z_into(&mut g, &b.z);
        for (j, &x) in b.e.iter().enumerate() {
            for _ in 0..x.unsigned_abs() {
                self.mul_letter(&mut g, j, x > 0);
            }
        }
        g
    }

    pub fn omega_inv(&self, a: &OmegaElem) -> OmegaElem {
        let mut g = self.omega_identity();
        for (j, &x) in a.e.iter().enumerate().rev() {
            for _ in 0..x.unsigned_abs() {
                self.mul_letter(&mut g, j, x < 0);
            }
        }
        self.mul_z_into(&mut g, &self.zk.neg(&a.z));
        g
    }

    pub fn omega_pow(&self, a: &OmegaElem, n: i64) -> OmegaElem {
        let base = if n >= 0 { a.clone() } else { self.omega_inv(a) };
        let mut g = self.omega_identity();
        for _ in 0..n.unsigned_abs() {
            g = self.omega_mul(&g, &base);
        }
        g
    }

    /// Image of the Ω(1) element in Ω, with torsion coordinates reduced.
    pub fn omega_image(&self, a: &OmegaElem) -> Vec<i64> {
        a.e.clone()
    }

    /// s ↦ ω_j^{±1} s ω_j^{∓1}.
    pub fn perm_letter(&self, j: usize, positive: bool, s: usize) -> usize {
        let p = &self.omega[j].perm;
        if positive {
            p[s]
        } else {
            p.iter().position(|&x| x == s).expect("permutation")
        }
    }

    /// g · s = g s g⁻¹ on reflections (only the Ω image matters).
    pub fn omega_perm(&self, e: &[i64], s: usize) -> usize {
        let mut s = s;
        for (j, &x) in e.iter().enumerate().rev() {
            for _ in 0..x.unsigned_abs() {
                s = self.perm_letter(j, x > 0, s);
            }
        }
        s
    }

    /// t(z, s) = z · (s̃ z⁻¹ s̃⁻¹).
    pub fn correction_z(&self, z: &[i64], s: usize) -> ZkElem {
        let conj = self.zk.apply(&self.lift_conj[s], &self.zk.neg(z));
        self.zk.add(z, &conj)
    }

    /// t(ω_j^{±1}, s).
    pub fn correction_letter(&self, j: usize, positive: bool, s: usize) -> ZkElem {
        if positive {
            self.omega[j].corrections[s].clone()
        } else {
            // ω⁻¹ s̃ ω = α⁻¹(t(ω, s''))⁻¹ s̃'' with s'' = ω⁻¹ s ω
            let s2 = self.perm_letter(j, false, s);
            let t = self.conj_letter(j, false, &self.omega[j].corrections[s2]);
            self.zk.neg(&t)
        }
    }

    /// t(w, s) for a word of letters (generator, positive?) read left to right.
    pub fn correction_word(&self, letters: &[(usize, bool)], s: usize) -> ZkElem {
        // t(L·rest, s) = α_L(t(rest, s)) · t(L, rest·s)
        let mut t = self.zk.identity();
        let mut cur = s;
        for &(j, pos) in letters.iter().rev() {
            let tl = self.correction_letter(j, pos, cur);
            t = self.zk.add(&self.conj_letter(j, pos, &t), &tl);
            cur = self.perm_letter(j, pos, cur);
        }
        t
    }

    /// t(g, s) with g s̃ g⁻¹ = t(g, s) · (g·s)~.
    pub fn correction(&self, g: &OmegaElem, s: usize) -> ZkElem {
        let letters = exps_to_letters(&g.e);
        let t = self.correction_word(&letters, s);
        let cur = self.omega_perm(&g.e, s);
        self.zk.add(&t, &self.correction_z(&g.z, cur))
    }
}

/// ω_1^{e_1} ⋯ ω_r^{e_r} as a letter sequence.
pub fn exps_to_letters(e: &[i64]) -> Vec<(usize, bool)> {
    let mut out = Vec::new();
    for (j, &x) in e.iter().enumerate() {
        for _ in 0..x.unsigned_abs() {
            out.push((j, x > 0));
        }
    }
    out
}

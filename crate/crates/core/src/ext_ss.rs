//! Ext¹ and Hom between simple supersingular modules π_{χ,J,V}.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::{act_omega, all_affine_characters, chi_from_json, chi_to_json, is_supersingular, make_xi, stabilizer_xi, AffineCharacter, ZkCharacter};
use crate::error::{param, HeckeError, Result};
use crate::ext_aff::{dim_ext1_aff, omega_scalar_on_cs};
use crate::field::{FieldElement, FieldEmbedding};
use crate::hecke::json::{matrix_from_json, matrix_to_json, ElemJson, MatrixJson};
use crate::hecke::{GenericHeckeData, OmegaElem};
use crate::oracle::{generator_names, MatrixModule};
use crate::zlinalg::{express_in_words, format_word, h1_abelian, invariant_subspace_dim, matrix_of_map, stabilizer_and_cosets, FieldMatrix, FiniteActionHom, StabilizerResult};

/// (χ, J, V) with V given on the published generator words of Ω(1)_Ξ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularModuleDescriptor {
    pub chi: ZkCharacter,
    pub j_set: Vec<usize>,
    pub v_dim: usize,
    pub v_mats: BTreeMap<String, FieldMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub chi: Vec<ElemJson>,
    pub j_set: Vec<String>,
    pub v_dim: usize,
    pub v_mats: BTreeMap<String, MatrixJson>,
}

impl SupersingularModuleDescriptor {
    pub fn from_json(data: &GenericHeckeData, j: &DescriptorJson) -> Result<Self> {
        let v_mats = j.v_mats.iter().map(|(k, m)| Ok((k.clone(), matrix_from_json(&data.field, m)?))).collect::<Result<_>>()?;
        Ok(SupersingularModuleDescriptor { chi: chi_from_json(data, &j.chi)?, j_set: data.refl_indices(&j.j_set)?, v_dim: j.v_dim, v_mats })
    }

    pub fn to_json(&self, data: &GenericHeckeData) -> DescriptorJson {
        DescriptorJson {
            chi: chi_to_json(data, &self.chi),
            j_set: data.refl_labels(&self.j_set),
            v_dim: self.v_dim,
            v_mats: self.v_mats.iter().map(|(k, m)| (k.clone(), matrix_to_json(&data.field, m))).collect(),
        }
    }
}

/// A validated descriptor together with its stabilizer presentation.
#[derive(Clone, Debug)]
pub struct SupersingularModule {
    pub xi: AffineCharacter,
    pub v_dim: usize,
    pub stab: StabilizerResult,
    /// Chosen lifts g̃_k ∈ Ω(1) of the stabilizer generators.
    pub lifts: Vec<OmegaElem>,
    pub v_gens: Vec<FieldMatrix>,
}

/// Words of the stabilizer generators in the Ω labels, as keys for `v_mats`.
pub fn published_words(data: &GenericHeckeData, stab: &StabilizerResult) -> Vec<String> {
    stab.generator_words.iter().map(|w| format_word(&data.omega_labels(), w)).collect()
}

impl SupersingularModule {
    pub fn new(data: &GenericHeckeData, xi: AffineCharacter, v_dim: usize, v_gens: Vec<FieldMatrix>) -> Result<Self> {
        let f = &data.field;
        let xi = make_xi(data, &xi.chi, &xi.j_set)?;
        if !is_supersingular(data, &xi.chi, &xi.j_set)? {
            return param("(chi, J) is not supersingular");
        }
        if v_dim == 0 {
            return param("V must be nonzero");
        }
        let stab = stabilizer_xi(data, &xi, None)?;
        if v_gens.len() != stab.generator_words.len() {
            return param(format!("expected {} matrices for V, got {}", stab.generator_words.len(), v_gens.len()));
        }
        for (m, w) in v_gens.iter().zip(published_words(data, &stab)) {
            if m.rows() != v_dim || m.cols() != v_dim {
                return param(format!("V({w}) must be {v_dim}x{v_dim}"));
            }
            if m.inverse(f).is_none() {
                return param(format!("V({w}) is not invertible"));
            }
        }
        let lifts: Vec<OmegaElem> = stab.generator_words.iter().map(|w| data.omega_from_exps(w)).collect();
        let words = published_words(data, &stab);
        let ev = |z: &[i64]| FieldMatrix::scalar(v_dim, xi.chi.eval(data, z));
        for (k, &d) in stab.subgroup.orders.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let p = data.omega_pow(&lifts[k], d as i64);
            if p.e.iter().any(|&x| x != 0) || v_gens[k].pow(d, f) != ev(&p.z) {
                return param(format!("V({}) violates the torsion relation of order {d}", words[k]));
            }
        }
        for k in 0..lifts.len() {
            for l in k + 1..lifts.len() {
                let (a, b) = (&lifts[k], &lifts[l]);
                let c = data.omega_mul(&data.omega_mul(a, b), &data.omega_inv(&data.omega_mul(b, a)));
                let lhs = v_gens[k].mul(&v_gens[l], f);
                let rhs = ev(&c.z).mul(&v_gens[l], f).mul(&v_gens[k], f);
                if c.e.iter().any(|&x| x != 0) || lhs != rhs {
                    return param(format!("V({}) and V({}) violate their commutator relation", words[k], words[l]));
                }
            }
        }
        Ok(SupersingularModule { xi, v_dim, stab, lifts, v_gens })
    }

    pub fn from_descriptor(data: &GenericHeckeData, d: &SupersingularModuleDescriptor) -> Result<Self> {
        let xi = make_xi(data, &d.chi, &d.j_set)?;
        let stab = stabilizer_xi(data, &xi, None)?;
        let words = published_words(data, &stab);
        let mut mats = Vec::new();
        for w in &words {
            match d.v_mats.get(w) {
                Some(m) => mats.push(m.clone()),
                None => return param(format!("v_mats is missing generator word {w:?}; expected keys {words:?}")),
            }
        }
        if let Some(k) = d.v_mats.keys().find(|k| !words.contains(k)) {
            return param(format!("v_mats has unexpected key {k:?}; expected keys {words:?}"));
        }
        Self::new(data, xi, d.v_dim, mats)
    }

    pub fn descriptor(&self, data: &GenericHeckeData) -> SupersingularModuleDescriptor {
        SupersingularModuleDescriptor {
            chi: self.xi.chi.clone(),
            j_set: self.xi.j_set.clone(),
            v_dim: self.v_dim,
            v_mats: published_words(data, &self.stab).into_iter().zip(self.v_gens.iter().cloned()).collect(),
        }
    }

    /// V(h) for h ∈ Ω(1)_Ξ.
    pub fn v(&self, data: &GenericHeckeData, h: &OmegaElem) -> Result<FieldMatrix> {
        let f = &data.field;
        let Some(n) = express_in_words(&data.omega_group(), &self.stab.generator_words, &h.e) else {
            return param("element is outside the stabilizer of Xi");
        };
        let mut w = data.omega_identity();
        let mut v = FieldMatrix::identity(self.v_dim, f);
        for (k, &nk) in n.iter().enumerate() {
            w = data.omega_mul(&w, &data.omega_pow(&self.lifts[k], nk));
            v = v.mul(&self.v_gens[k].pow_signed(nk, f), f);
        }
        let z = data.omega_mul(h, &data.omega_inv(&w));
        if z.e.iter().any(|&x| x != 0) {
            return Err(HeckeError::Inconsistency("stabilizer word does not reproduce the element".into()));
        }
        Ok(v.scale(self.xi.chi.eval(data, &z.z), f))
    }

    /// Embeds every scalar into a larger field; `data` must already live over the target.
    pub fn map_field(&self, data: &GenericHeckeData, emb: &FieldEmbedding) -> Result<Self> {
        let chi = ZkCharacter { values: self.xi.chi.values.iter().map(|&x| emb.map(x)).collect() };
        let mats = self.v_gens.iter().map(|m| m.map(|x| emb.map(x))).collect();
        Self::new(data, AffineCharacter { chi, j_set: self.xi.j_set.clone() }, self.v_dim, mats)
    }
}

/// (Ξω, V_ω) with V_ω(h) = V(ω h ω⁻¹).
pub fn conjugate_module(data: &GenericHeckeData, m: &SupersingularModule, e: &[i64]) -> Result<SupersingularModule> {
    let xi = act_omega(data, e, &m.xi);
    let stab = stabilizer_xi(data, &xi, None)?;
    let w = data.omega_from_exps(e);
    let wi = data.omega_inv(&w);
    let mats = stab
        .generator_words
        .iter()
        .map(|g| m.v(data, &data.omega_mul(&data.omega_mul(&w, &data.omega_from_exps(g)), &wi)))
        .collect::<Result<Vec<_>>>()?;
    SupersingularModule::new(data, xi, m.v_dim, mats)
}

/// Lifts of the generators of Ω(1)_{Ξ,Ξ′}: stabilizer words followed by the Z_κ generators.
fn pair_generators(data: &GenericHeckeData, stab: &StabilizerResult) -> Vec<OmegaElem> {
    stab.generator_words
        .iter()
        .map(|w| data.omega_from_exps(w))
        .chain((0..data.zk.ngens()).map(|k| data.omega_from_z(data.zk.gen(k))))
        .collect()
}

/// Matrix of G ↦ V′(h)⁻¹ G V(h) on d₂ × d₁ matrices.
fn hom_action(data: &GenericHeckeData, m1: &SupersingularModule, m2: &SupersingularModule, h: &OmegaElem) -> Result<FieldMatrix> {
    let f = &data.field;
    let a = m1.v(data, h)?;
    let b = m2.v(data, h)?.inverse(f).ok_or_else(|| HeckeError::Inconsistency("V(h) is singular".into()))?;
    Ok(matrix_of_map(m2.v_dim, m1.v_dim, f, |g| b.mul(g, f).mul(&a, f)))
}

pub fn hom_dim_aff(m1: &SupersingularModule, m2: &SupersingularModule) -> usize {
    if m1.xi == m2.xi {
        m1.v_dim * m2.v_dim
    } else {
        0
    }
}

/// dim Hom_{Ω(1)_{Ξ,Ξ′}}(V, V′).
pub fn intertwiner_dim(data: &GenericHeckeData, m1: &SupersingularModule, m2: &SupersingularModule) -> Result<usize> {
    let stab = stabilizer_xi(data, &m1.xi, Some(&m2.xi))?;
    let mats = pair_generators(data, &stab).iter().map(|h| hom_action(data, m1, m2, h)).collect::<Result<Vec<_>>>()?;
    invariant_subspace_dim(m1.v_dim * m2.v_dim, &mats, &data.field)
}

/// dim H¹(Ω_{Ξ,Ξ′}, Hom_{H^aff}(Ξ⊗V, Ξ′⊗V′)).
pub fn h1_term_dim(data: &GenericHeckeData, m1: &SupersingularModule, m2: &SupersingularModule) -> Result<usize> {
    if m1.xi != m2.xi {
        return Ok(0);
    }
    let stab = stabilizer_xi(data, &m1.xi, Some(&m2.xi))?;
    let mats = stab.generator_words.iter().map(|w| hom_action(data, m1, m2, &data.omega_from_exps(w))).collect::<Result<Vec<_>>>()?;
    if mats.is_empty() {
        return Ok(0);
    }
    h1_abelian(&stab.subgroup, &mats, &data.field)
}

/// dim (Ext¹_{H^aff}(Ξ, Ξ′) ⊗ Hom(V, V′))^{Ω(1)_{Ξ,Ξ′}}.
pub fn invariant_ext1_dim(data: &GenericHeckeData, m1: &SupersingularModule, m2: &SupersingularModule) -> Result<usize> {
    let f = &data.field;
    let aff = dim_ext1_aff(data, &m1.xi, &m2.xi)?;
    let stab = stabilizer_xi(data, &m1.xi, Some(&m2.xi))?;
    let dim = m1.v_dim * m2.v_dim;

    let mut total = 0;
    if aff.dim_e2_image() > 0 {
        total += aff.dim_e2_image() * intertwiner_dim(data, m1, m2)?;
    }

    let s1 = &aff.classification.s1;
    if s1.is_empty() {
        return Ok(total);
    }
    let n = data.nrefl();
    let images = stab.generator_words.iter().map(|w| (0..n).map(|s| data.omega_perm(w, s)).collect()).collect();
    let act = FiniteActionHom::new(stab.subgroup.clone(), n, images)?;
    let mut seen = vec![false; n];
    for &s0 in s1 {
        if seen[s0] {
            continue;
        }
        let mut stack = vec![s0];
        seen[s0] = true;
        while let Some(s) = stack.pop() {
            for img in &act.images {
                if !seen[img[s]] {
                    seen[img[s]] = true;
                    stack.push(img[s]);
                }
            }
        }
        let st = stabilizer_and_cosets(&stab.subgroup, &act, s0, None)?;
        let mut gens: Vec<OmegaElem> = st
            .generator_words
            .iter()
            .map(|w| {
                let mut e = vec![0i64; data.nomega()];
                for (k, &nk) in w.iter().enumerate() {
                    for (x, &y) in e.iter_mut().zip(&stab.generator_words[k]) {
                        *x += nk * y;
                    }
                }
                data.omega_from_exps(&e)
            })
            .collect();
        gens.extend((0..data.zk.ngens()).map(|k| data.omega_from_z(data.zk.gen(k))));
        let mats = gens
            .iter()
            .map(|h| Ok(hom_action(data, m1, m2, h)?.scale(omega_scalar_on_cs(data, h, s0, &m2.xi.chi), f)))
            .collect::<Result<Vec<_>>>()?;
        total += invariant_subspace_dim(dim, &mats, f)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetTerm {
    pub word: String,
    pub h1_term: usize,
    pub inv_ext_term: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtSsBreakdown {
    pub terms: Vec<CosetTerm>,
    pub total: usize,
}

/// dim Ext¹_H(π₁, π₂) as a sum over representatives ω_i of Ω/Ω_ΞΩ_{Ξ′}.
pub fn dim_ext1_supersingular(data: &GenericHeckeData, m1: &SupersingularModule, m2: &SupersingularModule) -> Result<ExtSsBreakdown> {
    let cos = stabilizer_xi(data, &m1.xi, Some(&m2.xi))?.coset_words;
    let terms = cos
        .par_iter()
        .map(|w| {
            let m2i = conjugate_module(data, m2, w)?;
            Ok(CosetTerm {
                word: format_word(&data.omega_labels(), w),
                h1_term: h1_term_dim(data, m1, &m2i)?,
                inv_ext_term: invariant_ext1_dim(data, m1, &m2i)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = terms.iter().map(|t| t.h1_term + t.inv_ext_term).sum();
    Ok(ExtSsBreakdown { terms, total })
}

/// 1 if π₁ ≅ π₂, else 0 (V and V′ are taken to be simple).
pub fn dim_hom_supersingular(data: &GenericHeckeData, m1: &SupersingularModule, m2: &SupersingularModule) -> Result<usize> {
    if m1.v_dim != m2.v_dim {
        return Ok(0);
    }
    for w in stabilizer_xi(data, &m1.xi, Some(&m2.xi))?.coset_words {
        let m2i = conjugate_module(data, m2, &w)?;
        if m2i.xi == m1.xi && intertwiner_dim(data, m1, &m2i)? > 0 {
            return Ok(1);
        }
    }
    Ok(0)
}

/// Generator matrices of π_{χ,J,V} = (Ξ⊗V) ⊗_{H_Ξ} H in the basis v ⊗ T_{ω_i}.
pub fn induce_matrices(data: &GenericHeckeData, m: &SupersingularModule) -> Result<MatrixModule> {
    let f = &data.field;
    let reps = stabilizer_xi(data, &m.xi, None)?.coset_words;
    let lifts: Vec<OmegaElem> = reps.iter().map(|w| data.omega_from_exps(w)).collect();
    let pts: Vec<AffineCharacter> = reps.iter().map(|w| act_omega(data, w, &m.xi)).collect();
    let (n, d) = (reps.len(), m.v_dim);
    let names = generator_names(data);
    let mut mats = BTreeMap::new();
    let diag = |c: &dyn Fn(usize) -> FieldElement| {
        let mut x = FieldMatrix::zeros(n * d, n * d);
        for i in 0..n {
            x.set_block(i * d, i * d, &FieldMatrix::scalar(d, c(i)));
        }
        x
    };
    for k in 0..data.zk.ngens() {
        let g = data.zk.gen(k);
        mats.insert(names[k].clone(), diag(&|i| m.xi.chi.eval(data, &data.omega_conj(&lifts[i], &g))));
    }
    for s in 0..data.nrefl() {
        let x = diag(&|i| {
            let t = data.correction(&lifts[i], s);
            f.mul(m.xi.chi.eval(data, &t), m.xi.eval_lift(data, data.omega_perm(&reps[i], s)))
        });
        mats.insert(names[data.zk.ngens() + s].clone(), x);
    }
    for j in 0..data.nomega() {
        let mut unit = vec![0i64; data.nomega()];
        unit[j] = 1;
        let wj = data.omega_from_exps(&unit);
        let mut x = FieldMatrix::zeros(n * d, n * d);
        for i in 0..n {
            let prod = data.omega_mul(&lifts[i], &wj);
            let target = act_omega(data, &prod.e, &m.xi);
            let Some(k) = pts.iter().position(|p| *p == target) else {
                return Err(HeckeError::Inconsistency("orbit is not closed under Omega".into()));
            };
            let h = data.omega_mul(&prod, &data.omega_inv(&lifts[k]));
            x.set_block(i * d, k * d, &m.v(data, &h)?);
        }
        mats.insert(names[data.zk.ngens() + data.nrefl() + j].clone(), x);
    }
    Ok(MatrixModule { dim: n * d, mats })
}

/// Every supersingular module with 1-dimensional V whose values lie in the data's field.
pub fn one_dim_modules(data: &GenericHeckeData) -> Result<Vec<SupersingularModule>> {
    let f = &data.field;
    let units: Vec<FieldElement> = f.elements().filter(|x| !x.is_zero()).collect();
    let mut out = Vec::new();
    for xi in all_affine_characters(data)? {
        if !is_supersingular(data, &xi.chi, &xi.j_set)? {
            continue;
        }
        let k = stabilizer_xi(data, &xi, None)?.generator_words.len();
        let mut idx = vec![0usize; k];
        loop {
            let mats = idx.iter().map(|&i| FieldMatrix::scalar(1, units[i])).collect();
            if let Ok(m) = SupersingularModule::new(data, xi.clone(), 1, mats) {
                out.push(m);
            }
            let mut p = 0;
            while p < k && idx[p] + 1 == units.len() {
                idx[p] = 0;
                p += 1;
            }
            if p == k {
                break;
            }
            idx[p] += 1;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;

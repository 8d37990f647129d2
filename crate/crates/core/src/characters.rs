//! Characters of Z_κ, the affine characters Ξ_{J,χ}, and the Ω-action on them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::is_finite_parabolic;
use crate::error::{param, Result};
use crate::field::FieldElement;
use crate::hecke::json::{elem_from_json, elem_to_json, ElemJson};
use crate::hecke::GenericHeckeData;
use crate::zlinalg::{parse_word, stabilizer_and_cosets, FiniteActionHom, StabilizerResult};

/// χ as its values on the generators of Z_κ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZkCharacter {
    pub values: Vec<FieldElement>,
}

/// Ξ_{J,χ}; `j_set` is sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineCharacter {
    pub chi: ZkCharacter,
    pub j_set: Vec<usize>,
}

impl ZkCharacter {
    pub fn trivial(data: &GenericHeckeData) -> Self {
        ZkCharacter { values: vec![data.field.one(); data.zk.ngens()] }
    }

    pub fn eval(&self, data: &GenericHeckeData, z: &[i64]) -> FieldElement {
        let f = &data.field;
        self.values.iter().zip(z).fold(f.one(), |acc, (&v, &e)| f.mul(acc, f.pow_signed(v, e)))
    }
}

pub fn check_character(data: &GenericHeckeData, chi: &ZkCharacter) -> Result<()> {
    let f = &data.field;
    if chi.values.len() != data.zk.ngens() {
        return param("character needs one value per Z_kappa generator");
    }
    for (v, &d) in chi.values.iter().zip(&data.zk.orders) {
        if v.is_zero() || f.pow(*v, d) != f.one() {
            return param(format!("character value {v:?} has order not dividing {d}"));
        }
    }
    Ok(())
}

/// Every character of Z_κ with values in the data's field.
pub fn all_characters(data: &GenericHeckeData) -> Result<Vec<ZkCharacter>> {
    let f = &data.field;
    let mut out = vec![ZkCharacter { values: vec![] }];
    for &d in &data.zk.orders {
        let root = f.root_of_unity(d)?;
        let mut next = Vec::new();
        for chi in &out {
            for a in 0..d {
                let mut c = chi.clone();
                c.values.push(f.pow(root, a));
                next.push(c);
            }
        }
        out = next;
    }
    Ok(out)
}

/// χ(c_{s̃}).
pub fn chi_c(data: &GenericHeckeData, chi: &ZkCharacter, s: usize) -> FieldElement {
    let f = &data.field;
    data.c_param[s].iter().fold(f.zero(), |acc, (z, c)| f.add(acc, f.mul(*c, chi.eval(data, z))))
}

/// S_aff,χ = {s : χ(c_{s̃}) ≠ 0}.
pub fn s_aff_chi(data: &GenericHeckeData, chi: &ZkCharacter) -> Vec<usize> {
    (0..data.nrefl()).filter(|&s| !chi_c(data, chi, s).is_zero()).collect()
}

pub fn make_xi(data: &GenericHeckeData, chi: &ZkCharacter, j_set: &[usize]) -> Result<AffineCharacter> {
    check_character(data, chi)?;
    let mut j = j_set.to_vec();
    j.sort_unstable();
    j.dedup();
    let allowed = s_aff_chi(data, chi);
    if let Some(s) = j.iter().find(|s| !allowed.contains(s)) {
        return param(format!("{} is not in S_aff,chi", data.s_labels.get(*s).map_or("?", |x| x.as_str())));
    }
    Ok(AffineCharacter { chi: chi.clone(), j_set: j })
}

impl AffineCharacter {
    /// Ξ(T_{s̃}).
    pub fn eval_lift(&self, data: &GenericHeckeData, s: usize) -> FieldElement {
        if self.j_set.contains(&s) {
            data.field.zero()
        } else {
            chi_c(data, &self.chi, s)
        }
    }

    /// Ξ(T_t T_{s̃}) = χ(t) Ξ(T_{s̃}).
    pub fn evaluate(&self, data: &GenericHeckeData, s: usize, twist: &[i64]) -> FieldElement {
        data.field.mul(self.chi.eval(data, twist), self.eval_lift(data, s))
    }
}

/// Whether ⟨J⟩ and ⟨S_aff,χ ∖ J⟩ are both finite.
pub fn is_supersingular(data: &GenericHeckeData, chi: &ZkCharacter, j_set: &[usize]) -> Result<bool> {
    let rest: Vec<usize> = s_aff_chi(data, chi).into_iter().filter(|s| !j_set.contains(s)).collect();
    Ok(is_finite_parabolic(&data.coxeter, j_set)? && is_finite_parabolic(&data.coxeter, &rest)?)
}

/// (χ·ω^e)(t) = χ(ω^e t ω^{-e}).
pub fn act_chi(data: &GenericHeckeData, e: &[i64], chi: &ZkCharacter) -> ZkCharacter {
    let values = (0..data.zk.ngens()).map(|i| chi.eval(data, &data.conj_exps(e, &data.zk.gen(i)))).collect();
    ZkCharacter { values }
}

/// (sχ)(t) = χ(s̃⁻¹ t s̃).
pub fn act_refl_chi(data: &GenericHeckeData, s: usize, chi: &ZkCharacter) -> ZkCharacter {
    let inv = data.zk.auto_inverse(&data.lift_conj[s]).expect("lift conjugation is an automorphism");
    let values = (0..data.zk.ngens()).map(|i| chi.eval(data, &data.zk.apply(&inv, &data.zk.gen(i)))).collect();
    ZkCharacter { values }
}

/// Ξω^e, so that acting by w₁ then w₂ equals acting by w₁w₂.
pub fn act_omega(data: &GenericHeckeData, e: &[i64], xi: &AffineCharacter) -> AffineCharacter {
    let chi = act_chi(data, e, &xi.chi);
    let j_set = (0..data.nrefl()).filter(|&s| xi.j_set.contains(&data.omega_perm(e, s))).collect();
    AffineCharacter { chi, j_set }
}

pub fn act_omega_word(data: &GenericHeckeData, word: &str, xi: &AffineCharacter) -> Result<AffineCharacter> {
    let e = parse_word(&data.omega_labels(), word)?;
    Ok(act_omega(data, &e, xi))
}

/// Ω_Ξ (or Ω_{Ξ,Ξ′}) with generator words, and representatives of Ω/Ω_ΞΩ_{Ξ′}.
pub fn stabilizer_xi(data: &GenericHeckeData, xi: &AffineCharacter, xi2: Option<&AffineCharacter>) -> Result<StabilizerResult> {
    let r = data.nomega();
    let unit = |j: usize| {
        let mut e = vec![0; r];
        e[j] = 1;
        e
    };
    let mut pts: Vec<AffineCharacter> = Vec::new();
    let mut index: HashMap<AffineCharacter, usize> = HashMap::new();
    let mut add = |x: &AffineCharacter, pts: &mut Vec<AffineCharacter>| {
        if !index.contains_key(x) {
            index.insert(x.clone(), pts.len());
            pts.push(x.clone());
        }
    };
    add(xi, &mut pts);
    if let Some(x2) = xi2 {
        add(x2, &mut pts);
    }
    let mut i = 0;
    while i < pts.len() {
        for j in 0..r {
            let y = act_omega(data, &unit(j), &pts[i]);
            add(&y, &mut pts);
        }
        i += 1;
    }
    let index: HashMap<&AffineCharacter, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let images = (0..r).map(|j| pts.iter().map(|p| index[&act_omega(data, &unit(j), p)]).collect()).collect();
    let g = data.omega_group();
    let act = FiniteActionHom::new(g.clone(), pts.len(), images)?;
    stabilizer_and_cosets(&g, &act, 0, xi2.map(|x| index[x]))
}

/// All affine characters Ξ_{J,χ}.
pub fn all_affine_characters(data: &GenericHeckeData) -> Result<Vec<AffineCharacter>> {
    let mut out = Vec::new();
    for chi in all_characters(data)? {
        let sa = s_aff_chi(data, &chi);
        for mask in 0u64..(1 << sa.len()) {
            let j: Vec<usize> = sa.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &s)| s).collect();
            out.push(AffineCharacter { chi: chi.clone(), j_set: j });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct XiJson {
    pub chi: Vec<ElemJson>,
    pub j_set: Vec<String>,
}

pub fn chi_from_json(data: &GenericHeckeData, v: &[ElemJson]) -> Result<ZkCharacter> {
    let chi = ZkCharacter { values: v.iter().map(|x| elem_from_json(&data.field, x)).collect::<Result<_>>()? };
    check_character(data, &chi)?;
    Ok(chi)
}

pub fn chi_to_json(data: &GenericHeckeData, chi: &ZkCharacter) -> Vec<ElemJson> {
    chi.values.iter().map(|&x| elem_to_json(&data.field, x)).collect()
}

impl XiJson {
    pub fn resolve(&self, data: &GenericHeckeData) -> Result<AffineCharacter> {
        let chi = chi_from_json(data, &self.chi)?;
        make_xi(data, &chi, &data.refl_indices(&self.j_set)?)
    }

    pub fn from_xi(data: &GenericHeckeData, xi: &AffineCharacter) -> Self {
        XiJson { chi: chi_to_json(data, &xi.chi), j_set: data.refl_labels(&xi.j_set) }
    }
}

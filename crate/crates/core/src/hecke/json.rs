//! JSON exchange formats for data, characters and modules.

use serde::{Deserialize, Serialize};

use super::data::{GenericHeckeData, OmegaGen, ZKappa, ZkElem};
use crate::error::{param, HeckeError, Result};
use crate::field::{FieldDescriptor, FieldElement, FiniteField};
use crate::zlinalg::{FieldMatrix, IntMatrix};

/// Field element on the wire: a coefficient array, or a bare integer for prime fields.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Int(i64),
    Coeffs(Vec<u32>),
}

pub fn elem_to_json(f: &FiniteField, e: FieldElement) -> ElemJson {
    ElemJson::Coeffs(e.coeffs(f.degree()).to_vec())
}

pub fn elem_from_json(f: &FiniteField, e: &ElemJson) -> Result<FieldElement> {
    match e {
        ElemJson::Int(n) => Ok(f.from_int(*n)),
        ElemJson::Coeffs(c) => f.element(c),
    }
}

pub type MatrixJson = Vec<Vec<ElemJson>>;

pub fn matrix_to_json(f: &FiniteField, m: &FieldMatrix) -> MatrixJson {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|x| elem_to_json(f, x)).collect()).collect()
}

pub fn matrix_from_json(f: &FiniteField, m: &MatrixJson) -> Result<FieldMatrix> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(|x| elem_from_json(f, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FieldMatrix::from_rows(rows)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZKappaJson {
    pub invariants: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OmegaJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    /// null for infinite order.
    pub order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<ZkElem>,
    pub auto: IntMatrix,
    pub perm: Vec<usize>,
    pub corrections: Vec<ZkElem>,
    pub commutators: Vec<ZkElem>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DataJson {
    pub field: FieldDescriptor,
    pub s_aff: Vec<String>,
    pub coxeter: Vec<Vec<u32>>,
    pub z_kappa: ZKappaJson,
    pub lift_conj: Vec<IntMatrix>,
    pub c_param: Vec<Vec<(ZkElem, ElemJson)>>,
    pub omega: Vec<OmegaJson>,
}

impl GenericHeckeData {
    pub fn to_json(&self) -> DataJson {
        let f = &self.field;
        DataJson {
            field: f.descriptor(),
            s_aff: self.s_labels.clone(),
            coxeter: self.coxeter.clone(),
            z_kappa: ZKappaJson { invariants: self.zk.orders.clone() },
            lift_conj: self.lift_conj.clone(),
            c_param: self
                .c_param
                .iter()
                .map(|c| c.iter().map(|(z, x)| (z.clone(), elem_to_json(f, *x))).collect())
                .collect(),
            omega: self
                .omega
                .iter()
                .map(|o| OmegaJson {
                    label: Some(o.label.clone()),
                    order: o.order,
                    power: o.order.map(|_| o.power.clone()),
                    auto: o.auto.clone(),
                    perm: o.perm.clone(),
                    corrections: o.corrections.clone(),
                    commutators: o.commutators.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &DataJson) -> Result<GenericHeckeData> {
        let field = FiniteField::from_descriptor(&j.field)?;
        let zk = ZKappa::new(j.z_kappa.invariants.clone())?;
        let n = j.s_aff.len();
        if j.lift_conj.len() != n || j.c_param.len() != n || j.coxeter.len() != n {
            return param("lift_conj, c_param and coxeter need one entry per reflection");
        }
        let c_param = j
            .c_param
            .iter()
            .map(|c| c.iter().map(|(z, x)| Ok((z.clone(), elem_from_json(&field, x)?))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let omega = j
            .omega
            .iter()
            .enumerate()
            .map(|(i, o)| {
                OmegaGen::new(
                    &zk,
                    o.label.clone().unwrap_or_else(|| format!("w{i}")),
                    o.order,
                    o.power.clone().unwrap_or_else(|| zk.identity()),
                    o.auto.clone(),
                    o.perm.clone(),
                    o.corrections.clone(),
                    o.commutators.clone(),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        for a in &j.lift_conj {
            if a.len() != zk.ngens() || a.iter().any(|r| r.len() != zk.ngens()) {
                return param("lift_conj matrices must be square of size #generators(Z_kappa)");
            }
        }
        Ok(GenericHeckeData {
            field,
            s_labels: j.s_aff.clone(),
            coxeter: j.coxeter.clone(),
            zk,
            lift_conj: j.lift_conj.clone(),
            c_param,
            omega,
        })
    }

    /// Pretty JSON; byte-stable for equal data.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<GenericHeckeData> {
        let j: DataJson = serde_json::from_str(s).map_err(|e| HeckeError::Parameter(format!("malformed data JSON: {e}")))?;
        Self::from_json(&j)
    }
}

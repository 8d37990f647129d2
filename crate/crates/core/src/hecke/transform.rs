//! Changes of lifts and of the coefficient field.

use super::data::{GenericHeckeData, ZkElem};
use crate::error::{param, Result};
use crate::field::{FieldEmbedding, FiniteField};

/// Replaces each lift s̃ by t₀(s)·s̃.
///
/// The quadratic parameter becomes t₀(s)·c_s and the corrections become
/// α_ω(t₀(s)) · t(ω, s) · t₀(ω·s)⁻¹; the lift conjugations do not change.
/// Braid relations between the new lifts are not re-checked.
pub fn relift(data: &GenericHeckeData, t0: &[ZkElem]) -> Result<GenericHeckeData> {
    let zk = &data.zk;
    if t0.len() != data.nrefl() || t0.iter().any(|t| t.len() != zk.ngens()) {
        return param("need one Z_kappa element per reflection");
    }
    let mut out = data.clone();
    for s in 0..data.nrefl() {
        out.c_param[s] = data.c_param[s].iter().map(|(z, c)| (zk.add(z, &t0[s]), *c)).collect();
    }
    for o in &mut out.omega {
        for s in 0..data.nrefl() {
            let moved = zk.apply(&o.auto, &t0[s]);
            let t = zk.add(&moved, &o.corrections[s]);
            o.corrections[s] = zk.sub(&t, &t0[o.perm[s]]);
        }
    }
    Ok(out)
}

/// The same data with coefficients embedded into a larger field.
pub fn extend_scalars(data: &GenericHeckeData, target: &FiniteField) -> Result<(GenericHeckeData, FieldEmbedding)> {
    let emb = data.field.embed_into(target)?;
    let mut out = data.clone();
    out.field = target.clone();
    for c in &mut out.c_param {
        for (_, x) in c.iter_mut() {
            *x = emb.map(*x);
        }
    }
    Ok((out, emb))
}

//! Small hand-built data sets used by tests, benches and the CLI.

use super::data::{GenericHeckeData, OmegaGen, ZKappa};
use crate::coxeter::INFINITY;
use crate::error::{param, Result};
use crate::field::{make_field, prime_power};

fn squares_c(zk: &ZKappa, d: u64, field: &crate::field::FiniteField) -> super::GroupAlgebraElem {
    (0..d as i64)
        .map(|a| {
            let mut z = zk.identity();
            if zk.ngens() > 0 {
                z[0] = 2 * a;
                zk.normalize(&mut z);
            }
            (z, field.one())
        })
        .collect()
}

/// PGL₂-shaped data: Z_κ = κ^×, lifts act by inversion, c_s = Σ_t T_{t²},
/// and ω of order 2 with ω² = 1 swapping s0 and s1.
pub fn build_pgl2(q: u64) -> Result<GenericHeckeData> {
    let Some((p, _)) = prime_power(q) else {
        return param(format!("q = {q} is not a prime power"));
    };
    let d = q - 1;
    let field = make_field(p, d)?;
    let zk = ZKappa::new(if d == 1 { vec![] } else { vec![d] })?;
    let inv: Vec<Vec<i64>> = if d == 1 { vec![] } else { vec![vec![-1]] };
    let c = squares_c(&zk, d, &field);
    let omega = OmegaGen::new(&zk, "w".into(), Some(2), zk.identity(), inv.clone(), vec![1, 0], vec![zk.identity(); 2], vec![zk.identity()])?;
    Ok(GenericHeckeData {
        field,
        s_labels: vec!["s0".into(), "s1".into()],
        coxeter: vec![vec![1, INFINITY], vec![INFINITY, 1]],
        lift_conj: vec![zk.reduce_auto(&inv), zk.reduce_auto(&inv)],
        c_param: vec![c.clone(), c],
        zk,
        omega: vec![omega],
    })
}

/// One reflection, Z_κ = κ^×, and ω of infinite order commuting with Z_κ
/// whose correction on the lift is t(ω, s) = `correction` (an exponent of the generator).
pub fn build_twisted_rank_one(q: u64, correction: i64) -> Result<GenericHeckeData> {
    let Some((p, _)) = prime_power(q) else {
        return param(format!("q = {q} is not a prime power"));
    };
    let d = q - 1;
    if d < 2 {
        return param("need a nontrivial Z_kappa");
    }
    let field = make_field(p, d)?;
    let zk = ZKappa::new(vec![d])?;
    let c = squares_c(&zk, d, &field);
    let t = zk.normalize_copy(&[correction]);
    let omega = OmegaGen::new(&zk, "w".into(), None, zk.identity(), vec![vec![1]], vec![0], vec![t], vec![zk.identity()])?;
    Ok(GenericHeckeData {
        field,
        s_labels: vec!["s".into()],
        coxeter: vec![vec![1]],
        lift_conj: vec![zk.reduce_auto(&[vec![-1]].to_vec())],
        c_param: vec![c],
        zk,
        omega: vec![omega],
    })
}

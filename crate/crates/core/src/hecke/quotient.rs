use super::data::{GenericHeckeData, OmegaGen, ZKappa, ZkElem};
use super::validate::{canonical, validate};
use crate::error::{param, Result};
use crate::zlinalg::integer::{smith_normal_form, solve_row_combination, IntMatrix};

/// Z_κ → Z_κ / K in SNF coordinates.
struct QuotientMap {
    /// Columns of V kept (factor > 1) with their orders.
    keep: Vec<(usize, u64)>,
    v: IntMatrix,
    v_inv: IntMatrix,
    n: usize,
}

impl QuotientMap {
    fn image(&self, z: &[i64]) -> ZkElem {
        self.keep
            .iter()
            .map(|&(c, d)| (0..self.n).map(|i| z[i] * self.v[i][c]).sum::<i64>().rem_euclid(d as i64))
            .collect()
    }

    /// Old element representing new generator i.
    fn lift(&self, i: usize) -> ZkElem {
        self.v_inv[self.keep[i].0].clone()
    }
}

fn in_subgroup(zk: &ZKappa, k: &[ZkElem], z: &[i64]) -> bool {
    let n = zk.ngens();
    let mut rows: IntMatrix = k.to_vec();
    for (i, &d) in zk.orders.iter().enumerate() {
        let mut r = vec![0; n];
        r[i] = d as i64;
        rows.push(r);
    }
    rows.is_empty() || solve_row_combination(&rows, n, z).is_some()
}

/// The quotient construction: keep `s_keep`, divide Z_κ by the subgroup generated by `k`.
pub fn quotient_data(data: &GenericHeckeData, s_keep: &[usize], k: &[ZkElem]) -> Result<GenericHeckeData> {
    let zk = &data.zk;
    let n = data.nrefl();
    let ng = zk.ngens();
    let mut keep = s_keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.iter().any(|&s| s >= n) || k.iter().any(|z| z.len() != ng) {
        return param("reflection index or subgroup element out of range");
    }
    for &s in &keep {
        for t in (0..n).filter(|t| !keep.contains(t)) {
            if data.coxeter[s][t] != 2 {
                return param(format!("{} and {} are not orthogonal", data.s_labels[s], data.s_labels[t]));
            }
        }
    }
    let autos = data.lift_conj.iter().chain(data.omega.iter().flat_map(|o| [&o.auto, &o.auto_inv]));
    for a in autos {
        for z in k {
            if !in_subgroup(zk, k, &zk.apply(a, z)) {
                return param("subgroup is not stable under the stored automorphisms");
            }
        }
    }
    for o in &data.omega {
        if keep.iter().any(|&s| !keep.contains(&o.perm[s])) {
            return param(format!("{} does not preserve the kept reflections", o.label));
        }
    }

    let trivial = k.iter().all(|z| zk.normalize_copy(z).iter().all(|&x| x == 0));
    let qm = if trivial {
        QuotientMap {
            keep: zk.orders.iter().copied().enumerate().collect(),
            v: crate::zlinalg::integer::identity(ng),
            v_inv: crate::zlinalg::integer::identity(ng),
            n: ng,
        }
    } else {
        let mut rows: IntMatrix = k.to_vec();
        for (i, &d) in zk.orders.iter().enumerate() {
            let mut r = vec![0; ng];
            r[i] = d as i64;
            rows.push(r);
        }
        let sm = smith_normal_form(&rows, ng);
        let keep_cols = sm.diag.iter().enumerate().filter(|(_, &d)| d > 1).map(|(i, &d)| (i, d as u64)).collect();
        QuotientMap { keep: keep_cols, v: sm.v, v_inv: sm.v_inv, n: ng }
    };
    let new_zk = ZKappa::new(qm.keep.iter().map(|&(_, d)| d).collect())?;
    let m = new_zk.ngens();
    let push_auto = |a: &IntMatrix| -> IntMatrix {
        let cols: Vec<ZkElem> = (0..m).map(|i| qm.image(&zk.apply(a, &qm.lift(i)))).collect();
        (0..m).map(|r| (0..m).map(|c| cols[c][r]).collect()).collect()
    };

    let index_of = |s: usize| keep.iter().position(|&x| x == s).unwrap();
    let field = data.field.clone();
    let c_param = keep
        .iter()
        .map(|&s| {
            let pushed: Vec<(ZkElem, _)> = data.c_param[s].iter().map(|(z, x)| (qm.image(z), *x)).collect();
            let mut tmp = data.clone();
            tmp.zk = new_zk.clone();
            canonical(&tmp, &pushed).into_iter().collect()
        })
        .collect();
    let r = data.nomega();
    let mut omega = Vec::with_capacity(r);
    for o in &data.omega {
        omega.push(OmegaGen::new(
            &new_zk,
            o.label.clone(),
            o.order,
            qm.image(&o.power),
            push_auto(&o.auto),
            keep.iter().map(|&s| index_of(o.perm[s])).collect(),
            keep.iter().map(|&s| qm.image(&o.corrections[s])).collect(),
            o.commutators.iter().map(|z| qm.image(z)).collect(),
        )?);
    }
    let out = GenericHeckeData {
        field,
        s_labels: keep.iter().map(|&s| data.s_labels[s].clone()).collect(),
        coxeter: keep.iter().map(|&s| keep.iter().map(|&t| data.coxeter[s][t]).collect()).collect(),
        zk: new_zk,
        lift_conj: keep.iter().map(|&s| push_auto(&data.lift_conj[s])).collect(),
        c_param,
        omega,
    };
    let violations = validate(&out);
    if let Some(v) = violations.first() {
        return param(format!("quotient data is invalid: {}: {}", v.rule, v.detail));
    }
    Ok(out)
}

/// Direct product of two data sets over the same field (orthogonal blocks).
pub fn product_data(a: &GenericHeckeData, b: &GenericHeckeData) -> Result<GenericHeckeData> {
    if a.field != b.field {
        return param("product requires a common field");
    }
    let (na, nb) = (a.nrefl(), b.nrefl());
    let (ga, gb) = (a.zk.ngens(), b.zk.ngens());
    let (ra, rb) = (a.nomega(), b.nomega());
    let mut orders = a.zk.orders.clone();
    orders.extend(&b.zk.orders);
    let zk = ZKappa::new(orders)?;
    let embed = |z: &[i64], first: bool| -> ZkElem {
        let mut out = vec![0; ga + gb];
        let off = if first { 0 } else { ga };
        out[off..off + z.len()].copy_from_slice(z);
        out
    };
    let block_auto = |m: &IntMatrix, first: bool| -> IntMatrix {
        let mut out = crate::zlinalg::integer::identity(ga + gb);
        let off = if first { 0 } else { ga };
        for (i, row) in m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[off + i][off + j] = x;
            }
        }
        out
    };
    let mut coxeter = vec![vec![2u32; na + nb]; na + nb];
    for i in 0..na + nb {
        coxeter[i][i] = 1;
    }
    for i in 0..na {
        for j in 0..na {
            coxeter[i][j] = a.coxeter[i][j];
        }
    }
    for i in 0..nb {
        for j in 0..nb {
            coxeter[na + i][na + j] = b.coxeter[i][j];
        }
    }
    let relabel = |l: &str, side: &str| format!("{l}_{side}");
    let mut omega = Vec::new();
    for (first, d) in [(true, a), (false, b)] {
        for o in &d.omega {
            let perm: Vec<usize> = (0..na + nb)
                .map(|s| match (first, s < na) {
                    (true, true) => o.perm[s],
                    (false, false) => na + o.perm[s - na],
                    _ => s,
                })
                .collect();
            let corrections = (0..na + nb)
                .map(|s| match (first, s < na) {
                    (true, true) => embed(&o.corrections[s], true),
                    (false, false) => embed(&o.corrections[s - na], false),
                    _ => vec![0; ga + gb],
                })
                .collect();
            let commutators = (0..ra + rb)
                .map(|j| match (first, j < ra) {
                    (true, true) => embed(&o.commutators[j], true),
                    (false, false) => embed(&o.commutators[j - ra], false),
                    _ => vec![0; ga + gb],
                })
                .collect();
            omega.push(OmegaGen::new(
                &zk,
                relabel(&o.label, if first { "a" } else { "b" }),
                o.order,
                embed(&o.power, first),
                block_auto(&o.auto, first),
                perm,
                corrections,
                commutators,
            )?);
        }
    }
    Ok(GenericHeckeData {
        field: a.field.clone(),
        s_labels: a.s_labels.iter().map(|l| relabel(l, "a")).chain(b.s_labels.iter().map(|l| relabel(l, "b"))).collect(),
        coxeter,
        lift_conj: a.lift_conj.iter().map(|m| block_auto(m, true)).chain(b.lift_conj.iter().map(|m| block_auto(m, false))).collect(),
        c_param: a
            .c_param
            .iter()
            .map(|c| c.iter().map(|(z, x)| (embed(z, true), *x)).collect())
            .chain(b.c_param.iter().map(|c| c.iter().map(|(z, x)| (embed(z, false), *x)).collect()))
            .collect(),
        zk,
        omega,
    })
}

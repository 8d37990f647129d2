use std::collections::BTreeMap;

use serde::Serialize;

use super::data::{GenericHeckeData, GroupAlgebraElem, ZkElem};
use crate::coxeter::supported_entry;
use crate::field::FieldElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub detail: String,
}

fn v(rule: &str, detail: String) -> Violation {
    Violation { rule: rule.to_string(), detail }
}

/// Canonical dense form of a group-algebra element (zero coefficients dropped).
pub fn canonical(data: &GenericHeckeData, c: &GroupAlgebraElem) -> BTreeMap<ZkElem, FieldElement> {
    let f = &data.field;
    let mut out: BTreeMap<ZkElem, FieldElement> = BTreeMap::new();
    for (z, x) in c {
        let mut z = z.clone();
        data.zk.normalize(&mut z);
        let e = out.entry(z).or_insert(f.zero());
        *e = f.add(*e, *x);
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// Applies `map` to the support of c.
pub fn transport(data: &GenericHeckeData, c: &GroupAlgebraElem, map: impl Fn(&ZkElem) -> ZkElem) -> BTreeMap<ZkElem, FieldElement> {
    canonical(data, &c.iter().map(|(z, x)| (map(z), *x)).collect())
}

fn fmt_diff(a: &BTreeMap<ZkElem, FieldElement>, b: &BTreeMap<ZkElem, FieldElement>) -> String {
    let mut keys: Vec<&ZkElem> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .find(|k| a.get(*k) != b.get(*k))
        .map(|k| format!("t = {k:?}: {:?} vs {:?}", a.get(k), b.get(k)))
        .unwrap_or_default()
}

/// Checks the structural invariants; an empty list means valid.
pub fn validate(data: &GenericHeckeData) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = data.nrefl();
    let zk = &data.zk;
    let ng = zk.ngens();
    let r = data.nomega();

    // labels
    let mut labels: Vec<&String> = data.s_labels.iter().chain(data.omega.iter().map(|o| &o.label)).collect();
    labels.sort();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        out.push(v("labels", "reflection and omega labels must be distinct".into()));
    }
    for l in &labels {
        let bad_prefix = l.starts_with('z') && l[1..].parse::<usize>().is_ok();
        if l.is_empty() || bad_prefix || l.contains(['*', '^', ' ']) || l.as_str() == "1" {
            out.push(v("labels", format!("label {l:?} is reserved or malformed")));
        }
    }

    // shapes; later checks assume them
    let shapes_ok = data.coxeter.len() == n
        && data.coxeter.iter().all(|row| row.len() == n)
        && data.lift_conj.len() == n
        && data.c_param.len() == n
        && data.omega.iter().all(|o| {
            o.perm.len() == n
                && o.corrections.len() == n
                && o.commutators.len() == r
                && o.corrections.iter().chain(&o.commutators).chain(std::iter::once(&o.power)).all(|z| zk.is_normalized(z))
                && o.perm.iter().all(|&s| s < n)
                && {
                    let mut p = o.perm.clone();
                    p.sort_unstable();
                    p.dedup();
                    p.len() == n
                }
        })
        && data.c_param.iter().flatten().all(|(z, _)| zk.is_normalized(z));
    if !shapes_ok {
        out.push(v("shape", "array sizes, permutations or exponent vectors are malformed".into()));
        return out;
    }

    // Coxeter matrix
    for i in 0..n {
        if data.coxeter[i][i] != 1 {
            out.push(v("coxeter diagonal", format!("m({0},{0}) = {1}", data.s_labels[i], data.coxeter[i][i])));
        }
        for j in 0..n {
            let m = data.coxeter[i][j];
            if m != data.coxeter[j][i] {
                out.push(v("coxeter symmetry", format!("m({}, {}) = {} but m({}, {}) = {}", data.s_labels[i], data.s_labels[j], m, data.s_labels[j], data.s_labels[i], data.coxeter[j][i])));
            }
            if i != j && (m == 1 || !supported_entry(m)) {
                out.push(v("coxeter entry", format!("m({}, {}) = {} is unsupported", data.s_labels[i], data.s_labels[j], m)));
            }
        }
    }

    // Z_kappa order prime to p
    if zk.size().is_multiple_of(data.field.p() as u64) {
        out.push(v("z_kappa order", format!("#Z_kappa = {} is divisible by p = {}", zk.size(), data.field.p())));
    }

    // lift conjugations
    let mut lc_ok = true;
    for s in 0..n {
        let a = &data.lift_conj[s];
        if !zk.is_well_defined(a) || zk.auto_inverse(a).is_none() {
            out.push(v("lift automorphism", format!("conjugation by lift of {} is not an automorphism", data.s_labels[s])));
            lc_ok = false;
            continue;
        }
        let sq = zk.compose(a, a);
        if sq != zk.identity_auto() {
            out.push(v("lift involution", format!("conjugation by lift of {} does not square to the identity", data.s_labels[s])));
        }
    }
    if !lc_ok {
        return out;
    }

    for s in 0..n {
        let c = canonical(data, &data.c_param[s]);
        let conj = transport(data, &data.c_param[s], |z| zk.apply(&data.lift_conj[s], z));
        if c != conj {
            out.push(v("lift fixes c", format!("s = {}: {}", data.s_labels[s], fmt_diff(&c, &conj))));
        }
        for g in 0..ng {
            let gen = zk.gen(g);
            let shift = data.correction_z(&gen, s);
            let moved = transport(data, &data.c_param[s], |z| zk.add(z, &shift));
            if moved != c {
                out.push(v("torus conjugation", format!("s = {}, z = {:?}: {}", data.s_labels[s], gen, fmt_diff(&c, &moved))));
            }
        }
    }

    // Ω generators
    for (j, o) in data.omega.iter().enumerate() {
        if !zk.is_well_defined(&o.auto) || zk.compose(&o.auto, &o.auto_inv) != zk.identity_auto() {
            out.push(v("omega automorphism", format!("{}: auto and auto_inv are inconsistent", o.label)));
            continue;
        }
        for s in 0..n {
            let s2 = o.perm[s];
            // c_{t s̃} = t c_{s̃}, so c_{ω·s} is ω · c_s translated by t(ω, s)⁻¹
            let lhs = transport(data, &data.c_param[s], |z| zk.sub(&zk.apply(&o.auto, z), &o.corrections[s]));
            let rhs = canonical(data, &data.c_param[s2]);
            if lhs != rhs {
                out.push(v("parameter compatibility", format!("omega {}, s = {}: {}", o.label, data.s_labels[s], fmt_diff(&lhs, &rhs))));
            }
            let a = zk.compose(&zk.compose(&o.auto, &data.lift_conj[s]), &o.auto_inv);
            if a != zk.reduce_auto(&data.lift_conj[s2]) {
                out.push(v("lift conjugation compatibility", format!("omega {}, s = {}", o.label, data.s_labels[s])));
            }
            for t in 0..n {
                if data.coxeter[o.perm[s]][o.perm[t]] != data.coxeter[s][t] {
                    out.push(v("omega coxeter", format!("omega {} does not preserve m({}, {})", o.label, data.s_labels[s], data.s_labels[t])));
                }
            }
        }
        if o.commutators[j] != zk.identity() {
            out.push(v("commutator", format!("[{0}, {0}] must be trivial", o.label)));
        }
        for k in 0..r {
            let back = &data.omega[k].commutators[j];
            if zk.add(&o.commutators[k], back) != zk.identity() {
                out.push(v("commutator", format!("[{}, {}] and [{}, {}] are not inverse", o.label, data.omega[k].label, data.omega[k].label, o.label)));
            }
        }
        if let Some(d) = o.order {
            let mut p: Vec<usize> = (0..n).collect();
            let mut a = zk.identity_auto();
            for _ in 0..d {
                p = p.iter().map(|&s| o.perm[s]).collect();
                a = zk.compose(&o.auto, &a);
            }
            if p.iter().enumerate().any(|(i, &x)| i != x) {
                out.push(v("omega torsion", format!("{}^{} does not act trivially on reflections", o.label, d)));
            }
            if a != zk.identity_auto() {
                out.push(v("omega torsion", format!("{}^{} does not act trivially on Z_kappa", o.label, d)));
            }
            if zk.apply(&o.auto, &o.power) != o.power {
                out.push(v("omega torsion", format!("{} does not fix its own power", o.label)));
            }
            let letters = vec![(j, true); d as usize];
            for s in 0..n {
                let t = data.correction_word(&letters, s);
                let want = data.correction_z(&o.power, s);
                if t != want {
                    out.push(v("omega torsion corrections", format!("{}^{} at s = {}: {:?} vs {:?}", o.label, d, data.s_labels[s], t, want)));
                }
            }
        }
    }
    for i in 0..r {
        for k in i + 1..r {
            let (oi, ok) = (&data.omega[i], &data.omega[k]);
            let pi_pk: Vec<usize> = (0..n).map(|s| oi.perm[ok.perm[s]]).collect();
            let pk_pi: Vec<usize> = (0..n).map(|s| ok.perm[oi.perm[s]]).collect();
            if pi_pk != pk_pi {
                out.push(v("omega commutation", format!("{} and {} permutations do not commute", oi.label, ok.label)));
            }
            if zk.compose(&oi.auto, &ok.auto) != zk.compose(&ok.auto, &oi.auto) {
                out.push(v("omega commutation", format!("{} and {} automorphisms do not commute", oi.label, ok.label)));
            }
            // ω_i ω_k = c ω_k ω_i, so t(ω_i ω_k, s) = t(ω_k ω_i, s) · t(c, ω_k ω_i · s)
            let c = &oi.commutators[k];
            for s in 0..n {
                let lhs = data.correction_word(&[(i, true), (k, true)], s);
                let target = ok.perm[oi.perm[s]];
                let rhs = zk.add(&data.correction_word(&[(k, true), (i, true)], s), &data.correction_z(c, target));
                if lhs != rhs {
                    out.push(v("omega commutator corrections", format!("[{}, {}] at s = {}", oi.label, ok.label, data.s_labels[s])));
                }
            }
        }
        // ω_k P_i ω_k⁻¹ = N_i([ω_k, ω_i]) P_i for torsion i
        let oi = &data.omega[i];
        if let Some(d) = oi.order {
            for (k, ok) in data.omega.iter().enumerate() {
                if k == i {
                    continue;
                }
                let c = &ok.commutators[i];
                let mut norm = zk.identity();
                let mut cur = c.clone();
                for _ in 0..d {
                    norm = zk.add(&norm, &cur);
                    cur = zk.apply(&oi.auto, &cur);
                }
                let lhs = zk.apply(&ok.auto, &oi.power);
                let rhs = zk.add(&norm, &oi.power);
                if lhs != rhs {
                    out.push(v("omega torsion", format!("{} does not conjugate {}^{} consistently", ok.label, oi.label, d)));
                }
            }
        }
    }
    out
}

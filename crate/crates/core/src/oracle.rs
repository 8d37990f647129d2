//! Brute-force Ext¹ between matrix modules, straight from the defining relations.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, HeckeError, Result};
use crate::field::{FieldElement, FiniteField};
use crate::hecke::json::{matrix_from_json, matrix_to_json, MatrixJson};
use crate::hecke::{GenericHeckeData, ZkElem};
use crate::zlinalg::{direct_sum, FieldMatrix};

/// Σ coeff · (product of generators) = 0; generators are indices into `RelationSet::generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(FieldElement, Vec<usize>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSet {
    pub generators: Vec<String>,
    pub quadratic: Vec<Relation>,
    pub braid: Vec<Relation>,
    pub mixing: Vec<Relation>,
    /// T_s̃ and T_ω against the Z_κ generators.
    pub torus: Vec<Relation>,
    /// Z_κ torsion and commutation, Ω(1) torsion and commutators.
    pub group: Vec<Relation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Full,
    AffOnly,
}

impl RelationSet {
    pub fn all(&self) -> impl Iterator<Item = &Relation> {
        self.quadratic.iter().chain(&self.braid).chain(&self.mixing).chain(&self.torus).chain(&self.group)
    }

    pub fn len(&self) -> usize {
        self.all().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Generator names: "z{k}" for Z_κ, "T_{label}" for lifts, then the Ω(1) labels.
pub fn generator_names(data: &GenericHeckeData) -> Vec<String> {
    (0..data.zk.ngens())
        .map(|k| format!("z{k}"))
        .chain(data.s_labels.iter().map(|s| format!("T_{s}")))
        .chain(data.omega_labels())
        .collect()
}

fn is_omega_gen(data: &GenericHeckeData, g: usize) -> bool {
    g >= data.zk.ngens() + data.nrefl()
}

struct Builder<'a> {
    data: &'a GenericHeckeData,
}

impl Builder<'_> {
    fn z(&self, t: &[i64]) -> Vec<usize> {
        let t = self.data.zk.normalize_copy(t);
        t.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize)).collect()
    }
    fn t(&self, s: usize) -> usize {
        self.data.zk.ngens() + s
    }
    fn w(&self, j: usize) -> usize {
        self.data.zk.ngens() + self.data.nrefl() + j
    }
    fn eq(&self, name: String, lhs: Vec<usize>, rhs: Vec<usize>) -> Relation {
        let f = &self.data.field;
        Relation { name, terms: vec![(f.one(), lhs), (f.neg(f.one()), rhs)] }
    }
}

fn cat(parts: &[&[usize]]) -> Vec<usize> {
    parts.concat()
}

pub fn build_relations(data: &GenericHeckeData) -> RelationSet {
    let f = &data.field;
    let b = Builder { data };
    let zk = &data.zk;
    let lab = &data.s_labels;
    let mut rs = RelationSet {
        generators: generator_names(data),
        quadratic: vec![],
        braid: vec![],
        mixing: vec![],
        torus: vec![],
        group: vec![],
    };
    for s in 0..data.nrefl() {
        let ts = b.t(s);
        let mut terms = vec![(f.one(), vec![ts, ts])];
        for (t, c) in &data.c_param[s] {
            terms.push((f.neg(*c), cat(&[&b.z(t), &[ts]])));
        }
        rs.quadratic.push(Relation { name: format!("quadratic {}", lab[s]), terms });
    }
    for s in 0..data.nrefl() {
        for t in s + 1..data.nrefl() {
            let m = data.coxeter[s][t] as usize;
            if m == 0 {
                continue;
            }
            let alt = |a: usize, c: usize| (0..m).map(|i| if i % 2 == 0 { b.t(a) } else { b.t(c) }).collect::<Vec<_>>();
            rs.braid.push(b.eq(format!("braid {} {}", lab[s], lab[t]), alt(s, t), alt(t, s)));
        }
    }
    for (j, o) in data.omega.iter().enumerate() {
        for s in 0..data.nrefl() {
            let rhs = cat(&[&b.z(&o.corrections[s]), &[b.t(o.perm[s]), b.w(j)]]);
            rs.mixing.push(b.eq(format!("mixing {} {}", o.label, lab[s]), vec![b.w(j), b.t(s)], rhs));
        }
    }
    for s in 0..data.nrefl() {
        for k in 0..zk.ngens() {
            let img = zk.apply(&data.lift_conj[s], &zk.gen(k));
            rs.torus.push(b.eq(format!("torus {} z{k}", lab[s]), vec![b.t(s), k], cat(&[&b.z(&img), &[b.t(s)]])));
        }
    }
    for (j, o) in data.omega.iter().enumerate() {
        for k in 0..zk.ngens() {
            let img = zk.apply(&o.auto, &zk.gen(k));
            rs.torus.push(b.eq(format!("torus {} z{k}", o.label), vec![b.w(j), k], cat(&[&b.z(&img), &[b.w(j)]])));
        }
    }
    for (k, &d) in zk.orders.iter().enumerate() {
        rs.group.push(b.eq(format!("order z{k}"), vec![k; d as usize], vec![]));
        for l in k + 1..zk.ngens() {
            rs.group.push(b.eq(format!("commute z{k} z{l}"), vec![k, l], vec![l, k]));
        }
    }
    for (j, o) in data.omega.iter().enumerate() {
        if let Some(d) = o.order {
            rs.group.push(b.eq(format!("order {}", o.label), vec![b.w(j); d as usize], b.z(&o.power)));
        }
        for (l, c) in o.commutators.iter().enumerate().skip(j + 1) {
            rs.group.push(b.eq(
                format!("commutator {} {}", o.label, data.omega[l].label),
                vec![b.w(j), b.w(l)],
                cat(&[&b.z(c), &[b.w(l), b.w(j)]]),
            ));
        }
    }
    rs
}

/// A right module given by one matrix per generator, acting on row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModule {
    pub dim: usize,
    pub mats: BTreeMap<String, FieldMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixModuleJson {
    pub dim: usize,
    pub mats: BTreeMap<String, MatrixJson>,
}

impl MatrixModule {
    pub fn to_json(&self, f: &FiniteField) -> MatrixModuleJson {
        MatrixModuleJson { dim: self.dim, mats: self.mats.iter().map(|(k, m)| (k.clone(), matrix_to_json(f, m))).collect() }
    }

    pub fn from_json(f: &FiniteField, j: &MatrixModuleJson) -> Result<Self> {
        let mut mats = BTreeMap::new();
        for (k, m) in &j.mats {
            // an empty row list is a 0×0 matrix
            let m = if m.is_empty() { FieldMatrix::zeros(0, 0) } else { matrix_from_json(f, m)? };
            mats.insert(k.clone(), m);
        }
        Ok(MatrixModule { dim: j.dim, mats })
    }

    /// P⁻¹ ρ(g) P for every generator.
    pub fn conjugate(&self, p: &FieldMatrix, f: &FiniteField) -> Result<Self> {
        let Some(pi) = p.inverse(f) else {
            return param("change of basis is not invertible");
        };
        let mats = self.mats.iter().map(|(k, m)| (k.clone(), pi.mul(m, f).mul(p, f))).collect();
        Ok(MatrixModule { dim: self.dim, mats })
    }

    pub fn map_scalars(&self, g: impl Fn(FieldElement) -> FieldElement) -> Self {
        MatrixModule { dim: self.dim, mats: self.mats.iter().map(|(k, m)| (k.clone(), m.map(&g))).collect() }
    }
}

pub fn module_direct_sum(a: &MatrixModule, b: &MatrixModule) -> Result<MatrixModule> {
    if a.mats.keys().ne(b.mats.keys()) {
        return param("modules have different generator sets");
    }
    let mats = a.mats.iter().map(|(k, m)| (k.clone(), direct_sum(m, &b.mats[k]))).collect();
    Ok(MatrixModule { dim: a.dim + b.dim, mats })
}

fn gen_mats<'a>(rs: &RelationSet, m: &'a MatrixModule, scope: Scope, data: &GenericHeckeData) -> Result<Vec<Option<&'a FieldMatrix>>> {
    rs.generators
        .iter()
        .enumerate()
        .map(|(g, name)| {
            if scope == Scope::AffOnly && is_omega_gen(data, g) {
                return Ok(m.mats.get(name));
            }
            let Some(x) = m.mats.get(name) else {
                return param(format!("module has no matrix for generator {name}"));
            };
            if x.rows() != m.dim || x.cols() != m.dim {
                return param(format!("matrix for {name} is {}x{}, expected {}x{}", x.rows(), x.cols(), m.dim, m.dim));
            }
            Ok(Some(x))
        })
        .collect()
}

fn in_scope(data: &GenericHeckeData, r: &Relation, scope: Scope) -> bool {
    scope == Scope::Full || r.terms.iter().all(|(_, w)| w.iter().all(|&g| !is_omega_gen(data, g)))
}

fn evaluate(word: &[usize], mats: &[Option<&FieldMatrix>], dim: usize, f: &FiniteField) -> FieldMatrix {
    word.iter().fold(FieldMatrix::identity(dim, f), |acc, &g| acc.mul(mats[g].expect("in scope"), f))
}

fn check_with(data: &GenericHeckeData, rs: &RelationSet, m: &MatrixModule, scope: Scope) -> Result<Option<String>> {
    let f = &data.field;
    let mats = gen_mats(rs, m, scope, data)?;
    if scope == Scope::Full {
        for j in 0..data.nomega() {
            let g = data.zk.ngens() + data.nrefl() + j;
            if mats[g].expect("present").inverse(f).is_none() {
                return Ok(Some(format!("{} acts non-invertibly", rs.generators[g])));
            }
        }
    }
    for r in rs.all().filter(|r| in_scope(data, r, scope)) {
        let mut acc = FieldMatrix::zeros(m.dim, m.dim);
        for (c, w) in &r.terms {
            acc = acc.add(&evaluate(w, &mats, m.dim, f).scale(*c, f), f);
        }
        if !acc.is_zero() {
            return Ok(Some(r.name.clone()));
        }
    }
    Ok(None)
}

/// The first violated relation, if any.
pub fn first_violation(data: &GenericHeckeData, m: &MatrixModule, scope: Scope) -> Result<Option<String>> {
    check_with(data, &build_relations(data), m, scope)
}

pub fn check_module(data: &GenericHeckeData, m: &MatrixModule) -> Result<bool> {
    Ok(first_violation(data, m, Scope::Full)?.is_none())
}

/// dim Z¹ − dim B¹ for extensions with D(XY) = D(X)ρ₁(Y) + ρ₂(X)D(Y), D(g) of size dim₂ × dim₁.
pub fn brute_force_ext1(data: &GenericHeckeData, m1: &MatrixModule, m2: &MatrixModule, scope: Scope) -> Result<usize> {
    let f = &data.field;
    let rs = build_relations(data);
    for (i, m) in [m1, m2].into_iter().enumerate() {
        if let Some(r) = check_with(data, &rs, m, scope)? {
            return param(format!("module {} violates relation {r}", i + 1));
        }
    }
    let a = gen_mats(&rs, m1, scope, data)?;
    let b = gen_mats(&rs, m2, scope, data)?;
    let (d1, d2) = (m1.dim, m2.dim);
    let gens: Vec<usize> = (0..rs.generators.len()).filter(|&g| scope == Scope::Full || !is_omega_gen(data, g)).collect();
    let slot: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let block = d1 * d2;
    let nvars = gens.len() * block;
    if nvars == 0 {
        return Ok(0);
    }

    let rels: Vec<&Relation> = rs.all().filter(|r| in_scope(data, r, scope)).collect();
    // one block of d2·d1 equations per relation; columns are the unknowns
    let blocks: Vec<Vec<Vec<FieldElement>>> = rels
        .par_iter()
        .map(|r| {
            let mut eqs = vec![vec![f.zero(); nvars]; block];
            for (coeff, w) in &r.terms {
                // lower block of the word: Σ_i ρ₂(prefix) D(g_i) ρ₁(suffix)
                let mut suffix = vec![FieldMatrix::identity(d1, f); w.len() + 1];
                for i in (0..w.len()).rev() {
                    suffix[i] = a[w[i]].expect("in scope").mul(&suffix[i + 1], f);
                }
                let mut prefix = FieldMatrix::identity(d2, f);
                for (i, &g) in w.iter().enumerate() {
                    let base = slot[&g] * block;
                    let s = &suffix[i + 1];
                    for x in 0..d2 {
                        for r in 0..d2 {
                            let pa = f.mul(*coeff, prefix.get(x, r));
                            if pa.is_zero() {
                                continue;
                            }
                            for c in 0..d1 {
                                for y in 0..d1 {
                                    let v = f.mul(pa, s.get(c, y));
                                    if !v.is_zero() {
                                        let e = &mut eqs[x * d1 + y][base + r * d1 + c];
                                        *e = f.add(*e, v);
                                    }
                                }
                            }
                        }
                    }
                    prefix = prefix.mul(b[g].expect("in scope"), f);
                }
            }
            eqs
        })
        .collect();
    let rows: Vec<Vec<FieldElement>> = blocks.into_iter().flatten().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let mut sys = FieldMatrix::zeros(rows.len(), nvars);
    for (i, r) in rows.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            sys.set(i, j, x);
        }
    }
    let dim_z = nvars - sys.rank(f);

    // coboundaries D(g) = M ρ₁(g) − ρ₂(g) M
    let mut cob = FieldMatrix::zeros(block, nvars);
    for idx in 0..block {
        let mut mm = FieldMatrix::zeros(d2, d1);
        mm.set(idx / d1, idx % d1, f.one());
        for (i, &g) in gens.iter().enumerate() {
            let dg = mm.mul(a[g].expect("in scope"), f).sub(&b[g].expect("in scope").mul(&mm, f), f);
            for k in 0..block {
                cob.set(idx, i * block + k, dg.get(k / d1, k % d1));
            }
        }
    }
    let dim_b = cob.rank(f);
    dim_z.checked_sub(dim_b).ok_or_else(|| HeckeError::Inconsistency("coboundaries exceed cocycles".into()))
}

/// A 1-dimensional module for H^aff from an affine character (Ω(1) generators omitted).
pub fn character_module(data: &GenericHeckeData, xi: &crate::characters::AffineCharacter) -> MatrixModule {
    let mut mats = BTreeMap::new();
    let names = generator_names(data);
    for k in 0..data.zk.ngens() {
        mats.insert(names[k].clone(), FieldMatrix::scalar(1, xi.chi.eval(data, &data.zk.gen(k))));
    }
    for s in 0..data.nrefl() {
        mats.insert(names[data.zk.ngens() + s].clone(), FieldMatrix::scalar(1, xi.eval_lift(data, s)));
    }
    MatrixModule { dim: 1, mats }
}

/// ρ(T_t) for t ∈ Z_κ.
pub fn torus_matrix(data: &GenericHeckeData, m: &MatrixModule, t: &ZkElem) -> Result<FieldMatrix> {
    let f = &data.field;
    let names = generator_names(data);
    let t = data.zk.normalize_copy(t);
    let mut acc = FieldMatrix::identity(m.dim, f);
    for (k, &e) in t.iter().enumerate() {
        let Some(g) = m.mats.get(&names[k]) else {
            return param(format!("module has no matrix for {}", names[k]));
        };
        acc = acc.mul(&g.pow(e as u64, f), f);
    }
    Ok(acc)
}

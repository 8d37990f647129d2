use super::*;
use crate::hecke::build_gl_n;
use crate::hecke::fixtures::build_twisted_rank_one;
use crate::oracle::{brute_force_ext1, check_module, Scope};

fn chi(d: &GenericHeckeData, v: &[i64]) -> ZkCharacter {
    ZkCharacter { values: v.iter().map(|&x| d.field.from_int(x)).collect() }
}

fn module(d: &GenericHeckeData, c: &[i64], j: &[usize], lambda: i64) -> SupersingularModule {
    let xi = make_xi(d, &chi(d, c), j).unwrap();
    SupersingularModule::new(d, xi, 1, vec![FieldMatrix::scalar(1, d.field.from_int(lambda))]).unwrap()
}

#[test]
fn published_words_for_gl2() {
    let d = build_gl_n(2, 3).unwrap();
    let m = module(&d, &[1, 1], &[0], 1);
    assert_eq!(published_words(&d, &m.stab), vec!["w^2".to_string()]);
    let desc = m.descriptor(&d);
    let back = SupersingularModule::from_descriptor(&d, &desc).unwrap();
    assert_eq!(back.v_gens, m.v_gens);
    let mut bad = desc.clone();
    bad.v_mats = BTreeMap::from([("w".to_string(), FieldMatrix::scalar(1, d.field.one()))]);
    assert!(SupersingularModule::from_descriptor(&d, &bad).is_err());
    // not supersingular: J = ∅ with S_aff,χ = S_aff of infinite type
    let xi = make_xi(&d, &chi(&d, &[1, 1]), &[]).unwrap();
    assert!(SupersingularModule::new(&d, xi, 1, vec![FieldMatrix::scalar(1, d.field.one())]).is_err());
}

#[test]
fn hom_dim_aff_examples() {
    let d = build_gl_n(2, 3).unwrap();
    let a = module(&d, &[1, 1], &[0], 1);
    let b = module(&d, &[1, 1], &[1], 1);
    assert_eq!(hom_dim_aff(&a, &b), 0);
    assert_eq!(hom_dim_aff(&a, &a), 1);
    let f = &d.field;
    let two = SupersingularModule::new(&d, a.xi.clone(), 2, vec![FieldMatrix::identity(2, f)]).unwrap();
    let three = SupersingularModule::new(&d, a.xi.clone(), 3, vec![FieldMatrix::identity(3, f)]).unwrap();
    assert_eq!(hom_dim_aff(&two, &three), 6);
}

#[test]
fn h1_term_examples() {
    let d = build_gl_n(2, 3).unwrap();
    let a = module(&d, &[1, 1], &[0], 1);
    let b = module(&d, &[1, 1], &[0], 2);
    let c = module(&d, &[1, 1], &[1], 1);
    assert_eq!(h1_term_dim(&d, &a, &a).unwrap(), 1);
    assert_eq!(h1_term_dim(&d, &a, &b).unwrap(), 0);
    assert_eq!(h1_term_dim(&d, &a, &c).unwrap(), 0);
}

#[test]
fn invariant_term_examples() {
    let d = build_gl_n(2, 3).unwrap();
    let a = module(&d, &[1, 1], &[0], 1);
    let a1 = conjugate_module(&d, &a, &[1]).unwrap();
    assert_eq!(a1.xi.j_set, vec![1]);
    assert_eq!(invariant_ext1_dim(&d, &a, &a1).unwrap(), 1);
    let m = module(&d, &[1, -1], &[], 1);
    let m1 = conjugate_module(&d, &m, &[1]).unwrap();
    assert_eq!(invariant_ext1_dim(&d, &m, &m1).unwrap(), 2);
    // no intertwiner and S₁ = ∅
    let b = module(&d, &[1, 1], &[1], 2);
    assert_eq!(invariant_ext1_dim(&d, &a, &b).unwrap(), 0);
}

#[test]
fn gl2_totals() {
    let d = build_gl_n(2, 3).unwrap();
    let a = module(&d, &[1, 1], &[0], 1);
    let r = dim_ext1_supersingular(&d, &a, &a).unwrap();
    assert_eq!(r.total, 2);
    assert_eq!(r.terms.iter().map(|t| (t.h1_term, t.inv_ext_term)).collect::<Vec<_>>(), vec![(1, 0), (0, 1)]);
    let m = module(&d, &[1, -1], &[], 1);
    let r = dim_ext1_supersingular(&d, &m, &m).unwrap();
    assert_eq!(r.total, 3);
    assert_eq!(r.terms.iter().map(|t| (t.h1_term, t.inv_ext_term)).collect::<Vec<_>>(), vec![(1, 0), (0, 2)]);
    let b = module(&d, &[1, 1], &[0], 2);
    assert_eq!(dim_ext1_supersingular(&d, &a, &b).unwrap().total, 0);
}

#[test]
fn hom_examples() {
    let d = build_gl_n(2, 3).unwrap();
    let a = module(&d, &[1, 1], &[0], 1);
    assert_eq!(dim_hom_supersingular(&d, &a, &a).unwrap(), 1);
    let aw = conjugate_module(&d, &a, &[1]).unwrap();
    assert_eq!(dim_hom_supersingular(&d, &a, &aw).unwrap(), 1);
    let b = module(&d, &[1, 1], &[0], 2);
    assert_eq!(dim_hom_supersingular(&d, &a, &b).unwrap(), 0);
}

#[test]
fn induced_gl2() {
    let d = build_gl_n(2, 3).unwrap();
    let f = &d.field;
    let a = module(&d, &[1, 1], &[0], 1);
    let m = induce_matrices(&d, &a).unwrap();
    assert_eq!(m.dim, 2);
    let t0 = &m.mats["T_s0"];
    let nonzero: Vec<usize> = (0..2).filter(|&i| !t0.get(i, i).is_zero()).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(t0.get(nonzero[0], nonzero[0]), crate::characters::chi_c(&d, &a.xi.chi, 0));
    assert_eq!(t0.rank(f), 1);
    assert!(check_module(&d, &m).unwrap());
}

#[test]
fn trivial_orbit() {
    let d = build_twisted_rank_one(5, 2).unwrap();
    let f = &d.field;
    for c in crate::characters::all_characters(&d).unwrap() {
        for j in [vec![], vec![0]] {
            let Ok(xi) = make_xi(&d, &c, &j) else { continue };
            let v = FieldMatrix::scalar(1, f.from_int(3));
            let m = SupersingularModule::new(&d, xi, 1, vec![v.clone()]).unwrap();
            let ind = induce_matrices(&d, &m).unwrap();
            assert_eq!(ind.dim, 1);
            assert_eq!(ind.mats["w"], v);
            assert!(check_module(&d, &ind).unwrap());
            let closed = dim_ext1_supersingular(&d, &m, &m).unwrap().total;
            assert_eq!(closed, brute_force_ext1(&d, &ind, &ind, Scope::Full).unwrap());
        }
    }
}

#[test]
fn oracle_agrees_gl2_q3() {
    let d = build_gl_n(2, 3).unwrap();
    let ms = one_dim_modules(&d).unwrap();
    assert_eq!(ms.len(), 12);
    let ind: Vec<MatrixModule> = ms.iter().map(|m| induce_matrices(&d, m).unwrap()).collect();
    for (a, ia) in ms.iter().zip(&ind) {
        assert!(check_module(&d, ia).unwrap());
        for (b, ib) in ms.iter().zip(&ind) {
            let closed = dim_ext1_supersingular(&d, a, b).unwrap().total;
            let oracle = brute_force_ext1(&d, ia, ib, Scope::Full).unwrap();
            assert_eq!(closed, oracle, "{:?} {:?}", a.xi, b.xi);
        }
    }
}

#[test]
fn jordan_block_v() {
    let d = build_gl_n(2, 5).unwrap();
    let f = &d.field;
    let xi = make_xi(&d, &chi(&d, &[1, 1]), &[0]).unwrap();
    let v = FieldMatrix::from_rows(vec![vec![f.from_int(2), f.one()], vec![f.zero(), f.from_int(2)]]).unwrap();
    let m = SupersingularModule::new(&d, xi, 2, vec![v]).unwrap();
    let ind = induce_matrices(&d, &m).unwrap();
    assert!(check_module(&d, &ind).unwrap());
    let closed = dim_ext1_supersingular(&d, &m, &m).unwrap().total;
    assert_eq!(closed, brute_force_ext1(&d, &ind, &ind, Scope::Full).unwrap());
}

#[test]
fn descriptor_counts() {
    assert_eq!(one_dim_modules(&build_gl_n(2, 5).unwrap()).unwrap().len(), 80);
    assert_eq!(one_dim_modules(&build_gl_n(2, 2).unwrap()).unwrap().len(), 2);
    assert_eq!(one_dim_modules(&build_gl_n(3, 2).unwrap()).unwrap().len(), 6);
}

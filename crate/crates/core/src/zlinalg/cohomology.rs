use super::abelian::FgAbelianGroup;
use super::matrix::FieldMatrix;
use crate::error::{param, Result};
use crate::field::FiniteField;

/// dim H¹(G, M) for the right module M = F^d where generator i acts by `mats[i]`.
pub fn h1_abelian(g: &FgAbelianGroup, mats: &[FieldMatrix], f: &FiniteField) -> Result<usize> {
    if mats.len() != g.ngens() {
        return param("one action matrix per generator required");
    }
    let Some(d) = mats.first().map(|m| m.rows()) else {
        return Ok(0);
    };
    if mats.iter().any(|m| m.rows() != d || m.cols() != d) {
        return param("action matrices must be square of equal size");
    }
    let id = FieldMatrix::identity(d, f);
    for (i, a) in mats.iter().enumerate() {
        for b in &mats[i + 1..] {
            if a.mul(b, f) != b.mul(a, f) {
                return param("action matrices do not commute");
            }
        }
        let ord = g.orders[i];
        if ord != 0 && a.pow(ord, f) != id {
            return param(format!("generator {i} does not satisfy its torsion relation"));
        }
    }
    let n = mats.len();
    let shifted: Vec<FieldMatrix> = mats.iter().map(|m| m.sub(&id, f)).collect();
    let pairs = n * n.saturating_sub(1) / 2;
    let torsion: Vec<usize> = (0..n).filter(|&i| g.orders[i] != 0).collect();
    // unknown row vector (c_1 | ... | c_n); each equation block contributes d columns
    let mut sys = FieldMatrix::zeros(n * d, (pairs + torsion.len()) * d);
    let mut col = 0;
    for i in 0..n {
        for j in i + 1..n {
            sys.set_block(i * d, col, &shifted[j]);
            sys.set_block(j * d, col, &shifted[i].scale(f.from_int(-1), f));
            col += d;
        }
    }
    for &i in &torsion {
        let mut norm = FieldMatrix::zeros(d, d);
        let mut pw = id.clone();
        for _ in 0..g.orders[i] {
            norm = norm.add(&pw, f);
            pw = pw.mul(&mats[i], f);
        }
        sys.set_block(i * d, col, &norm);
        col += d;
    }
    let dim_z = n * d - sys.rank(f);
    let mut cob = FieldMatrix::zeros(d, n * d);
    for (i, s) in shifted.iter().enumerate() {
        cob.set_block(0, i * d, s);
    }
    Ok(dim_z - cob.rank(f))
}

/// Dimension of {v : v·M = v for every M}.
pub fn invariant_subspace_dim(dim: usize, mats: &[FieldMatrix], f: &FiniteField) -> Result<usize> {
    if mats.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return param("matrix size mismatch");
    }
    let id = FieldMatrix::identity(dim, f);
    let mut sys = FieldMatrix::zeros(dim, dim * mats.len());
    for (i, m) in mats.iter().enumerate() {
        sys.set_block(0, i * dim, &m.sub(&id, f));
    }
    Ok(dim - sys.rank(f))
}

/// Matrix of a linear map on r×c matrices, in the row-major basis, acting on row vectors.
pub fn matrix_of_map(rows: usize, cols: usize, f: &FiniteField, map: impl Fn(&FieldMatrix) -> FieldMatrix) -> FieldMatrix {
    let n = rows * cols;
    let mut out = FieldMatrix::zeros(n, n);
    for idx in 0..n {
        let mut e = FieldMatrix::zeros(rows, cols);
        e.set(idx / cols, idx % cols, f.one());
        let img = map(&e);
        for k in 0..n {
            out.set(idx, k, img.get(k / cols, k % cols));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn one_dim(f: &FiniteField, c: i64) -> FieldMatrix {
        FieldMatrix::scalar(1, f.from_int(c))
    }

    #[test]
    fn examples() {
        let f3 = make_field(3, 2).unwrap();
        let f2 = make_field(2, 1).unwrap();
        let z = FgAbelianGroup::invariant(&[], 1).unwrap();
        assert_eq!(h1_abelian(&z, &[one_dim(&f3, 1)], &f3).unwrap(), 1);
        assert_eq!(h1_abelian(&z, &[one_dim(&f3, 2)], &f3).unwrap(), 0);
        let z2 = FgAbelianGroup::invariant(&[2], 0).unwrap();
        assert_eq!(h1_abelian(&z2, &[one_dim(&f3, 1)], &f3).unwrap(), 0);
        let z22 = FgAbelianGroup::invariant(&[2, 2], 0).unwrap();
        assert_eq!(h1_abelian(&z22, &[one_dim(&f2, 1), one_dim(&f2, 1)], &f2).unwrap(), 2);
        let f5 = make_field(5, 4).unwrap();
        assert!(h1_abelian(&z2, &[one_dim(&f5, 2)], &f5).is_err());
        let e = |n| f5.from_int(n);
        let a = FieldMatrix::from_rows(vec![vec![e(1), e(1)], vec![e(0), e(1)]]).unwrap();
        let b = FieldMatrix::from_rows(vec![vec![e(1), e(0)], vec![e(1), e(1)]]).unwrap();
        let z2f = FgAbelianGroup::invariant(&[], 2).unwrap();
        assert!(h1_abelian(&z2f, &[a, b], &f5).is_err());
    }

    #[test]
    fn invariant_subspaces() {
        let f3 = make_field(3, 2).unwrap();
        let e = |n| f3.from_int(n);
        assert_eq!(invariant_subspace_dim(2, &[FieldMatrix::identity(2, &f3)], &f3).unwrap(), 2);
        let d = FieldMatrix::from_rows(vec![vec![e(1), e(0)], vec![e(0), e(2)]]).unwrap();
        assert_eq!(invariant_subspace_dim(2, &[d], &f3).unwrap(), 1);
        let swap = FieldMatrix::from_rows(vec![vec![e(0), e(1)], vec![e(1), e(0)]]).unwrap();
        assert_eq!(invariant_subspace_dim(2, &[swap], &f3).unwrap(), 1);
        assert!(invariant_subspace_dim(3, &[FieldMatrix::identity(2, &f3)], &f3).is_err());
    }

    proptest! {
        #[test]
        fn trivial_action_formula(rank in 0usize..3, tors in proptest::collection::vec(prop_oneof![Just(2u64), Just(3), Just(4), Just(6), Just(5)], 0..3), d in 1usize..3, pi in 0usize..3) {
            let p = [2u32, 3, 5][pi];
            let f = make_field(p, 1).unwrap();
            // make an invariant-factor chain from the sampled factors
            let mut chain: Vec<u64> = Vec::new();
            for t in tors {
                let next = match chain.last() { Some(&l) => l * t, None => t };
                chain.push(next);
            }
            let g = FgAbelianGroup::invariant(&chain, rank).unwrap();
            let mats = vec![FieldMatrix::identity(d, &f); g.ngens()];
            let expect = (rank + chain.iter().filter(|&&x| x % p as u64 == 0).count()) * d;
            prop_assert_eq!(h1_abelian(&g, &mats, &f).unwrap(), expect);
        }
    }
}

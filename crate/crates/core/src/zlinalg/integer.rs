//! Integer matrices, Smith normal form, and lattice solves.

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix, inner: usize) -> IntMatrix {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

/// Row vector times matrix.
pub fn vec_mul(v: &[i64], m: &IntMatrix, cols: usize) -> Vec<i64> {
    (0..cols).map(|j| v.iter().zip(m).map(|(&x, row)| x * row[j]).sum()).collect()
}

#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries, positive and dividing each other in order.
    pub diag: Vec<i64>,
}

/// U·A·V = S with U, V unimodular; `v_inv` is V⁻¹.
pub fn smith_normal_form(a: &IntMatrix, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut s = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut vi = identity(n);

    let swap_rows = |s: &mut IntMatrix, u: &mut IntMatrix, i: usize, j: usize| {
        s.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |s: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, i: usize, j: usize| {
        for row in s.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vi.swap(i, j);
    };
    // row_i -= q row_t
    let row_op = |s: &mut IntMatrix, u: &mut IntMatrix, i: usize, t: usize, q: i64| {
        for j in 0..s[i].len() {
            s[i][j] -= q * s[t][j];
        }
        for j in 0..u[i].len() {
            u[i][j] -= q * u[t][j];
        }
    };
    // col_j -= q col_t
    let col_op = |s: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, j: usize, t: usize, q: i64| {
        for row in s.iter_mut() {
            row[j] -= q * row[t];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[t];
        }
        for c in 0..vi[t].len() {
            vi[t][c] += q * vi[j][c];
        }
    };

    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[i][j] != 0 && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_rows(&mut s, &mut u, t, bi);
        swap_cols(&mut s, &mut v, &mut vi, t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                let q = s[i][t] / s[t][t];
                if q != 0 {
                    row_op(&mut s, &mut u, i, t, q);
                }
                if s[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = s[t][j] / s[t][t];
                if q != 0 {
                    col_op(&mut s, &mut v, &mut vi, j, t, q);
                }
                if s[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                let mut best = (t, t);
                for i in t + 1..m {
                    if s[i][t] != 0 && s[i][t].abs() < s[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if s[t][j] != 0 && s[t][j].abs() < s[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    swap_rows(&mut s, &mut u, t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut s, &mut v, &mut vi, t, best.1);
                }
                continue;
            }
            let bad = (t + 1..m).find_map(|i| (t + 1..n).find(|&j| s[i][j] % s[t][t] != 0).map(|_| i));
            match bad {
                Some(i) => row_op(&mut s, &mut u, t, i, -1),
                None => break,
            }
        }
        if s[t][t] < 0 {
            for x in s[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(s[t][t]);
    }
    Smith { u, s, v, v_inv: vi, diag }
}

/// Some x with x·A = b, if one exists.
pub fn solve_row_combination(a: &IntMatrix, cols: usize, b: &[i64]) -> Option<Vec<i64>> {
    let sm = smith_normal_form(a, cols);
    let bv = vec_mul(b, &sm.v, cols);
    let mut y = vec![0i64; a.len()];
    for (j, &x) in bv.iter().enumerate() {
        match sm.diag.get(j) {
            Some(&d) => {
                if x % d != 0 {
                    return None;
                }
                y[j] = x / d;
            }
            None => {
                if x != 0 {
                    return None;
                }
            }
        }
    }
    Some(vec_mul(&y, &sm.u, a.len()))
}

/// Basis of the left kernel {w : w·A = 0}.
pub fn left_kernel(a: &IntMatrix, cols: usize) -> IntMatrix {
    let sm = smith_normal_form(a, cols);
    sm.u[sm.diag.len()..].to_vec()
}

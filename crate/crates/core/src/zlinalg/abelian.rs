use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::integer::{left_kernel, smith_normal_form, solve_row_combination, IntMatrix};
use crate::error::{param, Result};

/// Finitely generated abelian group as a product of cyclic factors.
///
/// `orders[i]` is the order of generator i, with 0 meaning infinite order.
/// Groups returned by [`stabilizer_and_cosets`] are in invariant-factor form:
/// torsion factors d_1 | d_2 | ... (each ≥ 2) first, then the free generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgAbelianGroup {
    pub orders: Vec<u64>,
    pub generator_labels: Vec<String>,
}

impl FgAbelianGroup {
    pub fn new(orders: Vec<u64>, generator_labels: Vec<String>) -> Result<Self> {
        if orders.len() != generator_labels.len() {
            return param("one label per generator required");
        }
        if orders.contains(&1) {
            return param("cyclic factors of order 1 are not allowed");
        }
        Ok(FgAbelianGroup { orders, generator_labels })
    }

    /// Invariant-factor presentation Z/d_1 × ... × Z^rank.
    pub fn invariant(torsion: &[u64], rank: usize) -> Result<Self> {
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) || torsion.iter().any(|&d| d < 2) {
            return param("torsion factors must be ≥ 2 and divide each other");
        }
        let mut orders = torsion.to_vec();
        orders.extend(std::iter::repeat_n(0, rank));
        let labels = (0..orders.len()).map(|i| format!("g{i}")).collect();
        Ok(FgAbelianGroup { orders, generator_labels: labels })
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn rank(&self) -> usize {
        self.orders.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> Vec<u64> {
        self.orders.iter().copied().filter(|&d| d != 0).collect()
    }

    pub fn is_invariant_form(&self) -> bool {
        let t = self.torsion();
        let torsion_first = self.orders.iter().position(|&d| d == 0).is_none_or(|i| self.orders[i..].iter().all(|&d| d == 0));
        torsion_first && t.windows(2).all(|w| w[1] % w[0] == 0) && t.iter().all(|&d| d >= 2)
    }

    /// Reduce torsion coordinates into [0, d).
    pub fn normalize(&self, w: &mut [i64]) {
        for (x, &d) in w.iter_mut().zip(&self.orders) {
            if d != 0 {
                *x = x.rem_euclid(d as i64);
            }
        }
    }

    /// Relation lattice rows d_i e_i for the torsion generators.
    pub fn relation_rows(&self) -> IntMatrix {
        let n = self.ngens();
        self.orders
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut r = vec![0; n];
                r[i] = d as i64;
                r
            })
            .collect()
    }

    pub fn format_word(&self, w: &[i64]) -> String {
        format_word(&self.generator_labels, w)
    }
}

pub fn format_word(labels: &[String], w: &[i64]) -> String {
    let parts: Vec<String> = w
        .iter()
        .zip(labels)
        .filter(|(&e, _)| e != 0)
        .map(|(&e, l)| if e == 1 { l.clone() } else { format!("{l}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

pub fn parse_word(labels: &[String], s: &str) -> Result<Vec<i64>> {
    let mut w = vec![0; labels.len()];
    let s = s.trim();
    if s == "1" || s.is_empty() {
        return Ok(w);
    }
    for part in s.split('*') {
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => (n.trim(), e.trim().parse::<i64>().map_err(|_| crate::HeckeError::Parameter(format!("bad exponent in {part}")))?),
            None => (part.trim(), 1),
        };
        let Some(i) = labels.iter().position(|l| l == name) else {
            return param(format!("unknown generator label {name}"));
        };
        w[i] += exp;
    }
    Ok(w)
}

/// An abelian group acting on {0..target_size} by per-generator permutations.
#[derive(Clone, Debug)]
pub struct FiniteActionHom {
    pub source: FgAbelianGroup,
    pub target_size: usize,
    pub images: Vec<Vec<usize>>,
}

fn perm_compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // apply a, then b
    a.iter().map(|&x| b[x]).collect()
}

fn perm_inverse(a: &[usize]) -> Vec<usize> {
    let mut r = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        r[x] = i;
    }
    r
}

impl FiniteActionHom {
    pub fn new(source: FgAbelianGroup, target_size: usize, images: Vec<Vec<usize>>) -> Result<Self> {
        if images.len() != source.ngens() {
            return param("one permutation per generator required");
        }
        for p in &images {
            let mut seen = vec![false; target_size];
            if p.len() != target_size || p.iter().any(|&x| x >= target_size || std::mem::replace(&mut seen[x], true)) {
                return param("generator image is not a permutation");
            }
        }
        for (i, a) in images.iter().enumerate() {
            for b in &images[i + 1..] {
                if perm_compose(a, b) != perm_compose(b, a) {
                    return param("generator permutations do not commute");
                }
            }
            let d = source.orders[i];
            if d != 0 {
                let mut pw: Vec<usize> = (0..target_size).collect();
                for _ in 0..d {
                    pw = perm_compose(&pw, a);
                }
                if pw.iter().enumerate().any(|(k, &x)| k != x) {
                    return param("torsion generator acts with incompatible order");
                }
            }
        }
        Ok(FiniteActionHom { source, target_size, images })
    }

    /// Image of point x under the group element with exponent vector w.
    pub fn apply(&self, w: &[i64], mut x: usize) -> usize {
        for (i, &e) in w.iter().enumerate() {
            let p = if e >= 0 { self.images[i].clone() } else { perm_inverse(&self.images[i]) };
            for _ in 0..e.unsigned_abs() {
                x = p[x];
            }
        }
        x
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerResult {
    /// Stabilizer in invariant-factor form.
    pub subgroup: FgAbelianGroup,
    /// Generator i of `subgroup` as an exponent vector over the ambient generators.
    pub generator_words: Vec<Vec<i64>>,
    /// Representatives of G / (Stab(x) · Stab(y)).
    pub coset_words: Vec<Vec<i64>>,
}

/// BFS orbit of `start` under the generators of a group acting on `points`.
/// Returns the orbit in BFS order with a word for each point.
fn orbit_words<P: Clone + Eq + std::hash::Hash>(
    start: P,
    ngens: usize,
    step: impl Fn(&P, usize) -> P,
) -> (Vec<P>, Vec<Vec<i64>>, HashMap<P, usize>) {
    let mut pts = vec![start.clone()];
    let mut words = vec![vec![0i64; ngens]];
    let mut index = HashMap::from([(start, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..ngens {
            let q = step(&pts[i], j);
            if !index.contains_key(&q) {
                index.insert(q.clone(), pts.len());
                let mut w = words[i].clone();
                w[j] += 1;
                pts.push(q);
                words.push(w);
                queue.push_back(pts.len() - 1);
            }
        }
    }
    (pts, words, index)
}

/// Presentation of the subgroup of G generated by `gens` (exponent vectors).
pub fn subgroup_presentation(g: &FgAbelianGroup, gens: &[Vec<i64>]) -> (FgAbelianGroup, Vec<Vec<i64>>) {
    let n = g.ngens();
    let m = gens.len();
    if m == 0 {
        return (FgAbelianGroup { orders: vec![], generator_labels: vec![] }, vec![]);
    }
    // kernel of Z^m -> G
    let mut stacked: IntMatrix = gens.to_vec();
    stacked.extend(g.relation_rows());
    let ker: IntMatrix = left_kernel(&stacked, n).into_iter().map(|r| r[..m].to_vec()).collect();
    let sm = smith_normal_form(&ker, m);
    let mut orders = Vec::new();
    let mut words = Vec::new();
    for i in 0..m {
        let d = sm.diag.get(i).copied().unwrap_or(0);
        if d == 1 {
            continue;
        }
        let mut w = vec![0i64; n];
        for (k, gk) in gens.iter().enumerate() {
            for c in 0..n {
                w[c] += sm.v_inv[i][k] * gk[c];
            }
        }
        g.normalize(&mut w);
        orders.push(d as u64);
        words.push(w);
    }
    let labels = (0..orders.len()).map(|i| format!("h{i}")).collect();
    (FgAbelianGroup { orders, generator_labels: labels }, words)
}

/// Stabilizer of x (and y) in G with coset representatives of G/(Stab(x)·Stab(y)).
pub fn stabilizer_and_cosets(
    g: &FgAbelianGroup,
    act: &FiniteActionHom,
    x: usize,
    y: Option<usize>,
) -> Result<StabilizerResult> {
    if x >= act.target_size || y.is_some_and(|y| y >= act.target_size) {
        return param("point outside the target set");
    }
    let n = g.ngens();
    let schreier = |start: (usize, usize)| {
        let (pts, words, index) = orbit_words(start, n, |&(a, b), j| (act.images[j][a], act.images[j][b]));
        let mut gens = Vec::new();
        for (p, w) in pts.iter().zip(&words) {
            for j in 0..n {
                let q = (act.images[j][p.0], act.images[j][p.1]);
                let wq = &words[index[&q]];
                let mut s: Vec<i64> = w.iter().zip(wq).map(|(a, b)| a - b).collect();
                s[j] += 1;
                g.normalize(&mut s);
                if s.iter().any(|&c| c != 0) && !gens.contains(&s) {
                    gens.push(s);
                }
            }
        }
        gens
    };
    let yy = y.unwrap_or(x);
    let stab_gens = schreier((x, yy));
    let (subgroup, generator_words) = subgroup_presentation(g, &stab_gens);

    // Cosets of Stab(x) + Stab(y): Stab(y)-classes on the orbit of x.
    let (pts, words, index) = orbit_words(x, n, |&a, j| act.images[j][a]);
    let sy = if y.is_some() { schreier((yy, yy)) } else { vec![] };
    let mut class = vec![usize::MAX; pts.len()];
    let mut coset_words = Vec::new();
    for i in 0..pts.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let c = coset_words.len();
        coset_words.push(words[i].clone());
        let mut stack = vec![i];
        class[i] = c;
        while let Some(k) = stack.pop() {
            for h in &sy {
                for dir in [1i64, -1] {
                    let hw: Vec<i64> = h.iter().map(|&e| e * dir).collect();
                    let img = index[&act.apply(&hw, pts[k])];
                    if class[img] == usize::MAX {
                        class[img] = c;
                        stack.push(img);
                    }
                }
            }
        }
    }
    Ok(StabilizerResult { subgroup, generator_words, coset_words })
}

/// Express the element `target` of G as Σ n_k words[k], if possible.
pub fn express_in_words(g: &FgAbelianGroup, words: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let n = g.ngens();
    let mut rows: IntMatrix = words.to_vec();
    rows.extend(g.relation_rows());
    if rows.is_empty() {
        return if target.iter().all(|&x| x == 0) { Some(vec![]) } else { None };
    }
    solve_row_combination(&rows, n, target).map(|x| x[..words.len()].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbelianGroup {
        FgAbelianGroup::new(vec![0], vec!["g".into()]).unwrap()
    }

    #[test]
    fn swap_action() {
        let act = FiniteActionHom::new(z(), 2, vec![vec![1, 0]]).unwrap();
        let r = stabilizer_and_cosets(&z(), &act, 0, Some(0)).unwrap();
        assert_eq!(r.subgroup.orders, vec![0]);
        assert_eq!(r.generator_words, vec![vec![2]]);
        assert_eq!(r.coset_words, vec![vec![0], vec![1]]);
        assert_eq!(z().format_word(&r.generator_words[0]), "g^2");
    }

    #[test]
    fn trivial_action() {
        let g = FgAbelianGroup::new(vec![2, 0], vec!["a".into(), "b".into()]).unwrap();
        let act = FiniteActionHom::new(g.clone(), 3, vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
        let r = stabilizer_and_cosets(&g, &act, 1, None).unwrap();
        assert_eq!(r.subgroup.orders, vec![2, 0]);
        assert_eq!(r.coset_words.len(), 1);
        assert!(stabilizer_and_cosets(&g, &act, 3, None).is_err());
    }

    #[test]
    fn cyclic_orbit_of_size_n() {
        let n = 4;
        let act = FiniteActionHom::new(z(), n, vec![(0..n).map(|i| (i + 1) % n).collect()]).unwrap();
        let r = stabilizer_and_cosets(&z(), &act, 0, Some(0)).unwrap();
        assert_eq!(r.coset_words, (0..n as i64).map(|i| vec![i]).collect::<Vec<_>>());
        assert_eq!(r.generator_words, vec![vec![n as i64]]);
    }

    #[test]
    fn words_round_trip() {
        let labels = vec!["w0".to_string(), "w1".to_string()];
        for w in [vec![0, 0], vec![2, -1], vec![1, 0]] {
            assert_eq!(parse_word(&labels, &format_word(&labels, &w)).unwrap(), w);
        }
        assert!(parse_word(&labels, "x^2").is_err());
    }

    #[test]
    fn invalid_actions() {
        let g = FgAbelianGroup::new(vec![2], vec!["a".into()]).unwrap();
        assert!(FiniteActionHom::new(g, 3, vec![vec![1, 2, 0]]).is_err());
        let g2 = FgAbelianGroup::new(vec![0, 0], vec!["a".into(), "b".into()]).unwrap();
        assert!(FiniteActionHom::new(g2, 3, vec![vec![1, 0, 2], vec![0, 2, 1]]).is_err());
    }
}

use crate::error::{param, Result};
use crate::field::{FieldElement, FiniteField};
use crate::zlinalg::IntMatrix;

/// Element of Z_κ as exponents over its generators, each reduced into [0, d_i).
pub type ZkElem = Vec<i64>;

/// Finite abelian group Π Z/d_i; every d_i ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZKappa {
    pub orders: Vec<u64>,
}

impl ZKappa {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.iter().any(|&d| d < 2) {
            return param("Z_kappa factors must have order at least 2");
        }
        Ok(ZKappa { orders })
    }

    pub fn ngens(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |l, &d| num_integer::lcm(l, d))
    }

    pub fn identity(&self) -> ZkElem {
        vec![0; self.ngens()]
    }

    pub fn gen(&self, i: usize) -> ZkElem {
        let mut e = self.identity();
        e[i] = 1;
        e
    }

    pub fn normalize(&self, z: &mut [i64]) {
        for (x, &d) in z.iter_mut().zip(&self.orders) {
            *x = x.rem_euclid(d as i64);
        }
    }

    pub fn normalize_copy(&self, z: &[i64]) -> ZkElem {
        let mut r = z.to_vec();
        self.normalize(&mut r);
        r
    }

    pub fn is_normalized(&self, z: &[i64]) -> bool {
        z.len() == self.ngens() && z.iter().zip(&self.orders).all(|(&x, &d)| x >= 0 && (x as u64) < d)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> ZkElem {
        let mut r: ZkElem = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.normalize(&mut r);
        r
    }

    pub fn neg(&self, a: &[i64]) -> ZkElem {
        let mut r: ZkElem = a.iter().map(|x| -x).collect();
        self.normalize(&mut r);
        r
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> ZkElem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[i64], n: i64) -> ZkElem {
        let mut r: ZkElem = a.iter().map(|x| x * n).collect();
        self.normalize(&mut r);
        r
    }

    /// Apply an automorphism matrix to a column exponent vector.
    pub fn apply(&self, a: &IntMatrix, z: &[i64]) -> ZkElem {
        let mut r: ZkElem = a.iter().map(|row| row.iter().zip(z).map(|(x, y)| x * y).sum()).collect();
        self.normalize(&mut r);
        r
    }

    /// Composition a∘b of automorphism matrices, reduced.
    pub fn compose(&self, a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
        let n = self.ngens();
        let mut cols: Vec<ZkElem> = (0..n).map(|j| self.apply(a, &(0..n).map(|i| b[i][j]).collect::<Vec<_>>())).collect();
        (0..n).map(|i| cols.iter_mut().map(|c| c[i]).collect()).collect()
    }

    pub fn identity_auto(&self) -> IntMatrix {
        crate::zlinalg::integer::identity(self.ngens())
    }

    pub fn reduce_auto(&self, a: &IntMatrix) -> IntMatrix {
        let n = self.ngens();
        (0..n).map(|i| (0..n).map(|j| a[i][j].rem_euclid(self.orders[i] as i64)).collect()).collect()
    }

    /// Whether `a` gives a well-defined endomorphism: d_j · (column j) ≡ 0.
    pub fn is_well_defined(&self, a: &IntMatrix) -> bool {
        let n = self.ngens();
        a.len() == n
            && a.iter().all(|r| r.len() == n)
            && (0..n).all(|j| (0..n).all(|i| (self.orders[j] as i64 * a[i][j]).rem_euclid(self.orders[i] as i64) == 0))
    }

    /// Inverse automorphism, found as a power of `a` (None if `a` is not bijective).
    pub fn auto_inverse(&self, a: &IntMatrix) -> Option<IntMatrix> {
        let id = self.identity_auto();
        let a = self.reduce_auto(a);
        let mut prev = id.clone();
        let mut cur = a.clone();
        for _ in 0..100_000 {
            if cur == id {
                return Some(prev);
            }
            prev = cur.clone();
            cur = self.compose(&a, &cur);
        }
        None
    }

    pub fn elements(&self) -> Vec<ZkElem> {
        let mut out = vec![self.identity()];
        for (i, &d) in self.orders.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in 0..d as i64 {
                for z in &out {
                    let mut w = z.clone();
                    w[i] = e;
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

/// Sparse element of F[Z_κ].
pub type GroupAlgebraElem = Vec<(ZkElem, FieldElement)>;

/// One generator ω of Ω(1) modulo Z_κ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaGen {
    pub label: String,
    /// None for infinite order; Some(d) means ω^d = `power` ∈ Z_κ.
    pub order: Option<u64>,
    pub power: ZkElem,
    /// Conjugation t ↦ ω t ω⁻¹ on Z_κ.
    pub auto: IntMatrix,
    /// Conjugation by ω⁻¹; derived from `auto`.
    pub auto_inv: IntMatrix,
    /// s ↦ ω s ω⁻¹ on reflection indices.
    pub perm: Vec<usize>,
    /// t(ω, s) with ω s̃ ω⁻¹ = t(ω, s) · (ω s ω⁻¹)~.
    pub corrections: Vec<ZkElem>,
    /// [ω, ω_j] = ω ω_j ω⁻¹ ω_j⁻¹ for every generator j.
    pub commutators: Vec<ZkElem>,
}

impl OmegaGen {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        zk: &ZKappa,
        label: String,
        order: Option<u64>,
        power: ZkElem,
        auto: IntMatrix,
        perm: Vec<usize>,
        corrections: Vec<ZkElem>,
        commutators: Vec<ZkElem>,
    ) -> Result<Self> {
        if !zk.is_well_defined(&auto) {
            return param(format!("automorphism of {label} is not well defined on Z_kappa"));
        }
        let auto = zk.reduce_auto(&auto);
        let Some(auto_inv) = zk.auto_inverse(&auto) else {
            return param(format!("automorphism of {label} is not invertible"));
        };
        if order == Some(0) || order == Some(1) {
            return param(format!("{label}: order must be at least 2 or infinite"));
        }
        Ok(OmegaGen { label, order, power, auto, auto_inv, perm, corrections, commutators })
    }
}

/// Generic pro-p-Iwahori data at q = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericHeckeData {
    pub field: FiniteField,
    pub s_labels: Vec<String>,
    /// m(s, t) with 0 for ∞.
    pub coxeter: Vec<Vec<u32>>,
    pub zk: ZKappa,
    /// Conjugation by s̃ on Z_κ.
    pub lift_conj: Vec<IntMatrix>,
    /// c_{s̃} ∈ F[Z_κ].
    pub c_param: Vec<GroupAlgebraElem>,
    pub omega: Vec<OmegaGen>,
}

impl GenericHeckeData {
    pub fn nrefl(&self) -> usize {
        self.s_labels.len()
    }

    pub fn nomega(&self) -> usize {
        self.omega.len()
    }

    pub fn omega_labels(&self) -> Vec<String> {
        self.omega.iter().map(|o| o.label.clone()).collect()
    }

    pub fn refl_index(&self, label: &str) -> Result<usize> {
        match self.s_labels.iter().position(|l| l == label) {
            Some(i) => Ok(i),
            None => param(format!("unknown reflection {label}")),
        }
    }

    /// Sorted index list from labels.
    pub fn refl_indices(&self, labels: &[String]) -> Result<Vec<usize>> {
        let mut out = labels.iter().map(|l| self.refl_index(l)).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn refl_labels(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.s_labels[i].clone()).collect()
    }

    /// Ω as an abstract abelian group on the ω generators.
    pub fn omega_group(&self) -> crate::zlinalg::FgAbelianGroup {
        crate::zlinalg::FgAbelianGroup {
            orders: self.omega.iter().map(|o| o.order.unwrap_or(0)).collect(),
            generator_labels: self.omega_labels(),
        }
    }
}

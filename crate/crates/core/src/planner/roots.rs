use serde::{Deserialize, Serialize};

use crate::coxeter::{is_finite_parabolic, INFINITY};
use crate::error::{param, Result};

/// Simple roots with Cartan matrix `cartan[i][j] = ⟨α_i, α_j∨⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemData {
    pub delta: Vec<String>,
    pub cartan: Vec<Vec<i64>>,
}

impl RootSystemData {
    /// Validates a Cartan matrix of finite type. Roots are labelled `a1..an`.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        if cartan.iter().any(|r| r.len() != n) {
            return param("Cartan matrix must be square");
        }
        let mut coxeter = vec![vec![1u32; n]; n];
        for i in 0..n {
            if cartan[i][i] != 2 {
                return param(format!("Cartan diagonal entry {i} is {}, expected 2", cartan[i][i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (a, b) = (cartan[i][j], cartan[j][i]);
                if a > 0 {
                    return param(format!("Cartan entry ({i}, {j}) is positive"));
                }
                if (a == 0) != (b == 0) {
                    return param(format!("Cartan entries ({i}, {j}) and ({j}, {i}) must vanish together"));
                }
                coxeter[i][j] = match a * b {
                    0 => 2,
                    1 => 3,
                    2 => 4,
                    3 => 6,
                    _ => INFINITY,
                };
            }
        }
        let all: Vec<usize> = (0..n).collect();
        if !is_finite_parabolic(&coxeter, &all)? {
            return param("Cartan matrix is not of finite type");
        }
        Ok(RootSystemData { delta: (1..=n).map(|i| format!("a{i}")).collect(), cartan })
    }

    /// Parses `A3`, `A_3`, `B2`, ..., `G2`, `F4`, `E6`..`E8` (Bourbaki numbering).
    pub fn from_type(spec: &str) -> Result<Self> {
        let s = spec.trim().replace('_', "");
        let mut chars = s.chars();
        let kind = chars.next().map(|c| c.to_ascii_uppercase());
        let Ok(n) = chars.as_str().parse::<usize>() else {
            return param(format!("unrecognised root system type {spec:?}"));
        };
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, a: i64, b: i64| {
            c[i][j] = a;
            c[j][i] = b;
        };
        match (kind, n) {
            (Some('A'), n) if n >= 1 => (1..n).for_each(|i| link(i - 1, i, -1, -1)),
            (Some('B'), n) if n >= 2 => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            (Some('C'), n) if n >= 2 => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            (Some('D'), n) if n >= 4 => {
                (1..n - 1).for_each(|i| link(i - 1, i, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            (Some('G'), 2) => link(0, 1, -1, -3),
            (Some('F'), 4) => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            (Some('E'), 6..=8) => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (3..n).for_each(|i| link(i - 1, i, -1, -1));
            }
            _ => return param(format!("unrecognised root system type {spec:?}")),
        }
        Self::from_cartan(c)
    }

    pub fn rank(&self) -> usize {
        self.delta.len()
    }

    /// ⟨α_i, α_j∨⟩.
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }
}

use super::data::{GenericHeckeData, OmegaGen, ZKappa};
use crate::coxeter::INFINITY;
use crate::error::{param, Result};
use crate::field::{make_field_seeded, prime_power, DEFAULT_SEED};

/// Data of GL_n over a local field with residue field of size q.
pub fn build_gl_n(n: usize, q: u64) -> Result<GenericHeckeData> {
    build_gl_n_seeded(n, q, DEFAULT_SEED)
}

pub fn build_gl_n_seeded(n: usize, q: u64, seed: u64) -> Result<GenericHeckeData> {
    if n < 2 {
        return param("n must be at least 2");
    }
    let Some((p, _)) = prime_power(q) else {
        return param(format!("q = {q} is not a prime power"));
    };
    let field = make_field_seeded(p, q - 1, seed)?;
    let d = q - 1;
    let zk = ZKappa::new(if d == 1 { vec![] } else { vec![d; n] })?;
    let ng = zk.ngens();

    let coxeter = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        1
                    } else if n == 2 {
                        INFINITY
                    } else if (i + 1) % n == j || (j + 1) % n == i {
                        3
                    } else {
                        2
                    }
                })
                .collect()
        })
        .collect();

    // s_i swaps coordinates i and i+1 (mod n)
    let lift_conj = (0..n)
        .map(|i| {
            let a = i;
            let b = (i + 1) % n;
            (0..ng)
                .map(|r| {
                    (0..ng)
                        .map(|c| {
                            let src = if r == a { b } else if r == b { a } else { r };
                            i64::from(c == src)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    // c_{s_i} = Σ_t T_{ν_i(t) ν_{i+1}(t)^{-1}}
    let c_param = (0..n)
        .map(|i| {
            (0..d as i64)
                .map(|a| {
                    let mut z = zk.identity();
                    if ng > 0 {
                        z[i] = a;
                        z[(i + 1) % n] = -a;
                        zk.normalize(&mut z);
                    }
                    (z, field.one())
                })
                .collect()
        })
        .collect();

    // (ω t ω⁻¹)_{j+1} = t_j
    let shift = (0..ng).map(|r| (0..ng).map(|c| i64::from((c + 1) % n == r)).collect()).collect();
    let omega = OmegaGen::new(
        &zk,
        "w".to_string(),
        None,
        zk.identity(),
        shift,
        (0..n).map(|i| (i + 1) % n).collect(),
        vec![zk.identity(); n],
        vec![zk.identity()],
    )?;

    Ok(GenericHeckeData {
        field,
        s_labels: (0..n).map(|i| format!("s{i}")).collect(),
        coxeter,
        zk,
        lift_conj,
        c_param,
        omega: vec![omega],
    })
}

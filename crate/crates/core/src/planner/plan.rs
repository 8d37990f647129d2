use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::roots::RootSystemData;
use crate::error::{param, Result};

/// A simple module I(P, σ, Q) described by subsets of simple-root indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleModuleTriple {
    pub p_set: BTreeSet<usize>,
    pub sigma_tag: String,
    pub delta_sigma: BTreeSet<usize>,
    pub q_set: BTreeSet<usize>,
    #[serde(default = "yes")]
    pub supersingular: bool,
}

fn yes() -> bool {
    true
}

impl SimpleModuleTriple {
    pub fn validate(&self, root: &RootSystemData) -> Result<()> {
        let n = root.rank();
        for (name, set) in [("p_set", &self.p_set), ("delta_sigma", &self.delta_sigma), ("q_set", &self.q_set)] {
            if let Some(&i) = set.iter().find(|&&i| i >= n) {
                return param(format!("{name} contains index {i} outside a rank {n} root system"));
            }
        }
        if !self.p_set.is_subset(&self.q_set) {
            return param("Δ_P ⊄ Δ_Q");
        }
        if !self.q_set.is_subset(&self.delta_sigma) {
            return param("Δ_Q ⊄ Δ(σ)");
        }
        for &a in self.delta_sigma.difference(&self.p_set) {
            if let Some(&b) = self.p_set.iter().find(|&&b| root.pairing(b, a) != 0) {
                return param(format!("⟨α_{b}, α_{a}∨⟩ ≠ 0 for α_{a} ∈ Δ(σ) ∖ Δ_P"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome")]
pub enum Outcome {
    Zero { reason: String },
    /// Ext reduces to Hom between supersingular modules over `ambient`.
    HomCase { ambient: Vec<usize> },
    SupersingularTarget { ambient: Vec<usize>, degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub condition: String,
    pub verdict: bool,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPlan {
    #[serde(flatten)]
    pub outcome: Outcome,
    pub trace: Vec<TraceEntry>,
}

pub fn sym_diff_degree(q1: &BTreeSet<usize>, q2: &BTreeSet<usize>) -> usize {
    q1.symmetric_difference(q2).count()
}

fn fmt_set(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Reduces Ext^i(I(P₁,σ₁,Q₁), I(P₂,σ₂,Q₂)) step by step.
pub fn reduce_simple_ext(
    root: &RootSystemData,
    t1: &SimpleModuleTriple,
    t2: &SimpleModuleTriple,
    i: usize,
) -> Result<ReductionPlan> {
    t1.validate(root)?;
    t2.validate(root)?;
    let mut trace = Vec::new();
    let mut step = |condition: String, verdict: bool, anchor: &str| {
        trace.push(TraceEntry { condition, verdict, anchor: anchor.to_string() });
        verdict
    };

    let same_p = step(
        format!("Δ_P₁ = Δ_P₂ ({} vs {})", fmt_set(&t1.p_set), fmt_set(&t2.p_set)),
        t1.p_set == t2.p_set,
        "central character vanishing",
    );
    if !same_p {
        return Ok(ReductionPlan { outcome: Outcome::Zero { reason: "central character".into() }, trace });
    }

    let q1_union: BTreeSet<usize> = t1.q_set.union(&t2.delta_sigma).copied().collect();
    let induction_ok = step(
        "Δ_Q₂ ⊆ Δ(σ₁) and Δ(σ₁) ⊆ Δ_Q₁ ∪ Δ(σ₂)".into(),
        t2.q_set.is_subset(&t1.delta_sigma) && t1.delta_sigma.is_subset(&q1_union),
        "parabolic induction reduction",
    );
    if !induction_ok {
        return Ok(ReductionPlan { outcome: Outcome::Zero { reason: "parabolic induction conditions".into() }, trace });
    }

    let ambient: BTreeSet<usize> = t1.delta_sigma.intersection(&t2.delta_sigma).copied().collect();
    let q1: BTreeSet<usize> = t1.q_set.intersection(&t2.delta_sigma).copied().collect();
    let r = sym_diff_degree(&q1, &t2.q_set);
    step(
        format!(
            "Δ′ = {}, Q′₁ = {}, Q′₂ = {}, r = {r}; P(σᵢ) taken to be all of Δ′",
            fmt_set(&ambient),
            fmt_set(&q1),
            fmt_set(&t2.q_set)
        ),
        true,
        "Steinberg degree shift",
    );

    let ambient_vec: Vec<usize> = ambient.into_iter().collect();
    let outcome = match i.checked_sub(r) {
        None => Outcome::Zero { reason: "negative degree".into() },
        Some(0) => Outcome::HomCase { ambient: ambient_vec },
        Some(d) => Outcome::SupersingularTarget { ambient: ambient_vec, degree: d },
    };
    step(format!("i − r = {} − {r} ≥ 0", i), i >= r, "degree after shift");
    Ok(ReductionPlan { outcome, trace })
}

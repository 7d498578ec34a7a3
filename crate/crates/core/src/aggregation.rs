//! Weighted aggregation of PFNs and the aggregated decision value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::par::{self, Execution};
use crate::pfn::{ln_one_minus_sq, Pfn};
use crate::soft_set::{PfParameter, PhiSoftSet};

/// Weights must sum to one within this tolerance.
pub const WEIGHT_SUM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AggregationError {
    #[error("{values} values but {weights} weights")]
    LengthMismatch { values: usize, weights: usize },
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
    #[error("every parameter importance has expectation score 0; weights are undefined")]
    DegenerateWeights,
    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),
}

/// Normalized weights, each in `[0,1]`, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self, AggregationError> {
        if weights.is_empty() {
            return Err(AggregationError::InvalidWeights("empty".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(0.0..=1.0).contains(*w)) {
            return Err(AggregationError::InvalidWeights(format!("{w} outside [0,1]")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_EPS {
            return Err(AggregationError::InvalidWeights(format!("sum is {sum}")));
        }
        Ok(WeightVector(weights))
    }

    pub fn uniform(k: usize) -> Result<Self, AggregationError> {
        WeightVector::new(vec![1.0 / k as f64; k])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<f64>::deserialize(d)?;
        WeightVector::new(raw).map_err(serde::de::Error::custom)
    }
}

/// `ω_ℓ = ES(f_ℓ) / Σ_j ES(f_j)` over the parameters' importances.
pub fn weights_from_importances(params: &[PfParameter]) -> Result<WeightVector, AggregationError> {
    let scores: Vec<f64> = params
        .iter()
        .map(|p| p.importance().expectation_score())
        .collect();
    let total: f64 = scores.iter().sum();
    if total <= 0.0 {
        return Err(AggregationError::DegenerateWeights);
    }
    WeightVector::new(scores.into_iter().map(|s| s / total).collect())
}

fn check_lengths(values: &[Pfn], w: &WeightVector) -> Result<(), AggregationError> {
    if values.len() != w.len() {
        return Err(AggregationError::LengthMismatch { values: values.len(), weights: w.len() });
    }
    Ok(())
}

/// Componentwise weighted mean `(Σ ω_i m_i, Σ ω_i n_i)`.
pub fn pfwa_linear(values: &[Pfn], w: &WeightVector) -> Result<Pfn, AggregationError> {
    check_lengths(values, w)?;
    let (m, n) = values
        .iter()
        .zip(w.as_slice())
        .fold((0.0, 0.0), |(m, n), (v, &wi)| (m + wi * v.m(), n + wi * v.n()));
    Ok(Pfn::raw(m.clamp(0.0, 1.0), n.clamp(0.0, 1.0)))
}

/// `(√(1 − Π(1 − m_i²)^{ω_i}), Π n_i^{ω_i})`, the closed form of
/// `ω₁π₁ +_P ω₂π₂ +_P ⋯`.
///
/// Zero weights drop their term. The membership product is summed in log
/// space, so `m_i = 1` with positive weight yields `m = 1`.
pub fn pfwa_geometric(values: &[Pfn], w: &WeightVector) -> Result<Pfn, AggregationError> {
    check_lengths(values, w)?;
    let mut log_rest = 0.0;
    let mut n = 1.0;
    for (v, &wi) in values.iter().zip(w.as_slice()) {
        if wi == 0.0 {
            continue;
        }
        log_rest += wi * ln_one_minus_sq(v.m());
        n *= v.n().powf(wi);
    }
    let m = (-log_rest.exp_m1()).clamp(0.0, 1.0).sqrt();
    Ok(Pfn::raw(m, n.clamp(0.0, 1.0)))
}

/// Which PFWA operator to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregator {
    #[default]
    Geometric,
    Linear,
}

impl Aggregator {
    pub fn apply(self, values: &[Pfn], w: &WeightVector) -> Result<Pfn, AggregationError> {
        match self {
            Aggregator::Geometric => pfwa_geometric(values, w),
            Aggregator::Linear => pfwa_linear(values, w),
        }
    }
}

/// Aggregated decision value of one alternative: the geometric PFWA of its
/// row, weighted by the normalized expectation scores of the importances.
pub fn apfdv(set: &PhiSoftSet, alt: &str) -> Result<Pfn, AggregationError> {
    let w = weights_from_importances(set.parameters())?;
    let row = set
        .row(alt)
        .ok_or_else(|| AggregationError::UnknownAlternative(alt.to_string()))?;
    pfwa_geometric(row, &w)
}

/// Decision values of every alternative, in universe order.
pub fn apfdv_all(
    set: &PhiSoftSet,
    w: &WeightVector,
    aggregator: Aggregator,
    exec: Execution,
) -> Result<Vec<Pfn>, AggregationError> {
    par::map_indexed(exec, set.universe().len(), |i| aggregator.apply(set.row_at(i), w))
        .into_iter()
        .collect()
}

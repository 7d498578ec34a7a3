//! The two-expert decision procedure: combine, aggregate, rank.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aggregation::{apfdv_all, weights_from_importances, AggregationError, Aggregator, WeightVector};
use crate::par::Execution;
use crate::pfn::{OrderKind, Pfn};
use crate::soft_set::{AlternativeId, PhiSoftSet, SetError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecisionError {
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Aggregation(#[from] AggregationError),
}

/// How the two expert sets are merged before aggregation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Combine {
    #[default]
    ExtendedIntersection,
    ExtendedUnion,
    RestrictedUnion,
    RestrictedIntersection,
}

impl Combine {
    pub fn apply(self, a: &PhiSoftSet, b: &PhiSoftSet) -> Result<PhiSoftSet, SetError> {
        match self {
            Combine::ExtendedIntersection => a.extended_intersection(b),
            Combine::ExtendedUnion => a.extended_union(b),
            Combine::RestrictedUnion => a.restricted_union(b),
            Combine::RestrictedIntersection => a.restricted_intersection(b),
        }
    }
}

/// The total orders usable for ranking.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankingOrder {
    #[default]
    EsThenMembership,
    MembershipThenEs,
    ScoreAccuracy,
}

impl RankingOrder {
    pub fn order_kind(self) -> OrderKind {
        match self {
            RankingOrder::EsThenMembership => OrderKind::ESThenMembership,
            RankingOrder::MembershipThenEs => OrderKind::MembershipThenES,
            RankingOrder::ScoreAccuracy => OrderKind::ScoreAccuracy,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecisionConfig {
    pub combine: Combine,
    pub aggregator: Aggregator,
    pub ranking_order: RankingOrder,
}

/// One row of the measures table.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternativeMeasures {
    pub alt: AlternativeId,
    pub apfdv: Pfn,
    pub es: f64,
    pub sf: f64,
    pub af: f64,
    /// 1 is the optimal alternative.
    pub rank: usize,
}

#[derive(Debug, Clone)]
pub struct DecisionReport {
    pub config: DecisionConfig,
    /// The combined set, or the single input set.
    pub combined: PhiSoftSet,
    pub weights: WeightVector,
    /// In universe order of `combined`.
    pub rows: Vec<AlternativeMeasures>,
    /// Alternatives from best to worst.
    pub ranking: Vec<AlternativeId>,
}

impl DecisionReport {
    pub fn optimal(&self) -> &AlternativeId {
        &self.ranking[0]
    }

    pub fn row(&self, alt: &str) -> Option<&AlternativeMeasures> {
        self.rows.iter().find(|r| r.alt.as_str() == alt)
    }
}

/// `p4 > p3 > p1 > p2`.
pub struct RankingLine<'a>(pub &'a [AlternativeId]);

impl fmt::Display for RankingLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, alt) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            f.write_str(alt.as_str())?;
        }
        Ok(())
    }
}

/// Descending under `order`; exact ties go to the larger membership, then to
/// the lexicographically smaller id.
pub fn rank_descending(alts: &[AlternativeId], values: &[Pfn], order: RankingOrder) -> Vec<usize> {
    let kind = order.order_kind();
    let mut idx: Vec<usize> = (0..alts.len()).collect();
    idx.sort_by(|&i, &j| {
        let primary = values[j]
            .compare(&values[i], kind)
            .to_ordering()
            .unwrap_or(Ordering::Equal);
        primary
            .then_with(|| values[j].m().total_cmp(&values[i].m()))
            .then_with(|| alts[i].cmp(&alts[j]))
    });
    idx
}

/// Full procedure over two expert sets.
pub fn decide(a: &PhiSoftSet, b: &PhiSoftSet, cfg: DecisionConfig) -> Result<DecisionReport, DecisionError> {
    decide_with(a, b, cfg, Execution::default())
}

pub fn decide_with(
    a: &PhiSoftSet,
    b: &PhiSoftSet,
    cfg: DecisionConfig,
    exec: Execution,
) -> Result<DecisionReport, DecisionError> {
    let combined = cfg.combine.apply(a, b)?;
    evaluate(combined, cfg, exec)
}

/// Aggregation and ranking of a single set, skipping the combination step.
pub fn decide_single(a: &PhiSoftSet, cfg: DecisionConfig) -> Result<DecisionReport, DecisionError> {
    decide_single_with(a, cfg, Execution::default())
}

pub fn decide_single_with(a: &PhiSoftSet, cfg: DecisionConfig, exec: Execution) -> Result<DecisionReport, DecisionError> {
    evaluate(a.clone(), cfg, exec)
}

fn evaluate(combined: PhiSoftSet, config: DecisionConfig, exec: Execution) -> Result<DecisionReport, DecisionError> {
    let weights = weights_from_importances(combined.parameters())?;
    let values = apfdv_all(&combined, &weights, config.aggregator, exec)?;
    let alts = combined.universe();
    let order = rank_descending(alts, &values, config.ranking_order);

    let mut ranks = vec![0; alts.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = pos + 1;
    }
    let rows = alts
        .iter()
        .zip(&values)
        .zip(&ranks)
        .map(|((alt, v), &rank)| AlternativeMeasures {
            alt: alt.clone(),
            apfdv: *v,
            es: v.expectation_score(),
            sf: v.score(),
            af: v.accuracy(),
            rank,
        })
        .collect();
    let ranking = order.iter().map(|&i| alts[i].clone()).collect();

    Ok(DecisionReport { config, combined, weights, rows, ranking })
}

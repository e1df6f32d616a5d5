//! Link prediction: rank the ground-truth entity among all candidate
//! substitutions, raw and filtered.
//!
//! For a test triple, every candidate entity takes a turn in the probed
//! slot and the candidates are ordered by ascending score. The raw rank
//! counts all competitors; the filtered rank removes competitors whose
//! substituted triple is itself a known fact in any split. Ties are broken
//! pessimistically: tied non-truth candidates precede the ground truth.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::data::{EntityId, RelationCategory, RelationId, Triple, TripleSet};
use crate::embed::EmbeddingTable;
use crate::model::{score, NormKind};
use crate::Result;

/// Which slot of the triple is being predicted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Head,
    Tail,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Head, Side::Tail];
}

/// Rank of one test triple on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankResult {
    pub triple: Triple,
    pub side: Side,
    pub raw_rank: usize,
    pub filtered_rank: usize,
}

impl RankResult {
    pub fn hit_at(&self, k: usize, filtered: bool) -> bool {
        let rank = if filtered {
            self.filtered_rank
        } else {
            self.raw_rank
        };
        rank <= k
    }
}

/// Everything needed to rank triples: tables, norm, the candidate pool
/// (entities appearing in the training set, ascending), and the union of
/// all known facts for filtering.
pub struct RankContext<'a> {
    pub entities: &'a EmbeddingTable,
    pub relations: &'a EmbeddingTable,
    pub norm: NormKind,
    pub candidates: &'a [EntityId],
    pub filter: &'a TripleSet,
}

impl RankContext<'_> {
    fn substituted(&self, triple: Triple, side: Side, entity: EntityId) -> Triple {
        match side {
            Side::Head => Triple::new(entity, triple.relation, triple.tail),
            Side::Tail => Triple::new(triple.head, triple.relation, entity),
        }
    }

    fn score_of(&self, triple: Triple) -> Result<f64> {
        score(
            self.entities.row(triple.head),
            self.relations.row(triple.relation),
            self.entities.row(triple.tail),
            self.norm,
        )
    }
}

/// Rank the ground truth of `triple` in slot `side` against every
/// candidate (the truth itself is always scored, whether or not it is in
/// the candidate pool).
pub fn rank_triple(ctx: &RankContext<'_>, triple: Triple, side: Side) -> Result<RankResult> {
    let truth = match side {
        Side::Head => triple.head,
        Side::Tail => triple.tail,
    };
    let truth_score = ctx.score_of(triple)?;
    let mut raw_rank = 1usize;
    let mut filtered_rank = 1usize;
    for &candidate in ctx.candidates {
        if candidate == truth {
            continue;
        }
        let contender = ctx.substituted(triple, side, candidate);
        let s = ctx.score_of(contender)?;
        // Strictly better, or tied (ties count against the truth).
        if s <= truth_score {
            raw_rank += 1;
            if !ctx.filter.contains(contender) {
                filtered_rank += 1;
            }
        }
    }
    Ok(RankResult {
        triple,
        side,
        raw_rank,
        filtered_rank,
    })
}

/// Rank every test triple on both sides. Triples are processed in
/// parallel; results come back in deterministic order (head then tail per
/// triple, in test order).
pub fn rank_all(ctx: &RankContext<'_>, test: &TripleSet) -> Result<Vec<RankResult>> {
    let per_triple: Vec<Result<[RankResult; 2]>> = test
        .triples()
        .par_iter()
        .map(|&t| {
            Ok([
                rank_triple(ctx, t, Side::Head)?,
                rank_triple(ctx, t, Side::Tail)?,
            ])
        })
        .collect();
    let mut results = Vec::with_capacity(2 * test.len());
    for pair in per_triple {
        results.extend(pair?);
    }
    Ok(results)
}

/// Aggregate link prediction metrics over a set of rank results.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkPredMetrics {
    pub queries: usize,
    pub mean_rank_raw: f64,
    pub mean_rank_filtered: f64,
    pub hits10_raw: f64,
    pub hits10_filtered: f64,
}

impl LinkPredMetrics {
    pub fn from_results(results: &[RankResult]) -> Self {
        let n = results.len();
        if n == 0 {
            return LinkPredMetrics {
                queries: 0,
                mean_rank_raw: 0.0,
                mean_rank_filtered: 0.0,
                hits10_raw: 0.0,
                hits10_filtered: 0.0,
            };
        }
        let sum_raw: usize = results.iter().map(|r| r.raw_rank).sum();
        let sum_filtered: usize = results.iter().map(|r| r.filtered_rank).sum();
        let hits_raw = results.iter().filter(|r| r.hit_at(10, false)).count();
        let hits_filtered = results.iter().filter(|r| r.hit_at(10, true)).count();
        LinkPredMetrics {
            queries: n,
            mean_rank_raw: sum_raw as f64 / n as f64,
            mean_rank_filtered: sum_filtered as f64 / n as f64,
            hits10_raw: hits_raw as f64 / n as f64,
            hits10_filtered: hits_filtered as f64 / n as f64,
        }
    }
}

/// Evaluate link prediction on `test`: both sides per triple, averaged
/// over `2 * |test|` queries.
pub fn link_prediction_eval(
    ctx: &RankContext<'_>,
    test: &TripleSet,
) -> Result<(LinkPredMetrics, Vec<RankResult>)> {
    let results = rank_all(ctx, test)?;
    let metrics = LinkPredMetrics::from_results(&results);
    Ok((metrics, results))
}

/// Filtered Hits@10 tallies for one (side, category) cell.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CategoryCell {
    pub queries: usize,
    pub hits10_filtered: usize,
}

impl CategoryCell {
    pub fn fraction(&self) -> Option<f64> {
        if self.queries == 0 {
            None
        } else {
            Some(self.hits10_filtered as f64 / self.queries as f64)
        }
    }
}

/// Filtered Hits@10 broken down by relation mapping category, separately
/// for head and tail prediction. Queries whose relation has no category
/// (no training facts) are tallied under `uncategorized`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CategoryBreakdown {
    pub head: BTreeMap<RelationCategory, CategoryCell>,
    pub tail: BTreeMap<RelationCategory, CategoryCell>,
    pub uncategorized: CategoryCell,
}

impl CategoryBreakdown {
    pub fn from_results(
        results: &[RankResult],
        categories: &BTreeMap<RelationId, RelationCategory>,
    ) -> Self {
        let mut breakdown = CategoryBreakdown::default();
        for cat in RelationCategory::ALL {
            breakdown.head.insert(cat, CategoryCell::default());
            breakdown.tail.insert(cat, CategoryCell::default());
        }
        for r in results {
            let cell = match categories.get(&r.triple.relation) {
                Some(cat) => match r.side {
                    Side::Head => breakdown.head.get_mut(cat).unwrap(),
                    Side::Tail => breakdown.tail.get_mut(cat).unwrap(),
                },
                None => &mut breakdown.uncategorized,
            };
            cell.queries += 1;
            if r.hit_at(10, true) {
                cell.hits10_filtered += 1;
            }
        }
        breakdown
    }

    /// Total queries across the categorized cells.
    pub fn categorized_queries(&self) -> usize {
        self.head.values().map(|c| c.queries).sum::<usize>()
            + self.tail.values().map(|c| c.queries).sum::<usize>()
    }
}

//! The embedding objective: scoring function, pull and push losses, and
//! their (sub)gradients.
//!
//! A triple `(h, r, t)` is scored by the residual norm `||h + r - t||`;
//! lower means more plausible. Training combines two terms:
//!
//! * pull — for a pair of true triples sharing a relation,
//!   `||h - h⁺|| + ||t - t⁺||` draws the co-occurring entities together;
//! * push — the hinge `max(0, γ + f(h,r,t) - f(h⁻,r,t⁻))` forces a
//!   corrupted triple to score at least `γ` worse than the true one.
//!
//! The total objective is `μ·pull + (1-μ)·push`. Subgradients at the L1
//! and hinge kinks are taken to be zero, which keeps training
//! deterministic.

use std::fmt;
use std::str::FromStr;

use crate::data::Triple;
use crate::embed::{EmbeddingTable, TableKind};
use crate::{Error, Result};

/// Distance metric for a residual vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L1,
    L2,
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::L1 => f.write_str("l1"),
            NormKind::L2 => f.write_str("l2"),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" | "L1" => Ok(NormKind::L1),
            "l2" | "L2" => Ok(NormKind::L2),
            other => Err(Error::InvalidConfig(format!(
                "norm must be `l1` or `l2`, got `{other}`"
            ))),
        }
    }
}

/// Loss-shape parameters shared by training and evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub pull_norm: NormKind,
    pub push_norm: NormKind,
    /// Margin γ of the push hinge.
    pub gamma: f64,
    /// Trade-off μ between pull and push, in `[0, 1]`.
    pub mu: f64,
}

impl Default for ModelConfig {
    /// L2 for pull and L1 for push measure the two distances best on the
    /// benchmark datasets, so they are the defaults.
    fn default() -> Self {
        ModelConfig {
            pull_norm: NormKind::L2,
            push_norm: NormKind::L1,
            gamma: 1.0,
            mu: 0.6,
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.gamma.is_nan() || self.gamma < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "gamma must be nonnegative, got {}",
                self.gamma
            )));
        }
        if !(0.0..=1.0).contains(&self.mu) {
            return Err(Error::InvalidConfig(format!(
                "mu must lie in [0, 1], got {}",
                self.mu
            )));
        }
        Ok(())
    }
}

fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(())
}

fn norm_of(residual: &[f64], norm: NormKind) -> f64 {
    match norm {
        NormKind::L1 => residual.iter().map(|x| x.abs()).sum(),
        NormKind::L2 => residual.iter().map(|x| x * x).sum::<f64>().sqrt(),
    }
}

/// Sign with `sign(0) = 0`. (`f64::signum` maps 0.0 to 1.0, which is not
/// the subgradient convention used here.)
fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Subgradient of `||x||` evaluated at `residual`. The zero residual maps
/// to the zero vector under both norms.
fn norm_subgradient(residual: &[f64], norm: NormKind) -> Vec<f64> {
    match norm {
        NormKind::L1 => residual.iter().map(|&x| sign(x)).collect(),
        NormKind::L2 => {
            let n = norm_of(residual, NormKind::L2);
            if n == 0.0 {
                vec![0.0; residual.len()]
            } else {
                residual.iter().map(|&x| x / n).collect()
            }
        }
    }
}

/// Score `f_r(h, t) = ||h + r - t||`. Lower is more plausible.
pub fn score(h: &[f64], r: &[f64], t: &[f64], norm: NormKind) -> Result<f64> {
    check_dims(h, r)?;
    check_dims(h, t)?;
    let mut acc = 0.0;
    match norm {
        NormKind::L1 => {
            for i in 0..h.len() {
                acc += (h[i] + r[i] - t[i]).abs();
            }
        }
        NormKind::L2 => {
            for i in 0..h.len() {
                let x = h[i] + r[i] - t[i];
                acc += x * x;
            }
            acc = acc.sqrt();
        }
    }
    Ok(acc)
}

/// Pull loss `||h - h⁺|| + ||t - t⁺||` for two positive triples sharing a
/// relation.
pub fn pull_loss(
    h: &[f64],
    t: &[f64],
    h_pos: &[f64],
    t_pos: &[f64],
    norm: NormKind,
) -> Result<f64> {
    check_dims(h, h_pos)?;
    check_dims(t, t_pos)?;
    check_dims(h, t)?;
    let dh: Vec<f64> = h.iter().zip(h_pos).map(|(a, b)| a - b).collect();
    let dt: Vec<f64> = t.iter().zip(t_pos).map(|(a, b)| a - b).collect();
    Ok(norm_of(&dh, norm) + norm_of(&dt, norm))
}

/// Hinge `max(0, γ + f_pos - f_neg)`.
pub fn hinge(gamma: f64, f_pos: f64, f_neg: f64) -> f64 {
    (gamma + f_pos - f_neg).max(0.0)
}

/// Push loss for a true triple and its corruption: the hinge of the two
/// scores, both computed under `norm`.
pub fn push_loss(
    h: &[f64],
    r: &[f64],
    t: &[f64],
    h_neg: &[f64],
    t_neg: &[f64],
    gamma: f64,
    norm: NormKind,
) -> Result<f64> {
    let f_pos = score(h, r, t, norm)?;
    let f_neg = score(h_neg, r, t_neg, norm)?;
    Ok(hinge(gamma, f_pos, f_neg))
}

/// Margin ranking loss of the TransE-style baseline. Identical to
/// [`push_loss`]; the baseline differs only in how the trainer samples and
/// weights updates.
pub fn transe_margin_loss(
    h: &[f64],
    r: &[f64],
    t: &[f64],
    h_neg: &[f64],
    t_neg: &[f64],
    gamma: f64,
    norm: NormKind,
) -> Result<f64> {
    push_loss(h, r, t, h_neg, t_neg, gamma, norm)
}

/// Combined objective `μ·pull_sum + (1-μ)·push_sum`.
pub fn total_loss(pull_sum: f64, push_sum: f64, mu: f64) -> f64 {
    mu * pull_sum + (1.0 - mu) * push_sum
}

/// A set of per-row gradient contributions, merged so that each
/// `(table, row)` appears at most once. Rows whose merged delta is
/// entirely zero are dropped, so a zero loss term yields an empty update.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GradientUpdate {
    entries: Vec<(TableKind, usize, Vec<f64>)>,
}

impl GradientUpdate {
    pub fn new() -> Self {
        GradientUpdate::default()
    }

    fn accumulate(&mut self, kind: TableKind, row: usize, scale: f64, delta: &[f64]) {
        if delta.iter().all(|&x| x == 0.0) {
            return;
        }
        if let Some((_, _, existing)) = self
            .entries
            .iter_mut()
            .find(|(k, r, _)| *k == kind && *r == row)
        {
            for (e, &d) in existing.iter_mut().zip(delta) {
                *e += scale * d;
            }
        } else {
            self.entries
                .push((kind, row, delta.iter().map(|&d| scale * d).collect()));
        }
    }

    fn prune_zeros(&mut self) {
        self.entries
            .retain(|(_, _, delta)| delta.iter().any(|&x| x != 0.0));
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(TableKind, usize, Vec<f64>)] {
        &self.entries
    }

    /// Gradient for one row, if any survived merging.
    pub fn get(&self, kind: TableKind, row: usize) -> Option<&[f64]> {
        self.entries
            .iter()
            .find(|(k, r, _)| *k == kind && *r == row)
            .map(|(_, _, d)| d.as_slice())
    }

    /// One SGD step: `row -= rate * delta` for every entry.
    pub fn apply(&self, entities: &mut EmbeddingTable, relations: &mut EmbeddingTable, rate: f64) {
        for (kind, row, delta) in &self.entries {
            let target = match kind {
                TableKind::Entity => entities.row_mut(*row),
                TableKind::Relation => relations.row_mut(*row),
            };
            for (x, d) in target.iter_mut().zip(delta) {
                *x -= rate * d;
            }
        }
    }
}

/// Exact gradient of the pull loss for `triple` paired with the sampled
/// positive `positive`, with respect to all four entity rows.
///
/// An L2 term `||x - y||` contributes `(x - y)/||x - y||` to `x` (the zero
/// vector when `x = y`); an L1 term contributes componentwise signs with
/// `sign(0) = 0`. The contribution to `y` is the negation.
pub fn pull_gradients(
    triple: Triple,
    positive: Triple,
    entities: &EmbeddingTable,
    norm: NormKind,
) -> Result<GradientUpdate> {
    let h = entities.row(triple.head);
    let t = entities.row(triple.tail);
    let hp = entities.row(positive.head);
    let tp = entities.row(positive.tail);
    check_dims(h, t)?;

    let dh: Vec<f64> = h.iter().zip(hp).map(|(a, b)| a - b).collect();
    let dt: Vec<f64> = t.iter().zip(tp).map(|(a, b)| a - b).collect();
    let gh = norm_subgradient(&dh, norm);
    let gt = norm_subgradient(&dt, norm);

    let mut update = GradientUpdate::new();
    update.accumulate(TableKind::Entity, triple.head, 1.0, &gh);
    update.accumulate(TableKind::Entity, positive.head, -1.0, &gh);
    update.accumulate(TableKind::Entity, triple.tail, 1.0, &gt);
    update.accumulate(TableKind::Entity, positive.tail, -1.0, &gt);
    update.prune_zeros();
    Ok(update)
}

/// Subgradient of the push hinge for `triple` and its corruption
/// `negative` (same relation, exactly one entity slot replaced).
///
/// Outside the margin (hinge argument ≤ 0) the update is empty. Inside,
/// the positive residual `h + r - t` contributes `+∂||·||` to `h` and `r`
/// and `-∂||·||` to `t`; the negative residual contributes with opposite
/// signs, and shared rows (always `r`, plus the uncorrupted entity slot)
/// merge both contributions.
pub fn push_gradients(
    triple: Triple,
    negative: Triple,
    entities: &EmbeddingTable,
    relations: &EmbeddingTable,
    gamma: f64,
    norm: NormKind,
) -> Result<GradientUpdate> {
    let h = entities.row(triple.head);
    let t = entities.row(triple.tail);
    let r = relations.row(triple.relation);
    let hn = entities.row(negative.head);
    let tn = entities.row(negative.tail);
    check_dims(h, r)?;
    check_dims(h, t)?;

    let f_pos = score(h, r, t, norm)?;
    let f_neg = score(hn, r, tn, norm)?;
    let mut update = GradientUpdate::new();
    if gamma + f_pos - f_neg <= 0.0 {
        return Ok(update);
    }

    let pos_residual: Vec<f64> = (0..h.len()).map(|i| h[i] + r[i] - t[i]).collect();
    let neg_residual: Vec<f64> = (0..h.len()).map(|i| hn[i] + r[i] - tn[i]).collect();
    let gu = norm_subgradient(&pos_residual, norm);
    let gv = norm_subgradient(&neg_residual, norm);

    update.accumulate(TableKind::Entity, triple.head, 1.0, &gu);
    update.accumulate(TableKind::Relation, triple.relation, 1.0, &gu);
    update.accumulate(TableKind::Entity, triple.tail, -1.0, &gu);
    update.accumulate(TableKind::Entity, negative.head, -1.0, &gv);
    update.accumulate(TableKind::Relation, triple.relation, -1.0, &gv);
    update.accumulate(TableKind::Entity, negative.tail, 1.0, &gv);
    update.prune_zeros();
    Ok(update)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{seeded_rng, EmbeddingTable};
    use approx::assert_abs_diff_eq;
    use ndarray::array;
    use proptest::prelude::*;

    #[test]
    fn perfect_translation_scores_zero() {
        let h = [1.0, -2.0];
        let r = [0.5, 3.0];
        let t = [1.5, 1.0];
        assert_eq!(score(&h, &r, &t, NormKind::L1).unwrap(), 0.0);
        assert_eq!(score(&h, &r, &t, NormKind::L2).unwrap(), 0.0);
    }

    #[test]
    fn unit_residual_scores() {
        let h = [1.0, 0.0];
        let r = [0.0, 1.0];
        let t = [0.0, 0.0];
        assert_abs_diff_eq!(score(&h, &r, &t, NormKind::L1).unwrap(), 2.0);
        assert_abs_diff_eq!(
            score(&h, &r, &t, NormKind::L2).unwrap(),
            2.0f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn score_rejects_dimension_mismatch() {
        let err = score(&[1.0], &[1.0, 2.0], &[1.0], NormKind::L1).unwrap_err();
        assert!(matches!(err, Error::DimMismatch { .. }));
    }

    #[test]
    fn pull_loss_examples() {
        let z = [0.0, 0.0];
        assert_eq!(pull_loss(&z, &z, &z, &z, NormKind::L2).unwrap(), 0.0);
        let h = [1.0, 0.0];
        assert_abs_diff_eq!(pull_loss(&h, &z, &z, &z, NormKind::L2).unwrap(), 1.0);
        // Symmetric in swapping the pair.
        let a = [0.3, -0.7];
        let b = [1.1, 0.2];
        let c = [-0.4, 0.9];
        let d = [2.0, -1.0];
        for norm in [NormKind::L1, NormKind::L2] {
            assert_abs_diff_eq!(
                pull_loss(&a, &b, &c, &d, norm).unwrap(),
                pull_loss(&c, &d, &a, &b, norm).unwrap(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn hinge_examples() {
        assert_eq!(hinge(1.0, 0.5, 0.8), 0.7);
        assert_eq!(hinge(1.0, 0.0, 2.0), 0.0);
        assert_eq!(hinge(2.0, 1.0, 1.0), 2.0);
        assert_eq!(hinge(0.0, 0.3, 0.3), 0.0);
    }

    #[test]
    fn total_loss_endpoints_and_mix() {
        assert_eq!(total_loss(2.0, 5.0, 0.0), 5.0);
        assert_eq!(total_loss(2.0, 5.0, 1.0), 2.0);
        assert_abs_diff_eq!(total_loss(2.0, 5.0, 0.6), 3.2, epsilon = 1e-15);
    }

    #[test]
    fn model_config_validation() {
        let mut cfg = ModelConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.mu = 1.3;
        assert!(cfg.validate().is_err());
        cfg.mu = 0.5;
        cfg.gamma = -0.1;
        assert!(cfg.validate().is_err());
    }

    fn table_of(rows: Vec<Vec<f64>>) -> EmbeddingTable {
        let d = rows[0].len();
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        EmbeddingTable::from_rows(
            TableKind::Entity,
            ndarray::Array2::from_shape_vec((rows.len(), d), flat).unwrap(),
        )
    }

    #[test]
    fn coincident_positives_give_empty_pull_update() {
        let entities = table_of(vec![vec![0.1, 0.2], vec![0.9, -0.3]]);
        // Positive identical to the triple: both pull terms vanish.
        let t = Triple::new(0, 0, 1);
        let update = pull_gradients(t, t, &entities, NormKind::L2).unwrap();
        assert!(update.is_empty());
    }

    #[test]
    fn pull_gradient_antisymmetry() {
        let entities = table_of(vec![
            vec![0.4, -0.2],
            vec![1.0, 0.5],
            vec![-0.3, 0.8],
            vec![0.0, 0.1],
        ]);
        let triple = Triple::new(0, 0, 1);
        let positive = Triple::new(2, 0, 3);
        for norm in [NormKind::L1, NormKind::L2] {
            let update = pull_gradients(triple, positive, &entities, norm).unwrap();
            let gh = update.get(TableKind::Entity, 0).unwrap();
            let ghp = update.get(TableKind::Entity, 2).unwrap();
            for (a, b) in gh.iter().zip(ghp) {
                assert_abs_diff_eq!(*a, -*b, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn push_flat_region_gives_empty_update() {
        // f_pos = 0, f_neg large: margin satisfied.
        let entities = table_of(vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![9.0, 9.0]]);
        let relations = EmbeddingTable::from_rows(TableKind::Relation, array![[1.0, 1.0]]);
        let triple = Triple::new(0, 0, 1);
        let negative = Triple::new(0, 0, 2);
        for norm in [NormKind::L1, NormKind::L2] {
            let update =
                push_gradients(triple, negative, &entities, &relations, 1.0, norm).unwrap();
            assert!(update.is_empty());
        }
    }

    #[test]
    fn push_relation_update_is_difference_of_unit_residuals() {
        let entities = table_of(vec![vec![0.3, -0.4], vec![1.2, 0.7], vec![-0.8, 0.9]]);
        let relations = EmbeddingTable::from_rows(TableKind::Relation, array![[0.25, -0.6]]);
        let triple = Triple::new(0, 0, 1);
        let negative = Triple::new(2, 0, 1); // corrupted head
        let h = entities.row(0);
        let r = relations.row(0);
        let t = entities.row(1);
        let hn = entities.row(2);
        let pos: Vec<f64> = (0..2).map(|i| h[i] + r[i] - t[i]).collect();
        let neg: Vec<f64> = (0..2).map(|i| hn[i] + r[i] - t[i]).collect();
        let pos_n = pos.iter().map(|x| x * x).sum::<f64>().sqrt();
        let neg_n = neg.iter().map(|x| x * x).sum::<f64>().sqrt();
        // Large margin keeps the hinge active.
        let update =
            push_gradients(triple, negative, &entities, &relations, 50.0, NormKind::L2).unwrap();
        let gr = update.get(TableKind::Relation, 0).unwrap();
        for i in 0..2 {
            assert_abs_diff_eq!(gr[i], pos[i] / pos_n - neg[i] / neg_n, epsilon = 1e-12);
        }
    }

    #[test]
    fn push_merges_shared_tail_row() {
        // Head corrupted: the tail row receives contributions from both
        // residual terms and must appear exactly once.
        let entities = table_of(vec![vec![0.3, -0.4], vec![1.2, 0.7], vec![-0.8, 0.9]]);
        let relations = EmbeddingTable::from_rows(TableKind::Relation, array![[0.25, -0.6]]);
        let update = push_gradients(
            Triple::new(0, 0, 1),
            Triple::new(2, 0, 1),
            &entities,
            &relations,
            50.0,
            NormKind::L2,
        )
        .unwrap();
        let tail_entries = update
            .entries()
            .iter()
            .filter(|(k, row, _)| *k == TableKind::Entity && *row == 1)
            .count();
        assert_eq!(tail_entries, 1);
    }

    #[test]
    fn transe_margin_loss_matches_push_loss() {
        let h = [0.3, -0.4];
        let r = [0.25, -0.6];
        let t = [1.2, 0.7];
        let hn = [-0.8, 0.9];
        for norm in [NormKind::L1, NormKind::L2] {
            assert_eq!(
                transe_margin_loss(&h, &r, &t, &hn, &t, 1.0, norm).unwrap(),
                push_loss(&h, &r, &t, &hn, &t, 1.0, norm).unwrap()
            );
        }
    }

    prop_compose! {
        fn arb_vec(dim: usize)(v in prop::collection::vec(-3.0f64..3.0, dim)) -> Vec<f64> {
            v
        }
    }

    proptest! {
        #[test]
        fn scores_and_losses_are_nonnegative(
            h in arb_vec(4), r in arb_vec(4), t in arb_vec(4),
            hp in arb_vec(4), tp in arb_vec(4),
            gamma in 0.0f64..3.0,
        ) {
            for norm in [NormKind::L1, NormKind::L2] {
                prop_assert!(score(&h, &r, &t, norm).unwrap() >= 0.0);
                prop_assert!(pull_loss(&h, &t, &hp, &tp, norm).unwrap() >= 0.0);
                prop_assert!(push_loss(&h, &r, &t, &hp, &tp, gamma, norm).unwrap() >= 0.0);
            }
        }

        #[test]
        fn score_is_homogeneous_in_scale(
            h in arb_vec(4), r in arb_vec(4), t in arb_vec(4),
            c in 0.0f64..5.0,
        ) {
            for norm in [NormKind::L1, NormKind::L2] {
                let base = score(&h, &r, &t, norm).unwrap();
                let hs: Vec<f64> = h.iter().map(|x| c * x).collect();
                let rs: Vec<f64> = r.iter().map(|x| c * x).collect();
                let ts: Vec<f64> = t.iter().map(|x| c * x).collect();
                let scaled = score(&hs, &rs, &ts, norm).unwrap();
                prop_assert!((scaled - c * base).abs() < 1e-9 * (1.0 + base));
            }
        }

        #[test]
        fn score_is_translation_invariant(
            h in arb_vec(4), r in arb_vec(4), t in arb_vec(4), c in arb_vec(4),
        ) {
            for norm in [NormKind::L1, NormKind::L2] {
                let base = score(&h, &r, &t, norm).unwrap();
                let hs: Vec<f64> = h.iter().zip(&c).map(|(x, y)| x + y).collect();
                let ts: Vec<f64> = t.iter().zip(&c).map(|(x, y)| x + y).collect();
                let shifted = score(&hs, &r, &ts, norm).unwrap();
                prop_assert!((shifted - base).abs() < 1e-9 * (1.0 + base));
            }
        }

        #[test]
        fn total_loss_is_affine_in_mu(
            pull in 0.0f64..10.0, push in 0.0f64..10.0, mu in 0.0f64..1.0,
        ) {
            let at = total_loss(pull, push, mu);
            let expected = push + mu * (pull - push);
            prop_assert!((at - expected).abs() < 1e-12);
        }

        #[test]
        fn hinge_flat_region_has_zero_gradient(
            rows in prop::collection::vec(arb_vec(3), 4),
            gamma in 0.0f64..2.0,
        ) {
            let entities = table_of(rows.clone());
            let relations = EmbeddingTable::from_rows(
                TableKind::Relation,
                ndarray::Array2::from_shape_vec((1, 3), vec![0.1, -0.2, 0.3]).unwrap(),
            );
            let triple = Triple::new(0, 0, 1);
            let negative = Triple::new(2, 0, 1);
            for norm in [NormKind::L1, NormKind::L2] {
                let f_pos = score(entities.row(0), relations.row(0), entities.row(1), norm).unwrap();
                let f_neg = score(entities.row(2), relations.row(0), entities.row(1), norm).unwrap();
                if f_neg >= gamma + f_pos {
                    let update = push_gradients(
                        triple, negative, &entities, &relations, gamma, norm,
                    ).unwrap();
                    prop_assert!(update.is_empty());
                }
            }
        }
    }

    // Spot finite-difference checks live here; the full sweep over norms
    // and dimensions runs in the acceptance suite.
    fn fd_pull(
        entities: &EmbeddingTable,
        triple: Triple,
        positive: Triple,
        norm: NormKind,
        row: usize,
        comp: usize,
    ) -> f64 {
        let step = 1e-6;
        let eval = |delta: f64| {
            let mut rows = Vec::new();
            for i in 0..entities.n_rows() {
                let mut v = entities.row(i).to_vec();
                if i == row {
                    v[comp] += delta;
                }
                rows.push(v);
            }
            let perturbed = table_of(rows);
            pull_loss(
                perturbed.row(triple.head),
                perturbed.row(triple.tail),
                perturbed.row(positive.head),
                perturbed.row(positive.tail),
                norm,
            )
            .unwrap()
        };
        (eval(step) - eval(-step)) / (2.0 * step)
    }

    #[test]
    fn pull_gradient_spot_check_against_finite_differences() {
        let entities = table_of(vec![
            vec![0.4, -0.2, 0.9],
            vec![1.0, 0.5, -0.1],
            vec![-0.3, 0.8, 0.2],
            vec![0.0, 0.1, -0.7],
        ]);
        let triple = Triple::new(0, 0, 1);
        let positive = Triple::new(2, 0, 3);
        for norm in [NormKind::L1, NormKind::L2] {
            let update = pull_gradients(triple, positive, &entities, norm).unwrap();
            for row in 0..4 {
                for comp in 0..3 {
                    let fd = fd_pull(&entities, triple, positive, norm, row, comp);
                    let analytic = update
                        .get(TableKind::Entity, row)
                        .map(|g| g[comp])
                        .unwrap_or(0.0);
                    assert_abs_diff_eq!(analytic, fd, epsilon = 1e-4);
                }
            }
        }
    }

    #[test]
    fn gradient_updates_apply_descending_step() {
        let mut entities =
            EmbeddingTable::init(TableKind::Entity, 3, 4, &mut seeded_rng(11)).unwrap();
        let mut relations =
            EmbeddingTable::init(TableKind::Relation, 1, 4, &mut seeded_rng(12)).unwrap();
        let triple = Triple::new(0, 0, 1);
        let negative = Triple::new(2, 0, 1);
        let before = push_loss(
            entities.row(0),
            relations.row(0),
            entities.row(1),
            entities.row(2),
            entities.row(1),
            5.0,
            NormKind::L2,
        )
        .unwrap();
        let update =
            push_gradients(triple, negative, &entities, &relations, 5.0, NormKind::L2).unwrap();
        update.apply(&mut entities, &mut relations, 0.01);
        let after = push_loss(
            entities.row(0),
            relations.row(0),
            entities.row(1),
            entities.row(2),
            entities.row(1),
            5.0,
            NormKind::L2,
        )
        .unwrap();
        assert!(after < before, "{after} !< {before}");
    }
}

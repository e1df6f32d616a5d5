//! Seeded SGD over training triples.
//!
//! Each epoch renormalizes the entity rows, visits the training triples in
//! a freshly shuffled order, and samples one corruption per triple by
//! replacing the head or tail (coin flip) with another entity. If the
//! corruption happens to be a known fact it drives a pull update (scaled
//! `α·μ`); otherwise it drives a push update (scaled `β·(1-μ)`). Relation
//! rows are initialized once and never renormalized.
//!
//! In baseline mode the procedure degenerates to the TransE update rule:
//! corruptions are resampled until they are *not* known facts, every
//! sample takes the push branch at scale `β`, and the pull term is
//! dropped from the reported loss (as if `μ = 0`).

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::data::{Triple, TripleSet, Vocab};
use crate::embed::{seeded_rng, EmbeddingTable, TableKind, TableRng};
use crate::model::{self, ModelConfig, NormKind};
use crate::{Error, Result};

/// Guard for the relative-loss denominator once the loss reaches zero.
const LOSS_DENOM_GUARD: f64 = 1e-12;

/// Bound on corruption resampling in baseline mode before giving up.
const BASELINE_RESAMPLE_LIMIT: usize = 10_000;

/// Every knob of a training run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    /// Embedding dimension d.
    pub dim: usize,
    /// Margin γ.
    pub gamma: f64,
    /// Learning rate α for pull updates.
    pub alpha: f64,
    /// Learning rate β for push updates.
    pub beta: f64,
    /// Trade-off μ between pull and push.
    pub mu: f64,
    /// Relative-loss convergence threshold ε.
    pub epsilon: f64,
    /// Maximum number of epochs n.
    pub max_epochs: usize,
    pub seed: u64,
    pub pull_norm: NormKind,
    pub push_norm: NormKind,
    /// TransE-style baseline: negatives only, resampled until absent from
    /// the training set.
    pub baseline: bool,
}

impl Default for TrainConfig {
    fn default() -> Self {
        let model = ModelConfig::default();
        TrainConfig {
            dim: 20,
            gamma: model.gamma,
            alpha: 0.02,
            beta: 0.02,
            mu: model.mu,
            epsilon: 1e-6,
            max_epochs: 1000,
            seed: 42,
            pull_norm: model.pull_norm,
            push_norm: model.push_norm,
            baseline: false,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        self.model().validate()?;
        if self.dim == 0 {
            return Err(Error::ZeroDim);
        }
        if self.alpha.is_nan() || self.alpha <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if self.beta.is_nan() || self.beta <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "beta must be positive, got {}",
                self.beta
            )));
        }
        if self.epsilon.is_nan() || self.epsilon < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be nonnegative, got {}",
                self.epsilon
            )));
        }
        if self.max_epochs == 0 {
            return Err(Error::InvalidConfig(
                "max_epochs must be at least 1".to_owned(),
            ));
        }
        Ok(())
    }

    pub fn model(&self) -> ModelConfig {
        ModelConfig {
            pull_norm: self.pull_norm,
            push_norm: self.push_norm,
            gamma: self.gamma,
            mu: self.mu,
        }
    }
}

/// One epoch of the trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    /// 1-based epoch index.
    pub epoch: usize,
    /// Accumulated weighted loss over the epoch's samples.
    pub loss: f64,
    pub pull_updates: usize,
    pub push_updates: usize,
    pub seconds: f64,
}

impl EpochRecord {
    /// The line-per-epoch log format: epoch, loss, pull, push, seconds.
    pub fn log_line(&self) -> String {
        format!(
            "{}\t{:.6}\t{}\t{}\t{:.3}",
            self.epoch, self.loss, self.pull_updates, self.push_updates, self.seconds
        )
    }
}

/// Per-epoch records of a full run.
#[derive(Debug, Clone, Default)]
pub struct TrainTrace {
    pub epochs: Vec<EpochRecord>,
}

impl TrainTrace {
    pub fn final_loss(&self) -> Option<f64> {
        self.epochs.last().map(|e| e.loss)
    }

    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }
}

/// Whether a sampled corruption is itself a known fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleClass {
    Positive,
    Negative,
}

/// Replace the head (probability 1/2) or the tail of `triple` with an
/// entity drawn uniformly from all entities excluding the current occupant
/// of that slot. Exactly one slot differs from the input.
pub fn sample_corruption(triple: Triple, n_entities: usize, rng: &mut TableRng) -> Result<Triple> {
    if n_entities < 2 {
        return Err(Error::NotEnoughEntities);
    }
    let replace_head = rng.random_bool(0.5);
    let current = if replace_head { triple.head } else { triple.tail };
    let drawn = rng.random_range(0..n_entities - 1);
    let entity = if drawn >= current { drawn + 1 } else { drawn };
    Ok(if replace_head {
        Triple::new(entity, triple.relation, triple.tail)
    } else {
        Triple::new(triple.head, triple.relation, entity)
    })
}

/// A corruption is Positive iff it is present in the training set.
pub fn classify_sample(sample: Triple, train: &TripleSet) -> SampleClass {
    if train.contains(sample) {
        SampleClass::Positive
    } else {
        SampleClass::Negative
    }
}

/// Mutable training state: the two tables, the generator, and convergence
/// bookkeeping.
#[derive(Debug)]
pub struct Trainer {
    config: TrainConfig,
    entities: EmbeddingTable,
    relations: EmbeddingTable,
    rng: TableRng,
    next_epoch: usize,
    prev_loss: Option<f64>,
}

impl Trainer {
    /// Validate the config and initialize both tables from the seed
    /// (relations first, then entities — the draw order is part of the
    /// reproducibility contract).
    pub fn new(config: TrainConfig, n_entities: usize, n_relations: usize) -> Result<Self> {
        config.validate()?;
        let mut rng = seeded_rng(config.seed);
        let relations = EmbeddingTable::init(TableKind::Relation, n_relations, config.dim, &mut rng)?;
        let entities = EmbeddingTable::init(TableKind::Entity, n_entities, config.dim, &mut rng)?;
        Ok(Trainer {
            config,
            entities,
            relations,
            rng,
            next_epoch: 1,
            prev_loss: None,
        })
    }

    pub fn config(&self) -> &TrainConfig {
        &self.config
    }

    pub fn entities(&self) -> &EmbeddingTable {
        &self.entities
    }

    pub fn relations(&self) -> &EmbeddingTable {
        &self.relations
    }

    pub fn into_tables(self) -> (EmbeddingTable, EmbeddingTable) {
        (self.entities, self.relations)
    }

    /// Run one epoch: renormalize entities, shuffle the visit order, and
    /// apply one sampled update per training triple.
    pub fn epoch(&mut self, train: &TripleSet) -> Result<EpochRecord> {
        let started = Instant::now();
        let epoch = self.next_epoch;
        let diverged = |reason: String| Error::Diverged { epoch, reason };

        self.entities
            .normalize_rows()
            .map_err(|e| diverged(e.to_string()))?;
        if !self.relations.all_finite() {
            return Err(diverged("non-finite relation embedding".to_owned()));
        }

        let n_entities = self.entities.n_rows();
        let cfg = self.config;
        let mut order: Vec<usize> = (0..train.len()).collect();
        order.shuffle(&mut self.rng);

        let mut loss_sum = 0.0;
        let mut pull_updates = 0usize;
        let mut push_updates = 0usize;

        for idx in order {
            let triple = train.triples()[idx];
            if cfg.baseline {
                let corruption = self.sample_negative(triple, n_entities, train)?;
                loss_sum += self.push_step(triple, corruption, cfg.beta)?;
                push_updates += 1;
                continue;
            }
            let corruption = sample_corruption(triple, n_entities, &mut self.rng)?;
            match classify_sample(corruption, train) {
                SampleClass::Positive => {
                    let loss = model::pull_loss(
                        self.entities.row(triple.head),
                        self.entities.row(triple.tail),
                        self.entities.row(corruption.head),
                        self.entities.row(corruption.tail),
                        cfg.pull_norm,
                    )?;
                    loss_sum += cfg.mu * loss;
                    if loss > 0.0 && cfg.mu > 0.0 {
                        let update = model::pull_gradients(
                            triple,
                            corruption,
                            &self.entities,
                            cfg.pull_norm,
                        )?;
                        update.apply(
                            &mut self.entities,
                            &mut self.relations,
                            cfg.alpha * cfg.mu,
                        );
                    }
                    pull_updates += 1;
                }
                SampleClass::Negative => {
                    loss_sum += (1.0 - cfg.mu)
                        * self.push_step(triple, corruption, cfg.beta * (1.0 - cfg.mu))?;
                    push_updates += 1;
                }
            }
        }

        if !loss_sum.is_finite() {
            return Err(diverged(format!("epoch loss is {loss_sum}")));
        }
        self.next_epoch += 1;
        Ok(EpochRecord {
            epoch,
            loss: loss_sum,
            pull_updates,
            push_updates,
            seconds: started.elapsed().as_secs_f64(),
        })
    }

    /// Push branch: returns the unweighted hinge loss and applies the
    /// gradient at `rate` when the hinge is active.
    fn push_step(&mut self, triple: Triple, corruption: Triple, rate: f64) -> Result<f64> {
        let cfg = &self.config;
        let loss = model::push_loss(
            self.entities.row(triple.head),
            self.relations.row(triple.relation),
            self.entities.row(triple.tail),
            self.entities.row(corruption.head),
            self.entities.row(corruption.tail),
            cfg.gamma,
            cfg.push_norm,
        )?;
        if loss > 0.0 && rate > 0.0 {
            let update = model::push_gradients(
                triple,
                corruption,
                &self.entities,
                &self.relations,
                cfg.gamma,
                cfg.push_norm,
            )?;
            update.apply(&mut self.entities, &mut self.relations, rate);
        }
        Ok(loss)
    }

    fn sample_negative(
        &mut self,
        triple: Triple,
        n_entities: usize,
        train: &TripleSet,
    ) -> Result<Triple> {
        for _ in 0..BASELINE_RESAMPLE_LIMIT {
            let corruption = sample_corruption(triple, n_entities, &mut self.rng)?;
            if !train.contains(corruption) {
                return Ok(corruption);
            }
        }
        Err(Error::NoNegativeAvailable {
            head: triple.head,
            relation: triple.relation,
            tail: triple.tail,
        })
    }

    /// Relative loss change against the previous epoch; infinite before a
    /// baseline exists, so with `ε = ∞` exactly one epoch runs.
    fn relative_change(&self, loss: f64) -> f64 {
        match self.prev_loss {
            None => f64::INFINITY,
            Some(prev) => (loss - prev).abs() / prev.max(LOSS_DENOM_GUARD),
        }
    }

    /// Run epochs until the relative loss change drops to ε or the epoch
    /// budget is exhausted.
    pub fn run(&mut self, train: &TripleSet) -> Result<TrainTrace> {
        self.run_with(train, |_| {})
    }

    /// Like [`Trainer::run`], invoking `on_epoch` after every epoch (for
    /// progress logging).
    pub fn run_with(
        &mut self,
        train: &TripleSet,
        mut on_epoch: impl FnMut(&EpochRecord),
    ) -> Result<TrainTrace> {
        if train.is_empty() {
            return Err(Error::InvalidConfig(
                "training set must not be empty".to_owned(),
            ));
        }
        let mut trace = TrainTrace::default();
        loop {
            let record = self.epoch(train)?;
            on_epoch(&record);
            let rel = self.relative_change(record.loss);
            self.prev_loss = Some(record.loss);
            trace.epochs.push(record);
            if rel <= self.config.epsilon || trace.len() >= self.config.max_epochs {
                return Ok(trace);
            }
        }
    }
}

/// Outcome of [`train`]: the two tables plus the full trace.
pub struct TrainOutcome {
    pub entities: EmbeddingTable,
    pub relations: EmbeddingTable,
    pub trace: TrainTrace,
}

/// Train embeddings for `vocab` on `train` from scratch.
pub fn train(config: &TrainConfig, train: &TripleSet, vocab: &Vocab) -> Result<TrainOutcome> {
    let mut trainer = Trainer::new(*config, vocab.n_entities(), vocab.n_relations())?;
    let trace = trainer.run(train)?;
    let (entities, relations) = trainer.into_tables();
    Ok(TrainOutcome {
        entities,
        relations,
        trace,
    })
}

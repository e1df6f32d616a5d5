//! Structured evaluation reports and their plain-text renderings.
//!
//! Each report is a serializable document (the CLI writes it as JSON) plus
//! an aligned text table for standard output. Reports carry no timestamps
//! so that re-running an evaluation on the same inputs reproduces them
//! byte for byte.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::data::{RelationCategory, RelationId, TripleSet, Vocab};
use crate::eval::classify::{TcMetrics, TcThresholds};
use crate::eval::complexity::{complexity_table, ComplexityInput};
use crate::eval::ranking::{CategoryBreakdown, LinkPredMetrics};

fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit_row = |out: &mut String, cells: &[String]| {
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                out.push_str("  ");
            }
            out.push_str(cell);
            for _ in cell.len()..widths[i] {
                out.push(' ');
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    emit_row(&mut out, &header_cells);
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    emit_row(&mut out, &rule);
    for row in rows {
        emit_row(&mut out, row);
    }
    out
}

fn pct(fraction: f64) -> String {
    format!("{:.1}%", 100.0 * fraction)
}

/// Dataset statistics: vocabulary and split sizes plus the relation
/// category histogram.
#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub entities: usize,
    pub relations: usize,
    pub train_triples: usize,
    pub valid_triples: usize,
    pub test_triples: usize,
    pub categories: BTreeMap<String, usize>,
}

impl StatsReport {
    pub fn new(
        vocab: &Vocab,
        train: &TripleSet,
        valid_count: usize,
        test_count: usize,
        categories: &BTreeMap<RelationId, RelationCategory>,
    ) -> Self {
        let mut histogram: BTreeMap<String, usize> = RelationCategory::ALL
            .iter()
            .map(|c| (c.to_string(), 0))
            .collect();
        for cat in categories.values() {
            *histogram.get_mut(&cat.to_string()).unwrap() += 1;
        }
        StatsReport {
            entities: vocab.n_entities(),
            relations: vocab.n_relations(),
            train_triples: train.len(),
            valid_triples: valid_count,
            test_triples: test_count,
            categories: histogram,
        }
    }

    pub fn render(&self) -> String {
        let mut rows = vec![
            vec!["#(ENTITIES)".to_owned(), self.entities.to_string()],
            vec!["#(RELATIONS)".to_owned(), self.relations.to_string()],
            vec!["#(TRAINING EX.)".to_owned(), self.train_triples.to_string()],
            vec![
                "#(VALIDATING EX.)".to_owned(),
                self.valid_triples.to_string(),
            ],
            vec!["#(TESTING EX.)".to_owned(), self.test_triples.to_string()],
        ];
        for (cat, count) in &self.categories {
            rows.push(vec![format!("relations {cat}"), count.to_string()]);
        }
        render_table(&["STATISTIC", "VALUE"], &rows)
    }
}

/// Link prediction report: overall mean rank / Hits@10 (raw and filtered)
/// plus the per-category filtered Hits@10 grid.
#[derive(Debug, Clone, Serialize)]
pub struct LinkPredReport {
    pub dataset: String,
    pub model: String,
    pub norm: String,
    pub metrics: LinkPredMetrics,
    pub by_category: CategoryBreakdown,
}

impl LinkPredReport {
    pub fn render(&self) -> String {
        let overall = render_table(
            &[
                "MODEL",
                "MEAN RANK (Raw)",
                "MEAN RANK (Filter)",
                "HIT@10 (Raw)",
                "HIT@10 (Filter)",
            ],
            &[vec![
                self.model.clone(),
                format!("{:.1}", self.metrics.mean_rank_raw),
                format!("{:.1}", self.metrics.mean_rank_filtered),
                pct(self.metrics.hits10_raw),
                pct(self.metrics.hits10_filtered),
            ]],
        );

        let cell = |map: &BTreeMap<RelationCategory, crate::eval::ranking::CategoryCell>,
                    cat: RelationCategory| {
            map.get(&cat)
                .and_then(|c| c.fraction())
                .map(pct)
                .unwrap_or_else(|| "-".to_owned())
        };
        let mut rows = Vec::new();
        for (task, map) in [
            ("Predicting head", &self.by_category.head),
            ("Predicting tail", &self.by_category.tail),
        ] {
            rows.push(vec![
                task.to_owned(),
                cell(map, RelationCategory::OneToOne),
                cell(map, RelationCategory::OneToMany),
                cell(map, RelationCategory::ManyToOne),
                cell(map, RelationCategory::ManyToMany),
            ]);
        }
        let grid = render_table(
            &["TASK", "1-TO-1", "1-TO-M.", "M.-TO-1", "M.-TO-M."],
            &rows,
        );

        let mut out = format!(
            "Link prediction on {} ({} queries, {} norm)\n\n{overall}\nFilter Hit@10 by relation mapping:\n\n{grid}",
            self.dataset, self.metrics.queries, self.norm
        );
        if self.by_category.uncategorized.queries > 0 {
            out.push_str(&format!(
                "\nuncategorized queries: {}\n",
                self.by_category.uncategorized.queries
            ));
        }
        out
    }
}

/// One relation's row in the classification report.
#[derive(Debug, Clone, Serialize)]
pub struct TcRelationRow {
    pub relation: String,
    pub threshold: f64,
    pub accuracy: f64,
    pub test_triples: usize,
}

/// Triplet classification report: per-relation thresholds and accuracy,
/// plus the overall accuracy.
#[derive(Debug, Clone, Serialize)]
pub struct TcReport {
    pub dataset: String,
    pub model: String,
    pub norm: String,
    pub overall_accuracy: f64,
    pub test_triples: usize,
    pub fallback_relations: usize,
    pub relations: Vec<TcRelationRow>,
}

impl TcReport {
    pub fn new(
        dataset: &str,
        model: &str,
        norm: &str,
        vocab: &Vocab,
        thresholds: &TcThresholds,
        metrics: &TcMetrics,
    ) -> Self {
        let relations = metrics
            .per_relation
            .iter()
            .map(|(&r, acc)| TcRelationRow {
                relation: vocab.relation_label(r).to_owned(),
                threshold: thresholds.for_relation(r),
                accuracy: acc.accuracy(),
                test_triples: acc.total,
            })
            .collect();
        TcReport {
            dataset: dataset.to_owned(),
            model: model.to_owned(),
            norm: norm.to_owned(),
            overall_accuracy: metrics.accuracy(),
            test_triples: metrics.total,
            fallback_relations: metrics.fallback_relations,
            relations,
        }
    }

    pub fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .relations
            .iter()
            .map(|r| {
                vec![
                    r.relation.clone(),
                    format!("{:.4}", r.threshold),
                    pct(r.accuracy),
                    r.test_triples.to_string(),
                ]
            })
            .collect();
        let table = render_table(&["RELATION", "THRESHOLD", "ACCURACY", "#TEST"], &rows);
        let mut out = format!(
            "Triplet classification on {} ({} norm)\n\n{table}\nOVERALL ACCURACY ({}): {}\n",
            self.dataset,
            self.norm,
            self.model,
            pct(self.overall_accuracy)
        );
        if self.fallback_relations > 0 {
            out.push_str(&format!(
                "relations using the global threshold: {}\n",
                self.fallback_relations
            ));
        }
        out
    }
}

/// The six-row parameter complexity comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexityReport {
    pub input: ComplexityInput,
    pub rows: Vec<ComplexityRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexityRow {
    pub model: String,
    pub parameters: u64,
}

impl ComplexityReport {
    pub fn new(input: ComplexityInput) -> Self {
        let rows = complexity_table(input)
            .into_iter()
            .map(|(m, p)| ComplexityRow {
                model: m.to_string(),
                parameters: p,
            })
            .collect();
        ComplexityReport { input, rows }
    }

    pub fn render(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| vec![r.model.clone(), r.parameters.to_string()])
            .collect();
        let table = render_table(&["MODEL", "PARAMETER COMPLEXITY"], &rows);
        format!(
            "Parameter complexity at n_e={}, n_r={}, d={}, s={}\n\n{table}",
            self.input.n_entities, self.input.n_relations, self.input.dim, self.input.slices
        )
    }
}

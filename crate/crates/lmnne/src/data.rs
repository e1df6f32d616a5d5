//! Triple datasets: TSV parsing, vocabularies, membership indices, and
//! relation mapping categories.
//!
//! The on-disk format is one fact per line, three fields separated by a
//! single TAB. The default column order is `head relation tail`; pass
//! [`FieldOrder::HeadTailRel`] for releases that ship `head tail relation`.
//! Lines starting with `#` and blank lines are ignored. Classification
//! splits carry a fourth column holding the label `1` or `-1`.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::{Error, Result};

pub type EntityId = usize;
pub type RelationId = usize;

/// Column order of the three triple fields in a TSV file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOrder {
    /// `head relation tail` (the common release format).
    HeadRelTail,
    /// `head tail relation`.
    HeadTailRel,
}

impl FromStr for FieldOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hrt" => Ok(FieldOrder::HeadRelTail),
            "htr" => Ok(FieldOrder::HeadTailRel),
            other => Err(Error::InvalidConfig(format!(
                "field order must be `hrt` or `htr`, got `{other}`"
            ))),
        }
    }
}

/// A fact `(head, relation, tail)` in dense-id form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub head: EntityId,
    pub relation: RelationId,
    pub tail: EntityId,
}

impl Triple {
    pub fn new(head: EntityId, relation: RelationId, tail: EntityId) -> Self {
        Triple {
            head,
            relation,
            tail,
        }
    }
}

/// A triple paired with a classification label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledTriple {
    pub triple: Triple,
    pub positive: bool,
}

/// Bidirectional map between entity/relation labels and dense ids.
///
/// Ids are assigned in first-appearance order over the files given to
/// [`build_vocab`], so the same files in the same order always produce the
/// same vocabulary.
#[derive(Debug, Clone, Default)]
pub struct Vocab {
    entity_labels: Vec<String>,
    relation_labels: Vec<String>,
    entity_ids: HashMap<String, EntityId>,
    relation_ids: HashMap<String, RelationId>,
}

impl Vocab {
    pub fn new() -> Self {
        Vocab::default()
    }

    pub fn n_entities(&self) -> usize {
        self.entity_labels.len()
    }

    pub fn n_relations(&self) -> usize {
        self.relation_labels.len()
    }

    pub fn entity_id(&self, label: &str) -> Option<EntityId> {
        self.entity_ids.get(label).copied()
    }

    pub fn relation_id(&self, label: &str) -> Option<RelationId> {
        self.relation_ids.get(label).copied()
    }

    pub fn entity_label(&self, id: EntityId) -> &str {
        &self.entity_labels[id]
    }

    pub fn relation_label(&self, id: RelationId) -> &str {
        &self.relation_labels[id]
    }

    pub fn intern_entity(&mut self, label: &str) -> EntityId {
        if let Some(&id) = self.entity_ids.get(label) {
            return id;
        }
        let id = self.entity_labels.len();
        self.entity_labels.push(label.to_owned());
        self.entity_ids.insert(label.to_owned(), id);
        id
    }

    pub fn intern_relation(&mut self, label: &str) -> RelationId {
        if let Some(&id) = self.relation_ids.get(label) {
            return id;
        }
        let id = self.relation_labels.len();
        self.relation_labels.push(label.to_owned());
        self.relation_ids.insert(label.to_owned(), id);
        id
    }

    /// Stable 64-bit digest of the vocabulary contents.
    ///
    /// Embedding files record this value so that evaluation cannot silently
    /// pair embeddings with a different vocabulary.
    pub fn fingerprint(&self) -> u64 {
        let mut hasher = Sha256::new();
        hasher.update((self.entity_labels.len() as u64).to_le_bytes());
        for label in &self.entity_labels {
            hasher.update(label.as_bytes());
            hasher.update([0u8]);
        }
        hasher.update((self.relation_labels.len() as u64).to_le_bytes());
        for label in &self.relation_labels {
            hasher.update(label.as_bytes());
            hasher.update([0u8]);
        }
        let digest = hasher.finalize();
        u64::from_le_bytes(digest[..8].try_into().unwrap())
    }
}

/// How to treat a fourth (label) column when parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum LabelMode {
    /// Exactly three fields.
    Forbid,
    /// Exactly four fields, last one `1` or `-1`.
    Require,
    /// Three or four fields; a label column is ignored.
    Allow,
}

struct RawLine<'a> {
    head: &'a str,
    relation: &'a str,
    tail: &'a str,
    positive: Option<bool>,
}

fn parse_line<'a>(
    line: &'a str,
    order: FieldOrder,
    mode: LabelMode,
    path: &Path,
    lineno: usize,
) -> Result<Option<RawLine<'a>>> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    if line.is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let fields: Vec<&str> = line.split('\t').collect();
    let expected: &'static str = match mode {
        LabelMode::Forbid => "3",
        LabelMode::Require => "4",
        LabelMode::Allow => "3 or 4",
    };
    let ok = match mode {
        LabelMode::Forbid => fields.len() == 3,
        LabelMode::Require => fields.len() == 4,
        LabelMode::Allow => fields.len() == 3 || fields.len() == 4,
    };
    if !ok {
        return Err(Error::MalformedLine {
            path: path.to_owned(),
            line: lineno,
            expected,
            found: fields.len(),
        });
    }
    let positive = if fields.len() == 4 {
        match fields[3] {
            "1" => Some(true),
            "-1" => Some(false),
            other => {
                return Err(Error::BadLabelColumn {
                    path: path.to_owned(),
                    line: lineno,
                    value: other.to_owned(),
                })
            }
        }
    } else {
        None
    };
    let (head, relation, tail) = match order {
        FieldOrder::HeadRelTail => (fields[0], fields[1], fields[2]),
        FieldOrder::HeadTailRel => (fields[0], fields[2], fields[1]),
    };
    Ok(Some(RawLine {
        head,
        relation,
        tail,
        positive,
    }))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Build a vocabulary over every distinct entity and relation label in the
/// given files, in first-appearance order. Accepts both plain and labeled
/// (four-column) files.
pub fn build_vocab<P: AsRef<Path>>(paths: &[P], order: FieldOrder) -> Result<Vocab> {
    let mut vocab = Vocab::new();
    for path in paths {
        let path = path.as_ref();
        let contents = read_file(path)?;
        for (idx, line) in contents.lines().enumerate() {
            if let Some(raw) = parse_line(line, order, LabelMode::Allow, path, idx + 1)? {
                vocab.intern_entity(raw.head);
                vocab.intern_relation(raw.relation);
                vocab.intern_entity(raw.tail);
            }
        }
    }
    Ok(vocab)
}

/// An ordered collection of triples with exact-membership and per-slot
/// indices.
///
/// Duplicate input lines stay in the ordered list (they weigh the epoch
/// stream) but are stored once in the membership index.
#[derive(Debug, Clone, Default)]
pub struct TripleSet {
    triples: Vec<Triple>,
    members: HashSet<Triple>,
    tails_by_head_rel: HashMap<(EntityId, RelationId), Vec<EntityId>>,
    heads_by_rel_tail: HashMap<(RelationId, EntityId), Vec<EntityId>>,
}

impl TripleSet {
    pub fn from_triples(triples: Vec<Triple>) -> Self {
        let members: HashSet<Triple> = triples.iter().copied().collect();
        let mut tails_by_head_rel: HashMap<(EntityId, RelationId), Vec<EntityId>> = HashMap::new();
        let mut heads_by_rel_tail: HashMap<(RelationId, EntityId), Vec<EntityId>> = HashMap::new();
        for t in &members {
            tails_by_head_rel
                .entry((t.head, t.relation))
                .or_default()
                .push(t.tail);
            heads_by_rel_tail
                .entry((t.relation, t.tail))
                .or_default()
                .push(t.head);
        }
        for v in tails_by_head_rel.values_mut() {
            v.sort_unstable();
        }
        for v in heads_by_rel_tail.values_mut() {
            v.sort_unstable();
        }
        TripleSet {
            triples,
            members,
            tails_by_head_rel,
            heads_by_rel_tail,
        }
    }

    /// Membership union of several sets. The ordered list concatenates the
    /// inputs; membership is set-semantics.
    pub fn merged<'a>(sets: impl IntoIterator<Item = &'a TripleSet>) -> Self {
        let mut all = Vec::new();
        for s in sets {
            all.extend_from_slice(&s.triples);
        }
        TripleSet::from_triples(all)
    }

    pub fn contains(&self, triple: Triple) -> bool {
        self.members.contains(&triple)
    }

    /// Number of stored triples, duplicates included.
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Number of distinct facts.
    pub fn n_distinct(&self) -> usize {
        self.members.len()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    /// Distinct tails observed under `(head, relation)`, ascending.
    pub fn tails_of(&self, head: EntityId, relation: RelationId) -> &[EntityId] {
        self.tails_by_head_rel
            .get(&(head, relation))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Distinct heads observed under `(relation, tail)`, ascending.
    pub fn heads_of(&self, relation: RelationId, tail: EntityId) -> &[EntityId] {
        self.heads_by_rel_tail
            .get(&(relation, tail))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Distinct entities appearing in any slot, ascending.
    pub fn distinct_entities(&self) -> Vec<EntityId> {
        let mut set = BTreeSet::new();
        for t in &self.members {
            set.insert(t.head);
            set.insert(t.tail);
        }
        set.into_iter().collect()
    }

    /// Distinct relations, ascending.
    pub fn distinct_relations(&self) -> Vec<RelationId> {
        let mut set = BTreeSet::new();
        for t in &self.members {
            set.insert(t.relation);
        }
        set.into_iter().collect()
    }
}

/// Result of [`load_triples`]: the set plus how many lines were skipped in
/// non-strict mode.
#[derive(Debug)]
pub struct LoadedTriples {
    pub set: TripleSet,
    pub skipped: usize,
}

/// Load a three-column triple file against an existing vocabulary,
/// preserving file order.
///
/// In strict mode an unknown label is an error naming the label; otherwise
/// the line is skipped and counted.
pub fn load_triples(
    path: impl AsRef<Path>,
    vocab: &Vocab,
    strict: bool,
    order: FieldOrder,
) -> Result<LoadedTriples> {
    let path = path.as_ref();
    let contents = read_file(path)?;
    let mut triples = Vec::new();
    let mut skipped = 0usize;
    for (idx, line) in contents.lines().enumerate() {
        let Some(raw) = parse_line(line, order, LabelMode::Forbid, path, idx + 1)? else {
            continue;
        };
        match resolve(&raw, vocab, strict, path, idx + 1)? {
            Some(triple) => triples.push(triple),
            None => skipped += 1,
        }
    }
    Ok(LoadedTriples {
        set: TripleSet::from_triples(triples),
        skipped,
    })
}

/// Result of [`load_labeled_triples`].
#[derive(Debug)]
pub struct LoadedLabeled {
    pub items: Vec<LabeledTriple>,
    pub skipped: usize,
}

/// Load a four-column labeled file (classification splits).
pub fn load_labeled_triples(
    path: impl AsRef<Path>,
    vocab: &Vocab,
    strict: bool,
    order: FieldOrder,
) -> Result<LoadedLabeled> {
    let path = path.as_ref();
    let contents = read_file(path)?;
    let mut items = Vec::new();
    let mut skipped = 0usize;
    for (idx, line) in contents.lines().enumerate() {
        let Some(raw) = parse_line(line, order, LabelMode::Require, path, idx + 1)? else {
            continue;
        };
        match resolve(&raw, vocab, strict, path, idx + 1)? {
            Some(triple) => items.push(LabeledTriple {
                triple,
                positive: raw.positive.expect("label column present"),
            }),
            None => skipped += 1,
        }
    }
    Ok(LoadedLabeled { items, skipped })
}

fn resolve(
    raw: &RawLine<'_>,
    vocab: &Vocab,
    strict: bool,
    path: &Path,
    lineno: usize,
) -> Result<Option<Triple>> {
    let unknown = |kind: &'static str, label: &str| Error::UnknownLabel {
        path: path.to_owned(),
        line: lineno,
        kind,
        label: label.to_owned(),
    };
    let head = match vocab.entity_id(raw.head) {
        Some(id) => id,
        None if strict => return Err(unknown("entity", raw.head)),
        None => return Ok(None),
    };
    let relation = match vocab.relation_id(raw.relation) {
        Some(id) => id,
        None if strict => return Err(unknown("relation", raw.relation)),
        None => return Ok(None),
    };
    let tail = match vocab.entity_id(raw.tail) {
        Some(id) => id,
        None if strict => return Err(unknown("entity", raw.tail)),
        None => return Ok(None),
    };
    Ok(Some(Triple::new(head, relation, tail)))
}

/// Mapping property of a relation in a training set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum RelationCategory {
    OneToOne,
    OneToMany,
    ManyToOne,
    ManyToMany,
}

impl RelationCategory {
    pub const ALL: [RelationCategory; 4] = [
        RelationCategory::OneToOne,
        RelationCategory::OneToMany,
        RelationCategory::ManyToOne,
        RelationCategory::ManyToMany,
    ];
}

impl fmt::Display for RelationCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationCategory::OneToOne => "1-TO-1",
            RelationCategory::OneToMany => "1-TO-M.",
            RelationCategory::ManyToOne => "M.-TO-1",
            RelationCategory::ManyToMany => "M.-TO-M.",
        };
        f.write_str(s)
    }
}

/// Average number of tails per distinct head above which the tail side
/// counts as MANY (and symmetrically for heads per tail).
pub const CATEGORY_THRESHOLD: f64 = 1.5;

/// Classify every relation with at least one training fact by its mapping
/// property.
///
/// For each relation `r`, `tph = #facts(r) / #distinct heads(r)` and
/// `hpt = #facts(r) / #distinct tails(r)`; a side is MANY iff its average
/// is strictly greater than 1.5 (a boundary value of exactly 1.5 is ONE).
/// Counts use set semantics, so duplicate input lines do not skew the
/// averages.
pub fn classify_relations(train: &TripleSet) -> BTreeMap<RelationId, RelationCategory> {
    struct Stats {
        facts: usize,
        heads: HashSet<EntityId>,
        tails: HashSet<EntityId>,
    }
    let mut per_relation: HashMap<RelationId, Stats> = HashMap::new();
    for t in &train.members {
        let s = per_relation.entry(t.relation).or_insert_with(|| Stats {
            facts: 0,
            heads: HashSet::new(),
            tails: HashSet::new(),
        });
        s.facts += 1;
        s.heads.insert(t.head);
        s.tails.insert(t.tail);
    }
    per_relation
        .into_iter()
        .map(|(r, s)| {
            let tph = s.facts as f64 / s.heads.len() as f64;
            let hpt = s.facts as f64 / s.tails.len() as f64;
            let tail_many = tph > CATEGORY_THRESHOLD;
            let head_many = hpt > CATEGORY_THRESHOLD;
            let category = match (head_many, tail_many) {
                (false, false) => RelationCategory::OneToOne,
                (false, true) => RelationCategory::OneToMany,
                (true, false) => RelationCategory::ManyToOne,
                (true, true) => RelationCategory::ManyToMany,
            };
            (r, category)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Write;

    fn write_tmp(lines: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(lines.as_bytes()).unwrap();
        f.flush().unwrap();
        f
    }

    #[test]
    fn vocab_from_single_file() {
        let f = write_tmp("A\tr1\tB\nB\tr1\tC\n");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap();
        assert_eq!(vocab.n_entities(), 3);
        assert_eq!(vocab.n_relations(), 1);
        // First-appearance order.
        assert_eq!(vocab.entity_label(0), "A");
        assert_eq!(vocab.entity_label(1), "B");
        assert_eq!(vocab.entity_label(2), "C");
    }

    #[test]
    fn vocab_from_empty_file() {
        let f = write_tmp("");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap();
        assert_eq!(vocab.n_entities(), 0);
        assert_eq!(vocab.n_relations(), 0);
    }

    #[test]
    fn vocab_round_trips_labels() {
        let f = write_tmp("A\tr1\tB\nB\tr2\tC\nC\tr1\tA\n");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap();
        for id in 0..vocab.n_entities() {
            assert_eq!(vocab.entity_id(vocab.entity_label(id)), Some(id));
        }
        for id in 0..vocab.n_relations() {
            assert_eq!(vocab.relation_id(vocab.relation_label(id)), Some(id));
        }
    }

    #[test]
    fn malformed_line_reports_file_and_line() {
        let f = write_tmp("A\tr1\tB\nA\tr1\n");
        let err = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap_err();
        match err {
            Error::MalformedLine { line, found, .. } => {
                assert_eq!(line, 2);
                assert_eq!(found, 2);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let f = write_tmp("# header\nA\tr1\tB\n\nB\tr1\tC\n");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap();
        assert_eq!(vocab.n_entities(), 3);
        let loaded = load_triples(f.path(), &vocab, true, FieldOrder::HeadRelTail).unwrap();
        assert_eq!(loaded.set.len(), 2);
    }

    #[test]
    fn htr_field_order_swaps_columns() {
        let f = write_tmp("A\tB\tr1\n");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadTailRel).unwrap();
        assert_eq!(vocab.n_relations(), 1);
        assert_eq!(vocab.relation_label(0), "r1");
        let loaded = load_triples(f.path(), &vocab, true, FieldOrder::HeadTailRel).unwrap();
        let t = loaded.set.triples()[0];
        assert_eq!(vocab.entity_label(t.head), "A");
        assert_eq!(vocab.entity_label(t.tail), "B");
    }

    #[test]
    fn strict_load_names_the_unknown_label() {
        let known = write_tmp("A\tr1\tB\n");
        let vocab = build_vocab(&[known.path()], FieldOrder::HeadRelTail).unwrap();
        let f = write_tmp("A\tr1\tB\nA\tr1\tZZZ\n");
        let err = load_triples(f.path(), &vocab, true, FieldOrder::HeadRelTail).unwrap_err();
        match err {
            Error::UnknownLabel { label, kind, .. } => {
                assert_eq!(label, "ZZZ");
                assert_eq!(kind, "entity");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn non_strict_load_skips_and_counts() {
        let known = write_tmp("A\tr1\tB\n");
        let vocab = build_vocab(&[known.path()], FieldOrder::HeadRelTail).unwrap();
        let f = write_tmp("A\tr1\tB\nA\tr1\tZZZ\nB\tr1\tA\n");
        let loaded = load_triples(f.path(), &vocab, false, FieldOrder::HeadRelTail).unwrap();
        assert_eq!(loaded.set.len(), 2);
        assert_eq!(loaded.skipped, 1);
    }

    #[test]
    fn duplicates_stay_in_list_but_not_in_membership() {
        let f = write_tmp("A\tr1\tB\nA\tr1\tB\n");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap();
        let loaded = load_triples(f.path(), &vocab, true, FieldOrder::HeadRelTail).unwrap();
        assert_eq!(loaded.set.len(), 2);
        assert_eq!(loaded.set.n_distinct(), 1);
    }

    #[test]
    fn labeled_load_parses_labels() {
        let f = write_tmp("A\tr1\tB\t1\nB\tr1\tA\t-1\n");
        let vocab = build_vocab(&[f.path()], FieldOrder::HeadRelTail).unwrap();
        let loaded = load_labeled_triples(f.path(), &vocab, true, FieldOrder::HeadRelTail).unwrap();
        assert_eq!(loaded.items.len(), 2);
        assert!(loaded.items[0].positive);
        assert!(!loaded.items[1].positive);
    }

    #[test]
    fn labeled_load_rejects_bad_label() {
        let f = write_tmp("A\tr1\tB\t2\n");
        let vocab = Vocab::new();
        let err =
            load_labeled_triples(f.path(), &vocab, false, FieldOrder::HeadRelTail).unwrap_err();
        assert!(matches!(err, Error::BadLabelColumn { .. }));
    }

    #[test]
    fn contains_is_exact_and_order_sensitive() {
        let set = TripleSet::from_triples(vec![Triple::new(0, 0, 1)]);
        assert!(set.contains(Triple::new(0, 0, 1)));
        assert!(!set.contains(Triple::new(1, 0, 0)));
        let empty = TripleSet::from_triples(vec![]);
        assert!(!empty.contains(Triple::new(0, 0, 1)));
    }

    #[test]
    fn slot_indices_cover_stored_triples() {
        let set = TripleSet::from_triples(vec![
            Triple::new(0, 0, 1),
            Triple::new(0, 0, 2),
            Triple::new(3, 0, 2),
        ]);
        assert_eq!(set.tails_of(0, 0), &[1, 2]);
        assert_eq!(set.heads_of(0, 2), &[0, 3]);
        assert_eq!(set.tails_of(7, 0), &[] as &[EntityId]);
        assert_eq!(set.distinct_entities(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn classify_all_distinct_is_one_to_one() {
        // tph = 1, hpt = 1.
        let set = TripleSet::from_triples(vec![Triple::new(0, 0, 2), Triple::new(1, 0, 3)]);
        let map = classify_relations(&set);
        assert_eq!(map[&0], RelationCategory::OneToOne);
    }

    #[test]
    fn classify_shared_head_is_one_to_many() {
        // tph = 3/1 = 3 > 1.5, hpt = 3/3 = 1.
        let set = TripleSet::from_triples(vec![
            Triple::new(0, 0, 1),
            Triple::new(0, 0, 2),
            Triple::new(0, 0, 3),
        ]);
        let map = classify_relations(&set);
        assert_eq!(map[&0], RelationCategory::OneToMany);
    }

    #[test]
    fn classify_shared_tail_is_many_to_one() {
        // hpt = 4/2 = 2 > 1.5, tph = 4/3 <= 1.5.
        let set = TripleSet::from_triples(vec![
            Triple::new(0, 0, 10),
            Triple::new(1, 0, 10),
            Triple::new(2, 0, 10),
            Triple::new(0, 0, 11),
        ]);
        let map = classify_relations(&set);
        assert_eq!(map[&0], RelationCategory::ManyToOne);
    }

    #[test]
    fn classify_boundary_average_is_one() {
        // tph = 3/2 = 1.5 exactly: not strictly greater, so the tail side
        // stays ONE.
        let set = TripleSet::from_triples(vec![
            Triple::new(0, 0, 1),
            Triple::new(0, 0, 2),
            Triple::new(3, 0, 4),
        ]);
        let map = classify_relations(&set);
        assert_eq!(map[&0], RelationCategory::OneToOne);
    }

    #[test]
    fn classify_excludes_absent_relations() {
        let set = TripleSet::from_triples(vec![Triple::new(0, 5, 1)]);
        let map = classify_relations(&set);
        assert_eq!(map.len(), 1);
        assert!(map.contains_key(&5));
    }

    #[test]
    fn fingerprint_changes_with_vocab() {
        let f1 = write_tmp("A\tr1\tB\n");
        let f2 = write_tmp("A\tr1\tC\n");
        let v1 = build_vocab(&[f1.path()], FieldOrder::HeadRelTail).unwrap();
        let v2 = build_vocab(&[f2.path()], FieldOrder::HeadRelTail).unwrap();
        assert_ne!(v1.fingerprint(), v2.fingerprint());
        assert_eq!(v1.fingerprint(), v1.clone().fingerprint());
    }

    fn arb_triples(max_entities: usize) -> impl Strategy<Value = Vec<Triple>> {
        prop::collection::vec(
            (0..max_entities, 0..5usize, 0..max_entities)
                .prop_map(|(h, r, t)| Triple::new(h, r, t)),
            0..200,
        )
    }

    proptest! {
        #[test]
        fn contains_matches_linear_scan(triples in arb_triples(30), probe in arb_triples(30)) {
            let set = TripleSet::from_triples(triples.clone());
            for q in probe {
                // Independent membership oracle: plain scan of the list.
                let mut scan = false;
                for &t in &triples {
                    if t == q {
                        scan = true;
                        break;
                    }
                }
                prop_assert_eq!(set.contains(q), scan);
            }
        }

        #[test]
        fn classification_is_permutation_invariant(triples in arb_triples(20), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let set = TripleSet::from_triples(triples.clone());
            let mut shuffled = triples;
            let mut rng = crate::embed::seeded_rng(seed);
            shuffled.shuffle(&mut rng);
            let reordered = TripleSet::from_triples(shuffled);
            prop_assert_eq!(classify_relations(&set), classify_relations(&reordered));
        }

        #[test]
        fn categories_partition_the_relations(triples in arb_triples(20)) {
            let set = TripleSet::from_triples(triples);
            let map = classify_relations(&set);
            prop_assert_eq!(map.len(), set.distinct_relations().len());
            let by_cat: usize = RelationCategory::ALL
                .iter()
                .map(|c| map.values().filter(|&&v| v == *c).count())
                .sum();
            prop_assert_eq!(by_cat, map.len());
        }
    }
}

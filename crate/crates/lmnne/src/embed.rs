//! Embedding tables: seeded uniform initialization, row normalization, and
//! a self-describing binary file format.
//!
//! # File format
//!
//! Little-endian throughout:
//!
//! ```text
//! offset  size  field
//! 0       8     magic "LMNNEv1\0"
//! 8       1     table kind: 0 = entity, 1 = relation
//! 9       8     n    (row count, u64)
//! 17      8     d    (dimension, u64)
//! 25      8     seed used for the producing run (u64, provenance)
//! 33      8     vocabulary fingerprint (u64)
//! 41      n*d*8 row-major IEEE-754 f64 values
//! ```
//!
//! The payload length must match the header exactly; loading verifies this
//! and that every value is finite, so a truncated or corrupted file is
//! rejected.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use ndarray::{Array2, ArrayView1, ArrayViewMut1};
use rand::Rng;
use rand::SeedableRng;

use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"LMNNEv1\0";

/// Deterministic generator used everywhere randomness is needed: the same
/// seed always yields the same stream.
pub type TableRng = rand_chacha::ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> TableRng {
    TableRng::seed_from_u64(seed)
}

/// Whether a table holds entity or relation vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    Entity,
    Relation,
}

impl TableKind {
    fn to_byte(self) -> u8 {
        match self {
            TableKind::Entity => 0,
            TableKind::Relation => 1,
        }
    }

    fn from_byte(b: u8) -> Option<TableKind> {
        match b {
            0 => Some(TableKind::Entity),
            1 => Some(TableKind::Relation),
            _ => None,
        }
    }
}

/// Dense `n x d` matrix of embedding vectors, one row per entity or
/// relation.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    kind: TableKind,
    rows: Array2<f64>,
}

/// Draw an `n x d` matrix with every component uniform in
/// `[-6/sqrt(d), 6/sqrt(d)]`.
pub(crate) fn uniform_rows(n: usize, d: usize, rng: &mut TableRng) -> Array2<f64> {
    let bound = 6.0 / (d as f64).sqrt();
    let mut rows = Array2::zeros((n, d));
    for mut row in rows.rows_mut() {
        for x in row.iter_mut() {
            *x = rng.random_range(-bound..=bound);
        }
    }
    rows
}

impl EmbeddingTable {
    /// Initialize `n` rows of dimension `d`: components uniform in
    /// `[-6/sqrt(d), 6/sqrt(d)]`, then each row rescaled to unit L2 norm.
    /// A zero row (probability ~0) is resampled.
    pub fn init(kind: TableKind, n: usize, d: usize, rng: &mut TableRng) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDim);
        }
        let mut rows = uniform_rows(n, d, rng);
        let bound = 6.0 / (d as f64).sqrt();
        for mut row in rows.rows_mut() {
            while l2(row.view()) == 0.0 {
                for x in row.iter_mut() {
                    *x = rng.random_range(-bound..=bound);
                }
            }
            scale_to_unit(row.view_mut());
        }
        Ok(EmbeddingTable { kind, rows })
    }

    /// Wrap an existing matrix (mainly for tests and hand-built fixtures).
    pub fn from_rows(kind: TableKind, rows: Array2<f64>) -> Self {
        EmbeddingTable { kind, rows }
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn n_rows(&self) -> usize {
        self.rows.nrows()
    }

    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.rows
            .row(i)
            .to_slice()
            .expect("rows of a standard-layout matrix are contiguous")
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        self.rows
            .row_mut(i)
            .into_slice()
            .expect("rows of a standard-layout matrix are contiguous")
    }

    /// Divide every row by its L2 norm. Direction is preserved; a zero row
    /// is an error (it signals divergence upstream), as is a non-finite
    /// norm.
    pub fn normalize_rows(&mut self) -> Result<()> {
        for (i, mut row) in self.rows.rows_mut().into_iter().enumerate() {
            let norm = l2(row.view());
            if norm == 0.0 {
                return Err(Error::ZeroNormRow { row: i });
            }
            if !norm.is_finite() {
                return Err(Error::NonFinite(format!("row {i}")));
            }
            row.mapv_inplace(|x| x / norm);
        }
        Ok(())
    }

    pub fn all_finite(&self) -> bool {
        self.rows.iter().all(|x| x.is_finite())
    }

    /// Write the table with its provenance header. See the module docs for
    /// the byte layout.
    pub fn save(&self, path: impl AsRef<Path>, seed: u64, fingerprint: u64) -> Result<()> {
        let path = path.as_ref();
        let io_err = |source| Error::Io {
            path: path.to_owned(),
            source,
        };
        let file = File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(file);
        let mut emit = |bytes: &[u8]| w.write_all(bytes).map_err(io_err);
        emit(MAGIC)?;
        emit(&[self.kind.to_byte()])?;
        emit(&(self.n_rows() as u64).to_le_bytes())?;
        emit(&(self.dim() as u64).to_le_bytes())?;
        emit(&seed.to_le_bytes())?;
        emit(&fingerprint.to_le_bytes())?;
        for x in self.rows.iter() {
            emit(&x.to_le_bytes())?;
        }
        w.flush().map_err(io_err)
    }

    /// Read a table written by [`EmbeddingTable::save`], verifying the
    /// header, the exact payload length, and value finiteness.
    pub fn load(path: impl AsRef<Path>) -> Result<(Self, TableHeader)> {
        let path = path.as_ref();
        let bad = |reason: &str| Error::BadTableFile {
            path: path.to_owned(),
            reason: reason.to_owned(),
        };
        let file = File::open(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        let mut r = BufReader::new(file);
        let mut buf = Vec::new();
        r.read_to_end(&mut buf).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        if buf.len() < 41 {
            return Err(bad("file shorter than the 41-byte header"));
        }
        if &buf[0..8] != MAGIC {
            return Err(bad("bad magic bytes"));
        }
        let kind = TableKind::from_byte(buf[8]).ok_or_else(|| bad("unknown table kind byte"))?;
        let read_u64 = |at: usize| u64::from_le_bytes(buf[at..at + 8].try_into().unwrap());
        let n = read_u64(9) as usize;
        let d = read_u64(17) as usize;
        let seed = read_u64(25);
        let fingerprint = read_u64(33);
        if d == 0 {
            return Err(bad("header declares dimension 0"));
        }
        let expected = 41 + n
            .checked_mul(d)
            .and_then(|nd| nd.checked_mul(8))
            .ok_or_else(|| bad("header size overflows"))?;
        if buf.len() != expected {
            return Err(bad(&format!(
                "payload length {} does not match header ({} expected)",
                buf.len(),
                expected
            )));
        }
        let mut values = Vec::with_capacity(n * d);
        for chunk in buf[41..].chunks_exact(8) {
            let x = f64::from_le_bytes(chunk.try_into().unwrap());
            if !x.is_finite() {
                return Err(bad("non-finite value in payload"));
            }
            values.push(x);
        }
        let rows = Array2::from_shape_vec((n, d), values).expect("length checked above");
        Ok((
            EmbeddingTable { kind, rows },
            TableHeader {
                kind,
                n,
                d,
                seed,
                fingerprint,
            },
        ))
    }
}

/// Header of a persisted table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableHeader {
    pub kind: TableKind,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub fingerprint: u64,
}

impl TableHeader {
    /// Reject embeddings that were built against a different vocabulary.
    pub fn verify_fingerprint(&self, expected: u64) -> Result<()> {
        if self.fingerprint != expected {
            return Err(Error::FingerprintMismatch {
                found: self.fingerprint,
                expected,
            });
        }
        Ok(())
    }
}

fn l2(row: ArrayView1<'_, f64>) -> f64 {
    row.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn scale_to_unit(mut row: ArrayViewMut1<'_, f64>) {
    let norm = l2(row.view());
    row.mapv_inplace(|x| x / norm);
}

//! Document collections and their concatenated, sentinel-terminated text.
//!
//! Every document contributes its body followed by one sentinel byte: the
//! separator for all documents but the last, the terminator for the last.
//! Sentinels are ordinary bytes as far as suffix comparison is concerned,
//! so two documents ending in the same separator can share a common prefix
//! that runs through it.

mod fasta;
mod msa;
mod newick;

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

pub use fasta::{parse_fasta, parse_lines};
pub use msa::{corpus_from_alignment, parse_msa, rows_from_columns, Alignment};
pub use newick::{leaf_ranks, parse_newick, PhyloTree};

pub const DEFAULT_SEPARATOR: u8 = b'$';
pub const DEFAULT_TERMINATOR: u8 = b'#';
pub const DEFAULT_GAP: u8 = b'-';

/// The pair of sentinel bytes that close documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sentinels {
    pub separator: u8,
    pub terminator: u8,
}

impl Default for Sentinels {
    fn default() -> Self {
        Sentinels {
            separator: DEFAULT_SEPARATOR,
            terminator: DEFAULT_TERMINATOR,
        }
    }
}

impl Sentinels {
    pub fn new(separator: u8, terminator: u8) -> Result<Self> {
        if separator == terminator {
            return Err(Error::validation(
                "separator and terminator must be distinct bytes",
            ));
        }
        Ok(Sentinels {
            separator,
            terminator,
        })
    }

    pub fn is_sentinel(&self, b: u8) -> bool {
        b == self.separator || b == self.terminator
    }

    /// Sentinel closing document `id` of a collection of `count` documents.
    pub fn closing(&self, id: usize, count: usize) -> u8 {
        if id + 1 == count {
            self.terminator
        } else {
            self.separator
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: usize,
    pub name: String,
    pub body: Vec<u8>,
}

impl Document {
    pub fn new(id: usize, name: impl Into<String>, body: impl Into<Vec<u8>>) -> Self {
        Document {
            id,
            name: name.into(),
            body: body.into(),
        }
    }
}

/// Builds documents named `doc0`, `doc1`, ... from raw bodies.
pub fn documents_from_bodies<B: AsRef<[u8]>>(bodies: &[B]) -> Vec<Document> {
    bodies
        .iter()
        .enumerate()
        .map(|(i, b)| Document::new(i, format!("doc{i}"), b.as_ref()))
        .collect()
}

/// A concatenated, indexable document collection.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    text: Vec<u8>,
    doc_starts: Vec<usize>,
    doc_names: Vec<String>,
    sentinels: Sentinels,
    column_of: Option<Vec<u32>>,
    label_of_doc: Option<Vec<String>>,
    tree: Option<PhyloTree>,
}

/// Concatenates `docs`, closing each with its sentinel.
pub fn corpus_from_documents(docs: &[Document], sentinels: Sentinels) -> Result<Corpus> {
    if docs.is_empty() {
        return Err(Error::validation("corpus needs at least one document"));
    }
    Sentinels::new(sentinels.separator, sentinels.terminator)?;
    let total: usize = docs.iter().map(|d| d.body.len() + 1).sum();
    let mut text = Vec::with_capacity(total);
    let mut doc_starts = Vec::with_capacity(docs.len());
    for (i, doc) in docs.iter().enumerate() {
        if doc.id != i {
            return Err(Error::validation(format!(
                "document ids must be consecutive from 0; found {} at index {i}",
                doc.id
            )));
        }
        if let Some(off) = doc.body.iter().position(|&b| sentinels.is_sentinel(b)) {
            return Err(Error::validation(format!(
                "document {:?} contains sentinel byte {:?} at offset {off}",
                doc.name, doc.body[off] as char
            )));
        }
        doc_starts.push(text.len());
        text.extend_from_slice(&doc.body);
        text.push(sentinels.closing(i, docs.len()));
    }
    Ok(Corpus {
        text,
        doc_starts,
        doc_names: docs.iter().map(|d| d.name.clone()).collect(),
        sentinels,
        column_of: None,
        label_of_doc: None,
        tree: None,
    })
}

impl Corpus {
    /// Assembles a corpus from already-concatenated parts and checks every
    /// structural invariant.
    pub fn from_parts(
        text: Vec<u8>,
        doc_starts: Vec<usize>,
        doc_names: Vec<String>,
        sentinels: Sentinels,
        column_of: Option<Vec<u32>>,
    ) -> Result<Self> {
        let c = Corpus {
            text,
            doc_starts,
            doc_names,
            sentinels,
            column_of,
            label_of_doc: None,
            tree: None,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.text.len();
        let d = self.doc_starts.len();
        if n == 0 || d == 0 {
            return Err(Error::validation("corpus is empty"));
        }
        if self.doc_starts[0] != 0 {
            return Err(Error::validation("first document must start at 0"));
        }
        if self.doc_names.len() != d {
            return Err(Error::LengthMismatch {
                expected: d,
                actual: self.doc_names.len(),
            });
        }
        for w in self.doc_starts.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::validation("document starts must strictly increase"));
            }
        }
        if *self.doc_starts.last().unwrap() >= n {
            return Err(Error::validation("document start beyond end of text"));
        }
        for id in 0..d {
            let range = self.doc_range(id);
            let last = range.end - 1;
            if self.text[last] != self.sentinels.closing(id, d) {
                return Err(Error::validation(format!(
                    "document {id} does not end with its sentinel"
                )));
            }
            if let Some(off) = self.text[range.start..last]
                .iter()
                .position(|&b| self.sentinels.is_sentinel(b))
            {
                return Err(Error::validation(format!(
                    "sentinel inside document {id} at position {}",
                    range.start + off
                )));
            }
        }
        if let Some(cols) = &self.column_of {
            if cols.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: cols.len(),
                });
            }
            for id in 0..d {
                let r = self.doc_range(id);
                if cols[r].windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::validation(format!(
                        "column indices of document {id} are not strictly increasing"
                    )));
                }
            }
        }
        if let Some(labels) = &self.label_of_doc {
            if labels.len() != d {
                return Err(Error::LengthMismatch {
                    expected: d,
                    actual: labels.len(),
                });
            }
        }
        Ok(())
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn doc_count(&self) -> usize {
        self.doc_starts.len()
    }

    pub fn doc_starts(&self) -> &[usize] {
        &self.doc_starts
    }

    pub fn doc_names(&self) -> &[String] {
        &self.doc_names
    }

    pub fn sentinels(&self) -> Sentinels {
        self.sentinels
    }

    pub fn column_of(&self) -> Option<&[u32]> {
        self.column_of.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.label_of_doc.as_deref()
    }

    pub fn tree(&self) -> Option<&PhyloTree> {
        self.tree.as_ref()
    }

    /// Half-open text range of document `id`, sentinel included.
    pub fn doc_range(&self, id: usize) -> std::ops::Range<usize> {
        let start = self.doc_starts[id];
        let end = self
            .doc_starts
            .get(id + 1)
            .copied()
            .unwrap_or(self.text.len());
        start..end
    }

    /// Document containing text position `p`.
    pub fn doc_of(&self, p: usize) -> usize {
        debug_assert!(p < self.text.len());
        self.doc_starts.partition_point(|&s| s <= p) - 1
    }

    /// Document body without its sentinel.
    pub fn body(&self, id: usize) -> &[u8] {
        let r = self.doc_range(id);
        &self.text[r.start..r.end - 1]
    }

    /// Document id for every text position.
    pub fn doc_ids(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.text.len());
        for id in 0..self.doc_count() {
            let r = self.doc_range(id);
            out.extend(std::iter::repeat_n(id, r.len()));
        }
        out
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.doc_count() {
            return Err(Error::LengthMismatch {
                expected: self.doc_count(),
                actual: labels.len(),
            });
        }
        self.label_of_doc = Some(labels);
        Ok(())
    }

    /// Attaches labels keyed by document name. Every document must be
    /// covered; extra names are ignored.
    pub fn set_labels_by_name(&mut self, by_name: &HashMap<String, String>) -> Result<()> {
        let mut labels = Vec::with_capacity(self.doc_count());
        let mut missing = Vec::new();
        for name in &self.doc_names {
            match by_name.get(name) {
                Some(l) => labels.push(l.clone()),
                None => missing.push(name.as_str()),
            }
        }
        if !missing.is_empty() {
            return Err(Error::validation(format!(
                "no label for documents: {}",
                missing.join(", ")
            )));
        }
        self.set_labels(labels)
    }

    pub fn set_tree(&mut self, tree: PhyloTree) {
        self.tree = Some(tree);
    }

    /// Keys used to look documents up in the tree: document names when
    /// every name is a leaf (or no labels are attached), labels otherwise.
    pub fn tree_keys(&self) -> &[String] {
        let names_are_leaves = self.tree.as_ref().is_some_and(|t| {
            let leaves: HashSet<&str> = t.leaves().into_iter().collect();
            self.doc_names.iter().all(|n| leaves.contains(n.as_str()))
        });
        match &self.label_of_doc {
            Some(labels) if !names_are_leaves => labels,
            _ => &self.doc_names,
        }
    }

    pub(crate) fn set_columns(&mut self, column_of: Vec<u32>) {
        self.column_of = Some(column_of);
    }
}

/// Parses a labels TSV (`doc_name<TAB>label`, one pair per line). Blank
/// lines and lines starting with `#` are skipped.
pub fn parse_labels(tsv: &str) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for (lineno, line) in tsv.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, label) = line.split_once('\t').ok_or_else(|| {
            Error::format(format!(
                "labels line {}: expected name<TAB>label",
                lineno + 1
            ))
        })?;
        if out
            .insert(name.to_string(), label.trim().to_string())
            .is_some()
        {
            return Err(Error::format(format!(
                "labels line {}: duplicate document {name:?}",
                lineno + 1
            )));
        }
    }
    Ok(out)
}

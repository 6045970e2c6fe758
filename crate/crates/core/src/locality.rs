//! Per-position contextual-locality properties and tag schemes.
//!
//! A tag scheme assigns an integer to every text position. Positions whose
//! following contexts look alike tend to receive equal or nearby tags under
//! the column, end-LCP, ILCP, label and leaf-rank schemes; the document,
//! position and PLCP schemes are their text-order counterparts.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::corpus::{leaf_ranks, Corpus};
use crate::error::{Error, Result};
use crate::suffix::{build_index, inverse, lcp_kasai, suffix_array, SuffixIndex};

pub type Tag = i64;

/// Tags in text order, one per position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionTags {
    pub tags: Vec<Tag>,
}

impl PositionTags {
    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}

impl<T: Into<Tag>> FromIterator<T> for PositionTags {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        PositionTags {
            tags: iter.into_iter().map(Into::into).collect(),
        }
    }
}

/// How ILCP compares a suffix against the other suffixes of its document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IlcpMode {
    /// Maximum over every other suffix of the document.
    #[default]
    Symmetric,
    /// LCP with the lexicographic predecessor within the document only,
    /// i.e. the per-document LCP arrays interleaved.
    Predecessor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeKind {
    Document,
    Column,
    Label,
    LeafRank,
    EndLcp,
    Ilcp,
    Plcp,
    Position,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 8] = [
        SchemeKind::Document,
        SchemeKind::Column,
        SchemeKind::Label,
        SchemeKind::LeafRank,
        SchemeKind::EndLcp,
        SchemeKind::Ilcp,
        SchemeKind::Plcp,
        SchemeKind::Position,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Document => "document",
            SchemeKind::Column => "column",
            SchemeKind::Label => "label",
            SchemeKind::LeafRank => "leaf_rank",
            SchemeKind::EndLcp => "end_lcp",
            SchemeKind::Ilcp => "ilcp",
            SchemeKind::Plcp => "plcp",
            SchemeKind::Position => "position",
        }
    }

    /// Whether `c` carries what this scheme needs.
    pub fn available(self, c: &Corpus) -> bool {
        match self {
            SchemeKind::Column => c.column_of().is_some(),
            SchemeKind::Label => c.labels().is_some(),
            SchemeKind::LeafRank => c.tree().is_some(),
            _ => true,
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::validation(format!("unknown tag scheme {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TagScheme {
    pub kind: SchemeKind,
    pub ilcp_mode: IlcpMode,
}

impl From<SchemeKind> for TagScheme {
    fn from(kind: SchemeKind) -> Self {
        TagScheme {
            kind,
            ilcp_mode: IlcpMode::default(),
        }
    }
}

/// Dense label codes by first appearance in document order, with the label
/// string for each code.
pub fn label_codes<S: AsRef<str>>(labels: &[S]) -> (Vec<u32>, Vec<String>) {
    let mut code_of: HashMap<&str, u32> = HashMap::new();
    let mut names = Vec::new();
    let codes = labels
        .iter()
        .map(|l| {
            let l = l.as_ref();
            *code_of.entry(l).or_insert_with(|| {
                names.push(l.to_string());
                (names.len() - 1) as u32
            })
        })
        .collect();
    (codes, names)
}

fn per_document<F>(c: &Corpus, mut f: F) -> PositionTags
where
    F: FnMut(usize) -> Tag,
{
    let doc_of = c.doc_ids();
    doc_of.iter().map(|&d| f(d)).collect()
}

/// Materializes the tags of `scheme` for every position of `c`.
pub fn assign_tags(c: &Corpus, ix: &SuffixIndex, scheme: TagScheme) -> Result<PositionTags> {
    if ix.len() != c.len() {
        return Err(Error::LengthMismatch {
            expected: c.len(),
            actual: ix.len(),
        });
    }
    let tags = match scheme.kind {
        SchemeKind::Document => per_document(c, |d| d as Tag),
        SchemeKind::Column => {
            let cols = c
                .column_of()
                .ok_or_else(|| Error::validation("column scheme requires an alignment input"))?;
            cols.iter().map(|&x| x as Tag).collect()
        }
        SchemeKind::Label => {
            let labels = c
                .labels()
                .ok_or_else(|| Error::validation("label scheme requires document labels"))?;
            let (codes, _) = label_codes(labels);
            per_document(c, |d| codes[d] as Tag)
        }
        SchemeKind::LeafRank => {
            let tree = c
                .tree()
                .ok_or_else(|| Error::validation("leaf_rank scheme requires a tree"))?;
            let ranks = leaf_ranks(tree, c.tree_keys())?;
            per_document(c, |d| ranks[d] as Tag)
        }
        SchemeKind::EndLcp => end_lcp_with_index(c, ix),
        SchemeKind::Ilcp => ilcp_values_with(c, scheme.ilcp_mode),
        SchemeKind::Plcp => ix.plcp().into_iter().map(|v| v as Tag).collect(),
        SchemeKind::Position => (0..c.len()).map(|p| p as Tag).collect(),
    };
    Ok(tags)
}

/// Symmetric ILCP: for each position, the longest common prefix its suffix
/// shares with any other suffix of the same document.
pub fn ilcp_values(c: &Corpus) -> PositionTags {
    ilcp_values_with(c, IlcpMode::Symmetric)
}

pub fn ilcp_values_with(c: &Corpus, mode: IlcpMode) -> PositionTags {
    let mut tags = vec![0; c.len()];
    for d in 0..c.doc_count() {
        let range = c.doc_range(d);
        let doc = &c.text()[range.clone()];
        // The document's sentinel is unique within it, so the plain suffix
        // order of the document string is the truncated-suffix order.
        let sa = suffix_array(doc);
        let isa = inverse(&sa);
        let lcp = lcp_kasai(doc, &sa, &isa);
        for (r, &off) in sa.iter().enumerate() {
            let before = lcp[r];
            let after = lcp.get(r + 1).copied().unwrap_or(0);
            tags[range.start + off] = match mode {
                IlcpMode::Symmetric => before.max(after),
                IlcpMode::Predecessor => before,
            } as Tag;
        }
    }
    PositionTags { tags }
}

/// End-LCP: for each position, the longest common prefix its suffix shares
/// with any other suffix, both cut at the end of their own documents.
pub fn end_lcp_values(c: &Corpus) -> Result<PositionTags> {
    let ix = build_index(c)?;
    Ok(end_lcp_with_index(c, &ix))
}

/// Cutting both suffixes at their document ends caps their common prefix at
/// the remaining length of either one, and the two caps coincide whenever
/// the cap binds. So the truncated maximum is the full-suffix maximum over
/// the SA neighbours, capped by the position's own remaining length.
pub fn end_lcp_with_index(c: &Corpus, ix: &SuffixIndex) -> PositionTags {
    let n = c.len();
    let mut tags = vec![0; n];
    for d in 0..c.doc_count() {
        let range = c.doc_range(d);
        for p in range.clone() {
            let r = ix.isa[p];
            let best = ix.lcp[r].max(ix.lcp.get(r + 1).copied().unwrap_or(0));
            tags[p] = best.min(range.end - p) as Tag;
        }
    }
    PositionTags { tags }
}

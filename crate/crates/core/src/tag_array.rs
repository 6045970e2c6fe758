//! Tag arrays in BWT order and their run-length / differential encodings.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::locality::{PositionTags, Tag};
use crate::suffix::{count_runs, SuffixIndex};

/// Which text position a BWT row's tag is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TagAttach {
    /// The first character of the row's suffix, `sa[i]`.
    #[default]
    SuffixStart,
    /// The BWT character itself, `(sa[i] + n - 1) mod n`.
    PrecedingChar,
}

/// Tags permuted into BWT order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagArray {
    pub values: Vec<Tag>,
}

impl TagArray {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks `values[i] == tags[sa[i]]` against the given index.
    pub fn is_composition_of(&self, ix: &SuffixIndex, t: &PositionTags) -> bool {
        self.len() == ix.len()
            && t.len() == ix.len()
            && ix
                .sa
                .iter()
                .zip(&self.values)
                .all(|(&p, &v)| t.tags[p] == v)
    }
}

pub fn to_bwt_order(ix: &SuffixIndex, t: &PositionTags) -> Result<TagArray> {
    to_bwt_order_with(ix, t, TagAttach::SuffixStart)
}

pub fn to_bwt_order_with(
    ix: &SuffixIndex,
    t: &PositionTags,
    attach: TagAttach,
) -> Result<TagArray> {
    let n = ix.len();
    if t.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: t.len(),
        });
    }
    let values = ix
        .sa
        .iter()
        .map(|&p| match attach {
            TagAttach::SuffixStart => t.tags[p],
            TagAttach::PrecedingChar => t.tags[(p + n - 1) % n],
        })
        .collect();
    Ok(TagArray { values })
}

/// Canonical run-length encoding with a prefix-sum index over run ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunLengthTagArray {
    runs: Vec<(Tag, u32)>,
    // ends[k] = sum of the lengths of runs 0..=k
    ends: Vec<usize>,
}

impl RunLengthTagArray {
    /// Builds from explicit runs, checking canonical form.
    pub fn from_runs(runs: Vec<(Tag, u32)>) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::validation("run-length array needs at least one run"));
        }
        if runs.iter().any(|&(_, len)| len == 0) {
            return Err(Error::validation("run lengths must be positive"));
        }
        if runs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::validation("adjacent runs must have distinct values"));
        }
        let mut ends = Vec::with_capacity(runs.len());
        let mut total = 0usize;
        for &(_, len) in &runs {
            total += len as usize;
            ends.push(total);
        }
        Ok(RunLengthTagArray { runs, ends })
    }

    pub fn runs(&self) -> &[(Tag, u32)] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    pub fn len(&self) -> usize {
        self.ends.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the run covering row `i`.
    fn run_at(&self, i: usize) -> usize {
        self.ends.partition_point(|&e| e <= i)
    }

    pub fn get(&self, i: usize) -> Option<Tag> {
        (i < self.len()).then(|| self.runs[self.run_at(i)].0)
    }

    /// Sorted distinct values in rows `[lo, hi)`, visiting only the runs
    /// that overlap the interval.
    pub fn distinct_tags(&self, lo: usize, hi: usize) -> Result<Vec<Tag>> {
        let n = self.len();
        if lo >= hi || hi > n {
            return Err(Error::Range { lo, hi, len: n });
        }
        let first = self.run_at(lo);
        let last = self.run_at(hi - 1);
        let set: BTreeSet<Tag> = self.runs[first..=last].iter().map(|&(v, _)| v).collect();
        Ok(set.into_iter().collect())
    }

    pub fn decode(&self) -> Vec<Tag> {
        rle_decode(self)
    }
}

pub fn rle_encode(values: &[Tag]) -> Result<RunLengthTagArray> {
    if values.is_empty() {
        return Err(Error::validation(
            "cannot run-length encode an empty sequence",
        ));
    }
    let mut runs: Vec<(Tag, u32)> = Vec::new();
    for &v in values {
        match runs.last_mut() {
            Some((last, len)) if *last == v && *len < u32::MAX => *len += 1,
            Some((last, _)) if *last == v => {
                return Err(Error::validation("run longer than u32::MAX"));
            }
            _ => runs.push((v, 1)),
        }
    }
    RunLengthTagArray::from_runs(runs)
}

pub fn rle_decode(r: &RunLengthTagArray) -> Vec<Tag> {
    let mut out = Vec::with_capacity(r.len());
    for &(v, len) in &r.runs {
        out.extend(std::iter::repeat_n(v, len as usize));
    }
    out
}

/// First value verbatim, then successive differences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffArray {
    pub first: Tag,
    pub deltas: Vec<Tag>,
}

impl DiffArray {
    /// The differences laid out row by row, first value at row 0.
    pub fn as_column(&self) -> Vec<Tag> {
        std::iter::once(self.first)
            .chain(self.deltas.iter().copied())
            .collect()
    }
}

pub fn diff_encode(values: &[Tag]) -> Result<DiffArray> {
    let (&first, _) = values
        .split_first()
        .ok_or_else(|| Error::validation("cannot difference-encode an empty sequence"))?;
    let deltas = values.windows(2).map(|w| w[1].wrapping_sub(w[0])).collect();
    Ok(DiffArray { first, deltas })
}

pub fn diff_decode(d: &DiffArray) -> Vec<Tag> {
    let mut out = Vec::with_capacity(d.deltas.len() + 1);
    let mut acc = d.first;
    out.push(acc);
    for &delta in &d.deltas {
        acc = acc.wrapping_add(delta);
        out.push(acc);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStats {
    pub n: usize,
    pub run_count: usize,
    pub distinct: usize,
    pub mean_abs_delta: f64,
    /// Fraction of adjacent pairs with equal values; 1 for n < 2.
    pub zero_delta_fraction: f64,
}

impl RunStats {
    pub fn runs_per_symbol(&self) -> f64 {
        self.run_count as f64 / self.n.max(1) as f64
    }
}

pub fn run_stats(values: &[Tag]) -> RunStats {
    let n = values.len();
    let run_count = count_runs(values);
    let distinct = values.iter().collect::<BTreeSet<_>>().len();
    let (mean_abs_delta, zero_delta_fraction) = if n < 2 {
        (0.0, 1.0)
    } else {
        let pairs = (n - 1) as f64;
        let sum: f64 = values
            .windows(2)
            .map(|w| (w[1] as i128 - w[0] as i128).unsigned_abs() as f64)
            .sum();
        let zeros = (n - 1) - (run_count - 1);
        (sum / pairs, zeros as f64 / pairs)
    };
    RunStats {
        n,
        run_count,
        distinct,
        mean_abs_delta,
        zero_delta_fraction,
    }
}

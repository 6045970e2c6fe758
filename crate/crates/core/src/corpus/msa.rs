use super::{Corpus, Sentinels};
use crate::error::{Error, Result};

/// A gapped multiple alignment; row `i` de-gaps to document `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alignment {
    pub rows: Vec<Vec<u8>>,
    pub names: Vec<String>,
    pub width: usize,
    pub gap: u8,
}

/// Parses an alignment given either as aligned FASTA or as one row per line.
///
/// Rows are kept verbatim; trailing `\r` and surrounding blank lines are
/// dropped. Rows without FASTA headers are named `doc0`, `doc1`, ...
pub fn parse_msa(msa_text: &str, gap: u8) -> Result<Alignment> {
    let is_fasta = msa_text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with('>'));

    let (names, rows): (Vec<String>, Vec<Vec<u8>>) = if is_fasta {
        let records = super::parse_fasta(msa_text)?;
        records.into_iter().map(|d| (d.name, d.body)).unzip()
    } else {
        msa_text
            .lines()
            .map(|l| l.trim_end_matches('\r').trim())
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(i, l)| (format!("doc{i}"), l.as_bytes().to_vec()))
            .unzip()
    };

    if rows.is_empty() {
        return Err(Error::format("alignment has no rows"));
    }
    let width = rows[0].len();
    if width == 0 {
        return Err(Error::format("alignment rows are empty"));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != width) {
        return Err(Error::format(format!(
            "ragged alignment: row {i} has length {}, expected {width}",
            r.len()
        )));
    }
    Ok(Alignment {
        rows,
        names,
        width,
        gap,
    })
}

impl Alignment {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    fn last_residue(&self, row: &[u8]) -> Option<u8> {
        row.iter().rev().copied().find(|&b| b != self.gap)
    }

    /// True when every row already closes with a sentinel byte.
    pub fn is_terminated(&self, sentinels: Sentinels) -> bool {
        self.rows.iter().all(|r| {
            self.last_residue(r)
                .is_some_and(|b| sentinels.is_sentinel(b))
        })
    }

    /// Appends one column holding each row's sentinel.
    pub fn with_sentinel_column(mut self, sentinels: Sentinels) -> Self {
        let count = self.rows.len();
        for (i, row) in self.rows.iter_mut().enumerate() {
            row.push(sentinels.closing(i, count));
        }
        self.width += 1;
        self
    }
}

/// Concatenates the de-gapped rows and records every character's column.
pub fn corpus_from_alignment(a: &Alignment, sentinels: Sentinels) -> Result<Corpus> {
    let count = a.rows.len();
    let mut text = Vec::new();
    let mut columns = Vec::new();
    let mut starts = Vec::with_capacity(count);
    for (i, row) in a.rows.iter().enumerate() {
        let expected = sentinels.closing(i, count);
        match a.last_residue(row) {
            Some(b) if b == expected => {}
            _ => {
                return Err(Error::format(format!(
                    "alignment row {i} must end with sentinel {:?}",
                    expected as char
                )))
            }
        }
        starts.push(text.len());
        for (col, &b) in row.iter().enumerate() {
            if b == a.gap {
                continue;
            }
            // The closing sentinel is the last residue, so any sentinel
            // followed by more residues sits mid-row.
            if sentinels.is_sentinel(b) && a.last_residue(&row[col + 1..]).is_some() {
                return Err(Error::format(format!(
                    "alignment row {i}: sentinel {:?} in the middle of the row at column {col}",
                    b as char
                )));
            }
            let col = u32::try_from(col)
                .map_err(|_| Error::validation("alignment wider than u32 columns"))?;
            text.push(b);
            columns.push(col);
        }
    }
    let mut c = Corpus::from_parts(text, starts, a.names.clone(), sentinels, None)?;
    c.set_columns(columns);
    c.validate()?;
    Ok(c)
}

/// Re-inserts gaps using the per-position column map, rebuilding the rows of
/// an alignment of the given width.
pub fn rows_from_columns(c: &Corpus, width: usize, gap: u8) -> Option<Vec<Vec<u8>>> {
    let cols = c.column_of()?;
    let mut rows = Vec::with_capacity(c.doc_count());
    for id in 0..c.doc_count() {
        let mut row = vec![gap; width];
        for p in c.doc_range(id) {
            *row.get_mut(cols[p] as usize)? = c.text()[p];
        }
        rows.push(row);
    }
    Some(rows)
}

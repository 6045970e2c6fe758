//! Suffix array, inverse, BWT, LCP and document array over a corpus.
//!
//! Suffixes are ordered as plain byte strings: a suffix that is a proper
//! prefix of another sorts first. The BWT is read cyclically,
//! `bwt[i] = text[(sa[i] + n - 1) mod n]`.

use crate::corpus::Corpus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixIndex {
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub bwt: Vec<u8>,
    pub lcp: Vec<usize>,
    pub da: Vec<usize>,
}

impl SuffixIndex {
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    /// Permuted LCP: `plcp[sa[i]] = lcp[i]`.
    pub fn plcp(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (i, &p) in self.sa.iter().enumerate() {
            out[p] = self.lcp[i];
        }
        out
    }

    /// Row whose suffix is the whole text; the starting point for inversion.
    pub fn primary_row(&self) -> usize {
        self.isa[0]
    }

    /// Number of maximal runs of equal bytes in the BWT.
    pub fn bwt_runs(&self) -> usize {
        count_runs(&self.bwt)
    }
}

pub(crate) fn count_runs<T: PartialEq>(xs: &[T]) -> usize {
    if xs.is_empty() {
        return 0;
    }
    1 + xs.windows(2).filter(|w| w[0] != w[1]).count()
}

pub fn build_index(c: &Corpus) -> Result<SuffixIndex> {
    let text = c.text();
    if text.is_empty() {
        return Err(Error::validation("cannot index an empty text"));
    }
    let sa = suffix_array(text);
    let isa = inverse(&sa);
    let lcp = lcp_kasai(text, &sa, &isa);
    let bwt = bwt_from_sa(text, &sa);
    let doc_of = c.doc_ids();
    let da = sa.iter().map(|&p| doc_of[p]).collect();
    Ok(SuffixIndex {
        sa,
        isa,
        bwt,
        lcp,
        da,
    })
}

pub fn inverse(sa: &[usize]) -> Vec<usize> {
    let mut isa = vec![0; sa.len()];
    for (i, &p) in sa.iter().enumerate() {
        isa[p] = i;
    }
    isa
}

pub fn bwt_from_sa(text: &[u8], sa: &[usize]) -> Vec<u8> {
    let n = text.len();
    sa.iter().map(|&p| text[(p + n - 1) % n]).collect()
}

/// Suffix array by prefix doubling with two stable counting-sort passes
/// per round, O(n log n).
pub fn suffix_array(text: &[u8]) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    let mut rank: Vec<usize> = text.iter().map(|&b| b as usize).collect();
    let mut sa: Vec<usize> = (0..n).collect();
    sa.sort_by_key(|&i| text[i]);
    let mut next_rank = vec![0usize; n];
    let mut by_second = vec![0usize; n];
    let mut counts = vec![0usize; n.max(256) + 1];

    // Ranks start as byte values; compact them so the bucket count is bounded.
    let mut classes = 0;
    for i in 0..n {
        if i > 0 && text[sa[i]] != text[sa[i - 1]] {
            classes += 1;
        }
        next_rank[sa[i]] = classes;
    }
    std::mem::swap(&mut rank, &mut next_rank);
    if classes + 1 == n {
        return sa;
    }

    let mut k = 1;
    loop {
        // Order by the second key: suffixes shorter than k+1 have none and
        // come first, in increasing position (their first keys all differ).
        let mut j = 0;
        for i in n - k..n {
            by_second[j] = i;
            j += 1;
        }
        for &p in &sa {
            if p >= k {
                by_second[j] = p - k;
                j += 1;
            }
        }

        // Stable counting sort by the first key.
        counts.iter_mut().for_each(|c| *c = 0);
        for &r in &rank {
            counts[r + 1] += 1;
        }
        for b in 1..counts.len() {
            counts[b] += counts[b - 1];
        }
        for &p in &by_second {
            let slot = &mut counts[rank[p]];
            sa[*slot] = p;
            *slot += 1;
        }

        let key = |p: usize| (rank[p], if p + k < n { rank[p + k] as isize } else { -1 });
        let mut classes = 0;
        next_rank[sa[0]] = 0;
        for i in 1..n {
            if key(sa[i]) != key(sa[i - 1]) {
                classes += 1;
            }
            next_rank[sa[i]] = classes;
        }
        std::mem::swap(&mut rank, &mut next_rank);
        if classes + 1 == n {
            return sa;
        }
        k *= 2;
    }
}

/// Kasai et al. linear-time LCP; `lcp[0] = 0`.
pub fn lcp_kasai(text: &[u8], sa: &[usize], isa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = isa[p];
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1];
        while p + h < n && q + h < n && text[p + h] == text[q + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// Recovers the text from its BWT by LF-mapping, starting at `primary_row`
/// (the row of the suffix at position 0).
pub fn invert_bwt(bwt: &[u8], primary_row: usize) -> Result<Vec<u8>> {
    let n = bwt.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if primary_row >= n {
        return Err(Error::Integrity(format!(
            "primary row {primary_row} outside BWT of length {n}"
        )));
    }
    let mut c = [0usize; 257];
    for &b in bwt {
        c[b as usize + 1] += 1;
    }
    for s in 1..257 {
        c[s] += c[s - 1];
    }
    let mut seen = [0usize; 256];
    let lf: Vec<usize> = bwt
        .iter()
        .map(|&b| {
            let r = c[b as usize] + seen[b as usize];
            seen[b as usize] += 1;
            r
        })
        .collect();

    let mut text = vec![0u8; n];
    let mut row = primary_row;
    for k in (0..n).rev() {
        if k + 1 < n && row == primary_row {
            return Err(Error::Integrity(format!(
                "LF cycle closes after {} of {n} steps",
                n - 1 - k
            )));
        }
        text[k] = bwt[row];
        row = lf[row];
    }
    if row != primary_row {
        return Err(Error::Integrity(
            "LF walk does not return to the primary row".into(),
        ));
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_from_documents, documents_from_bodies, Sentinels};

    fn toy() -> Corpus {
        let docs =
            documents_from_bodies(&["GATTACAT", "AGATACAT", "GATACAT", "GATTAGAT", "GATTAGATA"]);
        corpus_from_documents(&docs, Sentinels::default()).unwrap()
    }

    #[test]
    fn toy_rows_0_to_5() {
        let ix = build_index(&toy()).unwrap();
        assert_eq!(&ix.sa[..6], &[44, 8, 17, 25, 34, 43]);
        assert_eq!(&ix.bwt[..6], b"ATTTTT");
        assert_eq!(&ix.lcp[..6], &[0, 0, 1, 4, 9, 0]);
        assert_eq!(&ix.da[..6], &[4, 0, 1, 2, 3, 4]);
    }

    #[test]
    fn toy_plcp_document_0() {
        let ix = build_index(&toy()).unwrap();
        let plcp = ix.plcp();
        assert_eq!(&plcp[..9], &[3, 2, 1, 2, 1, 0, 1, 0, 0]);
        assert_eq!(plcp[ix.sa[0]], 0);
    }

    #[test]
    fn two_suffixes() {
        let c =
            corpus_from_documents(&documents_from_bodies(&["A"]), Sentinels::default()).unwrap();
        let ix = build_index(&c).unwrap();
        assert_eq!(ix.sa, vec![1, 0]);
        assert_eq!(ix.bwt, b"A#");
        assert_eq!(ix.lcp, vec![0, 0]);
        assert_eq!(invert_bwt(&ix.bwt, ix.primary_row()).unwrap(), b"A#");
    }

    #[test]
    fn toy_inverts() {
        let c = toy();
        let ix = build_index(&c).unwrap();
        assert_eq!(invert_bwt(&ix.bwt, ix.primary_row()).unwrap(), c.text());
    }

    #[test]
    fn short_cycle_is_integrity_error() {
        // "AA##" cycles after two steps from row 0 under LF.
        let err = invert_bwt(b"#A#A", 0).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)));
        assert!(invert_bwt(b"AB", 5).is_err());
    }

    #[test]
    fn degenerate_texts() {
        assert_eq!(suffix_array(b""), Vec::<usize>::new());
        assert_eq!(suffix_array(b"a"), vec![0]);
        assert_eq!(suffix_array(b"aaaa"), vec![3, 2, 1, 0]);
        assert_eq!(suffix_array(b"banana"), vec![5, 3, 1, 0, 4, 2]);
    }
}

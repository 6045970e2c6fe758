//! Backward search over the BWT and maximal exact matches.

use crate::suffix::SuffixIndex;

const BLOCK: usize = 64;
const ABSENT: u16 = u16::MAX;

/// Half-open range of BWT rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Interval { lo, hi }
    }

    pub fn width(&self) -> usize {
        self.hi.saturating_sub(self.lo)
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }

    fn empty() -> Self {
        Interval { lo: 0, hi: 0 }
    }
}

/// Symbol counts `C` plus occurrence counts sampled every 64 rows.
#[derive(Debug, Clone)]
pub struct RankIndex {
    bwt: Vec<u8>,
    code: [u16; 256],
    sigma: usize,
    /// `c[b]` = number of BWT bytes smaller than `b`; `c[256] = n`.
    c: Vec<usize>,
    /// `samples[k * sigma + code]` = occurrences of the symbol in `bwt[..k * BLOCK]`.
    samples: Vec<u32>,
}

impl RankIndex {
    pub fn new(bwt: &[u8]) -> Self {
        let mut code = [ABSENT; 256];
        let mut freq = [0usize; 256];
        for &b in bwt {
            freq[b as usize] += 1;
        }
        let mut sigma = 0;
        for b in 0..256 {
            if freq[b] > 0 {
                code[b] = sigma as u16;
                sigma += 1;
            }
        }
        let mut c = vec![0usize; 257];
        for b in 0..256 {
            c[b + 1] = c[b] + freq[b];
        }
        let blocks = bwt.len() / BLOCK + 1;
        let mut samples = vec![0u32; blocks * sigma];
        let mut running = vec![0u32; sigma];
        for (i, &b) in bwt.iter().enumerate() {
            if i % BLOCK == 0 {
                samples[(i / BLOCK) * sigma..(i / BLOCK + 1) * sigma].copy_from_slice(&running);
            }
            running[code[b as usize] as usize] += 1;
        }
        if bwt.len().is_multiple_of(BLOCK) {
            let k = bwt.len() / BLOCK;
            samples[k * sigma..(k + 1) * sigma].copy_from_slice(&running);
        }
        RankIndex {
            bwt: bwt.to_vec(),
            code,
            sigma,
            c,
            samples,
        }
    }

    pub fn len(&self) -> usize {
        self.bwt.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bwt.is_empty()
    }

    /// Number of BWT bytes strictly smaller than `s`.
    pub fn c(&self, s: u8) -> usize {
        self.c[s as usize]
    }

    pub fn count(&self, s: u8) -> usize {
        self.c[s as usize + 1] - self.c[s as usize]
    }

    /// Occurrences of `s` in `bwt[..i]`.
    pub fn occ(&self, s: u8, i: usize) -> usize {
        let code = self.code[s as usize];
        if code == ABSENT {
            return 0;
        }
        let k = i / BLOCK;
        let base = self.samples[k * self.sigma + code as usize] as usize;
        base + self.bwt[k * BLOCK..i].iter().filter(|&&b| b == s).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemMatch {
    pub p_start: usize,
    pub p_end: usize,
    pub interval: Interval,
}

impl MemMatch {
    pub fn len(&self) -> usize {
        self.p_end - self.p_start
    }

    pub fn is_empty(&self) -> bool {
        self.p_end == self.p_start
    }
}

/// Default minimum MEM length.
pub const DEFAULT_MIN_MEM_LEN: usize = 10;

/// Backward-search index over a text and its suffix index.
///
/// The full suffix array is kept, so intervals locate directly and forward
/// extension narrows an interval by binary search on the next character.
#[derive(Debug, Clone)]
pub struct FmIndex<'a> {
    text: &'a [u8],
    sa: &'a [usize],
    rank: RankIndex,
    primary_row: usize,
}

impl<'a> FmIndex<'a> {
    pub fn new(text: &'a [u8], ix: &'a SuffixIndex) -> Self {
        assert_eq!(text.len(), ix.len(), "text and index disagree on length");
        FmIndex {
            text,
            sa: &ix.sa,
            rank: RankIndex::new(&ix.bwt),
            primary_row: ix.primary_row(),
        }
    }

    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn rank(&self) -> &RankIndex {
        &self.rank
    }

    pub fn full(&self) -> Interval {
        Interval::new(0, self.len())
    }

    /// Text positions of the suffixes in `iv`.
    pub fn locate(&self, iv: Interval) -> &'a [usize] {
        &self.sa[iv.lo..iv.hi]
    }

    /// Interval of `s·X` given the interval of `X`. The full interval stands
    /// for the empty string; symbols absent from the text give an empty
    /// interval.
    pub fn backward_extend(&self, iv: Interval, s: u8) -> Interval {
        let matched = if iv == self.full() { 0 } else { 1 };
        self.extend_left(iv, matched, s)
    }

    /// Backward step knowing whether `X` is empty (`matched == 0`).
    ///
    /// The BWT row of the whole text holds the text's last byte by wrap-around
    /// rather than a real left context, so for non-empty `X` that row is left
    /// out of the count and the one-byte suffix, which sorts first among
    /// suffixes starting with its byte, is skipped.
    fn extend_left(&self, iv: Interval, matched: usize, s: u8) -> Interval {
        if iv.is_empty() || matched >= self.len() {
            return Interval::empty();
        }
        let c = self.rank.c(s);
        if matched == 0 {
            return Interval::new(c, c + self.rank.count(s));
        }
        let wraps = self.text[self.len() - 1] == s;
        let adjust = |i: usize| {
            let occ = self.rank.occ(s, i);
            if wraps {
                c + 1 + occ - usize::from(self.primary_row < i)
            } else {
                c + occ
            }
        };
        let out = Interval::new(adjust(iv.lo), adjust(iv.hi));
        if out.is_empty() {
            Interval::empty()
        } else {
            out
        }
    }

    /// Interval of `X·s` given the interval of `X` with `|X| = depth`.
    fn extend_right(&self, iv: Interval, depth: usize, s: u8) -> Interval {
        let rows = &self.sa[iv.lo..iv.hi];
        let next = |p: usize| self.text.get(p + depth).copied();
        let lo = rows.partition_point(|&p| next(p) < Some(s));
        let hi = rows.partition_point(|&p| next(p) <= Some(s));
        if lo == hi {
            Interval::empty()
        } else {
            Interval::new(iv.lo + lo, iv.lo + hi)
        }
    }

    pub fn backward_search(&self, pattern: &[u8]) -> Interval {
        let mut iv = self.full();
        for (matched, &s) in pattern.iter().rev().enumerate() {
            iv = self.extend_left(iv, matched, s);
            if iv.is_empty() {
                return Interval::empty();
            }
        }
        iv
    }

    pub fn count(&self, pattern: &[u8]) -> usize {
        self.backward_search(pattern).width()
    }

    /// All maximal exact matches of length at least `min_len` (values below
    /// 1 are treated as 1), sorted by pattern start.
    ///
    /// For each candidate start `x` the window `pattern[x..x + min_len]` is
    /// searched backward first. If it fails after reaching `j - 1`, no long
    /// match can start anywhere in `x..j` and the scan jumps to `j`.
    /// Otherwise the match is extended rightward as far as it occurs and kept
    /// if it cannot be extended one step to the left.
    pub fn find_mems(&self, pattern: &[u8], min_len: usize) -> Vec<MemMatch> {
        let min_len = min_len.max(1);
        let m = pattern.len();
        let mut out = Vec::new();
        let mut x = 0;
        while x + min_len <= m {
            let mut iv = self.full();
            let mut j = x + min_len;
            while j > x {
                let next = self.extend_left(iv, x + min_len - j, pattern[j - 1]);
                if next.is_empty() {
                    break;
                }
                iv = next;
                j -= 1;
            }
            if j > x {
                x = j;
                continue;
            }
            let mut e = x + min_len;
            while e < m {
                let next = self.extend_right(iv, e - x, pattern[e]);
                if next.is_empty() {
                    break;
                }
                iv = next;
                e += 1;
            }
            if x == 0 || self.extend_left(iv, e - x, pattern[x - 1]).is_empty() {
                out.push(MemMatch {
                    p_start: x,
                    p_end: e,
                    interval: iv,
                });
            }
            x += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_from_documents, documents_from_bodies, Corpus, Sentinels};
    use crate::suffix::build_index;

    fn toy() -> Corpus {
        let docs =
            documents_from_bodies(&["GATTACAT", "AGATACAT", "GATACAT", "GATTAGAT", "GATTAGATA"]);
        corpus_from_documents(&docs, Sentinels::default()).unwrap()
    }

    #[test]
    fn rank_index_counts() {
        let bwt = b"ATTTTTTTTTT$CCCGGGGGGGAAAAAA$#$$AAAAATAATTAAA";
        let r = RankIndex::new(bwt);
        let total: usize = (0..=255u8).map(|s| r.occ(s, bwt.len())).sum();
        assert_eq!(total, bwt.len());
        for i in 0..=bwt.len() {
            for &s in b"#$ACGTZ" {
                let naive = bwt[..i].iter().filter(|&&b| b == s).count();
                assert_eq!(r.occ(s, i), naive);
            }
        }
        assert_eq!(r.c(b'#'), 0);
        assert_eq!(r.c(b'$'), 1);
        assert_eq!(r.c(b'A'), 5);
    }

    #[test]
    fn rank_index_block_boundary() {
        let bwt: Vec<u8> = (0..128)
            .map(|i| if i % 3 == 0 { b'A' } else { b'C' })
            .collect();
        let r = RankIndex::new(&bwt);
        assert_eq!(r.occ(b'A', 128), 43);
        assert_eq!(r.occ(b'A', 64), 22);
    }

    #[test]
    fn toy_backward_steps() {
        let c = toy();
        let ix = build_index(&c).unwrap();
        let fm = FmIndex::new(c.text(), &ix);
        let iv = fm.backward_extend(fm.full(), b'#');
        assert_eq!(iv, Interval::new(0, 1));
        assert!(fm.backward_extend(iv, b'Z').is_empty());
        assert_eq!(fm.backward_search(b"AT").width(), 10);
        assert_eq!(fm.backward_search(b""), fm.full());
        assert_eq!(fm.backward_search(b"GATTACAT").width(), 1);
        // '#' only ends the text, so nothing follows it.
        assert!(fm.backward_search(b"#G").is_empty());
        assert_eq!(fm.backward_search(b"A#").width(), 1);
    }

    #[test]
    fn toy_mems() {
        let c = toy();
        let ix = build_index(&c).unwrap();
        let fm = FmIndex::new(c.text(), &ix);
        let mems = fm.find_mems(b"GATTAGAT", 4);
        let whole = mems
            .iter()
            .find(|m| m.p_start == 0 && m.p_end == 8)
            .expect("whole-pattern MEM");
        assert_eq!(whole.interval.width(), 2);
        let mut occ = fm.locate(whole.interval).to_vec();
        occ.sort();
        assert_eq!(occ, vec![26, 35]);

        assert!(fm.find_mems(b"XXXX", 1).is_empty());
        let mems = fm.find_mems(b"GATTACAT", 8);
        assert_eq!(mems.len(), 1);
        assert_eq!((mems[0].p_start, mems[0].p_end), (0, 8));
    }

    #[test]
    fn repetitive_text_without_wrap_false_positive() {
        // Every suffix starts with 'A' except the final one.
        let c =
            corpus_from_documents(&documents_from_bodies(&["AAAA"]), Sentinels::default()).unwrap();
        let ix = build_index(&c).unwrap();
        let fm = FmIndex::new(c.text(), &ix);
        assert_eq!(fm.count(b"AA"), 3);
        assert_eq!(fm.count(b"AAAAA"), 0);
        assert_eq!(fm.count(b"#A"), 0);
        let mems = fm.find_mems(b"AAAAAA", 2);
        assert_eq!(mems.len(), 3);
        assert!(mems.iter().all(|m| m.len() == 4));
    }
}

//! Brute-force reference implementations. Nothing here calls into the
//! library's construction or search code; only plain data types are shared.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use tagix_core::corpus::{corpus_from_documents, documents_from_bodies, Corpus, Sentinels};

/// Sorts all suffixes as byte slices.
pub fn naive_sa(text: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..text.len()).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    sa
}

pub fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn naive_lcp(text: &[u8], sa: &[usize]) -> Vec<usize> {
    (0..sa.len())
        .map(|i| {
            if i == 0 {
                0
            } else {
                common_prefix(&text[sa[i - 1]..], &text[sa[i]..])
            }
        })
        .collect()
}

pub fn naive_bwt(text: &[u8], sa: &[usize]) -> Vec<u8> {
    let n = text.len();
    sa.iter().map(|&p| text[(p + n - 1) % n]).collect()
}

/// Per-position document id and document end, by linear scan.
fn doc_bounds(c: &Corpus) -> Vec<(usize, usize)> {
    let text = c.text();
    let s = c.sentinels();
    let mut out = Vec::with_capacity(text.len());
    let mut start = 0;
    let mut doc = 0;
    for (i, &b) in text.iter().enumerate() {
        if s.is_sentinel(b) {
            for _ in start..=i {
                out.push((doc, i + 1));
            }
            start = i + 1;
            doc += 1;
        }
    }
    out
}

pub fn naive_doc_of(c: &Corpus) -> Vec<usize> {
    doc_bounds(c).into_iter().map(|(d, _)| d).collect()
}

/// All-pairs truncated LCP maximum.
pub fn naive_end_lcp(c: &Corpus) -> Vec<usize> {
    let text = c.text();
    let b = doc_bounds(c);
    let n = text.len();
    (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| q != p)
                .map(|q| common_prefix(&text[p..b[p].1], &text[q..b[q].1]))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Same-document truncated LCP maximum.
pub fn naive_ilcp(c: &Corpus) -> Vec<usize> {
    let text = c.text();
    let b = doc_bounds(c);
    let n = text.len();
    (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| q != p && b[q].0 == b[p].0)
                .map(|q| common_prefix(&text[p..b[p].1], &text[q..b[q].1]))
                .max()
                .unwrap_or(0)
        })
        .collect()
}

pub fn occurrences(text: &[u8], pat: &[u8]) -> Vec<usize> {
    if pat.is_empty() {
        return (0..text.len()).collect();
    }
    if pat.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pat.len())
        .filter(|&i| &text[i..i + pat.len()] == pat)
        .collect()
}

pub fn occurs(text: &[u8], pat: &[u8]) -> bool {
    pat.is_empty() || text.windows(pat.len()).any(|w| w == pat)
}

/// (start, end, occurrence count) of every maximal exact match of length at
/// least `min_len`, enumerating all pattern substrings.
pub fn naive_mems(text: &[u8], pattern: &[u8], min_len: usize) -> Vec<(usize, usize, usize)> {
    let m = pattern.len();
    let mut out = Vec::new();
    for s in 0..m {
        for e in s + min_len.max(1)..=m {
            let slice = &pattern[s..e];
            if !occurs(text, slice) {
                continue;
            }
            let left_max = s == 0 || !occurs(text, &pattern[s - 1..e]);
            let right_max = e == m || !occurs(text, &pattern[s..e + 1]);
            if left_max && right_max {
                out.push((s, e, occurrences(text, slice).len()));
            }
        }
    }
    out
}

/// Documents over ACGT with total length (sentinels included) at most
/// `max_total`.
pub fn random_corpus(rng: &mut ChaCha8Rng, max_total: usize, docs: (usize, usize)) -> Corpus {
    let d = rng.gen_range(docs.0..=docs.1);
    let budget = max_total - d;
    let mut bodies = Vec::with_capacity(d);
    let mut left = budget;
    let base: Vec<u8> = (0..budget / d)
        .map(|_| b"ACGT"[rng.gen_range(0..4)])
        .collect();
    for _ in 0..d {
        // Mutated copies of a shared base so documents overlap heavily.
        let len = rng.gen_range(0..=left.min(budget / d));
        left -= len;
        let body: Vec<u8> = (0..len)
            .map(|i| {
                if i < base.len() && rng.gen_bool(0.85) {
                    base[i]
                } else {
                    b"ACGT"[rng.gen_range(0..4)]
                }
            })
            .collect();
        bodies.push(body);
    }
    corpus_from_documents(&documents_from_bodies(&bodies), Sentinels::default()).unwrap()
}

/// A random pattern: either a mutated slice of the text or fresh bytes.
pub fn random_pattern(rng: &mut ChaCha8Rng, text: &[u8], max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(1..=max_len);
    if rng.gen_bool(0.7) && text.len() > 1 {
        let start = rng.gen_range(0..text.len());
        let mut p = text[start..(start + len).min(text.len())].to_vec();
        for b in p.iter_mut() {
            if rng.gen_bool(0.1) {
                *b = b"ACGT"[rng.gen_range(0..4)];
            }
        }
        if p.is_empty() {
            p.push(b'A');
        }
        p
    } else {
        (0..len).map(|_| b"ACGTN"[rng.gen_range(0..5)]).collect()
    }
}

/// Distinct values of `values[lo..hi]`, sorted.
pub fn scan_distinct(values: &[i64], lo: usize, hi: usize) -> Vec<i64> {
    let mut v = values[lo..hi].to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn run_count<T: PartialEq>(xs: &[T]) -> usize {
    if xs.is_empty() {
        0
    } else {
        1 + xs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

pub const TOY_MSA: &str = "-GATTACAT-$\nAGAT-ACAT-$\n-GAT-ACAT-$\n-GATTAGAT-$\n-GATTAGATA#\n";

/// Reference BWT-order table for the toy alignment: row, BWT byte,
/// column, end-LCP, ILCP, document, SA, LCP, SA delta, LCP delta.
pub const REFERENCE_BWT_TABLE: &str = "\
0 A 10 0 0 4 44 0 44 0
1 T 10 1 0 0 8 0 -32 0
2 T 10 1 0 1 17 1 9 1
3 T 10 1 0 2 25 4 8 3
4 T 10 1 0 3 34 9 9 5
5 T 9 1 1 4 43 0 9 -9
6 T 5 5 1 0 4 1 -39 1
7 T 5 5 1 1 13 5 9 4
8 T 5 5 1 2 21 8 8 3
9 T 5 4 1 3 30 1 9 -7
10 T 5 5 1 4 39 4 9 3
11 $ 0 1 1 1 9 5 -30 1
12 C 7 3 2 0 6 1 -3 -4
13 C 7 3 2 1 15 3 9 2
14 C 7 3 2 2 23 6 8 3
15 G 7 3 2 3 32 11 9 5
16 G 7 3 2 4 41 2 9 -9
17 G 2 7 2 1 11 3 -30 1
18 G 2 7 2 2 19 10 8 7
19 G 2 4 2 0 1 2 -18 -8
20 G 2 7 2 3 27 4 26 2
21 G 2 7 2 4 36 7 9 3
22 A 6 4 0 0 5 0 -31 -7
23 A 6 4 0 1 14 4 9 4
24 A 6 4 0 2 22 7 8 3
25 A 6 3 3 3 31 0 9 -7
26 A 6 4 3 4 40 3 9 3
27 A 1 8 0 1 10 4 -30 1
28 $ 1 8 0 2 18 11 8 7
29 # 1 5 0 0 0 3 -18 -8
30 $ 1 8 3 3 26 5 26 2
31 $ 1 8 3 4 35 8 9 3
32 A 8 2 1 0 7 0 -28 -8
33 A 8 2 1 1 16 2 9 2
34 A 8 2 1 2 24 5 8 3
35 A 8 2 1 3 33 10 9 5
36 A 8 2 2 4 42 1 9 -9
37 T 4 6 1 0 3 2 -39 1
38 A 3 6 1 1 12 6 9 4
39 A 3 6 1 2 20 9 8 3
40 T 4 5 1 3 29 2 9 -7
41 T 4 5 2 4 38 5 9 3
42 A 3 3 1 0 2 1 -36 -4
43 A 3 6 1 3 28 3 26 2
44 A 3 6 1 4 37 6 9 3
";

pub fn reference_table() -> Vec<Vec<String>> {
    REFERENCE_BWT_TABLE
        .lines()
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect()
}

/// The same table recomputed from scratch by sorting suffixes and scanning
/// all pairs. Column numbers come straight from the alignment rows.
pub fn oracle_table(msa: &str) -> Vec<Vec<String>> {
    let rows: Vec<&str> = msa.lines().filter(|l| !l.is_empty()).collect();
    let mut text = Vec::new();
    let mut column = Vec::new();
    let mut doc = Vec::new();
    let mut doc_end = Vec::new();
    for (d, row) in rows.iter().enumerate() {
        let start = text.len();
        for (col, b) in row.bytes().enumerate() {
            if b != b'-' {
                text.push(b);
                column.push(col);
                doc.push(d);
            }
        }
        doc_end.extend(std::iter::repeat_n(text.len(), text.len() - start));
    }
    let n = text.len();
    let sa = naive_sa(&text);
    let lcp = naive_lcp(&text, &sa);
    let cut = |p: usize| &text[p..doc_end[p]];
    let end_lcp = |p: usize| {
        (0..n)
            .filter(|&q| q != p)
            .map(|q| common_prefix(cut(p), cut(q)))
            .max()
            .unwrap_or(0)
    };
    let ilcp = |p: usize| {
        (0..n)
            .filter(|&q| q != p && doc[q] == doc[p])
            .map(|q| common_prefix(cut(p), cut(q)))
            .max()
            .unwrap_or(0)
    };
    (0..n)
        .map(|i| {
            let p = sa[i];
            let dsa = if i == 0 {
                p as i64
            } else {
                p as i64 - sa[i - 1] as i64
            };
            let dlcp = if i == 0 {
                lcp[0] as i64
            } else {
                lcp[i] as i64 - lcp[i - 1] as i64
            };
            vec![
                i.to_string(),
                (text[(p + n - 1) % n] as char).to_string(),
                column[p].to_string(),
                end_lcp(p).to_string(),
                ilcp(p).to_string(),
                doc[p].to_string(),
                p.to_string(),
                lcp[i].to_string(),
                dsa.to_string(),
                dlcp.to_string(),
            ]
        })
        .collect()
}

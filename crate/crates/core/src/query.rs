//! MEM tag reports and read classification.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fm::{FmIndex, Interval, MemMatch};
use crate::locality::Tag;
use crate::tag_array::RunLengthTagArray;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemTagEntry {
    pub p_start: usize,
    pub p_end: usize,
    pub interval: Interval,
    pub tags: Vec<Tag>,
}

pub type MemTagReport = Vec<MemTagEntry>;

fn check_lengths(fm: &FmIndex<'_>, tags: &RunLengthTagArray) -> Result<()> {
    if fm.len() != tags.len() {
        return Err(Error::LengthMismatch {
            expected: fm.len(),
            actual: tags.len(),
        });
    }
    Ok(())
}

fn entry(tags: &RunLengthTagArray, m: MemMatch) -> Result<MemTagEntry> {
    Ok(MemTagEntry {
        p_start: m.p_start,
        p_end: m.p_end,
        interval: m.interval,
        tags: tags.distinct_tags(m.interval.lo, m.interval.hi)?,
    })
}

/// One entry per MEM of `pattern`, carrying the distinct tags of its BWT
/// interval.
pub fn mem_tag_report(
    fm: &FmIndex<'_>,
    tags: &RunLengthTagArray,
    pattern: &[u8],
    min_len: usize,
) -> Result<MemTagReport> {
    check_lengths(fm, tags)?;
    fm.find_mems(pattern, min_len)
        .into_iter()
        .map(|m| entry(tags, m))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub name: String,
    /// `None` when the read has no MEM of sufficient length.
    pub verdict: Option<Tag>,
    /// Sum of the lengths of the MEMs whose tag set contains the tag.
    pub scores: BTreeMap<Tag, u64>,
}

impl Classification {
    pub fn best_score(&self) -> u64 {
        self.verdict
            .and_then(|t| self.scores.get(&t).copied())
            .unwrap_or(0)
    }
}

/// Scores every tag by the total length of the MEMs reporting it and picks
/// the highest, breaking ties toward the smallest tag.
pub fn classify(
    fm: &FmIndex<'_>,
    tags: &RunLengthTagArray,
    name: &str,
    read: &[u8],
    min_len: usize,
) -> Result<Classification> {
    let report = mem_tag_report(fm, tags, read, min_len)?;
    Ok(classify_report(name, &report))
}

pub fn classify_report(name: &str, report: &[MemTagEntry]) -> Classification {
    let mut scores: BTreeMap<Tag, u64> = BTreeMap::new();
    for e in report {
        for &t in &e.tags {
            *scores.entry(t).or_default() += (e.p_end - e.p_start) as u64;
        }
    }
    // BTreeMap iterates in ascending tag order; keep the first maximum.
    let verdict = scores
        .iter()
        .fold(None::<(Tag, u64)>, |best, (&t, &s)| match best {
            Some((_, bs)) if bs >= s => best,
            _ => Some((t, s)),
        })
        .map(|(t, _)| t);
    Classification {
        name: name.to_string(),
        verdict,
        scores,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{corpus_from_alignment, parse_msa, Corpus, Sentinels};
    use crate::locality::{assign_tags, SchemeKind};
    use crate::suffix::{build_index, SuffixIndex};
    use crate::tag_array::{rle_encode, to_bwt_order};

    fn toy() -> (Corpus, SuffixIndex) {
        let a = parse_msa(
            "-GATTACAT-$\nAGAT-ACAT-$\n-GAT-ACAT-$\n-GATTAGAT-$\n-GATTAGATA#\n",
            b'-',
        )
        .unwrap();
        let c = corpus_from_alignment(&a, Sentinels::default()).unwrap();
        let ix = build_index(&c).unwrap();
        (c, ix)
    }

    fn tag_rle(c: &Corpus, ix: &SuffixIndex, kind: SchemeKind) -> RunLengthTagArray {
        let t = assign_tags(c, ix, kind.into()).unwrap();
        rle_encode(&to_bwt_order(ix, &t).unwrap().values).unwrap()
    }

    #[test]
    fn acat_report() {
        let (c, ix) = toy();
        let fm = FmIndex::new(c.text(), &ix);
        let cols = tag_rle(&c, &ix, SchemeKind::Column);
        let r = mem_tag_report(&fm, &cols, b"ACAT", 4).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].tags, vec![5]);

        let docs = tag_rle(&c, &ix, SchemeKind::Document);
        let r = mem_tag_report(&fm, &docs, b"ACAT", 4).unwrap();
        assert_eq!(r[0].tags, vec![0, 1, 2]);

        assert!(mem_tag_report(&fm, &docs, b"ACAT", 5).unwrap().is_empty());
    }

    #[test]
    fn length_mismatch() {
        let (c, ix) = toy();
        let fm = FmIndex::new(c.text(), &ix);
        let short = rle_encode(&[1, 2, 3]).unwrap();
        assert!(matches!(
            mem_tag_report(&fm, &short, b"ACAT", 4),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn classify_examples() {
        let (c, ix) = toy();
        let fm = FmIndex::new(c.text(), &ix);

        let mut labeled = c.clone();
        labeled
            .set_labels((0..5).map(|i| format!("L{i}")).collect())
            .unwrap();
        let own = tag_rle(&labeled, &ix, SchemeKind::Label);
        let cls = classify(&fm, &own, "r", c.body(4), 4).unwrap();
        assert_eq!(cls.verdict, Some(4));
        assert_eq!(cls.best_score(), 9);

        let miss = classify(&fm, &own, "x", b"XXXX", 1).unwrap();
        assert_eq!(miss.verdict, None);
        assert_eq!(miss.best_score(), 0);

        labeled
            .set_labels(vec![
                "L0".into(),
                "L0".into(),
                "L0".into(),
                "L1".into(),
                "L1".into(),
            ])
            .unwrap();
        let grouped = tag_rle(&labeled, &ix, SchemeKind::Label);
        let cls = classify(&fm, &grouped, "g", b"GATTAG", 6).unwrap();
        assert_eq!(cls.verdict, Some(1));
    }

    #[test]
    fn ties_go_to_smallest_tag() {
        let report = vec![MemTagEntry {
            p_start: 0,
            p_end: 5,
            interval: Interval::new(0, 2),
            tags: vec![3, 7],
        }];
        let cls = classify_report("t", &report);
        assert_eq!(cls.verdict, Some(3));
        assert_eq!(cls.scores[&7], 5);
    }
}

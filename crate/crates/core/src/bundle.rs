//! On-disk index bundle.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic    "TAGX1"
//! version  u8
//! count    u32                      number of sections
//! section  name_len u16, name bytes, payload_len u64, payload
//! ```
//!
//! Sections are written in a fixed order (`META`, `TEXT`, `DOCS`, `NAMES`,
//! optional `COLS` and `LABELS`, `SA`, `LCP`, `DA`, then every `TAG:<name>`
//! and `KEYS:<name>` sorted by name), so saving a loaded bundle reproduces
//! the original bytes.
//!
//! | section      | payload                                              |
//! |--------------|------------------------------------------------------|
//! | `META`       | separator u8, terminator u8                          |
//! | `TEXT`       | raw text bytes                                       |
//! | `DOCS`       | u64 count, u64 start per document                    |
//! | `NAMES`      | string list: u32 count, then u32 length + UTF-8 each |
//! | `COLS`       | u64 count, u32 column per position                   |
//! | `LABELS`     | string list, one label per document                  |
//! | `SA`, `LCP`  | u64 count, u64 per row                               |
//! | `DA`         | u64 count, u32 per row                               |
//! | `TAG:<name>` | u64 run count, then i64 value + u32 length per run   |
//! | `KEYS:<name>`| string list naming tag values 0, 1, ...              |

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::corpus::{leaf_ranks, Corpus, Sentinels};
use crate::error::{Error, Result};
use crate::locality::{assign_tags, label_codes, SchemeKind, TagScheme};
use crate::suffix::{build_index, bwt_from_sa, inverse, SuffixIndex};
use crate::tag_array::{rle_encode, to_bwt_order, RunLengthTagArray};

pub const MAGIC: &[u8; 5] = b"TAGX1";
pub const VERSION: u8 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct IndexBundle {
    pub corpus: Corpus,
    pub index: SuffixIndex,
    pub tags: BTreeMap<String, RunLengthTagArray>,
    /// Names for the values of a tag array, where the values are codes.
    pub keys: BTreeMap<String, Vec<String>>,
}

impl IndexBundle {
    /// Indexes `corpus` and materializes one run-length tag array per scheme.
    pub fn build(corpus: Corpus, schemes: &[TagScheme]) -> Result<Self> {
        let index = build_index(&corpus)?;
        let mut bundle = IndexBundle {
            corpus,
            index,
            tags: BTreeMap::new(),
            keys: BTreeMap::new(),
        };
        for &s in schemes {
            bundle.add_scheme(s)?;
        }
        Ok(bundle)
    }

    pub fn add_scheme(&mut self, scheme: TagScheme) -> Result<()> {
        let pos = assign_tags(&self.corpus, &self.index, scheme)?;
        let arr = to_bwt_order(&self.index, &pos)?;
        let name = scheme.kind.name().to_string();
        match scheme.kind {
            SchemeKind::Label => {
                let (_, names) = label_codes(self.corpus.labels().unwrap_or_default());
                self.keys.insert(name.clone(), names);
            }
            SchemeKind::LeafRank => {
                if let Some(tree) = self.corpus.tree() {
                    // Surface missing leaves before recording names.
                    leaf_ranks(tree, self.corpus.tree_keys())?;
                    let leaves = tree.leaves().into_iter().map(String::from).collect();
                    self.keys.insert(name.clone(), leaves);
                }
            }
            _ => {}
        }
        self.tags.insert(name, rle_encode(&arr.values)?);
        Ok(())
    }

    pub fn tag(&self, name: &str) -> Result<&RunLengthTagArray> {
        self.tags
            .get(name)
            .ok_or_else(|| Error::MissingSection(format!("TAG:{name}")))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let c = &self.corpus;
        let ix = &self.index;
        let mut sections: Vec<(String, Vec<u8>)> = Vec::new();
        let s = c.sentinels();
        sections.push(("META".into(), vec![s.separator, s.terminator]));
        sections.push(("TEXT".into(), c.text().to_vec()));
        sections.push((
            "DOCS".into(),
            u64_list(c.doc_starts().iter().map(|&x| x as u64)),
        ));
        sections.push(("NAMES".into(), string_list(c.doc_names())));
        if let Some(cols) = c.column_of() {
            let mut p = (cols.len() as u64).to_le_bytes().to_vec();
            cols.iter()
                .for_each(|x| p.extend_from_slice(&x.to_le_bytes()));
            sections.push(("COLS".into(), p));
        }
        if let Some(labels) = c.labels() {
            sections.push(("LABELS".into(), string_list(labels)));
        }
        sections.push(("SA".into(), u64_list(ix.sa.iter().map(|&x| x as u64))));
        sections.push(("LCP".into(), u64_list(ix.lcp.iter().map(|&x| x as u64))));
        let mut da = (ix.da.len() as u64).to_le_bytes().to_vec();
        ix.da
            .iter()
            .for_each(|&d| da.extend_from_slice(&(d as u32).to_le_bytes()));
        sections.push(("DA".into(), da));
        for (name, rle) in &self.tags {
            let mut p = (rle.run_count() as u64).to_le_bytes().to_vec();
            for &(v, len) in rle.runs() {
                p.extend_from_slice(&v.to_le_bytes());
                p.extend_from_slice(&len.to_le_bytes());
            }
            sections.push((format!("TAG:{name}"), p));
        }
        for (name, keys) in &self.keys {
            sections.push((format!("KEYS:{name}"), string_list(keys)));
        }

        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(sections.len() as u32).to_le_bytes());
        for (name, payload) in sections {
            out.extend_from_slice(&(name.len() as u16).to_le_bytes());
            out.extend_from_slice(name.as_bytes());
            out.extend_from_slice(&(payload.len() as u64).to_le_bytes());
            out.extend_from_slice(&payload);
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader { buf: bytes, pos: 0 };
        if r.take(MAGIC.len())? != MAGIC {
            return Err(Error::format("not a tag index bundle (bad magic)"));
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(Error::format(format!(
                "unsupported bundle version {version}"
            )));
        }
        let count = r.u32()?;
        let mut sections: BTreeMap<String, &[u8]> = BTreeMap::new();
        for _ in 0..count {
            let name_len = r.u16()? as usize;
            let name = std::str::from_utf8(r.take(name_len)?)
                .map_err(|_| Error::format("section name is not UTF-8"))?
                .to_string();
            let len = usize::try_from(r.u64()?).map_err(|_| Error::format("section too large"))?;
            let payload = r.take(len)?;
            if sections.insert(name.clone(), payload).is_some() {
                return Err(Error::format(format!("duplicate section {name}")));
            }
        }
        if r.pos != bytes.len() {
            return Err(Error::format("trailing bytes after the last section"));
        }

        let section = |name: &str| -> Result<&[u8]> {
            sections
                .get(name)
                .copied()
                .ok_or_else(|| Error::MissingSection(name.to_string()))
        };

        let meta = section("META")?;
        if meta.len() != 2 {
            return Err(Error::format("META section must hold two bytes"));
        }
        let sentinels = Sentinels::new(meta[0], meta[1])?;
        let text = section("TEXT")?.to_vec();
        let starts = read_u64_list(section("DOCS")?)?
            .into_iter()
            .map(|x| x as usize)
            .collect();
        let names = read_string_list(section("NAMES")?)?;
        let cols = match sections.get("COLS") {
            Some(p) => {
                let mut r = Reader { buf: p, pos: 0 };
                let n = r.u64()? as usize;
                let v = (0..n).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
                r.finish("COLS")?;
                Some(v)
            }
            None => None,
        };
        let mut corpus = Corpus::from_parts(text, starts, names, sentinels, cols)?;
        if let Some(p) = sections.get("LABELS") {
            corpus.set_labels(read_string_list(p)?)?;
        }

        let n = corpus.len();
        let sa: Vec<usize> = read_u64_list(section("SA")?)?
            .into_iter()
            .map(|x| x as usize)
            .collect();
        let lcp: Vec<usize> = read_u64_list(section("LCP")?)?
            .into_iter()
            .map(|x| x as usize)
            .collect();
        let da = {
            let mut r = Reader {
                buf: section("DA")?,
                pos: 0,
            };
            let len = r.u64()? as usize;
            let v = (0..len)
                .map(|_| r.u32().map(|x| x as usize))
                .collect::<Result<Vec<_>>>()?;
            r.finish("DA")?;
            v
        };
        for (name, len) in [("SA", sa.len()), ("LCP", lcp.len()), ("DA", da.len())] {
            if len != n {
                return Err(Error::Integrity(format!(
                    "{name} has {len} entries for a text of length {n}"
                )));
            }
        }
        let mut seen = vec![false; n];
        for &p in &sa {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Integrity("SA is not a permutation".into()));
            }
        }
        let isa = inverse(&sa);
        let bwt = bwt_from_sa(corpus.text(), &sa);
        let index = SuffixIndex {
            sa,
            isa,
            bwt,
            lcp,
            da,
        };

        let mut tags = BTreeMap::new();
        let mut keys = BTreeMap::new();
        for (name, payload) in &sections {
            if let Some(tag) = name.strip_prefix("TAG:") {
                let mut r = Reader {
                    buf: payload,
                    pos: 0,
                };
                let runs = (0..r.u64()?)
                    .map(|_| Ok((r.i64()?, r.u32()?)))
                    .collect::<Result<Vec<_>>>()?;
                r.finish(name)?;
                let rle = RunLengthTagArray::from_runs(runs)?;
                if rle.len() != n {
                    return Err(Error::Integrity(format!(
                        "{name} covers {} rows, text has {n}",
                        rle.len()
                    )));
                }
                tags.insert(tag.to_string(), rle);
            } else if let Some(tag) = name.strip_prefix("KEYS:") {
                keys.insert(tag.to_string(), read_string_list(payload)?);
            }
        }

        Ok(IndexBundle {
            corpus,
            index,
            tags,
            keys,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes())?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

fn u64_list(xs: impl ExactSizeIterator<Item = u64>) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 * (xs.len() + 1));
    out.extend_from_slice(&(xs.len() as u64).to_le_bytes());
    for x in xs {
        out.extend_from_slice(&x.to_le_bytes());
    }
    out
}

fn string_list<S: AsRef<str>>(xs: &[S]) -> Vec<u8> {
    let mut out = (xs.len() as u32).to_le_bytes().to_vec();
    for s in xs {
        let s = s.as_ref().as_bytes();
        out.extend_from_slice(&(s.len() as u32).to_le_bytes());
        out.extend_from_slice(s);
    }
    out
}

fn read_u64_list(p: &[u8]) -> Result<Vec<u64>> {
    let mut r = Reader { buf: p, pos: 0 };
    let n = r.u64()?;
    let v = (0..n).map(|_| r.u64()).collect::<Result<Vec<_>>>()?;
    r.finish("integer list")?;
    Ok(v)
}

fn read_string_list(p: &[u8]) -> Result<Vec<String>> {
    let mut r = Reader { buf: p, pos: 0 };
    let n = r.u32()?;
    let v = (0..n)
        .map(|_| {
            let len = r.u32()? as usize;
            String::from_utf8(r.take(len)?.to_vec())
                .map_err(|_| Error::format("string is not UTF-8"))
        })
        .collect::<Result<Vec<_>>>()?;
    r.finish("string list")?;
    Ok(v)
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| Error::format("truncated bundle"))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N]> {
        Ok(self.take(N)?.try_into().unwrap())
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.array()?))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.array()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.array()?))
    }

    fn i64(&mut self) -> Result<i64> {
        Ok(i64::from_le_bytes(self.array()?))
    }

    fn finish(&self, what: &str) -> Result<()> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(Error::format(format!("trailing bytes in {what}")))
        }
    }
}

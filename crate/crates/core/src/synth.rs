//! Deterministic synthetic pangenomes.
//!
//! Each species gets a uniform random root sequence over `ACGT`; each copy
//! of a species substitutes every base independently with probability
//! `mutation_rate`, choosing uniformly among the three other bases. All
//! randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, drawn in the
//! order: species roots, then copies (species-major), so a seed fixes the
//! corpus on every platform.
//!
//! Documents are named `s<species>_c<copy>`, labelled `s<species>`, and
//! placed in species-major order. The attached tree splits species in
//! balanced halves and, inside each species clade, splits the copies the
//! same way.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::{corpus_from_documents, parse_newick, Corpus, Document, Sentinels};
use crate::error::{Error, Result};

const BASES: [u8; 4] = *b"ACGT";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub species: usize,
    pub copies: usize,
    pub length: usize,
    pub mutation_rate: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            species: 5,
            copies: 10,
            length: 1000,
            mutation_rate: 0.01,
            seed: 42,
        }
    }
}

impl SyntheticSpec {
    pub fn validate(&self) -> Result<()> {
        if self.species == 0 {
            return Err(Error::validation("species count must be at least 1"));
        }
        if self.copies == 0 {
            return Err(Error::validation("copies per species must be at least 1"));
        }
        if self.length == 0 {
            return Err(Error::validation("sequence length must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::validation(format!(
                "mutation rate {} outside [0, 1]",
                self.mutation_rate
            )));
        }
        Ok(())
    }

    pub fn doc_name(species: usize, copy: usize) -> String {
        format!("s{species}_c{copy}")
    }

    /// Newick string of the balanced species tree over all copies.
    pub fn newick(&self) -> String {
        let clades: Vec<String> = (0..self.species)
            .map(|s| {
                let leaves: Vec<String> = (0..self.copies).map(|c| Self::doc_name(s, c)).collect();
                balanced(&leaves)
            })
            .collect();
        format!("{};", balanced(&clades))
    }
}

fn balanced(items: &[String]) -> String {
    match items {
        [one] => one.clone(),
        _ => {
            let (l, r) = items.split_at(items.len().div_ceil(2));
            format!("({},{})", balanced(l), balanced(r))
        }
    }
}

/// Generates the corpus described by `spec`, with species labels and the
/// balanced tree attached.
pub fn generate(spec: &SyntheticSpec) -> Result<Corpus> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let roots: Vec<Vec<u8>> = (0..spec.species)
        .map(|_| {
            (0..spec.length)
                .map(|_| BASES[rng.gen_range(0..4)])
                .collect()
        })
        .collect();
    let mut docs = Vec::with_capacity(spec.species * spec.copies);
    let mut labels = Vec::with_capacity(docs.capacity());
    for (s, root) in roots.iter().enumerate() {
        for c in 0..spec.copies {
            let body = root
                .iter()
                .map(|&b| {
                    if rng.gen_bool(spec.mutation_rate) {
                        let others: Vec<u8> = BASES.iter().copied().filter(|&x| x != b).collect();
                        others[rng.gen_range(0..3)]
                    } else {
                        b
                    }
                })
                .collect::<Vec<u8>>();
            docs.push(Document::new(
                docs.len(),
                SyntheticSpec::doc_name(s, c),
                body,
            ));
            labels.push(format!("s{s}"));
        }
    }
    let mut corpus = corpus_from_documents(&docs, Sentinels::default())?;
    corpus.set_labels(labels)?;
    corpus.set_tree(parse_newick(&spec.newick())?);
    Ok(corpus)
}

/// Leaf ranks under a seeded random reordering of the tree's leaves:
/// a Fisher-Yates shuffle of `0..count` driven by
/// `ChaCha8Rng::seed_from_u64(seed)`.
pub fn shuffled_ranks(count: usize, seed: u64) -> Vec<u32> {
    let mut ranks: Vec<u32> = (0..count as u32).collect();
    ranks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    ranks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::leaf_ranks;

    #[test]
    fn deterministic_for_seed() {
        let spec = SyntheticSpec {
            species: 2,
            copies: 3,
            length: 50,
            mutation_rate: 0.1,
            seed: 7,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.doc_count(), 6);
        assert_eq!(a.len(), 6 * 51);
        let c = generate(&SyntheticSpec { seed: 8, ..spec }).unwrap();
        assert_ne!(a.text(), c.text());
    }

    #[test]
    fn zero_rate_copies_are_identical() {
        let spec = SyntheticSpec {
            species: 2,
            copies: 3,
            length: 40,
            mutation_rate: 0.0,
            seed: 1,
        };
        let c = generate(&spec).unwrap();
        assert_eq!(c.body(0), c.body(2));
        assert_ne!(c.body(0), c.body(3));
    }

    #[test]
    fn tree_order_matches_document_order() {
        let spec = SyntheticSpec {
            species: 3,
            copies: 5,
            length: 10,
            ..Default::default()
        };
        let c = generate(&spec).unwrap();
        let ranks = leaf_ranks(c.tree().unwrap(), c.doc_names()).unwrap();
        assert_eq!(ranks, (0..15).collect::<Vec<u32>>());
        assert_eq!(c.labels().unwrap()[7], "s1");
    }

    #[test]
    fn invalid_parameters() {
        let ok = SyntheticSpec::default();
        for bad in [
            SyntheticSpec { copies: 0, ..ok },
            SyntheticSpec { species: 0, ..ok },
            SyntheticSpec { length: 0, ..ok },
            SyntheticSpec {
                mutation_rate: 1.5,
                ..ok
            },
        ] {
            assert!(matches!(generate(&bad), Err(Error::Validation(_))));
        }
    }

    #[test]
    fn shuffle_is_a_permutation() {
        let mut r = shuffled_ranks(50, 3);
        assert_eq!(r, shuffled_ranks(50, 3));
        r.sort();
        assert_eq!(r, (0..50).collect::<Vec<u32>>());
    }
}

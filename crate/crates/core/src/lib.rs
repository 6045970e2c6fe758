//! Compressed-indexing toolkit for tag arrays.
//!
//! Builds the suffix array, BWT, LCP and document array of a collection of
//! documents, attaches an integer tag to every text position under one of
//! several schemes (alignment column, document, species label, leaf rank in
//! a tree, end-of-document LCP, ILCP, ...), permutes the tags into BWT order
//! and run-length encodes them. MEMs between a pattern and the text are found
//! with backward search and reported with the distinct tags of their BWT
//! intervals.
//!
//! ```
//! use tagix_core::corpus::{corpus_from_documents, documents_from_bodies, Sentinels};
//! use tagix_core::locality::SchemeKind;
//! use tagix_core::IndexBundle;
//!
//! let docs = documents_from_bodies(&["GATTACAT", "GATTAGAT"]);
//! let corpus = corpus_from_documents(&docs, Sentinels::default()).unwrap();
//! let bundle = IndexBundle::build(corpus, &[SchemeKind::Document.into()]).unwrap();
//! assert_eq!(bundle.index.len(), 18);
//! ```

pub mod bundle;
pub mod corpus;
pub mod error;
pub mod fm;
pub mod locality;
pub mod query;
pub mod suffix;
pub mod synth;
pub mod tag_array;

pub use bundle::IndexBundle;
pub use error::{Error, Result};
pub use fm::{FmIndex, Interval, MemMatch};
pub use locality::{PositionTags, SchemeKind, Tag, TagScheme};
pub use suffix::{build_index, SuffixIndex};
pub use tag_array::{RunLengthTagArray, TagArray};

//! `tagix` command implementations.
//!
//! Every command writes its report to a caller-supplied writer so the same
//! code drives the binary and the tests. Per-read problems (reads carrying a
//! sentinel byte) go to the diagnostic writer and do not fail the command.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use tagix_core::corpus::{
    corpus_from_alignment, corpus_from_documents, parse_fasta, parse_labels, parse_lines,
    parse_msa, parse_newick, Corpus, Document, Sentinels,
};
use tagix_core::fm::DEFAULT_MIN_MEM_LEN;
use tagix_core::query::{classify, mem_tag_report};
use tagix_core::synth::{generate, shuffled_ranks, SyntheticSpec};
use tagix_core::tag_array::{diff_encode, run_stats, RunStats};
use tagix_core::{FmIndex, IndexBundle, SchemeKind, Tag, TagScheme};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tagix_core::Error),
    #[error("cannot read {path}: {source}")]
    Input { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Clap(#[from] clap::Error),
}

impl CliError {
    /// 2 for anything the caller can fix by changing arguments or input
    /// files, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        use tagix_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::Clap(e) => e.exit_code(),
            CliError::Core(E::Validation(_) | E::Format(_) | E::MissingSection(_)) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "tagix",
    version,
    about = "Tag arrays over BWT indexes of document collections"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Index a collection and write a bundle.
    Build(BuildArgs),
    /// Print the BWT-order table of a bundle as TSV.
    Dump(DumpArgs),
    /// Run statistics for a bundle or a synthetic pangenome.
    Stats(StatsArgs),
    /// Report every MEM of each read with the tags of its BWT interval.
    Query(QueryArgs),
    /// Assign each read the tag with the largest MEM support.
    Classify(ClassifyArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["text", "fasta", "msa"])))]
pub struct BuildArgs {
    /// One document per non-blank line.
    #[arg(long)]
    pub text: Option<PathBuf>,
    #[arg(long)]
    pub fasta: Option<PathBuf>,
    /// Aligned FASTA or one aligned row per line.
    #[arg(long)]
    pub msa: Option<PathBuf>,
    #[arg(long, default_value_t = '-')]
    pub gap: char,
    /// Comma-separated tag schemes, or `all` for every scheme the input
    /// supports (the default).
    #[arg(long, value_delimiter = ',')]
    pub scheme: Vec<String>,
    /// Tab-separated document name and label per line.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Newick tree whose leaves are labels, or document names if unlabelled.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long)]
    pub bundle: PathBuf,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, conflicts_with_all = ["species", "copies", "length", "mutation_rate"])]
    pub bundle: Option<PathBuf>,
    #[arg(long, default_value_t = 5)]
    pub species: usize,
    #[arg(long, default_value_t = 10)]
    pub copies: usize,
    #[arg(long, default_value_t = 1000)]
    pub length: usize,
    #[arg(long, default_value_t = 0.01)]
    pub mutation_rate: f64,
    /// Seeds both the generator and the shuffled leaf order.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub bundle: PathBuf,
    /// FASTA, or one read per non-blank line.
    #[arg(long)]
    pub reads: PathBuf,
    #[arg(long, default_value = "document")]
    pub tag: String,
    #[arg(long, default_value_t = DEFAULT_MIN_MEM_LEN)]
    pub min_mem_len: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub bundle: PathBuf,
    #[arg(long)]
    pub reads: PathBuf,
    #[arg(long, default_value = "label")]
    pub tag: String,
    #[arg(long, default_value_t = DEFAULT_MIN_MEM_LEN)]
    pub min_mem_len: usize,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    execute(cli.command, out, err)
}

pub fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Build(a) => cmd_build(&a, out),
        Command::Dump(a) => cmd_dump(&IndexBundle::load(&a.bundle)?, out),
        Command::Stats(a) => cmd_stats(&a, out),
        Command::Query(a) => {
            let b = IndexBundle::load(&a.bundle)?;
            let reads = read_reads(&a.reads)?;
            cmd_query(&b, &a.tag, &reads, a.min_mem_len, out, err)
        }
        Command::Classify(a) => {
            let b = IndexBundle::load(&a.bundle)?;
            let reads = read_reads(&a.reads)?;
            cmd_classify(&b, &a.tag, &reads, a.min_mem_len, out, err)
        }
    }
}

fn read_input(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads are FASTA when the first non-blank character is `>`; otherwise one
/// read per non-blank line, named `read<i>`.
pub fn parse_reads(src: &str) -> CliResult<Vec<Document>> {
    if src.trim_start().starts_with('>') {
        return Ok(parse_fasta(src)?);
    }
    let mut reads = parse_lines(src);
    for r in &mut reads {
        r.name = format!("read{}", r.id);
    }
    Ok(reads)
}

fn read_reads(path: &Path) -> CliResult<Vec<Document>> {
    parse_reads(&read_input(path)?)
}

fn gap_byte(c: char) -> CliResult<u8> {
    u8::try_from(c)
        .ok()
        .filter(u8::is_ascii)
        .ok_or_else(|| CliError::Usage(format!("gap character {c:?} is not ASCII")))
}

/// Loads the corpus named by the build arguments, with labels and tree
/// attached.
pub fn load_corpus(a: &BuildArgs) -> CliResult<Corpus> {
    let sentinels = Sentinels::default();
    let mut corpus = if let Some(p) = &a.msa {
        let mut aln = parse_msa(&read_input(p)?, gap_byte(a.gap)?)?;
        if !aln.is_terminated(sentinels) {
            aln = aln.with_sentinel_column(sentinels);
        }
        corpus_from_alignment(&aln, sentinels)?
    } else if let Some(p) = &a.fasta {
        corpus_from_documents(&parse_fasta(&read_input(p)?)?, sentinels)?
    } else if let Some(p) = &a.text {
        corpus_from_documents(&parse_lines(&read_input(p)?), sentinels)?
    } else {
        return Err(CliError::Usage(
            "one of --text, --fasta, --msa is required".into(),
        ));
    };
    if let Some(p) = &a.labels {
        corpus.set_labels_by_name(&parse_labels(&read_input(p)?)?)?;
    }
    if let Some(p) = &a.tree {
        corpus.set_tree(parse_newick(&read_input(p)?)?);
    }
    Ok(corpus)
}

/// Resolves scheme names; empty or `all` selects every available scheme.
pub fn resolve_schemes(names: &[String], c: &Corpus) -> CliResult<Vec<TagScheme>> {
    if names.is_empty() || names.iter().any(|n| n == "all") {
        return Ok(SchemeKind::ALL
            .into_iter()
            .filter(|k| k.available(c))
            .map(TagScheme::from)
            .collect());
    }
    let mut kinds = names
        .iter()
        .map(|n| n.trim().parse::<SchemeKind>())
        .collect::<Result<Vec<_>, _>>()?;
    kinds.sort();
    kinds.dedup();
    Ok(kinds.into_iter().map(TagScheme::from).collect())
}

pub fn cmd_build(a: &BuildArgs, out: &mut dyn Write) -> CliResult<()> {
    let corpus = load_corpus(a)?;
    let schemes = resolve_schemes(&a.scheme, &corpus)?;
    let bundle = IndexBundle::build(corpus, &schemes)?;
    bundle.save(&a.out)?;
    write_summary(&bundle, out)
}

pub fn write_summary(b: &IndexBundle, out: &mut dyn Write) -> CliResult<()> {
    writeln!(out, "n\t{}", b.corpus.len())?;
    writeln!(out, "documents\t{}", b.corpus.doc_count())?;
    writeln!(out, "bwt_runs\t{}", b.index.bwt_runs())?;
    for (name, arr) in &b.tags {
        writeln!(out, "runs:{name}\t{}", arr.run_count())?;
    }
    Ok(())
}

pub const DUMP_HEADER: &str = "index\tbwt\tcolumn\tend_lcp\tilcp\tdoc\tsa\tlcp\tdiff_sa\tdiff_lcp";

/// The BWT-order table: one row per BWT position.
pub fn cmd_dump(b: &IndexBundle, out: &mut dyn Write) -> CliResult<()> {
    let column = b.tag("column")?.decode();
    let end_lcp = b.tag("end_lcp")?.decode();
    let ilcp = b.tag("ilcp")?.decode();
    let doc = b.tag("document")?.decode();
    let ix = &b.index;
    let sa: Vec<Tag> = ix.sa.iter().map(|&x| x as Tag).collect();
    let lcp: Vec<Tag> = ix.lcp.iter().map(|&x| x as Tag).collect();
    let diff_sa = diff_encode(&sa)?.as_column();
    let diff_lcp = diff_encode(&lcp)?.as_column();
    writeln!(out, "{DUMP_HEADER}")?;
    for i in 0..ix.len() {
        writeln!(
            out,
            "{i}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            ix.bwt[i] as char,
            column[i],
            end_lcp[i],
            ilcp[i],
            doc[i],
            sa[i],
            lcp[i],
            diff_sa[i],
            diff_lcp[i]
        )?;
    }
    Ok(())
}

/// One named row of the statistics table.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub name: String,
    pub stats: RunStats,
}

/// Run statistics for the BWT and every tag array. When a leaf-rank array
/// is present, a second row relabels its values through a seeded random
/// permutation of the leaves, for comparison with tree order.
pub fn stats_rows(b: &IndexBundle, seed: u64) -> CliResult<Vec<StatsRow>> {
    let bwt: Vec<Tag> = b.index.bwt.iter().map(|&c| c as Tag).collect();
    let mut rows = vec![StatsRow {
        name: "bwt".into(),
        stats: run_stats(&bwt),
    }];
    for (name, arr) in &b.tags {
        let values = arr.decode();
        rows.push(StatsRow {
            name: name.clone(),
            stats: run_stats(&values),
        });
        if name == SchemeKind::LeafRank.name() {
            let leaves = b.keys.get(name).map_or(0, Vec::len);
            let perm = shuffled_ranks(leaves, seed);
            let shuffled: Vec<Tag> = values.iter().map(|&v| perm[v as usize] as Tag).collect();
            rows.push(StatsRow {
                name: format!("{name}:shuffled"),
                stats: run_stats(&shuffled),
            });
        }
    }
    Ok(rows)
}

pub fn write_stats(rows: &[StatsRow], out: &mut dyn Write) -> CliResult<()> {
    writeln!(
        out,
        "array\tn\truns\truns_per_n\tdistinct\tmean_abs_delta\tzero_delta_fraction"
    )?;
    for r in rows {
        let s = &r.stats;
        writeln!(
            out,
            "{}\t{}\t{}\t{:.6}\t{}\t{:.6}\t{:.6}",
            r.name,
            s.n,
            s.run_count,
            s.runs_per_symbol(),
            s.distinct,
            s.mean_abs_delta,
            s.zero_delta_fraction
        )?;
    }
    Ok(())
}

/// The synthetic corpus indexed under every scheme it supports.
pub fn synthetic_bundle(spec: &SyntheticSpec) -> CliResult<IndexBundle> {
    let corpus = generate(spec)?;
    let schemes = resolve_schemes(&[], &corpus)?;
    Ok(IndexBundle::build(corpus, &schemes)?)
}

pub fn cmd_stats(a: &StatsArgs, out: &mut dyn Write) -> CliResult<()> {
    let bundle = match &a.bundle {
        Some(p) => IndexBundle::load(p)?,
        None => synthetic_bundle(&SyntheticSpec {
            species: a.species,
            copies: a.copies,
            length: a.length,
            mutation_rate: a.mutation_rate,
            seed: a.seed,
        })?,
    };
    write_stats(&stats_rows(&bundle, a.seed)?, out)
}

fn sentinel_error(c: &Corpus, read: &[u8]) -> Option<String> {
    let s = c.sentinels();
    read.iter()
        .find(|&&b| s.is_sentinel(b))
        .map(|&b| format!("contains sentinel byte {:?}", b as char))
}

pub fn cmd_query(
    b: &IndexBundle,
    tag: &str,
    reads: &[Document],
    min_len: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let tags = b.tag(tag)?;
    let fm = FmIndex::new(b.corpus.text(), &b.index);
    writeln!(out, "read\tp_start\tp_end\tlo\thi\ttags")?;
    for r in reads {
        if let Some(msg) = sentinel_error(&b.corpus, &r.body) {
            writeln!(err, "tagix: read {}: {msg}", r.name)?;
            continue;
        }
        for e in mem_tag_report(&fm, tags, &r.body, min_len)? {
            let joined: Vec<String> = e.tags.iter().map(Tag::to_string).collect();
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.name,
                e.p_start,
                e.p_end,
                e.interval.lo,
                e.interval.hi,
                joined.join(",")
            )?;
        }
    }
    Ok(())
}

/// Classifies reads in parallel; output keeps input order.
pub fn cmd_classify(
    b: &IndexBundle,
    tag: &str,
    reads: &[Document],
    min_len: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<()> {
    let tags = b.tag(tag)?;
    let keys = b.keys.get(tag);
    let fm = FmIndex::new(b.corpus.text(), &b.index);
    let results: Vec<Result<_, String>> = reads
        .par_iter()
        .map(|r| match sentinel_error(&b.corpus, &r.body) {
            Some(msg) => Ok(Err(msg)),
            None => classify(&fm, tags, &r.name, &r.body, min_len).map(Ok),
        })
        .collect::<tagix_core::Result<_>>()?;
    writeln!(out, "read\tverdict\tscore")?;
    for (r, res) in reads.iter().zip(results) {
        match res {
            Err(msg) => writeln!(err, "tagix: read {}: {msg}", r.name)?,
            Ok(cls) => {
                let verdict = match cls.verdict {
                    None => "unclassified".to_string(),
                    Some(t) => keys
                        .and_then(|k| usize::try_from(t).ok().and_then(|i| k.get(i)))
                        .cloned()
                        .unwrap_or_else(|| t.to_string()),
                };
                writeln!(out, "{}\t{verdict}\t{}", cls.name, cls.best_score())?;
            }
        }
    }
    Ok(())
}

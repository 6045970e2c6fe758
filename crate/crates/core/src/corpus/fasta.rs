use super::Document;
use crate::error::{Error, Result};

/// Parses FASTA records; record order defines document ids and the header
/// text after `>` (up to the first whitespace) is the document name.
pub fn parse_fasta(input: &str) -> Result<Vec<Document>> {
    let mut docs: Vec<Document> = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if let Some(header) = line.strip_prefix('>') {
            let name = header.split_whitespace().next().unwrap_or("");
            let name = if name.is_empty() {
                format!("doc{}", docs.len())
            } else {
                name.to_string()
            };
            docs.push(Document::new(docs.len(), name, Vec::new()));
        } else if !line.trim().is_empty() {
            let doc = docs.last_mut().ok_or_else(|| {
                Error::format(format!(
                    "FASTA line {}: sequence before the first header",
                    lineno + 1
                ))
            })?;
            doc.body.extend_from_slice(line.trim().as_bytes());
        }
    }
    Ok(docs)
}

/// Plain text input: one document per non-blank line.
pub fn parse_lines(input: &str) -> Vec<Document> {
    input
        .lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, l)| Document::new(i, format!("doc{i}"), l.as_bytes()))
        .collect()
}

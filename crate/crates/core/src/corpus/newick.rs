use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
struct Node {
    name: Option<String>,
    children: Vec<usize>,
}

/// A rooted, ordered tree whose leaves carry unique names.
#[derive(Debug, Clone, PartialEq)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    root: usize,
}

impl PhyloTree {
    /// Leaf names in depth-first order, children visited in file order.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            let node = &self.nodes[v];
            if node.children.is_empty() {
                out.push(node.name.as_deref().unwrap_or(""));
            } else {
                stack.extend(node.children.iter().rev());
            }
        }
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::format(format!("newick offset {}: {msg}", self.pos))
    }

    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && !matches!(self.src[self.pos], b'(' | b')' | b',' | b':' | b';')
            && !self.src[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        // Input came from a &str and we only split at ASCII bytes.
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn subtree(&mut self) -> Result<usize> {
        let mut children = Vec::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            loop {
                children.push(self.subtree()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.err("expected ',' or ')'")),
                }
            }
        }
        let name = self.token();
        if self.peek() == Some(b':') {
            self.pos += 1;
            let len = self.token();
            len.parse::<f64>()
                .map_err(|_| self.err(&format!("bad branch length {len:?}")))?;
        }
        if children.is_empty() && name.is_empty() {
            return Err(self.err("leaf without a name"));
        }
        self.nodes.push(Node {
            name: (!name.is_empty()).then(|| name.to_string()),
            children,
        });
        Ok(self.nodes.len() - 1)
    }
}

/// Parses the Newick subset: names, parentheses, commas, optional branch
/// lengths (ignored) and a terminating `;`.
pub fn parse_newick(src: &str) -> Result<PhyloTree> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        nodes: Vec::new(),
    };
    if p.peek().is_none() {
        return Err(Error::format("empty newick input"));
    }
    let root = p.subtree()?;
    if p.peek() != Some(b';') {
        return Err(p.err("expected ';'"));
    }
    p.pos += 1;
    if p.peek().is_some() {
        return Err(p.err("trailing input after ';'"));
    }
    let tree = PhyloTree {
        nodes: p.nodes,
        root,
    };
    let mut seen = HashSet::new();
    for leaf in tree.leaves() {
        if !seen.insert(leaf) {
            return Err(Error::format(format!("duplicate leaf name {leaf:?}")));
        }
    }
    Ok(tree)
}

/// Rank of each document's label among the tree's leaves.
pub fn leaf_ranks<S: AsRef<str>>(tree: &PhyloTree, label_of_doc: &[S]) -> Result<Vec<u32>> {
    let rank: HashMap<&str, u32> = tree
        .leaves()
        .into_iter()
        .enumerate()
        .map(|(i, name)| (name, i as u32))
        .collect();
    let mut missing: Vec<&str> = Vec::new();
    let ranks = label_of_doc
        .iter()
        .map(|l| {
            let l = l.as_ref();
            rank.get(l).copied().unwrap_or_else(|| {
                if !missing.contains(&l) {
                    missing.push(l);
                }
                0
            })
        })
        .collect();
    if missing.is_empty() {
        Ok(ranks)
    } else {
        Err(Error::validation(format!(
            "labels not found among tree leaves: {}",
            missing.join(", ")
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dfs_leaf_order() {
        let t = parse_newick("((A,B),C);").unwrap();
        assert_eq!(t.leaves(), vec!["A", "B", "C"]);
        assert_eq!(leaf_ranks(&t, &["A", "B", "C"]).unwrap(), vec![0, 1, 2]);

        let t = parse_newick("(C,(A,B));").unwrap();
        assert_eq!(leaf_ranks(&t, &["A", "B", "C"]).unwrap(), vec![1, 2, 0]);
    }

    #[test]
    fn branch_lengths_and_internal_names() {
        let t = parse_newick(" ((A:0.1, B:2e-3)ab:1,C:3) root ;\n").unwrap();
        assert_eq!(t.leaves(), vec!["A", "B", "C"]);
        assert_eq!(t.node_count(), 5);
    }

    #[test]
    fn missing_label_listed() {
        let t = parse_newick("((A,B),C);").unwrap();
        let err = leaf_ranks(&t, &["A", "D"]).unwrap_err();
        assert!(err.to_string().contains('D'));
    }

    #[test]
    fn malformed() {
        for bad in [
            "((A,B),C)",
            "(A,B",
            "(A,,B);",
            "(A:x,B);",
            "",
            "(A,A);",
            "(A,B);x",
        ] {
            assert!(parse_newick(bad).is_err(), "{bad:?} should not parse");
        }
    }
}

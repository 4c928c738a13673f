//! The `.tree` text format: first line the depth, then one line per
//! vertex with its 1-based parent, `0` marking a root.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::decomposition::Decomposition;
use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum TreeParseError {
    #[error("read error: {0}")]
    Io(#[from] io::Error),
    #[error("empty tree file")]
    Empty,
    #[error("malformed number, line {line}")]
    Malformed { line: usize },
    #[error("parent out of range, line {line}")]
    ParentOutOfRange { line: usize },
}

/// Serializes a decomposition, bit-exact: depth, then `n` parent lines,
/// each newline-terminated.
pub fn write_tree<W: Write>(d: &Decomposition, mut sink: W) -> io::Result<()> {
    sink.write_all(tree_to_string(d).as_bytes())
}

pub fn tree_to_string(d: &Decomposition) -> String {
    let mut out = String::with_capacity(8 * (d.len() + 1));
    out.push_str(&d.depth().to_string());
    out.push('\n');
    for v in 0..d.len() as VertexId {
        match d.parent_of(v) {
            None => out.push('0'),
            Some(p) => out.push_str(&(p + 1).to_string()),
        }
        out.push('\n');
    }
    out
}

/// Reads a claimed decomposition. The number of vertices is the number of
/// parent lines; nothing beyond ranges is validated here, so follow up
/// with [`crate::decomposition::verify_decomposition`].
pub fn parse_tree<R: BufRead>(input: R) -> Result<Decomposition, TreeParseError> {
    let mut depth: Option<u32> = None;
    let mut raw: Vec<u64> = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let value: u64 = t.parse().map_err(|_| TreeParseError::Malformed { line: lineno })?;
        if depth.is_none() {
            let d = u32::try_from(value).map_err(|_| TreeParseError::Malformed { line: lineno })?;
            depth = Some(d);
        } else {
            raw.push(value);
        }
    }
    let depth = depth.ok_or(TreeParseError::Empty)?;
    let n = raw.len();
    let mut parent = Vec::with_capacity(n);
    for (i, &value) in raw.iter().enumerate() {
        if value == 0 {
            parent.push(None);
        } else if value as usize <= n {
            parent.push(Some((value - 1) as VertexId));
        } else {
            return Err(TreeParseError::ParentOutOfRange { line: i + 2 });
        }
    }
    Ok(Decomposition::from_claimed(parent, depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{build_from_ordering, Ordering};
    use crate::generators;

    #[test]
    fn single_vertex() {
        let d = Decomposition::from_parents(vec![None]).unwrap();
        assert_eq!(tree_to_string(&d), "1\n0\n");
    }

    #[test]
    fn p3_rooted_at_middle() {
        let d = Decomposition::from_parents(vec![Some(1), None, Some(1)]).unwrap();
        assert_eq!(tree_to_string(&d), "2\n2\n0\n2\n");
    }

    #[test]
    fn k3_chain() {
        let d = Decomposition::from_parents(vec![None, Some(0), Some(1)]).unwrap();
        assert_eq!(tree_to_string(&d), "3\n0\n1\n2\n");
    }

    #[test]
    fn roundtrip() {
        let g = generators::random_gnm(25, 50, 4);
        let d = build_from_ordering(&g, &Ordering::identity(25));
        let text = tree_to_string(&d);
        let back = parse_tree(text.as_bytes()).unwrap();
        assert_eq!(back.parents(), d.parents());
        assert_eq!(back.depth(), d.depth());
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_tree("".as_bytes()), Err(TreeParseError::Empty)));
        assert!(matches!(
            parse_tree("2\nx\n".as_bytes()),
            Err(TreeParseError::Malformed { line: 2 })
        ));
        assert!(matches!(
            parse_tree("2\n3\n0\n".as_bytes()),
            Err(TreeParseError::ParentOutOfRange { line: 2 })
        ));
    }
}

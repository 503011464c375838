//! graph6 encoding and decoding.
//!
//! Layout: a size header followed by the upper triangle of the adjacency
//! matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed
//! big-endian into 6-bit groups, each group offset by 63.

use crate::graph::{Graph, GraphError, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. Surrounding whitespace and a leading `>>graph6<<` are ignored.
pub fn from_graph6(text: &str) -> Result<Graph, GraphError> {
    let trimmed_start = text.len() - text.trim_start().len();
    let mut line = text.trim();
    let mut base = trimmed_start;
    if let Some(rest) = line.strip_prefix(HEADER) {
        line = rest;
        base += HEADER.len();
    }
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(base + pos, format!("byte {:#04x} outside 63..=126", bytes[pos])));
    }
    let (n, header_len) = match bytes {
        [] => return Err(err(base, "empty input")),
        [126, 126, ..] => return Err(err(base, "vertex count exceeds 64")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err(base + bytes.len(), "truncated size header"));
            }
            let n = rest[..3].iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n <= 62 {
                return Err(err(base, "non-minimal size header"));
            }
            (n, 4)
        }
        [b, ..] => ((b - 63) as usize, 1),
    };
    if n == 0 || n > MAX_VERTICES {
        return Err(err(base, format!("vertex count {n} outside 1..=64")));
    }
    let bits = n * (n - 1) / 2;
    let want = bits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != want {
        return Err(err(
            base + header_len + body.len().min(want),
            format!("expected {want} data bytes, found {}", body.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if let Some(&last) = body.last() {
        let pad = want * 6 - bits;
        if pad > 0 && (last - 63) & ((1 << pad) - 1) != 0 {
            return Err(err(base + header_len + want - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + n * n / 12 + 1);
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.extend([(n >> 12) & 63, (n >> 6) & 63, n & 63].map(|x| x as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

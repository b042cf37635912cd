//! Input formats: graph6 (single-byte size form, n ≤ 62) and edge-list text.

use crate::graph::Graph;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6: bad size byte {0}")]
    BadSizeByte(u8),
    #[error("graph6: order {0} exceeds the single-byte limit 62")]
    TooLarge(usize),
    #[error("graph6: truncated bit stream (need {need} data bytes, got {got})")]
    Truncated { need: usize, got: usize },
    #[error("graph6: trailing bytes after the bit stream")]
    TrailingBytes,
    #[error("graph6: data byte {0} out of range")]
    BadDataByte(u8),
    #[error("edge list: self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge list: bad token {0:?} on line {1}")]
    BadToken(String, usize),
    #[error("edge list: expected two endpoints on line {0}")]
    BadLine(usize),
    #[error("edge list: vertex labels must be >= 1 (line {0})")]
    ZeroLabel(usize),
}

/// Decodes canonical graph6 (n ≤ 62): size byte n+63, then the upper
/// triangle packed column-major, 6 bits per byte, each byte offset by 63.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let bytes = text.trim().as_bytes();
    let &size = bytes.first().ok_or(FormatError::Empty)?;
    if !(63..=125).contains(&size) {
        return Err(FormatError::BadSizeByte(size));
    }
    let n = (size - 63) as usize;
    let nbits = n * (n.saturating_sub(1)) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < need {
        return Err(FormatError::Truncated {
            need,
            got: data.len(),
        });
    }
    if data.len() > need {
        return Err(FormatError::TrailingBytes);
    }
    let mut bits = Vec::with_capacity(need * 6);
    for &b in data {
        if !(63..=126).contains(&b) {
            return Err(FormatError::BadDataByte(b));
        }
        let v = b - 63;
        for shift in (0..6).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    let mut g = Graph::empty(n);
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[idx] {
                g.add_edge(i + 1, j + 1);
            }
            idx += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph as canonical graph6 (n ≤ 62).
pub fn encode_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n();
    if n > 62 {
        return Err(FormatError::TooLarge(n));
    }
    let mut bits = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i + 1, j + 1));
        }
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (pos, &bit) in chunk.iter().enumerate() {
            if bit {
                v |= 1 << (5 - pos);
            }
        }
        out.push((v + 63) as char);
    }
    Ok(out)
}

/// Parses edge-list text: lines "u v", blank lines and `#` comments
/// ignored, duplicate edges collapsed, n inferred as the largest label.
pub fn parse_edgelist(text: &str) -> Result<Graph, FormatError> {
    let mut edges = Vec::new();
    let mut max_label = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(FormatError::BadLine(lineno + 1));
        };
        let u: usize = a
            .parse()
            .map_err(|_| FormatError::BadToken(a.to_string(), lineno + 1))?;
        let v: usize = b
            .parse()
            .map_err(|_| FormatError::BadToken(b.to_string(), lineno + 1))?;
        if u == 0 || v == 0 {
            return Err(FormatError::ZeroLabel(lineno + 1));
        }
        if u == v {
            return Err(FormatError::SelfLoop(u));
        }
        max_label = max_label.max(u).max(v);
        edges.push((u, v));
    }
    let mut g = Graph::empty(max_label.max(1));
    for (u, v) in edges {
        g.add_edge(u, v);
    }
    Ok(g)
}

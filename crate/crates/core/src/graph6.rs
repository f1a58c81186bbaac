//! The graph6 short form: one size byte `n + 63`, then the upper
//! triangle x(0,1), x(0,2), x(1,2), x(0,3), ... packed 6 bits per byte,
//! most significant bit first, each byte offset by 63. Padding bits in
//! the last byte must be zero, which makes the encoding bijective.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

/// Upper-triangle pairs (i, j) with i < j in graph6 bit order.
pub(crate) fn triangle_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |j| (0..j).map(move |i| (i, j)))
}

/// Number of upper-triangle bits for `n` vertices.
pub(crate) fn triangle_bits(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Encodes a graph in graph6 short form.
///
/// Fails with [`Error::UnsupportedOrder`] above [`MAX_VERTICES`] vertices.
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedOrder { n, max: MAX_VERTICES });
    }
    let mut bytes = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for (i, j) in triangle_pairs(n) {
        acc = acc << 1 | u8::from(g.has_edge(i, j));
        filled += 1;
        if filled == 6 {
            bytes.push(acc + 63);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 bytes are ASCII"))
}

/// Decodes a graph6 short form string.
///
/// Every reported error carries the byte offset of the first offending
/// byte. Trailing bytes and nonzero padding are rejected, so parsing
/// accepts exactly the strings [`emit_graph6`] produces.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.as_bytes();
    let fail = |offset: usize, reason: &str| Error::Graph6Parse {
        offset,
        reason: reason.to_string(),
    };

    let &size = bytes.first().ok_or_else(|| fail(0, "empty input"))?;
    if size == 126 {
        return Err(fail(0, "long-form size (n > 62) is not supported"));
    }
    if !(63..126).contains(&size) {
        return Err(fail(0, "size byte out of range 63..=125"));
    }
    let n = (size - 63) as usize;

    let bit_count = triangle_bits(n);
    let need = bit_count.div_ceil(6);
    let data = &bytes[1..];
    if data.len() < need {
        return Err(Error::Graph6Parse {
            offset: bytes.len(),
            reason: format!("truncated: expected {need} data bytes, got {}", data.len()),
        });
    }
    if data.len() > need {
        return Err(fail(1 + need, "trailing bytes after the encoding"));
    }

    let mut edges = Vec::new();
    for (t, (i, j)) in triangle_pairs(n).enumerate() {
        let byte = data[t / 6];
        if !(63..=126).contains(&byte) {
            return Err(fail(1 + t / 6, "data byte out of range 63..=126"));
        }
        if (byte - 63) >> (5 - t % 6) & 1 == 1 {
            edges.push((i, j));
        }
    }
    // A nonempty padding range means the last byte was already range
    // checked by the edge loop, so the subtraction cannot underflow.
    for t in bit_count..need * 6 {
        if (data[t / 6] - 63) >> (5 - t % 6) & 1 == 1 {
            return Err(fail(1 + t / 6, "nonzero padding bit"));
        }
    }

    Ok(Graph::from_edges(n, &edges))
}

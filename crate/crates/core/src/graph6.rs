//! graph6 encoding of simple graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn encode_size(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out = String::new();
    encode_size(n, &mut out);
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push((byte + 63) as char);
    }
    out
}

/// Decodes one graph6 line. An optional `>>graph6<<` header is skipped.
pub fn decode(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::parse("graph6", "empty line"));
    }
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(Error::parse(
            format!("graph6 column {}", pos + 1),
            format!("byte {:#04x} outside the printable range 63..=126", bytes[pos]),
        ));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::parse("graph6", "unsupported size header"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(Error::parse(
            "graph6",
            format!("{n} vertices need {need} data bytes, found {}", body.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Decodes every non-blank line, reporting the 1-based line number on failure.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        out.push(decode(line.trim()).map_err(|e| match e {
            Error::Parse { location, message } => {
                Error::parse(format!("line {}: {location}", i + 1), message)
            }
            other => Error::parse(format!("line {}", i + 1), other.to_string()),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::Edge;

    #[test]
    fn known_strings() {
        let g = decode("DQc").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_list(), vec![Edge(0, 2), Edge(0, 4), Edge(1, 3), Edge(3, 4)]);
        let empty = decode("D??").unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (5, 0));
        assert_eq!(encode(&families::complete(4).unwrap()), "C~");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&families::petersen()), "IheA@GUAo");
    }

    #[test]
    fn round_trip() {
        for g in [
            families::dodecahedron(),
            families::icosahedron(),
            families::grid(3, 5).unwrap(),
            Graph::empty(1).unwrap(),
        ] {
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
        let big = families::cycle(63).unwrap();
        let s = encode(&big);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), big);
    }

    #[test]
    fn malformed() {
        assert!(decode("D?").is_err());
        assert!(decode("D??\u{7f}").is_err());
        let err = decode_lines("D??\nD?\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}

//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column-major order, packed big-endian into 6-bit
//! groups each offset by 63.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

/// Encodes `g` in graph6.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + (n >> 12 & 63) as u8);
        out.push(63 + (n >> 6 & 63) as u8);
        out.push(63 + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Decodes a graph6 string; surrounding whitespace and a leading
/// `>>graph6<<` marker are ignored.
pub fn read_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!("byte {b} outside the printable range 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(err("empty string")),
        [126, 126, ..] => return Err(err("8-byte size header exceeds the vertex profile")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(err("truncated size header"));
            }
            let n = rest[..3].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
            if n <= 62 {
                return Err(err(format!("non-canonical 4-byte header for n = {n}")));
            }
            (n, &rest[3..])
        }
        [h, rest @ ..] => ((h - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expect = bits.div_ceil(6);
    if body.len() != expect {
        return Err(err(format!(
            "n = {n} needs {expect} body bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[idx / 6] - 63;
            if byte >> (5 - idx % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            idx += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body.len() - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(err("nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Serde adapter storing a [`Graph`] as its graph6 string.
pub mod serde_graph6 {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&write_graph6(g))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Graph, D::Error> {
        let s = String::deserialize(d)?;
        read_graph6(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::low_mask;

    /// Reference encoder written straight from the format description:
    /// collect the bit string, pad to a multiple of six, emit 63 + each group.
    fn oracle_encode(n: usize, has: impl Fn(usize, usize) -> bool) -> String {
        let mut bits = Vec::new();
        for j in 0..n {
            for i in 0..j {
                bits.push(has(i, j));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut out = String::new();
        if n <= 62 {
            out.push((63 + n as u8) as char);
        } else {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((63 + ((n >> shift) & 63) as u8) as char);
            }
        }
        for chunk in bits.chunks(6) {
            let v = chunk.iter().fold(0u8, |a, &b| a << 1 | b as u8);
            out.push((63 + v) as char);
        }
        out
    }

    #[test]
    fn star_example() {
        let g = read_graph6("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(4), 4);
        assert_eq!(write_graph6(&g), "D?{");
        assert_eq!(oracle_encode(5, |i, j| g.has_edge(i, j)), "D?{");
    }

    #[test]
    fn small_cases() {
        assert_eq!(write_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(read_graph6("?").unwrap().order(), 0);
        assert_eq!(write_graph6(&Graph::empty(1).unwrap()), "@");
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(write_graph6(&k2), "A_");
        assert_eq!(read_graph6("A_").unwrap(), k2);
        assert_eq!(write_graph6(&Graph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn malformed_inputs() {
        assert!(read_graph6("").is_err());
        assert!(read_graph6("D?").is_err());
        assert!(read_graph6("D?{?").is_err());
        assert!(read_graph6("A`").is_err()); // padding bit set
        assert!(read_graph6("A\x7f").is_err());
        assert!(read_graph6("~?@").is_err());
        assert!(read_graph6("~??~").is_err()); // n = 63 with no body
        assert!(read_graph6("~??_").is_err()); // n = 32 in a long header
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for n in 0usize..=5 {
            let pairs = n * n.saturating_sub(1) / 2;
            for mask in 0..1u64 << pairs {
                let g = Graph::from_pair_mask(n, mask).unwrap();
                let s = write_graph6(&g);
                assert_eq!(s, oracle_encode(n, |i, j| g.has_edge(i, j)));
                assert_eq!(read_graph6(&s).unwrap(), g);
            }
        }
    }

    #[test]
    fn large_header() {
        let g = Graph::complete(63).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(read_graph6(&s).unwrap(), g);
        let g = Graph::complete(62).unwrap();
        let s = write_graph6(&g);
        assert_eq!(s.as_bytes()[0], 125);
        assert_eq!(read_graph6(&s).unwrap(), g);
        assert_eq!(g.rows()[0], low_mask(62) & !1);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn round_trip_up_to_12(n in 0usize..=12, seed in any::<u64>(), seed2 in any::<u64>()) {
                let mut g = Graph::empty(n).unwrap();
                let mut idx = 0u32;
                for j in 1..n {
                    for i in 0..j {
                        let word = if idx < 64 { seed } else { seed2 };
                        if word >> (idx % 64) & 1 == 1 {
                            g.add_edge(i, j);
                        }
                        idx += 1;
                    }
                }
                let s = write_graph6(&g);
                prop_assert_eq!(&s, &oracle_encode(n, |i, j| g.has_edge(i, j)));
                prop_assert_eq!(read_graph6(&s).unwrap(), g);
            }
        }
    }
}

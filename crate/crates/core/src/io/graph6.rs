//! graph6 and sparse6 text encodings.
//!
//! Both formats pack bits big-endian into 6-bit groups offset by 63. graph6
//! stores the upper triangle column by column; sparse6 stores an edge stream
//! prefixed with `:`.

use super::ParseError;
use crate::graph::{Graph, GraphBuilder};

const G6_HEADER: &str = ">>graph6<<";
const S6_HEADER: &str = ">>sparse6<<";

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
}

/// Reads the vertex count; returns `(n, bytes consumed)`.
fn read_size(data: &[u8], base: usize) -> Result<(usize, usize), ParseError> {
    let sextet = |i: usize| -> Result<usize, ParseError> {
        match data.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(&b) => Err(ParseError::at(base + i, format!("invalid byte 0x{b:02x}"))),
            None => Err(ParseError::at(base + i, "truncated vertex count")),
        }
    };
    if data.first() != Some(&b'~') {
        return Ok((sextet(0)?, 1));
    }
    if data.get(1) != Some(&b'~') {
        let mut n = 0;
        for i in 1..4 {
            n = n << 6 | sextet(i)?;
        }
        return Ok((n, 4));
    }
    let mut n = 0;
    for i in 2..8 {
        n = n << 6 | sextet(i)?;
    }
    Ok((n, 8))
}

struct BitWriter {
    out: String,
    acc: u8,
    len: u8,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        self.acc = self.acc << 1 | bit as u8;
        self.len += 1;
        if self.len == 6 {
            self.out.push((self.acc + 63) as char);
            self.acc = 0;
            self.len = 0;
        }
    }

    fn push_bits(&mut self, x: usize, k: usize) {
        for i in (0..k).rev() {
            self.push(x >> i & 1 == 1);
        }
    }

    fn pending(&self) -> usize {
        self.len as usize
    }

    fn finish(mut self, pad: bool) -> String {
        while self.len != 0 {
            self.push(pad);
        }
        self.out
    }
}

struct BitReader<'a> {
    data: &'a [u8],
    base: usize,
    pos: usize,
    bit: u8,
}

impl BitReader<'_> {
    fn next(&mut self) -> Result<Option<bool>, ParseError> {
        let Some(&b) = self.data.get(self.pos) else {
            return Ok(None);
        };
        if !(63..=126).contains(&b) {
            return Err(ParseError::at(self.base + self.pos, format!("invalid byte 0x{b:02x}")));
        }
        let v = (b - 63) >> (5 - self.bit) & 1 == 1;
        self.bit += 1;
        if self.bit == 6 {
            self.bit = 0;
            self.pos += 1;
        }
        Ok(Some(v))
    }

    fn read(&mut self, k: usize) -> Result<Option<usize>, ParseError> {
        let mut x = 0;
        for _ in 0..k {
            match self.next()? {
                Some(b) => x = x << 1 | b as usize,
                None => return Ok(None),
            }
        }
        Ok(Some(x))
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut w = BitWriter { out: String::with_capacity(n * n / 12 + 8), acc: 0, len: 0 };
    push_size(&mut w.out, n);
    for j in 1..n {
        let row = g.row(j);
        for i in 0..j {
            w.push(crate::bits::test(row, i));
        }
    }
    w.finish(false)
}

pub fn decode(data: &[u8]) -> Result<Graph, ParseError> {
    let (data, base) = strip(data, G6_HEADER);
    if data.is_empty() {
        return Err(ParseError::Empty);
    }
    let (n, used) = read_size(data, base)?;
    let body = &data[used..];
    let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if body.len() != need {
        return Err(ParseError::at(
            base + used + body.len().min(need),
            format!("graph6 body for n={n} needs {need} bytes, found {}", body.len()),
        ));
    }
    let mut r = BitReader { data: body, base: base + used, pos: 0, bit: 0 };
    let mut b = GraphBuilder::new(n);
    for j in 1..n {
        for i in 0..j {
            if r.next()?.expect("length checked") {
                b.edge(i, j);
            }
        }
    }
    Ok(b.build())
}

fn sparse_width(n: usize) -> usize {
    let mut k = 1;
    while (1usize << k) < n {
        k += 1;
    }
    k
}

pub fn encode_sparse6(g: &Graph) -> String {
    let n = g.n();
    let k = sparse_width(n);
    let mut w = BitWriter { out: String::from(":"), acc: 0, len: 0 };
    push_size(&mut w.out, n);
    let mut edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (v, u)).collect();
    edges.sort_unstable();
    let mut cur = 0;
    let mut nbits = 0usize;
    for (v, u) in edges {
        if v == cur {
            w.push(false);
            w.push_bits(u, k);
            nbits += 1 + k;
        } else if v == cur + 1 {
            cur += 1;
            w.push(true);
            w.push_bits(u, k);
            nbits += 1 + k;
        } else {
            cur = v;
            w.push(true);
            w.push_bits(v, k);
            w.push(false);
            w.push_bits(u, k);
            nbits += 2 + 2 * k;
        }
    }
    let pad = (6 - nbits % 6) % 6;
    debug_assert_eq!(pad, (6 - w.pending()) % 6);
    if k < 6 && n == 1 << k && pad >= k && cur + 1 < n {
        w.push(false);
    }
    w.finish(true)
}

pub fn decode_sparse6(data: &[u8]) -> Result<Graph, ParseError> {
    let (data, base) = strip(data, S6_HEADER);
    let Some(rest) = data.strip_prefix(b":") else {
        return Err(ParseError::at(base, "sparse6 must start with ':'"));
    };
    let base = base + 1;
    if rest.is_empty() {
        return Err(ParseError::at(base, "truncated vertex count"));
    }
    let (n, used) = read_size(rest, base)?;
    let k = sparse_width(n);
    let mut r = BitReader { data: &rest[used..], base: base + used, pos: 0, bit: 0 };
    let mut b = GraphBuilder::new(n);
    let mut v = 0usize;
    loop {
        let Some(bit) = r.next()? else { break };
        let Some(x) = r.read(k)? else { break };
        if bit {
            v += 1;
        }
        if x >= n || v >= n {
            break;
        }
        if x > v {
            v = x;
        } else if x != v {
            b.edge(x, v);
        }
    }
    Ok(b.build())
}

/// Accepts graph6 or sparse6, with optional header and surrounding whitespace.
pub fn decode_any(data: &[u8]) -> Result<Graph, ParseError> {
    let lead = data.iter().take_while(|b| b.is_ascii_whitespace()).count();
    let trimmed = data[lead..].trim_ascii_end();
    let shifted = |e: ParseError| e.shifted(lead);
    if trimmed.starts_with(b":") || trimmed.starts_with(S6_HEADER.as_bytes()) {
        decode_sparse6(trimmed).map_err(shifted)
    } else {
        decode(trimmed).map_err(shifted)
    }
}

fn strip<'a>(data: &'a [u8], header: &str) -> (&'a [u8], usize) {
    match data.strip_prefix(header.as_bytes()) {
        Some(rest) => (rest, header.len()),
        None => (data, 0),
    }
}

//! Plain decimal text formats.
//!
//! ```text
//! fracparity 1            graph 3 3          2 1 0         matrix 2 2
//! p 7 n 2 m 1             1 2                value 3/2     1 0
//! 1 0                     2 3                              0 1
//! 0 1                     1 3
//! ```
//!
//! Blank lines are ignored. Positions in errors are 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::linalg::FMatrix;

use super::{Graph, HalfVector, LineSet};

#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, msg)
    }

    fn expect(&self, word: &str) -> Result<()> {
        if self.text == word {
            Ok(())
        } else {
            Err(self.err(format!("expected `{word}`, found `{}`", self.text)))
        }
    }

    fn number(&self) -> Result<u64> {
        self.text
            .parse::<u64>()
            .map_err(|_| self.err(format!("expected a nonnegative integer, found `{}`", self.text)))
    }

    fn count(&self) -> Result<usize> {
        usize::try_from(self.number()?).map_err(|_| self.err("count too large"))
    }

    fn element(&self, p: Prime) -> Result<Fp> {
        p.checked(self.number()?)
    }
}

/// Non-empty lines, each split into tokens with positions.
fn lines(text: &str) -> Vec<Vec<Token<'_>>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let mut toks = Vec::new();
            let mut start = None;
            for (c, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(c),
                    (true, Some(s)) => {
                        toks.push(Token {
                            text: &raw[s..c],
                            line: i + 1,
                            column: raw[..s].chars().count() + 1,
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            (!toks.is_empty()).then_some(toks)
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<Vec<Token<'a>>>,
    next: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = lines(text);
        let last_line = text.lines().count();
        Cursor {
            lines,
            next: 0,
            last_line,
        }
    }

    fn line(&mut self, what: &str) -> Result<Vec<Token<'a>>> {
        let l = self
            .lines
            .get(self.next)
            .cloned()
            .ok_or_else(|| Error::parse(self.last_line + 1, 1, format!("unexpected end of input, expected {what}")))?;
        self.next += 1;
        Ok(l)
    }

    fn line_of(&mut self, what: &str, len: usize) -> Result<Vec<Token<'a>>> {
        let l = self.line(what)?;
        if l.len() != len {
            let t = l.get(len).unwrap_or(&l[l.len() - 1]);
            return Err(t.err(format!("expected {len} fields in {what}, found {}", l.len())));
        }
        Ok(l)
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.next) {
            Some(l) => Err(l[0].err("trailing input")),
            None => Ok(()),
        }
    }
}

pub fn write_line_set(ls: &LineSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "fracparity 1");
    let _ = writeln!(out, "p {} n {} m {}", ls.prime().modulus(), ls.n(), ls.m());
    let row = |v: &[Fp]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    for (a, b) in ls.lines() {
        let _ = writeln!(out, "{}", row(a));
        let _ = writeln!(out, "{}", row(b));
    }
    out
}

pub fn parse_line_set(text: &str) -> Result<LineSet> {
    let mut cur = Cursor::new(text);
    let head = cur.line_of("the header", 2)?;
    head[0].expect("fracparity")?;
    head[1].expect("1")?;
    let dims = cur.line_of("the dimension line", 6)?;
    dims[0].expect("p")?;
    dims[2].expect("n")?;
    dims[4].expect("m")?;
    let p = dims[1].number()?;
    let prime = Prime::new(p).map_err(|e| dims[1].err(e.to_string()))?;
    let n = dims[3].count()?;
    let m = dims[5].count()?;
    let mut gens = Vec::with_capacity(m);
    for i in 0..m {
        let mut pair = Vec::with_capacity(2);
        for which in ["a", "b"] {
            let row = cur.line_of(&format!("row {which} of line {}", i + 1), n)?;
            pair.push(row.iter().map(|t| t.element(prime)).collect::<Result<Vec<_>>>()?);
        }
        let b = pair.pop().expect("two rows");
        let a = pair.pop().expect("two rows");
        gens.push((a, b));
    }
    cur.finish()?;
    LineSet::new(prime, n, gens)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.vertices(), g.edges().len());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut cur = Cursor::new(text);
    let head = cur.line_of("the header", 3)?;
    head[0].expect("graph")?;
    let v = head[1].count()?;
    let e = head[2].count()?;
    let mut edges = Vec::with_capacity(e);
    for i in 0..e {
        let l = cur.line_of(&format!("edge {}", i + 1), 2)?;
        let mut ends = [0usize; 2];
        for (slot, t) in ends.iter_mut().zip(&l) {
            let x = t.count()?;
            if x == 0 || x > v {
                return Err(t.err(format!("vertex {x} outside 1..={v}")));
            }
            *slot = x - 1;
        }
        if ends[0] == ends[1] {
            return Err(Error::LoopEdge(ends[0] + 1));
        }
        edges.push((ends[0], ends[1]));
    }
    cur.finish()?;
    Graph::new(v, edges)
}

pub fn write_half_vector(y: &HalfVector) -> String {
    let row = y.doubled().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    format!("{row}\nvalue {}/2\n", y.value_doubled())
}

pub fn parse_half_vector(text: &str) -> Result<HalfVector> {
    let mut cur = Cursor::new(text);
    let first = cur.line("the vector")?;
    let (entries, value_line) = if first[0].text == "value" {
        (Vec::new(), first)
    } else {
        (first, cur.line("the value line")?)
    };
    let mut doubled = Vec::with_capacity(entries.len());
    for t in &entries {
        match t.number()? {
            d @ 0..=2 => doubled.push(d as u8),
            d => return Err(t.err(format!("doubled entry {d} is not 0, 1 or 2"))),
        }
    }
    if value_line.len() != 2 {
        return Err(value_line[0].err("expected `value <k>/2`"));
    }
    value_line[0].expect("value")?;
    let vt = value_line[1];
    let k = vt
        .text
        .strip_suffix("/2")
        .ok_or_else(|| vt.err("expected `<k>/2`"))?
        .parse::<usize>()
        .map_err(|_| vt.err("expected `<k>/2`"))?;
    cur.finish()?;
    let y = HalfVector::new(doubled)?;
    if y.value_doubled() != k {
        return Err(vt.err(format!("value {k}/2 does not match the entries (sum {})", y.value_doubled())));
    }
    Ok(y)
}

pub fn write_matrix(m: &FMatrix) -> String {
    let mut out = format!("matrix {} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row = m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(out, "{row}");
    }
    out
}

pub fn parse_matrix(prime: Prime, text: &str) -> Result<FMatrix> {
    let mut cur = Cursor::new(text);
    let head = cur.line_of("the header", 3)?;
    head[0].expect("matrix")?;
    let r = head[1].count()?;
    let c = head[2].count()?;
    let mut m = FMatrix::zeros(prime, r, c);
    for i in 0..r {
        if c == 0 {
            break;
        }
        let row = cur.line_of(&format!("matrix row {}", i + 1), c)?;
        for (j, t) in row.iter().enumerate() {
            m[(i, j)] = t.element(prime)?;
        }
    }
    cur.finish()?;
    Ok(m)
}

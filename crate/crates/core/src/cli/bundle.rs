//! Line-oriented bundle format.
//!
//! ```text
//! ring 32003 x y
//! potential x*y
//! value 0
//! mf E 1
//! x
//! /
//! y
//! morphism p E E
//! y
//! /
//! y
//! module M 1
//! x
//! ```
//!
//! Matrix rows hold comma-separated polynomials. A `module` block lists one
//! relation per line (a column of the presentation) and ends at the next
//! keyword. `#` starts a comment.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mf::{MatrixFactorization, MfMorphism};
use crate::module::{FPModule, Over, RingMatrix};
use crate::ring::{MonomialOrder, Poly, Ring, RingContext};

const KEYWORDS: [&str; 6] = ["ring", "potential", "value", "mf", "morphism", "module"];

/// Overrides applied while loading.
#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub field_char: Option<u32>,
    pub order: MonomialOrder,
    pub max_steps: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Entry {
    Mf(String, MatrixFactorization),
    Morphism {
        name: String,
        src: String,
        dst: String,
        map: MfMorphism,
    },
    Module(String, FPModule),
}

impl Entry {
    pub fn name(&self) -> &str {
        match self {
            Entry::Mf(n, _) | Entry::Module(n, _) => n,
            Entry::Morphism { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    ctx: Arc<RingContext>,
    entries: Vec<Entry>,
}

impl Bundle {
    pub fn new(ctx: Arc<RingContext>) -> Self {
        Bundle {
            ctx,
            entries: Vec::new(),
        }
    }

    pub fn context(&self) -> &Arc<RingContext> {
        &self.ctx
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    pub fn mf(&self, name: &str) -> Option<&MatrixFactorization> {
        match self.get(name)? {
            Entry::Mf(_, e) => Some(e),
            _ => None,
        }
    }

    pub fn morphism(&self, name: &str) -> Option<&MfMorphism> {
        match self.get(name)? {
            Entry::Morphism { map, .. } => Some(map),
            _ => None,
        }
    }

    pub fn module(&self, name: &str) -> Option<&FPModule> {
        match self.get(name)? {
            Entry::Module(_, m) => Some(m),
            _ => None,
        }
    }

    /// Add an entry; names must be fresh.
    pub fn push(&mut self, entry: Entry) -> Result<()> {
        if !is_identifier(entry.name()) {
            return Err(Error::InvalidArgument(format!("`{}` is not a valid name", entry.name())));
        }
        if self.get(entry.name()).is_some() {
            return Err(Error::InvalidArgument(format!("duplicate name `{}`", entry.name())));
        }
        self.entries.push(entry);
        Ok(())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Clone, Copy)]
struct Line<'a> {
    number: usize,
    text: &'a str,
    /// Byte offset of `text` within the raw line.
    offset: usize,
}

impl Line<'_> {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            col: self.offset + col,
            msg: msg.into(),
        }
    }

    fn words(&self) -> Vec<(usize, &str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push((s + 1, &self.text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    fn keyword(&self) -> Option<&str> {
        let first = self.text.split_whitespace().next()?;
        KEYWORDS.contains(&first).then_some(first)
    }
}

fn lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        if trimmed.is_empty() {
            continue;
        }
        out.push(Line {
            number: i + 1,
            text: trimmed,
            offset,
        });
    }
    out
}

fn parse_poly(ring: &Arc<Ring>, line: &Line, col: usize, text: &str) -> Result<Poly> {
    ring.parse(text).map_err(|e| match e {
        Error::Parse { col: c, msg, .. } => line.err(col + c - 1, msg),
        other => other,
    })
}

/// One comma-separated row; optional surrounding brackets are ignored.
fn parse_row(ring: &Arc<Ring>, line: &Line) -> Result<Vec<Poly>> {
    let mut text = line.text;
    let mut base = 1;
    if let Some(rest) = text.strip_prefix('[') {
        text = rest.strip_suffix(']').ok_or_else(|| line.err(line.text.len(), "missing `]`"))?;
        base = 2;
    }
    let mut out = Vec::new();
    let mut start = 0;
    for piece in text.split(',') {
        out.push(parse_poly(ring, line, base + start, piece)?);
        start += piece.len() + 1;
    }
    Ok(out)
}

fn parse_count(line: &Line, col: usize, word: &str) -> Result<usize> {
    word.parse::<usize>()
        .map_err(|_| line.err(col, format!("expected a count, found `{word}`")))
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn next(&mut self) -> Option<Line<'a>> {
        let l = *self.lines.get(self.pos)?;
        self.pos += 1;
        Some(l)
    }

    fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    fn eof(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.last_line + 1,
            col: 1,
            msg: msg.into(),
        }
    }

    /// `rows` matrix rows of `cols` entries each.
    fn matrix(&mut self, ring: &Arc<Ring>, rows: usize, cols: usize) -> Result<RingMatrix> {
        let mut out = Vec::new();
        for _ in 0..rows {
            let line = match self.next() {
                Some(l) => l,
                None => return Err(self.eof("unexpected end of input inside a matrix")),
            };
            if line.keyword().is_some() || line.text == "/" {
                return Err(line.err(1, format!("expected a matrix row with {cols} entries")));
            }
            let row = parse_row(ring, &line)?;
            if row.len() != cols {
                return Err(line.err(1, format!("expected {cols} entries, found {}", row.len())));
            }
            out.push(row);
        }
        if rows == 0 {
            return Ok(RingMatrix::zeros(ring, 0, cols));
        }
        RingMatrix::from_rows(ring, out)
    }

    fn slash(&mut self) -> Result<()> {
        match self.next() {
            Some(l) if l.text == "/" => Ok(()),
            Some(l) => Err(l.err(1, "expected `/`")),
            None => Err(self.eof("expected `/`")),
        }
    }
}

/// Parse and validate a bundle.
pub fn parse_bundle(text: &str, opts: &LoadOptions) -> Result<Bundle> {
    let all = lines(text);
    let last_line = text.lines().count();
    let mut cur = Cursor {
        lines: all,
        pos: 0,
        last_line,
    };

    let first = cur.next().ok_or_else(|| Error::Parse {
        line: 1,
        col: 1,
        msg: "empty bundle; expected `ring`".into(),
    })?;
    let words = first.words();
    if words[0].1 != "ring" {
        return Err(first.err(words[0].0, "expected `ring <p> <vars>`"));
    }
    if words.len() < 2 {
        return Err(first.err(first.text.len() + 1, "missing characteristic"));
    }
    let p: u32 = words[1]
        .1
        .parse()
        .map_err(|_| first.err(words[1].0, format!("invalid characteristic `{}`", words[1].1)))?;
    let p = opts.field_char.unwrap_or(p);
    let vars: Vec<&str> = words[2..].iter().map(|w| w.1).collect();
    if let Some((col, kw)) = words[2..].iter().find(|w| KEYWORDS.contains(&w.1)) {
        return Err(first.err(*col, format!("`{kw}` is a keyword and cannot name a variable")));
    }
    let mut ring = Ring::new(p, &vars, opts.order).map_err(|e| match e {
        Error::InvalidRing(msg) => first.err(1, msg),
        other => other,
    })?;
    if let Some(steps) = opts.max_steps {
        ring = ring.with_max_steps(steps);
    }

    let mut potential = None;
    let mut value = 0i64;
    let mut ctx: Option<Arc<RingContext>> = None;
    let mut bundle: Option<Bundle> = None;

    while let Some(line) = cur.next() {
        let words = line.words();
        let (kcol, kw) = words[0];
        match kw {
            "potential" | "value" => {
                if ctx.is_some() {
                    return Err(line.err(kcol, format!("`{kw}` must precede all objects")));
                }
                let rest_col = words.get(1).map(|w| w.0).unwrap_or(line.text.len() + 1);
                let rest = line.text[rest_col - 1..].trim();
                if rest.is_empty() {
                    return Err(line.err(rest_col, format!("missing argument to `{kw}`")));
                }
                if kw == "potential" {
                    if potential.is_some() {
                        return Err(line.err(kcol, "duplicate `potential`"));
                    }
                    potential = Some(parse_poly(&ring, &line, rest_col, rest)?);
                } else {
                    value = rest
                        .parse()
                        .map_err(|_| line.err(rest_col, format!("invalid value `{rest}`")))?;
                }
            }
            "mf" | "morphism" | "module" => {
                if ctx.is_none() {
                    let w = potential
                        .clone()
                        .ok_or_else(|| line.err(kcol, "`potential` must precede all objects"))?;
                    let c = RingContext::new(ring.clone(), w, value)
                        .map_err(|e| match e {
                            Error::InvalidRing(msg) => line.err(kcol, msg),
                            other => other,
                        })?;
                    bundle = Some(Bundle::new(c.clone()));
                    ctx = Some(c);
                }
                let c = ctx.as_ref().unwrap();
                let b = bundle.as_mut().unwrap();
                let arity = if kw == "morphism" { 4 } else { 3 };
                if words.len() != arity {
                    return Err(line.err(kcol, format!("`{kw}` takes {} arguments", arity - 1)));
                }
                let name = words[1].1.to_string();
                if !is_identifier(&name) || KEYWORDS.contains(&name.as_str()) {
                    return Err(line.err(words[1].0, format!("invalid name `{name}`")));
                }
                if b.get(&name).is_some() {
                    return Err(line.err(words[1].0, format!("duplicate name `{name}`")));
                }
                let entry = match kw {
                    "mf" => {
                        let r = parse_count(&line, words[2].0, words[2].1)?;
                        let e1 = cur.matrix(&ring, r, r)?;
                        cur.slash()?;
                        let e0 = cur.matrix(&ring, r, r)?;
                        let e = MatrixFactorization::new(c, e1, e0)?.with_name(name.clone());
                        Entry::Mf(name, e)
                    }
                    "morphism" => {
                        let lookup = |w: (usize, &str)| {
                            b.mf(w.1)
                                .cloned()
                                .ok_or_else(|| line.err(w.0, format!("unknown factorization `{}`", w.1)))
                        };
                        let src = lookup(words[2])?;
                        let dst = lookup(words[3])?;
                        let p1 = cur.matrix(&ring, dst.rank(), src.rank())?;
                        cur.slash()?;
                        let p0 = cur.matrix(&ring, dst.rank(), src.rank())?;
                        let map = MfMorphism::new(&src, &dst, p1, p0)?;
                        Entry::Morphism {
                            name,
                            src: words[2].1.to_string(),
                            dst: words[3].1.to_string(),
                            map,
                        }
                    }
                    _ => {
                        let g = parse_count(&line, words[2].0, words[2].1)?;
                        let mut rels = Vec::new();
                        while let Some(next) = cur.peek() {
                            if next.keyword().is_some() {
                                break;
                            }
                            let next = cur.next().unwrap();
                            let row = parse_row(&ring, &next)?;
                            if row.len() != g {
                                return Err(next.err(1, format!("expected {g} entries, found {}", row.len())));
                            }
                            rels.push(row);
                        }
                        let pres = RingMatrix::from_columns(&ring, g, &rels)?;
                        Entry::Module(name, FPModule::new(c, pres, Over::R)?)
                    }
                };
                b.push(entry)?;
            }
            _ => {
                return Err(line.err(kcol, format!("unexpected `{kw}`; expected a keyword")));
            }
        }
    }

    match bundle {
        Some(b) => Ok(b),
        None => {
            let w = potential.ok_or_else(|| cur.eof("missing `potential`"))?;
            Ok(Bundle::new(RingContext::new(ring, w, value)?))
        }
    }
}

fn push_matrix(out: &mut String, m: &RingMatrix) {
    for line in m.row_lines() {
        out.push_str(&line);
        out.push('\n');
    }
}

/// `mf` block in bundle syntax.
pub fn format_mf(name: &str, e: &MatrixFactorization) -> String {
    let mut out = format!("mf {name} {}\n", e.rank());
    push_matrix(&mut out, e.e1());
    out.push_str("/\n");
    push_matrix(&mut out, e.e0());
    out
}

pub fn format_morphism(name: &str, src: &str, dst: &str, p: &MfMorphism) -> String {
    let mut out = format!("morphism {name} {src} {dst}\n");
    push_matrix(&mut out, p.p1());
    out.push_str("/\n");
    push_matrix(&mut out, p.p0());
    out
}

pub fn format_module(name: &str, m: &FPModule) -> String {
    let mut out = format!("module {name} {}\n", m.gens());
    push_matrix(&mut out, &m.presentation().transpose());
    out
}

impl fmt::Display for Bundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ctx.ring();
        write!(f, "ring {}", ring.characteristic())?;
        for v in ring.vars() {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        writeln!(f, "potential {}", self.ctx.potential())?;
        let value = ring.coef_to_i64(self.ctx.value());
        if value != 0 {
            writeln!(f, "value {value}")?;
        }
        for entry in &self.entries {
            let block = match entry {
                Entry::Mf(name, e) => format_mf(name, e),
                Entry::Morphism { name, src, dst, map } => format_morphism(name, src, dst, map),
                Entry::Module(name, m) => format_module(name, m),
            };
            f.write_str(&block)?;
        }
        Ok(())
    }
}

//! Text formats for specifications, circuits, truth tables and templates.
//!
//! ```text
//! # spec file                # circuit file          # table file
//! n 3                        .lines 3                .inputs 2
//! perm 1 0 3 2 5 7 4 6       T(b',c':a) T(b,c':a)    .outputs 1
//!                            T(a,c:b)                0
//!                                                    1
//!                                                    1
//!                                                    0
//! ```
//!
//! Gates accept `:` or `;` before the target, `'` for a negative control
//! and `T(x)` for a NOT. Circuit files are in application order. Template
//! files hold two circuits separated by a line containing only `=>`.

use std::fmt::Write as _;

use crate::bits::{line_index, line_name, MAX_WIDTH};
use crate::circuit::Circuit;
use crate::embedding::IrreversibleTable;
use crate::error::{Error, Result};
use crate::gate::{Control, ToffoliGate};
use crate::optimizer::Template;
use crate::spec::ReversibleSpec;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based position.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

/// Splits `text` into tokens, dropping `#` comments. `line_offset` shifts
/// reported line numbers for sub-documents.
fn tokens(text: &str, line_offset: usize) -> impl Iterator<Item = Token<'_>> {
    text.lines().enumerate().flat_map(move |(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let mut out = Vec::new();
        let mut start = None;
        for (col, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(col),
                (true, Some(s)) => {
                    out.push(Token {
                        text: &body[s..col],
                        line: i + 1 + line_offset,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        out
    })
}

fn parse_number<T: std::str::FromStr>(tok: &Token<'_>, what: &str) -> Result<T> {
    tok.text
        .parse()
        .map_err(|_| parse_err(tok.line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

fn end_position(text: &str) -> (usize, usize) {
    let lines = text.lines().count().max(1);
    let last = text.lines().last().unwrap_or("");
    (lines, last.chars().count() + 1)
}

pub fn parse_spec(text: &str) -> Result<ReversibleSpec> {
    let mut toks = tokens(text, 0);
    let (eof_line, eof_col) = end_position(text);
    let eof = |what: &str| parse_err(eof_line, eof_col, format!("unexpected end of input, expected {what}"));

    let kw = toks.next().ok_or_else(|| eof("`n`"))?;
    if kw.text != "n" {
        return Err(parse_err(kw.line, kw.column, format!("expected `n`, found `{}`", kw.text)));
    }
    let wtok = toks.next().ok_or_else(|| eof("line count"))?;
    let width: usize = parse_number(&wtok, "line count")?;
    if !(1..=MAX_WIDTH).contains(&width) {
        return Err(parse_err(wtok.line, wtok.column, format!("line count {width} outside 1..=16")));
    }
    let kw = toks.next().ok_or_else(|| eof("`perm`"))?;
    if kw.text != "perm" {
        return Err(parse_err(kw.line, kw.column, format!("expected `perm`, found `{}`", kw.text)));
    }
    let size = 1usize << width;
    let mut perm = Vec::with_capacity(size);
    for tok in toks {
        if perm.len() == size {
            return Err(parse_err(tok.line, tok.column, format!("more than {size} values")));
        }
        let v: u32 = parse_number(&tok, "integer")?;
        if v as usize >= size {
            return Err(parse_err(tok.line, tok.column, format!("value {v} outside 0..{size}")));
        }
        perm.push(v);
    }
    if perm.len() != size {
        return Err(parse_err(
            eof_line,
            eof_col,
            format!("expected {size} values, found {}", perm.len()),
        ));
    }
    ReversibleSpec::new(width, perm)
}

pub fn format_spec(spec: &ReversibleSpec) -> String {
    let mut s = format!("n {}\nperm", spec.width());
    for v in spec.perm() {
        write!(s, " {v}").expect("write to string");
    }
    s.push('\n');
    s
}

/// Character cursor with 1-based line/column tracking.
struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line_offset: usize) -> Self {
        Cursor {
            chars: text.chars().peekable(),
            line: 1 + line_offset,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Skips whitespace and `#` comments.
    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    /// Skips spaces and tabs only.
    fn skip_blank(&mut self) {
        while self.peek().is_some_and(|c| c == ' ' || c == '\t' || c == '\r') {
            self.bump();
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, self.column, message)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    fn word(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '#' {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

/// A gate as written: controls and target by line index, with positions
/// for error reporting.
struct RawGate {
    target: usize,
    controls: Vec<Control>,
    line: usize,
    column: usize,
}

fn parse_line_name(cur: &mut Cursor<'_>) -> Result<(usize, usize, usize)> {
    cur.skip_blank();
    let (line, column) = (cur.line, cur.column);
    match cur.peek() {
        Some(c) if c.is_ascii_lowercase() => {
            cur.bump();
            let idx = line_index(c).expect("lowercase letter");
            if idx >= MAX_WIDTH {
                return Err(Error::UnknownLine {
                    name: c.to_string(),
                    line,
                    column,
                });
            }
            Ok((idx, line, column))
        }
        Some(c) if c.is_alphanumeric() => Err(Error::UnknownLine {
            name: c.to_string(),
            line,
            column,
        }),
        Some(c) => Err(cur.err(format!("expected a line name, found `{c}`"))),
        None => Err(cur.err("expected a line name, found end of input")),
    }
}

fn parse_gate(cur: &mut Cursor<'_>) -> Result<RawGate> {
    let (line, column) = (cur.line, cur.column);
    cur.expect('T')?;
    cur.skip_blank();
    cur.expect('(')?;
    cur.skip_blank();
    let mut items: Vec<(Control, usize, usize)> = Vec::new();
    let mut target = None;
    if matches!(cur.peek(), Some(':' | ';')) {
        cur.bump();
        target = Some(parse_line_name(cur)?);
    } else {
        loop {
            let (idx, l, c) = parse_line_name(cur)?;
            cur.skip_blank();
            let positive = if cur.peek() == Some('\'') {
                cur.bump();
                cur.skip_blank();
                false
            } else {
                true
            };
            items.push((Control { line: idx, positive }, l, c));
            match cur.peek() {
                Some(',') => {
                    cur.bump();
                }
                Some(':' | ';') => {
                    cur.bump();
                    target = Some(parse_line_name(cur)?);
                    break;
                }
                Some(')') => break,
                Some(ch) => return Err(cur.err(format!("expected `,`, `:` or `)`, found `{ch}`"))),
                None => return Err(cur.err("unterminated gate")),
            }
        }
    }
    cur.skip_blank();
    cur.expect(')')?;

    let (target, controls) = match target {
        Some((t, _, _)) => (t, items),
        // `T(x)`: a bare NOT.
        None => match items.as_slice() {
            [(c, _, _)] if c.positive => (c.line, Vec::new()),
            _ => {
                return Err(parse_err(
                    line,
                    column,
                    "gate without `:` must name exactly one positive line",
                ))
            }
        },
    };
    let mut seen = 0u32;
    let mut ctrls = Vec::with_capacity(controls.len());
    for (c, l, col) in controls {
        if c.line == target {
            return Err(Error::SelfControl {
                name: line_name(c.line).to_string(),
                line: l,
                column: col,
            });
        }
        if seen >> c.line & 1 == 1 {
            return Err(parse_err(l, col, format!("line `{}` repeated", line_name(c.line))));
        }
        seen |= 1 << c.line;
        ctrls.push(c);
    }
    Ok(RawGate {
        target,
        controls: ctrls,
        line,
        column,
    })
}

/// A `.lines` value with the position of its directive.
type Declared = Option<(usize, usize, usize)>;

/// Parses gates and an optional `.lines` header.
fn parse_gate_list(text: &str, line_offset: usize) -> Result<(Declared, Vec<RawGate>)> {
    let mut cur = Cursor::new(text, line_offset);
    let mut declared = None;
    let mut gates = Vec::new();
    loop {
        cur.skip_trivia();
        let Some(c) = cur.peek() else { break };
        match c {
            '.' => {
                let (l, col) = (cur.line, cur.column);
                let directive = cur.word();
                if directive != ".lines" {
                    return Err(parse_err(l, col, format!("unknown directive `{directive}`")));
                }
                if declared.is_some() || !gates.is_empty() {
                    return Err(parse_err(l, col, "`.lines` must come first and only once"));
                }
                cur.skip_blank();
                let (nl, ncol) = (cur.line, cur.column);
                let num = cur.word();
                let n: usize = num
                    .parse()
                    .map_err(|_| parse_err(nl, ncol, format!("expected line count, found `{num}`")))?;
                if !(1..=MAX_WIDTH).contains(&n) {
                    return Err(parse_err(nl, ncol, format!("line count {n} outside 1..=16")));
                }
                declared = Some((n, l, col));
            }
            'T' => gates.push(parse_gate(&mut cur)?),
            // Separators between gates in pasted listings.
            ',' => {
                cur.bump();
            }
            other => return Err(cur.err(format!("expected a gate, found `{other}`"))),
        }
    }
    Ok((declared, gates))
}

fn used_width(gates: &[RawGate]) -> usize {
    gates
        .iter()
        .flat_map(|g| std::iter::once(g.target).chain(g.controls.iter().map(|c| c.line)))
        .max()
        .map_or(1, |m| m + 1)
}

fn build_circuit(width: usize, gates: Vec<RawGate>) -> Result<Circuit> {
    let mut out = Vec::with_capacity(gates.len());
    for g in gates {
        for line in std::iter::once(g.target).chain(g.controls.iter().map(|c| c.line)) {
            if line >= width {
                return Err(Error::UnknownLine {
                    name: line_name(line).to_string(),
                    line: g.line,
                    column: g.column,
                });
            }
        }
        out.push(
            ToffoliGate::new(width, g.target, &g.controls)
                .map_err(|e| parse_err(g.line, g.column, e.to_string()))?,
        );
    }
    Circuit::new(width, out)
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let (declared, gates) = parse_gate_list(text, 0)?;
    let width = declared.map_or_else(|| used_width(&gates), |(n, _, _)| n);
    build_circuit(width, gates)
}

/// `.lines n` header then one gate per line.
pub fn format_circuit(circuit: &Circuit) -> String {
    let mut s = format!(".lines {}\n", circuit.width());
    for g in circuit.gates() {
        writeln!(s, "{g}").expect("write to string");
    }
    s
}

pub fn parse_template(text: &str) -> Result<Template> {
    let mut offset = None;
    let mut consumed = 0usize;
    for (i, raw) in text.split_inclusive('\n').enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body == "=>" {
            if offset.is_some() {
                return Err(parse_err(i + 1, 1, "more than one `=>` separator"));
            }
            offset = Some((consumed, consumed + raw.len(), i + 1));
        }
        consumed += raw.len();
    }
    let (before, after, sep_line) = offset.ok_or_else(|| {
        let (l, c) = end_position(text);
        parse_err(l, c, "missing `=>` separator")
    })?;
    let (declared, pattern) = parse_gate_list(&text[..before], 0)?;
    let (declared_r, replacement) = parse_gate_list(&text[after..], sep_line)?;
    if let Some((_, l, c)) = declared_r {
        return Err(parse_err(l, c, "`.lines` belongs above `=>`"));
    }
    let width = declared.map_or_else(
        || used_width(&pattern).max(used_width(&replacement)),
        |(n, _, _)| n,
    );
    let pattern = build_circuit(width, pattern)?;
    let replacement = build_circuit(width, replacement)?;
    Template::new("file", pattern, replacement)
}

pub fn format_template(t: &Template) -> String {
    let mut s = format_circuit(t.pattern());
    s.push_str("=>\n");
    for g in t.replacement().gates() {
        writeln!(s, "{g}").expect("write to string");
    }
    s
}

/// `.inputs n`, `.outputs k`, then `2^n` rows of `k` bits, most significant
/// output first, in ascending input order.
pub fn parse_table(text: &str) -> Result<IrreversibleTable> {
    let mut toks = tokens(text, 0).peekable();
    let (eof_line, eof_col) = end_position(text);
    let mut header = |name: &str| -> Result<usize> {
        let kw = toks
            .next()
            .ok_or_else(|| parse_err(eof_line, eof_col, format!("expected `{name}`")))?;
        if kw.text != name {
            return Err(parse_err(kw.line, kw.column, format!("expected `{name}`, found `{}`", kw.text)));
        }
        let num = toks
            .next()
            .ok_or_else(|| parse_err(eof_line, eof_col, format!("expected a count after `{name}`")))?;
        let n: usize = parse_number(&num, "count")?;
        if !(1..=MAX_WIDTH).contains(&n) {
            return Err(parse_err(num.line, num.column, format!("count {n} outside 1..=16")));
        }
        Ok(n)
    };
    let inputs = header(".inputs")?;
    let outputs = header(".outputs")?;
    let mut rows = Vec::with_capacity(1 << inputs);
    for tok in toks {
        if tok.text.len() != outputs || !tok.text.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(parse_err(
                tok.line,
                tok.column,
                format!("expected a {outputs}-bit row, found `{}`", tok.text),
            ));
        }
        if rows.len() > 1 << inputs {
            break;
        }
        rows.push(u32::from_str_radix(tok.text, 2).expect("binary digits"));
    }
    IrreversibleTable::new(inputs, outputs, rows)
}

pub fn format_table(table: &IrreversibleTable) -> String {
    let mut s = format!(".inputs {}\n.outputs {}\n", table.inputs(), table.outputs());
    for r in table.rows() {
        writeln!(s, "{:0width$b}", r, width = table.outputs()).expect("write to string");
    }
    s
}

//! Line-oriented text format for flag codes and subspace codes.
//!
//! ```text
//! FLAGCODE v1
//! field p=2 e=1
//! ambient n=4
//! type 1,2,3
//! count 2
//! flag
//! subspace k=1
//! 1 0 0 0
//! subspace k=2
//! ...
//! ```
//!
//! Subspace codes use `SUBCODE v1`, a single dimension in `type`, and
//! `subspace` blocks without `flag` lines. An optional `tower=k,s` on the
//! field line records the extension tower a code was built from. Blank
//! lines and lines starting with `#` are ignored.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{make_field, FiniteField};
use crate::flag::{Flag, FlagCode};
use crate::linalg::Matrix;
use crate::subspace::{Subspace, SubspaceCode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Flags(FlagCode),
    Subspaces(SubspaceCode),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeFile {
    pub p: u32,
    pub e: usize,
    pub tower: Option<(usize, usize)>,
    pub body: Body,
}

impl CodeFile {
    pub fn flags(p: u32, e: usize, tower: Option<(usize, usize)>, code: FlagCode) -> CodeFile {
        CodeFile {
            p,
            e,
            tower,
            body: Body::Flags(code),
        }
    }

    pub fn subspaces(p: u32, e: usize, tower: Option<(usize, usize)>, code: SubspaceCode) -> CodeFile {
        CodeFile {
            p,
            e,
            tower,
            body: Body::Subspaces(code),
        }
    }

    pub fn ambient(&self) -> usize {
        match &self.body {
            Body::Flags(c) => c.type_vector().ambient(),
            Body::Subspaces(c) => c.ambient(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let magic = match self.body {
            Body::Flags(_) => "FLAGCODE v1",
            Body::Subspaces(_) => "SUBCODE v1",
        };
        writeln!(s, "{magic}").unwrap();
        write!(s, "field p={} e={}", self.p, self.e).unwrap();
        if let Some((k, t)) = self.tower {
            write!(s, " tower={k},{t}").unwrap();
        }
        writeln!(s).unwrap();
        writeln!(s, "ambient n={}", self.ambient()).unwrap();
        match &self.body {
            Body::Flags(c) => {
                let dims: Vec<String> = c.type_vector().dims().iter().map(usize::to_string).collect();
                writeln!(s, "type {}", dims.join(",")).unwrap();
                writeln!(s, "count {}", c.len()).unwrap();
                for f in c.iter() {
                    writeln!(s, "flag").unwrap();
                    for sub in f.subspaces() {
                        write_subspace(&mut s, sub);
                    }
                }
            }
            Body::Subspaces(c) => {
                writeln!(s, "type {}", c.dim()).unwrap();
                writeln!(s, "count {}", c.len()).unwrap();
                for sub in c.iter() {
                    write_subspace(&mut s, sub);
                }
            }
        }
        s
    }

    pub fn parse(text: &str) -> Result<CodeFile> {
        Parser::new(text).parse()
    }
}

fn write_subspace(s: &mut String, sub: &Subspace) {
    writeln!(s, "subspace k={}", sub.dim()).unwrap();
    s.push_str(&sub.basis().to_text());
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        Parser { lines, pos: 0 }
    }

    /// Line number to blame when input ends early.
    fn eof_line(&self) -> usize {
        self.lines.last().map_or(1, |(n, _)| n + 1)
    }

    fn next(&mut self, expected: &str) -> Result<(usize, &'a str)> {
        let item = self.lines.get(self.pos).copied().ok_or_else(|| {
            err(
                self.eof_line(),
                1,
                format!("unexpected end of file, expected {expected}"),
            )
        })?;
        self.pos += 1;
        Ok(item)
    }

    /// A line `keyword rest...`, returning `rest`.
    fn keyword(&mut self, kw: &str) -> Result<(usize, &'a str)> {
        let (n, line) = self.next(&format!("`{kw}`"))?;
        let t = line.trim_start();
        let indent = line.len() - t.len();
        match t.strip_prefix(kw) {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => Ok((n, rest)),
            _ => Err(err(n, indent + 1, format!("expected `{kw}`, found {t:?}"))),
        }
    }

    fn parse(mut self) -> Result<CodeFile> {
        let (n0, magic) = self.next("a format line")?;
        let flags = match magic.trim() {
            "FLAGCODE v1" => true,
            "SUBCODE v1" => false,
            other => return Err(err(n0, 1, format!("unknown format line {other:?}"))),
        };

        let (ln, rest) = self.keyword("field")?;
        let mut p = None;
        let mut e = None;
        let mut tower = None;
        for (col, tok) in tokens(rest, "field".len()) {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| err(ln, col, format!("expected key=value, found {tok:?}")))?;
            match key {
                "p" => p = Some(number::<u32>(value, ln, col)?),
                "e" => e = Some(number::<usize>(value, ln, col)?),
                "tower" => {
                    let (a, b) = value
                        .split_once(',')
                        .ok_or_else(|| err(ln, col, "tower must be `k,s`"))?;
                    tower = Some((number(a, ln, col)?, number(b, ln, col)?));
                }
                _ => return Err(err(ln, col, format!("unknown field key {key:?}"))),
            }
        }
        let p = p.ok_or_else(|| err(ln, 1, "missing p="))?;
        let e = e.ok_or_else(|| err(ln, 1, "missing e="))?;
        let field = make_field(p, e, None).map_err(|x| err(ln, 1, x.to_string()))?;

        let (ln, rest) = self.keyword("ambient")?;
        let n = match tokens(rest, "ambient".len()).as_slice() {
            [(col, tok)] => {
                let v = tok.strip_prefix("n=").ok_or_else(|| err(ln, *col, "expected n=<n>"))?;
                number::<usize>(v, ln, *col)?
            }
            _ => return Err(err(ln, 1, "expected `ambient n=<n>`")),
        };

        let (ln, rest) = self.keyword("type")?;
        let (col, tok) = single_token(rest, "type".len(), ln)?;
        let dims = tok
            .split(',')
            .map(|d| number::<usize>(d, ln, col))
            .collect::<Result<Vec<_>>>()?;
        if !flags && dims.len() != 1 {
            return Err(err(ln, col, "a subspace code has a single dimension"));
        }

        let (ln, rest) = self.keyword("count")?;
        let (col, tok) = single_token(rest, "count".len(), ln)?;
        let count = number::<usize>(tok, ln, col)?;
        if count == 0 {
            return Err(err(ln, col, "a code needs at least one member"));
        }

        let body = if flags {
            let mut out = Vec::with_capacity(count);
            for _ in 0..count {
                let (fl, _) = self.keyword("flag")?;
                let subs = dims
                    .iter()
                    .map(|&d| self.subspace(&field, d, n))
                    .collect::<Result<Vec<_>>>()?;
                out.push(Flag::new(subs).map_err(|x| err(fl, 1, x.to_string()))?);
            }
            Body::Flags(FlagCode::new(out).map_err(|x| err(ln, 1, x.to_string()))?)
        } else {
            let subs = (0..count)
                .map(|_| self.subspace(&field, dims[0], n))
                .collect::<Result<Vec<_>>>()?;
            Body::Subspaces(SubspaceCode::new(subs).map_err(|x| err(ln, 1, x.to_string()))?)
        };
        if let Some(&(extra, _)) = self.lines.get(self.pos) {
            return Err(err(extra, 1, "trailing content after the declared count"));
        }
        Ok(CodeFile { p, e, tower, body })
    }

    fn subspace(&mut self, field: &Arc<FiniteField>, dim: usize, n: usize) -> Result<Subspace> {
        let (ln, rest) = self.keyword("subspace")?;
        let (col, tok) = single_token(rest, "subspace".len(), ln)?;
        let k = tok
            .strip_prefix("k=")
            .ok_or_else(|| err(ln, col, "expected k=<dim>"))
            .and_then(|v| number::<usize>(v, ln, col))?;
        if k != dim {
            return Err(err(
                ln,
                col,
                format!("subspace of dimension {k} where the type requires {dim}"),
            ));
        }
        let mut data = Vec::with_capacity(k * n);
        for _ in 0..k {
            let (rl, row) = self.next("a matrix row")?;
            let toks = tokens(row, 0);
            if toks.len() != n {
                return Err(err(rl, 1, format!("expected {n} entries, found {}", toks.len())));
            }
            for (c, t) in toks {
                let v = number::<u32>(t, rl, c)?;
                if !field.contains(v) {
                    return Err(err(rl, c, format!("{v} is not an element of {field}")));
                }
                data.push(v);
            }
        }
        let m = Matrix::from_vec(field, k, n, data)?;
        Subspace::from_basis(&m).map_err(|x| err(ln, 1, x.to_string()))
    }
}

/// Whitespace-separated tokens with 1-based columns, offset by `skip`.
fn tokens(s: &str, skip: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(b)) => {
                out.push((skip + b + 1, &s[b..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn single_token(rest: &str, skip: usize, line: usize) -> Result<(usize, &str)> {
    match tokens(rest, skip).as_slice() {
        [one] => Ok(*one),
        _ => Err(err(line, skip + 1, "expected exactly one value")),
    }
}

fn number<T: std::str::FromStr>(s: &str, line: usize, column: usize) -> Result<T> {
    s.parse()
        .map_err(|_| err(line, column, format!("expected a number, found {s:?}")))
}

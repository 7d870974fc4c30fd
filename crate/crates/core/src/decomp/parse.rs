//! Tab-separated decomposition table parser.
//!
//! One entry per line, eight columns: id, hanzi, codepoint ("U+XXXX"),
//! radicals (may be empty), layout tag ("NL01", "NL03-2", "TBD"), and three
//! component cells. Trailing empty columns may be omitted. A component cell
//! holds a single character or a parenthesized nested composition such as
//! `(NL02 (NL01 A B) C)`.

use super::{ComponentRef, DecompEntry, Layout, LayoutKind};
use thiserror::Error;

#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct TableError {
    pub line: usize,
    pub kind: TableErrorKind,
}

#[derive(Debug, Error)]
pub enum TableErrorKind {
    #[error("expected 5 to 8 tab-separated columns, found {0}")]
    ColumnCount(usize),
    #[error("invalid id `{0}`")]
    BadId(String),
    #[error("hanzi cell must hold exactly one character, found `{0}`")]
    BadHanzi(String),
    #[error("malformed codepoint `{0}` (expected U+XXXX)")]
    BadCodepoint(String),
    #[error("unknown layout tag `{0}`")]
    UnknownLayout(String),
    #[error("nested arity mismatch: {layout} takes {expected} components, found {found}")]
    NestedArity { layout: String, expected: usize, found: usize },
    #[error("NL00 cannot appear in a nested composition")]
    NestedIsolated,
    #[error("unbalanced parentheses in component cell `{0}`")]
    UnbalancedParens(String),
    #[error("malformed component cell `{0}`")]
    BadComponent(String),
}

fn err(line: usize, kind: TableErrorKind) -> TableError {
    TableError { line, kind }
}

/// Parse a whole table. Entries are returned in file order; blank lines and
/// `#` comment lines are skipped.
pub fn parse_table(text: &str) -> Result<Vec<DecompEntry>, TableError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        entries.push(parse_line(line, line_no)?);
    }
    Ok(entries)
}

fn parse_line(line: &str, line_no: usize) -> Result<DecompEntry, TableError> {
    let mut cols: Vec<&str> = line.split('\t').collect();
    if cols.len() < 5 || cols.len() > 8 {
        return Err(err(line_no, TableErrorKind::ColumnCount(cols.len())));
    }
    cols.resize(8, "");

    let id: u64 = cols[0]
        .trim()
        .parse()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| err(line_no, TableErrorKind::BadId(cols[0].to_string())))?;

    let hanzi = single_char(cols[1])
        .ok_or_else(|| err(line_no, TableErrorKind::BadHanzi(cols[1].to_string())))?;

    let codepoint = parse_codepoint(cols[2])
        .ok_or_else(|| err(line_no, TableErrorKind::BadCodepoint(cols[2].to_string())))?;

    let radicals = if cols[3].is_empty() {
        None
    } else {
        Some(cols[3].chars().collect())
    };

    let layout_tag = cols[4].trim();
    let layout = if layout_tag == "TBD" {
        None
    } else {
        Some(
            Layout::parse_tag(layout_tag)
                .ok_or_else(|| err(line_no, TableErrorKind::UnknownLayout(layout_tag.to_string())))?,
        )
    };

    let mut components = Vec::new();
    for cell in &cols[5..8] {
        if cell.is_empty() {
            continue;
        }
        components.push(parse_component(cell, line_no)?);
    }

    Ok(DecompEntry { id, hanzi, codepoint, radicals, layout, components, line: line_no })
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    let c = chars.next()?;
    if chars.next().is_some() {
        return None;
    }
    Some(c)
}

fn parse_codepoint(s: &str) -> Option<u32> {
    let hex = s.strip_prefix("U+")?;
    if hex.is_empty() || hex.len() > 6 {
        return None;
    }
    let v = u32::from_str_radix(hex, 16).ok()?;
    char::from_u32(v).map(|_| v)
}

/// Parse one component cell: a bare character or an s-expression.
fn parse_component(cell: &str, line_no: usize) -> Result<ComponentRef, TableError> {
    let cell = cell.trim();
    if !cell.starts_with('(') {
        let c = single_char(cell)
            .ok_or_else(|| err(line_no, TableErrorKind::BadComponent(cell.to_string())))?;
        return Ok(ComponentRef::Leaf(c));
    }
    let tokens = tokenize(cell).ok_or_else(|| {
        err(line_no, TableErrorKind::UnbalancedParens(cell.to_string()))
    })?;
    let mut pos = 0usize;
    let tree = parse_sexpr(&tokens, &mut pos, cell, line_no)?;
    if pos != tokens.len() {
        return Err(err(line_no, TableErrorKind::BadComponent(cell.to_string())));
    }
    Ok(tree)
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

fn tokenize(s: &str) -> Option<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut depth = 0i32;
    let mut atom = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
                tokens.push(Token::Open);
                depth += 1;
            }
            ')' => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
                tokens.push(Token::Close);
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            c if c.is_whitespace() => {
                if !atom.is_empty() {
                    tokens.push(Token::Atom(std::mem::take(&mut atom)));
                }
            }
            c => atom.push(c),
        }
    }
    if !atom.is_empty() {
        tokens.push(Token::Atom(atom));
    }
    if depth != 0 {
        return None;
    }
    Some(tokens)
}

fn parse_sexpr(
    tokens: &[Token],
    pos: &mut usize,
    cell: &str,
    line_no: usize,
) -> Result<ComponentRef, TableError> {
    match tokens.get(*pos) {
        Some(Token::Atom(a)) => {
            *pos += 1;
            let c = single_char(a)
                .ok_or_else(|| err(line_no, TableErrorKind::BadComponent(cell.to_string())))?;
            Ok(ComponentRef::Leaf(c))
        }
        Some(Token::Open) => {
            *pos += 1;
            let tag = match tokens.get(*pos) {
                Some(Token::Atom(a)) => a.clone(),
                _ => return Err(err(line_no, TableErrorKind::BadComponent(cell.to_string()))),
            };
            *pos += 1;
            let layout = Layout::parse_tag(&tag)
                .ok_or_else(|| err(line_no, TableErrorKind::UnknownLayout(tag.clone())))?;
            if layout.kind == LayoutKind::Nl00 {
                return Err(err(line_no, TableErrorKind::NestedIsolated));
            }
            let mut children = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(Token::Close) => {
                        *pos += 1;
                        break;
                    }
                    Some(_) => children.push(parse_sexpr(tokens, pos, cell, line_no)?),
                    None => {
                        return Err(err(line_no, TableErrorKind::UnbalancedParens(cell.to_string())))
                    }
                }
            }
            let expected = layout.arity();
            if children.len() != expected {
                return Err(err(
                    line_no,
                    TableErrorKind::NestedArity {
                        layout: layout.tag(),
                        expected,
                        found: children.len(),
                    },
                ));
            }
            Ok(ComponentRef::Nested(layout, children))
        }
        _ => Err(err(line_no, TableErrorKind::BadComponent(cell.to_string()))),
    }
}

/// Serialize entries back to table text. `parse_table(serialize_table(e))`
/// reproduces `e` up to line numbers.
pub fn serialize_table(entries: &[DecompEntry]) -> String {
    let mut out = String::new();
    for entry in entries {
        let radicals: String = entry
            .radicals
            .as_ref()
            .map(|r| r.iter().collect())
            .unwrap_or_default();
        let layout = entry
            .layout
            .map(|l| l.tag())
            .unwrap_or_else(|| "TBD".to_string());
        let mut cells = [String::new(), String::new(), String::new()];
        for (i, comp) in entry.components.iter().enumerate().take(3) {
            cells[i] = serialize_component(comp);
        }
        out.push_str(&format!(
            "{}\t{}\tU+{:04X}\t{}\t{}\t{}\t{}\t{}\n",
            entry.id, entry.hanzi, entry.codepoint, radicals, layout, cells[0], cells[1], cells[2]
        ));
    }
    out
}

fn serialize_component(comp: &ComponentRef) -> String {
    match comp {
        ComponentRef::Leaf(c) => c.to_string(),
        ComponentRef::Nested(layout, children) => {
            let inner: Vec<String> = children.iter().map(serialize_component).collect();
            format!("({} {})", layout.tag(), inner.join(" "))
        }
    }
}

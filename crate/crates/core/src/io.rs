//! Graph ingestion: whitespace edge lists and a GML subset.

use std::collections::HashSet;
use std::path::Path;

use crate::error::GraphError;
use crate::graph::Graph;

/// Parses a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` or `%` are skipped. Every other
/// line must carry at least two labels; further columns (weights,
/// timestamps) are ignored.
pub fn load_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match (fields.next(), fields.next()) {
            (Some(a), Some(b)) => edges.push((a, b)),
            _ => {
                return Err(GraphError::Parse {
                    line: idx + 1,
                    column: 1,
                    message: format!("expected two vertex labels, found {line:?}"),
                })
            }
        }
    }
    Graph::build::<&str>(&edges, &[])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Gml,
}

impl InputFormat {
    /// `.gml` (any case) selects GML; everything else is an edge list.
    pub fn from_path(path: &Path) -> InputFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => InputFormat::Gml,
            _ => InputFormat::EdgeList,
        }
    }
}

pub fn parse_graph(text: &str, format: InputFormat) -> Result<Graph, GraphError> {
    match format {
        InputFormat::EdgeList => load_edge_list(text),
        InputFormat::Gml => load_gml(text),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    Key(String),
    Number(String),
    Str(String),
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn parse_error(pos: Pos, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Token, Pos)>, GraphError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    let mut at_line_start = true;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
                at_line_start = true;
            } else {
                column += 1;
            }
            c
        }};
    }

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '#' && at_line_start {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump!();
            }
            continue;
        }
        at_line_start = false;
        match c {
            '[' => {
                bump!();
                tokens.push((Token::Open, pos));
            }
            ']' => {
                bump!();
                tokens.push((Token::Close, pos));
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        Some('"') => break,
                        Some(c) => s.push(c),
                        None => return Err(parse_error(pos, "unterminated string")),
                    }
                }
                tokens.push((Token::Str(s), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Key(s), pos));
            }
            c if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | 'e' | 'E') {
                        s.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                if s.parse::<f64>().is_err() {
                    return Err(parse_error(pos, format!("malformed number {s:?}")));
                }
                tokens.push((Token::Number(s), pos));
            }
            other => return Err(parse_error(pos, format!("unexpected character {other:?}"))),
        }
    }
    Ok(tokens)
}

#[derive(Debug, Clone)]
enum Value {
    Scalar(String),
    List(Vec<(String, Value, Pos)>),
}

struct GmlParser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    end: Pos,
}

impl GmlParser {
    fn list(&mut self, nested: bool) -> Result<Vec<(String, Value, Pos)>, GraphError> {
        let mut items = Vec::new();
        loop {
            let Some((token, pos)) = self.tokens.get(self.at).cloned() else {
                if nested {
                    return Err(parse_error(self.end, "unclosed '['"));
                }
                return Ok(items);
            };
            self.at += 1;
            let key = match token {
                Token::Close if nested => return Ok(items),
                Token::Key(k) => k,
                _ => return Err(parse_error(pos, "expected a key")),
            };
            let Some((token, vpos)) = self.tokens.get(self.at).cloned() else {
                return Err(parse_error(self.end, format!("missing value for key {key:?}")));
            };
            self.at += 1;
            let value = match token {
                Token::Open => Value::List(self.list(true)?),
                Token::Number(n) => Value::Scalar(n),
                Token::Str(s) => Value::Scalar(s),
                _ => return Err(parse_error(vpos, format!("invalid value for key {key:?}"))),
            };
            items.push((key, value, pos));
        }
    }
}

fn scalar<'a>(items: &'a [(String, Value, Pos)], key: &str) -> Option<&'a str> {
    items.iter().find_map(|(k, v, _)| match v {
        Value::Scalar(s) if k == key => Some(s.as_str()),
        _ => None,
    })
}

/// Parses the GML subset `graph [ node [ id N ... ] edge [ source A target B ... ] ]`.
///
/// Node ids become vertex labels; other attributes are ignored. The
/// `directed` flag is ignored as well since every graph is treated as
/// undirected.
pub fn load_gml(text: &str) -> Result<Graph, GraphError> {
    let tokens = tokenize(text)?;
    let end = Pos {
        line: text.lines().count().max(1),
        column: text.lines().last().map_or(1, |l| l.chars().count() + 1),
    };
    let mut parser = GmlParser { tokens, at: 0, end };
    let top = parser.list(false)?;
    let body = top
        .iter()
        .find_map(|(k, v, _)| match v {
            Value::List(items) if k == "graph" => Some(items),
            _ => None,
        })
        .ok_or_else(|| parse_error(Pos { line: 1, column: 1 }, "no graph [ ... ] block"))?;

    let mut nodes: Vec<&str> = Vec::new();
    let mut declared = HashSet::new();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    for (key, value, pos) in body {
        let Value::List(items) = value else { continue };
        match key.as_str() {
            "node" => {
                let id = scalar(items, "id").ok_or_else(|| parse_error(*pos, "node without id"))?;
                if declared.insert(id) {
                    nodes.push(id);
                }
            }
            "edge" => {
                let source = scalar(items, "source").ok_or_else(|| parse_error(*pos, "edge without source"))?;
                let target = scalar(items, "target").ok_or_else(|| parse_error(*pos, "edge without target"))?;
                edges.push((source, target));
            }
            _ => {}
        }
    }
    for &(s, t) in &edges {
        for endpoint in [s, t] {
            if !declared.contains(endpoint) {
                return Err(GraphError::UnknownEndpoint(endpoint.to_owned()));
            }
        }
    }
    Graph::from_vertices_and_edges(&nodes, &edges)
}

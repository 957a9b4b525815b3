//! Vague attribute expressions: the free algebra over an elementary
//! attribute set, with a small text DSL.
//!
//! Grammar (case-sensitive, ASCII keywords):
//!
//! ```text
//! expr  := or
//! or    := and ("or" and)*
//! and   := unary ("and" unary)*
//! unary := "not" unary | atom
//! atom  := "bot" | "top" | IDENT | QUOTED | "(" expr ")"
//! IDENT := [A-Za-z_][A-Za-z0-9_]*
//! QUOTED := '"' any-non-quote+ '"'
//! ```
//!
//! Keywords are reserved; attribute names that are not identifiers (or
//! collide with a keyword) must be double-quoted.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("attribute set must not be empty")]
    EmptyAttributeSet,
    #[error("duplicate attribute `{0}`")]
    DuplicateAttribute(String),
    #[error("syntax error at offset {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown attribute `{name}` at offset {position}")]
    UnknownAttribute { name: String, position: usize },
    #[error("expression references `{0}`, which is not in the attribute set")]
    UnboundAttribute(String),
    #[error("`and`/`or` nodes need at least two children")]
    ArityTooSmall,
}

/// Optional provenance of an attribute set: the concept it partitions,
/// the attribute name and the bounds of the domain of discourse.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct UniverseInfo {
    pub concept: Option<String>,
    pub attribute: Option<String>,
    pub bounds: Option<(f64, f64)>,
}

/// A finite, nonempty, duplicate-free list of elementary attribute names.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeSet {
    names: Vec<String>,
    info: UniverseInfo,
}

impl AttributeSet {
    pub fn new<I, S>(names: I) -> Result<Self, ExprError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(ExprError::EmptyAttributeSet);
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(ExprError::DuplicateAttribute(name.clone()));
            }
        }
        Ok(AttributeSet {
            names,
            info: UniverseInfo::default(),
        })
    }

    pub fn with_info(mut self, info: UniverseInfo) -> Self {
        self.info = info;
        self
    }

    pub fn info(&self) -> &UniverseInfo {
        &self.info
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: the set is nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, name: &str) -> bool {
        self.names.iter().any(|n| n == name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// A vague attribute expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AttributeExpr {
    /// The nonexistent attribute.
    Bot,
    /// The intrinsic attribute.
    Top,
    Elem(String),
    Not(Box<AttributeExpr>),
    /// n-ary conjunction, at least two children.
    And(Vec<AttributeExpr>),
    /// n-ary disjunction, at least two children.
    Or(Vec<AttributeExpr>),
}

impl AttributeExpr {
    pub fn elem(name: impl Into<String>) -> Self {
        AttributeExpr::Elem(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: AttributeExpr) -> Self {
        AttributeExpr::Not(Box::new(child))
    }

    pub fn and(children: Vec<AttributeExpr>) -> Result<Self, ExprError> {
        if children.len() < 2 {
            return Err(ExprError::ArityTooSmall);
        }
        Ok(AttributeExpr::And(children))
    }

    pub fn or(children: Vec<AttributeExpr>) -> Result<Self, ExprError> {
        if children.len() < 2 {
            return Err(ExprError::ArityTooSmall);
        }
        Ok(AttributeExpr::Or(children))
    }

    /// Checks that every leaf name is bound and every `and`/`or` node
    /// has at least two children.
    pub fn validate(&self, omega: &AttributeSet) -> Result<(), ExprError> {
        match self {
            AttributeExpr::Bot | AttributeExpr::Top => Ok(()),
            AttributeExpr::Elem(name) => {
                if omega.contains(name) {
                    Ok(())
                } else {
                    Err(ExprError::UnboundAttribute(name.clone()))
                }
            }
            AttributeExpr::Not(child) => child.validate(omega),
            AttributeExpr::And(children) | AttributeExpr::Or(children) => {
                if children.len() < 2 {
                    return Err(ExprError::ArityTooSmall);
                }
                children.iter().try_for_each(|c| c.validate(omega))
            }
        }
    }

    /// Maximum nesting depth; leaves have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            AttributeExpr::Bot | AttributeExpr::Top | AttributeExpr::Elem(_) => 0,
            AttributeExpr::Not(child) => 1 + child.depth(),
            AttributeExpr::And(children) | AttributeExpr::Or(children) => {
                1 + children.iter().map(AttributeExpr::depth).max().unwrap_or(0)
            }
        }
    }
}

impl fmt::Display for AttributeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}

const KEYWORDS: [&str; 5] = ["bot", "top", "not", "and", "or"];

fn is_ident(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !KEYWORDS.contains(&name)
}

fn format_name(name: &str) -> String {
    if is_ident(name) {
        name.to_string()
    } else {
        format!("\"{name}\"")
    }
}

/// Canonical text for an expression; `parse_expr` inverts it exactly.
///
/// Parentheses are inserted wherever re-parsing would otherwise change
/// the tree: around `or` under `or`/`and`/`not`, around `and` under
/// `and`/`not`.
pub fn format_expr(expr: &AttributeExpr) -> String {
    fn atom(expr: &AttributeExpr, out: &mut String) {
        match expr {
            AttributeExpr::And(_) | AttributeExpr::Or(_) => {
                out.push('(');
                write(expr, out);
                out.push(')');
            }
            _ => write(expr, out),
        }
    }
    fn and_child(expr: &AttributeExpr, out: &mut String) {
        match expr {
            AttributeExpr::And(_) | AttributeExpr::Or(_) => {
                out.push('(');
                write(expr, out);
                out.push(')');
            }
            _ => write(expr, out),
        }
    }
    fn or_child(expr: &AttributeExpr, out: &mut String) {
        match expr {
            AttributeExpr::Or(_) => {
                out.push('(');
                write(expr, out);
                out.push(')');
            }
            _ => write(expr, out),
        }
    }
    fn write(expr: &AttributeExpr, out: &mut String) {
        match expr {
            AttributeExpr::Bot => out.push_str("bot"),
            AttributeExpr::Top => out.push_str("top"),
            AttributeExpr::Elem(name) => out.push_str(&format_name(name)),
            AttributeExpr::Not(child) => {
                out.push_str("not ");
                atom(child, out);
            }
            AttributeExpr::And(children) => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" and ");
                    }
                    and_child(c, out);
                }
            }
            AttributeExpr::Or(children) => {
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" or ");
                    }
                    or_child(c, out);
                }
            }
        }
    }
    let mut out = String::new();
    write(expr, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Bot,
    Top,
    Not,
    And,
    Or,
    LParen,
    RParen,
    Name(String),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        match c {
            '(' => {
                toks.push((Tok::LParen, start));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, start));
                i += 1;
            }
            '"' => {
                i += 1;
                let begin = i;
                while i < bytes.len() && bytes[i] != b'"' {
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(ExprError::Syntax {
                        position: start,
                        message: "unterminated quoted name".into(),
                    });
                }
                if i == begin {
                    return Err(ExprError::Syntax {
                        position: start,
                        message: "empty quoted name".into(),
                    });
                }
                toks.push((Tok::Name(text[begin..i].to_string()), start));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "not" => Tok::Not,
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    _ => Tok::Name(word.to_string()),
                };
                toks.push((tok, start));
            }
            other => {
                return Err(ExprError::Syntax {
                    position: start,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    pos: usize,
    end: usize,
    omega: &'a AttributeSet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_or(&mut self) -> Result<AttributeExpr, ExprError> {
        let mut children = vec![self.parse_and()?];
        while self.peek() == Some(&Tok::Or) {
            self.bump();
            children.push(self.parse_and()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            AttributeExpr::Or(children)
        })
    }

    fn parse_and(&mut self) -> Result<AttributeExpr, ExprError> {
        let mut children = vec![self.parse_unary()?];
        while self.peek() == Some(&Tok::And) {
            self.bump();
            children.push(self.parse_unary()?);
        }
        Ok(if children.len() == 1 {
            children.pop().unwrap()
        } else {
            AttributeExpr::And(children)
        })
    }

    fn parse_unary(&mut self) -> Result<AttributeExpr, ExprError> {
        if self.peek() == Some(&Tok::Not) {
            self.bump();
            return Ok(AttributeExpr::not(self.parse_unary()?));
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<AttributeExpr, ExprError> {
        let position = self.position();
        match self.bump() {
            Some((Tok::Bot, _)) => Ok(AttributeExpr::Bot),
            Some((Tok::Top, _)) => Ok(AttributeExpr::Top),
            Some((Tok::Name(name), _)) => {
                if self.omega.contains(&name) {
                    Ok(AttributeExpr::Elem(name))
                } else {
                    Err(ExprError::UnknownAttribute { name, position })
                }
            }
            Some((Tok::LParen, _)) => {
                let inner = self.parse_or()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    other => Err(ExprError::Syntax {
                        position: other.map_or(self.end, |(_, p)| p),
                        message: "expected `)`".into(),
                    }),
                }
            }
            other => Err(ExprError::Syntax {
                position: other.map_or(self.end, |(_, p)| p),
                message: "expected an expression".into(),
            }),
        }
    }
}

/// Parses the DSL into an expression bound to `omega`.
pub fn parse_expr(text: &str, omega: &AttributeSet) -> Result<AttributeExpr, ExprError> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks: &toks,
        pos: 0,
        end: text.len(),
        omega,
    };
    let expr = parser.parse_or()?;
    if let Some((_, p)) = parser.toks.get(parser.pos) {
        return Err(ExprError::Syntax {
            position: *p,
            message: "unexpected trailing input".into(),
        });
    }
    Ok(expr)
}

/// Exhaustive, duplicate-free enumeration of expressions up to
/// `max_depth`, with binary `and`/`or` nodes only.
///
/// Layer 0 is `bot`, `top` and the elementary attributes in set order;
/// layer `d + 1` adds `not` over layer `d` and every binary `and`/`or`
/// whose deeper child sits exactly in layer `d`. Items are yielded layer
/// by layer, never re-listed, so the stream can be consumed lazily even
/// when the final layer is large.
pub fn enumerate_exprs(omega: &AttributeSet, max_depth: usize) -> ExprEnumerator {
    let mut leaves = vec![AttributeExpr::Bot, AttributeExpr::Top];
    leaves.extend(omega.names().iter().map(AttributeExpr::elem));
    ExprEnumerator {
        max_depth,
        depth: 0,
        prev: Vec::new(),
        layer_start: 0,
        buffer: Vec::new(),
        state: GenState::Leaves { idx: 0, leaves },
    }
}

#[derive(Debug)]
enum GenState {
    Leaves {
        idx: usize,
        leaves: Vec<AttributeExpr>,
    },
    Not {
        idx: usize,
    },
    Binary {
        op_and: bool,
        i: usize,
        j: usize,
    },
    Done,
}

/// Lazy expression stream; only layers below the last are retained.
#[derive(Debug)]
pub struct ExprEnumerator {
    max_depth: usize,
    depth: usize,
    /// Every expression of depth < `depth`, layer by layer.
    prev: Vec<AttributeExpr>,
    /// Index in `prev` where the newest complete layer begins.
    layer_start: usize,
    /// Items of the layer currently being generated, kept only while a
    /// deeper layer still needs them as children.
    buffer: Vec<AttributeExpr>,
    state: GenState,
}

impl ExprEnumerator {
    fn emit(&mut self, item: AttributeExpr) -> Option<AttributeExpr> {
        if self.depth < self.max_depth {
            self.buffer.push(item.clone());
        }
        Some(item)
    }

    /// Moves from the just-finished layer to the next; returns false
    /// when `max_depth` is exhausted.
    fn advance_layer(&mut self) -> bool {
        if self.depth >= self.max_depth {
            self.state = GenState::Done;
            return false;
        }
        self.depth += 1;
        self.layer_start = self.prev.len();
        self.prev.append(&mut self.buffer);
        self.state = GenState::Not { idx: 0 };
        true
    }
}

impl Iterator for ExprEnumerator {
    type Item = AttributeExpr;

    fn next(&mut self) -> Option<AttributeExpr> {
        loop {
            match &mut self.state {
                GenState::Done => return None,
                GenState::Leaves { idx, leaves } => {
                    if *idx < leaves.len() {
                        let item = leaves[*idx].clone();
                        *idx += 1;
                        return self.emit(item);
                    }
                    if !self.advance_layer() {
                        return None;
                    }
                }
                GenState::Not { idx } => {
                    let pos = self.layer_start + *idx;
                    if pos < self.prev.len() {
                        *idx += 1;
                        let item = AttributeExpr::not(self.prev[pos].clone());
                        return self.emit(item);
                    }
                    self.state = GenState::Binary {
                        op_and: true,
                        i: 0,
                        j: 0,
                    };
                }
                GenState::Binary { op_and, i, j } => {
                    let n = self.prev.len();
                    // Skip pairs whose children both predate the newest
                    // layer; those were produced in an earlier pass.
                    while *i < n && *i < self.layer_start && *j < self.layer_start {
                        *j = self.layer_start;
                    }
                    if *i >= n {
                        if *op_and {
                            *op_and = false;
                            *i = 0;
                            *j = 0;
                            continue;
                        }
                        if !self.advance_layer() {
                            return None;
                        }
                        continue;
                    }
                    if *j >= n {
                        *i += 1;
                        *j = 0;
                        continue;
                    }
                    let children = vec![self.prev[*i].clone(), self.prev[*j].clone()];
                    let item = if *op_and {
                        AttributeExpr::And(children)
                    } else {
                        AttributeExpr::Or(children)
                    };
                    *j += 1;
                    return self.emit(item);
                }
            }
        }
    }
}
